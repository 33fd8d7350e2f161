#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cwc/graph.hpp"

namespace cwc {

enum class Op : uint8_t { Intro, Union, Relabel, Join, Dead };

struct ExprNode {
  Op op;
  int a = 0;        // Intro: label; Relabel/Join: label i; Dead: label
  int b = 0;        // Relabel/Join: label j
  Vertex v = -1;    // Intro only
  int left = -1;    // unary child / union left
  int right = -1;   // union right
};

// Rooted operation tree. Nodes are stored in topological order (children
// before parents) with the root last; vertex ids introduced by the
// expression are exactly 0..n-1.
class CliqueExpression {
 public:
  CliqueExpression() = default;
  CliqueExpression(std::vector<ExprNode> nodes, int k);

  int size() const { return static_cast<int>(nodes_.size()); }
  const ExprNode& node(int t) const { return nodes_[t]; }
  const std::vector<ExprNode>& nodes() const { return nodes_; }
  int root() const { return size() - 1; }
  int declared_width() const { return k_; }
  int vertex_count() const { return n_; }
  bool has_dead_nodes() const { return has_dead_; }

 private:
  std::vector<ExprNode> nodes_;
  int k_ = 0;
  int n_ = 0;
  bool has_dead_ = false;

  void validate();
};

// text format, children before parents, ids positive:
//   p cex <k> [linear]          (optional header; k inferred when absent)
//   <id>: intro <label> <vertex>
//   <id>: union <id1> <id2>
//   <id>: relabel <i> <j> <id>
//   <id>: join <i> <j> <id>
//   <id>: dead <label> <id>
//   root <id>
CliqueExpression parse_expression(std::istream& in);
CliqueExpression parse_expression_text(const std::string& text);
void write_expression(std::ostream& out, const CliqueExpression& e);
std::string expression_to_text(const CliqueExpression& e);

// every union's right operand is a single introduce
bool is_linear(const CliqueExpression& e);

// maximum label index of a nonempty label at any node
int width(const CliqueExpression& e);

LabeledGraph evaluate(const CliqueExpression& e);

// Per-node annotations V_t, V_t^l, L_t, E_t, D_t, materialized for every
// node. Quadratic in the worst case; callers are desk-scale (tests, the
// enumeration oracle). A total-size guard rejects oversized inputs.
struct FullAnnotation {
  LabeledGraph graph;                                        // G at the root
  std::vector<std::vector<Vertex>> verts;                    // V_t, sorted
  std::vector<std::vector<std::vector<Vertex>>> by_label;    // [t][label] sorted
  std::vector<std::vector<int>> nonempty;                    // L_t, sorted
  std::vector<std::vector<std::pair<Vertex, Vertex>>> edges; // E_t (u < v)
  std::vector<std::vector<Vertex>> dead;                     // D_t, sorted
};
FullAnnotation annotate_full(const CliqueExpression& e);

// D_t for every node (same guard as annotate_full)
std::vector<std::vector<Vertex>> compute_dead_sets(const CliqueExpression& e);

}  // namespace cwc
