#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace cwc {

using Vertex = int32_t;

// Undirected labeled graph with dense vertex ids 0..n-1 and labels in [1..k].
// Edge relation is simple (no loops, no multi-edges); adjacency lists are
// kept sorted so has_edge is a binary search.
class LabeledGraph {
 public:
  LabeledGraph() = default;
  LabeledGraph(int n, int k);

  int vertex_count() const { return static_cast<int>(adj_.size()); }
  int edge_count() const { return m_; }
  int width() const { return k_; }

  int label(Vertex v) const { return lab_[v]; }
  void set_label(Vertex v, int lab);

  // returns false if the edge was already present
  bool add_edge(Vertex u, Vertex v);
  bool has_edge(Vertex u, Vertex v) const;
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }

  std::vector<std::pair<Vertex, Vertex>> edges() const;  // u < v, sorted

  // equality of vertex set, edge set, and label function
  bool same_graph(const LabeledGraph& o) const;

 private:
  int k_ = 0;
  int m_ = 0;
  std::vector<int> lab_;
  std::vector<std::vector<Vertex>> adj_;
};

int connected_components(const LabeledGraph& g);
bool is_connected(const LabeledGraph& g);

struct CostFunction {
  std::vector<int64_t> c;

  int64_t operator()(Vertex v) const { return c[v]; }
  int64_t total() const;
  static CostFunction unit(int n) { return CostFunction{std::vector<int64_t>(n, 1)}; }
};

// all costs >= 1 and c(V) <= cap (cap == 0 means the default n^3)
void validate_costs(const LabeledGraph& g, const CostFunction& c, int64_t cap = 0);

struct WeightFunction {
  std::vector<int64_t> w;

  int64_t operator()(Vertex v) const { return w[v]; }
  int64_t total() const;
};

// isolation-lemma weights: each w(v) uniform in [1, 2n], N = 2n
WeightFunction sample_weights(const LabeledGraph& g, uint64_t seed);

// text format:
//   p graph <n> <m> <k>
//   l <v> <label>
//   e <u> <v>
LabeledGraph parse_graph(std::istream& in);
LabeledGraph parse_graph_text(const std::string& text);
void write_graph(std::ostream& out, const LabeledGraph& g);

}  // namespace cwc
