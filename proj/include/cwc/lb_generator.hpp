#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cwc/expr.hpp"
#include "cwc/graph.hpp"

namespace cwc {

struct SatInstance {
  int nvars = 0;
  std::vector<std::vector<int>> clauses;  // signed DIMACS literals
};

SatInstance parse_dimacs(std::istream& in);
SatInstance parse_dimacs_text(const std::string& text);

struct GadgetParams {
  int beta = 0;
  int t = 0;        // variable groups
  int p = 0;        // rows per group
  int hp = 0;       // 6^p resp. 5^p decoding sequences
  long columns = 0; // m(5tp+1) resp. m(4tp+1)
};

struct GeneratedInstance {
  LabeledGraph graph;
  CliqueExpression expr;  // linear, irredundant, evaluates to graph
  int64_t budget = 0;
  GadgetParams params;
  int width = 0;                   // measured width of expr
  std::vector<std::string> roles;  // per vertex
};

// grid construction: path-gadget rows per variable group, decoding and
// clause gadgets per column, exact budget from the closed form
GeneratedInstance build_cvc_instance(const SatInstance& sat, int beta);
GeneratedInstance build_cds_instance(const SatInstance& sat, int beta);

// linear clique-expressions (column by column, group by group); the result
// evaluates vertex-id-exactly to instance.graph
CliqueExpression emit_cvc_linear_expression(const GeneratedInstance& instance);
CliqueExpression emit_cds_linear_expression(const GeneratedInstance& instance);

// build + emit + measure width
GeneratedInstance generate_cvc(const SatInstance& sat, int beta);
GeneratedInstance generate_cds(const SatInstance& sat, int beta);

// ---- gadget-level fixtures and checks --------------------------------------

// one path gadget: internal edges only, plus the list of vertices adjacent
// to the root in the full construction
struct PathGadget {
  LabeledGraph inner;
  std::vector<Vertex> root_adjacent;
  std::vector<std::string> names;   // local vertex names
  std::vector<Vertex> join_in;      // u_1,u_2 resp. u_{1,1},u_{1,2}
  std::vector<Vertex> join_out;     // u_3,u_4 resp. u_{2,1},u_{2,2}
  std::vector<Vertex> clique;       // v_1..v_6 resp. v_1..v_5
  int states = 0;                   // 6 resp. 5
};

PathGadget build_cvc_path_gadget();
PathGadget build_cds_path_gadget();

// canonical partial solution X_P^ell attaining gadget state ell (1-based)
std::vector<Vertex> cvc_canonical_cover(int ell);
std::vector<Vertex> cds_canonical_set(int ell);

struct CanonicalCheck {
  bool ok = true;
  std::string detail;
};

// X_P^ell is a vertex cover of P of size 21 with boundary state s^ell
CanonicalCheck check_cvc_canonical_covers();
// |X_P^ell| = 14, boundary state s^ell, every subdivided edge resolved, and
// the packing of disjoint closed neighborhoods behind the size-14 bound
CanonicalCheck check_cds_canonical_sets();

struct TransitionEntry {
  int l1 = 0, l2 = 0;
  bool violation = false;
  bool uncovered_edge = false;       // CVC: a join edge with 0 on both sides
  bool undominated_vertex = false;   // CDS: inner join vertex not dominated
  bool unconnected_vertex = false;   // inner join vertex in X, not root-connected
  std::string witness;               // offending edge or vertex
};

// joins two gadget copies and checks every ordered state pair: violations
// exactly when l1 > l2, with the failure kind named by the construction
std::vector<TransitionEntry> cvc_transition_matrix();
std::vector<TransitionEntry> cds_transition_matrix();

}  // namespace cwc
