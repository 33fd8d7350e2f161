#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cwc/dp_core.hpp"
#include "cwc/graph.hpp"
#include "cwc/transform.hpp"

namespace cwc {

// Brute-force references. These enumerate from the problem definitions and
// on purpose share no code with the solvers or the transform machinery.

// minimum cost of a connected vertex cover (n <= 22)
std::optional<int64_t> brute_cvc(const LabeledGraph& g, const CostFunction& costs);

// minimum cost of a connected dominating set (n <= 22)
std::optional<int64_t> brute_cds(const LabeledGraph& g, const CostFunction& costs);

// number of consistent cuts (X_L, X_R) of G[X] with vstar on the left;
// verifies the 2^(cc-1) identity before returning
long count_consistent_cuts(const LabeledGraph& g, const std::vector<Vertex>& x, Vertex vstar);

struct VerifyReport {
  bool ok = true;
  std::string detail;        // first mismatch: node, signature, cell
  long nodes_checked = 0;
  long cells_compared = 0;
};

// recomputes every node's DP table by enumerating the partial-solution
// definition directly and compares parities cell by cell (total n <= 8)
VerifyReport verify_dp_tables_cvc(const AugmentedExpression& aug, const CostFunction& costs,
                                  const WeightFunction& weights, Vertex vstar);
VerifyReport verify_dp_tables_cds(const AugmentedExpression& aug, const CostFunction& costs,
                                  const WeightFunction& weights, Vertex vstar);

// same comparisons against a caller-supplied table stack (fault injection)
VerifyReport verify_cvc_tables_against(const AugmentedExpression& aug, const CostFunction& costs,
                                       const WeightFunction& weights, Vertex vstar,
                                       const std::vector<DpTable>& tables);
VerifyReport verify_cds_tables_against(const AugmentedExpression& aug, const CostFunction& costs,
                                       const WeightFunction& weights, Vertex vstar,
                                       const std::vector<DpTable>& tables);

// naive double-loop products over GF(2) tables (k <= 5), references for the
// fast convolution paths; values indexed by little-endian radix-6/5 codes
std::vector<uint8_t> naive_componentwise_cover(int k, const std::vector<uint8_t>& a,
                                               const std::vector<uint8_t>& b);
std::vector<uint8_t> naive_vee_product(int k, const std::vector<uint8_t>& a,
                                       const std::vector<uint8_t>& b);

}  // namespace cwc
