#pragma once

#include <optional>

#include "cwc/dp_core.hpp"

namespace cwc {

// CVC label states: the nonempty proper subsets of {0, 1_L, 1_R}, indexed by
// their position in the sorted state family (bit 0 = "0", 1 = 1_L, 2 = 1_R)
namespace cvc_states {
constexpr int kZero = 0;    // {0}
constexpr int kL = 1;       // {1_L}
constexpr int kZeroL = 2;   // {0, 1_L}
constexpr int kR = 3;       // {1_R}
constexpr int kZeroR = 4;   // {0, 1_R}
constexpr int kLR = 5;      // {1_L, 1_R}
constexpr int kCount = 6;

uint32_t mask(int state);          // subset of {0,1L,1R} as bits
int state_of_mask(uint32_t mask);  // -1 for the empty set and the full set
const char* name(int state);
}  // namespace cvc_states

// join filter: uncovered join edge (0 on both sides) or an edge across the
// cut (1_L meets 1_R)
int feas_cvc(int s1, int s2);

struct SolveOptions {
  uint64_t seed = 1;
  int repeats = 20;
  int jobs = 1;
  int64_t cost_cap = 0;  // 0 -> n^3
  DpLimits limits;
};

struct SolveResult {
  bool yes = false;
  int trials = 0;                    // trials actually run
  std::optional<int64_t> best_cost;  // cheapest root cell seen across trials
  uint64_t seed = 0;
};

// shared front half of cmd_solve: make irredundant, make nice, augment (or
// validate an already augmented input)
AugmentedExpression prepare_for_solving(const CliqueExpression& e);

// both endpoints of the lexicographically smallest edge
std::vector<Vertex> cvc_branch_vertices(const LabeledGraph& g);

// one v*: the full table stack (keep == true retains every node's table)
CountPart cvc_count_part(const AugmentedExpression& aug, const CostFunction& costs,
                         const WeightFunction& weights, Vertex vstar, bool keep,
                         const DpLimits& lim = {});

// one trial: cheapest cost with an odd root cell over all branch vertices
std::optional<int64_t> cvc_detect_min_cost(const AugmentedExpression& aug,
                                           const CostFunction& costs,
                                           const WeightFunction& weights,
                                           const std::vector<Vertex>& branch,
                                           const DpLimits& lim = {});

SolveResult solve_cvc(const CliqueExpression& e, const CostFunction& costs, int64_t budget,
                      const SolveOptions& opt = {});

// benchmark hook: one union-node pass (forward transform, per-signature
// budget products, inverse transform) with all k labels shared, on tables
// with a fixed one-word budget axis; returns seconds per repetition
double cvc_union_kernel_seconds(int k, int reps);

}  // namespace cwc
