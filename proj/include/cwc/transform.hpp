#pragma once

#include <cstdint>
#include <vector>

#include "cwc/expr.hpp"

namespace cwc {

// no join re-adds an existing edge
bool is_irredundant(const CliqueExpression& e);

// drops joins that add no new edges; a join that both duplicates and adds
// edges is rejected with an error (the general label-splitting transform is
// not needed by any in-pipeline source)
CliqueExpression make_irredundant(const CliqueExpression& e);

// irredundant, every join adds an edge between two nonempty labels, every
// relabel merges two nonempty labels
bool is_nice(const CliqueExpression& e);

// pre: irredundant. Removes edgeless joins and empty-source relabels;
// empty-target relabels are removed by swapping the two labels in all
// proper descendants.
CliqueExpression make_nice(const CliqueExpression& e);

// expression with dead nodes plus the live/nonempty label bookkeeping the
// dynamic programs run on
struct AugmentedExpression {
  CliqueExpression expr;
  std::vector<std::vector<int>> live;      // live labels per node, sorted
  std::vector<std::vector<int>> nonempty;  // L_t per node, sorted
};

// pre: nice. Inserts dead(l) directly above each join at which label l turns
// dead; when both join labels die, the lower label's dead node goes first.
AugmentedExpression augment_with_dead_nodes(const CliqueExpression& e);

// recomputes live/nonempty sets for an already augmented expression and
// validates that every dead node marks a label that really turned dead
AugmentedExpression recompute_live_sets(const CliqueExpression& e);

struct UnionSplit {
  std::vector<int> only1;   // live at t1, absent at t2
  std::vector<int> only2;   // live at t2, absent at t1
  std::vector<int> shared;  // live at both
};
UnionSplit union_split(const AugmentedExpression& a, int t);

// well-formed irredundant k-expression evaluating to a connected graph;
// retries internally until connected
CliqueExpression random_expression(int n, int k, uint64_t seed);

}  // namespace cwc
