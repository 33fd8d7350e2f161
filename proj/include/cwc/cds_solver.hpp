#pragma once

#include <optional>

#include "cwc/cvc_solver.hpp"
#include "cwc/dp_core.hpp"

namespace cwc {

// CDS label states {0, {F}, {L}, {R}, 2+}; 2+ stands for every subset of
// {F,L,R} of size at least two and maps to the lattice top under kappa
namespace cds_states {
constexpr int kEmpty = 0;
constexpr int kF = 1;
constexpr int kL = 2;
constexpr int kR = 3;
constexpr int kTwoPlus = 4;
constexpr int kCount = 5;

const char* name(int state);
// state of a subset of {F,L,R} (bit 0 = F, 1 = L, 2 = R)
int state_of_mask(uint32_t mask);
}  // namespace cds_states

int merge_cds(int s1, int s2);
int feas_cds(int s1, int s2);

// closed neighborhood of a minimum-degree vertex (ties: smallest id); every
// dominating set meets it
std::vector<Vertex> cds_branch_vertices(const LabeledGraph& g);

CountPart cds_count_part(const AugmentedExpression& aug, const CostFunction& costs,
                         const WeightFunction& weights, Vertex vstar, bool keep,
                         const DpLimits& lim = {});

std::optional<int64_t> cds_detect_min_cost(const AugmentedExpression& aug,
                                           const CostFunction& costs,
                                           const WeightFunction& weights,
                                           const std::vector<Vertex>& branch,
                                           const DpLimits& lim = {});

SolveResult solve_cds(const CliqueExpression& e, const CostFunction& costs, int64_t budget,
                      const SolveOptions& opt = {});

double cds_union_kernel_seconds(int k, int reps);

}  // namespace cwc
