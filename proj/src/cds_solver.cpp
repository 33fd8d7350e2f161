#include "cwc/cds_solver.hpp"

#include "bench_kernel.hpp"
#include "solver_shared.hpp"

namespace cwc {

namespace cds_states {

const char* name(int state) {
  static const char* n[5] = {"{}", "{F}", "{L}", "{R}", "2+"};
  return n[state];
}

int state_of_mask(uint32_t m) {
  switch (m) {
    case 0: return kEmpty;
    case 1: return kF;
    case 2: return kL;
    case 4: return kR;
    default: return kTwoPlus;  // any subset of size >= 2
  }
}

}  // namespace cds_states

namespace {

uint32_t cds_mask(int state) {
  static const uint32_t m[5] = {0, 1, 2, 4, 7};
  return m[state];
}

}  // namespace

int merge_cds(int s1, int s2) {
  return cds_states::state_of_mask(cds_mask(s1) | cds_mask(s2));
}

int feas_cds(int s1, int s2) {
  // a new join edge connects F with X or X_L with X_R exactly when both
  // states are nonempty and differ, or both are 2+
  if (s1 == cds_states::kEmpty || s2 == cds_states::kEmpty) return 1;
  return (s1 == s2 && s1 != cds_states::kTwoPlus) ? 1 : 0;
}

namespace {

struct CdsTraits {
  static constexpr int kRadix = 5;

  static bool feas(int a, int b) { return feas_cds(a, b) != 0; }

  static const std::vector<std::pair<int, bool>>& intro_entries(bool is_vstar) {
    using namespace cds_states;
    static const std::vector<std::pair<int, bool>> plain = {
        {kEmpty, false}, {kF, false}, {kL, true}, {kR, true}};
    static const std::vector<std::pair<int, bool>> pinned = {{kL, true}};
    return is_vstar ? pinned : plain;
  }

  static const std::vector<std::pair<int, int>>& combine_pairs(int target) {
    static const auto table = [] {
      std::vector<std::vector<std::pair<int, int>>> t(cds_states::kCount);
      for (int a = 0; a < cds_states::kCount; ++a)
        for (int b = 0; b < cds_states::kCount; ++b) t[merge_cds(a, b)].emplace_back(a, b);
      return t;
    }();
    return table[target];
  }

  // kappa turns merge into the join of the CDS lattice; the vee-product is
  // computed by the per-coordinate zeta/mobius matrices of that lattice
  template <class F>
  static void shared_schedule(bool inverse, int s, F&& add) {
    const Lattice& lat = Lattice::cds();
    const auto& m = inverse ? lat.mobius_matrix() : lat.zeta_matrix();
    power_lattice_transform(lat, m, s, ipow(kRadix, s), [&](long dst, long src, int64_t coeff) {
      if (coeff & 1) add(dst, src);  // GF(2): even coefficients vanish
    });
  }
};

}  // namespace

std::vector<Vertex> cds_branch_vertices(const LabeledGraph& g) {
  Vertex best = 0;
  for (Vertex v = 1; v < g.vertex_count(); ++v)
    if (g.degree(v) < g.degree(best)) best = v;
  std::vector<Vertex> out = {best};
  out.insert(out.end(), g.neighbors(best).begin(), g.neighbors(best).end());
  std::sort(out.begin(), out.end());
  return out;
}

CountPart cds_count_part(const AugmentedExpression& aug, const CostFunction& costs,
                         const WeightFunction& weights, Vertex vstar, bool keep,
                         const DpLimits& lim) {
  return DpRunner<CdsTraits>(aug, costs, weights, vstar, keep, lim).run();
}

std::optional<int64_t> cds_detect_min_cost(const AugmentedExpression& aug,
                                           const CostFunction& costs,
                                           const WeightFunction& weights,
                                           const std::vector<Vertex>& branch,
                                           const DpLimits& lim) {
  std::optional<int64_t> best;
  for (Vertex v : branch) {
    CountPart cp = cds_count_part(aug, costs, weights, v, false, lim);
    int64_t c = cp.root.min_cost(0, cp.root.cmax());
    if (c >= 0 && (!best || c < *best)) best = c;
  }
  return best;
}

double cds_union_kernel_seconds(int k, int reps) {
  return detail::union_kernel_seconds<CdsTraits>(k, reps);
}

SolveResult solve_cds(const CliqueExpression& e, const CostFunction& costs, int64_t budget,
                      const SolveOptions& opt) {
  if (budget < 0) throw std::runtime_error("cds: budget must be non-negative");
  LabeledGraph g = evaluate(e);
  validate_costs(g, costs, opt.cost_cap);
  if (g.vertex_count() == 1) {
    // the single vertex dominates itself
    SolveResult res;
    res.yes = budget >= costs(0);
    res.best_cost = costs(0);
    res.seed = opt.seed;
    return res;
  }
  if (!is_connected(g)) throw std::runtime_error("cds: input graph must be connected");
  AugmentedExpression aug = prepare_for_solving(e);
  int64_t n = g.vertex_count();
  detail::precheck_memory(aug, CdsTraits::kRadix, costs.total(), 2 * n * n, opt.limits);
  std::vector<Vertex> branch = cds_branch_vertices(g);
  return detail::run_trials(g, budget, opt, [&](const WeightFunction& w) {
    return cds_detect_min_cost(aug, costs, w, branch, opt.limits);
  });
}

}  // namespace cwc
