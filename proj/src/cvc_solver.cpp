#include "cwc/cvc_solver.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "bench_kernel.hpp"
#include "solver_shared.hpp"

namespace cwc {

namespace cvc_states {

// sorted as bitmasks over {0,1L,1R}, so index == mask - 1
uint32_t mask(int state) { return static_cast<uint32_t>(state) + 1; }

int state_of_mask(uint32_t m) { return (m == 0 || m >= 7) ? -1 : static_cast<int>(m) - 1; }

const char* name(int state) {
  static const char* n[6] = {"{0}", "{1L}", "{0,1L}", "{1R}", "{0,1R}", "{1L,1R}"};
  return n[state];
}

}  // namespace cvc_states

int feas_cvc(int s1, int s2) {
  uint32_t m1 = cvc_states::mask(s1), m2 = cvc_states::mask(s2);
  bool zero_both = (m1 & 1) && (m2 & 1);
  bool cross = ((m1 & 2) && (m2 & 4)) || ((m1 & 4) && (m2 & 2));
  return (!zero_both && !cross) ? 1 : 0;
}

namespace {

const SetFamily& cvc_power_family(int s) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<SetFamily>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(s);
  if (it == cache.end()) {
    it = cache.emplace(s, std::make_unique<SetFamily>(SetFamily::power(SetFamily::cvc_states(), s)))
             .first;
  }
  return *it->second;
}

struct CvcTraits {
  static constexpr int kRadix = 6;

  static bool feas(int a, int b) { return feas_cvc(a, b) != 0; }

  static const std::vector<std::pair<int, bool>>& intro_entries(bool is_vstar) {
    using namespace cvc_states;
    static const std::vector<std::pair<int, bool>> plain = {
        {kZero, false}, {kL, true}, {kR, true}};
    static const std::vector<std::pair<int, bool>> pinned = {{kL, true}};
    return is_vstar ? pinned : plain;
  }

  // state pairs whose union is the target state
  static const std::vector<std::pair<int, int>>& combine_pairs(int target) {
    static const auto table = [] {
      std::vector<std::vector<std::pair<int, int>>> t(cvc_states::kCount);
      for (int a = 0; a < cvc_states::kCount; ++a)
        for (int b = 0; b < cvc_states::kCount; ++b) {
          int u = cvc_states::state_of_mask(cvc_states::mask(a) | cvc_states::mask(b));
          if (u >= 0) t[u].emplace_back(a, b);
        }
      return t;
    }();
    return table[target];
  }

  // trimmed zeta over the s-fold power of the state family; over GF(2) the
  // mobius transform coincides with zeta
  template <class F>
  static void shared_schedule(bool /*inverse*/, int s, F&& add) {
    zeta_schedule(cvc_power_family(s),
                  [&](size_t d, size_t q) { add(static_cast<long>(d), static_cast<long>(q)); });
  }
};

}  // namespace

AugmentedExpression prepare_for_solving(const CliqueExpression& e) {
  if (e.has_dead_nodes()) return recompute_live_sets(e);
  return augment_with_dead_nodes(make_nice(make_irredundant(e)));
}

std::vector<Vertex> cvc_branch_vertices(const LabeledGraph& g) {
  for (Vertex u = 0; u < g.vertex_count(); ++u)
    if (g.degree(u) > 0) return {u, g.neighbors(u)[0]};
  throw std::runtime_error("cvc: graph has no edges");
}

CountPart cvc_count_part(const AugmentedExpression& aug, const CostFunction& costs,
                         const WeightFunction& weights, Vertex vstar, bool keep,
                         const DpLimits& lim) {
  return DpRunner<CvcTraits>(aug, costs, weights, vstar, keep, lim).run();
}

std::optional<int64_t> cvc_detect_min_cost(const AugmentedExpression& aug,
                                           const CostFunction& costs,
                                           const WeightFunction& weights,
                                           const std::vector<Vertex>& branch,
                                           const DpLimits& lim) {
  std::optional<int64_t> best;
  for (Vertex v : branch) {
    CountPart cp = cvc_count_part(aug, costs, weights, v, false, lim);
    int64_t c = cp.root.min_cost(0, cp.root.cmax());
    if (c >= 0 && (!best || c < *best)) best = c;
  }
  return best;
}

double cvc_union_kernel_seconds(int k, int reps) {
  return detail::union_kernel_seconds<CvcTraits>(k, reps);
}

SolveResult solve_cvc(const CliqueExpression& e, const CostFunction& costs, int64_t budget,
                      const SolveOptions& opt) {
  if (budget < 0) throw std::runtime_error("cvc: budget must be non-negative");
  LabeledGraph g = evaluate(e);
  validate_costs(g, costs, opt.cost_cap);
  if (g.edge_count() == 0) {
    // the empty cover is vacuously connected
    SolveResult res;
    res.yes = true;
    res.best_cost = 0;
    res.seed = opt.seed;
    return res;
  }
  if (!is_connected(g)) throw std::runtime_error("cvc: input graph must be connected");
  AugmentedExpression aug = prepare_for_solving(e);
  int64_t n = g.vertex_count();
  detail::precheck_memory(aug, CvcTraits::kRadix, costs.total(), 2 * n * n, opt.limits);
  std::vector<Vertex> branch = cvc_branch_vertices(g);
  return detail::run_trials(g, budget, opt, [&](const WeightFunction& w) {
    return cvc_detect_min_cost(aug, costs, w, branch, opt.limits);
  });
}

}  // namespace cwc
