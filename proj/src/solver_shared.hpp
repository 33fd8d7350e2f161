#pragma once

#include <atomic>
#include <thread>

#include "cwc/cvc_solver.hpp"
#include "cwc/rng.hpp"
#include "cwc/solver_engine.hpp"

namespace cwc {
namespace detail {

// repeats independent isolation trials; sequential runs stop at the first
// detecting trial, parallel runs execute all trials so the combined result
// stays deterministic
template <class DetectFn>
SolveResult run_trials(const LabeledGraph& g, int64_t budget, const SolveOptions& opt,
                       DetectFn&& detect) {
  SolveResult res;
  res.seed = opt.seed;
  if (opt.jobs <= 1) {
    for (int t = 0; t < opt.repeats; ++t) {
      WeightFunction w = sample_weights(g, mix_seed(opt.seed, t));
      std::optional<int64_t> d = detect(w);
      res.trials = t + 1;
      if (d && (!res.best_cost || *d < *res.best_cost)) res.best_cost = d;
      if (d && *d <= budget) {
        res.yes = true;
        return res;
      }
    }
    return res;
  }
  std::vector<std::optional<int64_t>> found(opt.repeats);
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  int nthreads = std::min(opt.jobs, opt.repeats);
  for (int i = 0; i < nthreads; ++i)
    pool.emplace_back([&] {
      for (;;) {
        int t = next.fetch_add(1);
        if (t >= opt.repeats) break;
        WeightFunction w = sample_weights(g, mix_seed(opt.seed, t));
        found[t] = detect(w);
      }
    });
  for (auto& th : pool) th.join();
  res.trials = opt.repeats;
  for (auto& d : found)
    if (d && (!res.best_cost || *d < *res.best_cost)) res.best_cost = d;
  res.yes = res.best_cost && *res.best_cost <= budget;
  return res;
}

// conservative pre-run check against the configured cap
inline void precheck_memory(const AugmentedExpression& aug, int radix, int64_t ctot,
                            int64_t wbound, const DpLimits& lim) {
  size_t maxlive = 0;
  for (const auto& lv : aug.live) maxlive = std::max(maxlive, lv.size());
  // saturating product; widths in the twenties already overflow any integer
  const __int128 kCeiling = static_cast<__int128>(1) << 100;
  __int128 bits = 3 * (ctot + 1) * (((wbound + 64) / 64) * 64);
  for (size_t i = 0; i < maxlive && bits < kCeiling; ++i) bits *= radix;
  if (bits > static_cast<__int128>(lim.mem_cap_bits))
    throw std::runtime_error(
        "memory guard: projected table size exceeds cap (live width " +
        std::to_string(maxlive) + ", cost range " + std::to_string(ctot) +
        ", weight range " + std::to_string(wbound) + "); raise --mem-cap to override");
}

}  // namespace detail
}  // namespace cwc
