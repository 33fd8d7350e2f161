#pragma once

#include <chrono>

#include "cwc/rng.hpp"
#include "solver_shared.hpp"

namespace cwc {
namespace detail {

// One union-node engine pass over tables of R^k signatures with all k
// labels shared: forward transform on both operands, a budget convolution
// per signature, inverse transform on the result. This is exactly the
// do_union code path with no exclusive labels.
template <class Traits>
double union_kernel_seconds(int k, int reps) {
  constexpr int R = Traits::kRadix;
  long nsig = ipow(R, k);
  // full-cache-line slices and a compute-heavy per-signature budget product
  // keep the timing pinned to the R^k signature structure; the buffers are
  // reused across repetitions so allocator churn stays out of the numbers
  DpTable a(nsig, 0, 511), b(nsig, 0, 511);
  SplitMix64 rng(0x6b8f1e2d3c4a5960ULL + k);
  for (long s = 0; s < nsig; ++s)
    for (int w = 0; w < 8; ++w) {
      a.sig(s)[w] = rng.next() & rng.next();  // ~25% density
      b.sig(s)[w] = rng.next() & rng.next();
    }
  DpTable lz, rz, res(nsig, 0, 1023);
  volatile uint64_t sink = 0;
  auto now = [] {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
  };
  double t0 = now();
  for (int r = 0; r < reps; ++r) {
    lz = a;
    rz = b;
    Traits::shared_schedule(false, k, [&](long p, long q) { lz.xor_slice_inplace(p, q); });
    Traits::shared_schedule(false, k, [&](long p, long q) { rz.xor_slice_inplace(p, q); });
    for (long s = 0; s < nsig; ++s) {
      res.clear_slice(s);
      res.conv_add_slice(s, lz, s, rz, s);
    }
    Traits::shared_schedule(true, k, [&](long p, long q) { res.xor_slice_inplace(p, q); });
    sink ^= res.sig(nsig - 1)[0];
  }
  double t1 = now();
  (void)sink;
  return (t1 - t0) / reps;
}

}  // namespace detail
}  // namespace cwc
