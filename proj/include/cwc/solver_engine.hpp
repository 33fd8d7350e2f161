#pragma once

#include <algorithm>
#include <cassert>
#include <functional>
#include <optional>

#include "cwc/dp_core.hpp"

namespace cwc {

inline long ipow(int base, int exp) {
  long r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

inline int digit_pos(const std::vector<int>& live, int label) {
  auto it = std::lower_bound(live.begin(), live.end(), label);
  return it != live.end() && *it == label ? static_cast<int>(it - live.begin()) : -1;
}

// codes over the full live list whose digits are zero outside `labels`;
// index = mixed-radix code of the digits restricted to `labels`
inline std::vector<long> partial_codes(int radix, const std::vector<int>& live,
                                       const std::vector<int>& labels) {
  std::vector<long> weights;
  for (int l : labels) {
    int pos = digit_pos(live, l);
    if (pos < 0) throw std::runtime_error("dp: label not present in live list");
    weights.push_back(ipow(radix, pos));
  }
  long total = ipow(radix, static_cast<int>(labels.size()));
  std::vector<long> out(total);
  for (long idx = 0; idx < total; ++idx) {
    long code = 0, rest = idx;
    for (size_t i = 0; i < labels.size(); ++i) {
      code += (rest % radix) * weights[i];
      rest /= radix;
    }
    out[idx] = code;
  }
  return out;
}

// Bottom-up cut-and-count DP over an augmented nice expression. Traits give
// the per-problem state space: radix, introduce entries, the state pairs
// combining to each state (relabel/union), the join feasibility filter, and
// the shared-label transform used at union nodes.
template <class Traits>
class DpRunner {
 public:
  DpRunner(const AugmentedExpression& aug, const CostFunction& costs,
           const WeightFunction& weights, Vertex vstar, bool keep, const DpLimits& lim)
      : aug_(aug), costs_(costs), weights_(weights), vstar_(vstar), keep_(keep), lim_(lim) {}

  CountPart run() {
    const CliqueExpression& e = aug_.expr;
    int nn = e.size();
    csum_.assign(nn, 0);
    wsum_.assign(nn, 0);
    store_.assign(nn, std::nullopt);
    refs_.assign(nn, 0);
    for (int t = 0; t < nn; ++t) {
      const ExprNode& nd = e.node(t);
      if (nd.left >= 0) refs_[nd.left]++;
      if (nd.right >= 0) refs_[nd.right]++;
    }
    CountPart out;
    for (int t = 0; t < nn; ++t) {
      const ExprNode& nd = e.node(t);
      DpTable tab;
      switch (nd.op) {
        case Op::Intro: tab = do_intro(t, nd); break;
        case Op::Relabel: tab = do_relabel(t, nd); break;
        case Op::Join: tab = do_join(t, nd); break;
        case Op::Dead: tab = do_dead(t, nd); break;
        case Op::Union: tab = do_union(t, nd); break;
      }
      place(t, std::move(tab));
      if (nd.left >= 0) release(nd.left);
      if (nd.right >= 0) release(nd.right);
    }
    if (!aug_.live[e.root()].empty())
      throw std::runtime_error("dp: root still has live labels; the expression does not "
                               "describe a connected graph with >= 2 vertices");
    if (keep_) {
      out.root = *store_[e.root()];
      out.tables.resize(nn);
      for (int t = 0; t < nn; ++t) out.tables[t] = std::move(*store_[t]);
    } else {
      out.root = std::move(*store_[e.root()]);
    }
    return out;
  }

 private:
  static constexpr int R = Traits::kRadix;

  const AugmentedExpression& aug_;
  const CostFunction& costs_;
  const WeightFunction& weights_;
  Vertex vstar_;
  bool keep_;
  DpLimits lim_;
  std::vector<int64_t> csum_, wsum_;
  std::vector<std::optional<DpTable>> store_;
  std::vector<int> refs_;
  int64_t live_bits_ = 0;

  DpTable fresh(int t) {
    long nsig = ipow(R, static_cast<int>(aug_.live[t].size()));
    DpTable tab(nsig, csum_[t], wsum_[t]);
    live_bits_ += static_cast<int64_t>(tab.bit_count());
    if (live_bits_ > lim_.mem_cap_bits)
      throw std::runtime_error("dp: memory guard exceeded (" + std::to_string(live_bits_) +
                               " table bits, cap " + std::to_string(lim_.mem_cap_bits) + ")");
    return tab;
  }

  void place(int t, DpTable&& tab) { store_[t] = std::move(tab); }

  void release(int t) {
    if (--refs_[t] == 0 && store_[t] && !keep_) {
      live_bits_ -= static_cast<int64_t>(store_[t]->bit_count());
      store_[t].reset();
    }
  }

  // takes the child's table for in-place reuse; copies when tables are kept
  DpTable grab(int child) {
    if (keep_ || refs_[child] > 1) {
      live_bits_ += static_cast<int64_t>(store_[child]->bit_count());
      return *store_[child];
    }
    return std::move(*store_[child]);
  }

  DpTable do_intro(int t, const ExprNode& nd) {
    csum_[t] = costs_(nd.v);
    wsum_[t] = weights_(nd.v);
    DpTable tab = fresh(t);
    for (auto [state, pays] : Traits::intro_entries(nd.v == vstar_)) {
      if (pays)
        tab.set(state, costs_(nd.v), weights_(nd.v));
      else
        tab.set(state, 0, 0);
    }
    return tab;
  }

  DpTable do_relabel(int t, const ExprNode& nd) {
    int child = nd.left;
    csum_[t] = csum_[child];
    wsum_[t] = wsum_[child];
    const auto& lc = aug_.live[child];
    int qi = digit_pos(lc, nd.a);
    if (qi < 0) {
      // both labels dead: states of dead labels are not tracked, copy
      assert(digit_pos(lc, nd.b) < 0);
      return grab(child);
    }
    int qj_child = digit_pos(lc, nd.b);
    if (qj_child < 0)
      throw std::runtime_error("dp: relabel with live source but dead target violates "
                               "irredundancy");
    const DpTable& ct = *store_[child];
    DpTable tab = fresh(t);
    const auto& lt = aug_.live[t];
    int qj = digit_pos(lt, nd.b);
    int len = static_cast<int>(lt.size());
    std::vector<int> digs(len), cdigs(len + 1);
    for (long f = 0; f < tab.nsig(); ++f) {
      long rest = f;
      for (int i = 0; i < len; ++i) {
        digs[i] = static_cast<int>(rest % R);
        rest /= R;
      }
      // child digit vector: result digits with a slot for label i at qi
      for (int i = 0, j = 0; i < len + 1; ++i)
        cdigs[i] = (i == qi) ? 0 : digs[j++];
      for (auto [s1, s2] : Traits::combine_pairs(digs[qj])) {
        cdigs[qi] = s1;
        cdigs[qj_child] = s2;
        long code = 0;
        for (int i = len; i >= 0; --i) code = code * R + cdigs[i];
        tab.xor_slice(f, ct, code);
      }
    }
    return tab;
  }

  DpTable do_join(int t, const ExprNode& nd) {
    int child = nd.left;
    csum_[t] = csum_[child];
    wsum_[t] = wsum_[child];
    const auto& lv = aug_.live[t];
    int qi = digit_pos(lv, nd.a);
    int qj = digit_pos(lv, nd.b);
    if (qi < 0 || qj < 0)
      throw std::runtime_error("dp: join on a dead label (expression is not nice)");
    DpTable tab = grab(child);
    long wi = ipow(R, qi), wj = ipow(R, qj);
    for (long f = 0; f < tab.nsig(); ++f) {
      int si = static_cast<int>((f / wi) % R);
      int sj = static_cast<int>((f / wj) % R);
      if (!Traits::feas(si, sj)) tab.clear_slice(f);
    }
    return tab;
  }

  DpTable do_dead(int t, const ExprNode& nd) {
    int child = nd.left;
    csum_[t] = csum_[child];
    wsum_[t] = wsum_[child];
    const auto& lc = aug_.live[child];
    int q = digit_pos(lc, nd.a);
    assert(q >= 0);
    const DpTable& ct = *store_[child];
    DpTable tab = fresh(t);
    long lo = ipow(R, q);
    for (long f = 0; f < tab.nsig(); ++f) {
      long high = (f / lo) * (lo * R);
      long low = f % lo;
      for (int s = 0; s < R; ++s) tab.xor_slice(f, ct, high + s * lo + low);
    }
    return tab;
  }

  DpTable do_union(int t, const ExprNode& nd) {
    int c1 = nd.left, c2 = nd.right;
    csum_[t] = csum_[c1] + csum_[c2];
    wsum_[t] = wsum_[c1] + wsum_[c2];
    UnionSplit sp = union_split(aug_, t);
    int s = static_cast<int>(sp.shared.size());
    const auto& l1 = aug_.live[c1];
    const auto& l2 = aug_.live[c2];
    const auto& lt = aug_.live[t];
    if (sp.only1.size() + sp.only2.size() + sp.shared.size() != lt.size())
      throw std::runtime_error("dp: union split does not partition the live labels");

    DpTable lz = grab(c1);
    DpTable rz = grab(c2);
    std::vector<long> base_l = partial_codes(R, l1, sp.only1);
    std::vector<long> off_l = partial_codes(R, l1, sp.shared);
    std::vector<long> base_r = partial_codes(R, l2, sp.only2);
    std::vector<long> off_r = partial_codes(R, l2, sp.shared);
    std::vector<long> res_1 = partial_codes(R, lt, sp.only1);
    std::vector<long> res_2 = partial_codes(R, lt, sp.only2);
    std::vector<long> res_s = partial_codes(R, lt, sp.shared);

    if (s > 0) {
      Traits::shared_schedule(false, s, [&](long p, long q) {
        for (long b : base_l) lz.xor_slice_inplace(b + off_l[p], b + off_l[q]);
      });
      Traits::shared_schedule(false, s, [&](long p, long q) {
        for (long b : base_r) rz.xor_slice_inplace(b + off_r[p], b + off_r[q]);
      });
    }
    DpTable tab = fresh(t);
    long shared_total = ipow(R, s);
    for (size_t a = 0; a < base_l.size(); ++a)
      for (size_t b = 0; b < base_r.size(); ++b)
        for (long g = 0; g < shared_total; ++g)
          tab.conv_add_slice(res_1[a] + res_2[b] + res_s[g], lz, base_l[a] + off_l[g], rz,
                             base_r[b] + off_r[g]);
    if (s > 0) {
      Traits::shared_schedule(true, s, [&](long p, long q) {
        for (size_t a = 0; a < res_1.size(); ++a)
          for (size_t b = 0; b < res_2.size(); ++b)
            tab.xor_slice_inplace(res_1[a] + res_2[b] + res_s[p],
                                  res_1[a] + res_2[b] + res_s[q]);
      });
    }
    return tab;
  }
};

}  // namespace cwc
