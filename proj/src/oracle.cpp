#include "cwc/oracle.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "cwc/cds_solver.hpp"
#include "cwc/cvc_solver.hpp"

namespace cwc {

namespace {

constexpr int kBruteLimit = 22;

std::vector<uint32_t> adjacency_masks(const LabeledGraph& g) {
  std::vector<uint32_t> adj(g.vertex_count(), 0);
  for (auto [u, v] : g.edges()) {
    adj[u] |= 1u << v;
    adj[v] |= 1u << u;
  }
  return adj;
}

bool induced_connected(const std::vector<uint32_t>& adj, uint32_t x) {
  if (x == 0) return true;  // vacuous
  uint32_t comp = x & (~x + 1);
  for (;;) {
    uint32_t frontier = 0;
    uint32_t probe = comp;
    while (probe) {
      int v = std::countr_zero(probe);
      probe &= probe - 1;
      frontier |= adj[v] & x;
    }
    uint32_t grown = comp | frontier;
    if (grown == comp) break;
    comp = grown;
  }
  return comp == x;
}

int64_t mask_cost(const CostFunction& c, uint32_t x) {
  int64_t s = 0;
  while (x) {
    s += c(std::countr_zero(x));
    x &= x - 1;
  }
  return s;
}

}  // namespace

std::optional<int64_t> brute_cvc(const LabeledGraph& g, const CostFunction& costs) {
  int n = g.vertex_count();
  if (n > kBruteLimit) throw std::runtime_error("brute_cvc: guard n <= 22 exceeded");
  auto adj = adjacency_masks(g);
  std::optional<int64_t> best;
  for (uint32_t x = 0; x < (1u << n); ++x) {
    // cover check: the complement must be independent
    uint32_t outside = ~x & ((1u << n) - 1);
    bool covered = true;
    uint32_t probe = outside;
    while (probe && covered) {
      int v = std::countr_zero(probe);
      probe &= probe - 1;
      if (adj[v] & outside) covered = false;
    }
    if (!covered || !induced_connected(adj, x)) continue;
    int64_t c = mask_cost(costs, x);
    if (!best || c < *best) best = c;
  }
  return best;
}

std::optional<int64_t> brute_cds(const LabeledGraph& g, const CostFunction& costs) {
  int n = g.vertex_count();
  if (n > kBruteLimit) throw std::runtime_error("brute_cds: guard n <= 22 exceeded");
  auto adj = adjacency_masks(g);
  uint32_t all = (1u << n) - 1;
  std::optional<int64_t> best;
  for (uint32_t x = 1; x <= all; ++x) {
    uint32_t dominated = x;
    uint32_t probe = x;
    while (probe) {
      int v = std::countr_zero(probe);
      probe &= probe - 1;
      dominated |= adj[v];
    }
    if (dominated != all || !induced_connected(adj, x)) continue;
    int64_t c = mask_cost(costs, x);
    if (!best || c < *best) best = c;
  }
  return best;
}

long count_consistent_cuts(const LabeledGraph& g, const std::vector<Vertex>& x, Vertex vstar) {
  if (std::find(x.begin(), x.end(), vstar) == x.end())
    throw std::runtime_error("count_consistent_cuts: vstar not in X");
  int m = static_cast<int>(x.size());
  if (m > 24) throw std::runtime_error("count_consistent_cuts: |X| too large");
  // local adjacency among the chosen vertices
  std::vector<uint32_t> adj(m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j && g.has_edge(x[i], x[j])) adj[i] |= 1u << j;
  int anchor = static_cast<int>(std::find(x.begin(), x.end(), vstar) - x.begin());
  long count = 0;
  for (uint32_t left = 0; left < (1u << m); ++left) {
    if (!(left & (1u << anchor))) continue;
    uint32_t right = ~left & ((1u << m) - 1);
    bool consistent = true;
    uint32_t probe = left;
    while (probe && consistent) {
      int v = std::countr_zero(probe);
      probe &= probe - 1;
      if (adj[v] & right) consistent = false;
    }
    if (consistent) ++count;
  }
  // anchored consistent cuts number exactly 2^(cc(G[X]) - 1)
  int cc = 0;
  uint32_t seen = 0;
  for (int i = 0; i < m; ++i) {
    if (seen & (1u << i)) continue;
    ++cc;
    uint32_t comp = 1u << i;
    for (;;) {
      uint32_t grow = comp;
      uint32_t p = comp;
      while (p) {
        int v = std::countr_zero(p);
        p &= p - 1;
        grow |= adj[v];
      }
      if (grow == comp) break;
      comp = grow;
    }
    seen |= comp;
  }
  if (count != (1L << (cc - 1)))
    throw std::logic_error("count_consistent_cuts: count disagrees with 2^(cc-1)");
  return count;
}

namespace {

// shared scaffolding for the per-node enumeration checks
struct NodeView {
  std::vector<Vertex> verts;          // V_t
  std::vector<uint32_t> adj;          // within E_t, local indices
  std::vector<uint32_t> label_mask;   // per live label, local indices
  std::vector<int64_t> vcost, vweight;
  int local_of_vstar = -1;            // -1 when absent
  int nt = 0;
};

NodeView make_view(const FullAnnotation& ann, const AugmentedExpression& aug, int t,
                   const CostFunction& costs, const WeightFunction& weights, Vertex vstar) {
  NodeView nv;
  nv.verts = ann.verts[t];
  nv.nt = static_cast<int>(nv.verts.size());
  std::vector<int> local(ann.graph.vertex_count(), -1);
  for (int i = 0; i < nv.nt; ++i) local[nv.verts[i]] = i;
  nv.adj.assign(nv.nt, 0);
  for (auto [u, v] : ann.edges[t]) {
    nv.adj[local[u]] |= 1u << local[v];
    nv.adj[local[v]] |= 1u << local[u];
  }
  for (int l : aug.live[t]) {
    uint32_t m = 0;
    for (Vertex v : ann.by_label[t][l]) m |= 1u << local[v];
    nv.label_mask.push_back(m);
  }
  nv.vcost.resize(nv.nt);
  nv.vweight.resize(nv.nt);
  for (int i = 0; i < nv.nt; ++i) {
    nv.vcost[i] = costs(nv.verts[i]);
    nv.vweight[i] = weights(nv.verts[i]);
  }
  if (vstar >= 0 && local[vstar] >= 0) nv.local_of_vstar = local[vstar];
  return nv;
}

std::string cell_string(int t, long sig, int64_t c, int64_t w) {
  return "node " + std::to_string(t) + ", signature " + std::to_string(sig) + ", cost " +
         std::to_string(c) + ", weight " + std::to_string(w);
}

template <class EnumerateFn>
VerifyReport verify_tables(const AugmentedExpression& aug, const CostFunction& costs,
                           const WeightFunction& weights, Vertex vstar, int radix,
                           const std::vector<DpTable>& tables, EnumerateFn&& enumerate) {
  VerifyReport rep;
  FullAnnotation ann = annotate_full(aug.expr);
  for (int t = 0; t < aug.expr.size(); ++t) {
    NodeView nv = make_view(ann, aug, t, costs, weights, vstar);
    int nlive = static_cast<int>(aug.live[t].size());
    long nsig = 1;
    for (int i = 0; i < nlive; ++i) nsig *= radix;
    int64_t cmax = 0, wmax = 0;
    for (int i = 0; i < nv.nt; ++i) {
      cmax += nv.vcost[i];
      wmax += nv.vweight[i];
    }
    size_t cells = static_cast<size_t>(nsig) * (cmax + 1) * (wmax + 1);
    if (cells > 200'000'000)
      throw std::runtime_error("verify_dp_tables: node table too large to enumerate");
    std::vector<uint8_t> parity(cells, 0);
    auto flip = [&](long sig, int64_t c, int64_t w) {
      parity[(static_cast<size_t>(sig) * (cmax + 1) + c) * (wmax + 1) + w] ^= 1;
    };
    enumerate(nv, t, flip);
    const DpTable& tab = tables[t];
    for (long s = 0; s < nsig; ++s)
      for (int64_t c = 0; c <= cmax; ++c)
        for (int64_t w = 0; w <= wmax; ++w) {
          bool got = tab.test(s, c, w);
          bool want = parity[(static_cast<size_t>(s) * (cmax + 1) + c) * (wmax + 1) + w];
          ++rep.cells_compared;
          if (got != want) {
            rep.ok = false;
            rep.detail = cell_string(t, s, c, w) + ": dp=" + std::to_string(got) +
                         " enumeration=" + std::to_string(want);
            return rep;
          }
        }
    ++rep.nodes_checked;
  }
  return rep;
}

}  // namespace

VerifyReport verify_cvc_tables_against(const AugmentedExpression& aug, const CostFunction& costs,
                                       const WeightFunction& weights, Vertex vstar,
                                       const std::vector<DpTable>& tables) {
  if (aug.expr.vertex_count() > 8)
    throw std::runtime_error("verify_dp_tables: guard n <= 8 exceeded");
  // enumerate consistently cut vertex covers of G_t, bucketed by the live
  // label states; solutions hitting the excluded full state are skipped
  auto enumerate = [&](const NodeView& nv, int /*t*/, auto&& flip) {
    long total = 1;
    for (int i = 0; i < nv.nt; ++i) total *= 3;
    for (long code = 0; code < total; ++code) {
      uint32_t xl = 0, xr = 0;
      long rest = code;
      for (int i = 0; i < nv.nt; ++i) {
        int a = static_cast<int>(rest % 3);
        rest /= 3;
        if (a == 1) xl |= 1u << i;
        if (a == 2) xr |= 1u << i;
      }
      uint32_t x = xl | xr;
      uint32_t outside = ~x & ((1u << nv.nt) - 1);
      if (nv.local_of_vstar >= 0 && !(xl & (1u << nv.local_of_vstar))) continue;
      bool ok = true;
      uint32_t probe = outside;
      while (probe && ok) {  // vertex cover of E_t
        int v = std::countr_zero(probe);
        probe &= probe - 1;
        if (nv.adj[v] & outside) ok = false;
      }
      probe = xl;
      while (probe && ok) {  // consistent cut
        int v = std::countr_zero(probe);
        probe &= probe - 1;
        if (nv.adj[v] & xr) ok = false;
      }
      if (!ok) continue;
      long sig = 0;
      bool skip = false;
      for (int li = static_cast<int>(nv.label_mask.size()) - 1; li >= 0; --li) {
        uint32_t lm = nv.label_mask[li];
        uint32_t m = 0;
        if (lm & ~x) m |= 1;  // some label vertex outside X
        if (lm & xl) m |= 2;
        if (lm & xr) m |= 4;
        int st = cvc_states::state_of_mask(m);
        if (st < 0) {
          skip = true;  // the full state cannot extend to a global solution
          break;
        }
        sig = sig * 6 + st;
      }
      if (skip) continue;
      int64_t c = 0, w = 0;
      probe = x;
      while (probe) {
        int v = std::countr_zero(probe);
        probe &= probe - 1;
        c += nv.vcost[v];
        w += nv.vweight[v];
      }
      flip(sig, c, w);
    }
  };
  return verify_tables(aug, costs, weights, vstar, 6, tables, enumerate);
}

VerifyReport verify_dp_tables_cvc(const AugmentedExpression& aug, const CostFunction& costs,
                                  const WeightFunction& weights, Vertex vstar) {
  if (aug.expr.vertex_count() > 8)
    throw std::runtime_error("verify_dp_tables: guard n <= 8 exceeded");
  CountPart cp = cvc_count_part(aug, costs, weights, vstar, true);
  return verify_cvc_tables_against(aug, costs, weights, vstar, cp.tables);
}

VerifyReport verify_cds_tables_against(const AugmentedExpression& aug, const CostFunction& costs,
                                       const WeightFunction& weights, Vertex vstar,
                                       const std::vector<DpTable>& tables) {
  if (aug.expr.vertex_count() > 8)
    throw std::runtime_error("verify_dp_tables: guard n <= 8 exceeded");
  FullAnnotation ann = annotate_full(aug.expr);
  auto enumerate = [&](const NodeView& nv, int t, auto&& flip) {
    std::vector<int> local(ann.graph.vertex_count(), -1);
    for (int i = 0; i < nv.nt; ++i) local[nv.verts[i]] = i;
    // vertices under dead labels must end up dominated
    uint32_t dead_mask = 0;
    for (int l : aug.nonempty[t]) {
      const auto& lv = aug.live[t];
      if (std::binary_search(lv.begin(), lv.end(), l)) continue;
      for (Vertex v : ann.by_label[t][l]) dead_mask |= 1u << local[v];
    }
    long total = 1;
    for (int i = 0; i < nv.nt; ++i) total *= 4;
    for (long code = 0; code < total; ++code) {
      uint32_t xl = 0, xr = 0, fset = 0;
      long rest = code;
      for (int i = 0; i < nv.nt; ++i) {
        int a = static_cast<int>(rest % 4);
        rest /= 4;
        if (a == 1) xl |= 1u << i;
        if (a == 2) xr |= 1u << i;
        if (a == 3) fset |= 1u << i;
      }
      uint32_t x = xl | xr;
      if (nv.local_of_vstar >= 0 && !(xl & (1u << nv.local_of_vstar))) continue;
      bool ok = true;
      uint32_t probe = xl;
      while (probe && ok) {  // consistent cut of G_t[X]
        int v = std::countr_zero(probe);
        probe &= probe - 1;
        if (nv.adj[v] & xr) ok = false;
      }
      if (!ok) continue;
      uint32_t nclosed = x;
      probe = x;
      while (probe) {
        int v = std::countr_zero(probe);
        probe &= probe - 1;
        nclosed |= nv.adj[v];
      }
      if (nclosed & fset) continue;                  // forbidden vertex dominated
      if (dead_mask & ~nclosed) continue;            // dead labels must be dominated
      long sig = 0;
      for (int li = static_cast<int>(nv.label_mask.size()) - 1; li >= 0; --li) {
        uint32_t lm = nv.label_mask[li];
        uint32_t m = 0;
        if (lm & fset) m |= 1;
        if (lm & xl) m |= 2;
        if (lm & xr) m |= 4;
        sig = sig * 5 + cds_states::state_of_mask(m);
      }
      int64_t c = 0, w = 0;
      probe = x;
      while (probe) {
        int v = std::countr_zero(probe);
        probe &= probe - 1;
        c += nv.vcost[v];
        w += nv.vweight[v];
      }
      flip(sig, c, w);
    }
  };
  return verify_tables(aug, costs, weights, vstar, 5, tables, enumerate);
}

VerifyReport verify_dp_tables_cds(const AugmentedExpression& aug, const CostFunction& costs,
                                  const WeightFunction& weights, Vertex vstar) {
  if (aug.expr.vertex_count() > 8)
    throw std::runtime_error("verify_dp_tables: guard n <= 8 exceeded");
  CountPart cp = cds_count_part(aug, costs, weights, vstar, true);
  return verify_cds_tables_against(aug, costs, weights, vstar, cp.tables);
}

namespace {

// local state tables so these references stay independent of the solvers
constexpr uint32_t kCvcMask[6] = {1, 2, 3, 4, 5, 6};
constexpr uint32_t kCdsMask[5] = {0, 1, 2, 4, 7};

int cvc_index(uint32_t m) { return (m == 0 || m >= 7) ? -1 : static_cast<int>(m) - 1; }

int cds_merge_index(uint32_t m) {
  if (std::popcount(m) >= 2) return 4;
  switch (m) {
    case 0: return 0;
    case 1: return 1;
    case 2: return 2;
    default: return 3;
  }
}

}  // namespace

std::vector<uint8_t> naive_componentwise_cover(int k, const std::vector<uint8_t>& a,
                                               const std::vector<uint8_t>& b) {
  if (k > 5) throw std::runtime_error("naive_componentwise_cover: guard k <= 5 exceeded");
  long total = 1;
  for (int i = 0; i < k; ++i) total *= 6;
  if (a.size() != static_cast<size_t>(total) || b.size() != static_cast<size_t>(total))
    throw std::runtime_error("naive_componentwise_cover: size mismatch");
  std::vector<uint8_t> out(total, 0);
  for (long f1 = 0; f1 < total; ++f1) {
    if (!a[f1]) continue;
    for (long f2 = 0; f2 < total; ++f2) {
      if (!b[f2]) continue;
      long target = 0, w = 1, r1 = f1, r2 = f2;
      bool ok = true;
      for (int i = 0; i < k; ++i) {
        int u = cvc_index(kCvcMask[r1 % 6] | kCvcMask[r2 % 6]);
        if (u < 0) {
          ok = false;
          break;
        }
        target += w * u;
        w *= 6;
        r1 /= 6;
        r2 /= 6;
      }
      if (ok) out[target] ^= 1;
    }
  }
  return out;
}

std::vector<uint8_t> naive_vee_product(int k, const std::vector<uint8_t>& a,
                                       const std::vector<uint8_t>& b) {
  if (k > 5) throw std::runtime_error("naive_vee_product: guard k <= 5 exceeded");
  long total = 1;
  for (int i = 0; i < k; ++i) total *= 5;
  if (a.size() != static_cast<size_t>(total) || b.size() != static_cast<size_t>(total))
    throw std::runtime_error("naive_vee_product: size mismatch");
  std::vector<uint8_t> out(total, 0);
  for (long g1 = 0; g1 < total; ++g1) {
    if (!a[g1]) continue;
    for (long g2 = 0; g2 < total; ++g2) {
      if (!b[g2]) continue;
      long target = 0, w = 1, r1 = g1, r2 = g2;
      for (int i = 0; i < k; ++i) {
        target += w * cds_merge_index(kCdsMask[r1 % 5] | kCdsMask[r2 % 5]);
        w *= 5;
        r1 /= 5;
        r2 /= 5;
      }
      out[target] ^= 1;
    }
  }
  return out;
}

}  // namespace cwc
