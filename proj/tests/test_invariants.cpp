#include <doctest.h>

#include <map>

#include "cwc/cds_solver.hpp"
#include "cwc/cvc_solver.hpp"
#include "cwc/oracle.hpp"
#include "cwc/rng.hpp"
#include "cwc/transform.hpp"
#include "helpers.hpp"

using namespace cwc;
using namespace cwc::testing;

namespace {

// restriction of a global CVC solution to a node's vertex set
struct Restriction {
  uint32_t x, xl, xr;  // over global vertex bits
};

}  // namespace

// No restriction of a global consistently cut vertex cover ever attains the
// full state {0,1L,1R} on a live label, so excluding it loses no solutions.
TEST_CASE("cvc full-state exclusion is sound") {
  for (int iter = 0; iter < 12; ++iter) {
    int n = 3 + iter % 4;  // 3..6
    CliqueExpression e = random_expression(n, 2 + iter % 2, 31337 + iter);
    AugmentedExpression aug = augment_with_dead_nodes(make_nice(make_irredundant(e)));
    FullAnnotation ann = annotate_full(aug.expr);
    LabeledGraph g = ann.graph;
    Vertex vstar = cvc_branch_vertices(g)[0];
    // all global consistently cut vertex covers with vstar on the left
    std::vector<Restriction> globals;
    long total = 1;
    for (int i = 0; i < n; ++i) total *= 3;
    for (long code = 0; code < total; ++code) {
      uint32_t xl = 0, xr = 0;
      long rest = code;
      for (int i = 0; i < n; ++i) {
        int a = static_cast<int>(rest % 3);
        rest /= 3;
        if (a == 1) xl |= 1u << i;
        if (a == 2) xr |= 1u << i;
      }
      uint32_t x = xl | xr;
      if (!(xl & (1u << vstar))) continue;
      bool ok = true;
      for (auto [u, v] : g.edges()) {
        bool iu = x & (1u << u), iv = x & (1u << v);
        if (!iu && !iv) ok = false;  // uncovered
        bool cross = ((xl >> u) & 1 && (xr >> v) & 1) || ((xr >> u) & 1 && (xl >> v) & 1);
        if (cross) ok = false;
      }
      if (ok) globals.push_back({x, xl, xr});
    }
    REQUIRE(!globals.empty());
    for (int t = 0; t < aug.expr.size(); ++t) {
      for (int l : aug.live[t]) {
        uint32_t lm = 0;
        for (Vertex v : ann.by_label[t][l]) lm |= 1u << v;
        for (const Restriction& r : globals) {
          // restrict to V_t and read the label state
          uint32_t vt = 0;
          for (Vertex v : ann.verts[t]) vt |= 1u << v;
          uint32_t x = r.x & vt, xl = r.xl & vt, xr = r.xr & vt;
          bool zero = (lm & ~x) != 0;
          bool left = (lm & xl) != 0;
          bool right = (lm & xr) != 0;
          CHECK_FALSE((zero && left && right));
        }
      }
    }
  }
}

namespace {

// Test-only refined CDS dynamic program over all eight subsets of {F,L,R}
// (no 2+ collapse), following the recurrences directly with map-backed
// tables. Slow, n <= 6.
struct RefinedCdsDp {
  using Key = std::tuple<long, int64_t, int64_t>;  // radix-8 signature, cost, weight
  using Table = std::map<Key, int>;

  const AugmentedExpression& aug;
  const CostFunction& costs;
  const WeightFunction& weights;
  Vertex vstar;

  static int refined_feas(int s1, int s2) {
    if (s1 == 0 || s2 == 0) return 1;
    bool f1 = s1 & 1, l1 = s1 & 2, r1 = s1 & 4;
    bool f2 = s2 & 1, l2 = s2 & 2, r2 = s2 & 4;
    bool x1 = l1 || r1, x2 = l2 || r2;
    if ((f1 && x2) || (f2 && x1)) return 0;  // edge into a forbidden vertex
    if ((l1 && r2) || (r1 && l2)) return 0;  // edge across the cut
    return 1;
  }

  Table run_node(int t, std::vector<Table>& store) {
    const ExprNode& nd = aug.expr.node(t);
    const auto& live = aug.live[t];
    auto pos = [&](const std::vector<int>& lv, int lab) {
      return static_cast<int>(std::lower_bound(lv.begin(), lv.end(), lab) - lv.begin());
    };
    Table out;
    switch (nd.op) {
      case Op::Intro: {
        bool pinned = nd.v == vstar;
        int64_t c = costs(nd.v), w = weights(nd.v);
        if (!pinned) {
          out[{0, 0, 0}] ^= 1;  // empty state: allowed
          out[{1, 0, 0}] ^= 1;  // {F}
          out[{4, c, w}] ^= 1;  // {R}
        }
        out[{2, c, w}] ^= 1;  // {L}
        break;
      }
      case Op::Relabel: {
        const auto& lc = aug.live[nd.left];
        bool live_case =
            std::binary_search(lc.begin(), lc.end(), nd.a);
        if (!live_case) {
          out = store[nd.left];
          break;
        }
        int qi = pos(lc, nd.a), qjc = pos(lc, nd.b);
        int qj = pos(live, nd.b);
        for (auto& [key, val] : store[nd.left]) {
          if (!val) continue;
          auto [sig, c, w] = key;
          std::vector<int> digs;
          long rest = sig;
          for (size_t i = 0; i < lc.size(); ++i) {
            digs.push_back(static_cast<int>(rest % 8));
            rest /= 8;
          }
          int merged = digs[qi] | digs[qjc];
          std::vector<int> nd2;
          for (size_t i = 0; i < lc.size(); ++i)
            if (static_cast<int>(i) != qi) nd2.push_back(digs[i]);
          nd2[qj] = merged;
          long code = 0;
          for (int i = static_cast<int>(nd2.size()) - 1; i >= 0; --i) code = code * 8 + nd2[i];
          out[{code, c, w}] ^= val;
        }
        break;
      }
      case Op::Join: {
        int qi = pos(live, nd.a), qj = pos(live, nd.b);
        for (auto& [key, val] : store[nd.left]) {
          if (!val) continue;
          auto [sig, c, w] = key;
          long wi = 1, wj = 1;
          for (int i = 0; i < qi; ++i) wi *= 8;
          for (int i = 0; i < qj; ++i) wj *= 8;
          long si = (sig / wi) % 8;
          long sj = (sig / wj) % 8;
          if (refined_feas(static_cast<int>(si), static_cast<int>(sj))) out[key] ^= val;
        }
        break;
      }
      case Op::Dead: {
        const auto& lc = aug.live[nd.left];
        int q = pos(lc, nd.a);
        long lo = 1;
        for (int i = 0; i < q; ++i) lo *= 8;
        for (auto& [key, val] : store[nd.left]) {
          if (!val) continue;
          auto [sig, c, w] = key;
          long high = sig / (lo * 8), low = sig % lo;
          out[{high * lo + low, c, w}] ^= val;
        }
        break;
      }
      case Op::Union: {
        const auto& l1 = aug.live[nd.left];
        const auto& l2 = aug.live[nd.right];
        for (auto& [k1, v1] : store[nd.left]) {
          if (!v1) continue;
          for (auto& [k2, v2] : store[nd.right]) {
            if (!v2) continue;
            auto [s1, c1, w1] = k1;
            auto [s2, c2, w2] = k2;
            // merge the two digit vectors onto the union's live list
            std::vector<int> digs(live.size(), 0);
            long r1 = s1;
            for (int lab : l1) {
              digs[pos(live, lab)] |= static_cast<int>(r1 % 8);
              r1 /= 8;
            }
            long r2 = s2;
            for (int lab : l2) {
              digs[pos(live, lab)] |= static_cast<int>(r2 % 8);
              r2 /= 8;
            }
            long code = 0;
            for (int i = static_cast<int>(digs.size()) - 1; i >= 0; --i)
              code = code * 8 + digs[i];
            out[{code, c1 + c2, w1 + w2}] ^= v1 & v2;
          }
        }
        break;
      }
    }
    return out;
  }

  Table run() {
    std::vector<Table> store(aug.expr.size());
    for (int t = 0; t < aug.expr.size(); ++t) store[t] = run_node(t, store);
    return store[aug.expr.root()];
  }
};

}  // namespace

// Refining 2+ back into the four size->=2 subsets changes nothing at the
// root: the collapse is a lattice congruence of the recurrences.
TEST_CASE("cds state collapse is lossless at the root") {
  for (int iter = 0; iter < 10; ++iter) {
    int n = 2 + iter % 5;  // 2..6
    CliqueExpression e = random_expression(n, 2 + iter % 2, 424200 + iter);
    LabeledGraph g = evaluate(e);
    AugmentedExpression aug = augment_with_dead_nodes(make_nice(make_irredundant(e)));
    CostFunction unit = CostFunction::unit(n);
    WeightFunction w = sample_weights(g, 17 + iter);
    for (Vertex vstar : cds_branch_vertices(g)) {
      CountPart fast = cds_count_part(aug, unit, w, vstar, false);
      RefinedCdsDp refined{aug, unit, w, vstar};
      auto root = refined.run();
      // the refined root signature domain is empty as well: compare parities
      for (int64_t c = 0; c <= fast.root.cmax(); ++c)
        for (int64_t ww = 0; ww <= fast.root.wmax(); ++ww) {
          auto it = root.find({0, c, ww});
          int want = it == root.end() ? 0 : (it->second & 1);
          CHECK(fast.root.test(0, c, ww) == (want != 0));
        }
    }
  }
}
