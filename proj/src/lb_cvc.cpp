#include <algorithm>

#include "lb_layout.hpp"

namespace cwc {

namespace lb {
namespace {

GadgetParams cvc_params(const SatInstance& sat, int beta) {
  GadgetParams gp;
  gp.beta = beta;
  gp.t = (sat.nvars + beta - 1) / beta;
  gp.p = 1;
  long pow6 = 6;
  while (pow6 < (1L << beta)) {  // smallest p with 6^p >= 2^beta
    pow6 *= 6;
    ++gp.p;
  }
  gp.hp = static_cast<int>(pow6);
  long m = static_cast<long>(sat.clauses.size());
  gp.columns = m * (5L * gp.t * gp.p + 1);
  return gp;
}

GridLayout cvc_grid(const GadgetParams& gp) {
  return GridLayout(gp.t, gp.p, gp.hp, gp.columns, CvcGeom::kSize);
}

// digits of the decoding sequence h (0-based code H, digit + 1 in [1..6])
int h_digit(int code, int j) {
  for (int q = 0; q < j; ++q) code /= 6;
  return code % 6 + 1;
}

}  // namespace
}  // namespace lb

using namespace lb;

GeneratedInstance build_cvc_instance(const SatInstance& sat, int beta) {
  if (beta < 1) throw std::runtime_error("generator: beta must be >= 1");
  if (beta > 20) throw std::runtime_error("generator: beta too large to enumerate assignments");
  GadgetParams gp = cvc_params(sat, beta);
  GridLayout g = cvc_grid(gp);
  long n = g.total();
  if (n > 20'000'000) throw std::runtime_error("generator: instance too large");

  GeneratedInstance inst;
  inst.params = gp;
  inst.graph = LabeledGraph(static_cast<int>(n), 2);
  inst.roles.assign(n, "");
  LabeledGraph& gr = inst.graph;
  gr.set_label(0, 1);  // root keeps its own label, the rest end in the trash label
  for (long v = 1; v < n; ++v) gr.set_label(static_cast<Vertex>(v), 2);

  auto role = [&](long v, const std::string& r) { inst.roles[v] = r; };
  role(g.root(), "root:r");
  role(g.root_leaf(), "root:r_leaf");
  gr.add_edge(0, 1);

  const auto internal = CvcGeom::internal_edges();
  const auto rootadj = CvcGeom::root_adjacent();
  const auto names = CvcGeom::names();
  long m = static_cast<long>(sat.clauses.size());

  for (long l = 0; l < g.cols; ++l) {
    std::string col = "[" + std::to_string(l) + "]";
    gr.add_edge(static_cast<Vertex>(g.o(l)), static_cast<Vertex>(g.obar(l)));
    role(g.o(l), "clause:o" + col);
    role(g.obar(l), "clause:obar" + col);
    const auto& clause = sat.clauses[l % m];
    for (int i = 0; i < g.t; ++i) {
      std::string gi = "[" + std::to_string(i) + "]" + col;
      gr.add_edge(static_cast<Vertex>(g.z(i, l)), static_cast<Vertex>(g.zbar(i, l)));
      role(g.z(i, l), "decoding:z" + gi);
      role(g.zbar(i, l), "decoding:zbar" + gi);
      for (int h = 0; h < g.hp; ++h) {
        std::string hs = gi + "[h=" + std::to_string(h) + "]";
        role(g.x(i, l, h), "decoding:x" + hs);
        role(g.xbar(i, l, h), "decoding:xbar" + hs);
        role(g.y(i, l, h), "decoding:y" + hs);
        gr.add_edge(static_cast<Vertex>(g.x(i, l, h)), static_cast<Vertex>(g.xbar(i, l, h)));
        gr.add_edge(static_cast<Vertex>(g.x(i, l, h)), static_cast<Vertex>(g.y(i, l, h)));
        gr.add_edge(static_cast<Vertex>(g.y(i, l, h)), 0);
        gr.add_edge(static_cast<Vertex>(g.y(i, l, h)), static_cast<Vertex>(g.z(i, l)));
      }
      // clause wiring through the injection kappa (base-6 digits, +1)
      int sz = group_size(sat, beta, i);
      for (uint32_t tau = 0; tau < (1u << sz); ++tau)
        if (group_assignment_satisfies(sat, beta, i, tau, clause))
          gr.add_edge(static_cast<Vertex>(g.o(l)),
                      static_cast<Vertex>(g.y(i, l, static_cast<int>(tau))));
      for (int j = 0; j < g.p; ++j) {
        long base = g.gadget(i, j, l);
        std::string pj = "P[" + std::to_string(i) + "," + std::to_string(j) + "]" + col;
        for (int w = 0; w < CvcGeom::kSize; ++w) {
          std::string cat = "auxiliary";
          if (w <= 3) cat = "join";
          else if (w >= CvcGeom::v(1)) cat = "clique";
          else if (w >= CvcGeom::b(1, 0)) cat = "indicator";
          role(base + w, cat + ":" + pj + "." + names[w]);
        }
        for (auto [a, b] : internal)
          gr.add_edge(static_cast<Vertex>(base + a), static_cast<Vertex>(base + b));
        for (int w : rootadj) gr.add_edge(static_cast<Vertex>(base + w), 0);
        for (int h = 0; h < g.hp; ++h)
          gr.add_edge(static_cast<Vertex>(g.x(i, l, h)),
                      static_cast<Vertex>(base + CvcGeom::v(h_digit(h, j))));
        if (l == 0) {
          gr.add_edge(static_cast<Vertex>(base + CvcGeom::u(1)), 0);
          gr.add_edge(static_cast<Vertex>(base + CvcGeom::u(2)), 0);
        } else {
          long prev = g.gadget(i, j, l - 1);
          for (int uin : {CvcGeom::u(1), CvcGeom::u(2)})
            for (int uout : {CvcGeom::u(3), CvcGeom::u(4)})
              gr.add_edge(static_cast<Vertex>(prev + uout), static_cast<Vertex>(base + uin));
        }
        if (l == g.cols - 1) {
          gr.add_edge(static_cast<Vertex>(base + CvcGeom::u(3)), 0);
          gr.add_edge(static_cast<Vertex>(base + CvcGeom::u(4)), 0);
        }
      }
    }
  }
  inst.budget =
      (21L * gp.t * gp.p + (gp.hp + 2L) * gp.t + 1) * gp.columns + 1;
  return inst;
}

CliqueExpression emit_cvc_linear_expression(const GeneratedInstance& inst) {
  const GadgetParams& gp = inst.params;
  GridLayout g = cvc_grid(gp);
  const LabeledGraph& gr = inst.graph;
  LinearEmitter em;
  const int root = em.root_label();

  em.intro(static_cast<Vertex>(g.root()), root);
  em.intro(static_cast<Vertex>(g.root_leaf()), em.trash_label());
  em.join(root, em.trash_label());

  const auto internal = CvcGeom::internal_edges();
  const auto rootadj = CvcGeom::root_adjacent();
  std::vector<std::vector<int>> path_label(g.t, std::vector<int>(g.p, -1));
  std::vector<int> xlab(g.hp);

  for (long l = 0; l < g.cols; ++l) {
    int olab = em.alloc();
    em.intro(static_cast<Vertex>(g.o(l)), olab);
    {
      int tl = em.alloc();
      em.intro(static_cast<Vertex>(g.obar(l)), tl);
      em.join(olab, tl);
      em.retire(tl);
    }
    for (int i = 0; i < g.t; ++i) {
      // decoding gadget first, its x vertices stay live through the row
      int zlab = em.alloc();
      em.intro(static_cast<Vertex>(g.z(i, l)), zlab);
      {
        int tl = em.alloc();
        em.intro(static_cast<Vertex>(g.zbar(i, l)), tl);
        em.join(zlab, tl);
        em.retire(tl);
      }
      for (int h = 0; h < g.hp; ++h) {
        xlab[h] = em.alloc();
        em.intro(static_cast<Vertex>(g.x(i, l, h)), xlab[h]);
        int tl = em.alloc();
        em.intro(static_cast<Vertex>(g.xbar(i, l, h)), tl);
        em.join(xlab[h], tl);
        em.retire(tl);
        int yl = em.alloc();
        em.intro(static_cast<Vertex>(g.y(i, l, h)), yl);
        em.join(xlab[h], yl);
        em.join(root, yl);
        em.join(zlab, yl);
        if (gr.has_edge(static_cast<Vertex>(g.o(l)), static_cast<Vertex>(g.y(i, l, h))))
          em.join(olab, yl);
        em.retire(yl);
      }
      em.retire(zlab);
      for (int j = 0; j < g.p; ++j) {
        long base = g.gadget(i, j, l);
        std::vector<int> glab(CvcGeom::kSize);
        for (int w = 0; w < CvcGeom::kSize; ++w) {
          glab[w] = em.alloc();
          em.intro(static_cast<Vertex>(base + w), glab[w]);
        }
        for (auto [a, b] : internal) em.join(glab[a], glab[b]);
        for (int w : rootadj) em.join(root, glab[w]);
        for (int h = 0; h < g.hp; ++h)
          em.join(xlab[h], glab[CvcGeom::v(h_digit(h, j))]);
        // stitch this gadget onto the row
        int& path = path_label[i][j];
        if (l == 0) {
          em.join(root, glab[CvcGeom::u(1)]);
          em.join(root, glab[CvcGeom::u(2)]);
        } else {
          em.join(path, glab[CvcGeom::u(1)]);
          em.join(path, glab[CvcGeom::u(2)]);
        }
        if (path >= 0) em.retire(path);
        path = glab[CvcGeom::u(3)];
        em.relabel(glab[CvcGeom::u(4)], path);
        em.recycle(glab[CvcGeom::u(4)]);
        for (int w = 0; w < CvcGeom::kSize; ++w) {
          if (w == CvcGeom::u(3) || w == CvcGeom::u(4)) continue;
          em.retire(glab[w]);
        }
      }
      for (int h = 0; h < g.hp; ++h) em.retire(xlab[h]);
    }
    em.retire(olab);
  }
  for (int i = 0; i < g.t; ++i)
    for (int j = 0; j < g.p; ++j) {
      em.join(root, path_label[i][j]);
      em.retire(path_label[i][j]);
    }
  return em.finish();
}

GeneratedInstance generate_cvc(const SatInstance& sat, int beta) {
  GeneratedInstance inst = build_cvc_instance(sat, beta);
  inst.expr = emit_cvc_linear_expression(inst);
  inst.width = width(inst.expr);
  return inst;
}

// ---- gadget fixtures and checks ---------------------------------------------

PathGadget build_cvc_path_gadget() {
  PathGadget pg;
  pg.inner = LabeledGraph(CvcGeom::kSize, 1);
  for (auto [a, b] : CvcGeom::internal_edges()) pg.inner.add_edge(a, b);
  pg.root_adjacent = [] {
    auto r = CvcGeom::root_adjacent();
    return std::vector<Vertex>(r.begin(), r.end());
  }();
  pg.names = CvcGeom::names();
  pg.join_in = {CvcGeom::u(1), CvcGeom::u(2)};
  pg.join_out = {CvcGeom::u(3), CvcGeom::u(4)};
  for (int l = 1; l <= 6; ++l) pg.clique.push_back(CvcGeom::v(l));
  pg.states = 6;
  return pg;
}

std::vector<Vertex> cvc_canonical_cover(int ell) {
  auto c = CvcGeom::canonical(ell);
  return std::vector<Vertex>(c.begin(), c.end());
}

namespace lb {
namespace {

// one or two gadget copies plus the root; copy q occupies
// [1 + q*size, 1 + (q+1)*size) with the root at vertex 0
LabeledGraph gadget_assembly(const PathGadget& pg, int copies, bool join_between) {
  int size = pg.inner.vertex_count();
  LabeledGraph g(1 + copies * size, 1);
  for (int q = 0; q < copies; ++q) {
    int base = 1 + q * size;
    for (auto [a, b] : pg.inner.edges()) g.add_edge(base + a, base + b);
    for (Vertex r : pg.root_adjacent) g.add_edge(base + r, 0);
  }
  if (copies == 2 && join_between) {
    for (Vertex out : pg.join_out)
      for (Vertex in : pg.join_in) g.add_edge(1 + out, 1 + size + in);
  }
  return g;
}

// root-connectivity of every vertex of X in G[X u {root}]
std::vector<char> root_connected(const LabeledGraph& g, const std::vector<char>& in_x) {
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<Vertex> stack = {0};
  seen[0] = 1;
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    for (Vertex v : g.neighbors(u))
      if (!seen[v] && in_x[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
  }
  return seen;
}

}  // namespace
}  // namespace lb

CanonicalCheck check_cvc_canonical_covers() {
  CanonicalCheck out;
  PathGadget pg = build_cvc_path_gadget();
  LabeledGraph g = gadget_assembly(pg, 1, false);
  for (int ell = 1; ell <= 6; ++ell) {
    auto xp = cvc_canonical_cover(ell);
    if (xp.size() != 21) {
      out.ok = false;
      out.detail = "X_P^" + std::to_string(ell) + " has size " + std::to_string(xp.size());
      return out;
    }
    std::vector<char> in_x(g.vertex_count(), 0);
    in_x[0] = 1;
    for (Vertex v : xp) in_x[1 + v] = 1;
    // vertex cover of the gadget's internal edges
    for (auto [a, b] : pg.inner.edges())
      if (!in_x[1 + a] && !in_x[1 + b]) {
        out.ok = false;
        out.detail = "X_P^" + std::to_string(ell) + " misses edge " + pg.names[a] + "-" +
                     pg.names[b];
        return out;
      }
    // clique residue: exactly v_ell avoided
    for (int l = 1; l <= 6; ++l)
      if (in_x[1 + CvcGeom::v(l)] == (l == ell)) {
        out.ok = false;
        out.detail = "X_P^" + std::to_string(ell) + " clique selection wrong at v" +
                     std::to_string(l);
        return out;
      }
    // boundary states
    auto conn = root_connected(g, in_x);
    for (int i = 1; i <= 4; ++i) {
      Vertex u = 1 + CvcGeom::u(i);
      CvcAtom want = kCvcState[ell - 1][i - 1];
      CvcAtom got = !in_x[u] ? CA_0 : (conn[u] ? CA_11 : CA_10);
      if (got != want) {
        out.ok = false;
        out.detail = "X_P^" + std::to_string(ell) + " state at u" + std::to_string(i) +
                     " is " + std::to_string(got) + ", expected " + std::to_string(want);
        return out;
      }
    }
  }
  return out;
}

std::vector<TransitionEntry> cvc_transition_matrix() {
  PathGadget pg = build_cvc_path_gadget();
  LabeledGraph g = gadget_assembly(pg, 2, true);
  int size = pg.inner.vertex_count();
  std::vector<TransitionEntry> entries;
  for (int l1 = 1; l1 <= 6; ++l1)
    for (int l2 = 1; l2 <= 6; ++l2) {
      TransitionEntry te;
      te.l1 = l1;
      te.l2 = l2;
      std::vector<char> in_x(g.vertex_count(), 0);
      in_x[0] = 1;
      for (Vertex v : cvc_canonical_cover(l1)) in_x[1 + v] = 1;
      for (Vertex v : cvc_canonical_cover(l2)) in_x[1 + size + v] = 1;
      // join edges must be covered
      for (Vertex uout : pg.join_out)
        for (Vertex uin : pg.join_in)
          if (!in_x[1 + uout] && !in_x[1 + size + uin]) {
            te.uncovered_edge = true;
            if (te.witness.empty())
              te.witness = pg.names[uout] + "^1-" + pg.names[uin] + "^2";
          }
      // inner join vertices in X must reach the root
      auto conn = root_connected(g, in_x);
      std::vector<Vertex> inner = {1 + pg.join_out[0], 1 + pg.join_out[1],
                                   1 + size + pg.join_in[0], 1 + size + pg.join_in[1]};
      for (Vertex u : inner)
        if (in_x[u] && !conn[u]) {
          te.unconnected_vertex = true;
          if (te.witness.empty()) te.witness = "vertex " + std::to_string(u);
        }
      te.violation = te.uncovered_edge || te.unconnected_vertex;
      entries.push_back(te);
    }
  return entries;
}

}  // namespace cwc
