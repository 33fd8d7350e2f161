#include <algorithm>

#include "lb_layout.hpp"

namespace cwc {

namespace lb {
namespace {

GadgetParams cds_params(const SatInstance& sat, int beta) {
  GadgetParams gp;
  gp.beta = beta;
  gp.t = (sat.nvars + beta - 1) / beta;
  gp.p = 1;
  long pow5 = 5;
  while (pow5 < (1L << beta)) {  // smallest p with 5^p >= 2^beta
    pow5 *= 5;
    ++gp.p;
  }
  gp.hp = static_cast<int>(pow5);
  long m = static_cast<long>(sat.clauses.size());
  gp.columns = m * (4L * gp.t * gp.p + 1);
  return gp;
}

GridLayout cds_grid(const GadgetParams& gp) {
  return GridLayout(gp.t, gp.p, gp.hp, gp.columns, CdsGeom::kSize);
}

int h_digit(int code, int j) {
  for (int q = 0; q < j; ++q) code /= 5;
  return code % 5 + 1;
}

}  // namespace
}  // namespace lb

using namespace lb;

GeneratedInstance build_cds_instance(const SatInstance& sat, int beta) {
  if (beta < 1) throw std::runtime_error("generator: beta must be >= 1");
  if (beta > 20) throw std::runtime_error("generator: beta too large to enumerate assignments");
  GadgetParams gp = cds_params(sat, beta);
  GridLayout g = cds_grid(gp);
  long n = g.total();
  if (n > 20'000'000) throw std::runtime_error("generator: instance too large");

  GeneratedInstance inst;
  inst.params = gp;
  inst.graph = LabeledGraph(static_cast<int>(n), 2);
  inst.roles.assign(n, "");
  LabeledGraph& gr = inst.graph;
  gr.set_label(0, 1);
  for (long v = 1; v < n; ++v) gr.set_label(static_cast<Vertex>(v), 2);

  auto role = [&](long v, const std::string& r) { inst.roles[v] = r; };
  role(g.root(), "root:r");
  role(g.root_leaf(), "root:r_leaf");
  gr.add_edge(0, 1);

  const auto plain = CdsGeom::plain_edges();
  const auto subdiv = CdsGeom::subdivided();
  const auto rootadj = CdsGeom::root_adjacent();
  const auto names = CdsGeom::names();
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
      int sz = group_size(sat, beta, i);
      for (uint32_t tau = 0; tau < (1u << sz); ++tau)
        if (group_assignment_satisfies(sat, beta, i, tau, clause))
          gr.add_edge(static_cast<Vertex>(g.o(l)),
                      static_cast<Vertex>(g.y(i, l, static_cast<int>(tau))));
      for (int j = 0; j < g.p; ++j) {
        long base = g.gadget(i, j, l);
        std::string pj = "P[" + std::to_string(i) + "," + std::to_string(j) + "]" + col;
        for (int w = 0; w < CdsGeom::kSize; ++w) {
          std::string cat = "auxiliary";
          if (w <= 3) cat = "join";
          else if (w >= 27) cat = "auxiliary";  // subdividers
          else if (w >= CdsGeom::v(1)) cat = "clique";
          else if (w >= CdsGeom::b(1, 0)) cat = "indicator";
          role(base + w, cat + ":" + pj + "." + names[w]);
        }
        for (auto [a, b] : plain)
          gr.add_edge(static_cast<Vertex>(base + a), static_cast<Vertex>(base + b));
        for (const auto& sd : subdiv) {
          gr.add_edge(static_cast<Vertex>(base + sd[0]), static_cast<Vertex>(base + sd[1]));
          gr.add_edge(static_cast<Vertex>(base + sd[0]), static_cast<Vertex>(base + sd[2]));
        }
        for (int w : rootadj) gr.add_edge(static_cast<Vertex>(base + w), 0);
        for (int h = 0; h < g.hp; ++h)
          gr.add_edge(static_cast<Vertex>(g.x(i, l, h)),
                      static_cast<Vertex>(base + CdsGeom::v(h_digit(h, j))));
        if (l == 0) {
          gr.add_edge(static_cast<Vertex>(base + CdsGeom::u(1, 1)), 0);
          gr.add_edge(static_cast<Vertex>(base + CdsGeom::u(1, 2)), 0);
        } else {
          long prev = g.gadget(i, j, l - 1);
          for (int uin : {CdsGeom::u(1, 1), CdsGeom::u(1, 2)})
            for (int uout : {CdsGeom::u(2, 1), CdsGeom::u(2, 2)})
              gr.add_edge(static_cast<Vertex>(prev + uout), static_cast<Vertex>(base + uin));
        }
        if (l == g.cols - 1) {
          gr.add_edge(static_cast<Vertex>(base + CdsGeom::u(2, 1)), 0);
          gr.add_edge(static_cast<Vertex>(base + CdsGeom::u(2, 2)), 0);
        }
      }
    }
  }
  inst.budget =
      (14L * gp.t * gp.p + (gp.hp + 2L) * gp.t + 1) * gp.columns + 1;
  return inst;
}

CliqueExpression emit_cds_linear_expression(const GeneratedInstance& inst) {
  const GadgetParams& gp = inst.params;
  GridLayout g = cds_grid(gp);
  const LabeledGraph& gr = inst.graph;
  LinearEmitter em;
  const int root = em.root_label();

  em.intro(static_cast<Vertex>(g.root()), root);
  em.intro(static_cast<Vertex>(g.root_leaf()), em.trash_label());
  em.join(root, em.trash_label());

  const auto plain = CdsGeom::plain_edges();
  const auto subdiv = CdsGeom::subdivided();
  const auto rootadj = CdsGeom::root_adjacent();
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
        // base vertices get temp labels; each subdivider is introduced,
        // wired to its two endpoints, and retired straight away
        std::vector<int> glab(27);
        for (int w = 0; w < 27; ++w) {
          glab[w] = em.alloc();
          em.intro(static_cast<Vertex>(base + w), glab[w]);
        }
        for (auto [a, b] : plain) em.join(glab[a], glab[b]);
        for (const auto& sd : subdiv) {
          int wl = em.alloc();
          em.intro(static_cast<Vertex>(base + sd[0]), wl);
          em.join(wl, glab[sd[1]]);
          em.join(wl, glab[sd[2]]);
          em.retire(wl);
        }
        for (int w : rootadj) em.join(root, glab[w]);
        for (int h = 0; h < g.hp; ++h)
          em.join(xlab[h], glab[CdsGeom::v(h_digit(h, j))]);
        int& path = path_label[i][j];
        if (l == 0) {
          em.join(root, glab[CdsGeom::u(1, 1)]);
          em.join(root, glab[CdsGeom::u(1, 2)]);
        } else {
          em.join(path, glab[CdsGeom::u(1, 1)]);
          em.join(path, glab[CdsGeom::u(1, 2)]);
        }
        if (path >= 0) em.retire(path);
        path = glab[CdsGeom::u(2, 1)];
        em.relabel(glab[CdsGeom::u(2, 2)], path);
        em.recycle(glab[CdsGeom::u(2, 2)]);
        for (int w = 0; w < 27; ++w) {
          if (w == CdsGeom::u(2, 1) || w == CdsGeom::u(2, 2)) continue;
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

GeneratedInstance generate_cds(const SatInstance& sat, int beta) {
  GeneratedInstance inst = build_cds_instance(sat, beta);
  inst.expr = emit_cds_linear_expression(inst);
  inst.width = width(inst.expr);
  return inst;
}

// ---- gadget fixtures and checks ---------------------------------------------

PathGadget build_cds_path_gadget() {
  PathGadget pg;
  pg.inner = LabeledGraph(CdsGeom::kSize, 1);
  for (auto [a, b] : CdsGeom::plain_edges()) pg.inner.add_edge(a, b);
  for (const auto& sd : CdsGeom::subdivided()) {
    pg.inner.add_edge(sd[0], sd[1]);
    pg.inner.add_edge(sd[0], sd[2]);
  }
  pg.root_adjacent = [] {
    auto r = CdsGeom::root_adjacent();
    return std::vector<Vertex>(r.begin(), r.end());
  }();
  pg.names = CdsGeom::names();
  pg.join_in = {CdsGeom::u(1, 1), CdsGeom::u(1, 2)};
  pg.join_out = {CdsGeom::u(2, 1), CdsGeom::u(2, 2)};
  for (int l = 1; l <= 5; ++l) pg.clique.push_back(CdsGeom::v(l));
  pg.states = 5;
  return pg;
}

std::vector<Vertex> cds_canonical_set(int ell) {
  auto c = CdsGeom::canonical(ell);
  return std::vector<Vertex>(c.begin(), c.end());
}

namespace lb {
namespace {

LabeledGraph cds_assembly(const PathGadget& pg, int copies, bool join_between) {
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

std::vector<char> cds_root_connected(const LabeledGraph& g, const std::vector<char>& in_x) {
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

std::vector<char> cds_dominated(const LabeledGraph& g, const std::vector<char>& in_x) {
  std::vector<char> dom(g.vertex_count(), 0);
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (in_x[v]) {
      dom[v] = 1;
      for (Vertex u : g.neighbors(v)) dom[u] = 1;
    }
  return dom;
}

}  // namespace
}  // namespace lb

CanonicalCheck check_cds_canonical_sets() {
  CanonicalCheck out;
  PathGadget pg = build_cds_path_gadget();
  LabeledGraph g = cds_assembly(pg, 1, false);
  // packing behind the size-14 bound: closed neighborhoods of a_{i,2} and
  // the four side subdividers, pairwise disjoint
  {
    std::vector<std::vector<Vertex>> hoods;
    for (int i = 1; i <= 2; ++i) {
      std::vector<int> centers = {CdsGeom::a(i, 2), CdsGeom::w_side(i, 3), CdsGeom::w_side(i, 0),
                                  CdsGeom::w_side(i, 4), CdsGeom::w_side(i, 5)};
      for (int c : centers) {
        std::vector<Vertex> h = pg.inner.neighbors(c);
        h.push_back(c);
        std::sort(h.begin(), h.end());
        hoods.push_back(h);
      }
    }
    for (size_t a = 0; a < hoods.size(); ++a)
      for (size_t b = a + 1; b < hoods.size(); ++b) {
        std::vector<Vertex> inter;
        std::set_intersection(hoods[a].begin(), hoods[a].end(), hoods[b].begin(),
                              hoods[b].end(), std::back_inserter(inter));
        if (!inter.empty()) {
          out.ok = false;
          out.detail = "packing neighborhoods " + std::to_string(a) + " and " +
                       std::to_string(b) + " intersect";
          return out;
        }
      }
  }
  for (int ell = 1; ell <= 5; ++ell) {
    auto xp = cds_canonical_set(ell);
    if (xp.size() != 14) {
      out.ok = false;
      out.detail = "X_P^" + std::to_string(ell) + " has size " + std::to_string(xp.size());
      return out;
    }
    std::vector<char> in_x(g.vertex_count(), 0);
    in_x[0] = 1;
    for (Vertex v : xp) in_x[1 + v] = 1;
    // every subdivided edge is resolved: one endpoint inside X
    for (const auto& sd : CdsGeom::subdivided())
      if (!in_x[1 + sd[1]] && !in_x[1 + sd[2]]) {
        out.ok = false;
        out.detail = "X_P^" + std::to_string(ell) + " leaves subdivided edge " +
                     pg.names[sd[1]] + "-" + pg.names[sd[2]] + " unresolved";
        return out;
      }
    for (int l = 1; l <= 5; ++l)
      if (in_x[1 + CdsGeom::v(l)] == (l == ell)) {
        out.ok = false;
        out.detail = "X_P^" + std::to_string(ell) + " clique selection wrong at v" +
                     std::to_string(l);
        return out;
      }
    auto conn = cds_root_connected(g, in_x);
    auto dom = cds_dominated(g, in_x);
    for (int i = 1; i <= 2; ++i)
      for (int q = 1; q <= 2; ++q) {
        Vertex u = 1 + CdsGeom::u(i, q);
        CdsAtom want = kCdsState[ell - 1][2 * (i - 1) + (q - 1)];
        CdsAtom got;
        if (in_x[u])
          got = conn[u] ? DA_11 : DA_10;
        else
          got = dom[u] ? DA_01 : DA_00;
        if (got != want) {
          out.ok = false;
          out.detail = "X_P^" + std::to_string(ell) + " state at u" + std::to_string(i) + "_" +
                       std::to_string(q) + " is " + std::to_string(got) + ", expected " +
                       std::to_string(want);
          return out;
        }
      }
    // everything except the u's and a_{i,1} is dominated or root-connected
    for (Vertex w = 0; w < CdsGeom::kSize; ++w) {
      if (w == CdsGeom::u(1, 1) || w == CdsGeom::u(1, 2) || w == CdsGeom::u(2, 1) ||
          w == CdsGeom::u(2, 2) || w == CdsGeom::a(1, 1) || w == CdsGeom::a(2, 1))
        continue;
      Vertex gv = 1 + w;
      bool fine = in_x[gv] ? conn[gv] : dom[gv];
      if (!fine) {
        out.ok = false;
        out.detail = "X_P^" + std::to_string(ell) + " leaves " + pg.names[w] +
                     " undominated or unconnected";
        return out;
      }
    }
  }
  return out;
}

std::vector<TransitionEntry> cds_transition_matrix() {
  PathGadget pg = build_cds_path_gadget();
  LabeledGraph g = cds_assembly(pg, 2, true);
  int size = pg.inner.vertex_count();
  std::vector<TransitionEntry> entries;
  for (int l1 = 1; l1 <= 5; ++l1)
    for (int l2 = 1; l2 <= 5; ++l2) {
      TransitionEntry te;
      te.l1 = l1;
      te.l2 = l2;
      std::vector<char> in_x(g.vertex_count(), 0);
      in_x[0] = 1;
      for (Vertex v : cds_canonical_set(l1)) in_x[1 + v] = 1;
      for (Vertex v : cds_canonical_set(l2)) in_x[1 + size + v] = 1;
      auto conn = cds_root_connected(g, in_x);
      auto dom = cds_dominated(g, in_x);
      std::vector<std::pair<Vertex, std::string>> inner = {
          {1 + pg.join_out[0], "u2_1^1"},
          {1 + pg.join_out[1], "u2_2^1"},
          {1 + size + pg.join_in[0], "u1_1^2"},
          {1 + size + pg.join_in[1], "u1_2^2"},
      };
      for (auto& [u, name] : inner) {
        if (in_x[u] && !conn[u]) {
          te.unconnected_vertex = true;
          if (te.witness.empty()) te.witness = name;
        }
        if (!in_x[u] && !dom[u]) {
          te.undominated_vertex = true;
          if (te.witness.empty()) te.witness = name;
        }
      }
      te.violation = te.unconnected_vertex || te.undominated_vertex;
      entries.push_back(te);
    }
  return entries;
}

}  // namespace cwc
