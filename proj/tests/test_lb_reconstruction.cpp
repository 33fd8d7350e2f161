#include <doctest.h>

#include <map>
#include <set>
#include <string>

#include "cwc/lb_generator.hpp"

using namespace cwc;

// Independent reconstruction of the minimal CVC instance (one variable, one
// positive unit clause, beta = 1): the edge set is rebuilt from scratch on
// role names, following the construction description rather than the
// generator's geometry tables, and compared edge-for-edge.
namespace {

using Edge = std::pair<std::string, std::string>;

void add(std::set<Edge>& es, std::string a, std::string b) {
  if (a > b) std::swap(a, b);
  es.insert({a, b});
}

// gadget states on (u_1..u_4); atoms 0 / 1_0 / 1_1 encoded 0 / 1 / 2
const int kState[6][4] = {
    {0, 0, 2, 2}, {1, 0, 2, 1}, {1, 1, 2, 0}, {2, 0, 1, 1}, {2, 1, 1, 0}, {2, 2, 0, 0},
};
int sol(int atom) { return atom != 0; }
int conn(int atom) { return atom == 2; }

std::string P(long l, const std::string& v) { return "P[0,0][" + std::to_string(l) + "]." + v; }

std::set<Edge> reconstruct() {
  std::set<Edge> es;
  add(es, "r", "r_leaf");
  const long cols = 6;  // m (5tp + 1) with t = p = m = 1
  for (long l = 0; l < cols; ++l) {
    std::string L = "[" + std::to_string(l) + "]";
    // clause pair
    add(es, "o" + L, "obar" + L);
    // decoding gadget for the single group: 6^p = 6 sequences
    add(es, "z[0]" + L, "zbar[0]" + L);
    for (int h = 0; h < 6; ++h) {
      std::string hs = "[0]" + L + "[h=" + std::to_string(h) + "]";
      add(es, "x" + hs, "xbar" + hs);
      add(es, "x" + hs, "y" + hs);
      add(es, "y" + hs, "r");
      add(es, "y" + hs, "z[0]" + L);
      // x_h is wired to the clique vertex of its digit (p = 1, h_1 = h + 1)
      add(es, "x" + hs, P(l, "v" + std::to_string(h + 1)));
    }
    // the clause x1 is satisfied only by tau = 1, and kappa(1) = sequence 2,
    // whose index is h = 1
    add(es, "o" + L, "y[0]" + L + "[h=1]");
    // path gadget internals
    for (int i = 1; i <= 4; ++i) {
      std::string ui = P(l, "u" + std::to_string(i));
      std::string a1 = P(l, "a" + std::to_string(i) + "_1");
      std::string a2 = P(l, "a" + std::to_string(i) + "_2");
      std::string a3 = P(l, "a" + std::to_string(i) + "_3");
      std::string b0 = P(l, "b" + std::to_string(i) + "_0");
      std::string b1 = P(l, "b" + std::to_string(i) + "_1");
      std::string c0 = P(l, "c" + std::to_string(i) + "_0");
      std::string c1 = P(l, "c" + std::to_string(i) + "_1");
      add(es, ui, a1);
      add(es, ui, a3);
      add(es, ui, b0);
      add(es, a1, a2);
      add(es, a1, b0);
      add(es, a1, c1);
      add(es, a3, b1);
      add(es, b0, b1);
      add(es, c0, c1);
      // root adjacency
      add(es, a3, "r");
      add(es, b0, "r");
      add(es, b1, "r");
      add(es, c0, "r");
      add(es, c1, "r");
    }
    for (int v1 = 1; v1 <= 6; ++v1) {
      add(es, P(l, "v" + std::to_string(v1)), "r");
      for (int v2 = v1 + 1; v2 <= 6; ++v2)
        add(es, P(l, "v" + std::to_string(v1)), P(l, "v" + std::to_string(v2)));
    }
    // indicator wiring: v_ell watches sol/conn of each join vertex
    for (int ell = 1; ell <= 6; ++ell)
      for (int i = 1; i <= 4; ++i) {
        int atom = kState[ell - 1][i - 1];
        add(es, P(l, "v" + std::to_string(ell)),
            P(l, "b" + std::to_string(i) + "_" + std::to_string(sol(atom))));
        add(es, P(l, "v" + std::to_string(ell)),
            P(l, "c" + std::to_string(i) + "_" + std::to_string(conn(atom))));
      }
    // consecutive gadgets joined, row ends on the root
    if (l + 1 < cols)
      for (int out : {3, 4})
        for (int in : {1, 2})
          add(es, P(l, "u" + std::to_string(out)), P(l + 1, "u" + std::to_string(in)));
  }
  add(es, P(0, "u1"), "r");
  add(es, P(0, "u2"), "r");
  add(es, P(cols - 1, "u3"), "r");
  add(es, P(cols - 1, "u4"), "r");
  return es;
}

}  // namespace

TEST_CASE("minimal cvc instance matches an independent reconstruction") {
  SatInstance sat = parse_dimacs_text("p cnf 1 1\n1 0\n");
  GeneratedInstance inst = build_cvc_instance(sat, 1);
  // role names are unique and cover every vertex
  std::map<std::string, Vertex> by_name;
  for (Vertex v = 0; v < inst.graph.vertex_count(); ++v) {
    const std::string& role = inst.roles[v];
    auto colon = role.find(':');
    REQUIRE(colon != std::string::npos);
    std::string name = role.substr(colon + 1);
    REQUIRE(by_name.emplace(name, v).second);
  }
  std::set<Edge> got;
  std::map<Vertex, std::string> names;
  for (auto& [name, v] : by_name) names[v] = name;
  for (auto [u, v] : inst.graph.edges()) add(got, names[u], names[v]);
  std::set<Edge> want = reconstruct();
  // report the first difference in either direction
  for (const Edge& e : want)
    if (!got.count(e)) FAIL("missing edge ", e.first, " - ", e.second);
  for (const Edge& e : got)
    if (!want.count(e)) FAIL("unexpected edge ", e.first, " - ", e.second);
  CHECK(got.size() == want.size());
  // and the budget from the closed form, written out by hand:
  // (21*1*1 + (6 + 2)*1 + 1) * 6 + 1
  CHECK(inst.budget == 181);
}
