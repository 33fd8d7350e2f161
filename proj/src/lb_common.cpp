#include <array>
#include <istream>
#include <sstream>

#include "lb_layout.hpp"

namespace cwc {

SatInstance parse_dimacs(std::istream& in) {
  SatInstance sat;
  std::string line;
  long declared_clauses = -1;
  std::vector<int> cur;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c") continue;
    if (tok == "p") {
      std::string kind;
      long nv, nc;
      if (!(ls >> kind >> nv >> nc) || kind != "cnf")
        throw std::runtime_error("dimacs: expected 'p cnf <vars> <clauses>'");
      sat.nvars = static_cast<int>(nv);
      declared_clauses = nc;
      continue;
    }
    // literal tokens, clauses end at 0
    ls.clear();
    ls.str(line);
    long lit;
    while (ls >> lit) {
      if (lit == 0) {
        if (cur.empty()) throw std::runtime_error("dimacs: empty clause");
        sat.clauses.push_back(cur);
        cur.clear();
      } else {
        if (std::abs(lit) > sat.nvars)
          throw std::runtime_error("dimacs: literal " + std::to_string(lit) +
                                   " out of range");
        cur.push_back(static_cast<int>(lit));
      }
    }
  }
  if (!cur.empty()) sat.clauses.push_back(cur);
  if (sat.nvars <= 0) throw std::runtime_error("dimacs: missing header");
  if (declared_clauses >= 0 && declared_clauses != static_cast<long>(sat.clauses.size()))
    throw std::runtime_error("dimacs: clause count mismatch");
  if (sat.clauses.empty()) throw std::runtime_error("dimacs: no clauses");
  return sat;
}

SatInstance parse_dimacs_text(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

namespace lb {

std::vector<std::pair<int, int>> CvcGeom::internal_edges() {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i <= 4; ++i) {
    e.push_back({u(i), a(i, 1)});
    e.push_back({u(i), a(i, 3)});
    e.push_back({u(i), b(i, 0)});
    e.push_back({a(i, 1), a(i, 2)});
    e.push_back({a(i, 1), b(i, 0)});
    e.push_back({a(i, 1), c(i, 1)});
    e.push_back({a(i, 3), b(i, 1)});
    e.push_back({b(i, 0), b(i, 1)});
    e.push_back({c(i, 0), c(i, 1)});
  }
  for (int l1 = 1; l1 <= 6; ++l1)
    for (int l2 = l1 + 1; l2 <= 6; ++l2) e.push_back({v(l1), v(l2)});
  for (int l = 1; l <= 6; ++l)
    for (int i = 1; i <= 4; ++i) {
      e.push_back({v(l), b(i, cvc_sol(kCvcState[l - 1][i - 1]))});
      e.push_back({v(l), c(i, cvc_conn(kCvcState[l - 1][i - 1]))});
    }
  return e;
}

std::vector<int> CvcGeom::root_adjacent() {
  std::vector<int> r;
  for (int i = 1; i <= 4; ++i) r.push_back(a(i, 3));
  for (int i = 1; i <= 4; ++i)
    for (int o = 0; o <= 1; ++o) r.push_back(b(i, o));
  for (int i = 1; i <= 4; ++i)
    for (int o = 0; o <= 1; ++o) r.push_back(c(i, o));
  for (int l = 1; l <= 6; ++l) r.push_back(v(l));
  return r;
}

std::vector<std::string> CvcGeom::names() {
  std::vector<std::string> n(kSize);
  for (int i = 1; i <= 4; ++i) {
    n[u(i)] = "u" + std::to_string(i);
    for (int q = 1; q <= 3; ++q)
      n[a(i, q)] = "a" + std::to_string(i) + "_" + std::to_string(q);
    for (int o = 0; o <= 1; ++o) {
      n[b(i, o)] = "b" + std::to_string(i) + "_" + std::to_string(o);
      n[c(i, o)] = "c" + std::to_string(i) + "_" + std::to_string(o);
    }
  }
  for (int l = 1; l <= 6; ++l) n[v(l)] = "v" + std::to_string(l);
  return n;
}

std::vector<int> CvcGeom::canonical(int ell) {
  std::vector<int> x;
  for (int l = 1; l <= 6; ++l)
    if (l != ell) x.push_back(v(l));
  for (int i = 1; i <= 4; ++i) {
    CvcAtom at = kCvcState[ell - 1][i - 1];
    x.push_back(a(i, 1));
    x.push_back(cvc_sol(at) ? u(i) : a(i, 3));
    x.push_back(b(i, cvc_sol(at)));
    x.push_back(c(i, cvc_conn(at)));
  }
  std::sort(x.begin(), x.end());
  return x;
}

int CdsGeom::w_clique(int a, int b) {
  int idx = 0;
  for (int x = 1; x <= 5; ++x)
    for (int y = x + 1; y <= 5; ++y) {
      if (x == a && y == b) return 39 + idx;
      ++idx;
    }
  throw std::logic_error("cds gadget: bad clique pair");
}

std::vector<std::pair<int, int>> CdsGeom::plain_edges() {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i <= 2; ++i) {
    e.push_back({u(i, 1), a(i, 1)});
    e.push_back({a(i, 1), a(i, 2)});
    e.push_back({a(i, 1), b(i, 0)});
    e.push_back({a(i, 1), c(i, 1)});
    e.push_back({u(i, 2), d(i, 1)});
  }
  return e;
}

std::vector<std::array<int, 3>> CdsGeom::subdivided() {
  std::vector<std::array<int, 3>> s;
  for (int i = 1; i <= 2; ++i) {
    s.push_back({w_side(i, 0), u(i, 1), a(i, 3)});
    s.push_back({w_side(i, 1), u(i, 1), b(i, 0)});
    s.push_back({w_side(i, 2), a(i, 3), b(i, 1)});
    s.push_back({w_side(i, 3), b(i, 0), b(i, 1)});
    s.push_back({w_side(i, 4), c(i, 0), c(i, 1)});
    s.push_back({w_side(i, 5), d(i, 0), d(i, 1)});
  }
  for (int x = 1; x <= 5; ++x)
    for (int y = x + 1; y <= 5; ++y) s.push_back({w_clique(x, y), v(x), v(y)});
  for (int i = 1; i <= 2; ++i)
    for (int l = 1; l <= 5; ++l) {
      CdsAtom odd = kCdsState[l - 1][2 * (i - 1)];
      CdsAtom even = kCdsState[l - 1][2 * (i - 1) + 1];
      s.push_back({w_ind(i, l, 0), v(l), b(i, cds_sol(odd))});
      s.push_back({w_ind(i, l, 1), v(l), c(i, cds_conn(odd))});
      s.push_back({w_ind(i, l, 2), v(l), d(i, cds_dom(even))});
    }
  return s;
}

std::vector<int> CdsGeom::root_adjacent() {
  std::vector<int> r;
  for (int i = 1; i <= 2; ++i) r.push_back(a(i, 3));
  for (int i = 1; i <= 2; ++i)
    for (int o = 0; o <= 1; ++o) {
      r.push_back(b(i, o));
      r.push_back(c(i, o));
      r.push_back(d(i, o));
    }
  for (int l = 1; l <= 5; ++l) r.push_back(v(l));
  return r;
}

std::vector<std::string> CdsGeom::names() {
  std::vector<std::string> n(kSize);
  for (int i = 1; i <= 2; ++i) {
    for (int q = 1; q <= 2; ++q)
      n[u(i, q)] = "u" + std::to_string(i) + "_" + std::to_string(q);
    for (int q = 1; q <= 3; ++q)
      n[a(i, q)] = "a" + std::to_string(i) + "_" + std::to_string(q);
    for (int o = 0; o <= 1; ++o) {
      n[b(i, o)] = "b" + std::to_string(i) + "_" + std::to_string(o);
      n[c(i, o)] = "c" + std::to_string(i) + "_" + std::to_string(o);
      n[d(i, o)] = "d" + std::to_string(i) + "_" + std::to_string(o);
    }
  }
  for (int l = 1; l <= 5; ++l) n[v(l)] = "v" + std::to_string(l);
  for (auto& sd : subdivided()) n[sd[0]] = "w(" + n[sd[1]] + "," + n[sd[2]] + ")";
  return n;
}

std::vector<int> CdsGeom::canonical(int ell) {
  std::vector<int> x;
  for (int l = 1; l <= 5; ++l)
    if (l != ell) x.push_back(v(l));
  for (int i = 1; i <= 2; ++i) {
    CdsAtom odd = kCdsState[ell - 1][2 * (i - 1)];
    CdsAtom even = kCdsState[ell - 1][2 * (i - 1) + 1];
    x.push_back(a(i, 1));
    x.push_back(cds_sol(odd) ? u(i, 1) : a(i, 3));
    x.push_back(b(i, cds_sol(odd)));
    x.push_back(c(i, cds_conn(odd)));
    x.push_back(d(i, cds_dom(even)));
  }
  std::sort(x.begin(), x.end());
  return x;
}

int group_size(const SatInstance& sat, int beta, int group) {
  int lo = group * beta + 1;
  int hi = std::min((group + 1) * beta, sat.nvars);
  return hi - lo + 1;
}

bool group_assignment_satisfies(const SatInstance& sat, int beta, int group, uint32_t tau,
                                const std::vector<int>& clause) {
  int lo = group * beta + 1;
  int sz = group_size(sat, beta, group);
  for (int lit : clause) {
    int var = std::abs(lit);
    if (var < lo || var >= lo + sz) continue;
    bool value = (tau >> (var - lo)) & 1;
    if ((lit > 0) == value) return true;
  }
  return false;
}

}  // namespace lb
}  // namespace cwc
