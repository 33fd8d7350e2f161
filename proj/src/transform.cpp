#include "cwc/transform.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "cwc/rng.hpp"

namespace cwc {

namespace {

inline uint64_t edge_key(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<uint64_t>(u) << 32) | static_cast<uint32_t>(v);
}

struct JoinStats {
  long total = 0;
  long existing = 0;
};

// classifies every join: how many of its vertex pairs were already edges
std::vector<JoinStats> join_statistics(const CliqueExpression& e) {
  std::vector<JoinStats> stats(e.size());
  std::unordered_set<uint64_t> edges;
  int k = e.declared_width();
  // label sets per pending node, as in evaluate()
  std::vector<std::vector<std::vector<Vertex>>> sets(e.size());
  for (int t = 0; t < e.size(); ++t) {
    const ExprNode& nd = e.node(t);
    switch (nd.op) {
      case Op::Intro:
        sets[t].assign(k + 1, {});
        sets[t][nd.a].push_back(nd.v);
        break;
      case Op::Union:
        sets[t] = std::move(sets[nd.left]);
        for (int l = 1; l <= k; ++l) {
          auto& src = sets[nd.right][l];
          sets[t][l].insert(sets[t][l].end(), src.begin(), src.end());
        }
        sets[nd.right].clear();
        break;
      case Op::Relabel:
        sets[t] = std::move(sets[nd.left]);
        sets[t][nd.b].insert(sets[t][nd.b].end(), sets[t][nd.a].begin(), sets[t][nd.a].end());
        sets[t][nd.a].clear();
        break;
      case Op::Join: {
        sets[t] = std::move(sets[nd.left]);
        auto& st = stats[t];
        for (Vertex u : sets[t][nd.a])
          for (Vertex v : sets[t][nd.b]) {
            ++st.total;
            if (!edges.insert(edge_key(u, v)).second) ++st.existing;
          }
        break;
      }
      case Op::Dead:
        sets[t] = std::move(sets[nd.left]);
        break;
    }
  }
  return stats;
}

// rebuilds the expression skipping the flagged unary nodes (child replaces
// node), applying an optional per-node label rename
CliqueExpression rebuild(const CliqueExpression& e, const std::vector<char>& drop,
                         const std::vector<std::vector<int>>* rename) {
  std::vector<int> remap(e.size(), -1);
  std::vector<ExprNode> out;
  out.reserve(e.size());
  for (int t = 0; t < e.size(); ++t) {
    const ExprNode& nd = e.node(t);
    if (drop[t]) {
      remap[t] = remap[nd.left];
      continue;
    }
    ExprNode nn = nd;
    if (rename) {
      const auto& pi = (*rename)[t];
      if (nn.op != Op::Union) {
        if (nn.a >= 1) nn.a = pi[nn.a];
        if ((nn.op == Op::Relabel || nn.op == Op::Join) && nn.b >= 1) nn.b = pi[nn.b];
      }
    }
    if (nn.left >= 0) nn.left = remap[nn.left];
    if (nn.right >= 0) nn.right = remap[nn.right];
    remap[t] = static_cast<int>(out.size());
    out.push_back(nn);
  }
  return CliqueExpression(std::move(out), e.declared_width());
}

// |V_t^l| for every node and label
std::vector<std::vector<int>> label_sizes(const CliqueExpression& e) {
  int k = e.declared_width();
  std::vector<std::vector<int>> sz(e.size(), std::vector<int>(k + 1, 0));
  for (int t = 0; t < e.size(); ++t) {
    const ExprNode& nd = e.node(t);
    switch (nd.op) {
      case Op::Intro: sz[t][nd.a] = 1; break;
      case Op::Union:
        for (int l = 1; l <= k; ++l) sz[t][l] = sz[nd.left][l] + sz[nd.right][l];
        break;
      case Op::Relabel:
        sz[t] = sz[nd.left];
        sz[t][nd.b] += sz[t][nd.a];
        sz[t][nd.a] = 0;
        break;
      case Op::Join:
      case Op::Dead: sz[t] = sz[nd.left]; break;
    }
  }
  return sz;
}

}  // namespace

bool is_irredundant(const CliqueExpression& e) {
  for (const JoinStats& st : join_statistics(e))
    if (st.existing > 0) return false;
  return true;
}

CliqueExpression make_irredundant(const CliqueExpression& e) {
  auto stats = join_statistics(e);
  std::vector<char> drop(e.size(), 0);
  for (int t = 0; t < e.size(); ++t) {
    const JoinStats& st = stats[t];
    if (st.existing == 0) continue;
    if (st.existing == st.total)
      drop[t] = 1;
    else
      throw std::runtime_error("make_irredundant: mixed-redundant join unsupported (node " +
                               std::to_string(t) + " re-adds " + std::to_string(st.existing) +
                               " of " + std::to_string(st.total) + " edges)");
  }
  return rebuild(e, drop, nullptr);
}

bool is_nice(const CliqueExpression& e) {
  if (!is_irredundant(e)) return false;
  auto sz = label_sizes(e);
  for (int t = 0; t < e.size(); ++t) {
    const ExprNode& nd = e.node(t);
    if (nd.op == Op::Join || nd.op == Op::Relabel)
      if (sz[nd.left][nd.a] == 0 || sz[nd.left][nd.b] == 0) return false;
  }
  return true;
}

CliqueExpression make_nice(const CliqueExpression& e) {
  if (!is_irredundant(e)) throw std::runtime_error("make_nice: input not irredundant");
  auto sz = label_sizes(e);
  int k = e.declared_width();

  // Decide drops on the original tree, then push label renames top-down.
  // Removing an empty-target relabel i->j swaps i and j in all proper
  // descendants, which leaves the label contents seen by every ancestor
  // unchanged, so the size table stays valid for all decisions.
  std::vector<char> drop(e.size(), 0);
  std::vector<std::vector<int>> perm(e.size());
  std::vector<int> ident(k + 1);
  std::iota(ident.begin(), ident.end(), 0);
  perm[e.root()] = ident;
  for (int t = e.root(); t >= 0; --t) {
    const ExprNode& nd = e.node(t);
    if (perm[t].empty()) perm[t] = ident;  // defensive; every node is reached
    std::vector<int> child_pi = perm[t];
    if (nd.op == Op::Join) {
      if (sz[nd.left][nd.a] == 0 || sz[nd.left][nd.b] == 0) drop[t] = 1;
    } else if (nd.op == Op::Relabel) {
      if (sz[nd.left][nd.a] == 0) {
        drop[t] = 1;
      } else if (sz[nd.left][nd.b] == 0) {
        drop[t] = 1;
        std::swap(child_pi[nd.a], child_pi[nd.b]);
      }
    }
    if (nd.left >= 0) perm[nd.left] = child_pi;
    if (nd.right >= 0) perm[nd.right] = child_pi;
  }
  return rebuild(e, drop, &perm);
}

namespace {

// degree bookkeeping shared by the augment pass and dead-node validation
struct DeadWalk {
  std::vector<int> final_deg, cur_deg;

  explicit DeadWalk(const LabeledGraph& g) : cur_deg(g.vertex_count(), 0) {
    final_deg.resize(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v) final_deg[v] = g.degree(v);
  }

  bool dead(Vertex v) const { return cur_deg[v] == final_deg[v]; }
};

std::vector<std::vector<int>> nonempty_from_sizes(const std::vector<std::vector<int>>& sz) {
  std::vector<std::vector<int>> ne(sz.size());
  for (size_t t = 0; t < sz.size(); ++t)
    for (size_t l = 1; l < sz[t].size(); ++l)
      if (sz[t][l] > 0) ne[t].push_back(static_cast<int>(l));
  return ne;
}

std::vector<std::vector<int>> live_by_recurrence(const CliqueExpression& e) {
  std::vector<std::vector<int>> live(e.size());
  auto minus = [](std::vector<int> s, int l) {
    s.erase(std::remove(s.begin(), s.end(), l), s.end());
    return s;
  };
  for (int t = 0; t < e.size(); ++t) {
    const ExprNode& nd = e.node(t);
    switch (nd.op) {
      case Op::Intro: live[t] = {nd.a}; break;
      case Op::Relabel: live[t] = minus(live[nd.left], nd.a); break;
      case Op::Join: live[t] = live[nd.left]; break;
      case Op::Dead: live[t] = minus(live[nd.left], nd.a); break;
      case Op::Union: {
        std::vector<int> u;
        std::set_union(live[nd.left].begin(), live[nd.left].end(), live[nd.right].begin(),
                       live[nd.right].end(), std::back_inserter(u));
        live[t] = std::move(u);
        break;
      }
    }
  }
  return live;
}

}  // namespace

AugmentedExpression augment_with_dead_nodes(const CliqueExpression& e) {
  if (!is_nice(e)) throw std::runtime_error("augment_with_dead_nodes: input not nice");
  LabeledGraph g = evaluate(e);
  DeadWalk dw(g);
  int k = e.declared_width();

  // one pass over the original nodes, tracking label sets and degrees;
  // emits the augmented node list as it goes
  std::vector<ExprNode> out;
  out.reserve(e.size() + e.size() / 2);
  std::vector<int> remap(e.size(), -1);
  std::vector<std::vector<std::vector<Vertex>>> sets(e.size());
  for (int t = 0; t < e.size(); ++t) {
    const ExprNode& nd = e.node(t);
    ExprNode nn = nd;
    if (nn.left >= 0) nn.left = remap[nd.left];
    if (nn.right >= 0) nn.right = remap[nd.right];
    switch (nd.op) {
      case Op::Intro:
        sets[t].assign(k + 1, {});
        sets[t][nd.a].push_back(nd.v);
        break;
      case Op::Union:
        sets[t] = std::move(sets[nd.left]);
        for (int l = 1; l <= k; ++l) {
          auto& src = sets[nd.right][l];
          sets[t][l].insert(sets[t][l].end(), src.begin(), src.end());
        }
        sets[nd.right].clear();
        break;
      case Op::Relabel:
        sets[t] = std::move(sets[nd.left]);
        sets[t][nd.b].insert(sets[t][nd.b].end(), sets[t][nd.a].begin(), sets[t][nd.a].end());
        sets[t][nd.a].clear();
        break;
      case Op::Dead:
        throw std::runtime_error("augment_with_dead_nodes: input already has dead nodes");
      case Op::Join: sets[t] = std::move(sets[nd.left]); break;
    }
    if (nd.op != Op::Join) {
      remap[t] = static_cast<int>(out.size());
      out.push_back(nn);
      continue;
    }
    // join: update degrees, then insert dead nodes for labels that just died
    const auto& va = sets[t][nd.a];
    const auto& vb = sets[t][nd.b];
    auto none_dead = [&](const std::vector<Vertex>& vs) {
      for (Vertex v : vs)
        if (dw.dead(v)) return false;
      return true;
    };
    bool a_live_before = none_dead(va);
    bool b_live_before = none_dead(vb);
    for (Vertex v : va) dw.cur_deg[v] += static_cast<int>(vb.size());
    for (Vertex v : vb) dw.cur_deg[v] += static_cast<int>(va.size());
    auto all_dead = [&](const std::vector<Vertex>& vs) {
      for (Vertex v : vs)
        if (!dw.dead(v)) return false;
      return true;
    };
    remap[t] = static_cast<int>(out.size());
    out.push_back(nn);
    std::vector<int> dying;
    if (a_live_before && all_dead(va)) dying.push_back(nd.a);
    if (b_live_before && all_dead(vb)) dying.push_back(nd.b);
    std::sort(dying.begin(), dying.end());
    for (int l : dying) {
      ExprNode dn;
      dn.op = Op::Dead;
      dn.a = l;
      dn.left = static_cast<int>(out.size()) - 1;
      remap[t] = static_cast<int>(out.size());
      out.push_back(dn);
    }
  }
  AugmentedExpression a;
  a.expr = CliqueExpression(std::move(out), k);
  a.live = live_by_recurrence(a.expr);
  a.nonempty = nonempty_from_sizes(label_sizes(a.expr));
  return a;
}

AugmentedExpression recompute_live_sets(const CliqueExpression& e) {
  AugmentedExpression a;
  a.live = live_by_recurrence(e);
  a.nonempty = nonempty_from_sizes(label_sizes(e));
  // validate dead nodes: label must be live at the child and its vertices
  // must actually have all their final edges
  LabeledGraph g = evaluate(e);
  DeadWalk dw(g);
  int k = e.declared_width();
  std::vector<std::vector<std::vector<Vertex>>> sets(e.size());
  for (int t = 0; t < e.size(); ++t) {
    const ExprNode& nd = e.node(t);
    switch (nd.op) {
      case Op::Intro:
        sets[t].assign(k + 1, {});
        sets[t][nd.a].push_back(nd.v);
        break;
      case Op::Union:
        sets[t] = std::move(sets[nd.left]);
        for (int l = 1; l <= k; ++l) {
          auto& src = sets[nd.right][l];
          sets[t][l].insert(sets[t][l].end(), src.begin(), src.end());
        }
        sets[nd.right].clear();
        break;
      case Op::Relabel:
        sets[t] = std::move(sets[nd.left]);
        sets[t][nd.b].insert(sets[t][nd.b].end(), sets[t][nd.a].begin(), sets[t][nd.a].end());
        sets[t][nd.a].clear();
        break;
      case Op::Join: {
        sets[t] = std::move(sets[nd.left]);
        const auto& va = sets[t][nd.a];
        const auto& vb = sets[t][nd.b];
        for (Vertex v : va) dw.cur_deg[v] += static_cast<int>(vb.size());
        for (Vertex v : vb) dw.cur_deg[v] += static_cast<int>(va.size());
        break;
      }
      case Op::Dead: {
        sets[t] = std::move(sets[nd.left]);
        const auto& lv = a.live[nd.left];
        if (!std::binary_search(lv.begin(), lv.end(), nd.a))
          throw std::runtime_error("expression: dead node marks label " + std::to_string(nd.a) +
                                   " which is not live at its child");
        for (Vertex v : sets[t][nd.a])
          if (!dw.dead(v))
            throw std::runtime_error("expression: dead node marks label " + std::to_string(nd.a) +
                                     " whose vertex " + std::to_string(v) +
                                     " still has missing edges");
        break;
      }
    }
  }
  a.expr = e;
  return a;
}

UnionSplit union_split(const AugmentedExpression& a, int t) {
  if (t < 0 || t >= a.expr.size() || a.expr.node(t).op != Op::Union)
    throw std::runtime_error("union_split: node is not a union");
  const ExprNode& nd = a.expr.node(t);
  const auto& l1 = a.live[nd.left];
  const auto& l2 = a.live[nd.right];
  const auto& n1 = a.nonempty[nd.left];
  const auto& n2 = a.nonempty[nd.right];
  UnionSplit s;
  std::set_difference(l1.begin(), l1.end(), n2.begin(), n2.end(), std::back_inserter(s.only1));
  std::set_difference(l2.begin(), l2.end(), n1.begin(), n1.end(), std::back_inserter(s.only2));
  std::set_intersection(l1.begin(), l1.end(), l2.begin(), l2.end(),
                        std::back_inserter(s.shared));
  return s;
}

namespace {

// one attempt at building a random irredundant expression; the caller
// retries with fresh seeds until the evaluated graph is connected
struct Builder {
  int n, k;
  SplitMix64 rng;
  std::vector<ExprNode> nodes;
  int introduced = 0;
  std::vector<int> dsu;

  struct Active {
    int root;
    std::vector<int> size;                  // per label
    std::vector<std::vector<char>> joined;  // has_edge between label classes
    std::vector<std::vector<Vertex>> verts; // members per label
  };
  std::vector<Active> act;

  Builder(int n_, int k_, uint64_t seed) : n(n_), k(k_), rng(seed), dsu(n_) {
    for (int i = 0; i < n; ++i) dsu[i] = i;
  }

  int find(int x) { return dsu[x] == x ? x : dsu[x] = find(dsu[x]); }
  void link(int x, int y) { dsu[find(x)] = find(y); }

  void do_intro() {
    int lab = 1 + static_cast<int>(rng.below(k));
    ExprNode nd;
    nd.op = Op::Intro;
    nd.a = lab;
    nd.v = introduced++;
    Active a;
    a.root = static_cast<int>(nodes.size());
    nodes.push_back(nd);
    a.size.assign(k + 1, 0);
    a.size[lab] = 1;
    a.joined.assign(k + 1, std::vector<char>(k + 1, 0));
    a.verts.assign(k + 1, {});
    a.verts[lab].push_back(nd.v);
    act.push_back(std::move(a));
  }

  void do_union(size_t i, size_t j) {
    if (i > j) std::swap(i, j);
    Active& a = act[i];
    Active& b = act[j];
    ExprNode nd;
    nd.op = Op::Union;
    nd.left = a.root;
    nd.right = b.root;
    a.root = static_cast<int>(nodes.size());
    nodes.push_back(nd);
    for (int l = 1; l <= k; ++l) {
      a.size[l] += b.size[l];
      a.verts[l].insert(a.verts[l].end(), b.verts[l].begin(), b.verts[l].end());
      for (int m = 1; m <= k; ++m) a.joined[l][m] |= b.joined[l][m];
    }
    act.erase(act.begin() + j);
  }

  void do_relabel(Active& a, int i, int j) {
    ExprNode nd;
    nd.op = Op::Relabel;
    nd.a = i;
    nd.b = j;
    nd.left = a.root;
    a.root = static_cast<int>(nodes.size());
    nodes.push_back(nd);
    a.size[j] += a.size[i];
    a.size[i] = 0;
    a.verts[j].insert(a.verts[j].end(), a.verts[i].begin(), a.verts[i].end());
    a.verts[i].clear();
    for (int m = 1; m <= k; ++m) {
      a.joined[j][m] |= a.joined[i][m];
      a.joined[m][j] |= a.joined[m][i];
      a.joined[i][m] = a.joined[m][i] = 0;
    }
  }

  void do_join(Active& a, int i, int j) {
    ExprNode nd;
    nd.op = Op::Join;
    nd.a = i;
    nd.b = j;
    nd.left = a.root;
    a.root = static_cast<int>(nodes.size());
    nodes.push_back(nd);
    a.joined[i][j] = a.joined[j][i] = 1;
    Vertex anchor = a.verts[i][0];
    for (Vertex v : a.verts[i]) link(v, anchor);
    for (Vertex v : a.verts[j]) link(v, anchor);
  }

  bool merges_components(Active& a, int i, int j) {
    int r = find(a.verts[i][0]);
    for (Vertex v : a.verts[i])
      if (find(v) != r) return true;
    for (Vertex v : a.verts[j])
      if (find(v) != r) return true;
    return false;
  }

  bool join_pair(Active& a, bool want_merge, int& oi, int& oj) {
    std::vector<std::pair<int, int>> cand;
    for (int i = 1; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j)
        if (a.size[i] > 0 && a.size[j] > 0 && !a.joined[i][j]) {
          if (want_merge && !merges_components(a, i, j)) continue;
          cand.emplace_back(i, j);
        }
    if (cand.empty()) return false;
    auto [i, j] = cand[rng.below(cand.size())];
    oi = i;
    oj = j;
    return true;
  }

  bool run(CliqueExpression& out) {
    long guard = 200L * (n + 4) * k;
    do_intro();
    while ((introduced < n || act.size() > 1) && guard-- > 0) {
      double r = static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
      if (introduced < n && (r < 0.45 || act.empty())) {
        do_intro();
      } else if (act.size() > 1 && r < 0.65) {
        size_t i = rng.below(act.size());
        size_t j = rng.below(act.size());
        if (i != j) do_union(i, j);
      } else if (r < 0.90 && !act.empty()) {
        Active& a = act[rng.below(act.size())];
        int i, j;
        if (join_pair(a, false, i, j)) do_join(a, i, j);
      } else if (!act.empty()) {
        Active& a = act[rng.below(act.size())];
        std::vector<int> ne;
        for (int l = 1; l <= k; ++l)
          if (a.size[l] > 0) ne.push_back(l);
        if (ne.size() >= 2) {
          int i = ne[rng.below(ne.size())];
          int j = ne[rng.below(ne.size())];
          if (i != j) do_relabel(a, i, j);
        }
      }
    }
    if (introduced < n || act.size() != 1) return false;
    // connect what the random joins left apart
    Active& a = act[0];
    int i, j;
    while (join_pair(a, true, i, j)) do_join(a, i, j);
    out = CliqueExpression(nodes, k);
    return is_connected(evaluate(out));
  }
};

CliqueExpression fallback_expression(int n, int k) {
  // relabel-into-one clique build; always connected and irredundant
  std::vector<ExprNode> nodes;
  ExprNode in0;
  in0.op = Op::Intro;
  in0.a = 1;
  in0.v = 0;
  nodes.push_back(in0);
  int cur = 0;
  for (Vertex v = 1; v < n; ++v) {
    ExprNode iv;
    iv.op = Op::Intro;
    iv.a = 2;
    iv.v = v;
    nodes.push_back(iv);
    ExprNode un;
    un.op = Op::Union;
    un.left = cur;
    un.right = static_cast<int>(nodes.size()) - 1;
    nodes.push_back(un);
    ExprNode jn;
    jn.op = Op::Join;
    jn.a = 1;
    jn.b = 2;
    jn.left = static_cast<int>(nodes.size()) - 1;
    nodes.push_back(jn);
    ExprNode rl;
    rl.op = Op::Relabel;
    rl.a = 2;
    rl.b = 1;
    rl.left = static_cast<int>(nodes.size()) - 1;
    nodes.push_back(rl);
    cur = static_cast<int>(nodes.size()) - 1;
  }
  return CliqueExpression(std::move(nodes), k);
}

}  // namespace

CliqueExpression random_expression(int n, int k, uint64_t seed) {
  if (n < 1) throw std::runtime_error("random_expression: n must be >= 1");
  if (k < 2) throw std::runtime_error("random_expression: k must be >= 2");
  if (n == 1) {
    std::vector<ExprNode> nodes(1);
    nodes[0].op = Op::Intro;
    nodes[0].a = 1;
    nodes[0].v = 0;
    return CliqueExpression(std::move(nodes), k);
  }
  for (int attempt = 0; attempt < 64; ++attempt) {
    Builder b(n, k, mix_seed(seed, attempt));
    CliqueExpression out;
    if (b.run(out)) return out;
  }
  return fallback_expression(n, k);
}

}  // namespace cwc
