#include "cwc/expr.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cwc {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw std::runtime_error("expression: " + msg); }

}  // namespace

CliqueExpression::CliqueExpression(std::vector<ExprNode> nodes, int k)
    : nodes_(std::move(nodes)), k_(k) {
  validate();
}

void CliqueExpression::validate() {
  int nn = size();
  if (nn == 0) bad("empty expression");
  if (k_ < 1) bad("declared width must be >= 1");
  std::vector<int> refs(nn, 0);
  std::vector<Vertex> intro_ids;
  has_dead_ = false;
  for (int t = 0; t < nn; ++t) {
    const ExprNode& nd = nodes_[t];
    auto check_child = [&](int c) {
      if (c < 0 || c >= t) bad("dangling node reference at node " + std::to_string(t));
      refs[c]++;
    };
    auto check_label = [&](int l) {
      if (l < 1 || l > k_)
        bad("label " + std::to_string(l) + " out of [1.." + std::to_string(k_) + "]");
    };
    switch (nd.op) {
      case Op::Intro:
        check_label(nd.a);
        if (nd.left != -1 || nd.right != -1) bad("introduce node with children");
        if (nd.v < 0) bad("negative vertex id");
        intro_ids.push_back(nd.v);
        break;
      case Op::Union:
        check_child(nd.left);
        check_child(nd.right);
        break;
      case Op::Relabel:
        check_label(nd.a);
        check_label(nd.b);
        if (nd.a == nd.b) bad("self-relabel " + std::to_string(nd.a));
        check_child(nd.left);
        if (nd.right != -1) bad("relabel node with two children");
        break;
      case Op::Join:
        check_label(nd.a);
        check_label(nd.b);
        if (nd.a == nd.b) bad("self-join " + std::to_string(nd.a));
        check_child(nd.left);
        if (nd.right != -1) bad("join node with two children");
        break;
      case Op::Dead:
        check_label(nd.a);
        check_child(nd.left);
        if (nd.right != -1) bad("dead node with two children");
        if (nodes_[nd.left].op != Op::Join && nodes_[nd.left].op != Op::Dead)
          bad("dead node must sit directly above a join or dead node");
        has_dead_ = true;
        break;
    }
  }
  for (int t = 0; t + 1 < nn; ++t)
    if (refs[t] != 1) bad("node " + std::to_string(t) + " must have exactly one parent");
  if (refs[nn - 1] != 0) bad("root node has a parent");

  std::sort(intro_ids.begin(), intro_ids.end());
  n_ = static_cast<int>(intro_ids.size());
  if (n_ == 0) bad("no vertices introduced");
  for (int i = 0; i < n_; ++i) {
    if (i > 0 && intro_ids[i] == intro_ids[i - 1])
      bad("duplicate vertex " + std::to_string(intro_ids[i]));
    if (intro_ids[i] != i) bad("vertex ids must be dense 0..n-1");
  }
}

CliqueExpression parse_expression(std::istream& in) {
  struct RawNode {
    std::string op;
    long a = 0, b = 0, c = 0;
    int nargs = 0;
    int lineno = 0;
  };
  std::map<long, RawNode> raw;
  long root_id = -1;
  bool saw_root = false;
  int declared_k = 0;
  bool declared_linear = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // strip the "<id>:" prefix if glued, e.g. "3:union 1 2"
    std::string work = line;
    std::istringstream probe(work);
    std::string first;
    if (!(probe >> first)) continue;
    auto fail = [&](const std::string& msg) {
      throw std::runtime_error("expression parse (line " + std::to_string(lineno) + "): " + msg);
    };
    if (first == "c") continue;
    if (first == "p") {
      std::string kind;
      long k;
      std::istringstream ls(work);
      std::string tag;
      if (!(ls >> tag >> kind >> k) || kind != "cex") fail("expected 'p cex <k> [linear]'");
      std::string flag;
      if (ls >> flag) {
        if (flag == "linear")
          declared_linear = true;
        else
          fail("unknown header flag '" + flag + "'");
      }
      if (k < 1) fail("declared width must be >= 1");
      declared_k = static_cast<int>(k);
      continue;
    }
    if (first == "root") {
      std::istringstream ls(work);
      std::string tag;
      long id;
      if (!(ls >> tag >> id)) fail("expected 'root <id>'");
      if (saw_root) fail("duplicate root line");
      root_id = id;
      saw_root = true;
      continue;
    }
    // node line: "<id>: <op> args..."; tolerate missing space after the colon
    auto colon = work.find(':');
    if (colon == std::string::npos) fail("expected '<id>: <op> ...'");
    long id;
    try {
      size_t used = 0;
      id = std::stol(work.substr(0, colon), &used);
      while (used < colon && std::isspace(static_cast<unsigned char>(work[used]))) ++used;
      if (used != colon) fail("malformed node id");
    } catch (const std::exception&) {
      fail("malformed node id");
    }
    if (id <= 0) fail("node ids must be positive");
    if (raw.count(id)) fail("duplicate node id " + std::to_string(id));
    std::istringstream ls(work.substr(colon + 1));
    RawNode rn;
    rn.lineno = lineno;
    if (!(ls >> rn.op)) fail("missing operation");
    std::vector<long> args;
    long x;
    while (ls >> x) args.push_back(x);
    if (rn.op == "intro") {
      if (args.size() != 2) fail("intro takes <label> <vertex>");
      rn.a = args[0];
      rn.b = args[1];
    } else if (rn.op == "union") {
      if (args.size() != 2) fail("union takes <id1> <id2>");
      rn.a = args[0];
      rn.b = args[1];
    } else if (rn.op == "relabel" || rn.op == "join") {
      if (args.size() != 3) fail(rn.op + " takes <i> <j> <id>");
      rn.a = args[0];
      rn.b = args[1];
      rn.c = args[2];
    } else if (rn.op == "dead") {
      if (args.size() != 2) fail("dead takes <label> <id>");
      rn.a = args[0];
      rn.b = args[1];
    } else {
      fail("unknown operation '" + rn.op + "'");
    }
    raw.emplace(id, rn);
  }
  if (!saw_root) throw std::runtime_error("expression parse: missing 'root <id>' line");
  if (!raw.count(root_id))
    throw std::runtime_error("expression parse: dangling node reference root " +
                             std::to_string(root_id));

  // order nodes by DFS from the root so that the root comes last
  std::vector<long> order;
  {
    std::vector<long> stack = {root_id};
    std::vector<long> post;
    // iterative post-order
    struct Frame {
      long id;
      int next_child = 0;
    };
    std::vector<Frame> fs;
    fs.push_back({root_id, 0});
    while (!fs.empty()) {
      Frame& f = fs.back();
      const RawNode& rn = raw.at(f.id);
      std::vector<long> kids;
      if (rn.op == "union")
        kids = {rn.a, rn.b};
      else if (rn.op == "relabel" || rn.op == "join")
        kids = {rn.c};
      else if (rn.op == "dead")
        kids = {rn.b};
      if (f.next_child < static_cast<int>(kids.size())) {
        long k = kids[f.next_child++];
        auto it = raw.find(k);
        if (it == raw.end())
          throw std::runtime_error("expression parse (line " + std::to_string(rn.lineno) +
                                   "): dangling node reference " + std::to_string(k));
        fs.push_back({k, 0});
      } else {
        post.push_back(f.id);
        fs.pop_back();
      }
    }
    order = std::move(post);
  }
  if (order.size() != raw.size()) {
    // some defined node is not reachable from the root
    std::vector<char> used;
    std::map<long, char> inorder;
    for (long id : order) inorder[id] = 1;
    for (auto& [id, rn] : raw)
      if (!inorder.count(id))
        throw std::runtime_error("expression parse (line " + std::to_string(rn.lineno) +
                                 "): unreachable node " + std::to_string(id));
  }
  std::map<long, int> pos;
  for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  // children must precede parents in the file as well
  for (auto& [id, rn] : raw) {
    std::vector<long> kids;
    if (rn.op == "union")
      kids = {rn.a, rn.b};
    else if (rn.op == "relabel" || rn.op == "join")
      kids = {rn.c};
    else if (rn.op == "dead")
      kids = {rn.b};
    for (long k : kids)
      if (k >= id)
        throw std::runtime_error("expression parse (line " + std::to_string(rn.lineno) +
                                 "): children must precede parents (node " + std::to_string(id) +
                                 " references " + std::to_string(k) + ")");
  }

  std::vector<ExprNode> nodes(order.size());
  int max_label = 1;
  for (size_t i = 0; i < order.size(); ++i) {
    const RawNode& rn = raw.at(order[i]);
    ExprNode nd;
    if (rn.op == "intro") {
      nd.op = Op::Intro;
      nd.a = static_cast<int>(rn.a);
      nd.v = static_cast<Vertex>(rn.b);
      max_label = std::max(max_label, nd.a);
    } else if (rn.op == "union") {
      nd.op = Op::Union;
      nd.left = pos.at(rn.a);
      nd.right = pos.at(rn.b);
    } else if (rn.op == "relabel" || rn.op == "join") {
      nd.op = rn.op == "relabel" ? Op::Relabel : Op::Join;
      nd.a = static_cast<int>(rn.a);
      nd.b = static_cast<int>(rn.b);
      nd.left = pos.at(rn.c);
      max_label = std::max({max_label, nd.a, nd.b});
    } else {
      nd.op = Op::Dead;
      nd.a = static_cast<int>(rn.a);
      nd.left = pos.at(rn.b);
      max_label = std::max(max_label, nd.a);
    }
    nodes[i] = nd;
  }
  int k = declared_k > 0 ? declared_k : max_label;
  CliqueExpression e(std::move(nodes), k);
  if (declared_linear && !is_linear(e))
    throw std::runtime_error("expression parse: header declares linear but a union's right "
                             "operand is not an introduce");
  return e;
}

CliqueExpression parse_expression_text(const std::string& text) {
  std::istringstream in(text);
  return parse_expression(in);
}

void write_expression(std::ostream& out, const CliqueExpression& e) {
  out << "p cex " << e.declared_width();
  if (is_linear(e)) out << " linear";
  out << "\n";
  for (int t = 0; t < e.size(); ++t) {
    const ExprNode& nd = e.node(t);
    out << (t + 1) << ": ";
    switch (nd.op) {
      case Op::Intro: out << "intro " << nd.a << " " << nd.v; break;
      case Op::Union: out << "union " << (nd.left + 1) << " " << (nd.right + 1); break;
      case Op::Relabel: out << "relabel " << nd.a << " " << nd.b << " " << (nd.left + 1); break;
      case Op::Join: out << "join " << nd.a << " " << nd.b << " " << (nd.left + 1); break;
      case Op::Dead: out << "dead " << nd.a << " " << (nd.left + 1); break;
    }
    out << "\n";
  }
  out << "root " << e.size() << "\n";
}

std::string expression_to_text(const CliqueExpression& e) {
  std::ostringstream out;
  write_expression(out, e);
  return out.str();
}

bool is_linear(const CliqueExpression& e) {
  for (int t = 0; t < e.size(); ++t) {
    const ExprNode& nd = e.node(t);
    if (nd.op == Op::Union && e.node(nd.right).op != Op::Intro) return false;
  }
  return true;
}

namespace {

// transient bottom-up walk state: label -> sorted vertex list
struct LabelSets {
  std::vector<std::vector<Vertex>> by_label;  // index 1..k

  explicit LabelSets(int k) : by_label(k + 1) {}
};

template <typename JoinFn, typename NodeFn>
void walk(const CliqueExpression& e, JoinFn&& on_join_pair, NodeFn&& on_node) {
  int k = e.declared_width();
  std::vector<LabelSets> pending;  // stack-free storage per node until consumed
  std::vector<int> slot(e.size(), -1);
  std::vector<int> freelist;
  auto alloc = [&](int t) {
    int s;
    if (!freelist.empty()) {
      s = freelist.back();
      freelist.pop_back();
      pending[s] = LabelSets(k);
    } else {
      s = static_cast<int>(pending.size());
      pending.emplace_back(k);
    }
    slot[t] = s;
    return s;
  };
  for (int t = 0; t < e.size(); ++t) {
    const ExprNode& nd = e.node(t);
    switch (nd.op) {
      case Op::Intro: {
        int s = alloc(t);
        pending[s].by_label[nd.a].push_back(nd.v);
        break;
      }
      case Op::Union: {
        int sl = slot[nd.left], sr = slot[nd.right];
        // fold the smaller side into the larger one
        size_t szl = 0, szr = 0;
        for (int l = 1; l <= k; ++l) {
          szl += pending[sl].by_label[l].size();
          szr += pending[sr].by_label[l].size();
        }
        int big = szl >= szr ? sl : sr;
        int small = szl >= szr ? sr : sl;
        for (int l = 1; l <= k; ++l) {
          auto& dst = pending[big].by_label[l];
          auto& src = pending[small].by_label[l];
          if (src.empty()) continue;
          size_t old = dst.size();
          dst.insert(dst.end(), src.begin(), src.end());
          std::inplace_merge(dst.begin(), dst.begin() + old, dst.end());
          src.clear();
        }
        slot[t] = big;
        freelist.push_back(small);
        slot[nd.left] = slot[nd.right] = -1;
        break;
      }
      case Op::Relabel: {
        int s = slot[nd.left];
        auto& from = pending[s].by_label[nd.a];
        auto& to = pending[s].by_label[nd.b];
        if (!from.empty()) {
          size_t old = to.size();
          to.insert(to.end(), from.begin(), from.end());
          std::inplace_merge(to.begin(), to.begin() + old, to.end());
          from.clear();
        }
        slot[t] = s;
        slot[nd.left] = -1;
        break;
      }
      case Op::Join: {
        int s = slot[nd.left];
        for (Vertex u : pending[s].by_label[nd.a])
          for (Vertex v : pending[s].by_label[nd.b]) on_join_pair(t, u, v);
        slot[t] = s;
        slot[nd.left] = -1;
        break;
      }
      case Op::Dead: {
        slot[t] = slot[nd.left];
        slot[nd.left] = -1;
        break;
      }
    }
    on_node(t, pending[slot[t]].by_label);
  }
}

}  // namespace

LabeledGraph evaluate(const CliqueExpression& e) {
  LabeledGraph g(e.vertex_count(), e.declared_width());
  walk(
      e, [&](int, Vertex u, Vertex v) { g.add_edge(u, v); },
      [&](int t, const std::vector<std::vector<Vertex>>& by_label) {
        if (t == e.root()) {
          for (int l = 1; l <= e.declared_width(); ++l)
            for (Vertex v : by_label[l]) g.set_label(v, l);
        }
      });
  return g;
}

int width(const CliqueExpression& e) {
  int w = 0;
  walk(
      e, [](int, Vertex, Vertex) {},
      [&](int, const std::vector<std::vector<Vertex>>& by_label) {
        for (int l = static_cast<int>(by_label.size()) - 1; l > w; --l)
          if (!by_label[l].empty()) {
            w = l;
            break;
          }
      });
  return w;
}

FullAnnotation annotate_full(const CliqueExpression& e) {
  const long kMaxStored = 50'000'000;
  FullAnnotation ann;
  int nn = e.size();
  int k = e.declared_width();
  ann.verts.resize(nn);
  ann.by_label.resize(nn);
  ann.nonempty.resize(nn);
  ann.edges.resize(nn);
  ann.dead.resize(nn);
  long stored = 0;
  // per-node vertex/label/edge sets
  std::vector<std::pair<Vertex, Vertex>> scratch;
  walk(
      e,
      [&](int t, Vertex u, Vertex v) {
        scratch.emplace_back(std::min(u, v), std::max(u, v));
        (void)t;
      },
      [&](int t, const std::vector<std::vector<Vertex>>& by_label) {
        const ExprNode& nd = e.node(t);
        ann.by_label[t].assign(by_label.begin(), by_label.end());
        for (int l = 1; l <= k; ++l) {
          if (!by_label[l].empty()) ann.nonempty[t].push_back(l);
          ann.verts[t].insert(ann.verts[t].end(), by_label[l].begin(), by_label[l].end());
        }
        std::sort(ann.verts[t].begin(), ann.verts[t].end());
        // edge set: child edges plus whatever the join contributed
        if (nd.op == Op::Union) {
          ann.edges[t] = ann.edges[nd.left];
          ann.edges[t].insert(ann.edges[t].end(), ann.edges[nd.right].begin(),
                              ann.edges[nd.right].end());
        } else if (nd.op != Op::Intro) {
          ann.edges[t] = ann.edges[nd.left];
        }
        if (nd.op == Op::Join) {
          ann.edges[t].insert(ann.edges[t].end(), scratch.begin(), scratch.end());
          scratch.clear();
        }
        std::sort(ann.edges[t].begin(), ann.edges[t].end());
        ann.edges[t].erase(std::unique(ann.edges[t].begin(), ann.edges[t].end()),
                           ann.edges[t].end());
        stored += static_cast<long>(ann.verts[t].size() + ann.edges[t].size());
        if (stored > kMaxStored)
          throw std::runtime_error("annotate_full: expression too large to materialize");
      });
  ann.graph = evaluate(e);
  // D_t = vertices whose full final neighborhood is already in E_t
  std::vector<int> final_deg(e.vertex_count(), 0);
  for (auto [u, v] : ann.graph.edges()) {
    final_deg[u]++;
    final_deg[v]++;
  }
  std::vector<int> deg(e.vertex_count());
  for (int t = 0; t < nn; ++t) {
    std::fill(deg.begin(), deg.end(), 0);
    for (auto [u, v] : ann.edges[t]) {
      deg[u]++;
      deg[v]++;
    }
    for (Vertex v : ann.verts[t])
      if (deg[v] == final_deg[v]) ann.dead[t].push_back(v);
  }
  return ann;
}

std::vector<std::vector<Vertex>> compute_dead_sets(const CliqueExpression& e) {
  return annotate_full(e).dead;
}

}  // namespace cwc
