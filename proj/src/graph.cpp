#include "cwc/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cwc/rng.hpp"

namespace cwc {

LabeledGraph::LabeledGraph(int n, int k) : k_(k), lab_(n, 1), adj_(n) {
  if (n < 0) throw std::runtime_error("graph: negative vertex count");
  if (k < 1) throw std::runtime_error("graph: width must be >= 1");
}

void LabeledGraph::set_label(Vertex v, int lab) {
  if (lab < 1 || lab > k_)
    throw std::runtime_error("graph: label " + std::to_string(lab) + " out of [1.." +
                             std::to_string(k_) + "]");
  lab_[v] = lab;
}

bool LabeledGraph::add_edge(Vertex u, Vertex v) {
  if (u == v) throw std::runtime_error("graph: self-loop rejected");
  if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count())
    throw std::runtime_error("graph: edge endpoint out of range");
  auto& au = adj_[u];
  auto it = std::lower_bound(au.begin(), au.end(), v);
  if (it != au.end() && *it == v) return false;
  au.insert(it, v);
  auto& av = adj_[v];
  av.insert(std::lower_bound(av.begin(), av.end(), u), u);
  ++m_;
  return true;
}

bool LabeledGraph::has_edge(Vertex u, Vertex v) const {
  if (u == v) return false;
  const auto& au = adj_[u];
  return std::binary_search(au.begin(), au.end(), v);
}

std::vector<std::pair<Vertex, Vertex>> LabeledGraph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(m_);
  for (Vertex u = 0; u < vertex_count(); ++u)
    for (Vertex v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

bool LabeledGraph::same_graph(const LabeledGraph& o) const {
  return vertex_count() == o.vertex_count() && m_ == o.m_ && lab_ == o.lab_ && adj_ == o.adj_;
}

int connected_components(const LabeledGraph& g) {
  int n = g.vertex_count();
  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack;
  int cc = 0;
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++cc;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      for (Vertex v : g.neighbors(u))
        if (!seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
    }
  }
  return cc;
}

bool is_connected(const LabeledGraph& g) {
  return g.vertex_count() >= 1 && connected_components(g) == 1;
}

int64_t CostFunction::total() const {
  int64_t s = 0;
  for (int64_t x : c) s += x;
  return s;
}

void validate_costs(const LabeledGraph& g, const CostFunction& c, int64_t cap) {
  if (static_cast<int>(c.c.size()) != g.vertex_count())
    throw std::runtime_error("costs: size mismatch with graph");
  for (int64_t x : c.c)
    if (x < 1) throw std::runtime_error("costs: all values must be >= 1");
  int64_t n = g.vertex_count();
  if (cap == 0) cap = n * n * n;
  if (c.total() > cap)
    throw std::runtime_error("costs: total " + std::to_string(c.total()) + " exceeds cap " +
                             std::to_string(cap));
}

int64_t WeightFunction::total() const {
  int64_t s = 0;
  for (int64_t x : w) s += x;
  return s;
}

WeightFunction sample_weights(const LabeledGraph& g, uint64_t seed) {
  int n = g.vertex_count();
  if (n == 0) throw std::runtime_error("sample_weights: empty graph");
  SplitMix64 rng(seed);
  WeightFunction wf;
  wf.w.resize(n);
  for (int v = 0; v < n; ++v) wf.w[v] = 1 + static_cast<int64_t>(rng.below(2ULL * n));
  return wf;
}

LabeledGraph parse_graph(std::istream& in) {
  std::string line;
  LabeledGraph g;
  bool have_header = false;
  long declared_m = -1;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;  // blank
    if (tag == "c") continue;    // comment
    auto fail = [&](const std::string& msg) {
      throw std::runtime_error("graph parse (line " + std::to_string(lineno) + "): " + msg);
    };
    if (tag == "p") {
      std::string kind;
      long n, m, k;
      if (!(ls >> kind >> n >> m >> k) || kind != "graph") fail("expected 'p graph <n> <m> <k>'");
      if (n < 0 || m < 0 || k < 1) fail("invalid header values");
      g = LabeledGraph(static_cast<int>(n), static_cast<int>(k));
      declared_m = m;
      have_header = true;
    } else if (tag == "l") {
      if (!have_header) fail("label line before header");
      long v, lab;
      if (!(ls >> v >> lab)) fail("expected 'l <v> <label>'");
      if (v < 0 || v >= g.vertex_count()) fail("vertex out of range");
      g.set_label(static_cast<Vertex>(v), static_cast<int>(lab));
    } else if (tag == "e") {
      if (!have_header) fail("edge line before header");
      long u, v;
      if (!(ls >> u >> v)) fail("expected 'e <u> <v>'");
      if (u < 0 || v < 0 || u >= g.vertex_count() || v >= g.vertex_count())
        fail("vertex out of range");
      if (u == v) fail("self-loop");
      g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
    } else {
      fail("unknown line tag '" + tag + "'");
    }
  }
  if (!have_header) throw std::runtime_error("graph parse: missing 'p graph' header");
  if (declared_m >= 0 && declared_m != g.edge_count())
    throw std::runtime_error("graph parse: header declares " + std::to_string(declared_m) +
                             " edges, file has " + std::to_string(g.edge_count()));
  return g;
}

LabeledGraph parse_graph_text(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

void write_graph(std::ostream& out, const LabeledGraph& g) {
  out << "p graph " << g.vertex_count() << " " << g.edge_count() << " " << g.width() << "\n";
  for (Vertex v = 0; v < g.vertex_count(); ++v) out << "l " << v << " " << g.label(v) << "\n";
  for (auto [u, v] : g.edges()) out << "e " << u << " " << v << "\n";
}

}  // namespace cwc
