#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "cwc/expr.hpp"
#include "helpers.hpp"

using namespace cwc;
using namespace cwc::testing;

TEST_CASE("parse a two-vertex edgeless program") {
  CliqueExpression e = parse_expression_text(
      "1: intro 1 0\n"
      "2: intro 1 1\n"
      "3: union 1 2\n"
      "root 3\n");
  LabeledGraph g = evaluate(e);
  CHECK(g.vertex_count() == 2);
  CHECK(g.edge_count() == 0);
  CHECK(g.label(0) == 1);
  CHECK(g.label(1) == 1);
}

TEST_CASE("parse diagnostics") {
  CHECK_THROWS_WITH_AS(parse_expression_text("1: intro 1 0\n2: intro 1 0\n3: union 1 2\nroot 3\n"),
                       doctest::Contains("duplicate vertex"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_expression_text("1: intro 1 0\n2: join 2 2 1\nroot 2\n"),
                       doctest::Contains("self-join"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_expression_text("1: intro 1 0\n2: join 1 2 7\nroot 2\n"),
                       doctest::Contains("dangling"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_expression_text("p cex 1\n1: intro 2 0\nroot 1\n"),
                       doctest::Contains("out of [1..1]"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_expression_text("1: intro 1 0\n2: intro 1 1\nroot 2\n"),
                       doctest::Contains("unreachable"), std::runtime_error);
  // glued colon form is accepted
  CHECK_NOTHROW(parse_expression_text("1:intro 1 0\nroot 1\n"));
}

TEST_CASE("evaluate: edge, relabel, and C4 from two P2s") {
  LabeledGraph edge = evaluate(single_edge_expr());
  CHECK(edge.edge_count() == 1);
  CHECK(edge.has_edge(0, 1));

  ExprBuilder rb;
  rb.relabel(1, 2, rb.intro(1, 0));
  LabeledGraph rl = evaluate(rb.finish(2));
  CHECK(rl.label(0) == 2);

  // direct construction oracle for the 4-cycle
  LabeledGraph c4 = evaluate(cycle4_expr());
  LabeledGraph want(4, 4);
  want.add_edge(0, 1);
  want.add_edge(2, 3);
  want.add_edge(0, 2);
  want.add_edge(1, 3);
  CHECK(c4.edge_count() == 4);
  for (auto [u, v] : want.edges()) CHECK(c4.has_edge(u, v));
  for (Vertex v = 0; v < 4; ++v) CHECK(c4.degree(v) == 2);
}

TEST_CASE("width") {
  ExprBuilder b;
  b.intro(3, 0);
  CHECK(width(b.finish(3)) == 3);

  ExprBuilder b2;
  b2.unite(b2.intro(1, 0), b2.intro(2, 1));
  CHECK(width(b2.finish(2)) == 2);

  CHECK(width(cycle4_expr()) == 4);
}

TEST_CASE("expression text round trip") {
  CliqueExpression e = cycle4_expr();
  CliqueExpression f = parse_expression_text(expression_to_text(e));
  CHECK(evaluate(e).same_graph(evaluate(f)));
  CHECK(f.declared_width() == e.declared_width());
}

TEST_CASE("is_linear") {
  CHECK(is_linear(path3_expr()));
  CHECK_FALSE(is_linear(cycle4_expr()));  // unites two two-vertex graphs
}

TEST_CASE("dead sets") {
  // single edge: both endpoints die exactly at the join
  {
    CliqueExpression e = single_edge_expr();
    auto dead = compute_dead_sets(e);
    int join_node = e.size() - 1;
    CHECK(dead[join_node] == std::vector<Vertex>{0, 1});
    for (int t = 0; t < join_node; ++t) CHECK(dead[t].empty());
  }
  // isolated vertex is dead at its introduce node
  {
    ExprBuilder b;
    b.intro(1, 0);
    auto dead = compute_dead_sets(b.finish(1));
    CHECK(dead[0] == std::vector<Vertex>{0});
  }
  // P3: leaves die at their joins, the middle vertex at the later join
  {
    CliqueExpression e = path3_expr();
    auto dead = compute_dead_sets(e);
    FullAnnotation ann = annotate_full(e);
    // re-derive every D_t from the definition as an independent check
    LabeledGraph g = ann.graph;
    for (int t = 0; t < e.size(); ++t) {
      std::vector<Vertex> want;
      for (Vertex v : ann.verts[t]) {
        bool all_in = true;
        for (Vertex u : g.neighbors(v)) {
          auto pr = std::minmax(u, v);
          if (!std::binary_search(ann.edges[t].begin(), ann.edges[t].end(),
                                  std::make_pair(pr.first, pr.second)))
            all_in = false;
        }
        if (all_in) want.push_back(v);
      }
      CHECK(dead[t] == want);
    }
    // the staged deaths: first join kills vertex 0, second join kills 1 and 2
    CHECK(dead[3] == std::vector<Vertex>{0});
    CHECK(dead[e.size() - 1] == std::vector<Vertex>{0, 1, 2});
  }
}
