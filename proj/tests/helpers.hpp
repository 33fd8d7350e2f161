#pragma once

#include <vector>

#include "cwc/expr.hpp"

namespace cwc::testing {

// tiny programmatic expression builder for test fixtures
struct ExprBuilder {
  std::vector<ExprNode> nodes;

  int intro(int label, Vertex v) {
    ExprNode nd;
    nd.op = Op::Intro;
    nd.a = label;
    nd.v = v;
    nodes.push_back(nd);
    return static_cast<int>(nodes.size()) - 1;
  }
  int unite(int l, int r) {
    ExprNode nd;
    nd.op = Op::Union;
    nd.left = l;
    nd.right = r;
    nodes.push_back(nd);
    return static_cast<int>(nodes.size()) - 1;
  }
  int relabel(int i, int j, int child) {
    ExprNode nd;
    nd.op = Op::Relabel;
    nd.a = i;
    nd.b = j;
    nd.left = child;
    nodes.push_back(nd);
    return static_cast<int>(nodes.size()) - 1;
  }
  int join(int i, int j, int child) {
    ExprNode nd;
    nd.op = Op::Join;
    nd.a = i;
    nd.b = j;
    nd.left = child;
    nodes.push_back(nd);
    return static_cast<int>(nodes.size()) - 1;
  }
  int dead(int label, int child) {
    ExprNode nd;
    nd.op = Op::Dead;
    nd.a = label;
    nd.left = child;
    nodes.push_back(nd);
    return static_cast<int>(nodes.size()) - 1;
  }
  CliqueExpression finish(int k) { return CliqueExpression(nodes, k); }
};

// path a-b on labels 1,2
inline CliqueExpression single_edge_expr() {
  ExprBuilder b;
  int u = b.unite(b.intro(1, 0), b.intro(2, 1));
  b.join(1, 2, u);
  return b.finish(2);
}

// path 0-1-2, vertices introduced left to right
inline CliqueExpression path3_expr() {
  ExprBuilder b;
  int u = b.unite(b.intro(1, 0), b.intro(2, 1));
  int j = b.join(1, 2, u);
  int u2 = b.unite(j, b.intro(3, 2));
  b.join(2, 3, u2);
  return b.finish(3);
}

// cycle 0-1-3-2-0 built from two joined P2s
inline CliqueExpression cycle4_expr() {
  ExprBuilder b;
  int p1 = b.join(1, 2, b.unite(b.intro(1, 0), b.intro(2, 1)));
  int p2 = b.join(3, 4, b.unite(b.intro(3, 2), b.intro(4, 3)));
  int u = b.unite(p1, p2);
  int j1 = b.join(1, 3, u);
  b.join(2, 4, j1);
  return b.finish(4);
}

// star with center 0 and leaves 1..3
inline CliqueExpression star4_expr() {
  ExprBuilder b;
  int acc = b.intro(2, 1);
  acc = b.unite(acc, b.intro(2, 2));
  acc = b.unite(acc, b.intro(2, 3));
  int u = b.unite(acc, b.intro(1, 0));
  b.join(1, 2, u);
  return b.finish(2);
}

// path 0-1-2-3
inline CliqueExpression path4_expr() {
  ExprBuilder b;
  int u = b.unite(b.intro(1, 0), b.intro(2, 1));
  int j = b.join(1, 2, u);
  int u2 = b.unite(j, b.intro(3, 2));
  int j2 = b.join(2, 3, u2);
  int u3 = b.unite(j2, b.intro(4, 3));
  b.join(3, 4, u3);
  return b.finish(4);
}

}  // namespace cwc::testing
