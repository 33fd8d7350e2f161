#pragma once

#include <array>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cwc/expr.hpp"
#include "cwc/lb_generator.hpp"

namespace cwc {
namespace lb {

// ---- gadget states ---------------------------------------------------------

// CVC atoms: 0, 1_0 (in X, not root-connected), 1_1 (in X, root-connected)
enum CvcAtom { CA_0 = 0, CA_10 = 1, CA_11 = 2 };

// boundary states s^1..s^6 on (u_1, u_2, u_3, u_4), transition order
inline const CvcAtom kCvcState[6][4] = {
    {CA_0, CA_0, CA_11, CA_11},   // s1
    {CA_10, CA_0, CA_11, CA_10},  // s2
    {CA_10, CA_10, CA_11, CA_0},  // s3
    {CA_11, CA_0, CA_10, CA_10},  // s4
    {CA_11, CA_10, CA_10, CA_0},  // s5
    {CA_11, CA_11, CA_0, CA_0},   // s6
};

inline int cvc_sol(CvcAtom a) { return a != CA_0; }
inline int cvc_conn(CvcAtom a) { return a == CA_11; }

// CDS atoms add the dominated/undominated split of "not in X"
enum CdsAtom { DA_00 = 0, DA_01 = 1, DA_10 = 2, DA_11 = 3 };

inline const CdsAtom kCdsState[5][4] = {
    {DA_01, DA_00, DA_11, DA_01},  // s1
    {DA_01, DA_01, DA_01, DA_01},  // s2
    {DA_10, DA_00, DA_11, DA_00},  // s3
    {DA_11, DA_00, DA_10, DA_00},  // s4
    {DA_11, DA_01, DA_01, DA_00},  // s5
};

inline int cds_sol(CdsAtom a) { return a == DA_10 || a == DA_11; }
inline int cds_conn(CdsAtom a) { return a == DA_11; }
inline int cds_dom(CdsAtom a) { return a == DA_01; }

// ---- CVC gadget geometry (38 vertices) -------------------------------------

struct CvcGeom {
  static constexpr int kSize = 38;
  static int u(int i) { return i - 1; }                         // i in 1..4
  static int a(int i, int q) { return 4 + 3 * (i - 1) + q - 1; }
  static int b(int i, int o) { return 16 + 2 * (i - 1) + o; }
  static int c(int i, int o) { return 24 + 2 * (i - 1) + o; }
  static int v(int l) { return 32 + l - 1; }                    // l in 1..6

  static std::vector<std::pair<int, int>> internal_edges();
  static std::vector<int> root_adjacent();
  static std::vector<std::string> names();
  static std::vector<int> canonical(int ell);  // X_P^ell, local ids
};

// ---- CDS gadget geometry (79 vertices incl. subdividers) -------------------

struct CdsGeom {
  static constexpr int kSize = 79;
  static int u(int i, int q) { return 2 * (i - 1) + q - 1; }    // i,q in 1..2
  static int a(int i, int q) { return 4 + 3 * (i - 1) + q - 1; }
  static int b(int i, int o) { return 10 + 2 * (i - 1) + o; }
  static int c(int i, int o) { return 14 + 2 * (i - 1) + o; }
  static int d(int i, int o) { return 18 + 2 * (i - 1) + o; }
  static int v(int l) { return 22 + l - 1; }                    // l in 1..5
  // subdividers: 6 per side i, then 10 clique pairs, then 30 indicator ones
  static int w_side(int i, int which) { return 27 + 6 * (i - 1) + which; }
  static int w_clique(int a, int b);  // a < b in 1..5
  static int w_ind(int i, int l, int which) {
    return 49 + 15 * (i - 1) + 3 * (l - 1) + which;  // which: 0=b,1=c,2=d
  }

  // plain edges and subdivided pairs (subdivider, endpoint, endpoint)
  static std::vector<std::pair<int, int>> plain_edges();
  static std::vector<std::array<int, 3>> subdivided();
  static std::vector<int> root_adjacent();
  static std::vector<std::string> names();
  static std::vector<int> canonical(int ell);
};

// ---- grid layouts: vertex id arithmetic ------------------------------------

struct GridLayout {
  int t = 0, p = 0, hp = 0;   // hp = 6^p or 5^p
  long cols = 0;
  int gsize = 0;              // 38 or 79
  long dec_block = 0;         // 2 + 3*hp
  long col_block = 0;

  GridLayout() = default;
  GridLayout(int t_, int p_, int hp_, long cols_, int gsize_)
      : t(t_), p(p_), hp(hp_), cols(cols_), gsize(gsize_) {
    dec_block = 2 + 3L * hp;
    col_block = 2 + t * dec_block + static_cast<long>(t) * p * gsize;
  }

  long total() const { return 2 + cols * col_block; }
  long root() const { return 0; }
  long root_leaf() const { return 1; }
  long col_base(long l) const { return 2 + l * col_block; }
  long o(long l) const { return col_base(l); }
  long obar(long l) const { return col_base(l) + 1; }
  long dec_base(int i, long l) const { return col_base(l) + 2 + i * dec_block; }
  long z(int i, long l) const { return dec_base(i, l); }
  long zbar(int i, long l) const { return dec_base(i, l) + 1; }
  long x(int i, long l, int h) const { return dec_base(i, l) + 2 + 3L * h; }
  long xbar(int i, long l, int h) const { return x(i, l, h) + 1; }
  long y(int i, long l, int h) const { return x(i, l, h) + 2; }
  long gadget(int i, int j, long l) const {
    return col_base(l) + 2 + t * dec_block + (static_cast<long>(i) * p + j) * gsize;
  }
};

// ---- linear expression emitter ---------------------------------------------

// Builds a linear clique-expression op by op. Labels come from a lowest-
// first free list so the measured width tracks the number of labels in
// simultaneous use; label 1 is the root label, label 2 the trash label.
class LinearEmitter {
 public:
  LinearEmitter() {
    root_label_ = alloc();   // 1
    trash_label_ = alloc();  // 2
  }

  int root_label() const { return root_label_; }
  int trash_label() const { return trash_label_; }

  int alloc() {
    int l;
    if (!free_.empty()) {
      l = *free_.begin();
      free_.erase(free_.begin());
    } else {
      l = ++high_;
    }
    return l;
  }

  void intro(Vertex v, int label) {
    ExprNode in;
    in.op = Op::Intro;
    in.a = label;
    in.v = v;
    nodes_.push_back(in);
    int intro_idx = static_cast<int>(nodes_.size()) - 1;
    if (chain_ >= 0) {
      ExprNode un;
      un.op = Op::Union;
      un.left = chain_;
      un.right = intro_idx;
      nodes_.push_back(un);
      chain_ = static_cast<int>(nodes_.size()) - 1;
    } else {
      chain_ = intro_idx;
    }
    size_of(label)++;
  }

  void join(int la, int lb) {
    if (size_of(la) == 0 || size_of(lb) == 0)
      throw std::logic_error("emitter: join on an empty label");
    ExprNode nd;
    nd.op = Op::Join;
    nd.a = la;
    nd.b = lb;
    nd.left = chain_;
    nodes_.push_back(nd);
    chain_ = static_cast<int>(nodes_.size()) - 1;
  }

  void relabel(int src, int dst) {
    if (size_of(src) == 0 || size_of(dst) == 0)
      throw std::logic_error("emitter: relabel touching an empty label");
    ExprNode nd;
    nd.op = Op::Relabel;
    nd.a = src;
    nd.b = dst;
    nd.left = chain_;
    nodes_.push_back(nd);
    chain_ = static_cast<int>(nodes_.size()) - 1;
    size_of(dst) += size_of(src);
    size_of(src) = 0;
  }

  // relabel into trash and recycle the label
  void retire(int label) {
    relabel(label, trash_label_);
    free_.insert(label);
  }

  // recycle a label that has already been emptied by a relabel
  void recycle(int label) {
    if (size_of(label) != 0) throw std::logic_error("emitter: recycling a nonempty label");
    free_.insert(label);
  }

  CliqueExpression finish() {
    return CliqueExpression(nodes_, high_);
  }

 private:
  std::vector<ExprNode> nodes_;
  int chain_ = -1;
  int root_label_ = 0, trash_label_ = 0;
  int high_ = 0;
  std::set<int> free_;
  std::vector<long> sizes_;

  long& size_of(int label) {
    if (static_cast<size_t>(label) >= sizes_.size()) sizes_.resize(label + 1, 0);
    return sizes_[static_cast<size_t>(label)];
  }
};

// clause wiring shared by both constructions
bool group_assignment_satisfies(const SatInstance& sat, int beta, int group, uint32_t tau,
                                const std::vector<int>& clause);
int group_size(const SatInstance& sat, int beta, int group);

}  // namespace lb
}  // namespace cwc
