#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cwc {

// Set family over a small universe (elements = bit positions), members kept
// as a sorted mask list. Families built as k-fold products carry the block
// structure so membership and positions are O(k) instead of a binary search.
class SetFamily {
 public:
  static constexpr int kMaxUniverse = 28;  // memory guard

  static SetFamily from_members(int universe, std::vector<uint32_t> members);
  // F = up(fplus) \ up(fminus), materialized (universe <= 22)
  static SetFamily closure_difference(int universe, const std::vector<uint32_t>& fplus,
                                      const std::vector<uint32_t>& fminus);
  // the six CVC label states: nonempty proper subsets of a 3-element set
  static SetFamily cvc_states();
  // kF: members whose per-block projections all lie in the base family,
  // listed lexicographically; closure difference when the base is one
  static SetFamily power(const SetFamily& base, int k);

  int universe() const { return universe_; }
  size_t size() const { return members_.size(); }
  uint32_t member(size_t pos) const { return members_[pos]; }
  const std::vector<uint32_t>& members() const { return members_; }
  long position(uint32_t mask) const;  // -1 when absent
  bool is_closure_difference() const;
  bool has_product_structure() const { return is_power_; }
  int blocks() const { return blocks_; }
  int block_bits() const { return block_bits_; }
  size_t base_size() const { return base_size_; }
  long base_position(uint32_t block_mask) const { return base_pos_[block_mask]; }

 private:
  int universe_ = 0;
  std::vector<uint32_t> members_;
  mutable int closure_state_ = -1;  // -1 unknown, 0 no, 1 yes
  // product structure (power families)
  bool is_power_ = false;
  int block_bits_ = 0;
  int blocks_ = 1;
  size_t base_size_ = 0;
  std::vector<int32_t> base_pos_;  // mask -> position in base, -1 absent
};

// W subset T subset S with W,S in F implies T in F; exhaustive up to
// universe 20, sampled above
bool check_interval_property(const SetFamily& f);

// Fast zeta transform (Algorithm Z evaluated bit-major, in place): emits the
// add operations val[dst] += val[src] in an order that is valid for any
// commutative ring. Total adds are O(|F| * |U|). Power families get a block
// fast path: per bit, the affected positions form arithmetic strides.
template <class AddInto>
void zeta_schedule(const SetFamily& f, AddInto&& add) {
  if (!f.is_closure_difference())
    throw std::runtime_error("zeta: family is not a closure difference");
  const int u = f.universe();
  const size_t n = f.size();
  if (f.has_product_structure()) {
    const int ub = f.block_bits();
    const long bs = static_cast<long>(f.base_size());
    std::vector<uint32_t> base_mem(bs);
    for (uint32_t mask = 0; mask < (1u << ub); ++mask) {
      long p = f.base_position(mask);
      if (p >= 0) base_mem[p] = mask;
    }
    long stride = 1;
    for (int b = 0; b < f.blocks(); ++b) {
      long block = stride * bs;
      for (int jb = 0; jb < ub; ++jb) {
        uint32_t bit = 1u << jb;
        for (long m = 0; m < bs; ++m) {
          if (!(base_mem[m] & bit)) continue;
          long mprev = f.base_position(base_mem[m] ^ bit);
          if (mprev < 0) continue;
          for (long hi = 0; hi < static_cast<long>(n); hi += block)
            for (long lo = 0; lo < stride; ++lo)
              add(static_cast<size_t>(hi + m * stride + lo),
                  static_cast<size_t>(hi + mprev * stride + lo));
        }
      }
      stride = block;
    }
    return;
  }
  for (int j = 0; j < u; ++j) {
    uint32_t bit = 1u << j;
    for (size_t p = 0; p < n; ++p) {
      uint32_t s = f.member(p);
      if (!(s & bit)) continue;
      long q = f.position(s ^ bit);
      if (q >= 0) add(p, static_cast<size_t>(q));
    }
  }
}

inline long zeta_op_count(const SetFamily& f) {
  long ops = 0;
  zeta_schedule(f, [&](size_t, size_t) { ++ops; });
  return ops;
}

// ---- typed rings ----------------------------------------------------------

struct Gf2Ring {
  using Value = uint8_t;
  static constexpr bool kCharTwo = true;
  static Value zero() { return 0; }
  static Value add(Value a, Value b) { return a ^ b; }
  static Value neg(Value a) { return a; }
  static Value mul(Value a, Value b) { return a & b; }
};

struct Int64Ring {
  using Value = int64_t;
  static constexpr bool kCharTwo = false;
  static Value zero() { return 0; }
  static Value add(Value a, Value b) {
    Value r;
    if (__builtin_add_overflow(a, b, &r)) throw std::runtime_error("ring: integer overflow");
    return r;
  }
  static Value neg(Value a) { return -a; }
  static Value mul(Value a, Value b) {
    Value r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::runtime_error("ring: integer overflow");
    return r;
  }
};

template <class Ring>
struct RingTable {
  const SetFamily* family = nullptr;
  std::vector<typename Ring::Value> values;  // aligned with the member list

  RingTable() = default;
  explicit RingTable(const SetFamily& f)
      : family(&f), values(f.size(), Ring::zero()) {}
};

template <class Ring>
RingTable<Ring> zeta_transform(const RingTable<Ring>& a) {
  RingTable<Ring> out = a;
  zeta_schedule(*a.family, [&](size_t dst, size_t src) {
    out.values[dst] = Ring::add(out.values[dst], out.values[src]);
  });
  return out;
}

// mobius = sigma . zeta . sigma; over characteristic 2 sigma is the identity
template <class Ring>
RingTable<Ring> mobius_transform(const RingTable<Ring>& a) {
  RingTable<Ring> out = a;
  if (!Ring::kCharTwo) {
    for (size_t p = 0; p < out.values.size(); ++p)
      if (__builtin_popcount(a.family->member(p)) & 1) out.values[p] = Ring::neg(out.values[p]);
  }
  zeta_schedule(*a.family, [&](size_t dst, size_t src) {
    out.values[dst] = Ring::add(out.values[dst], out.values[src]);
  });
  if (!Ring::kCharTwo) {
    for (size_t p = 0; p < out.values.size(); ++p)
      if (__builtin_popcount(a.family->member(p)) & 1) out.values[p] = Ring::neg(out.values[p]);
  }
  return out;
}

// (A (x)_c B)(S) = sum over T1 u T2 = S, computed as mobius((zeta A)(zeta B))
template <class Ring>
RingTable<Ring> cover_product(const RingTable<Ring>& a, const RingTable<Ring>& b) {
  if (a.family != b.family &&
      !(a.family && b.family && a.family->members() == b.family->members()))
    throw std::runtime_error("cover_product: family mismatch");
  RingTable<Ring> za = zeta_transform(a);
  RingTable<Ring> zb = zeta_transform(b);
  for (size_t p = 0; p < za.values.size(); ++p)
    za.values[p] = Ring::mul(za.values[p], zb.values[p]);
  return mobius_transform(za);
}

// componentwise cover product of tables over F^[k]; the tables must be
// indexed by the power family's member order
template <class Ring>
RingTable<Ring> componentwise_cover_product(const RingTable<Ring>& a, const RingTable<Ring>& b) {
  if (!a.family->has_product_structure())
    throw std::runtime_error("componentwise_cover_product: table is not over a power family");
  return cover_product(a, b);
}

// debug dump for test goldens: one "<bitstring> <value>" line per member
template <class Ring>
std::string dump_table(const RingTable<Ring>& t) {
  std::string out;
  for (size_t p = 0; p < t.family->size(); ++p) {
    uint32_t m = t.family->member(p);
    for (int b = t.family->universe() - 1; b >= 0; --b) out += ((m >> b) & 1) ? '1' : '0';
    out += ' ';
    out += std::to_string(static_cast<long long>(t.values[p]));
    out += '\n';
  }
  return out;
}

// ---- lattices --------------------------------------------------------------

// Finite lattice whose element order is a linear extension of the partial
// order (so the zeta matrix is unitriangular). The mobius matrix is obtained
// by inverting the zeta matrix at construction, never hard-coded.
class Lattice {
 public:
  // elements 0..size-1, join given extensionally; index 0 must be the bottom
  Lattice(int size, std::vector<std::vector<int>> join_table,
          std::vector<std::string> names = {});

  // the 5-element CDS lattice {0,{F},{L},{R},{F,L,R}} ordered by inclusion
  static const Lattice& cds();

  int size() const { return size_; }
  int bottom() const { return 0; }
  int join(int a, int b) const { return join_[a][b]; }
  bool leq(int a, int b) const { return join_[a][b] == b; }
  const std::vector<int>& irreducibles() const { return irreducibles_; }
  const std::string& name(int a) const { return names_[a]; }
  // unit lower-triangular in the element order
  const std::vector<std::vector<int64_t>>& zeta_matrix() const { return zeta_; }
  const std::vector<std::vector<int64_t>>& mobius_matrix() const { return mobius_; }

 private:
  int size_;
  std::vector<std::vector<int>> join_;
  std::vector<std::string> names_;
  std::vector<int> irreducibles_;
  std::vector<std::vector<int64_t>> zeta_, mobius_;
};

// mixed-radix codes (coordinate i has weight |L|^i) of the join-irreducible
// elements of L^k: the all-bottom tuple plus every one-hot irreducible
std::vector<long> join_irreducibles_of_power(const Lattice& lat, int k);

// applies the unit lower-triangular matrix m along every coordinate of L^k,
// in place, through addmul(dstCode, srcCode, coeff) with coeff != 0
template <class AddMul>
void power_lattice_transform(const Lattice& lat, const std::vector<std::vector<int64_t>>& m,
                             int k, long total, AddMul&& addmul) {
  const int L = lat.size();
  long stride = 1;
  for (int c = 0; c < k; ++c) {
    long block = stride * L;
    for (long outer = 0; outer < total; outer += block) {
      for (long inner = 0; inner < stride; ++inner) {
        long base = outer + inner;
        for (int i = L - 1; i >= 1; --i)
          for (int j = 0; j < i; ++j)
            if (m[i][j] != 0) addmul(base + i * stride, base + j * stride, m[i][j]);
      }
    }
    stride = block;
  }
}

template <class Ring>
struct PowerLatticeTable {
  const Lattice* lattice = nullptr;
  int k = 0;
  std::vector<typename Ring::Value> values;  // |L|^k mixed-radix codes

  PowerLatticeTable() = default;
  PowerLatticeTable(const Lattice& l, int kk) : lattice(&l), k(kk) {
    long total = 1;
    for (int i = 0; i < kk; ++i) total *= l.size();
    values.assign(total, Ring::zero());
  }
};

// (A (x) B)(x) = sum over y v z = x; per-coordinate zeta, pointwise multiply,
// per-coordinate mobius
template <class Ring>
PowerLatticeTable<Ring> vee_product(const PowerLatticeTable<Ring>& a,
                                    const PowerLatticeTable<Ring>& b) {
  if (a.lattice != b.lattice || a.k != b.k)
    throw std::runtime_error("vee_product: lattice or exponent mismatch");
  const Lattice& lat = *a.lattice;
  long total = static_cast<long>(a.values.size());
  PowerLatticeTable<Ring> za = a, zb = b;
  auto apply = [&](PowerLatticeTable<Ring>& t, const std::vector<std::vector<int64_t>>& m) {
    power_lattice_transform(lat, m, a.k, total, [&](long dst, long src, int64_t coeff) {
      typename Ring::Value summand;
      if constexpr (Ring::kCharTwo) {
        if (!(coeff & 1)) return;
        summand = t.values[src];
      } else {
        summand = Ring::mul(t.values[src], static_cast<typename Ring::Value>(coeff));
      }
      t.values[dst] = Ring::add(t.values[dst], summand);
    });
  };
  apply(za, lat.zeta_matrix());
  apply(zb, lat.zeta_matrix());
  for (long x = 0; x < total; ++x) za.values[x] = Ring::mul(za.values[x], zb.values[x]);
  apply(za, lat.mobius_matrix());
  return za;
}

}  // namespace cwc
