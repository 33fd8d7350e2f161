#include "cwc/convolution.hpp"

#include <algorithm>
#include <bit>

#include "cwc/rng.hpp"

namespace cwc {

SetFamily SetFamily::from_members(int universe, std::vector<uint32_t> members) {
  if (universe < 0 || universe > kMaxUniverse)
    throw std::runtime_error("set family: universe size " + std::to_string(universe) +
                             " out of [0, " + std::to_string(kMaxUniverse) + "]");
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  uint32_t full = universe == 32 ? ~0u : (1u << universe) - 1;
  for (uint32_t m : members)
    if (m & ~full) throw std::runtime_error("set family: member outside universe");
  SetFamily f;
  f.universe_ = universe;
  f.members_ = std::move(members);
  return f;
}

SetFamily SetFamily::closure_difference(int universe, const std::vector<uint32_t>& fplus,
                                        const std::vector<uint32_t>& fminus) {
  if (universe > 22)
    throw std::runtime_error("set family: closure-difference materialization capped at 22 bits");
  std::vector<uint32_t> members;
  for (uint32_t s = 0; s < (1u << universe); ++s) {
    bool above = false;
    for (uint32_t t : fplus)
      if ((t & ~s) == 0) {
        above = true;
        break;
      }
    if (!above) continue;
    bool excluded = false;
    for (uint32_t t : fminus)
      if ((t & ~s) == 0) {
        excluded = true;
        break;
      }
    if (!excluded) members.push_back(s);
  }
  SetFamily f = from_members(universe, std::move(members));
  f.closure_state_ = 1;
  return f;
}

SetFamily SetFamily::cvc_states() {
  SetFamily f = from_members(3, {1, 2, 3, 4, 5, 6});
  f.closure_state_ = 1;  // up({singletons}) minus up({full set})
  return f;
}

SetFamily SetFamily::power(const SetFamily& base, int k) {
  if (k < 1) throw std::runtime_error("set family: power exponent must be >= 1");
  int ub = base.universe();
  if (ub * k > kMaxUniverse)
    throw std::runtime_error("set family: power universe " + std::to_string(ub * k) +
                             " exceeds guard " + std::to_string(kMaxUniverse));
  size_t total = 1;
  for (int i = 0; i < k; ++i) total *= base.size();
  SetFamily f;
  f.universe_ = ub * k;
  f.members_.resize(total);
  // mixed-radix enumeration; block i sits at bits [i*ub, (i+1)*ub), so
  // ascending codes give ascending masks
  std::vector<size_t> digit(k, 0);
  for (size_t code = 0; code < total; ++code) {
    uint32_t mask = 0;
    size_t c = code;
    for (int i = 0; i < k; ++i) {
      mask |= base.member(c % base.size()) << (i * ub);
      c /= base.size();
    }
    f.members_[code] = mask;
  }
  f.is_power_ = true;
  f.block_bits_ = ub;
  f.blocks_ = k;
  f.base_size_ = base.size();
  f.base_pos_.assign(size_t(1) << ub, -1);
  for (size_t p = 0; p < base.size(); ++p) f.base_pos_[base.member(p)] = static_cast<int32_t>(p);
  f.closure_state_ = base.is_closure_difference() ? 1 : -1;
  return f;
}

long SetFamily::position(uint32_t mask) const {
  if (blocks_ > 1) {
    long pos = 0;
    long weight = 1;
    uint32_t bmask = (1u << block_bits_) - 1;
    for (int i = 0; i < blocks_; ++i) {
      int32_t p = base_pos_[(mask >> (i * block_bits_)) & bmask];
      if (p < 0) return -1;
      pos += weight * p;
      weight *= static_cast<long>(base_size_);
    }
    return pos;
  }
  auto it = std::lower_bound(members_.begin(), members_.end(), mask);
  if (it == members_.end() || *it != mask) return -1;
  return it - members_.begin();
}

bool SetFamily::is_closure_difference() const {
  if (closure_state_ < 0) closure_state_ = check_interval_property(*this) ? 1 : 0;
  return closure_state_ == 1;
}

bool check_interval_property(const SetFamily& f) {
  int u = f.universe();
  if (u <= 20) {
    size_t total = size_t(1) << u;
    std::vector<char> in(total, 0), below(total, 0), above(total, 0);
    for (uint32_t m : f.members()) in[m] = 1;
    for (size_t t = 0; t < total; ++t) {
      below[t] = in[t];
      if (!below[t])
        for (int x = 0; x < u; ++x)
          if (t & (1u << x) && below[t ^ (1u << x)]) {
            below[t] = 1;
            break;
          }
    }
    for (size_t t = total; t-- > 0;) {
      above[t] = in[t];
      if (!above[t])
        for (int x = 0; x < u; ++x)
          if (!(t & (1u << x)) && above[t | (1u << x)]) {
            above[t] = 1;
            break;
          }
    }
    for (size_t t = 0; t < total; ++t)
      if (!in[t] && below[t] && above[t]) return false;
    return true;
  }
  // sampled check: random member pairs W subset S, random T between
  if (f.size() == 0) return true;
  SplitMix64 rng(0x1f7a3c5d9e2b4680ULL ^ (uint64_t(u) << 32) ^ f.size());
  for (int iter = 0; iter < 20000; ++iter) {
    uint32_t w = f.member(rng.below(f.size()));
    uint32_t s = f.member(rng.below(f.size()));
    if ((w & ~s) != 0) continue;
    uint32_t diff = s & ~w;
    uint32_t t = w | (static_cast<uint32_t>(rng.next()) & diff);
    if (f.position(t) < 0) return false;
  }
  return true;
}

namespace {

std::vector<std::vector<int64_t>> invert_unitriangular(
    const std::vector<std::vector<int64_t>>& z) {
  int n = static_cast<int>(z.size());
  std::vector<std::vector<int64_t>> m(n, std::vector<int64_t>(n, 0));
  for (int c = 0; c < n; ++c) {
    for (int i = 0; i < n; ++i) {
      int64_t rhs = (i == c) ? 1 : 0;
      for (int j = 0; j < i; ++j) rhs -= z[i][j] * m[j][c];
      m[i][c] = rhs;  // z[i][i] == 1
    }
  }
  return m;
}

}  // namespace

Lattice::Lattice(int size, std::vector<std::vector<int>> join_table,
                 std::vector<std::string> names)
    : size_(size), join_(std::move(join_table)), names_(std::move(names)) {
  if (size_ < 1) throw std::runtime_error("lattice: empty");
  if (names_.empty()) {
    for (int i = 0; i < size_; ++i) names_.push_back("e" + std::to_string(i));
  }
  auto fail = [](const std::string& m) { throw std::runtime_error("lattice: " + m); };
  for (int a = 0; a < size_; ++a) {
    if (join_[0][a] != a || join_[a][0] != a) fail("index 0 is not the bottom element");
    if (join_[a][a] != a) fail("join not idempotent");
    for (int b = 0; b < size_; ++b) {
      if (join_[a][b] != join_[b][a]) fail("join not commutative");
      for (int c = 0; c < size_; ++c)
        if (join_[join_[a][b]][c] != join_[a][join_[b][c]]) fail("join not associative");
    }
  }
  // the element order must be a linear extension so zeta is unitriangular
  for (int a = 0; a < size_; ++a)
    for (int b = 0; b < a; ++b)
      if (leq(a, b)) fail("element order is not a linear extension");
  for (int x = 0; x < size_; ++x) {
    bool reducible = false;
    for (int a = 0; a < size_ && !reducible; ++a)
      for (int b = 0; b < size_ && !reducible; ++b)
        if (join_[a][b] == x && a != x && b != x) reducible = true;
    if (!reducible) irreducibles_.push_back(x);
  }
  zeta_.assign(size_, std::vector<int64_t>(size_, 0));
  for (int i = 0; i < size_; ++i)
    for (int j = 0; j < size_; ++j)
      if (leq(j, i)) zeta_[i][j] = 1;
  mobius_ = invert_unitriangular(zeta_);
  // sanity: zeta * mobius == identity
  for (int i = 0; i < size_; ++i)
    for (int j = 0; j < size_; ++j) {
      int64_t s = 0;
      for (int l = 0; l < size_; ++l) s += zeta_[i][l] * mobius_[l][j];
      if (s != (i == j ? 1 : 0)) fail("mobius matrix is not the zeta inverse");
    }
}

const Lattice& Lattice::cds() {
  static const Lattice instance = [] {
    // elements as subsets of {F,L,R}: 0, {F}, {L}, {R}, {F,L,R}; any union of
    // two or more distinct atoms collapses to the top
    const uint32_t mask[5] = {0, 1, 2, 4, 7};
    auto index_of = [&](uint32_t m) {
      if (std::popcount(m) >= 2) m = 7;
      for (int i = 0; i < 5; ++i)
        if (mask[i] == m) return i;
      throw std::runtime_error("lattice: bad mask");
    };
    std::vector<std::vector<int>> join(5, std::vector<int>(5));
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b) join[a][b] = index_of(mask[a] | mask[b]);
    return Lattice(5, std::move(join), {"0", "F", "L", "R", "2+"});
  }();
  return instance;
}

std::vector<long> join_irreducibles_of_power(const Lattice& lat, int k) {
  std::vector<long> out = {0};  // the all-bottom tuple
  long weight = 1;
  for (int c = 0; c < k; ++c) {
    for (int x : lat.irreducibles())
      if (x != lat.bottom()) out.push_back(weight * x);
    weight *= lat.size();
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cwc
