#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "cwc/convolution.hpp"
#include "cwc/rng.hpp"

using namespace cwc;

namespace {

// random closure difference over a small universe, never empty
SetFamily random_closure_difference(int u, SplitMix64& rng) {
  for (;;) {
    std::vector<uint32_t> fplus, fminus;
    int np = 1 + static_cast<int>(rng.below(3));
    int nm = static_cast<int>(rng.below(3));
    for (int i = 0; i < np; ++i) fplus.push_back(static_cast<uint32_t>(rng.below(1u << u)));
    for (int i = 0; i < nm; ++i) fminus.push_back(static_cast<uint32_t>(rng.below(1u << u)));
    SetFamily f = SetFamily::closure_difference(u, fplus, fminus);
    if (f.size() > 0) return f;
  }
}

template <class Ring>
RingTable<Ring> random_table(const SetFamily& f, SplitMix64& rng, int64_t valrange) {
  RingTable<Ring> t(f);
  for (auto& v : t.values)
    v = static_cast<typename Ring::Value>(rng.below(valrange));
  return t;
}

// naive zeta/cover for cross-checking
template <class Ring>
RingTable<Ring> naive_zeta(const RingTable<Ring>& a) {
  RingTable<Ring> out(*a.family);
  for (size_t s = 0; s < a.family->size(); ++s)
    for (size_t t = 0; t < a.family->size(); ++t)
      if ((a.family->member(t) & ~a.family->member(s)) == 0)
        out.values[s] = Ring::add(out.values[s], a.values[t]);
  return out;
}

template <class Ring>
RingTable<Ring> naive_cover(const RingTable<Ring>& a, const RingTable<Ring>& b) {
  RingTable<Ring> out(*a.family);
  for (size_t t1 = 0; t1 < a.family->size(); ++t1)
    for (size_t t2 = 0; t2 < a.family->size(); ++t2) {
      long p = a.family->position(a.family->member(t1) | a.family->member(t2));
      if (p >= 0)
        out.values[p] =
            Ring::add(out.values[p], Ring::mul(a.values[t1], b.values[t2]));
    }
  return out;
}

}  // namespace

TEST_CASE("interval property") {
  // all nonempty proper subsets of a 3-set
  CHECK(check_interval_property(SetFamily::cvc_states()));
  // hole at {a}
  SetFamily holed = SetFamily::from_members(2, {0, 3});
  CHECK_FALSE(check_interval_property(holed));
  CHECK_FALSE(holed.is_closure_difference());
  // upward closures are closure differences with empty negative part
  SplitMix64 rng(1);
  for (int i = 0; i < 20; ++i) {
    std::vector<uint32_t> gen = {static_cast<uint32_t>(rng.below(64)),
                                 static_cast<uint32_t>(rng.below(64))};
    CHECK(check_interval_property(SetFamily::closure_difference(6, gen, {})));
  }
}

TEST_CASE("zeta transform against the naive double loop") {
  SplitMix64 rng(2);
  // indicator of a single minimal set maps to the indicator of its supersets
  {
    SetFamily f = SetFamily::cvc_states();
    RingTable<Gf2Ring> a(f);
    a.values[f.position(2)] = 1;  // {1_L}
    RingTable<Gf2Ring> z = zeta_transform(a);
    for (size_t s = 0; s < f.size(); ++s)
      CHECK(z.values[s] == ((f.member(s) & 2) == 2 ? 1 : 0));
  }
  {
    SetFamily f = SetFamily::cvc_states();
    RingTable<Int64Ring> zero(f);
    RingTable<Int64Ring> z = zeta_transform(zero);
    for (auto v : z.values) CHECK(v == 0);
  }
  for (int iter = 0; iter < 60; ++iter) {
    SetFamily f = random_closure_difference(6, rng);
    RingTable<Int64Ring> a = random_table<Int64Ring>(f, rng, 100);
    RingTable<Int64Ring> z = zeta_transform(a);
    RingTable<Int64Ring> nz = naive_zeta(a);
    CHECK(z.values == nz.values);
    RingTable<Gf2Ring> ag = random_table<Gf2Ring>(f, rng, 2);
    CHECK(zeta_transform(ag).values == naive_zeta(ag).values);
  }
  // not a closure difference -> error
  SetFamily holed = SetFamily::from_members(2, {0, 3});
  RingTable<Gf2Ring> t(holed);
  CHECK_THROWS_WITH_AS(zeta_transform(t), doctest::Contains("closure difference"),
                       std::runtime_error);
}

TEST_CASE("mobius inverts zeta on closure differences") {
  SplitMix64 rng(3);
  for (int iter = 0; iter < 100; ++iter) {
    int u = 2 + static_cast<int>(rng.below(7));  // universe <= 8
    SetFamily f = random_closure_difference(u, rng);
    RingTable<Int64Ring> a = random_table<Int64Ring>(f, rng, 1000);
    CHECK(mobius_transform(zeta_transform(a)).values == a.values);
    CHECK(zeta_transform(mobius_transform(a)).values == a.values);
    RingTable<Gf2Ring> g = random_table<Gf2Ring>(f, rng, 2);
    CHECK(mobius_transform(zeta_transform(g)).values == g.values);
    // over GF(2) the odd-negation is the identity, so mobius == zeta
    CHECK(mobius_transform(g).values == zeta_transform(g).values);
  }
}

TEST_CASE("cover product") {
  SplitMix64 rng(4);
  // over F = all subsets of {a}, the empty-set delta is a unit
  {
    SetFamily f = SetFamily::closure_difference(1, {0}, {});
    REQUIRE(f.size() == 2);
    RingTable<Gf2Ring> a = random_table<Gf2Ring>(f, rng, 2);
    RingTable<Gf2Ring> delta(f);
    delta.values[f.position(0)] = 1;
    CHECK(cover_product(a, delta).values == a.values);
  }
  // delta x delta
  {
    SetFamily f = SetFamily::cvc_states();
    RingTable<Gf2Ring> d(f);
    d.values[3] = 1;  // some state
    RingTable<Gf2Ring> p = cover_product(d, d);
    for (size_t s = 0; s < f.size(); ++s) CHECK(p.values[s] == (s == 3 ? 1 : 0));
  }
  for (int iter = 0; iter < 60; ++iter) {
    SetFamily f = random_closure_difference(6, rng);
    RingTable<Int64Ring> a = random_table<Int64Ring>(f, rng, 30);
    RingTable<Int64Ring> b = random_table<Int64Ring>(f, rng, 30);
    CHECK(cover_product(a, b).values == naive_cover(a, b).values);
    // zeta is multiplicative over the cover product
    RingTable<Int64Ring> za = zeta_transform(a);
    RingTable<Int64Ring> zb = zeta_transform(b);
    RingTable<Int64Ring> zp = zeta_transform(cover_product(a, b));
    for (size_t s = 0; s < f.size(); ++s)
      CHECK(zp.values[s] == za.values[s] * zb.values[s]);
  }
}

TEST_CASE("power families") {
  SetFamily f = SetFamily::cvc_states();
  SetFamily f1 = SetFamily::power(f, 1);
  CHECK(f1.size() == f.size());
  for (size_t i = 0; i < f.size(); ++i) CHECK(f1.member(i) == f.member(i));
  SetFamily f2 = SetFamily::power(f, 2);
  CHECK(f2.size() == 36);
  CHECK(check_interval_property(f2));
  CHECK(std::is_sorted(f2.members().begin(), f2.members().end()));
  for (size_t p = 0; p < f2.size(); ++p) CHECK(f2.position(f2.member(p)) == static_cast<long>(p));
  SetFamily f3 = SetFamily::power(f, 3);
  CHECK(f3.size() == 216);
  CHECK_THROWS(SetFamily::power(f, 10));  // universe guard
}

TEST_CASE("ring op count scales as |F| * |U|") {
  SetFamily f2 = SetFamily::power(SetFamily::cvc_states(), 2);
  SetFamily f3 = SetFamily::power(SetFamily::cvc_states(), 3);
  SetFamily f4 = SetFamily::power(SetFamily::cvc_states(), 4);
  long c2 = zeta_op_count(f2), c3 = zeta_op_count(f3), c4 = zeta_op_count(f4);
  CHECK(c2 <= 36 * 6);
  CHECK(c3 <= 216 * 9);
  CHECK(c4 <= 1296 * 12);
  // growth tracks |F|*u: ratio about 6 * 3/2 and 6 * 4/3
  CHECK(c3 > c2);
  CHECK(c4 > c3);
  CHECK(static_cast<double>(c4) / c3 <= 9.0);
}

TEST_CASE("cover product rejects family mismatch") {
  SetFamily f1 = SetFamily::cvc_states();
  SetFamily f2 = SetFamily::from_members(3, {1, 2, 4});
  RingTable<Gf2Ring> a(f1), b(f2);
  CHECK_THROWS_WITH_AS(cover_product(a, b), doctest::Contains("family mismatch"),
                       std::runtime_error);
}

TEST_CASE("table dump format") {
  SetFamily f = SetFamily::from_members(2, {1, 2, 3});
  RingTable<Int64Ring> t(f);
  t.values = {5, 0, -2};
  CHECK(dump_table(t) == "01 5\n10 0\n11 -2\n");
}

TEST_CASE("integer ring overflow is an error") {
  SetFamily f = SetFamily::cvc_states();
  RingTable<Int64Ring> a(f);
  for (auto& v : a.values) v = int64_t(1) << 62;
  CHECK_THROWS_WITH_AS(zeta_transform(a), doctest::Contains("overflow"), std::runtime_error);
}

TEST_CASE("cds lattice") {
  const Lattice& lat = Lattice::cds();
  CHECK(lat.size() == 5);
  CHECK(lat.bottom() == 0);
  // join-irreducibles: bottom and the three atoms
  CHECK(lat.irreducibles() == std::vector<int>{0, 1, 2, 3});
  // zeta and mobius matrices are mutually inverse and unitriangular
  const auto& z = lat.zeta_matrix();
  const auto& m = lat.mobius_matrix();
  for (int i = 0; i < 5; ++i) {
    CHECK(z[i][i] == 1);
    CHECK(m[i][i] == 1);
    for (int j = i + 1; j < 5; ++j) {
      CHECK(z[i][j] == 0);
      CHECK(m[i][j] == 0);
    }
  }
  // the mobius value of the bottom-to-top interval is 2 (vanishes mod 2)
  CHECK(m[4][0] == 2);
  // the least-upper-bound hinge, exhaustively on powers up to k = 3
  for (int k = 1; k <= 3; ++k) {
    long total = 1;
    for (int i = 0; i < k; ++i) total *= 5;
    auto joinc = [&](long a, long b) {
      long out = 0, w = 1;
      for (int i = 0; i < k; ++i) {
        out += w * lat.join(static_cast<int>(a % 5), static_cast<int>(b % 5));
        w *= 5;
        a /= 5;
        b /= 5;
      }
      return out;
    };
    auto leqc = [&](long a, long b) { return joinc(a, b) == b; };
    for (long x = 0; x < total; ++x)
      for (long y = 0; y < total; ++y)
        for (long zc = 0; zc < total; ++zc)
          CHECK(leqc(joinc(y, zc), x) == (leqc(y, x) && leqc(zc, x)));
  }
}

TEST_CASE("join irreducibles of power lattices") {
  const Lattice& lat = Lattice::cds();
  for (int k = 1; k <= 4; ++k) {
    auto irr = join_irreducibles_of_power(lat, k);
    CHECK(static_cast<int>(irr.size()) == 1 + k * 3);  // 1 + k(|L_v| - 1)
    if (k <= 3) {
      // brute-force irreducibility over all join decompositions
      long total = 1;
      for (int i = 0; i < k; ++i) total *= 5;
      auto joinc = [&](long a, long b) {
        long out = 0, w = 1;
        for (int i = 0; i < k; ++i) {
          out += w * lat.join(static_cast<int>(a % 5), static_cast<int>(b % 5));
          w *= 5;
          a /= 5;
          b /= 5;
        }
        return out;
      };
      std::vector<long> brute;
      for (long x = 0; x < total; ++x) {
        bool reducible = false;
        for (long a = 0; a < total && !reducible; ++a)
          for (long b = 0; b < total && !reducible; ++b)
            if (joinc(a, b) == x && a != x && b != x) reducible = true;
        if (!reducible) brute.push_back(x);
      }
      CHECK(brute == irr);
    }
  }
  CHECK(join_irreducibles_of_power(lat, 1) ==
        std::vector<long>(lat.irreducibles().begin(), lat.irreducibles().end()));
}

TEST_CASE("vee product") {
  const Lattice& lat = Lattice::cds();
  SplitMix64 rng(5);
  // bottom delta is the unit
  for (int k = 1; k <= 3; ++k) {
    PowerLatticeTable<Gf2Ring> a(lat, k);
    for (auto& v : a.values) v = static_cast<uint8_t>(rng.below(2));
    PowerLatticeTable<Gf2Ring> delta(lat, k);
    delta.values[0] = 1;
    CHECK(vee_product(a, delta).values == a.values);
  }
  // delta x delta lands on the join
  {
    PowerLatticeTable<Gf2Ring> a(lat, 2), b(lat, 2);
    long x = 1 + 5 * 2;  // (F, L)
    long y = 2 + 5 * 0;  // (L, 0)
    a.values[x] = 1;
    b.values[y] = 1;
    auto p = vee_product(a, b);
    long expect = lat.join(1, 2) + 5 * lat.join(2, 0);  // (2+, L)
    for (long i = 0; i < static_cast<long>(p.values.size()); ++i)
      CHECK(p.values[i] == (i == expect ? 1 : 0));
  }
  // integer ring agrees with direct summation
  {
    PowerLatticeTable<Int64Ring> a(lat, 2), b(lat, 2);
    for (auto& v : a.values) v = static_cast<int64_t>(rng.below(5));
    for (auto& v : b.values) v = static_cast<int64_t>(rng.below(5));
    auto p = vee_product(a, b);
    for (long x = 0; x < 25; ++x) {
      int64_t want = 0;
      for (long y = 0; y < 25; ++y)
        for (long z = 0; z < 25; ++z) {
          long j = lat.join(static_cast<int>(y % 5), static_cast<int>(z % 5)) +
                   5 * lat.join(static_cast<int>(y / 5), static_cast<int>(z / 5));
          if (j == x) want += a.values[y] * b.values[z];
        }
      CHECK(p.values[x] == want);
    }
  }
  CHECK_THROWS(vee_product(PowerLatticeTable<Gf2Ring>(lat, 1), PowerLatticeTable<Gf2Ring>(lat, 2)));
}
