#pragma once

#include <cstdint>
#include <cstring>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cwc/convolution.hpp"
#include "cwc/graph.hpp"
#include "cwc/transform.hpp"

namespace cwc {

// GF(2) DP table of one expression node: signature (mixed radix over the
// node's live labels) x cost row x weight bit. Rows are 64-bit packed along
// the weight axis; bits past wmax in the last word stay zero.
class DpTable {
 public:
  DpTable() = default;
  DpTable(long nsig, int64_t cmax, int64_t wmax)
      : nsig_(nsig), cmax_(cmax), wmax_(wmax), rwords_((wmax + 64) / 64) {
    bits_.assign(static_cast<size_t>(nsig) * stride(), 0);
  }

  long nsig() const { return nsig_; }
  int64_t cmax() const { return cmax_; }
  int64_t wmax() const { return wmax_; }
  int64_t row_words() const { return rwords_; }
  size_t stride() const { return static_cast<size_t>(cmax_ + 1) * rwords_; }
  size_t bit_count() const { return bits_.size() * 64; }

  uint64_t* sig(long s) { return bits_.data() + static_cast<size_t>(s) * stride(); }
  const uint64_t* sig(long s) const { return bits_.data() + static_cast<size_t>(s) * stride(); }

  void set(long s, int64_t c, int64_t w) {
    sig(s)[c * rwords_ + w / 64] ^= 1ULL << (w % 64);
  }
  bool test(long s, int64_t c, int64_t w) const {
    return (sig(s)[c * rwords_ + w / 64] >> (w % 64)) & 1;
  }

  void clear_slice(long s) { std::memset(sig(s), 0, stride() * 8); }

  bool slice_any(long s) const {
    const uint64_t* p = sig(s);
    for (size_t i = 0; i < stride(); ++i)
      if (p[i]) return true;
    return false;
  }

  // smallest c with a set bit at cost <= climit (any weight), -1 if none
  int64_t min_cost(long s, int64_t climit) const {
    const uint64_t* p = sig(s);
    int64_t top = std::min(climit, cmax_);
    for (int64_t c = 0; c <= top; ++c)
      for (int64_t i = 0; i < rwords_; ++i)
        if (p[c * rwords_ + i]) return c;
    return -1;
  }

  // this[ds] ^= src[ss]; src dims must not exceed ours
  void xor_slice(long ds, const DpTable& src, long ss) {
    uint64_t* d = sig(ds);
    const uint64_t* s = src.sig(ss);
    if (cmax_ == src.cmax_ && rwords_ == src.rwords_) {
      for (size_t i = 0; i < src.stride(); ++i) d[i] ^= s[i];
      return;
    }
    for (int64_t c = 0; c <= src.cmax_; ++c)
      for (int64_t i = 0; i < src.rwords_; ++i) d[c * rwords_ + i] ^= s[c * src.rwords_ + i];
  }

  // in-table slice xor (same dims)
  void xor_slice_inplace(long ds, long ss) {
    uint64_t* d = sig(ds);
    const uint64_t* s = sig(ss);
    for (size_t i = 0; i < stride(); ++i) d[i] ^= s[i];
  }

  // this[ds] ^= a[as] (*) b[bs], the carry-less 2D convolution over
  // (cost, weight); needs cmax >= a.cmax+b.cmax and wmax >= a.wmax+b.wmax
  void conv_add_slice(long ds, const DpTable& a, long as, const DpTable& b, long bs);

 private:
  long nsig_ = 0;
  int64_t cmax_ = 0, wmax_ = 0, rwords_ = 1;
  std::vector<uint64_t> bits_;
};

// dst ^= src << shift, rows as raw words
inline void xor_shifted_row(uint64_t* dst, int64_t dst_words, const uint64_t* src,
                            int64_t src_words, int64_t shift) {
  int64_t word = shift / 64;
  int bit = static_cast<int>(shift % 64);
  if (bit == 0) {
    for (int64_t i = 0; i < src_words && i + word < dst_words; ++i) dst[i + word] ^= src[i];
    return;
  }
  for (int64_t i = 0; i < src_words; ++i) {
    if (i + word < dst_words) dst[i + word] ^= src[i] << bit;
    if (i + word + 1 < dst_words) dst[i + word + 1] ^= src[i] >> (64 - bit);
  }
}

inline void DpTable::conv_add_slice(long ds, const DpTable& a, long as, const DpTable& b,
                                    long bs) {
  // drive the loop from the operand with the smaller support
  const DpTable* sp = &a;
  const DpTable* dn = &b;
  long ssig = as, dsig = bs;
  if ((a.cmax_ + 1) * (a.wmax_ + 1) > (b.cmax_ + 1) * (b.wmax_ + 1)) {
    sp = &b;
    dn = &a;
    ssig = bs;
    dsig = as;
  }
  const uint64_t* sbits = sp->sig(ssig);
  const uint64_t* dbits = dn->sig(dsig);
  uint64_t* out = sig(ds);
  for (int64_t c1 = 0; c1 <= sp->cmax_; ++c1) {
    for (int64_t i = 0; i < sp->rwords_; ++i) {
      uint64_t word = sbits[c1 * sp->rwords_ + i];
      while (word) {
        int64_t w1 = i * 64 + __builtin_ctzll(word);
        word &= word - 1;
        for (int64_t c2 = 0; c2 <= dn->cmax_; ++c2)
          xor_shifted_row(out + (c1 + c2) * rwords_, rwords_, dbits + c2 * dn->rwords_,
                          dn->rwords_, w1);
      }
    }
  }
}

// result of a count-part run
struct CountPart {
  DpTable root;                          // single empty signature at the root
  std::vector<DpTable> tables;           // per node, when kept
};

struct DpLimits {
  int64_t mem_cap_bits = int64_t(1) << 33;  // 1 GiB of table bits
};

}  // namespace cwc
