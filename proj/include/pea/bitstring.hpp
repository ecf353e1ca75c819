#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "pea/errors.hpp"
#include "pea/rng.hpp"

namespace pea {

// Fixed-length bit vector packed into 64-bit words. Bit i of the string is
// bit (i % 64) of word (i / 64); unused padding bits of the last word are
// kept at zero so word-level scans (popcount, prefix-of-ones) stay exact.
class BitString {
 public:
  BitString() = default;

  explicit BitString(int n) : n_(n), w_(words_for(n), 0) {
    if (n < 1) fail(Err::InvalidSize, "bitstring length must be >= 1");
  }

  static BitString random(int n, Rng& rng) {
    BitString x(n);
    for (auto& w : x.w_) w = rng.next();
    x.mask_tail();
    return x;
  }

  static BitString ones(int n) {
    BitString x(n);
    for (auto& w : x.w_) w = ~0ull;
    x.mask_tail();
    return x;
  }

  // "0101..." with character i giving bit i
  static BitString parse(const std::string& s) {
    if (s.empty()) fail(Err::InvalidSize, "empty bitstring literal");
    BitString x(static_cast<int>(s.size()));
    for (int i = 0; i < x.n_; ++i) {
      if (s[i] == '1')
        x.w_[i >> 6] |= 1ull << (i & 63);
      else if (s[i] != '0')
        fail(Err::BadConfig, "bitstring literal may contain only 0 and 1");
    }
    return x;
  }

  int size() const { return n_; }

  bool bit(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

  void set(int i, bool v) {
    uint64_t m = 1ull << (i & 63);
    if (v)
      w_[i >> 6] |= m;
    else
      w_[i >> 6] &= ~m;
  }

  void flip(int i) { w_[i >> 6] ^= 1ull << (i & 63); }

  int count_ones() const {
    int c = 0;
    for (uint64_t w : w_) c += std::popcount(w);
    return c;
  }

  // length of the all-ones prefix
  int prefix_ones() const {
    int c = 0;
    for (uint64_t w : w_) {
      int t = std::countr_one(w);
      c += t;
      if (t < 64) break;
    }
    return c < n_ ? c : n_;
  }

  bool all_ones() const { return count_ones() == n_; }

  std::string str() const {
    std::string s(n_, '0');
    for (int i = 0; i < n_; ++i)
      if (bit(i)) s[i] = '1';
    return s;
  }

  // genome bits as an integer, bit i of the string = bit i of the result
  // (only valid for n <= 63; used by the exact-chain code on tiny instances)
  uint64_t as_bits() const { return w_[0]; }

  bool operator==(const BitString& o) const = default;

 private:
  static int words_for(int n) { return (n + 63) >> 6; }

  void mask_tail() {
    int r = n_ & 63;
    if (r) w_.back() &= (~0ull) >> (64 - r);
  }

  int n_ = 0;
  std::vector<uint64_t> w_;
};

}  // namespace pea
