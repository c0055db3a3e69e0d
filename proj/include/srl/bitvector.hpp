#pragma once

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace srl {

/// Fixed-width bitset backed by 64-bit words. Trailing bits of the last
/// word are kept zero, so counts and comparisons operate word-wise.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n, bool value = false)
      : n_(n), words_((n + 63) / 64, value ? ~std::uint64_t{0} : 0) {
    trim();
  }

  std::size_t size() const { return n_; }
  std::size_t word_count() const { return words_.size(); }
  const std::vector<std::uint64_t>& words() const { return words_; }

  bool test(std::size_t i) const {
    assert(i < n_);
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i) {
    assert(i < n_);
    words_[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
  void reset(std::size_t i) {
    assert(i < n_);
    words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }
  void assign_bit(std::size_t i, bool v) { v ? set(i) : reset(i); }

  std::size_t count() const {
    std::size_t c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
  }
  bool none() const {
    for (std::uint64_t w : words_)
      if (w) return false;
    return true;
  }

  BitVector& operator&=(const BitVector& o) {
    assert(n_ == o.n_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  BitVector& operator|=(const BitVector& o) {
    assert(n_ == o.n_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  /// this &= ~o
  BitVector& and_not(const BitVector& o) {
    assert(n_ == o.n_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  void flip_all() {
    for (auto& w : words_) w = ~w;
    trim();
  }
  void clear_all() {
    for (auto& w : words_) w = 0;
  }

  /// this = a & ~b, resizing to match a.
  void assign_and_not(const BitVector& a, const BitVector& b) {
    assert(a.n_ == b.n_);
    n_ = a.n_;
    words_.resize(a.words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i)
      words_[i] = a.words_[i] & ~b.words_[i];
  }
  void assign_and(const BitVector& a, const BitVector& b) {
    assert(a.n_ == b.n_);
    n_ = a.n_;
    words_.resize(a.words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i)
      words_[i] = a.words_[i] & b.words_[i];
  }

  static std::size_t count_and(const BitVector& a, const BitVector& b) {
    assert(a.n_ == b.n_);
    std::size_t c = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i)
      c += std::popcount(a.words_[i] & b.words_[i]);
    return c;
  }
  static std::size_t count_and_not(const BitVector& a, const BitVector& b) {
    assert(a.n_ == b.n_);
    std::size_t c = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i)
      c += std::popcount(a.words_[i] & ~b.words_[i]);
    return c;
  }
  static std::size_t count_xor(const BitVector& a, const BitVector& b) {
    assert(a.n_ == b.n_);
    std::size_t c = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i)
      c += std::popcount(a.words_[i] ^ b.words_[i]);
    return c;
  }

  bool operator==(const BitVector& o) const {
    return n_ == o.n_ && words_ == o.words_;
  }

  /// FNV-1a over the words; used to bucket equal-capture siblings.
  std::uint64_t hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint64_t w : words_) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return h;
  }

 private:
  void trim() {
    if (n_ & 63) words_.back() &= (std::uint64_t{1} << (n_ & 63)) - 1;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace srl
