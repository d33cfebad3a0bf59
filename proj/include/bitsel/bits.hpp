#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bitsel/rational.hpp"

namespace bitsel {

/// Finite packed binary word. Bit i (0-based) lives at words()[i/64] >> (i%64);
/// all bits beyond size() in the last word are kept zero.
class BitString {
 public:
  BitString() = default;

  static BitString zeros(uint64_t n);
  /// Parse '0'/'1' characters; whitespace is ignored; anything else rejects.
  static BitString from_text(std::string_view text);
  /// Unpack `nbits` from bytes laid out MSB-first within each byte.
  static BitString from_packed(std::span<const uint8_t> bytes, uint64_t nbits);

  uint64_t size() const noexcept { return len_; }
  bool empty() const noexcept { return len_ == 0; }

  bool operator[](uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  bool at(uint64_t i) const;
  void set(uint64_t i, bool v);

  void clear() noexcept {
    words_.clear();
    len_ = 0;
  }
  void push_back(bool bit);
  /// Append the low `count` bits of `value`, lowest bit first.
  void append_low_bits(uint64_t value, unsigned count);
  void append(const BitString& other);
  /// Reset to the low `count` bits of `value` without shrinking capacity.
  void assign_word(uint64_t value, unsigned count);

  uint64_t popcount() const noexcept;
  /// Flip every bit in place.
  void flip() noexcept;
  BitString prefix(uint64_t n) const;

  std::string to_text() const;
  /// Pack MSB-first within each byte; final partial byte zero-padded.
  std::vector<uint8_t> to_packed() const;

  std::span<const uint64_t> words() const noexcept { return words_; }
  uint64_t word(size_t wi) const noexcept { return words_[wi]; }

  bool operator==(const BitString& o) const noexcept { return len_ == o.len_ && words_ == o.words_; }
  bool operator!=(const BitString& o) const noexcept { return !(*this == o); }

 private:
  void reserve_bits(uint64_t nbits) { words_.reserve((nbits + 63) >> 6); }

  std::vector<uint64_t> words_;
  uint64_t len_ = 0;
};

// --- selection algebra -------------------------------------------------
//
// y acts as a selection rule: select(x, y) keeps x at the 1-positions of y.
// merge is the exact inverse given both halves. All positions reported to
// callers (tau indices, error messages) are 1-based.

/// x and y must have equal length; returns x restricted to y's 1-positions.
BitString select(const BitString& x, const BitString& y);
void select_into(const BitString& x, const BitString& y, BitString& out);

BitString complement(const BitString& y);

/// Unique x with select(x,y)=a and select(x,complement(y))=b.
/// Requires |a| = popcount(y) and |b| = |y| - popcount(y).
BitString merge(const BitString& a, const BitString& b, const BitString& y);
void merge_into(const BitString& a, const BitString& b, const BitString& y, BitString& out);

/// Strictly increasing 1-based positions of the 1-bits of y.
std::vector<uint64_t> tau_indices(const BitString& y);

/// Exact prefix density (sum of the first n bits) / n; requires 1 <= n <= |y|.
Rational ones_density(const BitString& y, uint64_t n);

/// A BitString in the role of a selection rule, with its 1-count cached.
class SelectionMask {
 public:
  explicit SelectionMask(BitString mask) : mask_(std::move(mask)), ones_(mask_.popcount()) {}

  const BitString& mask() const noexcept { return mask_; }
  uint64_t ones() const noexcept { return ones_; }
  uint64_t size() const noexcept { return mask_.size(); }

  SelectionMask complement() const { return SelectionMask(bitsel::complement(mask_)); }
  std::vector<uint64_t> tau() const { return tau_indices(mask_); }
  Rational density(uint64_t n) const { return ones_density(mask_, n); }

 private:
  BitString mask_;
  uint64_t ones_;
};

inline BitString select(const BitString& x, const SelectionMask& y) { return select(x, y.mask()); }
inline BitString merge(const BitString& a, const BitString& b, const SelectionMask& y) {
  return merge(a, b, y.mask());
}

}  // namespace bitsel
