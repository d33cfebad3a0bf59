#include "bitsel/bits.hpp"

#include <bit>
#include <cctype>

#include "bitsel/error.hpp"

#if defined(__x86_64__)
#include <immintrin.h>
#endif

namespace bitsel {

namespace {

inline uint64_t tail_mask(uint64_t len) {
  unsigned rem = len & 63;
  return rem == 0 ? ~0ull : ((1ull << rem) - 1);
}

#if defined(__x86_64__)
__attribute__((target("bmi2"))) uint64_t pext_word(uint64_t x, uint64_t m) { return _pext_u64(x, m); }
__attribute__((target("bmi2"))) uint64_t pdep_word(uint64_t x, uint64_t m) { return _pdep_u64(x, m); }

bool cpu_has_bmi2() {
  static const bool has = __builtin_cpu_supports("bmi2");
  return has;
}
#else
bool cpu_has_bmi2() { return false; }
uint64_t pext_word(uint64_t, uint64_t) { return 0; }
uint64_t pdep_word(uint64_t, uint64_t) { return 0; }
#endif

uint64_t pext_scalar(uint64_t x, uint64_t m) {
  uint64_t out = 0;
  unsigned k = 0;
  while (m) {
    uint64_t low = m & -m;
    if (x & low) out |= 1ull << k;
    ++k;
    m &= m - 1;
  }
  return out;
}

uint64_t pdep_scalar(uint64_t x, uint64_t m) {
  uint64_t out = 0;
  unsigned k = 0;
  while (m) {
    uint64_t low = m & -m;
    if ((x >> k) & 1u) out |= low;
    ++k;
    m &= m - 1;
  }
  return out;
}

// Reads consecutive low-bit-first chunks out of a BitString.
struct BitCursor {
  std::span<const uint64_t> words;
  uint64_t pos = 0;

  uint64_t take(unsigned count) {
    if (count == 0) return 0;
    size_t wi = pos >> 6;
    unsigned off = pos & 63;
    uint64_t v = words[wi] >> off;
    if (off + count > 64 && wi + 1 < words.size()) v |= words[wi + 1] << (64 - off);
    pos += count;
    if (count < 64) v &= (1ull << count) - 1;
    return v;
  }
};

}  // namespace

BitString BitString::zeros(uint64_t n) {
  BitString s;
  s.words_.assign((n + 63) >> 6, 0);
  s.len_ = n;
  return s;
}

BitString BitString::from_text(std::string_view text) {
  BitString s;
  s.reserve_bits(text.size());
  for (char c : text) {
    if (c == '0' || c == '1')
      s.push_back(c == '1');
    else if (!std::isspace(static_cast<unsigned char>(c)))
      throw Error(ErrorKind::parse, std::string("invalid character in bit text: '") + c + "'");
  }
  return s;
}

BitString BitString::from_packed(std::span<const uint8_t> bytes, uint64_t nbits) {
  if (bytes.size() < (nbits + 7) / 8) throw_invalid("packed buffer shorter than declared bit length");
  BitString s = zeros(nbits);
  for (uint64_t i = 0; i < nbits; ++i) {
    uint8_t byte = bytes[i >> 3];
    bool bit = (byte >> (7 - (i & 7))) & 1u;
    if (bit) s.words_[i >> 6] |= 1ull << (i & 63);
  }
  return s;
}

bool BitString::at(uint64_t i) const {
  if (i >= len_) throw_invalid("bit index out of range");
  return (*this)[i];
}

void BitString::set(uint64_t i, bool v) {
  if (i >= len_) throw_invalid("bit index out of range");
  uint64_t bit = 1ull << (i & 63);
  if (v)
    words_[i >> 6] |= bit;
  else
    words_[i >> 6] &= ~bit;
}

void BitString::push_back(bool bit) {
  if ((len_ & 63) == 0) words_.push_back(0);
  if (bit) words_.back() |= 1ull << (len_ & 63);
  ++len_;
}

void BitString::append_low_bits(uint64_t value, unsigned count) {
  if (count == 0) return;
  if (count < 64) value &= (1ull << count) - 1;
  unsigned off = len_ & 63;
  if (off == 0) {
    words_.push_back(value);
  } else {
    words_.back() |= value << off;
    if (off + count > 64) words_.push_back(value >> (64 - off));
  }
  len_ += count;
}

void BitString::append(const BitString& other) {
  uint64_t n = other.len_;
  for (uint64_t done = 0; done < n; done += 64) {
    unsigned chunk = static_cast<unsigned>(std::min<uint64_t>(64, n - done));
    BitCursor cur{other.words_, done};
    append_low_bits(cur.take(chunk), chunk);
  }
}

void BitString::assign_word(uint64_t value, unsigned count) {
  words_.resize(count == 0 ? 0 : 1);
  len_ = count;
  if (count) words_[0] = count < 64 ? (value & ((1ull << count) - 1)) : value;
}

uint64_t BitString::popcount() const noexcept {
  uint64_t total = 0;
  for (uint64_t w : words_) total += static_cast<uint64_t>(std::popcount(w));
  return total;
}

void BitString::flip() noexcept {
  for (uint64_t& w : words_) w = ~w;
  if (!words_.empty()) words_.back() &= tail_mask(len_);
}

BitString BitString::prefix(uint64_t n) const {
  if (n > len_) throw_invalid("prefix longer than string");
  BitString s;
  s.words_.assign(words_.begin(), words_.begin() + ((n + 63) >> 6));
  s.len_ = n;
  if (!s.words_.empty()) s.words_.back() &= tail_mask(n);
  return s;
}

std::string BitString::to_text() const {
  std::string out(len_, '0');
  for (uint64_t i = 0; i < len_; ++i)
    if ((*this)[i]) out[i] = '1';
  return out;
}

std::vector<uint8_t> BitString::to_packed() const {
  std::vector<uint8_t> out((len_ + 7) / 8, 0);
  for (uint64_t i = 0; i < len_; ++i)
    if ((*this)[i]) out[i >> 3] |= uint8_t(1u << (7 - (i & 7)));
  return out;
}

void select_into(const BitString& x, const BitString& y, BitString& out) {
  if (x.size() != y.size())
    throw_invalid("select: length mismatch (|x|=" + std::to_string(x.size()) +
                  ", |y|=" + std::to_string(y.size()) + ")");
  out.clear();
  const size_t nw = y.words().size();
  const bool fast = cpu_has_bmi2();
  for (size_t wi = 0; wi < nw; ++wi) {
    uint64_t yw = y.word(wi);
    if (yw == 0) continue;
    uint64_t xw = x.word(wi);
    uint64_t sel = fast ? pext_word(xw, yw) : pext_scalar(xw, yw);
    out.append_low_bits(sel, static_cast<unsigned>(std::popcount(yw)));
  }
}

BitString select(const BitString& x, const BitString& y) {
  BitString out;
  select_into(x, y, out);
  return out;
}

BitString complement(const BitString& y) {
  BitString out = y;
  out.flip();
  return out;
}

void merge_into(const BitString& a, const BitString& b, const BitString& y, BitString& out) {
  uint64_t ones = y.popcount();
  if (a.size() != ones || b.size() != y.size() - ones)
    throw_invalid("merge: length mismatch (|a|=" + std::to_string(a.size()) +
                  ", |b|=" + std::to_string(b.size()) + ", |y|=" + std::to_string(y.size()) +
                  ", popcount(y)=" + std::to_string(ones) + ")");
  out.clear();
  BitCursor ca{a.words(), 0}, cb{b.words(), 0};
  const bool fast = cpu_has_bmi2();
  uint64_t remaining = y.size();
  for (size_t wi = 0; wi < y.words().size(); ++wi) {
    unsigned width = static_cast<unsigned>(std::min<uint64_t>(64, remaining));
    uint64_t yw = y.word(wi);
    uint64_t nw = (width < 64 ? ((1ull << width) - 1) : ~0ull) & ~yw;
    unsigned k1 = static_cast<unsigned>(std::popcount(yw));
    unsigned k0 = width - k1;
    uint64_t av = ca.take(k1), bv = cb.take(k0);
    uint64_t w = fast ? (pdep_word(av, yw) | pdep_word(bv, nw)) : (pdep_scalar(av, yw) | pdep_scalar(bv, nw));
    out.append_low_bits(w, width);
    remaining -= width;
  }
}

BitString merge(const BitString& a, const BitString& b, const BitString& y) {
  BitString out;
  merge_into(a, b, y, out);
  return out;
}

std::vector<uint64_t> tau_indices(const BitString& y) {
  std::vector<uint64_t> tau;
  tau.reserve(y.popcount());
  for (size_t wi = 0; wi < y.words().size(); ++wi) {
    uint64_t w = y.word(wi);
    while (w) {
      tau.push_back((uint64_t(wi) << 6) + static_cast<uint64_t>(std::countr_zero(w)) + 1);
      w &= w - 1;
    }
  }
  return tau;
}

Rational ones_density(const BitString& y, uint64_t n) {
  if (n == 0 || n > y.size())
    throw_invalid("ones_density: n must satisfy 1 <= n <= |y| (n=" + std::to_string(n) +
                  ", |y|=" + std::to_string(y.size()) + ")");
  return Rational(y.prefix(n).popcount(), n);
}

}  // namespace bitsel
