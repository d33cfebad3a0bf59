#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "bitsel/bits.hpp"
#include "bitsel/rational.hpp"

namespace bitsel {

/// Reference PRNG pinned for reproducibility of every seeded sequence.
/// state <- state + 0x9E3779B97F4A7C15; z <- mix(state); see next().
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
};

/// First n bits of the concatenated binary numerals of 1,2,3,...
/// (no separators, no leading zeros).
BitString champernowne(uint64_t n);

/// Characteristic word of slope alpha = [0; cf[0], cf[1], ...]: bit i is
/// floor((i+1)*alpha) - floor(i*alpha), evaluated exactly from a convergent
/// with denominator exceeding n+1. A finite coefficient list repeats its
/// last entry forever, so the slope is always irrational.
BitString sturmian(std::span<const uint64_t> cf, uint64_t n);

/// Exact slope of the sturmian spec as a convergent ratio accurate to ~1/d^2
/// with d > n+1; good enough for density bookkeeping at prefix length n.
Rational sturmian_slope(std::span<const uint64_t> cf, uint64_t n);

/// bit i = 1 iff next64 < floor(q * 2^64) on the SplitMix64 stream.
BitString bernoulli_sample(const Rational& q, uint64_t seed, uint64_t n);

/// pattern repeated and truncated to n bits.
BitString periodic(const BitString& pattern, uint64_t n);

/// Serializable description of a deterministic sequence source.
struct GeneratorSpec {
  enum class Kind { champernowne, sturmian, bernoulli, periodic };

  Kind kind = Kind::champernowne;
  std::vector<uint64_t> cf;  // sturmian
  Rational q;                // bernoulli, denominator <= 2^32
  uint64_t seed = 0;         // bernoulli
  BitString pattern;         // periodic

  static GeneratorSpec make_champernowne();
  static GeneratorSpec make_sturmian(std::vector<uint64_t> cf);
  static GeneratorSpec make_bernoulli(Rational q, uint64_t seed);
  static GeneratorSpec make_periodic(BitString pattern);

  static GeneratorSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  std::string describe() const;

  BitString generate(uint64_t n) const;
};

}  // namespace bitsel
