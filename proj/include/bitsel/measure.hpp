#pragma once

#include <array>
#include <cstdint>

#include <json.hpp>

#include "bitsel/bits.hpp"
#include "bitsel/rational.hpp"

namespace bitsel {

/// Conditional next-bit table quantized to dyadics with denominator 2^32.
/// The coder runs entirely on this table; states are 0 = start, 1 = last
/// bit was 0, 2 = last bit was 1 (Bernoulli measures never leave state 0).
struct QuantizedModel {
  static constexpr uint64_t kOne = 1ull << 32;

  std::array<uint64_t, 3> cond1{};          // P(next=1 | state) * 2^32, in [0, 2^32]
  std::array<std::array<uint8_t, 2>, 3> next{};

  uint64_t cond(uint8_t state, bool bit) const { return bit ? cond1[state] : kOne - cond1[state]; }
};

/// Computable probability on binary strings, given by exact rational
/// conditional next-bit probabilities. Shipped families: Bernoulli(q) and
/// a two-state Markov chain; parameter denominators are capped at 2^32 so
/// products over long strings stay within budget.
class Measure {
 public:
  enum class Family { bernoulli, markov };

  /// cond(., 1) = q independent of the prefix.
  static Measure bernoulli(Rational q);
  /// cond depends on the last bit of the prefix only; initial_p1 is the
  /// probability of 1 on the empty prefix.
  static Measure markov(Rational p01, Rational p11, Rational initial_p1);

  static Measure from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  std::string describe() const;

  Family family() const noexcept { return family_; }
  bool is_uniform() const;  // Bernoulli(1/2)

  /// Exact conditional probability of `bit` after `prefix`.
  Rational cond(const BitString& prefix, bool bit) const;

  /// Exact product of conditionals; prob(empty) = 1. Intended for short
  /// strings (the numerator grows with |s|); long strings use
  /// neg_log2_prob instead.
  Rational prob(const BitString& s) const;

  /// -log2 prob(s) in bits, absolute error <= 2^-20 at n <= 10^7.
  /// Throws NoInformationError if some conditional is zero along s.
  double neg_log2_prob(const BitString& s) const;

  // streaming evaluation
  using State = uint8_t;
  State initial_state() const { return 0; }
  State next_state(State st, bool bit) const { return bit ? 2 : 1; }
  /// Exact conditional in a state; states as in QuantizedModel.
  Rational cond_in_state(State st, bool bit) const;

  QuantizedModel quantize() const;

 private:
  Measure() = default;

  Family family_ = Family::bernoulli;
  // state-indexed P(next=1): [start, after-0, after-1]
  std::array<Rational, 3> p1_;
};

}  // namespace bitsel
