#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bitsel/bits.hpp"
#include "bitsel/measure.hpp"
#include "bitsel/rational.hpp"

namespace bitsel {

// Finite-scale estimators. None of these compute Kolmogorov complexity
// (which is uncomputable); the LZ78 rate and block entropies measure
// finite-state compressibility, and computable-but-normal inputs such as
// the Champernowne word deliberately read as incompressible here.

/// Sliding-window counts of every k-block of x; windows = |x| - k + 1.
struct EmpiricalBlockMeasure {
  unsigned k = 0;
  uint64_t windows = 0;
  /// (block value with first bit most significant, count), sorted by block;
  /// only blocks that occur are listed and counts sum to windows.
  std::vector<std::pair<uint64_t, uint64_t>> counts;

  double frequency(uint64_t block) const;
};

/// Requires 1 <= k <= min(|x|, 63).
EmpiricalBlockMeasure block_frequencies(const BitString& x, unsigned k);

/// max over 1 <= k <= k_max and over all 2^k blocks s of |freq(s) - 2^-k|;
/// blocks that never occur contribute 2^-k. Requires k_max <= min(|x|, 25).
double normality_deviation(const BitString& x, unsigned k_max);

/// (1/k) * H(empirical k-block distribution) in bits, in [0, 1].
double plugin_entropy_rate(const BitString& x, unsigned k);

/// Number of distinct k-blocks occurring in x.
uint64_t distinct_blocks(const BitString& x, unsigned k);

struct Lz78Result {
  double rate = 0.0;      // phrases * (ceil(log2(phrases+1)) + 1) / |x|
  uint64_t phrases = 0;   // final partial phrase counts as one
};

/// LZ78 incremental-parse code length per source bit. Values slightly above
/// 1 occur at small n (phrase-index overhead) and are reported as-is.
Lz78Result lz78_rate(const BitString& x);

/// One parse entry: phrase = phrases[prefix_index] + bit (prefix_index 0 is
/// the empty phrase). `complete` is false only for a final repeated phrase.
struct Lz78Phrase {
  uint64_t prefix_index;
  bool bit;
  bool complete;
};
std::vector<Lz78Phrase> lz78_parse(const BitString& x);

struct ConditionalTestResult {
  Rational min_cond;   // min over i of cond(y_1..i, y_{i+1})
  int64_t level = -1;  // largest m >= 0 with min_cond < 2^-m; -1 if none
};

/// Level of the deepest conditional-probability test set the trajectory of
/// y enters under m: U_m = { s : cond(s_1..|s|-1, s_|s|) < 2^-m }.
ConditionalTestResult conditional_test_level(const Measure& m, const BitString& y);

struct BernoulliEstimate {
  Rational q_hat;  // popcount / |x|, exact
  double ci_lo = 0.0, ci_hi = 0.0;  // q_hat -+ 3*sqrt(q_hat(1-q_hat)/|x|)
};

BernoulliEstimate estimate_bernoulli_q(const BitString& x);

struct AnalyzeOptions {
  unsigned k_max = 3;
  /// Empty = default schedule k in {1, ..., floor(log2 n / 2)} capped at 12.
  std::vector<unsigned> entropy_ks;
  bool estimate_q = false;
};

/// Bundle of estimator outputs for one string.
struct ComplexityReport {
  uint64_t n = 0;
  std::vector<std::pair<unsigned, double>> normality_dev;   // per k
  std::vector<std::pair<unsigned, double>> plugin_entropy;  // per k
  double lz78 = 0.0;
  uint64_t lz78_phrases = 0;
  std::optional<ConditionalTestResult> conditional_test;
  std::optional<BernoulliEstimate> q_hat;
  std::vector<std::string> notes;
};

ComplexityReport analyze(const BitString& x, const AnalyzeOptions& opt,
                         const Measure* measure = nullptr);

/// Assemble the report JSON schema around a ComplexityReport.
nlohmann::json report_json(const ComplexityReport& rep, const std::string& source,
                           const std::string& payload_sha256_hex);

}  // namespace bitsel
