#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "bitsel/bits.hpp"
#include "bitsel/measure.hpp"

namespace bitsel {

/// Arithmetic code of a source string under a Measure, together with the
/// decode-progress trace l_1 <= ... <= l_n: l_i is the code length budgeted
/// for the first i source symbols (encoder emission point plus the <= 2-bit
/// termination margin, capped at the final code length, so l_n = |code|).
/// Bounds guaranteed for every input: l_i <= ceil(-log2 prob_Q(y_1..i)) + 2
/// and l_{i+1} - l_i <= ceil(-log2 cond_Q(y_{i+1})) + 2, where prob_Q is the
/// quantized-conditional measure of QuantizedModel.
struct CodeStream {
  BitString code;
  uint64_t source_length = 0;
  nlohmann::json measure_descriptor;
  std::vector<uint64_t> length_trace;

  double info_bits = 0.0;                  // -log2 prob(y) under the exact measure
  double quantization_penalty_bits = 0.0;  // -log2 prob_Q(y) minus info_bits

  uint64_t max_trace_increment() const;
  nlohmann::json sidecar_json() const;
};

/// Encode y under M. |code| <= ceil(-log2 prob_Q(M, y)) + 2. The emitted
/// tail is the minimal 0..2 bits making every extension of the code decode
/// to y as a prefix. Throws NoInformationError (with 1-based position) on a
/// zero-probability symbol.
CodeStream arith_encode(const Measure& m, const BitString& y);

/// Monotone decoder: returns the first n source symbols determined by
/// `code`, committing a symbol only when every extension of the given bits
/// agrees on it. Feeding a prefix of a longer code yields a prefix of the
/// longer result. Throws TruncatedCodeError (carrying the number of symbols
/// recovered) if the code bits run out before n symbols are determined.
BitString arith_decode(const Measure& m, const BitString& code, uint64_t n);

struct ReconstructResult {
  BitString selected;           // select(z', y_1..n)
  uint64_t code_length = 0;     // |code| before padding/truncation
  uint64_t padded_bits = 0;     // zeros appended to reach n
  uint64_t truncated_bits = 0;  // code bits dropped beyond n
};

/// The "code selected along the source" object: deterministically recompute
/// z = encode(m, y).code, zero-pad or truncate it to mask_len, and select it
/// through the mask y_1..mask_len. Requires mask_len <= |y|.
ReconstructResult reconstruct_selected(const Measure& m, const BitString& y, uint64_t mask_len);
inline ReconstructResult reconstruct_selected(const Measure& m, const BitString& y) {
  return reconstruct_selected(m, y, y.size());
}

}  // namespace bitsel
