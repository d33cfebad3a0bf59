#include "bitsel/coder.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "bitsel/error.hpp"

namespace bitsel {

namespace {

// 62-bit interval registers: products range * cond fit in 94 bits, and
// low + range stays below 2^63.
constexpr int kRangeBits = 62;
constexpr uint64_t kFull = 1ull << kRangeBits;
constexpr uint64_t kHalf = kFull >> 1;

inline uint64_t split_of(uint64_t range, uint64_t cond0) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(range) * cond0) >> 32);
}

// Propagate +1 into the already-emitted code bits (binary increment from
// the end). Cannot overflow past the front while the interval stays in [0,1).
void propagate_carry(BitString& code) {
  uint64_t i = code.size();
  while (i > 0 && code[i - 1]) {
    code.set(i - 1, false);
    --i;
  }
  assert(i > 0 && "carry out of the leading code bit");
  code.set(i - 1, true);
}

[[noreturn]] void throw_zero_prob(uint64_t position) {
  throw NoInformationError(position, "zero-probability symbol at position " +
                                         std::to_string(position) + "; string is outside the "
                                         "measure's support");
}

double quantized_info_bits(const QuantizedModel& qm, const Measure& m, const BitString& y) {
  double table[3][2];
  for (int st = 0; st < 3; ++st)
    for (int bit = 0; bit < 2; ++bit) {
      uint64_t c = qm.cond(static_cast<uint8_t>(st), bit != 0);
      table[st][bit] = c == 0 ? 0.0 : 32.0 - std::log2(static_cast<double>(c));
    }
  double sum = 0.0, comp = 0.0;
  Measure::State st = m.initial_state();
  for (uint64_t i = 0; i < y.size(); ++i) {
    bool bit = y[i];
    double term = table[st][bit] - comp;
    double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
    st = m.next_state(st, bit);
  }
  return sum;
}

}  // namespace

uint64_t CodeStream::max_trace_increment() const {
  uint64_t best = 0, prev = 0;
  for (uint64_t l : length_trace) {
    best = std::max(best, l - prev);
    prev = l;
  }
  return best;
}

nlohmann::json CodeStream::sidecar_json() const {
  nlohmann::json trace;
  trace["l_n"] = length_trace.empty() ? 0 : length_trace.back();
  trace["max_increment"] = max_trace_increment();
  uint64_t n = source_length;
  uint64_t stride = std::max<uint64_t>(1, n / 64);
  trace["stride"] = stride;
  nlohmann::json samples = nlohmann::json::array();
  for (uint64_t i = stride; i <= n; i += stride) samples.push_back(length_trace[i - 1]);
  trace["samples"] = std::move(samples);

  return nlohmann::json{{"measure", measure_descriptor},
                        {"source_length", source_length},
                        {"code_length", code.size()},
                        {"info_bits", info_bits},
                        {"quantization_penalty_bits", quantization_penalty_bits},
                        {"length_trace", std::move(trace)}};
}

CodeStream arith_encode(const Measure& m, const BitString& y) {
  const QuantizedModel qm = m.quantize();
  const uint64_t n = y.size();

  CodeStream out;
  out.source_length = n;
  out.measure_descriptor = m.to_json();
  out.length_trace.resize(n);

  BitString& code = out.code;
  std::vector<uint64_t>& emitted_at = out.length_trace;  // raw emission points first

  uint64_t low = 0, range = kFull;
  uint8_t st = 0;
  for (uint64_t i = 0; i < n; ++i) {
    const bool bit = y[i];
    const uint64_t split = split_of(range, QuantizedModel::kOne - qm.cond1[st]);
    if (!bit) {
      if (split == 0) throw_zero_prob(i + 1);
      range = split;
    } else {
      if (split == range) throw_zero_prob(i + 1);
      low += split;
      if (low >= kFull) {
        propagate_carry(code);
        low -= kFull;
      }
      range -= split;
    }
    while (range <= kHalf) {
      code.push_back((low >> (kRangeBits - 1)) & 1u);
      low = (low << 1) & (kFull - 1);
      range <<= 1;
    }
    emitted_at[i] = code.size();
    st = qm.next[st][bit];
  }

  // Minimal tail: the shortest dyadic block [a*2^-t, (a+1)*2^-t) inside the
  // final interval, so any extension of the code decodes y as a prefix.
  // range > kHalf guarantees t <= 2.
  const uint64_t top = low + range;
  bool terminated = false;
  for (unsigned t = 0; t <= 2 && !terminated; ++t) {
    const unsigned shift = kRangeBits - t;
    uint64_t a = (low + ((1ull << shift) - 1)) >> shift;
    if ((a << shift) + (1ull << shift) > top) continue;
    if (a >> t) {
      propagate_carry(code);
      a -= 1ull << t;
    }
    for (unsigned b = t; b-- > 0;) code.push_back((a >> b) & 1u);
    terminated = true;
  }
  assert(terminated && "final interval narrower than a quarter register");

  const uint64_t code_len = code.size();
  for (uint64_t i = 0; i < n; ++i) emitted_at[i] = std::min(emitted_at[i] + 2, code_len);

  out.info_bits = m.neg_log2_prob(y);
  out.quantization_penalty_bits = quantized_info_bits(qm, m, y) - out.info_bits;
  return out;
}

BitString arith_decode(const Measure& m, const BitString& code, uint64_t n) {
  const QuantizedModel qm = m.quantize();
  const uint64_t len = code.size();

  // offset = (code point - interval base), carry-free; pad counts window
  // bits not yet backed by real code bits, so [offset, offset + 2^pad) is
  // the set of code points compatible with what was read.
  uint64_t offset = 0;
  uint64_t consumed = 0;
  unsigned pad = 0;
  for (int k = 0; k < kRangeBits; ++k) {
    offset <<= 1;
    if (consumed < len)
      offset |= code[consumed++];
    else
      ++pad;
  }

  BitString y;
  uint64_t range = kFull;
  uint8_t st = 0;
  for (uint64_t i = 0; i < n; ++i) {
    const uint64_t split = split_of(range, QuantizedModel::kOne - qm.cond1[st]);
    const uint64_t width = pad >= kRangeBits ? kFull : (1ull << pad);
    bool bit;
    if (offset >= split) {
      bit = true;
      offset -= split;
      range -= split;
    } else if (offset + width <= split) {
      bit = false;
      range = split;
    } else {
      throw TruncatedCodeError(i, "code exhausted after " + std::to_string(i) + " of " +
                                      std::to_string(n) + " symbols");
    }
    y.push_back(bit);
    st = qm.next[st][bit];
    while (range <= kHalf) {
      range <<= 1;
      offset <<= 1;
      if (consumed < len)
        offset |= code[consumed++];
      else if (pad < kRangeBits)
        ++pad;
    }
  }
  return y;
}

ReconstructResult reconstruct_selected(const Measure& m, const BitString& y, uint64_t mask_len) {
  if (mask_len > y.size())
    throw_invalid("reconstruct_selected: mask_len exceeds |y| (" + std::to_string(mask_len) +
                  " > " + std::to_string(y.size()) + ")");
  CodeStream cs = arith_encode(m, y);

  ReconstructResult r;
  r.code_length = cs.code.size();
  BitString z = std::move(cs.code);
  if (z.size() > mask_len) {
    r.truncated_bits = z.size() - mask_len;
    z = z.prefix(mask_len);
  } else {
    r.padded_bits = mask_len - z.size();
    while (z.size() < mask_len) z.push_back(false);
  }
  r.selected = select(z, y.prefix(mask_len));
  return r;
}

}  // namespace bitsel
