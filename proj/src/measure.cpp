#include "bitsel/measure.hpp"

#include <cmath>

#include "bitsel/error.hpp"

namespace bitsel {

namespace {

void check_unit_range(const Rational& p, const char* name) {
  if (p < 0 || p > 1) throw_invalid(std::string(name) + " must lie in [0,1]");
  if (denominator(p) > (BigInt(1) << 32))
    throw_invalid(std::string(name) + ": denominator exceeds 2^32");
}

}  // namespace

Measure Measure::bernoulli(Rational q) {
  check_unit_range(q, "bernoulli q");
  Measure m;
  m.family_ = Family::bernoulli;
  m.p1_ = {q, q, q};
  return m;
}

Measure Measure::markov(Rational p01, Rational p11, Rational initial_p1) {
  check_unit_range(p01, "markov p01");
  check_unit_range(p11, "markov p11");
  check_unit_range(initial_p1, "markov initial_p1");
  Measure m;
  m.family_ = Family::markov;
  m.p1_ = {initial_p1, p01, p11};
  return m;
}

Measure Measure::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::parse, "measure descriptor must be a JSON object");
  if (j.contains("bernoulli")) {
    const auto& b = j["bernoulli"];
    if (!b.is_object() || !b.contains("q") || !b["q"].is_string())
      throw Error(ErrorKind::parse, "bernoulli measure needs {\"q\": \"p/q\"}");
    return bernoulli(parse_rational(b["q"].get<std::string>()));
  }
  if (j.contains("markov")) {
    const auto& m = j["markov"];
    for (const char* key : {"p01", "p11", "init_p1"})
      if (!m.contains(key) || !m[key].is_string())
        throw Error(ErrorKind::parse, std::string("markov measure needs rational '") + key + "'");
    return markov(parse_rational(m["p01"].get<std::string>()),
                  parse_rational(m["p11"].get<std::string>()),
                  parse_rational(m["init_p1"].get<std::string>()));
  }
  throw Error(ErrorKind::parse, "measure descriptor must contain 'bernoulli' or 'markov'");
}

nlohmann::json Measure::to_json() const {
  if (family_ == Family::bernoulli) return {{"bernoulli", {{"q", format_rational(p1_[0])}}}};
  return {{"markov",
           {{"p01", format_rational(p1_[1])},
            {"p11", format_rational(p1_[2])},
            {"init_p1", format_rational(p1_[0])}}}};
}

std::string Measure::describe() const { return to_json().dump(); }

bool Measure::is_uniform() const {
  Rational half(1, 2);
  return p1_[0] == half && p1_[1] == half && p1_[2] == half;
}

Rational Measure::cond_in_state(State st, bool bit) const {
  return bit ? p1_[st] : Rational(1) - p1_[st];
}

Rational Measure::cond(const BitString& prefix, bool bit) const {
  State st = initial_state();
  if (!prefix.empty()) st = next_state(st, prefix[prefix.size() - 1]);
  return cond_in_state(st, bit);
}

Rational Measure::prob(const BitString& s) const {
  Rational p(1);
  State st = initial_state();
  for (uint64_t i = 0; i < s.size(); ++i) {
    bool bit = s[i];
    p *= cond_in_state(st, bit);
    if (p == 0) return p;
    st = next_state(st, bit);
  }
  return p;
}

double Measure::neg_log2_prob(const BitString& s) const {
  // Per-(state,bit) -log2 terms; integer contributions are split out so
  // dyadic conditionals (e.g. the uniform measure) accumulate exactly.
  double frac[3][2];
  int64_t whole[3][2];
  bool zero[3][2];
  for (State st = 0; st < 3; ++st) {
    for (int bit = 0; bit < 2; ++bit) {
      Rational c = cond_in_state(st, bit != 0);
      zero[st][bit] = (c == 0);
      whole[st][bit] = 0;
      frac[st][bit] = 0.0;
      if (c == 0) continue;
      BigInt num = numerator(c), den = denominator(c);
      if (num == 1 && (den & (den - 1)) == 0) {
        whole[st][bit] = static_cast<int64_t>(msb(den));  // -log2(1/2^k) = k
      } else {
        frac[st][bit] =
            std::log2(den.convert_to<long double>()) - std::log2(num.convert_to<long double>());
      }
    }
  }

  int64_t bits_whole = 0;
  double bits_frac = 0.0, kahan = 0.0;
  State st = initial_state();
  for (uint64_t i = 0; i < s.size(); ++i) {
    bool bit = s[i];
    if (zero[st][bit])
      throw NoInformationError(i + 1, "string has probability zero under the measure (position " +
                                          std::to_string(i + 1) + ")");
    bits_whole += whole[st][bit];
    double term = frac[st][bit] - kahan;
    double sum = bits_frac + term;
    kahan = (sum - bits_frac) - term;
    bits_frac = sum;
    st = next_state(st, bit);
  }
  return static_cast<double>(bits_whole) + bits_frac;
}

QuantizedModel Measure::quantize() const {
  QuantizedModel qm;
  for (State st = 0; st < 3; ++st) {
    const Rational& p = p1_[st];
    uint64_t c;
    if (p == 0) {
      c = 0;
    } else if (p == 1) {
      c = QuantizedModel::kOne;
    } else {
      // round(p * 2^32), clamped into (0, 2^32) so quantization never
      // destroys support
      unsigned __int128 num = numerator(p).convert_to<uint64_t>();
      uint64_t den = denominator(p).convert_to<uint64_t>();
      uint64_t rounded = static_cast<uint64_t>(((num << 33) + den) / (2 * static_cast<unsigned __int128>(den)));
      c = std::min<uint64_t>(std::max<uint64_t>(rounded, 1), QuantizedModel::kOne - 1);
    }
    qm.cond1[st] = c;
    qm.next[st][0] = 1;
    qm.next[st][1] = 2;
  }
  return qm;
}

}  // namespace bitsel
