#include "bitsel/generate.hpp"

#include <bit>

#include "bitsel/error.hpp"

namespace bitsel {

namespace {

void check_cf(std::span<const uint64_t> cf) {
  if (cf.empty()) throw_invalid("sturmian: continued-fraction coefficient list is empty");
  for (uint64_t a : cf)
    if (a == 0) throw_invalid("sturmian: continued-fraction coefficients must be positive");
}

// Convergent p/q of [0; cf...] (last coefficient repeating) with q > bound.
// For i <= bound the Beatty values floor(i*alpha) and floor(i*p/q) agree:
// |i*alpha - i*p/q| < i/(q*q_next) < 1/q while i*p/q is never an integer and
// sits at distance >= 1/q from one.
void convergent_above(std::span<const uint64_t> cf, uint64_t bound, BigInt& p, BigInt& q) {
  BigInt p_prev = 1, q_prev = 0;  // h_{-1}, k_{-1}
  p = 0;
  q = 1;  // h_0, k_0 for a0 = 0
  size_t idx = 0;
  while (q <= bound) {
    uint64_t a = cf[idx < cf.size() ? idx : cf.size() - 1];
    BigInt pn = BigInt(a) * p + p_prev;
    BigInt qn = BigInt(a) * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = pn;
    q = qn;
    ++idx;
  }
}

}  // namespace

BitString champernowne(uint64_t n) {
  BitString out;
  for (uint64_t v = 1; out.size() < n; ++v) {
    for (int b = std::bit_width(v) - 1; b >= 0 && out.size() < n; --b) out.push_back((v >> b) & 1u);
  }
  return out;
}

BitString sturmian(std::span<const uint64_t> cf, uint64_t n) {
  check_cf(cf);
  if (n == 0) return {};
  BigInt p, q;
  convergent_above(cf, n + 1, p, q);

  BitString out;
  if (p < (BigInt(1) << 62) && q < (BigInt(1) << 62)) {
    // single-word convergent: floor(i*p/q) in 128-bit arithmetic
    uint64_t pu = p.convert_to<uint64_t>(), qu = q.convert_to<uint64_t>();
    uint64_t prev = 0;
    for (uint64_t i = 1; i <= n; ++i) {
      uint64_t cur = static_cast<uint64_t>((static_cast<unsigned __int128>(i + 1) * pu) / qu);
      out.push_back(cur - prev != 0);
      prev = cur;
    }
  } else {
    BigInt prev = 0;
    for (uint64_t i = 1; i <= n; ++i) {
      BigInt cur = (BigInt(i + 1) * p) / q;
      out.push_back(cur - prev != 0);
      prev = cur;
    }
  }
  return out;
}

Rational sturmian_slope(std::span<const uint64_t> cf, uint64_t n) {
  check_cf(cf);
  BigInt p, q;
  convergent_above(cf, n + 1, p, q);
  return Rational(p, q);
}

BitString bernoulli_sample(const Rational& q, uint64_t seed, uint64_t n) {
  if (q < 0 || q > 1) throw_invalid("bernoulli: q must lie in [0,1]");
  if (denominator(q) > (BigInt(1) << 32)) throw_invalid("bernoulli: denominator of q exceeds 2^32");
  BitString out;
  SplitMix64 rng(seed);
  if (q == 1) {
    for (uint64_t i = 0; i < n; ++i) {
      rng.next();
      out.push_back(true);
    }
    return out;
  }
  // threshold = floor(q * 2^64) < 2^64 since q < 1
  unsigned __int128 num = numerator(q).convert_to<uint64_t>();
  uint64_t den = denominator(q).convert_to<uint64_t>();
  uint64_t threshold = static_cast<uint64_t>((num << 64) / den);
  for (uint64_t i = 0; i < n; ++i) out.push_back(rng.next() < threshold);
  return out;
}

BitString periodic(const BitString& pattern, uint64_t n) {
  if (pattern.empty()) throw_invalid("periodic: pattern must be non-empty");
  BitString out;
  for (uint64_t i = 0; i < n; ++i) out.push_back(pattern[i % pattern.size()]);
  return out;
}

GeneratorSpec GeneratorSpec::make_champernowne() {
  GeneratorSpec s;
  s.kind = Kind::champernowne;
  return s;
}

GeneratorSpec GeneratorSpec::make_sturmian(std::vector<uint64_t> cf) {
  check_cf(cf);
  GeneratorSpec s;
  s.kind = Kind::sturmian;
  s.cf = std::move(cf);
  return s;
}

GeneratorSpec GeneratorSpec::make_bernoulli(Rational q, uint64_t seed) {
  if (q < 0 || q > 1) throw_invalid("bernoulli: q must lie in [0,1]");
  GeneratorSpec s;
  s.kind = Kind::bernoulli;
  s.q = std::move(q);
  s.seed = seed;
  return s;
}

GeneratorSpec GeneratorSpec::make_periodic(BitString pattern) {
  if (pattern.empty()) throw_invalid("periodic: pattern must be non-empty");
  GeneratorSpec s;
  s.kind = Kind::periodic;
  s.pattern = std::move(pattern);
  return s;
}

GeneratorSpec GeneratorSpec::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw Error(ErrorKind::parse, "generator spec must be an object with a string 'kind'");
  const std::string kind = j["kind"];
  if (kind == "champernowne") return make_champernowne();
  if (kind == "sturmian") {
    if (!j.contains("cf") || !j["cf"].is_array())
      throw Error(ErrorKind::parse, "sturmian spec needs a 'cf' coefficient array");
    std::vector<uint64_t> cf;
    for (const auto& c : j["cf"]) {
      if (!c.is_number_unsigned() || c.get<uint64_t>() == 0)
        throw Error(ErrorKind::parse, "sturmian coefficients must be positive integers");
      cf.push_back(c.get<uint64_t>());
    }
    return make_sturmian(std::move(cf));
  }
  if (kind == "bernoulli") {
    if (!j.contains("q") || !j["q"].is_string())
      throw Error(ErrorKind::parse, "bernoulli spec needs a rational 'q' string");
    uint64_t seed = j.value("seed", uint64_t{0});
    return make_bernoulli(parse_rational(j["q"].get<std::string>()), seed);
  }
  if (kind == "periodic") {
    if (!j.contains("pattern") || !j["pattern"].is_string())
      throw Error(ErrorKind::parse, "periodic spec needs a 'pattern' bit string");
    return make_periodic(BitString::from_text(j["pattern"].get<std::string>()));
  }
  throw Error(ErrorKind::parse, "unknown generator kind '" + kind + "'");
}

nlohmann::json GeneratorSpec::to_json() const {
  nlohmann::json j;
  switch (kind) {
    case Kind::champernowne:
      j["kind"] = "champernowne";
      break;
    case Kind::sturmian:
      j["kind"] = "sturmian";
      j["cf"] = cf;
      break;
    case Kind::bernoulli:
      j["kind"] = "bernoulli";
      j["q"] = format_rational(q);
      j["seed"] = seed;
      break;
    case Kind::periodic:
      j["kind"] = "periodic";
      j["pattern"] = pattern.to_text();
      break;
  }
  return j;
}

std::string GeneratorSpec::describe() const { return to_json().dump(); }

BitString GeneratorSpec::generate(uint64_t n) const {
  switch (kind) {
    case Kind::champernowne:
      return champernowne(n);
    case Kind::sturmian:
      return sturmian(cf, n);
    case Kind::bernoulli:
      return bernoulli_sample(q, seed, n);
    case Kind::periodic:
      return periodic(pattern, n);
  }
  throw_invalid("unreachable generator kind");
}

}  // namespace bitsel
