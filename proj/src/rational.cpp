#include "bitsel/rational.hpp"

#include <boost/multiprecision/number.hpp>

namespace bitsel {

Rational parse_rational(std::string_view text) {
  auto bad = [&] {
    throw Error(ErrorKind::parse, "invalid rational '" + std::string(text) + "' (expected p or p/q)");
  };
  if (text.empty()) bad();
  size_t slash = text.find('/');
  try {
    if (slash == std::string_view::npos) return Rational(BigInt(std::string(text)));
    BigInt num(std::string(text.substr(0, slash)));
    BigInt den(std::string(text.substr(slash + 1)));
    if (den == 0) bad();
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    bad();
  }
  return {};
}

std::string format_rational(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace bitsel
