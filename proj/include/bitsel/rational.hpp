#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "bitsel/error.hpp"

namespace bitsel {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Rationals cross every serialization boundary as "p/q" (or a bare integer)
// so configs never see float drift.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& r);

inline Rational make_rational(int64_t num, int64_t den) {
  if (den == 0) throw_invalid("rational with zero denominator");
  return Rational(num, den);
}

// Convenience: exact double conversion for report output.
double to_double(const Rational& r);

}  // namespace bitsel
