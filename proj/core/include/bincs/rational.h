#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace bincs {

// Exact arbitrary-precision rational. Closed-form bounds and correlation
// values are kept in this type until a floating-point value is needed.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(std::int64_t num, std::int64_t den) {
  return Rational(BigInt(num), BigInt(den));
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& r);

}  // namespace bincs
