#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace pigeon {

// Exact arbitrary-precision rational. boost keeps it reduced with a
// positive denominator, which is the canonical form required everywhere.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline std::string to_string(const Rational& r) {
  return r.str();
}

// Accepts "p" or "p/q", q > 0 after normalization.
inline Rational parse_rational(const std::string& s) {
  try {
    Rational r(s);
    return r;
  } catch (const std::exception&) {
    throw std::runtime_error("bad rational: '" + s + "'");
  }
}

// Prints "num/den" unconditionally; the fixed shape keeps the polynomial
// grammar regular ("<coef-num>/<coef-den>*...").
inline std::string to_fraction_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace pigeon
