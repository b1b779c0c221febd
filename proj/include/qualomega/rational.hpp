#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "qualomega/errors.hpp"

namespace qualomega {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rat(long long num, long long den = 1) {
  if (den == 0) throw Error("DivisionByZero", "rational with zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

/// "0", "1", "3/8" — integers without slash, everything else num/den in
/// lowest terms. This is the exact-string form used in all document formats.
inline std::string format_rational(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    const BigInt num(text.substr(0, slash));
    const BigInt den(text.substr(slash + 1));
    if (den == 0) throw Error("Parse", "zero denominator in '" + text + "'");
    return Rational(num, den);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error("Parse", "not a rational: '" + text + "'");
  }
}

/// True iff r = c / 2^e for naturals c, e (Def-4-style dyadic probability).
inline bool is_dyadic(const Rational& r) {
  BigInt den = boost::multiprecision::denominator(r);
  // canonical form: den >= 1 and coprime with the numerator
  return den == (BigInt(1) << boost::multiprecision::lsb(den));
}

/// Minimal e with r = c / 2^e. Requires is_dyadic(r).
inline unsigned dyadic_exponent(const Rational& r) {
  if (!is_dyadic(r)) throw Error("NotDyadic", format_rational(r) + " is not dyadic");
  const BigInt den = boost::multiprecision::denominator(r);
  return boost::multiprecision::lsb(den);
}

}  // namespace qualomega
