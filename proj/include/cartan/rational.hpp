#pragma once

// Exact arbitrary-precision integers and rationals shared by every module.
// Ball scans multiply long chains of angles, so fixed-width arithmetic is
// never used for scalar values; overflow is structurally impossible here.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace cartan {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Domain error: a precondition of an operation was violated.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Configuration error: malformed or inconsistent workbench input.
/// The CLI maps this to its own exit code, distinct from verdict failures.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

inline BigInt floor_div(const BigInt& num, const BigInt& den) {
  // den > 0 expected; cpp_int division truncates toward zero.
  BigInt q = num / den;
  if (num % den != 0 && num < 0) --q;
  return q;
}

/// r - floor(r): canonical representative of r mod 1 in [0, 1).
inline Rational frac_mod_one(const Rational& r) {
  BigInt fl = floor_div(numerator(r), denominator(r));
  return r - Rational(fl);
}

/// Strict "p" / "-p" / "p/q" parser (no whitespace, q > 0 after sign fold).
inline Rational parse_rational(const std::string& s) {
  auto bad = [&]() -> Error { return Error("malformed rational: \"" + s + "\""); };
  if (s.empty()) throw bad();
  std::size_t slash = s.find('/');
  auto parse_int = [&](const std::string& part) {
    if (part.empty() || part == "-" || part == "+") throw bad();
    std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    for (std::size_t i = start; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') throw bad();
    return BigInt(part);
  };
  if (slash == std::string::npos) return Rational(parse_int(s));
  BigInt num = parse_int(s.substr(0, slash));
  BigInt den = parse_int(s.substr(slash + 1));
  if (den == 0) throw Error("zero denominator in rational: \"" + s + "\"");
  return Rational(num, den);
}

/// Lowest-terms "p/q" (always with an explicit denominator; "0/1" for zero).
inline std::string rational_str(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

/// Lowest-terms "p" or "p/q" (denominator elided when 1); for human output.
inline std::string rational_str_short(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return rational_str(r);
}

}  // namespace cartan
