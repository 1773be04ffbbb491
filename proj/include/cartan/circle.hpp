#pragma once

// The circle group T with exact rational angles: the value group of all
// cocycle evaluations, character values and twist scalars.

#include <string>
#include <utility>

#include "cartan/rational.hpp"

namespace cartan {

/// A point e^{2*pi*i*num/den} of T, stored as the angle num/den in [0, 1).
/// cpp_rational keeps num/den in lowest terms, so equal points compare equal.
/// The group is written multiplicatively but the angle arithmetic is additive;
/// the identity is the angle 0/1.
class CircleElement {
 public:
  CircleElement() = default;  // identity
  static CircleElement from_angle(const Rational& r) {
    CircleElement e;
    e.a_ = frac_mod_one(r);
    return e;
  }

  const Rational& angle() const { return a_; }
  BigInt num() const { return numerator(a_); }
  BigInt den() const { return denominator(a_); }
  bool is_identity() const { return a_ == 0; }

  friend bool operator==(const CircleElement& x, const CircleElement& y) {
    return x.a_ == y.a_;
  }
  friend bool operator!=(const CircleElement& x, const CircleElement& y) {
    return !(x == y);
  }

  /// Canonical "p/q" form, e.g. "0/1", "1/2", "5/6".
  std::string str() const { return rational_str(a_); }

 private:
  Rational a_;  // invariant: 0 <= a_ < 1
};

inline CircleElement circle_one() { return CircleElement(); }

inline CircleElement circle_mul(const CircleElement& x, const CircleElement& y) {
  return CircleElement::from_angle(x.angle() + y.angle());
}

inline CircleElement circle_pow(const CircleElement& x, const BigInt& k) {
  return CircleElement::from_angle(Rational(k) * x.angle());
}

inline CircleElement circle_inv(const CircleElement& x) {
  return circle_pow(x, -1);
}

inline CircleElement parse_circle(const std::string& s) {
  return CircleElement::from_angle(parse_rational(s));
}

}  // namespace cartan
