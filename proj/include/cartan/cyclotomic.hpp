#pragma once

// Exact cyclotomic scalars: elements of Q(zeta_N) in the power basis
// 1, z, ..., z^{phi(N)-1}, kept reduced modulo the N-th cyclotomic
// polynomial Phi_N. Reduction modulo the minimal polynomial makes the
// coefficient vector a canonical form, so equality is exact vector equality
// (after promoting mixed conductors to their lcm).

#include <complex>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "cartan/circle.hpp"
#include "cartan/rational.hpp"

namespace cartan {

namespace detail {

// Exact polynomial division num / den over the integers; den monic.
// Coefficients ascending; remainder must be zero (caller guarantees).
inline std::vector<BigInt> poly_div_exact(std::vector<BigInt> num,
                                          const std::vector<BigInt>& den) {
  const std::size_t dd = den.size() - 1;
  std::vector<BigInt> quot(num.size() - dd, 0);
  for (std::size_t i = num.size(); i-- > dd;) {
    BigInt c = num[i];
    if (c == 0) continue;
    quot[i - dd] = c;
    for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
  }
  return quot;
}

}  // namespace detail

/// Coefficients of Phi_N, ascending degree, monic. Cached per conductor.
inline const std::vector<BigInt>& cyclotomic_poly(unsigned long n) {
  static std::map<unsigned long, std::vector<BigInt>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  // x^n - 1 divided by Phi_d for every proper divisor d of n.
  std::vector<BigInt> poly(n + 1, 0);
  poly[0] = -1;
  poly[n] = 1;
  for (unsigned long d = 1; d < n; ++d)
    if (n % d == 0) poly = detail::poly_div_exact(std::move(poly), cyclotomic_poly(d));
  return cache.emplace(n, std::move(poly)).first->second;
}

inline std::size_t cyclotomic_degree(unsigned long n) {
  return cyclotomic_poly(n).size() - 1;
}

namespace detail {

// In-place reduction modulo Phi_n; resizes to deg Phi_n.
inline void reduce_mod_cyclo(std::vector<Rational>& p, unsigned long n) {
  const auto& phi = cyclotomic_poly(n);
  const std::size_t d = phi.size() - 1;
  for (std::size_t i = p.size(); i-- > d;) {
    if (p[i] == 0) continue;
    Rational c = p[i];
    p[i] = 0;
    for (std::size_t j = 0; j < d; ++j) p[i - d + j] -= c * Rational(phi[j]);
  }
  p.resize(d, Rational(0));
}

}  // namespace detail

class Cyclotomic {
 public:
  /// Zero at conductor 1.
  Cyclotomic() : n_(1), c_(1, Rational(0)) {}

  static Cyclotomic zero(unsigned long n) {
    return Cyclotomic(n, std::vector<Rational>(cyclotomic_degree(n), Rational(0)));
  }
  static Cyclotomic one(unsigned long n) { return from_rational(Rational(1), n); }
  static Cyclotomic from_rational(const Rational& r, unsigned long n = 1) {
    Cyclotomic x = zero(n);
    x.c_[0] = r;
    return x;
  }
  /// zeta_n^k (k arbitrary, taken mod n).
  static Cyclotomic root(unsigned long n, const BigInt& k) {
    BigInt e = k % BigInt(n);
    if (e < 0) e += n;
    std::vector<Rational> p(static_cast<std::size_t>(e.convert_to<unsigned long>()) + 1,
                            Rational(0));
    p.back() = 1;
    detail::reduce_mod_cyclo(p, n);
    return Cyclotomic(n, std::move(p));
  }
  /// Polynomial in zeta_n with the given ascending coefficients, reduced.
  static Cyclotomic from_poly(unsigned long n, std::vector<Rational> p) {
    detail::reduce_mod_cyclo(p, n);
    return Cyclotomic(n, std::move(p));
  }

  unsigned long conductor() const { return n_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& c : c_)
      if (c != 0) return false;
    return true;
  }
  /// True iff the value lies in Q (canonical form is a constant polynomial).
  bool is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }
  Rational rational_part() const {
    if (!is_rational()) throw Error("cyclotomic value is not rational");
    return c_[0];
  }

 private:
  Cyclotomic(unsigned long n, std::vector<Rational> c) : n_(n), c_(std::move(c)) {}

  unsigned long n_;
  std::vector<Rational> c_;  // size deg Phi_n, reduced
};

/// Reinterpret x in Q(zeta_n) via zeta_m -> zeta_n^{n/m}; requires m | n.
inline Cyclotomic cyc_promote(const Cyclotomic& x, unsigned long n) {
  unsigned long m = x.conductor();
  if (m == n) return x;
  if (n % m != 0) throw Error("conductor promotion requires divisibility");
  unsigned long step = n / m;
  std::vector<Rational> p((x.coeffs().size() - 1) * step + 1, Rational(0));
  for (std::size_t k = 0; k < x.coeffs().size(); ++k) p[k * step] = x.coeffs()[k];
  return Cyclotomic::from_poly(n, std::move(p));
}

inline unsigned long common_conductor(const Cyclotomic& x, const Cyclotomic& y) {
  return std::lcm(x.conductor(), y.conductor());
}

inline Cyclotomic cyc_add(const Cyclotomic& x, const Cyclotomic& y) {
  unsigned long n = common_conductor(x, y);
  Cyclotomic a = cyc_promote(x, n), b = cyc_promote(y, n);
  std::vector<Rational> p = a.coeffs();
  for (std::size_t i = 0; i < p.size(); ++i) p[i] += b.coeffs()[i];
  return Cyclotomic::from_poly(n, std::move(p));
}

inline Cyclotomic cyc_neg(const Cyclotomic& x) {
  std::vector<Rational> p = x.coeffs();
  for (auto& c : p) c = -c;
  return Cyclotomic::from_poly(x.conductor(), std::move(p));
}

inline Cyclotomic cyc_sub(const Cyclotomic& x, const Cyclotomic& y) {
  return cyc_add(x, cyc_neg(y));
}

inline Cyclotomic cyc_mul(const Cyclotomic& x, const Cyclotomic& y) {
  unsigned long n = common_conductor(x, y);
  Cyclotomic a = cyc_promote(x, n), b = cyc_promote(y, n);
  std::vector<Rational> p(a.coeffs().size() + b.coeffs().size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (a.coeffs()[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs().size(); ++j)
      p[i + j] += a.coeffs()[i] * b.coeffs()[j];
  }
  return Cyclotomic::from_poly(n, std::move(p));
}

inline Cyclotomic cyc_scale(const Rational& r, const Cyclotomic& x) {
  std::vector<Rational> p = x.coeffs();
  for (auto& c : p) c *= r;
  return Cyclotomic::from_poly(x.conductor(), std::move(p));
}

/// Complex conjugation: zeta_n -> zeta_n^{n-1}.
inline Cyclotomic cyc_conj(const Cyclotomic& x) {
  unsigned long n = x.conductor();
  std::vector<Rational> p(n, Rational(0));
  for (std::size_t k = 0; k < x.coeffs().size(); ++k)
    p[k == 0 ? 0 : n - k] += x.coeffs()[k];
  return Cyclotomic::from_poly(n, std::move(p));
}

/// |x|^2 = x * conj(x); fixed by conjugation.
inline Cyclotomic cyc_norm_sq(const Cyclotomic& x) { return cyc_mul(x, cyc_conj(x)); }

inline bool cyc_eq(const Cyclotomic& x, const Cyclotomic& y) {
  unsigned long n = common_conductor(x, y);
  return cyc_promote(x, n).coeffs() == cyc_promote(y, n).coeffs();
}

/// The root of unity e^{2*pi*i*angle} as a cyclotomic at the given conductor.
inline Cyclotomic cyc_from_circle(const CircleElement& a, unsigned long target_conductor) {
  BigInt den = a.den();
  if (BigInt(target_conductor) % den != 0)
    throw Error("conductor mismatch: angle " + a.str() + " needs conductor divisible by " +
                den.str());
  BigInt k = a.num() * (BigInt(target_conductor) / den);
  return Cyclotomic::root(target_conductor, k);
}

/// Diagnostic only: substitute zeta_n -> exp(2*pi*i/n) in doubles.
inline std::complex<double> cyc_eval_numeric(const Cyclotomic& x) {
  constexpr double two_pi = 6.283185307179586476925286766559;
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t k = 0; k < x.coeffs().size(); ++k) {
    if (x.coeffs()[k] == 0) continue;
    double c = x.coeffs()[k].convert_to<double>();
    double t = two_pi * static_cast<double>(k) / static_cast<double>(x.conductor());
    acc += c * std::complex<double>(std::cos(t), std::sin(t));
  }
  return acc;
}

/// Deterministic textual form: "0", or nonzero terms "a/b z{N}^k" joined by " + ".
inline std::string cyc_str(const Cyclotomic& x) {
  std::string out;
  for (std::size_t k = 0; k < x.coeffs().size(); ++k) {
    if (x.coeffs()[k] == 0) continue;
    if (!out.empty()) out += " + ";
    out += rational_str_short(x.coeffs()[k]);
    if (k > 0) out += " z" + std::to_string(x.conductor()) + "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

}  // namespace cartan
