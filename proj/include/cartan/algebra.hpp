#pragma once

// Finitely supported functions G -> cyclotomics with twisted convolution
//   (f * h)(gamma) = sum over a*b = gamma of f(a) h(b) c(a,b)
// and the matching adjoint f^*(gamma) = conj(f(gamma^-1) c(gamma, gamma^-1)).
// Every coefficient lives in one cyclotomic field per element; binary ops
// promote to the least common conductor, which also absorbs the cocycle
// values needed (their orders divide the cocycle's angle lcm).

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cartan/cocycle.hpp"
#include "cartan/cyclotomic.hpp"
#include "cartan/group.hpp"
#include "cartan/sampling.hpp"
#include "cartan/subgroup.hpp"

namespace cartan {

class AlgebraElement {
 public:
  explicit AlgebraElement(unsigned long conductor = 1) : n_(conductor) {
    if (conductor == 0) throw Error("conductor must be >= 1");
  }

  unsigned long conductor() const { return n_; }
  const std::map<GroupElement, Cyclotomic>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t support_size() const { return terms_.size(); }

  /// Coefficient at g; zero off the support.
  Cyclotomic at(const GroupElement& g) const {
    auto it = terms_.find(g);
    return it == terms_.end() ? Cyclotomic::zero(n_) : it->second;
  }

  /// Adds z * delta_g in place, dropping the entry if it cancels to zero.
  void accumulate(const GroupElement& g, const Cyclotomic& z) {
    Cyclotomic v = cyc_promote(z, n_);
    auto it = terms_.find(g);
    if (it == terms_.end()) {
      if (!v.is_zero()) terms_.emplace(g, std::move(v));
      return;
    }
    it->second = cyc_add(it->second, v);
    if (it->second.is_zero()) terms_.erase(it);
  }

  /// Same element expressed at a (larger) conductor.
  AlgebraElement promoted(unsigned long n) const {
    AlgebraElement out(n);
    for (const auto& [g, z] : terms_) out.accumulate(g, z);
    return out;
  }

 private:
  unsigned long n_;
  std::map<GroupElement, Cyclotomic> terms_;
};

inline AlgebraElement alg_delta(const GroupElement& g, unsigned long n = 1) {
  AlgebraElement out(n);
  out.accumulate(g, Cyclotomic::one(n));
  return out;
}

inline AlgebraElement alg_add(const AlgebraElement& f, const AlgebraElement& h) {
  unsigned long n = std::lcm(f.conductor(), h.conductor());
  AlgebraElement out = f.promoted(n);
  for (const auto& [g, z] : h.terms()) out.accumulate(g, z);
  return out;
}

inline AlgebraElement alg_scale(const Cyclotomic& z, const AlgebraElement& f) {
  unsigned long n = std::lcm(f.conductor(), z.conductor());
  AlgebraElement out(n);
  for (const auto& [g, w] : f.terms()) out.accumulate(g, cyc_mul(z, w));
  return out;
}

inline AlgebraElement alg_neg(const AlgebraElement& f) {
  return alg_scale(Cyclotomic::from_rational(Rational(-1)), f);
}

inline AlgebraElement alg_sub(const AlgebraElement& f, const AlgebraElement& h) {
  return alg_add(f, alg_neg(h));
}

inline bool alg_eq(const AlgebraElement& f, const AlgebraElement& h) {
  unsigned long n = std::lcm(f.conductor(), h.conductor());
  AlgebraElement a = f.promoted(n), b = h.promoted(n);
  if (a.terms().size() != b.terms().size()) return false;
  auto it = a.terms().begin();
  auto jt = b.terms().begin();
  for (; it != a.terms().end(); ++it, ++jt)
    if (it->first != jt->first || !cyc_eq(it->second, jt->second)) return false;
  return true;
}

namespace detail {

inline unsigned long conductor_for(const CocycleDescriptor& c, unsigned long a, unsigned long b) {
  BigInt l = lcm(BigInt(std::lcm(a, b)), c.angle_lcm());
  if (l > 1000000) throw Error("conductor too large");
  return l.convert_to<unsigned long>();
}

}  // namespace detail

inline AlgebraElement convolve(const GroupDescriptor& d, const CocycleDescriptor& c,
                               const AlgebraElement& f, const AlgebraElement& h) {
  unsigned long n = detail::conductor_for(c, f.conductor(), h.conductor());
  AlgebraElement out(n);
  for (const auto& [a, fa] : f.terms())
    for (const auto& [b, hb] : h.terms()) {
      Cyclotomic w = cyc_mul(cyc_mul(fa, hb), cyc_from_circle(c.eval(a, b), n));
      out.accumulate(d.multiply(a, b), w);
    }
  return out;
}

inline AlgebraElement adjoint(const GroupDescriptor& d, const CocycleDescriptor& c,
                              const AlgebraElement& f) {
  unsigned long n = detail::conductor_for(c, f.conductor(), 1);
  AlgebraElement out(n);
  for (const auto& [g, z] : f.terms()) {
    GroupElement gi = d.inverse(g);
    Cyclotomic w = cyc_conj(cyc_mul(cyc_promote(z, n), cyc_from_circle(c.eval(gi, g), n)));
    out.accumulate(gi, w);
  }
  return out;
}

/// delta_g * f * delta_g^*.
inline AlgebraElement conj_by_delta(const GroupDescriptor& d, const CocycleDescriptor& c,
                                    const GroupElement& g, const AlgebraElement& f) {
  unsigned long n = detail::conductor_for(c, f.conductor(), 1);
  AlgebraElement dg = alg_delta(g, n);
  return convolve(d, c, convolve(d, c, dg, f), adjoint(d, c, dg));
}

/// delta_g delta_s delta_g^* collapses to a unit times delta at g s g^-1;
/// the unit's angle is -ang c(g,g^-1) + ang c(s,g^-1) + ang c(g, s g^-1).
inline std::pair<CircleElement, GroupElement> closed_form_delta_conj(const GroupDescriptor& d,
                                                                     const CocycleDescriptor& c,
                                                                     const GroupElement& g,
                                                                     const GroupElement& s) {
  GroupElement gi = d.inverse(g);
  CircleElement u = circle_inv(c.eval(g, gi));
  u = circle_mul(u, c.eval(s, gi));
  u = circle_mul(u, c.eval(g, d.multiply(s, gi)));
  return {u, d.conjugate(g, s)};
}

/// Restriction of the support to S; the conditional expectation onto the
/// subalgebra spanned by deltas of members.
inline AlgebraElement cond_expect(const SubgroupDescriptor& S, const AlgebraElement& f) {
  AlgebraElement out(f.conductor());
  for (const auto& [g, z] : f.terms())
    if (S.contains(g)) out.accumulate(g, z);
  return out;
}

struct FaithfulnessResult {
  Cyclotomic lhs;  // (f^* * f) at the identity
  Cyclotomic rhs;  // sum of |f(g)|^2
  bool equal = false;
};

/// (f^* * f)(e) == sum_g |f(g)|^2 exactly; the cocycle unit at (g^-1, g)
/// cancels against the adjoint's conjugate, so both sides agree term by term.
inline FaithfulnessResult faithfulness_identity(const GroupDescriptor& d,
                                                const CocycleDescriptor& c,
                                                const AlgebraElement& f) {
  FaithfulnessResult res;
  AlgebraElement prod = convolve(d, c, adjoint(d, c, f), f);
  res.lhs = prod.at(d.identity());
  res.rhs = Cyclotomic::zero(f.conductor());
  for (const auto& [g, z] : f.terms()) res.rhs = cyc_add(res.rhs, cyc_norm_sq(z));
  res.equal = cyc_eq(res.lhs, res.rhs);
  return res;
}

struct CommutantScanResult {
  bool commutes_with_all = false;
  std::uint64_t members_checked = 0;
  std::optional<GroupElement> witness_s;  // first member with nonzero commutator, scan order
  AlgebraElement commutator;              // h * delta_s - delta_s * h at the witness
};

/// Commutator of h against delta_s for every member s of S in the ball.
inline CommutantScanResult commutant_scan(const GroupDescriptor& d, const CocycleDescriptor& c,
                                          const AlgebraElement& h, const SubgroupDescriptor& S,
                                          const Ball& ball) {
  CommutantScanResult res;
  res.commutes_with_all = true;
  ball.scan_until([&](const GroupElement& s) {
    if (!S.contains(s)) return false;
    ++res.members_checked;
    AlgebraElement ds = alg_delta(s, h.conductor());
    AlgebraElement comm = alg_sub(convolve(d, c, h, ds), convolve(d, c, ds, h));
    if (!comm.is_zero()) {
      res.commutes_with_all = false;
      res.witness_s = s;
      res.commutator = std::move(comm);
      return true;
    }
    return false;
  });
  return res;
}

struct CovarianceCheckResult {
  bool holds = false;
  std::uint64_t points_checked = 0;
  std::optional<GroupElement> witness_nu;
};

/// Pointwise form of commuting with delta_s:
///   h(nu) c(s, nu) == h(s nu s^-1) c(s nu s^-1, s) for all nu,
/// checked over the support of h pulled both ways through conjugation by s
/// (everywhere else both sides vanish).
inline CovarianceCheckResult commutant_covariance_check(const GroupDescriptor& d,
                                                        const CocycleDescriptor& c,
                                                        const AlgebraElement& h,
                                                        const GroupElement& s) {
  CovarianceCheckResult res;
  res.holds = true;
  GroupElement si = d.inverse(s);
  std::vector<GroupElement> points;
  for (const auto& [nu, z] : h.terms()) {
    points.push_back(nu);
    points.push_back(d.conjugate(si, nu));  // nu with s nu s^-1 in the support
  }
  unsigned long n = detail::conductor_for(c, h.conductor(), 1);
  for (const auto& nu : points) {
    GroupElement snu = d.conjugate(s, nu);
    Cyclotomic lhs = cyc_mul(cyc_promote(h.at(nu), n), cyc_from_circle(c.eval(s, nu), n));
    Cyclotomic rhs = cyc_mul(cyc_promote(h.at(snu), n), cyc_from_circle(c.eval(snu, s), n));
    ++res.points_checked;
    if (!cyc_eq(lhs, rhs)) {
      res.holds = false;
      if (!res.witness_nu) res.witness_nu = nu;
    }
  }
  return res;
}

/// Small random element supported on the given points: up to max_support of
/// them, coefficients from {1, i, -1} (unit fourth roots keep products exact
/// and cheap). Conductor is lifted to a multiple of 4.
inline AlgebraElement sample_supported_on(const std::vector<GroupElement>& points, Rng& rng,
                                          unsigned long n, std::size_t max_support = 3) {
  unsigned long nn = std::lcm(n, 4ul);
  AlgebraElement out(nn);
  if (points.empty()) return out;
  std::size_t k = 1 + rng.below(max_support);
  for (std::size_t i = 0; i < k; ++i) {
    const GroupElement& g = points[rng.below(points.size())];
    switch (rng.below(3)) {
      case 0: out.accumulate(g, Cyclotomic::one(nn)); break;
      case 1: out.accumulate(g, Cyclotomic::root(4, 1)); break;
      default: out.accumulate(g, Cyclotomic::from_rational(Rational(-1))); break;
    }
  }
  return out;
}

inline std::vector<GroupElement> collect_members(const SubgroupDescriptor& S, const Ball& ball) {
  std::vector<GroupElement> members;
  ball.for_each([&](const GroupElement& g) {
    if (S.contains(g)) members.push_back(g);
  });
  return members;
}

inline std::vector<GroupElement> collect_ball(const Ball& ball) {
  std::vector<GroupElement> out;
  out.reserve(ball.size());
  ball.for_each([&](const GroupElement& g) { out.push_back(g); });
  return out;
}

struct AbelianCheckResult {
  bool ok = false;
  std::uint64_t samples_checked = 0;
  std::optional<std::pair<GroupElement, GroupElement>> witness_supports;  // first mismatch
};

/// Sampled commutativity of the twisted algebra restricted to S: random
/// member-supported f, h must satisfy f * h == h * f exactly. The witness
/// records one support point from each side of the first failing pair.
inline AbelianCheckResult abelian_on_S_check(const SubgroupDescriptor& S, const GroupDescriptor& d,
                                             const CocycleDescriptor& c, const Ball& ball,
                                             std::uint64_t samples, std::uint64_t seed) {
  AbelianCheckResult res;
  Rng rng(seed);
  unsigned long n = detail::conductor_for(c, 4, 1);
  std::vector<GroupElement> members = collect_members(S, ball);
  for (std::uint64_t i = 0; i < samples; ++i) {
    AlgebraElement f = sample_supported_on(members, rng, n);
    AlgebraElement h = sample_supported_on(members, rng, n);
    ++res.samples_checked;
    if (!alg_eq(convolve(d, c, f, h), convolve(d, c, h, f))) {
      res.ok = false;
      if (!f.terms().empty() && !h.terms().empty())
        res.witness_supports = {f.terms().begin()->first, h.terms().begin()->first};
      return res;
    }
  }
  res.ok = true;
  return res;
}

inline std::string alg_str(const AlgebraElement& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& [g, z] : f.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + cyc_str(z) + ")*delta" + element_str(g);
  }
  return out;
}

}  // namespace cartan
