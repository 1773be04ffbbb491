#pragma once

// Dual-side machinery: characters of the distinguished subgroup, the coset
// transversal, the induced action of classes on characters, and the
// circle-valued 2-cocycle the transversal produces. The action and cocycle
// are computed twice on every call that matters: once by the closed angle
// formula and once through actual convolution of deltas; disagreement is a
// logic error, not a reportable verdict.

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cartan/algebra.hpp"
#include "cartan/circle.hpp"
#include "cartan/cocycle.hpp"
#include "cartan/group.hpp"
#include "cartan/subgroup.hpp"

namespace cartan {

/// Character of S: one circle angle per active coordinate, giving the value
/// at that generator. The value at a member is the coordinate-weighted sum.
struct Character {
  std::vector<CircleElement> angles;
  friend bool operator==(const Character& a, const Character& b) { return a.angles == b.angles; }
  friend bool operator!=(const Character& a, const Character& b) { return !(a == b); }
};

inline std::string character_str(const Character& chi) {
  std::string out = "(";
  for (std::size_t i = 0; i < chi.angles.size(); ++i) {
    if (i) out += ",";
    out += chi.angles[i].str();
  }
  return out + ")";
}

/// Angles must respect the generator orders: a generator of finite order o
/// only carries o-th roots of unity.
inline void validate_character(const SubgroupDescriptor& S, const GroupDescriptor& d,
                               const Character& chi) {
  auto act = S.active();
  if (chi.angles.size() != act.size())
    throw Error("character arity mismatch: expected " + std::to_string(act.size()) + " angles");
  for (std::size_t i = 0; i < act.size(); ++i) {
    std::int64_t o = S.generator_order(d, i);
    if (o >= 1 && !circle_pow(chi.angles[i], BigInt(o)).is_identity())
      throw Error("character angle " + chi.angles[i].str() + " incompatible with generator order " +
                  std::to_string(o));
  }
}

inline CircleElement char_eval(const SubgroupDescriptor& S, const Character& chi,
                               const GroupElement& s) {
  auto coords = S.coordinates(s);  // throws for non-members
  if (coords.size() != chi.angles.size()) throw Error("character arity mismatch");
  CircleElement v = circle_one();
  for (std::size_t i = 0; i < coords.size(); ++i)
    v = circle_mul(v, circle_pow(chi.angles[i], BigInt(coords[i])));
  return v;
}

/// Canonical coset representative: scaled coordinates are reduced to their
/// residue in [0, k), pinned coordinates are kept as they are.
inline GroupElement coset_rep(const SubgroupDescriptor& S, const GroupDescriptor& d,
                              const GroupElement& g) {
  Coords out(g.c.size());
  const auto& k = S.scalings();
  for (std::size_t i = 0; i < g.c.size(); ++i)
    out[i] = k[i] >= 1 ? detail::mod_residue(g.c[i], k[i]) : g.c[i];
  return d.element(std::move(out));
}

struct TransversalReport {
  bool ok = false;
  std::uint64_t elements_checked = 0;
  std::uint64_t pairs_checked = 0;
  std::vector<LawViolation> violations;
};

using RepFn = std::function<GroupElement(const GroupElement&)>;

/// rep lands in the same coset (rep(g)^-1 g in S), is idempotent, and on
/// sampled pairs agrees exactly when the elements share a coset. Pass a
/// custom rep to demonstrate how a corrupted transversal is caught.
inline TransversalReport validate_transversal(const SubgroupDescriptor& S,
                                              const GroupDescriptor& d, const Ball& ball,
                                              std::uint64_t pair_samples, std::uint64_t seed,
                                              const RepFn& rep_fn = nullptr) {
  TransversalReport rep;
  auto rep_of = [&](const GroupElement& g) {
    return rep_fn ? rep_fn(g) : coset_rep(S, d, g);
  };
  auto note = [&](const char* law, std::vector<GroupElement> w) {
    if (rep.violations.size() < 5) rep.violations.push_back({law, std::move(w)});
  };
  ball.for_each([&](const GroupElement& g) {
    GroupElement r = rep_of(g);
    if (!S.contains(d.multiply(d.inverse(r), g))) note("rep not in the same coset", {g});
    if (rep_of(r) != r) note("rep not idempotent", {g});
    ++rep.elements_checked;
  });
  Rng rng(seed);
  for (std::uint64_t i = 0; i < pair_samples; ++i) {
    GroupElement g = sample_ball(ball, rng);
    GroupElement h = sample_ball(ball, rng);
    bool same_coset = S.contains(d.multiply(g, d.inverse(h)));
    bool same_rep = rep_of(g) == rep_of(h);
    if (same_coset != same_rep) note("rep equality disagrees with coset relation", {g, h});
    ++rep.pairs_checked;
  }
  rep.ok = rep.violations.empty();
  return rep;
}

namespace detail {

/// Unit in delta_{g^-1} delta_s delta_{g^-1}^* = u * delta_{g^-1 s g}.
inline CircleElement dual_conj_unit(const GroupDescriptor& d, const CocycleDescriptor& c,
                                    const GroupElement& g, const GroupElement& gi,
                                    const GroupElement& s) {
  CircleElement u = circle_inv(c.eval(g, gi));  // = c(g^-1, g) conjugated
  u = circle_mul(u, c.eval(gi, s));
  u = circle_mul(u, c.eval(d.multiply(gi, s), g));
  return u;
}

}  // namespace detail

/// Action of the class of g on a character: the new value at a generator t
/// is the unit of the dual conjugation times the old value at g^-1 t g.
/// Needs the cocycle trivial on S (otherwise characters of the subalgebra
/// are not plain characters of S) and g^-1 S g = S within reach.
inline Character weyl_action(const SubgroupDescriptor& S, const GroupDescriptor& d,
                             const CocycleDescriptor& c, const GroupElement& g,
                             const Character& chi) {
  if (!cocycle_trivial_on_subgroup(c, S))
    throw Error("class action needs the cocycle trivial on the subgroup");
  validate_character(S, d, chi);
  GroupElement gi = d.inverse(g);
  auto act = S.active();
  Character out;
  out.angles.reserve(act.size());
  for (std::size_t i = 0; i < act.size(); ++i) {
    GroupElement t = S.generator(d, i);
    GroupElement conj = d.multiply(d.multiply(gi, t), g);
    CircleElement v = circle_mul(detail::dual_conj_unit(d, c, g, gi, t), char_eval(S, chi, conj));
    out.angles.push_back(v);
  }
  // a genuine character must come back out; anything else is a math bug
  for (std::size_t i = 0; i < act.size(); ++i) {
    std::int64_t o = S.generator_order(d, i);
    if (o >= 1 && !circle_pow(out.angles[i], BigInt(o)).is_identity())
      throw std::logic_error("class action broke a generator order constraint");
  }
  return out;
}

/// Transversal 2-cocycle at (g, h) evaluated on chi: with w =
/// rep(gh)^-1 rep(g) rep(h) in S,
///   sigma(g,h)(chi) = lambda * chi(w),
///   lambda = -ang c(rep(gh), rep(gh)^-1) + ang c(rep(gh)^-1, rep(g) rep(h))
///            + ang c(rep(g), rep(h)).
/// Every call re-derives the value through actual delta convolutions
/// (adjoint(delta_rep(gh)) * delta_rep(g) * delta_rep(h) must be a unit at w
/// matching lambda) and throws logic_error on any mismatch.
inline CircleElement weyl_cocycle(const SubgroupDescriptor& S, const GroupDescriptor& d,
                                  const CocycleDescriptor& c, const GroupElement& g,
                                  const GroupElement& h, const Character& chi) {
  GroupElement rg = coset_rep(S, d, g);
  GroupElement rh = coset_rep(S, d, h);
  GroupElement rgh = coset_rep(S, d, d.multiply(g, h));
  GroupElement rr = d.multiply(rg, rh);
  GroupElement w = d.multiply(d.inverse(rgh), rr);
  if (!S.contains(w))
    throw std::logic_error("transversal defect left the subgroup at " + element_str(w));

  CircleElement lambda = circle_inv(c.eval(rgh, d.inverse(rgh)));
  lambda = circle_mul(lambda, c.eval(d.inverse(rgh), rr));
  lambda = circle_mul(lambda, c.eval(rg, rh));
  CircleElement sigma = circle_mul(lambda, char_eval(S, chi, w));

  // dual path through the algebra
  AlgebraElement prod = convolve(
      d, c, adjoint(d, c, alg_delta(rgh)), convolve(d, c, alg_delta(rg), alg_delta(rh)));
  if (prod.support_size() != 1 || prod.terms().begin()->first != w)
    throw std::logic_error("delta product did not collapse to the transversal defect");
  const Cyclotomic& unit = prod.terms().begin()->second;
  unsigned long n = std::lcm(unit.conductor(), (unsigned long)lambda.den().convert_to<unsigned long>());
  if (!cyc_eq(unit, cyc_from_circle(lambda, n)))
    throw std::logic_error("delta product unit disagrees with the angle formula");
  if (sigma.den() <= 120) {
    unsigned long m = std::lcm(n, (unsigned long)sigma.den().convert_to<unsigned long>());
    Cyclotomic lhs = cyc_mul(cyc_promote(unit, m), cyc_from_circle(char_eval(S, chi, w), m));
    if (!cyc_eq(lhs, cyc_from_circle(sigma, m)))
      throw std::logic_error("character evaluation disagrees with the angle formula");
  }
  return sigma;
}

struct SigmaIdentityResult {
  bool holds = false;
  CircleElement lhs, rhs;
};

/// Groupoid 2-cocycle law for sigma over the action:
///   sigma(g, hk)(chi) sigma(h, k)(chi) == sigma(gh, k)(chi) sigma(g, h)(alpha_k chi).
inline SigmaIdentityResult sigma_cocycle_identity_check(const SubgroupDescriptor& S,
                                                        const GroupDescriptor& d,
                                                        const CocycleDescriptor& c,
                                                        const GroupElement& g,
                                                        const GroupElement& h,
                                                        const GroupElement& k,
                                                        const Character& chi) {
  SigmaIdentityResult res;
  res.lhs = circle_mul(weyl_cocycle(S, d, c, g, d.multiply(h, k), chi),
                       weyl_cocycle(S, d, c, h, k, chi));
  res.rhs = circle_mul(weyl_cocycle(S, d, c, d.multiply(g, h), k, chi),
                       weyl_cocycle(S, d, c, g, h, weyl_action(S, d, c, k, chi)));
  res.holds = res.lhs == res.rhs;
  return res;
}

/// Random character: torsion generators get a uniform o-th root, free ones a
/// small-denominator angle.
inline Character sample_character(const SubgroupDescriptor& S, const GroupDescriptor& d, Rng& rng) {
  static const std::int64_t kFreeDens[] = {1, 2, 3, 4, 5, 6, 8, 12};
  Character chi;
  auto act = S.active();
  for (std::size_t i = 0; i < act.size(); ++i) {
    std::int64_t o = S.generator_order(d, i);
    if (o >= 1) {
      chi.angles.push_back(CircleElement::from_angle(
          Rational(BigInt(rng.below(static_cast<std::uint64_t>(o))), BigInt(o))));
    } else {
      std::int64_t den = kFreeDens[rng.below(std::size(kFreeDens))];
      chi.angles.push_back(CircleElement::from_angle(
          Rational(BigInt(rng.below(static_cast<std::uint64_t>(den))), BigInt(den))));
    }
  }
  return chi;
}

/// Deterministic probe family: free generators get 1/p with a distinct prime
/// per coordinate, rotated across the family; torsion generators walk their
/// finite dial. Distinct primes defeat cross-coordinate cancellation in any
/// exponent pattern a small ball can produce.
inline std::vector<Character> character_probe_family(const SubgroupDescriptor& S,
                                                     const GroupDescriptor& d) {
  static const std::int64_t kPrimes[] = {5, 7, 11, 13, 17, 19, 23};
  constexpr std::size_t kCount = std::size(kPrimes);
  std::vector<Character> out;
  auto act = S.active();
  for (std::size_t shift = 0; shift < kCount; ++shift) {
    Character chi;
    for (std::size_t i = 0; i < act.size(); ++i) {
      std::int64_t o = S.generator_order(d, i);
      if (o >= 1)
        chi.angles.push_back(
            CircleElement::from_angle(Rational(BigInt(shift % o), BigInt(o))));
      else
        chi.angles.push_back(
            CircleElement::from_angle(Rational(1, BigInt(kPrimes[(i + shift) % kCount]))));
    }
    out.push_back(std::move(chi));
  }
  return out;
}

struct FreenessClassReport {
  GroupElement rep;
  std::uint64_t fixed = 0;
  std::uint64_t tested = 0;
};

struct FreenessScanResult {
  bool every_class_moves_some_character = false;
  std::uint64_t classes_checked = 0;
  std::vector<FreenessClassReport> pinned_classes;  // classes fixing every tested character
  std::vector<FreenessClassReport> per_class;       // informational, capped
};

/// For every nontrivial class in the ball, the action must move at least one
/// probed character: a class fixing all of them is indistinguishable from a
/// trivial action at this resolution and is reported as a failure witness.
inline FreenessScanResult freeness_scan(const SubgroupDescriptor& S, const GroupDescriptor& d,
                                        const CocycleDescriptor& c, const Ball& ball,
                                        std::uint64_t char_samples, std::uint64_t seed,
                                        std::size_t max_reported = 16) {
  FreenessScanResult res;
  std::set<GroupElement> classes;
  ball.for_each([&](const GroupElement& g) { classes.insert(coset_rep(S, d, g)); });
  std::vector<Character> probes = character_probe_family(S, d);
  Rng rng(seed);
  for (std::uint64_t i = 0; i < char_samples; ++i) probes.push_back(sample_character(S, d, rng));
  const GroupElement e = d.identity();
  for (const auto& rep : classes) {
    if (rep == e) continue;
    FreenessClassReport r;
    r.rep = rep;
    for (const auto& chi : probes) {
      ++r.tested;
      if (weyl_action(S, d, c, rep, chi) == chi) ++r.fixed;
    }
    ++res.classes_checked;
    if (r.fixed == r.tested && res.pinned_classes.size() < max_reported)
      res.pinned_classes.push_back(r);
    if (res.per_class.size() < max_reported) res.per_class.push_back(std::move(r));
  }
  res.every_class_moves_some_character = res.pinned_classes.empty();
  return res;
}

struct CosetClass {
  GroupElement rep;
};

/// Arrow of the action groupoid: the class applied at a source character.
struct WeylArrow {
  CosetClass cls;
  Character source;
};

inline Character arrow_range(const SubgroupDescriptor& S, const GroupDescriptor& d,
                             const CocycleDescriptor& c, const WeylArrow& a) {
  return weyl_action(S, d, c, a.cls.rep, a.source);
}

/// (first applied after second): sources must chain, the composite is the
/// product class applied at the inner source.
inline WeylArrow compose_arrows(const SubgroupDescriptor& S, const GroupDescriptor& d,
                                const CocycleDescriptor& c, const WeylArrow& first,
                                const WeylArrow& second) {
  if (first.source != arrow_range(S, d, c, second))
    throw Error("arrows do not compose: inner range differs from outer source");
  CosetClass cls{coset_rep(S, d, d.multiply(first.cls.rep, second.cls.rep))};
  return WeylArrow{std::move(cls), second.source};
}

}  // namespace cartan
