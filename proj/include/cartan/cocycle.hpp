#pragma once

// Bicharacter-type circle-valued 2-cocycles: c(a,b) = exp(2*pi*i * sum_t
// r_t * a_{j_t} * b_{k_t}) with rational r_t. Bilinearity in the exponent
// makes the cocycle identity automatic over free coordinates; on torsion
// coordinates well-definedness needs r_t * m_{j_t} and r_t * m_{k_t}
// integral, which the constructor enforces.

#include <optional>
#include <string>
#include <vector>

#include "cartan/circle.hpp"
#include "cartan/group.hpp"
#include "cartan/sampling.hpp"

namespace cartan {

struct CocycleTerm {
  std::size_t left = 0, right = 0;  // 0-based coordinate indices
  CircleElement angle;              // r_t as a point on the circle
};

class CocycleDescriptor {
 public:
  CocycleDescriptor() = default;

  CocycleDescriptor(const GroupDescriptor& d, std::vector<CocycleTerm> terms)
      : terms_(std::move(terms)) {
    for (const auto& t : terms_) {
      if (t.left >= d.rank() || t.right >= d.rank()) throw Error("cocycle term index out of range");
      for (std::size_t side : {t.left, t.right}) {
        const auto& cp = d.components()[side];
        if (cp.torsion && (BigInt(cp.modulus) * t.angle.num()) % t.angle.den() != 0)
          throw Error("cocycle angle not integral against torsion modulus at coordinate " +
                      std::to_string(side + 1));
      }
    }
  }

  const std::vector<CocycleTerm>& terms() const { return terms_; }

  /// Common denominator of all term angles; every cocycle value is a root of
  /// unity of this order.
  BigInt angle_lcm() const {
    BigInt l = 1;
    for (const auto& t : terms_) l = lcm(l, t.angle.den());
    return l;
  }

  CircleElement eval(const GroupElement& a, const GroupElement& b) const {
    return eval_raw(a.c, b.c);
  }

  /// Evaluation on raw coordinate vectors, bypassing torsion reduction.
  /// Used by well-definedness checks that compare lifted representatives.
  CircleElement eval_raw(const Coords& a, const Coords& b) const {
    CircleElement v = circle_one();
    for (const auto& t : terms_)
      v = circle_mul(v, circle_pow(t.angle, BigInt(a[t.left]) * b[t.right]));
    return v;
  }

 private:
  std::vector<CocycleTerm> terms_;
};

struct CocycleReport {
  bool ok = false;
  std::uint64_t samples_checked = 0;
  std::vector<LawViolation> violations;
};

/// Sampled audit of the 2-cocycle laws: normalization c(g,e)=c(e,g)=1,
/// the identity c(g,hk)c(h,k)=c(gh,k)c(g,h) on triples, and invariance of
/// sampled values under lifting a torsion coordinate by its modulus.
inline CocycleReport validate_cocycle(const CocycleDescriptor& c, const GroupDescriptor& d,
                                      const Ball& ball, const DescriptorCheckOptions& opt = {}) {
  CocycleReport rep;
  Rng rng(opt.seed);
  auto note = [&](const char* law, std::vector<GroupElement> w) {
    if (rep.violations.size() < opt.max_violations)
      rep.violations.push_back({law, std::move(w)});
  };
  const GroupElement e = d.identity();
  for (std::uint64_t i = 0; i < opt.samples; ++i) {
    GroupElement g = sample_ball(ball, rng);
    GroupElement h = sample_ball(ball, rng);
    GroupElement k = sample_ball(ball, rng);
    if (!c.eval(g, e).is_identity() || !c.eval(e, g).is_identity()) note("normalization", {g});
    CircleElement lhs = circle_mul(c.eval(g, d.multiply(h, k)), c.eval(h, k));
    CircleElement rhs = circle_mul(c.eval(d.multiply(g, h), k), c.eval(g, h));
    if (lhs != rhs) note("cocycle identity", {g, h, k});
    for (std::size_t j = 0; j < d.rank(); ++j) {
      if (!d.components()[j].torsion) continue;
      Coords lifted = g.c;
      lifted[j] += d.components()[j].modulus;
      if (c.eval_raw(lifted, h.c) != c.eval(g, h) || c.eval_raw(h.c, lifted) != c.eval(h, g))
        note("torsion lift changes value", {g, h});
    }
    ++rep.samples_checked;
  }
  rep.ok = rep.violations.empty();
  return rep;
}

/// c(g, g^{-1}) == c(g^{-1}, g) for every ball element. Holds for every
/// 2-cocycle; a failure means the evaluator itself is broken.
inline bool check_inverse_symmetry(const CocycleDescriptor& c, const GroupDescriptor& d,
                                   const Ball& ball,
                                   std::optional<GroupElement>* witness = nullptr) {
  bool bad = ball.scan_until([&](const GroupElement& g) {
    GroupElement gi = d.inverse(g);
    if (c.eval(g, gi) != c.eval(gi, g)) {
      if (witness) *witness = g;
      return true;
    }
    return false;
  });
  return !bad;
}

struct PairPredicateResult {
  bool holds = false;
  std::uint64_t pairs_checked = 0;
  std::optional<std::pair<GroupElement, GroupElement>> witness;  // first failure, scan order
};

/// c(s,t) == c(t,s) for all pairs s,t in the subset of the ball selected by
/// `member` (pass an always-true member for the whole ball).
template <class MemberFn>
PairPredicateResult is_symmetric_on(const CocycleDescriptor& c, const Ball& ball,
                                    MemberFn&& member) {
  PairPredicateResult res;
  res.holds = true;
  ball.scan_until([&](const GroupElement& s) {
    if (!member(s)) return false;
    return ball.scan_until([&](const GroupElement& t) {
      if (!member(t)) return false;
      ++res.pairs_checked;
      if (c.eval(s, t) != c.eval(t, s)) {
        res.witness = {s, t};
        res.holds = false;
        return true;
      }
      return false;
    });
  });
  return res;
}

/// c(s,t) == 1 for all selected pairs.
template <class MemberFn>
PairPredicateResult is_trivial_on(const CocycleDescriptor& c, const Ball& ball, MemberFn&& member) {
  PairPredicateResult res;
  res.holds = true;
  ball.scan_until([&](const GroupElement& s) {
    if (!member(s)) return false;
    return ball.scan_until([&](const GroupElement& t) {
      if (!member(t)) return false;
      ++res.pairs_checked;
      if (!c.eval(s, t).is_identity()) {
        res.witness = {s, t};
        res.holds = false;
        return true;
      }
      return false;
    });
  });
  return res;
}

struct ChainCheckResult {
  // The four commutation-transport identities, in fixed order:
  //   c(xi,eta)          == c(eta,xi)
  //   c(xi*eta, eta^-1)  == c(eta^-1, xi*eta)
  //   c(xi, eta^-1)      == c(eta^-1, xi)
  //   c(xi*eta^-1, eta)  == c(eta, xi*eta^-1)
  bool step[4] = {false, false, false, false};
  bool all() const { return step[0] && step[1] && step[2] && step[3]; }
};

/// For commuting eta, xi the four symmetry statements above stand or fall
/// together; evaluating each side separately exercises that equivalence.
/// Throws if the pair does not commute (the chain is meaningless then).
inline ChainCheckResult equivalence_chain_check(const CocycleDescriptor& c,
                                                const GroupDescriptor& d, const GroupElement& eta,
                                                const GroupElement& xi) {
  if (d.multiply(eta, xi) != d.multiply(xi, eta))
    throw Error("equivalence_chain_check requires commuting elements, got " + element_str(eta) +
                " and " + element_str(xi));
  ChainCheckResult r;
  GroupElement etai = d.inverse(eta);
  GroupElement xe = d.multiply(xi, eta);
  GroupElement xei = d.multiply(xi, etai);
  r.step[0] = c.eval(xi, eta) == c.eval(eta, xi);
  r.step[1] = c.eval(xe, etai) == c.eval(etai, xe);
  r.step[2] = c.eval(xi, etai) == c.eval(etai, xi);
  r.step[3] = c.eval(xei, eta) == c.eval(eta, xei);
  return r;
}

}  // namespace cartan
