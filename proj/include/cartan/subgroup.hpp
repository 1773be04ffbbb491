#pragma once

// Box subgroups: per-coordinate scalings (0 = coordinate pinned to zero,
// k >= 1 = multiples of k; for a torsion coordinate k must divide the
// modulus). Membership, normality, centralizing classification and the
// maximal-abelian scans all run against finite balls and report explicit
// witnesses; a PASS is always "no counterexample in this ball".

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "cartan/cocycle.hpp"
#include "cartan/group.hpp"
#include "cartan/sampling.hpp"

namespace cartan {

class SubgroupDescriptor {
 public:
  SubgroupDescriptor() = default;

  SubgroupDescriptor(const GroupDescriptor& d, std::vector<std::int64_t> scalings)
      : scalings_(std::move(scalings)) {
    if (scalings_.size() != d.rank()) throw Error("subgroup scaling arity mismatch");
    for (std::size_t i = 0; i < scalings_.size(); ++i) {
      if (scalings_[i] < 0) throw Error("subgroup scaling must be >= 0");
      const auto& cp = d.components()[i];
      if (cp.torsion && scalings_[i] >= 1 && cp.modulus % scalings_[i] != 0)
        throw Error("subgroup scaling at coordinate " + std::to_string(i + 1) +
                    " does not divide torsion modulus");
    }
  }

  const std::vector<std::int64_t>& scalings() const { return scalings_; }

  bool contains(const GroupElement& g) const {
    for (std::size_t i = 0; i < scalings_.size(); ++i) {
      if (scalings_[i] == 0) {
        if (g.c[i] != 0) return false;
      } else if (g.c[i] % scalings_[i] != 0) {
        return false;
      }
    }
    return true;
  }

  /// Indices of the active coordinates (scaling >= 1); the i-th generator of
  /// the subgroup is scaling * e_{active[i]}.
  std::vector<std::size_t> active() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < scalings_.size(); ++i)
      if (scalings_[i] >= 1) out.push_back(i);
    return out;
  }

  /// Coordinates of a member in the generator basis: g = sum (g_i / k_i) *
  /// (k_i e_i) over active i. Throws for non-members.
  std::vector<std::int64_t> coordinates(const GroupElement& g) const {
    if (!contains(g)) throw Error("coordinates() of a non-member " + element_str(g));
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < scalings_.size(); ++i)
      if (scalings_[i] >= 1) out.push_back(g.c[i] / scalings_[i]);
    return out;
  }

  GroupElement generator(const GroupDescriptor& d, std::size_t which) const {
    auto act = active();
    if (which >= act.size()) throw Error("generator index out of range");
    Coords c(d.rank(), 0);
    c[act[which]] = scalings_[act[which]];
    return d.element(std::move(c));
  }

  /// Order of the `which`-th generator: m/k for a torsion coordinate,
  /// 0 meaning infinite for a free one.
  std::int64_t generator_order(const GroupDescriptor& d, std::size_t which) const {
    auto act = active();
    if (which >= act.size()) throw Error("generator index out of range");
    const auto& cp = d.components()[act[which]];
    return cp.torsion ? cp.modulus / scalings_[act[which]] : 0;
  }

 private:
  std::vector<std::int64_t> scalings_;
};

struct SubgroupReport {
  bool ok = false;
  std::uint64_t pairs_checked = 0;
  std::vector<LawViolation> violations;
};

/// Exhaustive (on the ball) closure and commutativity audit: s*t and s^{-1}
/// stay in S, s*t == t*s, and the product acts coordinatewise on members
/// (the box structure must be compatible with the twist).
inline SubgroupReport validate_subgroup(const SubgroupDescriptor& S, const GroupDescriptor& d,
                                        const Ball& ball, std::size_t max_violations = 5) {
  SubgroupReport rep;
  auto note = [&](const char* law, std::vector<GroupElement> w) {
    if (rep.violations.size() < max_violations) rep.violations.push_back({law, std::move(w)});
  };
  std::vector<GroupElement> members;
  ball.for_each([&](const GroupElement& g) {
    if (S.contains(g)) members.push_back(g);
  });
  for (const auto& s : members) {
    if (!S.contains(d.inverse(s))) note("inverse leaves subgroup", {s});
    for (const auto& t : members) {
      GroupElement st = d.multiply(s, t);
      if (!S.contains(st)) note("product leaves subgroup", {s, t});
      if (st != d.multiply(t, s)) note("members do not commute", {s, t});
      Coords plain(d.rank());
      for (std::size_t i = 0; i < d.rank(); ++i) plain[i] = s.c[i] + t.c[i];
      if (st != d.element(std::move(plain))) note("product not coordinatewise", {s, t});
      ++rep.pairs_checked;
    }
  }
  rep.ok = rep.violations.empty();
  return rep;
}

/// Optional exact conjugation oracle (closed form) cross-checked against the
/// generic g*s*g^{-1} computation whenever supplied.
using ConjOracle = std::function<GroupElement(const GroupElement& g, const GroupElement& s)>;

struct NormalityResult {
  bool normal = false;
  std::uint64_t pairs_checked = 0;
  std::optional<std::pair<GroupElement, GroupElement>> witness;  // (g, s) with g^-1 s g outside S
};

/// g^{-1} s g stays in S for all g in the ball, s in S cap ball.
inline NormalityResult is_normal(const SubgroupDescriptor& S, const GroupDescriptor& d,
                                 const Ball& ball, const ConjOracle& oracle = nullptr) {
  NormalityResult res;
  res.normal = true;
  std::vector<GroupElement> members;  // scan order, so the witness is a smallest one
  for (std::uint64_t i = 0; i < ball.size(); ++i) {
    GroupElement g = ball.scan_at(i);
    if (S.contains(g)) members.push_back(std::move(g));
  }
  ball.scan_until([&](const GroupElement& g) {
    GroupElement gi = d.inverse(g);
    for (const auto& s : members) {
      GroupElement conj = d.multiply(d.multiply(gi, s), g);
      if (oracle) {
        GroupElement expect = oracle(gi, s);
        if (conj != expect)
          throw Error("conjugation oracle disagrees at g=" + element_str(g) +
                      " s=" + element_str(s));
      }
      ++res.pairs_checked;
      if (!S.contains(conj)) {
        res.witness = {g, s};
        res.normal = false;
        return true;
      }
    }
    return false;
  });
  return res;
}

enum class CentralizingKind {
  kImmediate,        // commutes with every tested s directly (k = 1)
  kEventual,         // k-centralizing for some 2 <= k <= k_max, not 1
  kNotWithinBound,   // some s admits no exponent j <= k_max with nu s^j = s^j nu
};

struct CentralizingReport {
  GroupElement nu;
  CentralizingKind kind = CentralizingKind::kImmediate;
  std::int64_t minimal_k = 1;                 // meaningful for kEventual
  std::optional<GroupElement> witness_t;      // s realizing the classification
  std::int64_t witness_exponent = 0;          // j for kEventual, 0 for kNotWithinBound
};

/// Classifies one element nu against S cap ball: for each member s find the
/// least j in [1, k_max] with nu s^j = s^j nu; the max over s is the minimal
/// centralizing exponent. Witness re-verification is the caller's contract:
/// the reported (t, j) pair satisfies nu t^j = t^j nu and nu t^i != t^i nu
/// for i < j.
inline CentralizingReport centralizing_class(const SubgroupDescriptor& S, const GroupDescriptor& d,
                                             const GroupElement& nu, std::int64_t k_max,
                                             const Ball& ball) {
  CentralizingReport rep;
  rep.nu = nu;
  std::int64_t worst = 1;
  std::optional<GroupElement> worst_t;
  bool stuck = ball.scan_until([&](const GroupElement& s) {
    if (!S.contains(s)) return false;
    GroupElement p = d.identity();
    std::int64_t found = 0;
    for (std::int64_t j = 1; j <= k_max; ++j) {
      p = d.multiply(p, s);
      if (d.multiply(nu, p) == d.multiply(p, nu)) {
        found = j;
        break;
      }
    }
    if (found == 0) {
      rep.kind = CentralizingKind::kNotWithinBound;
      rep.witness_t = s;
      rep.witness_exponent = 0;
      return true;
    }
    if (found > worst) {
      worst = found;
      worst_t = s;
    }
    return false;
  });
  if (stuck) return rep;
  rep.minimal_k = worst;
  if (worst == 1) {
    rep.kind = CentralizingKind::kImmediate;
  } else {
    rep.kind = CentralizingKind::kEventual;
    rep.witness_t = worst_t;
    rep.witness_exponent = worst;
  }
  return rep;
}

struct ImmediateScanResult {
  bool all_immediate = false;            // no eventual-but-not-immediate element in the ball
  std::uint64_t elements_checked = 0;
  std::uint64_t immediate_count = 0;
  std::uint64_t outside_bound_count = 0;  // no exponent <= k_max at all; not a refutation
  bool power_injective = false;           // j-th power map injective on the ball, j <= k_max
  std::vector<CentralizingReport> failures;  // eventual-but-not-immediate, scan order, capped
};

namespace detail {

/// Injectivity of g -> g^j on the ball for every 1 <= j <= k_max. When it
/// holds, nu s^j = s^j nu gives (nu s nu^-1)^j = s^j, so nu s nu^-1 = s
/// whenever the conjugate lands back in the tested set: eventual
/// centralizing collapses to immediate. Used as a cross-check against the
/// direct classification, never as a substitute for it.
inline bool power_injective_on_ball(const GroupDescriptor& d, const Ball& ball, std::int64_t k_max,
                                    std::optional<std::pair<GroupElement, GroupElement>>* clash) {
  for (std::int64_t j = 2; j <= k_max; ++j) {
    std::map<GroupElement, GroupElement> seen;
    bool bad = false;
    std::optional<std::pair<GroupElement, GroupElement>> local;
    ball.for_each([&](const GroupElement& g) {
      if (bad) return;
      GroupElement p = d.power(g, j);
      auto [it, fresh] = seen.emplace(p, g);
      if (!fresh) {
        local = {it->second, g};
        bad = true;
      }
    });
    if (bad) {
      if (clash) *clash = local;
      return false;
    }
  }
  return true;
}

}  // namespace detail

/// Classifies every nu in the ball against S and reports the ones that are
/// k-centralizing for some 2 <= k <= k_max without being 1-centralizing;
/// those are the refutations. Elements with no centralizing exponent within
/// the bound are counted separately (they are outside the scope of the
/// question). The power-injectivity certificate runs alongside and must
/// agree: when it holds, any eventual-but-not-immediate find is a logic
/// error. Stops classifying after max_failures refutations.
inline ImmediateScanResult immediately_centralizing_scan(const SubgroupDescriptor& S,
                                                         const GroupDescriptor& d,
                                                         std::int64_t k_max, const Ball& ball,
                                                         std::size_t max_failures = 5) {
  ImmediateScanResult res;
  res.power_injective = detail::power_injective_on_ball(d, ball, k_max, nullptr);
  for (std::uint64_t i = 0; i < ball.size(); ++i) {
    GroupElement nu = ball.scan_at(i);
    ++res.elements_checked;
    CentralizingReport r = centralizing_class(S, d, nu, k_max, ball);
    switch (r.kind) {
      case CentralizingKind::kImmediate:
        ++res.immediate_count;
        break;
      case CentralizingKind::kNotWithinBound:
        ++res.outside_bound_count;
        break;
      case CentralizingKind::kEventual:
        if (res.power_injective)
          throw Error("power-injectivity certificate contradicts classification at " +
                      element_str(nu));
        res.failures.push_back(std::move(r));
        break;
    }
    if (res.failures.size() >= max_failures) break;
  }
  res.all_immediate = res.failures.empty();
  return res;
}

enum class MaximalityObstruction { kNone, kNonCommuting, kAsymmetricValue };

struct MaximalityWitness {
  GroupElement eta;  // candidate extension element outside S
  GroupElement s;    // member defeating it
  MaximalityObstruction how = MaximalityObstruction::kNone;
};

struct MaximalityScanResult {
  bool maximal = false;
  std::uint64_t candidates_checked = 0;
  std::vector<GroupElement> unobstructed;  // candidates no member defeats, capped
  std::vector<MaximalityWitness> sample_witnesses;  // first few, scan order
};

/// Per-candidate form: the first member (scan order) that either fails to
/// commute with eta or carries an asymmetric cocycle value against it.
inline std::optional<MaximalityWitness> maximality_witness_for(const SubgroupDescriptor& S,
                                                               const GroupDescriptor& d,
                                                               const CocycleDescriptor& c,
                                                               const GroupElement& eta,
                                                               const Ball& ball) {
  std::optional<MaximalityWitness> out;
  ball.scan_until([&](const GroupElement& s) {
    if (!S.contains(s)) return false;
    if (d.multiply(eta, s) != d.multiply(s, eta)) {
      out = MaximalityWitness{eta, s, MaximalityObstruction::kNonCommuting};
      return true;
    }
    if (c.eval(eta, s) != c.eval(s, eta)) {
      out = MaximalityWitness{eta, s, MaximalityObstruction::kAsymmetricValue};
      return true;
    }
    return false;
  });
  return out;
}

/// Every eta in the ball outside S must be defeated by some member: adding
/// eta would break either commutativity or cocycle-symmetry of the extended
/// set. An unobstructed eta refutes maximality (within this ball).
inline MaximalityScanResult maximality_scan(const SubgroupDescriptor& S, const GroupDescriptor& d,
                                            const CocycleDescriptor& c, const Ball& ball,
                                            std::size_t max_reported = 5) {
  MaximalityScanResult res;
  for (std::uint64_t i = 0; i < ball.size(); ++i) {
    GroupElement eta = ball.scan_at(i);
    if (S.contains(eta)) continue;
    ++res.candidates_checked;
    auto w = maximality_witness_for(S, d, c, eta, ball);
    if (!w) {
      if (res.unobstructed.size() < max_reported) res.unobstructed.push_back(eta);
    } else if (res.sample_witnesses.size() < max_reported) {
      res.sample_witnesses.push_back(*w);
    }
  }
  res.maximal = res.unobstructed.empty();
  return res;
}

struct EtaTResult {
  bool base_symmetric = false;      // c(s,eta) == c(eta,s)
  bool translates_symmetric = true;  // c(s, eta t) == c(eta t, s) for all members t
  std::uint64_t translates_checked = 0;
  std::optional<GroupElement> first_bad_t;
};

/// For eta commuting with a fixed member s, compares the symmetry statement
/// at eta itself with the same statement across all S-translates eta*t in
/// reach of the ball. Throws if eta and s do not commute.
inline EtaTResult eta_t_equivalence_check(const CocycleDescriptor& c, const GroupDescriptor& d,
                                          const SubgroupDescriptor& S, const GroupElement& s,
                                          const GroupElement& eta, const Ball& ball) {
  if (d.multiply(eta, s) != d.multiply(s, eta))
    throw Error("eta_t_equivalence_check requires eta commuting with s");
  EtaTResult res;
  res.base_symmetric = c.eval(s, eta) == c.eval(eta, s);
  ball.scan_until([&](const GroupElement& t) {
    if (!S.contains(t)) return false;
    GroupElement et = d.multiply(eta, t);
    ++res.translates_checked;
    if (c.eval(s, et) != c.eval(et, s)) {
      res.translates_symmetric = false;
      if (!res.first_bad_t) res.first_bad_t = t;
      return true;
    }
    return false;
  });
  return res;
}

/// Structural test that c is identically 1 on S x S, exact over the whole
/// subgroup (not just a ball): every aggregated twist weight at a coordinate
/// pair, scaled by both scalings, must land in Z. Box membership makes this
/// sufficient because member coordinates range over k*Z (or k * residues).
inline bool cocycle_trivial_on_subgroup(const CocycleDescriptor& c, const SubgroupDescriptor& S) {
  std::map<std::pair<std::size_t, std::size_t>, CircleElement> agg;
  for (const auto& t : c.terms()) {
    auto key = std::make_pair(t.left, t.right);
    auto it = agg.find(key);
    if (it == agg.end())
      agg.emplace(key, t.angle);
    else
      it->second = circle_mul(it->second, t.angle);
  }
  const auto& k = S.scalings();
  for (const auto& [key, angle] : agg) {
    auto [j, l] = key;
    if (k[j] == 0 || k[l] == 0) continue;
    if (!circle_pow(angle, BigInt(k[j]) * k[l]).is_identity()) return false;
  }
  return true;
}

}  // namespace cartan
