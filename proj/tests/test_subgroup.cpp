#include <catch2/catch_amalgamated.hpp>

#include "cartan/algebra.hpp"
#include "cartan/sampling.hpp"

using namespace cartan;

namespace {

GroupDescriptor rank5_free() {
  return GroupDescriptor({{false, 0}, {false, 0}, {false, 0}, {false, 0}, {false, 0}},
                         {{0, 4, 2, 2}, {1, 4, 3, 2}});
}

GroupDescriptor rank5_torsion() {
  return GroupDescriptor({{true, 4}, {true, 4}, {false, 0}, {false, 0}, {true, 4}},
                         {{0, 4, 2, 2}, {1, 4, 3, 2}});
}

CocycleDescriptor half_twist(const GroupDescriptor& d) {
  return CocycleDescriptor(d, {{3, 0, CircleElement::from_angle(Rational(1, 2))}});
}

}  // namespace

TEST_CASE("membership and coordinates") {
  auto d = rank5_free();
  SubgroupDescriptor S1(d, {1, 1, 1, 2, 0});
  CHECK(S1.contains(d.element({3, 1, 2, 4, 0})));
  CHECK(S1.coordinates(d.element({3, 1, 2, 4, 0})) ==
        (std::vector<std::int64_t>{3, 1, 2, 2}));
  CHECK(!S1.contains(d.element({0, 0, 0, 1, 0})));

  Ball b1(d, 1);
  SubgroupDescriptor S0(d, {1, 1, 0, 0, 1});
  CHECK(validate_subgroup(S0, d, b1).ok);

  // closure under product and inverse on sampled member pairs
  Ball b2(d, 2);
  auto members = collect_members(S1, b2);
  Rng rng(19);
  for (int i = 0; i < 300; ++i) {
    auto s = members[rng.below(members.size())];
    auto t = members[rng.below(members.size())];
    REQUIRE(S1.contains(d.multiply(s, t)));
    REQUIRE(S1.contains(d.inverse(s)));
  }

  // the all-ones subgroup is the whole group, which the twist makes nonabelian
  SubgroupDescriptor Sall(d, {1, 1, 1, 1, 1});
  CHECK(!validate_subgroup(Sall, d, b1).ok);
}

TEST_CASE("conjugation pinned values and normality") {
  auto d = rank5_free();
  auto dm = rank5_torsion();
  CHECK(dm.conjugate(dm.element({0, 0, 0, 0, 1}), dm.element({0, 0, 1, 0, 0})) ==
        dm.element({2, 0, 1, 0, 0}));
  CHECK(d.conjugate(d.element({0, 0, 0, 0, 1}), d.element({1, 0, 0, 0, 0})) ==
        d.element({1, 0, 0, 0, 0}));

  SubgroupDescriptor S0(d, {1, 1, 0, 0, 1});
  SubgroupDescriptor S1(d, {1, 1, 1, 2, 0});
  Ball b1(d, 1);
  ConjOracle oracle = [&](const GroupElement& g, const GroupElement& s) {
    Coords out = s.c;
    out[0] = s.c[0] - 2 * s.c[4] * g.c[2] + 2 * g.c[4] * s.c[2];
    out[1] = s.c[1] - 2 * s.c[4] * g.c[3] + 2 * g.c[4] * s.c[3];
    return d.element(std::move(out));
  };
  CHECK(is_normal(S0, d, b1, oracle).normal);
  CHECK(is_normal(S1, d, b1, oracle).normal);
  CHECK(is_normal(S0, d, b1).normal);

  SubgroupDescriptor Sbad(d, {0, 1, 1, 1, 1});
  auto nrb = is_normal(Sbad, d, b1);
  CHECK(!nrb.normal);
  REQUIRE(nrb.witness.has_value());
  CHECK(nrb.witness->first == d.element({0, 0, 0, 0, 1}));
  CHECK(nrb.witness->second == d.element({0, 0, 1, 0, 0}));
}

TEST_CASE("centralizing classification in the torsion quotient") {
  auto dm = rank5_torsion();
  SubgroupDescriptor Sm(dm, {1, 1, 1, 2, 2});
  Ball bm2(dm, 2);

  auto cr = centralizing_class(Sm, dm, dm.element({0, 0, 0, 0, 1}), 4, bm2);
  CHECK(cr.kind == CentralizingKind::kEventual);
  CHECK(cr.minimal_k == 2);
  REQUIRE(cr.witness_t.has_value());
  CHECK(*cr.witness_t == dm.element({0, 0, 1, 0, 0}));
  CHECK(cr.witness_exponent == 2);

  // shrinking the depth bound hides the squared-power escape entirely
  auto shallow = centralizing_class(Sm, dm, dm.element({0, 0, 0, 0, 1}), 1, bm2);
  CHECK(shallow.kind == CentralizingKind::kNotWithinBound);

  auto ism = immediately_centralizing_scan(Sm, dm, 4, bm2);
  CHECK(!ism.all_immediate);
  CHECK(!ism.power_injective);
  REQUIRE(!ism.failures.empty());
  CHECK(ism.failures[0].nu == dm.element({0, 0, 0, 0, 1}));
  CHECK(ism.failures[0].kind == CentralizingKind::kEventual);
  CHECK(ism.failures[0].minimal_k == 2);

  auto d = rank5_free();
  SubgroupDescriptor S0(d, {1, 1, 0, 0, 1});
  Ball b2(d, 2);
  auto is0 = immediately_centralizing_scan(S0, d, 4, b2);
  CHECK(is0.all_immediate);
  CHECK(is0.power_injective);
  CHECK(is0.immediate_count + is0.outside_bound_count == is0.elements_checked);
}

TEST_CASE("maximality witnesses") {
  auto d = rank5_free();
  auto c = half_twist(d);
  SubgroupDescriptor S0(d, {1, 1, 0, 0, 1});
  SubgroupDescriptor S1(d, {1, 1, 1, 2, 0});
  Ball b1(d, 1);
  Ball b2(d, 2);

  {
    auto w = maximality_witness_for(S1, d, c, d.element({0, 0, 0, 1, 0}), b2);
    REQUIRE(w.has_value());
    CHECK(w->s == d.element({1, 0, 0, 0, 0}));
    CHECK(w->how == MaximalityObstruction::kAsymmetricValue);
  }
  {
    auto w = maximality_witness_for(S0, d, c, d.element({0, 0, 1, 0, 0}), b2);
    REQUIRE(w.has_value());
    CHECK(w->s == d.element({0, 0, 0, 0, 1}));
    CHECK(w->how == MaximalityObstruction::kNonCommuting);
  }
  CHECK(maximality_scan(S0, d, c, b1).maximal);
  CHECK(maximality_scan(S1, d, c, b1).maximal);
}

TEST_CASE("translate symmetry agreement") {
  auto d = rank5_free();
  auto c = half_twist(d);
  SubgroupDescriptor S0(d, {1, 1, 0, 0, 1});
  Ball b2(d, 2);
  {
    auto r = eta_t_equivalence_check(c, d, S0, d.element({1, 0, 0, 0, 0}),
                                     d.element({0, 0, 1, 0, 0}), b2);
    CHECK(r.base_symmetric);
    CHECK(r.translates_symmetric);
  }
  auto dm = rank5_torsion();
  auto cm = half_twist(dm);
  SubgroupDescriptor Sm(dm, {1, 1, 1, 2, 2});
  Ball bm2(dm, 2);
  {
    auto r = eta_t_equivalence_check(cm, dm, Sm, dm.element({1, 0, 0, 0, 0}),
                                     dm.element({0, 0, 0, 1, 0}), bm2);
    CHECK(!r.base_symmetric);
    CHECK(!r.translates_symmetric);
  }
  // non-commuting inputs are rejected rather than silently classified
  CHECK_THROWS_AS(eta_t_equivalence_check(c, d, S0, d.element({0, 0, 1, 0, 0}),
                                          d.element({0, 0, 0, 0, 1}), b2),
                  Error);
}

TEST_CASE("four-step equivalence chain on commuting pairs") {
  auto d = rank5_free();
  auto c = half_twist(d);
  {
    auto r = equivalence_chain_check(c, d, d.element({0, 0, 1, 0, 0}),
                                     d.element({1, 0, 0, 0, 0}));
    CHECK(r.all());
  }
  CHECK_THROWS_AS(equivalence_chain_check(c, d, d.element({0, 0, 0, 0, 1}),
                                          d.element({0, 0, 1, 0, 0})),
                  Error);

  // sampled commuting pairs in both groups: the four step values always agree
  for (auto dd : {rank5_free(), rank5_torsion()}) {
    auto cc = half_twist(dd);
    Ball b2(dd, 2);
    Rng rng(29);
    int found = 0;
    while (found < 200) {
      auto a = sample_ball(b2, rng);
      auto b = sample_ball(b2, rng);
      if (dd.multiply(a, b) != dd.multiply(b, a)) continue;
      ++found;
      auto r = equivalence_chain_check(cc, dd, a, b);
      bool first = r.step[0];
      REQUIRE(r.step[1] == first);
      REQUIRE(r.step[2] == first);
      REQUIRE(r.step[3] == first);
    }
  }
}
