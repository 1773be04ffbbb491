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

TEST_CASE("point mass products pick up the twist sign") {
  auto d = rank5_free();
  auto c = half_twist(d);
  auto p = convolve(d, c, alg_delta(d.element({0, 0, 0, 1, 0})),
                    alg_delta(d.element({1, 0, 0, 0, 0})));
  CHECK(p.support_size() == 1);
  auto z = p.at(d.element({1, 0, 0, 1, 0}));
  CHECK(z.is_rational());
  CHECK(z.rational_part() == Rational(-1));
  CHECK(alg_str(p) == "(-1)*delta(1,0,0,1,0)");
  CHECK(alg_str(AlgebraElement(4)) == "0");

  // reversed order carries no twist
  auto q = convolve(d, c, alg_delta(d.element({1, 0, 0, 0, 0})),
                    alg_delta(d.element({0, 0, 0, 1, 0})));
  CHECK(q.at(d.element({1, 0, 0, 1, 0})).rational_part() == Rational(1));
}

TEST_CASE("adjoint of a two-point element in the torsion quotient") {
  auto dm = rank5_torsion();
  auto cm = half_twist(dm);
  auto h = alg_add(alg_delta(dm.element({0, 0, 0, 0, 1})),
                   alg_delta(dm.element({2, 0, 0, 0, 1})));
  auto hs = adjoint(dm, cm, h);
  CHECK(hs.support_size() == 2);
  CHECK(hs.at(dm.element({0, 0, 0, 0, 3})).rational_part() == Rational(1));
  CHECK(hs.at(dm.element({2, 0, 0, 0, 3})).rational_part() == Rational(1));
}

TEST_CASE("conjugation by a point mass matches its closed form") {
  auto d = rank5_free();
  auto c = half_twist(d);
  {
    auto g = d.element({0, 0, 0, 0, 1});
    auto s = d.element({1, 0, 0, 0, 0});
    auto [u, t] = closed_form_delta_conj(d, c, g, s);
    CHECK(u.is_identity());
    CHECK(t == d.element({1, 0, 0, 0, 0}));
    auto full = conj_by_delta(d, c, g, alg_delta(s));
    REQUIRE(full.support_size() == 1);
    auto w = full.at(t);
    CHECK(cyc_eq(w, cyc_from_circle(u, w.conductor())));
  }
  auto dm = rank5_torsion();
  auto cm = half_twist(dm);
  {
    auto g = dm.element({0, 0, 0, 0, 1});
    auto s = dm.element({0, 0, 1, 0, 0});
    auto [u, t] = closed_form_delta_conj(dm, cm, g, s);
    CHECK(u.is_identity());
    CHECK(t == dm.element({2, 0, 1, 0, 0}));
    auto full = conj_by_delta(dm, cm, g, alg_delta(s));
    REQUIRE(full.support_size() == 1);
    CHECK(cyc_eq(full.at(t), Cyclotomic::one(full.conductor())));
  }
  // sampled pairs: the closed form and the convolution path agree
  Ball b1(d, 1);
  auto pts = collect_ball(b1);
  Rng rng(37);
  for (int i = 0; i < 200; ++i) {
    auto g = pts[rng.below(pts.size())];
    auto s = pts[rng.below(pts.size())];
    auto [u, t] = closed_form_delta_conj(d, c, g, s);
    auto full = conj_by_delta(d, c, g, alg_delta(s));
    REQUIRE(full.support_size() == 1);
    auto w = full.at(t);
    REQUIRE(cyc_eq(w, cyc_from_circle(u, w.conductor())));
  }
}

TEST_CASE("ring and star laws on sampled elements") {
  auto d = rank5_free();
  auto c = half_twist(d);
  auto dm = rank5_torsion();
  auto cm = half_twist(dm);
  Ball b1(d, 1);
  Ball bm1(dm, 1);
  auto pts5 = collect_ball(b1);
  auto ptsm = collect_ball(bm1);
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    auto f = sample_supported_on(pts5, rng, 4);
    auto g = sample_supported_on(pts5, rng, 4);
    auto k = sample_supported_on(pts5, rng, 4);
    REQUIRE(alg_eq(convolve(d, c, convolve(d, c, f, g), k),
                   convolve(d, c, f, convolve(d, c, g, k))));
    REQUIRE(alg_eq(adjoint(d, c, convolve(d, c, f, g)),
                   convolve(d, c, adjoint(d, c, g), adjoint(d, c, f))));
    REQUIRE(alg_eq(adjoint(d, c, adjoint(d, c, f)), f));
    auto de = alg_delta(d.identity(), 4);
    REQUIRE(alg_eq(convolve(d, c, de, f), f));
    REQUIRE(alg_eq(convolve(d, c, f, de), f));

    auto fm = sample_supported_on(ptsm, rng, 4);
    auto gm = sample_supported_on(ptsm, rng, 4);
    auto km = sample_supported_on(ptsm, rng, 4);
    REQUIRE(alg_eq(convolve(dm, cm, convolve(dm, cm, fm, gm), km),
                   convolve(dm, cm, fm, convolve(dm, cm, gm, km))));
    REQUIRE(alg_eq(adjoint(dm, cm, adjoint(dm, cm, fm)), fm));
  }
}

TEST_CASE("dropping the cocycle from the adjoint breaks anti-multiplicativity") {
  auto d = rank5_free();
  auto c = half_twist(d);
  auto wrong_adjoint = [&](const AlgebraElement& f) {
    AlgebraElement out(f.conductor());
    for (const auto& [g, z] : f.terms()) out.accumulate(d.inverse(g), cyc_conj(z));
    return out;
  };
  auto f = alg_delta(d.element({0, 0, 0, 1, 0}));
  auto g = alg_delta(d.element({1, 0, 0, 0, 0}));
  auto prod = convolve(d, c, f, g);
  CHECK(!alg_eq(wrong_adjoint(prod), convolve(d, c, wrong_adjoint(g), wrong_adjoint(f))));
  CHECK(alg_eq(adjoint(d, c, prod), convolve(d, c, adjoint(d, c, g), adjoint(d, c, f))));
}

TEST_CASE("pairing against the adjoint is faithful") {
  auto d = rank5_free();
  auto c = half_twist(d);
  auto f = alg_add(alg_delta(d.element({1, 0, 0, 0, 0}), 4),
                   alg_scale(Cyclotomic::root(4, 1), alg_delta(d.element({0, 0, 0, 1, 0}), 4)));
  auto r = faithfulness_identity(d, c, f);
  CHECK(r.equal);
  CHECK(r.lhs.is_rational());
  CHECK(r.lhs.rational_part() == Rational(2));

  Ball b1(d, 1);
  auto pts = collect_ball(b1);
  Rng rng(41);
  for (int i = 0; i < 100; ++i) {
    auto h = sample_supported_on(pts, rng, 3);
    auto rr = faithfulness_identity(d, c, h);
    REQUIRE(rr.equal);
    if (!h.is_zero()) {
      REQUIRE(rr.lhs.is_rational());
      REQUIRE(rr.lhs.rational_part() > Rational(0));
    }
  }
}

TEST_CASE("commutant scans and the conditional expectation") {
  auto d = rank5_free();
  auto c = half_twist(d);
  SubgroupDescriptor S0(d, {1, 1, 0, 0, 1});
  Ball b1(d, 1);
  {
    auto r = commutant_scan(d, c, alg_delta(d.element({0, 0, 0, 1, 0})), S0, b1);
    CHECK(!r.commutes_with_all);
    CHECK(r.witness_s == d.element({0, 0, 0, 0, 1}));
    REQUIRE(r.commutator.support_size() == 2);
    CHECK(r.commutator.at(d.element({0, 0, 0, 1, 1})).rational_part() == Rational(1));
    CHECK(r.commutator.at(d.element({0, 2, 0, 1, 1})).rational_part() == Rational(-1));
  }
  auto dm = rank5_torsion();
  auto cm = half_twist(dm);
  SubgroupDescriptor Sm(dm, {1, 1, 1, 2, 2});
  Ball bm2(dm, 2);
  auto h = alg_add(alg_delta(dm.element({0, 0, 0, 0, 1})),
                   alg_delta(dm.element({2, 0, 0, 0, 1})));
  {
    auto r = commutant_scan(dm, cm, h, Sm, bm2);
    CHECK(r.commutes_with_all);
    CHECK(cond_expect(Sm, h).is_zero());
    CHECK(commutant_covariance_check(dm, cm, h, dm.element({0, 0, 1, 0, 0})).holds);
    CHECK(commutant_covariance_check(dm, cm, h, dm.element({1, 0, 0, 2, 2})).holds);
  }
}

TEST_CASE("conditional expectation is an S-bimodule map") {
  auto d = rank5_free();
  auto c = half_twist(d);
  SubgroupDescriptor S0(d, {1, 1, 0, 0, 1});
  Ball b1(d, 1);
  auto pts = collect_ball(b1);
  auto members = collect_members(S0, b1);
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    auto bl = sample_supported_on(members, rng, 4);
    auto br = sample_supported_on(members, rng, 4);
    auto f = sample_supported_on(pts, rng, 4);
    auto lhs = cond_expect(S0, convolve(d, c, convolve(d, c, bl, f), br));
    auto rhs = convolve(d, c, convolve(d, c, bl, cond_expect(S0, f)), br);
    REQUIRE(alg_eq(lhs, rhs));
    // idempotent and identity on members
    REQUIRE(alg_eq(cond_expect(S0, cond_expect(S0, f)), cond_expect(S0, f)));
    REQUIRE(alg_eq(cond_expect(S0, bl), bl));
  }
}

TEST_CASE("mixed conductors promote to their lcm") {
  auto d = rank5_free();
  auto c = half_twist(d);
  auto f = alg_scale(Cyclotomic::root(4, 1), alg_delta(d.element({1, 0, 0, 0, 0}), 4));
  auto g = alg_scale(Cyclotomic::root(3, 1), alg_delta(d.element({0, 1, 0, 0, 0}), 3));
  auto p = convolve(d, c, f, g);
  CHECK(p.conductor() == 12);
  auto z = p.at(d.element({1, 1, 0, 0, 0}));
  CHECK(cyc_eq(z, cyc_mul(Cyclotomic::root(12, 3), Cyclotomic::root(12, 4))));
}
