#include <catch2/catch_amalgamated.hpp>

#include "cartan/sampling.hpp"
#include "cartan/weyl.hpp"

using namespace cartan;

namespace {

GroupDescriptor rank5_free() {
  return GroupDescriptor({{false, 0}, {false, 0}, {false, 0}, {false, 0}, {false, 0}},
                         {{0, 4, 2, 2}, {1, 4, 3, 2}});
}

CocycleDescriptor half_twist(const GroupDescriptor& d) {
  return CocycleDescriptor(d, {{3, 0, CircleElement::from_angle(Rational(1, 2))}});
}

CircleElement ang(long p, long q) { return CircleElement::from_angle(Rational(p, q)); }

}  // namespace

TEST_CASE("coset representatives and character evaluation") {
  auto d = rank5_free();
  SubgroupDescriptor S0(d, {1, 1, 0, 0, 1});
  SubgroupDescriptor S1(d, {1, 1, 1, 2, 0});

  CHECK(coset_rep(S1, d, d.element({5, -2, 7, 3, 4})) == d.element({0, 0, 0, 1, 4}));
  CHECK(coset_rep(S0, d, d.element({1, 2, 3, 4, 5})) == d.element({0, 0, 3, 4, 0}));
  CHECK(coset_rep(S1, d, d.element({3, 1, 2, 4, 0})) == d.identity());

  Character nu{{ang(1, 8), ang(1, 3), ang(0, 1), ang(0, 1)}};
  CHECK(char_eval(S1, nu, d.element({1, 1, 0, 2, 0})).str() == "11/24");
  CHECK(char_eval(S1, nu, d.identity()).is_identity());
  CHECK_NOTHROW(validate_character(S1, d, nu));

  // characters are multiplicative on sampled member pairs
  Ball b2(d, 2);
  auto members = collect_members(S1, b2);
  Rng rng(43);
  for (int i = 0; i < 200; ++i) {
    auto s = members[rng.below(members.size())];
    auto t = members[rng.below(members.size())];
    REQUIRE(char_eval(S1, nu, d.multiply(s, t)) ==
            circle_mul(char_eval(S1, nu, s), char_eval(S1, nu, t)));
  }
}

TEST_CASE("transversal validation rejects a corrupted representative map") {
  auto d = rank5_free();
  SubgroupDescriptor S1(d, {1, 1, 1, 2, 0});
  Ball b2(d, 2);
  CHECK(validate_transversal(S1, d, b2, 300, 9).ok);
  RepFn broken = [&](const GroupElement& g) {
    Coords out(g.c.size());
    const auto& k = S1.scalings();
    for (std::size_t i = 0; i < g.c.size(); ++i)
      out[i] = (i != 3 && k[i] >= 1) ? detail::mod_residue(g.c[i], k[i]) : g.c[i];
    return d.element(std::move(out));
  };
  CHECK(!validate_transversal(S1, d, b2, 300, 9, broken).ok);
}

TEST_CASE("induced character action pinned values") {
  auto d = rank5_free();
  auto c = half_twist(d);
  SubgroupDescriptor S0(d, {1, 1, 0, 0, 1});
  SubgroupDescriptor S2(d, {2, 1, 1, 1, 0});
  {
    Character nu{{ang(1, 8), ang(1, 3), ang(0, 1)}};
    auto out = weyl_action(S0, d, c, d.element({0, 0, 1, 1, 0}), nu);
    CHECK(character_str(out) == "(5/8,1/3,11/12)");
    CHECK(weyl_action(S0, d, c, d.element({2, -1, 0, 0, 3}), nu) == nu);
  }
  {
    Character nu{{ang(1, 8), ang(1, 3), ang(0, 1), ang(0, 1)}};
    auto out = weyl_action(S2, d, c, d.element({1, 0, 0, 0, 1}), nu);
    CHECK(out.angles[0].str() == "1/8");
    CHECK(out.angles[1].str() == "1/3");
    CHECK(out.angles[2].str() == "7/8");
    CHECK(out.angles[3].str() == "5/6");
  }
  // the action refuses subgroups where the twist does not vanish
  SubgroupDescriptor Sall(d, {1, 1, 1, 1, 1});
  Character flat{{ang(0, 1), ang(0, 1), ang(0, 1), ang(0, 1), ang(0, 1)}};
  CHECK_THROWS_AS(weyl_action(Sall, d, c, d.identity(), flat), Error);
}

TEST_CASE("action law, representative independence, and cocycle identity") {
  auto d = rank5_free();
  auto c = half_twist(d);
  SubgroupDescriptor S1(d, {1, 1, 1, 2, 0});
  Ball b2(d, 2);
  Rng rng(31);
  for (int i = 0; i < 500; ++i) {
    auto nu = sample_character(S1, d, rng);
    auto g = sample_ball(b2, rng);
    auto h = sample_ball(b2, rng);
    REQUIRE(weyl_action(S1, d, c, g, weyl_action(S1, d, c, h, nu)) ==
            weyl_action(S1, d, c, d.multiply(g, h), nu));
    auto s = d.element({1, -2, 3, 2, 0});
    REQUIRE(weyl_action(S1, d, c, d.multiply(s, g), nu) == weyl_action(S1, d, c, g, nu));
  }
  SubgroupDescriptor S2(d, {2, 1, 1, 1, 0});
  for (int i = 0; i < 200; ++i) {
    auto g = sample_ball(b2, rng);
    auto h = sample_ball(b2, rng);
    auto k = sample_ball(b2, rng);
    auto nu1 = sample_character(S1, d, rng);
    REQUIRE(sigma_cocycle_identity_check(S1, d, c, g, h, k, nu1).holds);
    auto nu2 = sample_character(S2, d, rng);
    REQUIRE(sigma_cocycle_identity_check(S2, d, c, g, h, k, nu2).holds);
  }
  auto nu = sample_character(S1, d, rng);
  CHECK(sigma_cocycle_identity_check(S1, d, c, d.identity(), d.identity(), d.identity(), nu)
            .holds);
}

TEST_CASE("descent cocycle pinned values and normalization") {
  auto d = rank5_free();
  auto c = half_twist(d);
  SubgroupDescriptor S0(d, {1, 1, 0, 0, 1});
  SubgroupDescriptor S1(d, {1, 1, 1, 2, 0});
  SubgroupDescriptor S2(d, {2, 1, 1, 1, 0});
  {
    Character nu{{ang(0, 1), ang(1, 3), ang(0, 1), ang(0, 1)}};
    CHECK(weyl_cocycle(S1, d, c, d.element({0, 0, 0, 0, 1}), d.element({0, 0, 0, 1, 0}), nu)
              .str() == "2/3");
  }
  {
    Character nu{{ang(1, 4), ang(0, 1), ang(0, 1), ang(0, 1)}};
    CHECK(weyl_cocycle(S2, d, c, d.element({1, 0, 0, 0, 0}), d.element({1, 0, 0, 0, 0}), nu)
              .str() == "1/4");
  }
  Rng rng(21);
  Ball b2(d, 2);
  for (int i = 0; i < 100; ++i) {
    auto nu0 = sample_character(S0, d, rng);
    auto g = sample_ball(b2, rng);
    auto h = sample_ball(b2, rng);
    REQUIRE(weyl_cocycle(S0, d, c, g, h, nu0).is_identity());
    REQUIRE(weyl_cocycle(S1, d, c, g, d.identity(), sample_character(S1, d, rng))
                .is_identity());
    REQUIRE(weyl_cocycle(S1, d, c, d.identity(), h, sample_character(S1, d, rng))
                .is_identity());
  }
}

TEST_CASE("rotation family acts by fifth translations with trivial descent") {
  GroupDescriptor z2({{false, 0}, {false, 0}}, {});
  CocycleDescriptor rot(z2, {{1, 0, ang(1, 5)}});
  SubgroupDescriptor Sr(z2, {0, 1});
  Ball br(z2, 3);
  Character nu{{ang(1, 3)}};
  for (long n = -3; n <= 3; ++n) {
    auto out = weyl_action(Sr, z2, rot, z2.element({n, 7}), nu);
    CHECK(out.angles[0] == circle_mul(nu.angles[0], circle_pow(ang(1, 5), BigInt(n))));
  }
  Rng rng(41);
  for (int i = 0; i < 100; ++i) {
    auto g = sample_ball(br, rng);
    auto h = sample_ball(br, rng);
    REQUIRE(weyl_cocycle(Sr, z2, rot, g, h, nu).is_identity());
  }
  auto fr = freeness_scan(Sr, z2, rot, br, 10, 7);
  CHECK(fr.every_class_moves_some_character);
  CHECK(fr.classes_checked == 6);
}

TEST_CASE("every nontrivial class moves some character") {
  auto d = rank5_free();
  auto c = half_twist(d);
  SubgroupDescriptor S1(d, {1, 1, 1, 2, 0});
  SubgroupDescriptor S2(d, {2, 1, 1, 1, 0});
  Ball b2(d, 2);
  CHECK(freeness_scan(S1, d, c, b2, 20, 3).every_class_moves_some_character);
  CHECK(freeness_scan(S2, d, c, b2, 20, 3).every_class_moves_some_character);
}

TEST_CASE("arrow composition in the action groupoid") {
  auto d = rank5_free();
  auto c = half_twist(d);
  SubgroupDescriptor S0(d, {1, 1, 0, 0, 1});
  Character nu{{ang(1, 8), ang(1, 3), ang(0, 1)}};
  WeylArrow inner{{d.element({0, 0, 0, 1, 0})}, nu};
  WeylArrow outer{{d.element({0, 0, 1, 0, 0})}, arrow_range(S0, d, c, inner)};
  auto comp = compose_arrows(S0, d, c, outer, inner);
  CHECK(comp.cls.rep == d.element({0, 0, 1, 1, 0}));
  CHECK(comp.source == nu);

  WeylArrow unit{{d.identity()}, arrow_range(S0, d, c, inner)};
  auto comp2 = compose_arrows(S0, d, c, unit, inner);
  CHECK(comp2.cls.rep == inner.cls.rep);
  CHECK(comp2.source == nu);

  WeylArrow bad{{d.element({0, 0, 1, 0, 0})}, nu};
  CHECK_THROWS_AS(compose_arrows(S0, d, c, bad, inner), Error);
}
