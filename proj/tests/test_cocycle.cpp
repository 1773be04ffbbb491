#include <catch2/catch_amalgamated.hpp>

#include "cartan/sampling.hpp"
#include "cartan/subgroup.hpp"

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

TEST_CASE("bilinear evaluation pinned values") {
  auto d = rank5_free();
  auto c = half_twist(d);
  CHECK(c.eval(d.element({0, 0, 0, 1, 0}), d.element({1, 0, 0, 0, 0})).str() == "1/2");
  CHECK(c.eval(d.element({1, 0, 0, 0, 0}), d.element({0, 0, 0, 1, 0})).is_identity());

  GroupDescriptor z2({{false, 0}, {false, 0}}, {});
  CocycleDescriptor rot(z2, {{1, 0, CircleElement::from_angle(Rational(1, 5))}});
  CHECK(rot.eval(z2.element({0, 1}), z2.element({1, 0})).str() == "1/5");
  CHECK(rot.eval(z2.element({1, 0}), z2.element({0, 1})).is_identity());
}

TEST_CASE("cocycle identity holds on sampled triples") {
  for (auto d : {rank5_free(), rank5_torsion()}) {
    auto c = half_twist(d);
    Ball b2(d, 2);
    Rng rng(13);
    for (int i = 0; i < 500; ++i) {
      auto g = sample_ball(b2, rng);
      auto h = sample_ball(b2, rng);
      auto k = sample_ball(b2, rng);
      auto lhs = circle_mul(c.eval(g, d.multiply(h, k)), c.eval(h, k));
      auto rhs = circle_mul(c.eval(d.multiply(g, h), k), c.eval(g, h));
      REQUIRE(lhs == rhs);
      REQUIRE(c.eval(g, d.identity()).is_identity());
      REQUIRE(c.eval(d.identity(), g).is_identity());
      // unconditionally symmetric against the inverse
      REQUIRE(c.eval(g, d.inverse(g)) == c.eval(d.inverse(g), g));
    }
  }
}

TEST_CASE("validation accepts the shipped twists and rejects a broken one") {
  auto d = rank5_free();
  Ball b2(d, 2);
  auto vrep = validate_cocycle(half_twist(d), d, b2, {200, 3, 5});
  CHECK(vrep.ok);

  // angle 1/3 paired against a twisted coordinate breaks the identity
  CocycleDescriptor badc(d, {{0, 2, CircleElement::from_angle(Rational(1, 3))}});
  auto vbad = validate_cocycle(badc, d, b2, {200, 3, 5});
  CHECK(!vbad.ok);
  {
    auto g = d.element({0, 0, 0, 0, 1});
    auto h = d.element({0, 0, 1, 0, 0});
    auto lhs = circle_mul(badc.eval(g, d.multiply(h, h)), badc.eval(h, h));
    auto rhs = circle_mul(badc.eval(d.multiply(g, h), h), badc.eval(g, h));
    CHECK(lhs != rhs);
  }

  // half-angle survives the same pairing because opposite signs cancel mod 1
  CocycleDescriptor c53(d, {{4, 2, CircleElement::from_angle(Rational(1, 2))}});
  auto v53 = validate_cocycle(c53, d, b2, {200, 3, 5});
  CHECK(v53.ok);

  CHECK(check_inverse_symmetry(half_twist(d), d, b2));
}

TEST_CASE("symmetry scan finds the first asymmetric pair on the full group") {
  auto d = rank5_free();
  auto c = half_twist(d);
  Ball b1(d, 1);
  auto sym = is_symmetric_on(c, b1, [](const GroupElement&) { return true; });
  CHECK(!sym.holds);
  REQUIRE(sym.witness.has_value());
  CHECK(sym.witness->first == d.element({0, 0, 0, 1, 0}));
  CHECK(sym.witness->second == d.element({1, 0, 0, 0, 0}));

  // restricted to the subgroup that omits both twisted-pair coordinates the
  // scan sees only identity values
  SubgroupDescriptor S0(d, {1, 1, 0, 0, 1});
  auto triv = is_trivial_on(c, b1, [&](const GroupElement& g) { return S0.contains(g); });
  CHECK(triv.holds);
  auto all = is_trivial_on(c, b1, [](const GroupElement&) { return true; });
  CHECK(!all.holds);
}

TEST_CASE("structural triviality matches the subgroup scalings") {
  auto d = rank5_free();
  auto c = half_twist(d);
  SubgroupDescriptor S0(d, {1, 1, 0, 0, 1});
  SubgroupDescriptor S1(d, {1, 1, 1, 2, 0});
  SubgroupDescriptor S2(d, {2, 1, 1, 1, 0});
  SubgroupDescriptor Sall(d, {1, 1, 1, 1, 1});
  CHECK(cocycle_trivial_on_subgroup(c, S0));
  CHECK(cocycle_trivial_on_subgroup(c, S1));
  CHECK(cocycle_trivial_on_subgroup(c, S2));
  CHECK(!cocycle_trivial_on_subgroup(c, Sall));
}
