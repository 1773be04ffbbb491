#include <catch2/catch_amalgamated.hpp>

#include "cartan/group.hpp"
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

}  // namespace

TEST_CASE("multiplication and inversion pinned values") {
  auto d = rank5_free();
  CHECK(d.multiply(d.element({0, 0, 0, 0, 1}), d.element({0, 0, 1, 0, 0})) ==
        d.element({2, 0, 1, 0, 1}));
  CHECK(d.inverse(d.element({1, 1, 1, 1, 1})) == d.element({1, 1, -1, -1, -1}));
  CHECK(d.power(d.element({0, 0, 1, 0, 1}), 2) == d.element({2, 0, 2, 0, 2}));
  CHECK(d.power(d.element({1, 0, 0, 0, 0}), 3) == d.element({3, 0, 0, 0, 0}));

  auto dm = rank5_torsion();
  CHECK(dm.multiply(dm.element({1, 0, 0, 0, 1}), dm.element({0, 0, 1, 0, 0})) ==
        dm.element({3, 0, 1, 0, 1}));
  CHECK(dm.inverse(dm.element({1, 0, 1, 0, 1})) == dm.element({1, 0, -1, 0, 3}));
  CHECK(dm.element({5, -1, 0, 0, 7}) == dm.element({1, 3, 0, 0, 3}));
}

TEST_CASE("group axioms on sampled elements") {
  for (auto d : {rank5_free(), rank5_torsion()}) {
    Ball b2(d, 2);
    Rng rng(17);
    for (int i = 0; i < 300; ++i) {
      auto a = sample_ball(b2, rng);
      auto b = sample_ball(b2, rng);
      auto c = sample_ball(b2, rng);
      REQUIRE(d.multiply(d.multiply(a, b), c) == d.multiply(a, d.multiply(b, c)));
      REQUIRE(d.multiply(a, d.identity()) == a);
      REQUIRE(d.multiply(d.identity(), a) == a);
      REQUIRE(d.multiply(a, d.inverse(a)) == d.identity());
      REQUIRE(d.inverse(d.multiply(a, b)) == d.multiply(d.inverse(b), d.inverse(a)));
    }
  }
}

TEST_CASE("powers follow the quadratic closed form") {
  // with the two twist terms, the j-th power shifts the first two coordinates
  // by j(j-1) * g5 * (g3 resp. g4)
  auto d = rank5_free();
  Ball b2(d, 2);
  b2.for_each([&](const GroupElement& g) {
    for (long j = 0; j <= 5; ++j) {
      Coords want{j * g.c[0] + j * (j - 1) * g.c[4] * g.c[2],
                  j * g.c[1] + j * (j - 1) * g.c[4] * g.c[3],
                  j * g.c[2], j * g.c[3], j * g.c[4]};
      REQUIRE(d.power(g, j) == d.element(std::move(want)));
    }
  });
}

TEST_CASE("power map is additive in the exponent") {
  for (auto d : {rank5_free(), rank5_torsion()}) {
    Ball b2(d, 2);
    Rng rng(23);
    for (int i = 0; i < 200; ++i) {
      auto g = sample_ball(b2, rng);
      long j = static_cast<long>(rng.below(13)) - 6;
      long k = static_cast<long>(rng.below(13)) - 6;
      REQUIRE(d.multiply(d.power(g, j), d.power(g, k)) == d.power(g, j + k));
    }
  }
}

TEST_CASE("ball sizes and scan order") {
  auto d = rank5_free();
  Ball b1(d, 1);
  CHECK(b1.size() == 243);

  auto dm = rank5_torsion();
  Ball bm1(dm, 1);
  CHECK(bm1.size() == 576);

  GroupDescriptor z2({{false, 0}, {false, 0}}, {});
  Ball bz0(z2, 0);
  CHECK(bz0.size() == 1);

  // zig-zag scan: last coordinate varies fastest, 0, 1, -1, 2, ...
  CHECK(bm1.scan_at(0) == dm.element({0, 0, 0, 0, 0}));
  CHECK(bm1.scan_at(1) == dm.element({0, 0, 0, 0, 1}));
  CHECK(bm1.scan_at(2) == dm.element({0, 0, 0, 0, 3}));
  CHECK(bm1.scan_at(3) == dm.element({0, 0, 0, 0, 2}));
  CHECK(bm1.scan_at(4) == dm.element({0, 0, 0, 1, 0}));

  for (std::size_t i = 0; i < b1.size(); i += 37) {
    CHECK(b1.contains(b1.at(i)));
    CHECK(b1.contains(b1.scan_at(i)));
  }
  std::size_t seen = 0;
  b1.for_each([&](const GroupElement& g) {
    REQUIRE(b1.at(seen) == g);
    ++seen;
  });
  CHECK(seen == b1.size());
}

TEST_CASE("descriptor validation flags non-triangular twists") {
  auto d = rank5_free();
  Ball b1(d, 1);
  auto rep = validate_descriptor(d, b1, {200, 7, 5});
  CHECK(rep.ok);
  CHECK(rep.triangular);

  GroupDescriptor bad({{false, 0}, {false, 0}, {false, 0}}, {{1, 1, 2, 1}});
  Ball bb(bad, 1);
  auto rep2 = validate_descriptor(bad, bb, {50, 7, 5});
  CHECK(!rep2.ok);
  CHECK(!rep2.triangular);
  CHECK(!rep2.violations.empty());
}
