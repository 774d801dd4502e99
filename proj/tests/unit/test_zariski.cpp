#include <doctest.h>

#include <algorithm>
#include <random>

#include "noksurf/errors.hpp"
#include "noksurf/zariski.hpp"
#include "oracles.hpp"

using namespace noksurf;
using oracle::cls;
using oracle::diag;

namespace {

// Q = (1) + A2 lattice: two (-2)-curves meeting once, witness keeps them positive.
SurfaceModel a2_chain() {
  RatMatrix q = RatMatrix::from_rows({{1, 0, 0}, {0, -2, 1}, {0, 1, -2}});
  return SurfaceModel(q, {{"C1", {0, 1, 0}, true}, {"C2", {0, 0, 1}, true}}, cls({3, -1, -1}));
}

const std::vector<std::string> kE{"E"};

}  // namespace

TEST_CASE("decomposition of H + E on the one-point blow-up") {
  const auto m = oracle::plane_blowup();
  const auto z = zariski_decompose(m, cls({1, 1}), kE);
  CHECK(z.support == std::vector<std::string>{"E"});
  CHECK(z.coefficient("E") == Rat(1));
  CHECK(z.positive_part == cls({1, 0}));
  CHECK(z.negative_part(m) == cls({0, 1}));
  CHECK_NOTHROW(verify_zariski(m, cls({1, 1}), kE, z));
}

TEST_CASE("nef classes have empty negative part") {
  const auto m = oracle::plane_blowup();
  const auto z = zariski_decompose(m, cls({3, -1}), kE);
  CHECK(z.support.empty());
  CHECK(z.positive_part == cls({3, -1}));
  CHECK(z.coefficient("E") == Rat(0));
}

TEST_CASE("two-curve chain") {
  const auto m = a2_chain();
  const DivisorClass target = cls({1, 0, 0}) + Rat(2, 3) * cls({0, 1, 0}) + Rat(1, 3) * cls({0, 0, 1});
  REQUIRE(pair(m, target, m.curve_class("C1")) == Rat(-1));
  REQUIRE(pair(m, target, m.curve_class("C2")) == Rat(0));
  const std::vector<std::string> both{"C1", "C2"};
  const auto z = zariski_decompose(m, target, both);
  CHECK(z.coefficient("C1") == Rat(2, 3));
  CHECK(z.coefficient("C2") == Rat(1, 3));
  CHECK(z.positive_part == cls({1, 0, 0}));
  const std::vector<std::string> first{"C1"};
  const auto b = relative_negative_part(m, target, first);
  CHECK(b.at("C1") == Rat(1, 2));
  const auto full = relative_negative_part(m, target, z.support);
  CHECK(full.at("C1") == z.coefficient("C1"));
  CHECK(full.at("C2") == z.coefficient("C2"));
  CHECK(relative_negative_part(m, target, std::vector<std::string>{}).empty());
}

TEST_CASE("non pseudo-effective classes are rejected") {
  const auto m = oracle::plane_blowup();
  CHECK_THROWS_AS(zariski_decompose(m, cls({-1, 0}), kE), ModelError);
  CHECK_THROWS_AS(zariski_decompose(m, cls({0, -1}), kE), ModelError);
  CHECK_THROWS_AS(zariski_decompose(m, cls({1, 0}), std::vector<std::string>{"Z"}), InputError);
}

TEST_CASE("agrees with exhaustive subset search") {
  std::mt19937_64 rng(99);
  int decomposed = 0;
  for (int i = 0; i < 300; ++i) {
    const auto c = oracle::random_case(rng);
    const auto brute = oracle::brute_zariski(c.model, c.d, c.candidates);
    REQUIRE(brute);
    const auto z = zariski_decompose(c.model, c.d, c.candidates);
    CAPTURE(c.description);
    CHECK(z.support == brute->support);
    CHECK(z.positive_part == brute->positive);
    for (const auto& [label, a] : brute->coeffs) CHECK(z.coefficient(label) == a);
    if (!z.support.empty()) ++decomposed;
  }
  CHECK(decomposed > 20);
}

TEST_CASE("decomposition properties") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto c = oracle::random_case(rng);
    CAPTURE(c.description);
    const auto z = zariski_decompose(c.model, c.d, c.candidates);

    // P is nef against the candidates and orthogonal to the support
    for (const auto& label : c.candidates) {
      const Rat p = pair(c.model, z.positive_part, c.model.curve_class(label));
      CHECK(p >= Rat(0));
      if (std::find(z.support.begin(), z.support.end(), label) != z.support.end()) CHECK(p == Rat(0));
    }
    CHECK(is_negative_definite(c.model, z.support));

    // idempotent: P decomposes to itself
    const auto again = zariski_decompose(c.model, z.positive_part, c.candidates);
    CHECK(again.support.empty());
    CHECK(again.positive_part == z.positive_part);

    // the candidate order does not matter
    auto shuffled = c.candidates;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto z2 = zariski_decompose(c.model, c.d, shuffled);
    CHECK(z2.support == z.support);
    CHECK(z2.positive_part == z.positive_part);

    // relative parts over subsets of the support are bounded by the full coefficients
    if (z.support.size() >= 2) {
      const std::vector<std::string> sub(z.support.begin(), z.support.end() - 1);
      for (const auto& [label, b] : relative_negative_part(c.model, c.d, sub)) CHECK(b <= z.coefficient(label));
    }

    // adding an effective combination of the support only moves N
    DivisorClass bumped = c.d;
    for (const auto& label : z.support) bumped += c.model.curve_class(label);
    const auto zb = zariski_decompose(c.model, bumped, c.candidates);
    CHECK(zb.positive_part == z.positive_part);
  }
}
