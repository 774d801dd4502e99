#include <doctest.h>

#include <random>

#include "noksurf/errors.hpp"
#include "noksurf/toric.hpp"
#include "oracles.hpp"

using namespace noksurf;

namespace {

ToricFan p2() { return ToricFan{{{1, 0}, {0, 1}, {-1, -1}}}; }
ToricFan hirzebruch(long a) { return ToricFan{{{1, 0}, {0, 1}, {-1, a}, {0, -1}}}; }
ToricFan dp6() { return ToricFan{{{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}}}; }

std::vector<std::string> printed(const std::vector<RatPoint>& pts) {
  std::vector<std::string> out;
  for (const auto& p : pts) out.push_back(point_to_string(p));
  return out;
}

using Strings = std::vector<std::string>;

}  // namespace

TEST_CASE("fan validation") {
  CHECK_NOTHROW(p2().validate());
  CHECK_NOTHROW(dp6().validate());
  CHECK_THROWS_AS((ToricFan{{{1, 0}, {0, 1}}}.validate()), InputError);
  CHECK_THROWS_AS((ToricFan{{{1, 0}, {1, 2}, {-1, -1}}}.validate()), InputError);          // det 2
  CHECK_THROWS_AS((ToricFan{{{2, 0}, {0, 1}, {-1, -1}}}.validate()), InputError);          // not primitive
  CHECK_THROWS_AS((ToricFan{{{1, 0}, {-1, -1}, {0, 1}}}.validate()), InputError);          // clockwise
  // winds twice: each consecutive pair unimodular
  CHECK_THROWS_AS((ToricFan{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 0}, {0, 1}, {-1, 0}, {0, -1}}}.validate()),
                  InputError);
}

TEST_CASE("toric intersection numbers") {
  for (std::size_t i = 0; i < 3; ++i) CHECK(p2().self_intersection_number(i) == -1);  // D_i^2 = 1
  for (long a = 0; a <= 3; ++a) {
    const auto f = hirzebruch(a);
    CHECK(f.intersection(1, 1) == -a);
    CHECK(f.intersection(3, 3) == a);
    CHECK(f.intersection(0, 0) == 0);
    CHECK(f.intersection(0, 1) == 1);
    CHECK(f.intersection(0, 2) == 0);
  }
  for (std::size_t i = 0; i < 6; ++i) CHECK(dp6().intersection(i, i) == -1);
}

TEST_CASE("lattice models of toric surfaces") {
  const auto m = fan_to_model(p2());
  CHECK(m.model.rank() == 1);
  CHECK(m.labels == Strings{"D1", "D2", "D3"});
  for (const auto& c : m.classes) CHECK(c == std::vector<Integer>{1});
  CHECK(self_intersection(m.model, m.model.curve_class("D1")) == Rat(1));

  const auto f0 = fan_to_model(hirzebruch(0));
  CHECK(f0.model.rank() == 2);
  CHECK(self_intersection(f0.model, f0.model.curve_class("D1")) == Rat(0));
  CHECK(self_intersection(f0.model, f0.model.curve_class("D2")) == Rat(0));
  CHECK(pair(f0.model, f0.model.curve_class("D1"), f0.model.curve_class("D2")) == Rat(1));
  CHECK(inertia(f0.model.form()) == Inertia{1, 1, 0});

  const auto f2 = fan_to_model(hirzebruch(2));
  CHECK(self_intersection(f2.model, f2.model.curve_class("D2")) == Rat(-2));

  const auto d6 = fan_to_model(dp6());
  CHECK(d6.model.rank() == 4);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      CHECK(pair(d6.model, d6.model.curve_class(i), d6.model.curve_class(j)) == Rat(dp6().intersection(i, j)));
}

TEST_CASE("Newton polygons") {
  for (long d = 1; d <= 3; ++d) {
    const auto poly = newton_polygon(p2(), ToricDivisor{{0, 0, d}});
    const auto ds = std::to_string(d);
    CHECK(printed(poly.vertices) == Strings{"(0,0)", "(" + ds + ",0)", "(0," + ds + ")"});
    CHECK(poly.edge_lengths == std::vector<Rat>{Rat(d), Rat(d), Rat(d)});
  }
  const auto point = newton_polygon(p2(), ToricDivisor{{0, 0, 0}});
  CHECK(printed(point.vertices) == Strings{"(0,0)"});

  // F_1 with D = D_3 + 2 D_4: a trapezoid
  const auto f1 = hirzebruch(1);
  const ToricDivisor div{{0, 0, 1, 2}};
  const auto trap = newton_polygon(f1, div);
  CHECK(trap.vertices.size() == 4);
  const auto model = fan_to_model(f1);
  const DivisorClass cls = model.divisor_class(div);
  for (std::size_t i = 0; i < 4; ++i) CHECK(trap.edge_lengths[i] == pair(model.model, cls, model.model.curve_class(i)));

  CHECK_THROWS_AS(newton_polygon(hirzebruch(0), ToricDivisor{{1, 0, 0, 0}}), DegenerateInput);  // segment
  CHECK_THROWS_AS(newton_polygon(hirzebruch(2), ToricDivisor{{0, 1, 0, 0}}), DegenerateInput);  // not nef
}

TEST_CASE("monomial maps") {
  const ToricDivisor div{{0, 0, 3}};
  const auto id = monomial_okounkov(p2(), div, 1);
  CHECK(printed(id.vertices) == Strings{"(0,0)", "(3,0)", "(0,3)"});
  const auto third = monomial_okounkov(p2(), div, 3);
  CHECK(printed(third.vertices) == Strings{"(0,0)", "(3,0)", "(0,3)"});
  CHECK(printed(monomial_okounkov(p2(), ToricDivisor{{0, 0, 0}}, 2).vertices) == Strings{"(0,0)"});
  CHECK_THROWS_AS(monomial_okounkov(p2(), div, 0), InputError);
  CHECK_THROWS_AS(monomial_okounkov(p2(), div, 4), InputError);
}

TEST_CASE("crosscheck against the lattice computation") {
  const auto r = crosscheck(p2(), ToricDivisor{{0, 0, 3}}, 1);
  CHECK(r.area == Rat(9, 2));
  CHECK(r.self_intersection == Rat(9));
  CHECK(printed(r.lattice_side) == printed(r.toric_side));

  const auto f1 = crosscheck(hirzebruch(1), ToricDivisor{{0, 0, 1, 2}}, 2);
  CHECK(f1.lattice_side.size() == 4);
  CHECK(printed(f1.lattice_side) == printed(f1.toric_side));

  for (std::size_t i = 1; i <= 6; ++i) {
    const auto h = crosscheck(dp6(), ToricDivisor{{1, 1, 1, 1, 1, 1}}, i);
    CHECK(h.lattice_side.size() == 6);
    CHECK(h.area == Rat(3));
  }
  CHECK_THROWS_AS(crosscheck(hirzebruch(0), ToricDivisor{{1, 0, 0, 0}}, 1), InputError);
}

TEST_CASE("edge lengths equal intersection numbers for random nef divisors") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> coef(0, 4);
  const std::vector<ToricFan> fans{p2(), hirzebruch(0), hirzebruch(1), hirzebruch(2), hirzebruch(3), dp6()};
  int checked = 0;
  int crosschecked = 0;
  for (const auto& fan : fans) {
    const auto model = fan_to_model(fan);
    for (int k = 0; k < 60; ++k) {
      ToricDivisor div;
      for (std::size_t i = 0; i < fan.size(); ++i) div.coeffs.push_back(coef(rng));
      ToricPolygon poly;
      try {
        poly = newton_polygon(fan, div);
      } catch (const DegenerateInput&) {
        continue;
      }
      const DivisorClass cls = model.divisor_class(div);
      if (poly.vertices.size() == 1) continue;
      for (std::size_t i = 0; i < fan.size(); ++i) CHECK(poly.edge_lengths[i] == pair(model.model, cls, model.model.curve_class(i)));
      ++checked;
      if (is_model_ample(model.model, cls)) {
        const std::size_t i = 1 + static_cast<std::size_t>(k) % fan.size();
        const auto r = crosscheck(fan, div, i);
        CHECK(r.area * Rat(2) == r.self_intersection);
        ++crosschecked;
      }
    }
  }
  CHECK(checked > 100);
  CHECK(crosschecked > 30);
}
