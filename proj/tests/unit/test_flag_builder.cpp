#include <doctest.h>

#include <algorithm>

#include "noksurf/errors.hpp"
#include "noksurf/flag_builder.hpp"
#include "noksurf/zariski.hpp"
#include "oracles.hpp"

using namespace noksurf;
using oracle::cls;

namespace {

const std::vector<std::string> kE{"E"};
const std::vector<std::string> kNone{};

std::vector<std::pair<std::string, std::string>> coords(const OkPolygon& p) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& v : p.vertices) out.emplace_back(v.t.to_string(), v.s.to_string());
  return out;
}

}  // namespace

TEST_CASE("ordered class for one curve") {
  const auto m = oracle::plane_blowup();
  const auto c = find_ordered_ample_class(m, cls({3, -1}), kE, false);
  CHECK(c.flag_class == cls({3, 0}) + Rat(-3, 2) * cls({0, 1}));
  CHECK(c.coeffs.at("E") == Rat(1, 2));
  CHECK(c.order == kE);
  CHECK(c.appearance == std::vector<Rat>{Rat(2, 3)});
  CHECK(c.mu == QExt(Rat(1)));
  CHECK_NOTHROW(verify_certificate(m, cls({3, -1}), c));
}

TEST_CASE("empty configuration keeps D") {
  const auto c = find_ordered_ample_class(oracle::plane_blowup(), cls({3, -1}), kNone, false);
  CHECK(c.flag_class == cls({3, -1}));
  CHECK(c.order.empty());
  CHECK(c.appearance.empty());
  CHECK(c.mu == QExt(Rat(1)));
}

TEST_CASE("ordered classes on chains") {
  const auto m3 = oracle::chain_rank3();
  const DivisorClass d3 = cls({4, -2, -1});
  const std::vector<std::string> ab{"A", "B"};
  const auto c = find_ordered_ample_class(m3, d3, ab, false);
  CHECK(c.order == ab);
  REQUIRE(c.appearance.size() == 2);
  CHECK(c.appearance[0] < c.appearance[1]);
  CHECK(QExt(c.appearance[1]) < c.mu);
  CHECK(is_model_ample(m3, c.flag_class));
  CHECK_NOTHROW(verify_certificate(m3, d3, c));

  const auto m4 = oracle::chain_rank4();
  const DivisorClass d4 = cls({6, -3, -2, -1});
  const std::vector<std::string> abe{"A", "B", "E3"};
  const auto c4 = find_ordered_ample_class(m4, d4, abe, false);
  CHECK(c4.order == abe);
  CHECK(std::is_sorted(c4.appearance.begin(), c4.appearance.end()));
  CHECK_NOTHROW(verify_certificate(m4, d4, c4));

  // order reversed: B first, then A
  const std::vector<std::string> ba{"B", "A"};
  const auto rev = find_ordered_ample_class(m3, d3, ba, false);
  CHECK(rev.order == ba);
  CHECK_NOTHROW(verify_certificate(m3, d3, rev));
}

TEST_CASE("independent ordered classes") {
  const auto m = oracle::chain_rank3();
  const DivisorClass d = cls({4, -2, -1});
  const auto c = find_ordered_ample_class(m, d, std::vector<std::string>{"B"}, true);
  CHECK(c.independent);
  std::vector<std::vector<Rat>> rows{d.coords, m.curve_class("B").coords, c.flag_class.coords};
  CHECK(rank_of(rows) == 3);
  CHECK_NOTHROW(verify_certificate(m, d, c));
  CHECK_THROWS_AS(find_ordered_ample_class(m, d, std::vector<std::string>{"A", "B"}, true), InputError);
}

TEST_CASE("independence can be impossible") {
  // no nef class orthogonal to A = E1 - E2 has square zero, so no flag class
  // outside <D, A> ends its ray with A as the only negative curve
  const auto m = oracle::chain_rank3();
  CHECK_THROWS_AS(find_ordered_ample_class(m, cls({4, -2, -1}), std::vector<std::string>{"A"}, true), SearchFailure);
}

TEST_CASE("input checks") {
  const auto m = oracle::chain_rank3();
  // 4H - E1 - E2 pairs to zero with E1 - E2, so it is not ample in the model
  CHECK_THROWS_AS(find_ordered_ample_class(m, cls({4, -1, -1}), std::vector<std::string>{"A"}, false), InputError);
  CHECK_THROWS_AS(find_ordered_ample_class(m, cls({4, -2, -1}), std::vector<std::string>{"A", "B", "L"}, false),
                  InputError);
  CHECK_THROWS_AS(realize_vertex_count(m, cls({4, -2, -1}), std::vector<std::string>{"A", "B"}, 2), InputError);
  CHECK_THROWS_AS(realize_vertex_count(m, cls({4, -2, -1}), std::vector<std::string>{"A", "B"}, 8), InputError);
}

TEST_CASE("tampered certificates are caught") {
  const auto m = oracle::plane_blowup();
  const auto good = find_ordered_ample_class(m, cls({3, -1}), kE, false);
  auto bad = good;
  bad.appearance[0] = Rat(1, 2);
  CHECK_THROWS_AS(verify_certificate(m, cls({3, -1}), bad), TheoremViolation);
  bad = good;
  bad.mu = QExt(Rat(2));
  CHECK_THROWS_AS(verify_certificate(m, cls({3, -1}), bad), TheoremViolation);
}

TEST_CASE("realizations on the one-point blow-up") {
  const auto m = oracle::plane_blowup();
  const auto r5 = realize_vertex_count(m, cls({3, -1}), kE, 5);
  CHECK(r5.flag_class == std::vector<Integer>{6, -3});
  CHECK(r5.flag.mult("E") == 1);
  CHECK(r5.assumption ==
        "an irreducible curve of class (6,-3) passes through a point p of E with local intersection 1; "
        "meets E with multiplicity 2 away from p");
  using P = std::pair<std::string, std::string>;
  CHECK(coords(r5.result.polygon) ==
        std::vector<P>{{"0", "0"}, {"1/3", "0"}, {"1/2", "1/2"}, {"1/3", "6"}, {"0", "15"}});

  const auto r4 = realize_vertex_count(m, cls({3, -1}), kE, 4);
  CHECK(r4.result.polygon.size() == 4);
  CHECK(r4.flag.mult("E") == 0);

  const auto r3 = realize_vertex_count(m, cls({3, -1}), kE, 3);
  CHECK(r3.result.polygon.size() == 3);
}

TEST_CASE("triangle on the plane") {
  const SurfaceModel plane(oracle::diag({1}), {{"H", {1}, true}}, cls({1}));
  const auto r = realize_vertex_count(plane, cls({3}), kNone, 3);
  CHECK(r.result.polygon.size() == 3);
}

TEST_CASE("every count up to the bound is realized on chains") {
  const auto m3 = oracle::chain_rank3();
  for (int v = 3; v <= 7; ++v) {
    CAPTURE(v);
    const auto r = realize_vertex_count(m3, cls({4, -2, -1}), std::vector<std::string>{"A", "B"}, v);
    CHECK(r.result.polygon.size() == static_cast<std::size_t>(v));
    CHECK(r.model.has_curve(r.flag.curve));
    std::vector<Integer> expect;
    for (const auto& x : (Rat(r.scale) * r.certificate.flag_class).coords) {
      CHECK(x.is_integer());
      expect.push_back(x.num());
    }
    CHECK(r.flag_class == expect);
  }
  const auto m4 = oracle::chain_rank4();
  for (int v = 3; v <= 9; ++v) {
    CAPTURE(v);
    const auto r = realize_vertex_count(m4, cls({6, -3, -2, -1}), std::vector<std::string>{"A", "B", "E3"}, v);
    CHECK(r.result.polygon.size() == static_cast<std::size_t>(v));
  }
}
