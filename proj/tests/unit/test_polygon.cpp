#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "noksurf/errors.hpp"
#include "noksurf/polygon.hpp"
#include "noksurf/zariski.hpp"
#include "oracles.hpp"

using namespace noksurf;
using oracle::cls;
using oracle::diag;

namespace {

const std::vector<std::string> kE{"E"};

NewtonOkounkov blowup_polygon(const DivisorClass& d, std::vector<Integer> flag_class, long mult_on_e) {
  const auto m = oracle::plane_blowup().with_curve({"C", std::move(flag_class), true});
  FlagSpec flag{"C", {}};
  if (mult_on_e > 0) flag.local_mult["E"] = mult_on_e;
  return compute_polygon(m, d, flag, kE);
}

SurfaceModel blowup_with(std::vector<Integer> flag_class) {
  return oracle::plane_blowup().with_curve({"C", std::move(flag_class), true});
}

// vertex -> tag, keyed by the printed coordinates
std::map<std::pair<std::string, std::string>, std::string> tags(const OkPolygon& p) {
  std::map<std::pair<std::string, std::string>, std::string> out;
  for (const auto& v : p.vertices) out[{v.t.to_string(), v.s.to_string()}] = v.tag();
  return out;
}

std::vector<std::pair<std::string, std::string>> coords(const OkPolygon& p) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& v : p.vertices) out.emplace_back(v.t.to_string(), v.s.to_string());
  return out;
}

QExt cross(const Vertex& o, const Vertex& a, const Vertex& b) {
  return (a.t - o.t) * (b.s - o.s) - (a.s - o.s) * (b.t - o.t);
}

}  // namespace

TEST_CASE("polygon with the point on the negative curve") {
  const auto r = blowup_polygon(cls({3, -1}), {2, -1}, 1);
  using P = std::pair<std::string, std::string>;
  CHECK(coords(r.polygon) == std::vector<P>{{"0", "0"}, {"1", "0"}, {"3/2", "1/2"}, {"0", "5"}});
  CHECK(r.polygon.area() == QExt(Rat(4)));
  CHECK(integral_between(r.bounds) == QExt(Rat(4)));
  const auto t = tags(r.polygon);
  CHECK(t.at({"0", "0"}) == "leftmost-lower");
  CHECK(t.at({"0", "5"}) == "leftmost-upper");
  CHECK(t.at({"1", "0"}) == "interior-lower");
  CHECK(t.at({"3/2", "1/2"}) == "rightmost-degenerate");
  CHECK(r.polygon.count(Position::leftmost) == 2);
  CHECK(r.polygon.count(Position::interior, Side::lower) == 1);
}

TEST_CASE("polygon with the point off the negative curve") {
  const auto r = blowup_polygon(cls({3, -1}), {2, -1}, 0);
  using P = std::pair<std::string, std::string>;
  CHECK(coords(r.polygon) == std::vector<P>{{"0", "0"}, {"3/2", "0"}, {"1", "2"}, {"0", "5"}});
  CHECK(r.polygon.area() == QExt(Rat(4)));
  CHECK(tags(r.polygon).at({"1", "2"}) == "interior-upper");
}

TEST_CASE("boundary functions") {
  const auto r = blowup_polygon(cls({3, -1}), {2, -1}, 1);
  CHECK(r.bounds.alpha.at(QExt(Rat(1, 2))) == QExt(Rat(0)));
  CHECK(r.bounds.alpha.at(QExt(Rat(5, 4))) == QExt(Rat(1, 4)));
  CHECK(r.bounds.beta.at(QExt(Rat(0))) == QExt(Rat(5)));
  CHECK(r.bounds.beta.at(QExt(Rat(1))) == QExt(Rat(2)));
  CHECK(r.bounds.beta.at(QExt(Rat(3, 2))) == QExt(Rat(1, 2)));
}

TEST_CASE("pentagon from a scaled flag class") {
  const auto r = blowup_polygon(cls({3, -1}), {6, -3}, 1);
  using P = std::pair<std::string, std::string>;
  CHECK(coords(r.polygon) ==
        std::vector<P>{{"0", "0"}, {"1/3", "0"}, {"1/2", "1/2"}, {"1/3", "6"}, {"0", "15"}});
  CHECK(r.polygon.area() == QExt(Rat(4)));
  const auto b = vertex_bound_check(blowup_with({6, -3}), r.polygon, r.profile, FlagSpec{"C", {{"E", 1}}});
  CHECK(b.vertex_count == 5);
  CHECK(b.mv_bound == 5);
  CHECK(b.rho_bound == 5);
}

TEST_CASE("flag curve with positive nu") {
  const auto r = compute_polygon(oracle::plane_blowup(), cls({1, 1}), FlagSpec{"E", {}}, kE);
  using P = std::pair<std::string, std::string>;
  CHECK(coords(r.polygon) == std::vector<P>{{"1", "0"}, {"2", "0"}, {"2", "1"}});
  CHECK(r.polygon.area() == QExt(Rat(1, 2)));
}

TEST_CASE("triangle on the plane") {
  const SurfaceModel plane(diag({1}), {{"H", {1}, true}}, cls({1}));
  const auto r = compute_polygon(plane, cls({3}), FlagSpec{"H", {}}, std::vector<std::string>{"H"});
  using P = std::pair<std::string, std::string>;
  CHECK(coords(r.polygon) == std::vector<P>{{"0", "0"}, {"3", "0"}, {"0", "3"}});
  CHECK(r.polygon.count(Position::leftmost) == 2);
  CHECK(r.polygon.count(Position::rightmost) == 1);
  CHECK(rightmost_count(plane, r.profile, r.polygon).count == 1);
  const auto b = vertex_bound_check(plane, r.polygon, r.profile, FlagSpec{"H", {}});
  CHECK(b.vertex_count == 3);
  CHECK(b.rho_bound == 3);
}

TEST_CASE("interior vertex predictions") {
  const auto on = blowup_polygon(cls({3, -1}), {2, -1}, 1);
  const auto p_on = predict_interior_vertices(blowup_with({2, -1}), on.profile, FlagSpec{"C", {{"E", 1}}});
  REQUIRE(p_on.size() == 1);
  CHECK(p_on[0].t == Rat(1));
  CHECK(p_on[0].lower);
  CHECK_FALSE(p_on[0].upper);

  const auto off = blowup_polygon(cls({3, -1}), {2, -1}, 0);
  const auto p_off = predict_interior_vertices(blowup_with({2, -1}), off.profile, FlagSpec{"C", {}});
  REQUIRE(p_off.size() == 1);
  CHECK_FALSE(p_off[0].lower);
  CHECK(p_off[0].upper);

  const auto nef = compute_polygon(oracle::plane_blowup(), cls({1, 1}), FlagSpec{"E", {}}, kE);
  CHECK(predict_interior_vertices(oracle::plane_blowup(), nef.profile, FlagSpec{"E", {}}).empty());
}

TEST_CASE("rightmost vertex counts") {
  const auto on = blowup_polygon(cls({3, -1}), {2, -1}, 1);
  const auto one = rightmost_count(blowup_with({2, -1}), on.profile, on.polygon);
  CHECK(one.count == 1);
  CHECK(one.flag_in_span);
  CHECK(one.certified);

  const auto h = blowup_polygon(cls({3, -1}), {1, 0}, 0);
  CHECK(h.profile.mu == QExt(Rat(2)));
  const auto two = rightmost_count(blowup_with({1, 0}), h.profile, h.polygon);
  CHECK(two.count == 2);
  CHECK_FALSE(two.flag_in_span);
  CHECK(h.polygon.count(Position::rightmost) == 2);
}

TEST_CASE("configuration measures") {
  const auto chain = oracle::chain_rank3();
  const std::vector<std::string> ab{"A", "B"};
  CHECK(mc(chain, ab) == 2);
  CHECK(mv(chain, ab) == 7);
  CHECK(mc(chain, std::vector<std::string>{}) == 0);
  CHECK(mv(chain, std::vector<std::string>{}) == 4);
  CHECK(mv(oracle::plane_blowup(), kE) == 5);
  const SurfaceModel two(diag({1, -1, -1}), {{"E1", {0, 1, 0}, true}, {"E2", {0, 0, 1}, true}}, cls({3, -1, -1}));
  CHECK(mc(two, std::vector<std::string>{"E1", "E2"}) == 1);
  CHECK_THROWS_AS(mc(chain, std::vector<std::string>{"A", "B", "L"}), InputError);
  CHECK_THROWS_AS(mv(chain, std::vector<std::string>{"A", "B", "L"}), InputError);
}

TEST_CASE("side slopes and lengths") {
  const auto r = blowup_polygon(cls({3, -1}), {6, -3}, 1);
  const auto m = blowup_with({6, -3});
  const FlagSpec flag{"C", {{"E", 1}}};
  const auto slopes = side_slopes(m, r.profile, flag);
  REQUIRE(slopes.size() == 2);
  CHECK(slopes[0].lower == Rat(0));
  CHECK(slopes[0].upper == Rat(-27));
  CHECK(slopes[1].lower == Rat(3));
  CHECK(slopes[1].upper == Rat(-33));
  const auto lengths = side_lengths(m, r.profile, r.polygon);
  CHECK(lengths.leftmost_length == QExt(Rat(15)));
  CHECK(lengths.leftmost_from_decomposition == Rat(15));
  CHECK(lengths.sides.size() == r.polygon.size());
}

TEST_CASE("flag validation") {
  const auto m = blowup_with({2, -1});
  CHECK_NOTHROW(validate_flag(m, FlagSpec{"C", {{"E", 1}}}));
  CHECK_THROWS_AS(validate_flag(m, FlagSpec{"C", {{"E", 2}}}), InputError);   // exceeds E.C = 1
  CHECK_THROWS_AS(validate_flag(m, FlagSpec{"C", {{"E", -1}}}), InputError);
  CHECK_THROWS_AS(validate_flag(m, FlagSpec{"C", {{"C", 1}}}), InputError);
  CHECK_THROWS_AS(validate_flag(m, FlagSpec{"C", {{"Z", 1}}}), InputError);
  CHECK_THROWS_AS(validate_flag(m, FlagSpec{"Z", {}}), InputError);
}

TEST_CASE("polygon properties on random models") {
  std::mt19937_64 rng(1234);
  int interior = 0;
  for (int i = 0; i < 150; ++i) {
    const auto c = oracle::random_case(rng);
    CAPTURE(c.description);
    const auto r = compute_polygon(c.model, c.d, c.flag, c.candidates);
    const auto& poly = r.polygon;
    REQUIRE(poly.size() >= 1);

    // area law
    const auto z = zariski_decompose(c.model, c.d, c.candidates);
    CHECK(poly.area() * QExt(Rat(2)) == QExt(self_intersection(c.model, z.positive_part)));
    CHECK(integral_between(r.bounds) == poly.area());

    // strictly convex, counterclockwise
    const std::size_t n = poly.size();
    if (n >= 3) {
      for (std::size_t k = 0; k < n; ++k) {
        CHECK(cross(poly.vertices[k], poly.vertices[(k + 1) % n], poly.vertices[(k + 2) % n]).sign() > 0);
      }
    }

    // boundary functions match fresh decompositions
    for (const auto& seg : r.profile.segments) {
      const Rat t = seg.t_hi.is_rational() ? (seg.t_lo + seg.t_hi.rational()) / Rat(2) : seg.t_lo;
      const auto [a, b] = oracle::brute_alpha_beta(c.model, c.d, c.flag, c.candidates, t);
      CHECK(r.bounds.alpha.at(QExt(t)) == QExt(a));
      CHECK(r.bounds.beta.at(QExt(t)) == QExt(b));
    }

    // predictions and bounds
    const auto report = compare_predictions(c.model, r, c.flag);
    for (const auto& why : report.disagreements) FAIL_CHECK(why);
    CHECK_NOTHROW(vertex_bound_check(c.model, poly, r.profile, c.flag));
    interior += static_cast<int>(poly.count(Position::interior));

    // scaling D scales the polygon
    const auto r3 = compute_polygon(c.model, Rat(3) * c.d, c.flag, c.candidates);
    REQUIRE(r3.polygon.size() == n);
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(r3.polygon.vertices[k].t == QExt(Rat(3)) * poly.vertices[k].t);
      CHECK(r3.polygon.vertices[k].s == QExt(Rat(3)) * poly.vertices[k].s);
    }
  }
  CHECK(interior > 10);
}
