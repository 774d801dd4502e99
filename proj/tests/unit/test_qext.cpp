#include <doctest.h>

#include <cmath>
#include <random>

#include "noksurf/errors.hpp"
#include "noksurf/qext.hpp"

using noksurf::Integer;
using noksurf::QExt;
using noksurf::Rat;

TEST_CASE("square-free decomposition") {
  auto check = [](long n, long s, long d) {
    const auto [ss, dd] = noksurf::square_free_decompose(Integer(n));
    CAPTURE(n);
    CHECK(ss == s);
    CHECK(dd == d);
  };
  check(0, 0, 0);
  check(1, 1, 1);
  check(12, 2, 3);
  check(72, 6, 2);
  check(49, 7, 1);
  check(2 * 3 * 5 * 7, 1, 210);
  check(1000003L * 1000003L, 1000003, 1);  // prime square beyond trial bound
  check(4 * 1000003L, 2, 1000003);
}

TEST_CASE("square roots") {
  CHECK(QExt::sqrt_of(Rat(4)) == QExt(Rat(2)));
  CHECK(QExt::sqrt_of(Rat(9, 4)) == QExt(Rat(3, 2)));
  const QExt r = QExt::sqrt_of(Rat(1, 2));  // sqrt(2)/2
  CHECK(r.to_string() == "0+1/2*sqrt(2)");
  CHECK(r * r == QExt(Rat(1, 2)));
  CHECK(QExt::sqrt_of(Rat(8)).to_string() == "0+2*sqrt(2)");
}

TEST_CASE("canonical normalization") {
  CHECK(QExt(Rat(1), Rat(0), Integer(5)).d() == 0);
  CHECK(QExt(Rat(1), Rat(2), Integer(1)) == QExt(Rat(3)));
  CHECK(QExt(Rat(1), Rat(2), Integer(9)).is_rational());
  CHECK(QExt(Rat(1), Rat(2), Integer(9)).rational() == Rat(7));
  CHECK(QExt(Rat(1), Rat(-1, 3), Integer(2)).to_string() == "1-1/3*sqrt(2)");
  CHECK_THROWS_AS(QExt(Rat(0), Rat(1), Integer(2)).rational(), noksurf::InternalError);
}

TEST_CASE("sign of mixed terms") {
  CHECK(QExt(Rat(1), Rat(-1), Integer(2)).sign() == -1);  // 1 - 1.414
  CHECK(QExt(Rat(2), Rat(-1), Integer(3)).sign() == 1);   // 2 - 1.732
  CHECK(QExt(Rat(-3), Rat(2), Integer(2)).sign() == -1);  // -3 + 2.83
  CHECK(QExt(Rat(-1), Rat(1), Integer(2)).sign() == 1);
  CHECK(QExt(Rat(0)).sign() == 0);
}

TEST_CASE("radicands with a square ratio are merged") {
  const QExt a(Rat(0), Rat(1), Integer(2));
  const QExt b(Rat(0), Rat(1), Integer(8));  // sqrt 8 = 2 sqrt 2
  CHECK(a + a == b);
  CHECK((b - a) == a);
  CHECK(b * a == QExt(Rat(4)));
  CHECK_THROWS_AS(a + QExt(Rat(0), Rat(1), Integer(3)), noksurf::InternalError);
}

TEST_CASE("field operations agree with floating point") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> small(-20, 20), den(1, 9);
  for (const long d : {2L, 3L, 5L, 6L, 7L, 10L}) {
    for (int i = 0; i < 60; ++i) {
      const QExt x(Rat(small(rng), den(rng)), Rat(small(rng), den(rng)), Integer(d));
      const QExt y(Rat(small(rng), den(rng)), Rat(small(rng), den(rng)), Integer(d));
      CHECK((x + y).to_double() == doctest::Approx(x.to_double() + y.to_double()));
      CHECK((x * y).to_double() == doctest::Approx(x.to_double() * y.to_double()));
      CHECK((x - y) + y == x);
      CHECK(x * x.conjugate() == QExt(x.norm()));
      if (!y.is_zero()) {
        CHECK((x / y) * y == x);
        CHECK((x / y).to_double() == doctest::Approx(x.to_double() / y.to_double()));
      }
      CHECK(((x < y) == (x.to_double() < y.to_double()) || std::abs(x.to_double() - y.to_double()) < 1e-9));
    }
  }
}
