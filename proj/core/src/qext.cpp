#include "noksurf/qext.hpp"

#include <cmath>
#include <ostream>

#include "noksurf/errors.hpp"

namespace noksurf {

namespace {

// Trial division stops here; a larger cofactor is only checked for being a
// perfect square, so a radicand may keep the square of a big prime.
constexpr unsigned long kMaxTrialDivisor = 100'000UL;

// q*sqrt(from) rewritten over `to`, when from*to is a perfect square.
Rat rebase(const Rat& q, const Integer& from, const Integer& to) {
  if (from == to) return q;
  Integer s;
  mpz_sqrt(s.get_mpz_t(), Integer(from * to).get_mpz_t());
  return q * Rat(s, to);
}

}  // namespace

std::pair<Integer, Integer> square_free_decompose(const Integer& n) {
  if (n < 0) throw InternalError("square_free_decompose of a negative number");
  if (n == 0) return {Integer(0), Integer(0)};
  Integer rest = n;
  Integer square = 1;
  Integer free = 1;
  auto strip = [&](unsigned long p) {
    int e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p) != 0) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    for (int i = 0; i + 1 < e; i += 2) square *= p;
    if (e % 2 == 1) free *= p;
  };
  strip(2);
  for (unsigned long p = 3;; p += 2) {
    Integer cube = Integer(p) * p * p;
    if (cube > rest || p > kMaxTrialDivisor) break;
    strip(p);
  }
  if (rest > 1) {
    if (mpz_perfect_square_p(rest.get_mpz_t()) != 0) {
      Integer root;
      mpz_sqrt(root.get_mpz_t(), rest.get_mpz_t());
      square *= root;
    } else {
      free *= rest;
    }
  }
  return {square, free};
}

QExt::QExt(Rat p, Rat q, Integer d) : p_(std::move(p)), q_(std::move(q)), d_(std::move(d)) {
  if (d_ < 0) throw InternalError("negative radicand");
  if (d_ > 0 && mpz_perfect_square_p(d_.get_mpz_t()) != 0) {
    Integer root;
    mpz_sqrt(root.get_mpz_t(), d_.get_mpz_t());
    p_ += q_ * Rat(root);
    q_ = Rat();
  }
  if (d_ == 0) q_ = Rat();
  if (q_.is_zero()) d_ = 0;
}

QExt QExt::sqrt_of(const Rat& r) {
  if (r.sign() < 0) throw InternalError("sqrt of a negative rational");
  // sqrt(n/m) = sqrt(n*m)/m
  const Integer nm = r.num() * r.den();
  auto [s, d] = square_free_decompose(nm);
  return QExt(Rat(), Rat(s, r.den()), d);
}

const Rat& QExt::rational() const {
  if (!is_rational()) throw InternalError("expected a rational value, got " + to_string());
  return p_;
}

Rat QExt::norm() const { return p_ * p_ - q_ * q_ * Rat(d_); }

int QExt::sign() const {
  const int sp = p_.sign();
  const int sq = q_.sign();
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sq;
  // Opposite signs: compare p^2 against q^2 d.
  const int c = (p_ * p_ <=> q_ * q_ * Rat(d_)) == std::strong_ordering::greater ? 1 : -1;
  return c > 0 ? sp : sq;
}

double QExt::to_double() const {
  return p_.to_double() + q_.to_double() * std::sqrt(d_.get_d());
}

std::string QExt::to_string() const {
  if (is_rational()) return p_.to_string();
  std::string out = p_.to_string();
  out += q_.sign() < 0 ? "-" : "+";
  out += q_.abs().to_string() + "*sqrt(" + d_.get_str() + ")";
  return out;
}

Integer QExt::common_radicand(const QExt& o) const {
  if (is_rational()) return o.d_;
  if (o.is_rational()) return d_;
  if (d_ == o.d_) return d_;
  if (mpz_perfect_square_p(Integer(d_ * o.d_).get_mpz_t()) == 0) {
    throw InternalError("mixing radicands " + d_.get_str() + " and " + o.d_.get_str());
  }
  return d_ < o.d_ ? d_ : o.d_;
}

QExt& QExt::operator+=(const QExt& o) {
  const Integer d = common_radicand(o);
  *this = QExt(p_ + o.p_, rebase(q_, d_, d) + rebase(o.q_, o.d_, d), d);
  return *this;
}

QExt& QExt::operator-=(const QExt& o) {
  const Integer d = common_radicand(o);
  *this = QExt(p_ - o.p_, rebase(q_, d_, d) - rebase(o.q_, o.d_, d), d);
  return *this;
}

QExt& QExt::operator*=(const QExt& o) {
  const Integer d = common_radicand(o);
  const Rat q1 = rebase(q_, d_, d);
  const Rat q2 = rebase(o.q_, o.d_, d);
  *this = QExt(p_ * o.p_ + q1 * q2 * Rat(d), p_ * q2 + q1 * o.p_, d);
  return *this;
}

QExt& QExt::operator/=(const QExt& o) {
  if (o.is_zero()) throw InternalError("division by zero");
  const Rat n = o.norm();
  *this *= o.conjugate();
  *this = QExt(p_ / n, q_ / n, d_);
  return *this;
}

std::strong_ordering operator<=>(const QExt& a, const QExt& b) {
  const int s = (a - b).sign();
  return s < 0 ? std::strong_ordering::less
               : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const QExt& x) { return os << x.to_string(); }

}  // namespace noksurf
