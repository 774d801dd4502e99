#pragma once

#include <compare>
#include <iosfwd>
#include <string>
#include <utility>

#include "noksurf/rational.hpp"

namespace noksurf {

/// Writes n = s^2 * d (n >= 0). Small primes are removed by trial division and
/// a perfect-square cofactor is absorbed into s; d is square-free unless the
/// cofactor keeps the square of a prime beyond the trial bound.
std::pair<Integer, Integer> square_free_decompose(const Integer& n);

/// Element p + q*sqrt(d) of a real quadratic field. q == 0 whenever d == 0,
/// and d is never a perfect square. Binary operations between two irrational
/// values require radicands whose product is a square (the smaller one is
/// kept); equality and ordering are by value.
class QExt {
 public:
  QExt() = default;
  QExt(const Rat& p) : p_(p) {}  // NOLINT(google-explicit-constructor)
  QExt(long p) : p_(p) {}        // NOLINT(google-explicit-constructor)
  QExt(int p) : p_(p) {}         // NOLINT(google-explicit-constructor)
  QExt(Rat p, Rat q, Integer d);

  /// sqrt(r) for r >= 0, reduced to s*sqrt(d).
  static QExt sqrt_of(const Rat& r);

  const Rat& p() const { return p_; }
  const Rat& q() const { return q_; }
  const Integer& d() const { return d_; }

  bool is_rational() const { return q_.is_zero(); }
  /// Throws InternalError if irrational.
  const Rat& rational() const;

  int sign() const;
  bool is_zero() const { return p_.is_zero() && q_.is_zero(); }
  QExt conjugate() const { return QExt(p_, -q_, d_); }
  /// (p + q sqrt d)(p - q sqrt d) = p^2 - q^2 d.
  Rat norm() const;

  double to_double() const;
  std::string to_string() const;

  QExt& operator+=(const QExt& o);
  QExt& operator-=(const QExt& o);
  QExt& operator*=(const QExt& o);
  QExt& operator/=(const QExt& o);
  friend QExt operator+(QExt a, const QExt& b) { return a += b; }
  friend QExt operator-(QExt a, const QExt& b) { return a -= b; }
  friend QExt operator*(QExt a, const QExt& b) { return a *= b; }
  friend QExt operator/(QExt a, const QExt& b) { return a /= b; }
  QExt operator-() const { return QExt(-p_, -q_, d_); }

  friend bool operator==(const QExt& a, const QExt& b) {
    return (a - b).is_zero();
  }
  friend std::strong_ordering operator<=>(const QExt& a, const QExt& b);

 private:
  Integer common_radicand(const QExt& o) const;

  Rat p_;
  Rat q_;
  Integer d_ = 0;
};

std::ostream& operator<<(std::ostream& os, const QExt& x);

}  // namespace noksurf
