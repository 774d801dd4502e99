#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "noksurf/lattice.hpp"
#include "noksurf/qext.hpp"

namespace noksurf {

/// constant + slope * t
struct Affine {
  Rat constant;
  Rat slope;

  Rat at(const Rat& t) const { return constant + slope * t; }
  QExt at(const QExt& t) const { return QExt(constant) + QExt(slope) * t; }
  friend bool operator==(const Affine&, const Affine&) = default;
};

/// One Zariski chamber crossed by D - tC. The negative part on
/// [t_lo, t_hi] is sum_j coeffs[j](t) C_j and the positive part is
/// positive_constant + t * positive_slope.
struct Segment {
  Rat t_lo;
  QExt t_hi;
  std::vector<std::string> support;   // declaration order
  std::vector<std::string> entering;  // support curves not present before t_lo
  std::map<std::string, Affine> coeffs;
  DivisorClass positive_constant;
  DivisorClass positive_slope;

  DivisorClass positive_part_at(const Rat& t) const;
};

struct RayProfile {
  DivisorClass divisor;
  std::string flag;
  std::vector<std::string> candidates;  // always contains `flag`
  Rat nu;
  QExt mu;
  std::vector<Segment> segments;
  std::vector<std::pair<std::string, Rat>> appearance;

  const std::vector<std::string>& final_support() const { return segments.back().support; }
  /// Segment containing rational t (the left one at a breakpoint).
  const Segment& segment_at(const Rat& t) const;
};

/// Coefficient of the flag curve in the negative part of D.
Rat nu(const SurfaceModel& model, const DivisorClass& d, const std::string& flag,
       std::span<const std::string> candidates);

/// Walks D_t = D - tC from nu up to mu, the first root of (P_t)^2 = 0.
/// At each wall the new support is found by the one-sided (derivative)
/// Zariski iteration, so simultaneous crossings need no sampling.
///
/// Throws ModelError if D is not big in the model, if a support
/// coefficient would decrease to zero inside a chamber, or if the ray never
/// leaves the big cone.
RayProfile walk_ray(const SurfaceModel& model, const DivisorClass& d, const std::string& flag,
                    std::span<const std::string> candidates);

/// (label, t_i) sorted by t_i, ties in declaration order.
std::vector<std::pair<std::string, Rat>> appearance_times(const RayProfile& profile);

}  // namespace noksurf
