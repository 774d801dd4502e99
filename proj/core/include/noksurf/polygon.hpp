#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "noksurf/lattice.hpp"
#include "noksurf/qext.hpp"
#include "noksurf/ray_walk.hpp"

namespace noksurf {

/// Admissible flag (C, p): the curve C by label plus the local intersection
/// multiplicities (C_j . C)_p of declared curves at p. Missing entries are 0.
struct FlagSpec {
  std::string curve;
  std::map<std::string, long> local_mult;

  long mult(const std::string& label) const;
};

/// Checks 0 <= (C_j.C)_p <= C_j.C, no entry for C itself, and that the
/// curves through p pairwise meet. Throws InputError.
void validate_flag(const SurfaceModel& model, const FlagSpec& flag);

/// Continuous piecewise linear function on [nu, mu]; `pieces[k]` is the
/// affine form on [breakpoints[k], breakpoints[k+1]].
struct PiecewiseLinear {
  std::vector<QExt> breakpoints;
  std::vector<QExt> values;
  std::vector<Affine> pieces;

  QExt at(const QExt& t) const;
};

struct BoundaryPair {
  PiecewiseLinear alpha;
  PiecewiseLinear beta;
};

/// alpha(t) = (N_t . C)_p and beta(t) = alpha(t) + P_t . C, exactly.
/// Throws ModelError if the flag curve enters the support after nu and
/// InternalError if alpha is not convex nondecreasing or beta not concave.
BoundaryPair alpha_beta(const SurfaceModel& model, const RayProfile& profile, const FlagSpec& flag);

enum class Position { leftmost, interior, rightmost };
enum class Side { unknown, lower, upper, degenerate };

struct Vertex {
  QExt t;
  QExt s;
  Position position = Position::interior;
  Side side = Side::unknown;

  std::string tag() const;
};

/// Counterclockwise convex polygon without repeated or collinear vertices.
struct OkPolygon {
  std::vector<Vertex> vertices;

  std::size_t size() const { return vertices.size(); }
  /// Shoelace area.
  QExt area() const;
  std::size_t count(Position pos, Side side) const;
  std::size_t count(Position pos) const;
};

/// Lower chain left to right, then upper chain right to left, starting at the
/// lowest leftmost point; duplicate and collinear points removed. InternalError if alpha > beta somewhere.
OkPolygon build_polygon(const PiecewiseLinear& alpha, const PiecewiseLinear& beta);

OkPolygon classify_vertices(OkPolygon polygon, const RayProfile& profile, const BoundaryPair& bounds);

/// Exact integral of beta - alpha over [nu, mu].
QExt integral_between(const BoundaryPair& bounds);

struct InteriorPrediction {
  Rat t;
  bool lower = false;
  bool upper = false;
};

/// For every wall t_i > nu: a lower (upper) interior vertex is expected iff
/// some dual-graph component of the support right after t_i that holds an
/// entering curve also holds a curve through p (meeting C away from p).
std::vector<InteriorPrediction> predict_interior_vertices(const SurfaceModel& model, const RayProfile& profile,
                                                          const FlagSpec& flag);

struct NewtonOkounkov;

struct RightmostReport {
  int count = 0;
  bool flag_in_span = false;  // [C] in <[D], support of N_mu>
  bool flag_ample = false;
  bool certified = false;     // false: count is the observed one
};

RightmostReport rightmost_count(const SurfaceModel& model, const RayProfile& profile, const OkPolygon& polygon);

/// Predicted against observed: interior vertices per wall and the number of
/// rightmost vertices (checked only when the rightmost count is certified).
struct PredictionReport {
  std::vector<InteriorPrediction> predicted;
  std::vector<InteriorPrediction> observed;  // same walls, read off the polygon
  RightmostReport rightmost;
  std::size_t observed_rightmost = 0;
  std::vector<std::string> disagreements;

  bool agree() const { return disagreements.empty(); }
};

PredictionReport compare_predictions(const SurfaceModel& model, const NewtonOkounkov& result, const FlagSpec& flag);

struct SideSlope {
  Rat lower;
  Rat upper;
};

/// Per-segment slopes from intersection numbers; cross-checked against the
/// difference quotients of alpha and beta.
std::vector<SideSlope> side_slopes(const SurfaceModel& model, const RayProfile& profile, const FlagSpec& flag);

struct PolygonSide {
  std::size_t from = 0;
  std::size_t to = 0;
  QExt dt;
  QExt ds;
};

struct SideLengths {
  std::vector<PolygonSide> sides;
  QExt leftmost_length;
  Rat leftmost_from_decomposition;  // P_0 . C
};

SideLengths side_lengths(const SurfaceModel& model, const RayProfile& profile, const OkPolygon& polygon);

/// Size of the largest connected component. InputError unless negative definite.
int mc(const SurfaceModel& model, std::span<const std::string> config);
/// k + mc + 4 (k < rank-1) or k + mc + 3 (k = rank-1).
int mv(const SurfaceModel& model, std::span<const std::string> config);

struct BoundReport {
  std::size_t vertex_count = 0;
  int mv_bound = 0;
  int rho_bound = 0;
  std::size_t lower_interior = 0;
  std::size_t upper_interior = 0;
  std::size_t lower_bound = 0;  // components of N_mu in the component(s) through p
  std::size_t upper_bound = 0;  // components of N_mu in component(s) meeting C off p
};

/// Throws TheoremViolation when a vertex-count bound fails.
BoundReport vertex_bound_check(const SurfaceModel& model, const OkPolygon& polygon, const RayProfile& profile,
                               const FlagSpec& flag);

struct NewtonOkounkov {
  RayProfile profile;
  BoundaryPair bounds;
  OkPolygon polygon;
};

/// walk_ray + alpha_beta + build_polygon + classify_vertices.
NewtonOkounkov compute_polygon(const SurfaceModel& model, const DivisorClass& d, const FlagSpec& flag,
                               std::span<const std::string> candidates);

}  // namespace noksurf
