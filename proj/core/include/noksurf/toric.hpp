#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "noksurf/lattice.hpp"
#include "noksurf/polygon.hpp"

namespace noksurf {

using LatticeVector = std::array<long, 2>;
using RatPoint = std::array<Rat, 2>;

/// Smooth complete fan: rays counterclockwise, det(v_i, v_{i+1}) = 1 cyclically.
struct ToricFan {
  std::vector<LatticeVector> rays;

  std::size_t size() const { return rays.size(); }
  /// InputError unless n >= 3, rays primitive, consecutive pairs unimodular
  /// and the rays wind around the origin exactly once.
  void validate() const;
  /// b_i with v_{i-1} + v_{i+1} = b_i v_i (so D_i^2 = -b_i).
  long self_intersection_number(std::size_t i) const;
  /// D_i . D_j from the toric rules.
  long intersection(std::size_t i, std::size_t j) const;
};

/// sum a_i D_i
struct ToricDivisor {
  std::vector<long> coeffs;
};

/// The model has basis D_1..D_{n-2}; D_{n-1}, D_n are eliminated through
/// sum_i <v_i, e> D_i ~ 0. Curves are labelled "D1".."Dn".
struct ToricModel {
  SurfaceModel model;
  std::vector<std::string> labels;
  std::vector<std::vector<Integer>> classes;

  DivisorClass divisor_class(const ToricDivisor& div) const;
};

/// Builds the lattice model. Without a witness, the smallest box of basis
/// coordinates is searched for a class positive on every D_i.
ToricModel fan_to_model(const ToricFan& fan, std::optional<std::vector<Integer>> witness = std::nullopt);

struct ToricPolygon {
  std::vector<RatPoint> vertices;  // counterclockwise, no repeats
  std::vector<Rat> edge_lengths;   // lattice length of the edge normal to v_i
};

/// P_D = {m : <m, v_i> >= -a_i}. A single point is returned as such;
/// a segment, or any negative edge length (D not nef), is DegenerateInput.
ToricPolygon newton_polygon(const ToricFan& fan, const ToricDivisor& div);

/// Image of the Newton polygon under m -> (<m, v_i> + a_i, <m, v_{i+1}> + a_{i+1})
/// for the flag (D_i, D_i n D_{i+1}); `flag_index` is 1-based. Vertices start
/// at the lowest leftmost point.
ToricPolygon monomial_okounkov(const ToricFan& fan, const ToricDivisor& div, std::size_t flag_index);

struct CrosscheckReport {
  std::vector<RatPoint> lattice_side;  // from the ray walk
  std::vector<RatPoint> toric_side;    // from the monomial map
  Rat area;
  Rat self_intersection;
};

/// Computes the polygon by the ray walk on the lattice model (flag curve D_i,
/// local multiplicity 1 with D_{i+1} only) and by the monomial map; throws
/// OracleMismatch unless the vertex sets agree exactly and 2 area = D^2.
/// InputError unless D is model-ample.
CrosscheckReport crosscheck(const ToricFan& fan, const ToricDivisor& div, std::size_t flag_index);

std::string point_to_string(const RatPoint& p);

}  // namespace noksurf
