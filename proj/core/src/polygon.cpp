#include "noksurf/polygon.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "noksurf/errors.hpp"
#include "noksurf/zariski.hpp"

namespace noksurf {

namespace {

QExt cross(const Vertex& a, const Vertex& b, const Vertex& c) {
  return (b.t - a.t) * (c.s - b.s) - (b.s - a.s) * (c.t - b.t);
}

bool same_point(const Vertex& a, const Vertex& b) { return a.t == b.t && a.s == b.s; }

// Removes repeated and collinear points from a closed vertex cycle.
std::vector<Vertex> simplify_cycle(std::vector<Vertex> pts) {
  bool changed = true;
  while (changed && pts.size() > 1) {
    changed = false;
    for (std::size_t i = 0; i < pts.size() && pts.size() > 1; ++i) {
      const std::size_t j = (i + 1) % pts.size();
      if (same_point(pts[i], pts[j])) {
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(j));
        changed = true;
        break;
      }
    }
    if (changed || pts.size() < 3) continue;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto& prev = pts[(i + pts.size() - 1) % pts.size()];
      const auto& next = pts[(i + 1) % pts.size()];
      if (cross(prev, pts[i], next).is_zero()) {
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  // start at the lowest leftmost point
  const auto first = std::min_element(pts.begin(), pts.end(), [](const Vertex& a, const Vertex& b) {
    return a.t < b.t || (a.t == b.t && a.s < b.s);
  });
  std::rotate(pts.begin(), first, pts.end());
  return pts;
}

QExt slope_between(const PiecewiseLinear& f, std::size_t k) {
  return (f.values[k + 1] - f.values[k]) / (f.breakpoints[k + 1] - f.breakpoints[k]);
}

// Union of the components of `support` holding a curve that satisfies pred.
template <class Pred>
std::size_t component_union_size(const SurfaceModel& model, const std::vector<std::string>& support, Pred pred) {
  std::size_t total = 0;
  for (const auto& comp : dual_graph_components(model, support)) {
    if (std::any_of(comp.begin(), comp.end(), pred)) total += comp.size();
  }
  return total;
}

}  // namespace

long FlagSpec::mult(const std::string& label) const {
  auto it = local_mult.find(label);
  return it == local_mult.end() ? 0 : it->second;
}

void validate_flag(const SurfaceModel& model, const FlagSpec& flag) {
  const DivisorClass& c = model.curve_class(flag.curve);
  std::vector<std::string> through_p;
  for (const auto& [label, m] : flag.local_mult) {
    if (label == flag.curve) throw InputError("local multiplicity given for the flag curve itself");
    const Rat global = pair(model, model.curve_class(label), c);
    if (m < 0 || Rat(m) > global) {
      throw InputError("local multiplicity of '" + label + "' must lie in [0, " + global.to_string() + "]");
    }
    if (m > 0) through_p.push_back(label);
  }
  for (std::size_t i = 0; i < through_p.size(); ++i)
    for (std::size_t j = i + 1; j < through_p.size(); ++j)
      if (pair(model, model.curve_class(through_p[i]), model.curve_class(through_p[j])).sign() <= 0) {
        throw InputError("curves '" + through_p[i] + "' and '" + through_p[j] +
                         "' both pass through p but do not meet");
      }
}

QExt PiecewiseLinear::at(const QExt& t) const {
  for (std::size_t k = 0; k < breakpoints.size(); ++k)
    if (breakpoints[k] == t) return values[k];
  for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k)
    if (breakpoints[k] < t && t < breakpoints[k + 1]) return pieces[k].at(t);
  throw InputError("PiecewiseLinear evaluated outside its domain at " + t.to_string());
}

BoundaryPair alpha_beta(const SurfaceModel& model, const RayProfile& profile, const FlagSpec& flag) {
  if (flag.curve != profile.flag) throw InputError("flag does not match the ray profile");
  validate_flag(model, flag);
  const DivisorClass& c = model.curve_class(flag.curve);
  BoundaryPair out;
  for (std::size_t k = 0; k < profile.segments.size(); ++k) {
    const Segment& seg = profile.segments[k];
    if (std::find(seg.support.begin(), seg.support.end(), flag.curve) != seg.support.end()) {
      throw ModelError("flag curve appears in the negative part after nu");
    }
    Affine lower;
    for (const auto& [label, a] : seg.coeffs) {
      const Rat m(flag.mult(label));
      lower.constant += a.constant * m;
      lower.slope += a.slope * m;
    }
    Affine upper = lower;
    upper.constant += pair(model, seg.positive_constant, c);
    upper.slope += pair(model, seg.positive_slope, c);
    const QExt lo(seg.t_lo);
    if (k == 0) {
      out.alpha.breakpoints.push_back(lo);
      out.beta.breakpoints.push_back(lo);
      out.alpha.values.push_back(lower.at(lo));
      out.beta.values.push_back(upper.at(lo));
    } else if (lower.at(lo) != out.alpha.values.back() || upper.at(lo) != out.beta.values.back()) {
      throw InternalError("alpha/beta discontinuous at a wall");
    }
    out.alpha.pieces.push_back(lower);
    out.beta.pieces.push_back(upper);
    out.alpha.breakpoints.push_back(seg.t_hi);
    out.beta.breakpoints.push_back(seg.t_hi);
    out.alpha.values.push_back(lower.at(seg.t_hi));
    out.beta.values.push_back(upper.at(seg.t_hi));
  }
  for (std::size_t k = 0; k < out.alpha.pieces.size(); ++k) {
    if (out.alpha.pieces[k].slope.sign() < 0) throw InternalError("alpha decreasing");
    if (k > 0 && out.alpha.pieces[k].slope < out.alpha.pieces[k - 1].slope) throw InternalError("alpha not convex");
    if (k > 0 && out.beta.pieces[k].slope > out.beta.pieces[k - 1].slope) throw InternalError("beta not concave");
  }
  return out;
}

std::string Vertex::tag() const {
  std::string out;
  switch (position) {
    case Position::leftmost: out = "leftmost"; break;
    case Position::interior: out = "interior"; break;
    case Position::rightmost: out = "rightmost"; break;
  }
  switch (side) {
    case Side::unknown: out += "-unknown"; break;
    case Side::lower: out += "-lower"; break;
    case Side::upper: out += "-upper"; break;
    case Side::degenerate: out += "-degenerate"; break;
  }
  return out;
}

QExt OkPolygon::area() const {
  QExt twice;
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = vertices[i];
    const auto& b = vertices[(i + 1) % n];
    twice += a.t * b.s - b.t * a.s;
  }
  return twice / QExt(2);
}

std::size_t OkPolygon::count(Position pos, Side side) const {
  return static_cast<std::size_t>(std::count_if(vertices.begin(), vertices.end(), [&](const Vertex& v) {
    return v.position == pos && v.side == side;
  }));
}

std::size_t OkPolygon::count(Position pos) const {
  return static_cast<std::size_t>(
      std::count_if(vertices.begin(), vertices.end(), [&](const Vertex& v) { return v.position == pos; }));
}

OkPolygon build_polygon(const PiecewiseLinear& alpha, const PiecewiseLinear& beta) {
  if (alpha.breakpoints != beta.breakpoints) throw InternalError("alpha and beta breakpoints differ");
  const std::size_t n = alpha.breakpoints.size();
  std::vector<Vertex> cycle;
  for (std::size_t k = 0; k < n; ++k) {
    if (alpha.values[k] > beta.values[k]) {
      throw InternalError("alpha exceeds beta at t = " + alpha.breakpoints[k].to_string());
    }
    cycle.push_back({alpha.breakpoints[k], alpha.values[k]});
  }
  for (std::size_t k = n; k-- > 0;) cycle.push_back({beta.breakpoints[k], beta.values[k]});
  return OkPolygon{simplify_cycle(std::move(cycle))};
}

OkPolygon classify_vertices(OkPolygon polygon, const RayProfile& profile, const BoundaryPair& bounds) {
  const QExt nu(profile.nu);
  for (auto& v : polygon.vertices) {
    if (v.t == nu) {
      v.position = Position::leftmost;
    } else if (v.t == profile.mu) {
      v.position = Position::rightmost;
    } else {
      v.position = Position::interior;
    }
    const bool lower = v.s == bounds.alpha.at(v.t);
    const bool upper = v.s == bounds.beta.at(v.t);
    if (lower && upper) {
      v.side = Side::degenerate;
    } else if (lower) {
      v.side = Side::lower;
    } else if (upper) {
      v.side = Side::upper;
    } else {
      throw InternalError("vertex on neither boundary");
    }
  }
  return polygon;
}

QExt integral_between(const BoundaryPair& bounds) {
  QExt total;
  const auto& bp = bounds.alpha.breakpoints;
  for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
    const QExt h0 = bounds.beta.values[k] - bounds.alpha.values[k];
    const QExt h1 = bounds.beta.values[k + 1] - bounds.alpha.values[k + 1];
    total += (bp[k + 1] - bp[k]) * (h0 + h1) / QExt(2);
  }
  return total;
}

std::vector<InteriorPrediction> predict_interior_vertices(const SurfaceModel& model, const RayProfile& profile,
                                                          const FlagSpec& flag) {
  const DivisorClass& c = model.curve_class(flag.curve);
  std::vector<InteriorPrediction> out;
  for (std::size_t k = 1; k < profile.segments.size(); ++k) {
    const Segment& seg = profile.segments[k];
    InteriorPrediction pred{seg.t_lo};
    for (const auto& comp : dual_graph_components(model, seg.support)) {
      const bool has_entering = std::any_of(comp.begin(), comp.end(), [&](const std::string& l) {
        return std::find(seg.entering.begin(), seg.entering.end(), l) != seg.entering.end();
      });
      if (!has_entering) continue;
      for (const auto& l : comp) {
        const long m = flag.mult(l);
        if (m > 0) pred.lower = true;
        if (pair(model, model.curve_class(l), c) - Rat(m) > Rat(0)) pred.upper = true;
      }
    }
    out.push_back(pred);
  }
  return out;
}

RightmostReport rightmost_count(const SurfaceModel& model, const RayProfile& profile, const OkPolygon& polygon) {
  RightmostReport r;
  std::vector<std::vector<Rat>> rows{profile.divisor.coords};
  for (const auto& l : profile.final_support()) rows.push_back(model.curve_class(l).coords);
  const std::size_t base = rank_of(rows);
  rows.push_back(model.curve_class(profile.flag).coords);
  r.flag_in_span = rank_of(rows) == base;
  r.flag_ample = is_model_ample(model, model.curve_class(profile.flag));
  if (r.flag_in_span) {
    r.count = 1;
    r.certified = true;
  } else if (r.flag_ample) {
    r.count = 2;
    r.certified = true;
  } else {
    r.count = static_cast<int>(polygon.count(Position::rightmost));
  }
  return r;
}

PredictionReport compare_predictions(const SurfaceModel& model, const NewtonOkounkov& result, const FlagSpec& flag) {
  PredictionReport r;
  r.predicted = predict_interior_vertices(model, result.profile, flag);
  for (const auto& p : r.predicted) r.observed.push_back({p.t});
  for (const auto& v : result.polygon.vertices) {
    if (v.position != Position::interior) continue;
    auto it = std::find_if(r.observed.begin(), r.observed.end(), [&](const InteriorPrediction& o) { return v.t == QExt(o.t); });
    if (it == r.observed.end()) {
      r.disagreements.push_back("interior vertex at t=" + v.t.to_string() + " is not on a wall");
      continue;
    }
    if (v.side == Side::lower || v.side == Side::degenerate) it->lower = true;
    if (v.side == Side::upper || v.side == Side::degenerate) it->upper = true;
  }
  for (std::size_t i = 0; i < r.predicted.size(); ++i) {
    const auto& p = r.predicted[i];
    const auto& o = r.observed[i];
    if (p.lower != o.lower || p.upper != o.upper) {
      std::ostringstream os;
      os << "wall t=" << p.t << ": predicted lower=" << p.lower << " upper=" << p.upper << ", observed lower=" << o.lower
         << " upper=" << o.upper;
      r.disagreements.push_back(os.str());
    }
  }
  r.rightmost = rightmost_count(model, result.profile, result.polygon);
  r.observed_rightmost = result.polygon.count(Position::rightmost);
  if (r.rightmost.certified && static_cast<std::size_t>(r.rightmost.count) != r.observed_rightmost) {
    r.disagreements.push_back("rightmost: predicted " + std::to_string(r.rightmost.count) + ", observed " +
                              std::to_string(r.observed_rightmost));
  }
  return r;
}

std::vector<SideSlope> side_slopes(const SurfaceModel& model, const RayProfile& profile, const FlagSpec& flag) {
  const DivisorClass& c = model.curve_class(flag.curve);
  const Rat c2 = self_intersection(model, c);
  const BoundaryPair bounds = alpha_beta(model, profile, flag);
  std::vector<SideSlope> out;
  for (std::size_t k = 0; k < profile.segments.size(); ++k) {
    SideSlope s;
    s.upper = -c2;
    for (const auto& [label, a] : profile.segments[k].coeffs) {
      const Rat m(flag.mult(label));
      s.lower += a.slope * m;
      s.upper += a.slope * (m - pair(model, model.curve_class(label), c));
    }
    if (slope_between(bounds.alpha, k) != QExt(s.lower) || slope_between(bounds.beta, k) != QExt(s.upper)) {
      throw InternalError("side slope formula disagrees with the boundary functions");
    }
    out.push_back(s);
  }
  return out;
}

SideLengths side_lengths(const SurfaceModel& model, const RayProfile& profile, const OkPolygon& polygon) {
  SideLengths out;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    out.sides.push_back({i, j, polygon.vertices[j].t - polygon.vertices[i].t,
                         polygon.vertices[j].s - polygon.vertices[i].s});
  }
  std::vector<QExt> left;
  for (const auto& v : polygon.vertices)
    if (v.t == QExt(profile.nu)) left.push_back(v.s);
  if (left.size() == 2) {
    out.leftmost_length = left[0] < left[1] ? left[1] - left[0] : left[0] - left[1];
  } else if (left.size() != 1) {
    throw InternalError("polygon has no leftmost vertex");
  }
  const ZariskiResult z0 = zariski_decompose(model, profile.divisor, profile.candidates);
  out.leftmost_from_decomposition = pair(model, z0.positive_part, model.curve_class(profile.flag));
  if (out.leftmost_length != QExt(out.leftmost_from_decomposition)) {
    throw InternalError("leftmost side length differs from P_0 . C");
  }
  return out;
}

int mc(const SurfaceModel& model, std::span<const std::string> config) {
  if (!is_negative_definite(model, config)) throw InputError("configuration is not negative definite");
  std::size_t best = 0;
  for (const auto& comp : dual_graph_components(model, config)) best = std::max(best, comp.size());
  return static_cast<int>(best);
}

int mv(const SurfaceModel& model, std::span<const std::string> config) {
  const auto k = static_cast<int>(config.size());
  const int rho = static_cast<int>(model.rank());
  if (k > rho - 1) throw InputError("configuration has more than rank-1 curves");
  const int m = mc(model, config);
  return k < rho - 1 ? k + m + 4 : k + m + 3;
}

BoundReport vertex_bound_check(const SurfaceModel& model, const OkPolygon& polygon, const RayProfile& profile,
                               const FlagSpec& flag) {
  BoundReport r;
  const auto& support = profile.final_support();
  const DivisorClass& c = model.curve_class(flag.curve);
  r.vertex_count = polygon.size();
  r.mv_bound = mv(model, support);
  r.rho_bound = 2 * static_cast<int>(model.rank()) + 1;
  r.lower_interior = polygon.count(Position::interior, Side::lower);
  r.upper_interior = polygon.count(Position::interior, Side::upper);
  r.lower_bound = component_union_size(model, support, [&](const std::string& l) { return flag.mult(l) > 0; });
  r.upper_bound = component_union_size(model, support, [&](const std::string& l) {
    return pair(model, model.curve_class(l), c) > Rat(flag.mult(l));
  });
  auto fail = [&](const std::string& what) {
    throw TheoremViolation(what + " (vertices " + std::to_string(r.vertex_count) + ", mv " +
                           std::to_string(r.mv_bound) + ")");
  };
  if (static_cast<int>(r.vertex_count) > r.mv_bound) fail("vertex count exceeds mv(N_mu)");
  if (r.mv_bound > r.rho_bound) fail("mv(N_mu) exceeds 2 rho + 1");
  if (r.lower_interior > r.lower_bound) fail("too many interior lower vertices");
  if (r.upper_interior > r.upper_bound) fail("too many interior upper vertices");
  return r;
}

NewtonOkounkov compute_polygon(const SurfaceModel& model, const DivisorClass& d, const FlagSpec& flag,
                               std::span<const std::string> candidates) {
  NewtonOkounkov out;
  out.profile = walk_ray(model, d, flag.curve, candidates);
  out.bounds = alpha_beta(model, out.profile, flag);
  out.polygon = classify_vertices(build_polygon(out.bounds.alpha, out.bounds.beta), out.profile, out.bounds);
  return out;
}

}  // namespace noksurf
