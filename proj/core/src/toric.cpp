#include "noksurf/toric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "noksurf/errors.hpp"

namespace noksurf {

namespace {

long det(const LatticeVector& a, const LatticeVector& b) { return a[0] * b[1] - a[1] * b[0]; }

std::size_t next(std::size_t i, std::size_t n) { return (i + 1) % n; }
std::size_t prev(std::size_t i, std::size_t n) { return (i + n - 1) % n; }

Rat dot(const RatPoint& m, const LatticeVector& v) { return m[0] * Rat(v[0]) + m[1] * Rat(v[1]); }

std::string points_to_string(const std::vector<RatPoint>& pts) {
  std::string out = "[";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ",";
    out += point_to_string(pts[i]);
  }
  return out + "]";
}

std::vector<RatPoint> sorted(std::vector<RatPoint> pts) {
  std::sort(pts.begin(), pts.end());
  return pts;
}

Rat shoelace_twice(const std::vector<RatPoint>& pts) {
  Rat s;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& a = pts[i];
    const auto& b = pts[next(i, pts.size())];
    s += a[0] * b[1] - a[1] * b[0];
  }
  return s;
}

void check_flag_index(const ToricFan& fan, std::size_t flag_index) {
  if (flag_index < 1 || flag_index > fan.size()) {
    throw InputError("flag index " + std::to_string(flag_index) + " outside 1.." + std::to_string(fan.size()));
  }
}

void check_divisor(const ToricFan& fan, const ToricDivisor& div) {
  if (div.coeffs.size() != fan.size()) {
    throw InputError("toric divisor has " + std::to_string(div.coeffs.size()) + " coefficients for " +
                     std::to_string(fan.size()) + " rays");
  }
}

}  // namespace

void ToricFan::validate() const {
  const std::size_t n = rays.size();
  if (n < 3) throw InputError("fan needs at least 3 rays");
  double winding = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& v = rays[i];
    if (std::gcd(v[0], v[1]) != 1) {
      throw InputError("ray " + std::to_string(i + 1) + " is not primitive");
    }
    const auto& w = rays[next(i, n)];
    if (det(v, w) != 1) {
      throw InputError("rays " + std::to_string(i + 1) + "," + std::to_string(next(i, n) + 1) +
                       " do not form a positively oriented unimodular basis");
    }
    winding += std::atan2(static_cast<double>(det(v, w)), static_cast<double>(v[0] * w[0] + v[1] * w[1]));
  }
  if (std::lround(winding / (2 * std::numbers::pi)) != 1) throw InputError("fan rays wind more than once");
}

long ToricFan::self_intersection_number(std::size_t i) const {
  const std::size_t n = rays.size();
  const auto& v = rays[i];
  const LatticeVector s{rays[prev(i, n)][0] + rays[next(i, n)][0], rays[prev(i, n)][1] + rays[next(i, n)][1]};
  // s is parallel to v since both neighbours have det 1 with v
  return v[0] != 0 ? s[0] / v[0] : s[1] / v[1];
}

long ToricFan::intersection(std::size_t i, std::size_t j) const {
  const std::size_t n = rays.size();
  if (i == j) return -self_intersection_number(i);
  return (next(i, n) == j || next(j, n) == i) ? 1 : 0;
}

DivisorClass ToricModel::divisor_class(const ToricDivisor& div) const {
  if (div.coeffs.size() != classes.size()) throw InputError("toric divisor length does not match the fan");
  DivisorClass out = DivisorClass::zero(model.rank());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    out += Rat(div.coeffs[i]) * DivisorClass::from_integers(classes[i]);
  }
  return out;
}

ToricModel fan_to_model(const ToricFan& fan, std::optional<std::vector<Integer>> witness) {
  fan.validate();
  const std::size_t n = fan.size();
  const std::size_t rho = n - 2;
  const auto& va = fan.rays[n - 2];
  const auto& vb = fan.rays[n - 1];

  std::vector<std::vector<Integer>> classes(n, std::vector<Integer>(rho, 0));
  for (std::size_t i = 0; i < rho; ++i) {
    classes[i][i] = 1;
    classes[n - 2][i] = -det(fan.rays[i], vb);
    classes[n - 1][i] = -det(va, fan.rays[i]);
  }

  RatMatrix q(rho, rho);
  for (std::size_t i = 0; i < rho; ++i)
    for (std::size_t j = 0; j < rho; ++j) q(i, j) = Rat(fan.intersection(i, j));

  auto pair_int = [&](const std::vector<Integer>& a, const std::vector<Integer>& b) {
    Rat s;
    for (std::size_t i = 0; i < rho; ++i)
      for (std::size_t j = 0; j < rho; ++j) s += Rat(a[i]) * q(i, j) * Rat(b[j]);
    return s;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (pair_int(classes[i], classes[j]) != Rat(fan.intersection(i, j))) {
        throw InternalError("eliminated classes do not reproduce toric intersection numbers");
      }

  if (!witness) {
    auto ample = [&](const std::vector<Integer>& w) {
      if (pair_int(w, w).sign() <= 0) return false;
      return std::all_of(classes.begin(), classes.end(), [&](const auto& c) { return pair_int(w, c).sign() > 0; });
    };
    for (long r = 1; r <= 8 && !witness; ++r) {
      std::vector<long> idx(rho, -r);
      while (true) {
        std::vector<Integer> w(idx.begin(), idx.end());
        if (ample(w)) {
          witness = w;
          break;
        }
        std::size_t k = 0;
        while (k < rho && idx[k] == r) idx[k++] = -r;
        if (k == rho) break;
        ++idx[k];
      }
    }
    if (!witness) throw InputError("no ample class found in the search box; supply a witness");
  }

  std::vector<CurveRecord> curves;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("D" + std::to_string(i + 1));
    curves.push_back({labels.back(), classes[i], true});
  }
  return ToricModel{SurfaceModel(q, std::move(curves), DivisorClass::from_integers(*witness)), labels, classes};
}

ToricPolygon newton_polygon(const ToricFan& fan, const ToricDivisor& div) {
  fan.validate();
  check_divisor(fan, div);
  const std::size_t n = fan.size();
  // m_i is the corner between the edges normal to v_i and v_{i+1}.
  std::vector<RatPoint> corners(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& v = fan.rays[i];
    const auto& w = fan.rays[next(i, n)];
    const Rat a(-div.coeffs[i]);
    const Rat b(-div.coeffs[next(i, n)]);
    // <m,v> = a, <m,w> = b with det(v,w) = 1
    corners[i] = {a * Rat(w[1]) - b * Rat(v[1]), b * Rat(v[0]) - a * Rat(w[0])};
  }
  ToricPolygon out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& from = corners[prev(i, n)];
    const auto& to = corners[i];
    // the edge runs along the primitive direction (v_y, -v_x)
    const auto& v = fan.rays[i];
    const Rat len = v[1] != 0 ? (to[0] - from[0]) / Rat(v[1]) : (to[1] - from[1]) / Rat(-v[0]);
    if (len.sign() < 0) {
      throw DegenerateInput("divisor is not nef: edge normal to ray " + std::to_string(i + 1) +
                            " has negative length " + len.to_string());
    }
    out.edge_lengths.push_back(len);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (out.vertices.empty() || out.vertices.back() != corners[i]) out.vertices.push_back(corners[i]);
  }
  while (out.vertices.size() > 1 && out.vertices.front() == out.vertices.back()) out.vertices.pop_back();
  if (out.vertices.size() == 2) throw DegenerateInput("Newton polygon is a segment");
  return out;
}

ToricPolygon monomial_okounkov(const ToricFan& fan, const ToricDivisor& div, std::size_t flag_index) {
  check_flag_index(fan, flag_index);
  ToricPolygon p = newton_polygon(fan, div);
  const std::size_t n = fan.size();
  const std::size_t i = flag_index - 1;
  const std::size_t j = next(i, n);
  for (auto& m : p.vertices) {
    m = RatPoint{dot(m, fan.rays[i]) + Rat(div.coeffs[i]), dot(m, fan.rays[j]) + Rat(div.coeffs[j])};
  }
  // same starting vertex as the ray-walk polygon: lowest leftmost
  std::rotate(p.vertices.begin(), std::min_element(p.vertices.begin(), p.vertices.end()), p.vertices.end());
  return p;
}

CrosscheckReport crosscheck(const ToricFan& fan, const ToricDivisor& div, std::size_t flag_index) {
  check_flag_index(fan, flag_index);
  const ToricModel tm = fan_to_model(fan);
  const DivisorClass d = tm.divisor_class(div);
  if (!is_model_ample(tm.model, d)) throw InputError("toric divisor is not ample");

  const std::size_t n = fan.size();
  const std::size_t i = flag_index - 1;
  FlagSpec flag{tm.labels[i], {{tm.labels[next(i, n)], 1}}};
  const NewtonOkounkov no = compute_polygon(tm.model, d, flag, tm.labels);

  CrosscheckReport report;
  for (const auto& v : no.polygon.vertices) report.lattice_side.push_back({v.t.rational(), v.s.rational()});
  report.toric_side = monomial_okounkov(fan, div, flag_index).vertices;
  report.self_intersection = self_intersection(tm.model, d);
  report.area = shoelace_twice(report.toric_side) / Rat(2);

  if (sorted(report.lattice_side) != sorted(report.toric_side)) {
    throw OracleMismatch("polygons differ: ray walk " + points_to_string(report.lattice_side) + " vs monomial map " +
                         points_to_string(report.toric_side));
  }
  if (report.area * Rat(2) != report.self_intersection) {
    throw OracleMismatch("2*area " + (report.area * Rat(2)).to_string() + " differs from D^2 " +
                         report.self_intersection.to_string());
  }
  return report;
}

std::string point_to_string(const RatPoint& p) { return "(" + p[0].to_string() + "," + p[1].to_string() + ")"; }

}  // namespace noksurf
