#include "noksurf/ray_walk.hpp"

#include <algorithm>
#include <optional>

#include "noksurf/errors.hpp"
#include "noksurf/zariski.hpp"

namespace noksurf {

namespace {

struct ChamberSolution {
  std::vector<Affine> coeffs;  // aligned with the support
  DivisorClass p0;             // P_t = p0 + t p1
  DivisorClass p1;
};

ChamberSolution solve_chamber(const SurfaceModel& model, const DivisorClass& d, const DivisorClass& c,
                              const std::vector<std::string>& support) {
  ChamberSolution out{{}, d, -1 * c};
  if (support.empty()) return out;
  if (!is_negative_definite(model, support)) {
    throw ModelError("candidate set contains non-negative-definite support");
  }
  const RatMatrix g = model.gram(support);
  std::vector<Rat> rhs0, rhs1;
  for (const auto& l : support) {
    rhs0.push_back(pair(model, d, model.curve_class(l)));
    rhs1.push_back(-pair(model, c, model.curve_class(l)));
  }
  auto a0 = solve_linear(g, rhs0);
  auto a1 = solve_linear(g, rhs1);
  if (!a0 || !a1) throw ModelError("singular Gram matrix on chamber support");
  for (std::size_t i = 0; i < support.size(); ++i) {
    out.coeffs.push_back({(*a0)[i], (*a1)[i]});
    out.p0 -= (*a0)[i] * model.curve_class(support[i]);
    out.p1 -= (*a1)[i] * model.curve_class(support[i]);
  }
  return out;
}

// Lexicographic sign of value + slope*eps for 0 < eps << 1.
int right_sign(const Rat& value, const Rat& slope) {
  return value.sign() != 0 ? value.sign() : slope.sign();
}

// First root > tau of A t^2 + 2B t + C, given that the value at tau is > 0.
std::optional<QExt> first_root_after(const Rat& a, const Rat& b, const Rat& c, const Rat& tau) {
  if (a.is_zero()) {
    if (b.is_zero()) return std::nullopt;
    const Rat root = -c / (Rat(2) * b);
    if (root > tau) return QExt(root);
    return std::nullopt;
  }
  const Rat disc = b * b - a * c;
  if (disc.sign() < 0) return std::nullopt;
  const QExt sq = QExt::sqrt_of(disc);
  // (-B - sqrt(disc)) / A is the larger root when A < 0 and the smaller when A > 0.
  const QExt root = (QExt(-b) - sq) / QExt(a);
  if (root > QExt(tau)) return root;
  return std::nullopt;
}

}  // namespace

DivisorClass Segment::positive_part_at(const Rat& t) const { return positive_constant + t * positive_slope; }

const Segment& RayProfile::segment_at(const Rat& t) const {
  for (const auto& s : segments)
    if (QExt(t) <= s.t_hi) return s;
  return segments.back();
}

Rat nu(const SurfaceModel& model, const DivisorClass& d, const std::string& flag,
       std::span<const std::string> candidates) {
  std::vector<std::string> cands(candidates.begin(), candidates.end());
  if (std::find(cands.begin(), cands.end(), flag) == cands.end()) cands.push_back(flag);
  return zariski_decompose(model, d, cands).coefficient(flag);
}

RayProfile walk_ray(const SurfaceModel& model, const DivisorClass& d, const std::string& flag,
                    std::span<const std::string> candidates) {
  if (!model.curve(flag).declared_irreducible) throw InputError("flag curve must be irreducible");
  RayProfile profile;
  profile.divisor = d;
  profile.flag = flag;
  profile.candidates.assign(candidates.begin(), candidates.end());
  if (std::find(profile.candidates.begin(), profile.candidates.end(), flag) == profile.candidates.end()) {
    profile.candidates.push_back(flag);
  }
  const auto& cands = profile.candidates;
  const DivisorClass& c = model.curve_class(flag);
  auto by_declaration = [&](std::vector<std::string>& v) {
    std::sort(v.begin(), v.end(),
              [&](const std::string& x, const std::string& y) { return model.index_of(x) < model.index_of(y); });
  };

  const ZariskiResult z0 = zariski_decompose(model, d, cands);
  profile.nu = z0.coefficient(flag);
  const DivisorClass& p0 = z0.positive_part;
  if (self_intersection(model, p0).sign() <= 0 || pair(model, p0, model.ample_witness()).sign() <= 0) {
    throw ModelError("divisor is not big in the model (positive part has P^2 <= 0)");
  }

  Rat tau = profile.nu;
  std::vector<std::string> support = zariski_decompose(model, d - tau * c, cands).support;
  std::vector<std::string> previous;

  const std::size_t max_segments = cands.size() + 2;
  for (std::size_t iter = 0;; ++iter) {
    if (iter > max_segments) throw InternalError("walk_ray did not terminate");

    // One-sided Zariski iteration at tau+eps, starting from the current support.
    ChamberSolution sol;
    for (std::size_t round = 0;; ++round) {
      if (round > cands.size()) throw InternalError("chamber enlargement did not terminate");
      sol = solve_chamber(model, d, c, support);
      for (std::size_t i = 0; i < support.size(); ++i) {
        if (right_sign(sol.coeffs[i].at(tau), sol.coeffs[i].slope) < 0) {
          throw ModelError("support decreased; invalid model input (curve '" + support[i] + "')");
        }
      }
      std::vector<std::string> violators;
      for (const auto& k : cands) {
        if (std::find(support.begin(), support.end(), k) != support.end()) continue;
        const DivisorClass& ck = model.curve_class(k);
        const Rat f0 = pair(model, sol.p0, ck);
        const Rat f1 = pair(model, sol.p1, ck);
        if (right_sign(f0 + f1 * tau, f1) < 0) violators.push_back(k);
      }
      if (violators.empty()) break;
      support.insert(support.end(), violators.begin(), violators.end());
      by_declaration(support);
    }

    Segment seg;
    seg.t_lo = tau;
    seg.positive_constant = sol.p0;
    seg.positive_slope = sol.p1;
    for (std::size_t i = 0; i < support.size(); ++i) {
      const Affine& a = sol.coeffs[i];
      if (a.slope.is_zero() && a.at(tau).is_zero()) continue;
      seg.support.push_back(support[i]);
      seg.coeffs.emplace(support[i], a);
    }
    for (const auto& l : previous) {
      if (std::find(seg.support.begin(), seg.support.end(), l) == seg.support.end()) {
        throw ModelError("support decreased; invalid model input (curve '" + l + "')");
      }
    }
    for (const auto& l : seg.support) {
      if (std::find(previous.begin(), previous.end(), l) == previous.end()) seg.entering.push_back(l);
    }
    if (iter > 0 && seg.entering.empty()) throw InternalError("wall crossing without a new curve");
    support = seg.support;

    // Next wall: a curve outside the support whose pairing with P_t reaches 0.
    std::optional<Rat> wall;
    for (const auto& k : cands) {
      if (std::find(support.begin(), support.end(), k) != support.end()) continue;
      const DivisorClass& ck = model.curve_class(k);
      const Rat f0 = pair(model, sol.p0, ck);
      const Rat f1 = pair(model, sol.p1, ck);
      if (f1.sign() >= 0) continue;
      const Rat root = -f0 / f1;
      if (!wall || root < *wall) wall = root;
    }

    const Rat qa = self_intersection(model, sol.p1);
    const Rat qb = pair(model, sol.p0, sol.p1);
    const Rat qc = self_intersection(model, sol.p0);
    if ((qa * tau * tau + Rat(2) * qb * tau + qc).sign() <= 0) {
      throw InternalError("positive part not big at the start of a chamber");
    }
    const std::optional<QExt> exit = first_root_after(qa, qb, qc, tau);
    bool last = false;
    if (exit && (!wall || *exit <= QExt(*wall))) {
      seg.t_hi = *exit;
      last = true;
    } else if (wall) {
      seg.t_hi = QExt(*wall);
    } else {
      throw ModelError("ray never exits big cone in model");
    }

    for (const auto& l : seg.support) {
      const Affine& a = seg.coeffs.at(l);
      if (a.slope.sign() >= 0) continue;
      const Rat zero_at = -a.constant / a.slope;
      if (zero_at > tau && QExt(zero_at) <= seg.t_hi) {
        throw ModelError("support decreased; invalid model input (curve '" + l + "')");
      }
    }

    previous = seg.support;
    profile.segments.push_back(std::move(seg));
    if (last) {
      profile.mu = profile.segments.back().t_hi;
      break;
    }
    tau = *wall;
  }

  for (const auto& s : profile.segments)
    for (const auto& l : s.entering) profile.appearance.emplace_back(l, s.t_lo);
  profile.appearance = appearance_times(profile);
  return profile;
}

std::vector<std::pair<std::string, Rat>> appearance_times(const RayProfile& profile) {
  auto out = profile.appearance;
  // Segments are emitted in time order and `entering` in declaration order,
  // so a stable sort on time keeps the tie order.
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  return out;
}

}  // namespace noksurf
