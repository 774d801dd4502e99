#include "noksurf/flag_builder.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>

#include "noksurf/errors.hpp"
#include "noksurf/ray_walk.hpp"
#include "noksurf/zariski.hpp"

namespace noksurf {

namespace {

struct WalkSummary {
  std::vector<std::string> order;
  std::vector<Rat> times;
  std::vector<std::string> final_support;
  QExt mu;
};

std::string fresh_label(const SurfaceModel& model, const std::string& base) {
  std::string label = base;
  for (int i = 1; model.has_curve(label); ++i) label = base + "_" + std::to_string(i);
  return label;
}

Integer denominator_lcm(const DivisorClass& a) {
  Integer l = 1;
  for (const auto& x : a.coords) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.den().get_mpz_t());
  return l;
}

std::vector<Integer> integral_coords(const DivisorClass& a) {
  std::vector<Integer> out;
  for (const auto& x : a.coords) {
    if (!x.is_integer()) throw InternalError("class is not integral");
    out.push_back(x.num());
  }
  return out;
}

// Walks D - tA for rational A by walking the integral multiple mA and
// rescaling times back to the A parameter.
WalkSummary walk_with_class(const SurfaceModel& model, const DivisorClass& d, const DivisorClass& a) {
  const Integer m = denominator_lcm(a);
  const std::string label = fresh_label(model, "flag");
  const SurfaceModel with_flag = model.with_curve({label, integral_coords(Rat(m) * a), true});
  const std::vector<std::string> cands = model.labels();
  const RayProfile profile = walk_ray(with_flag, d, label, cands);
  WalkSummary s;
  for (const auto& [l, t] : profile.appearance) {
    s.order.push_back(l);
    s.times.push_back(t * Rat(m));
  }
  s.final_support = profile.final_support();
  s.mu = profile.mu * QExt(Rat(m));
  return s;
}

bool same_set(std::vector<std::string> a, std::vector<std::string> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

// Nothing but `prefix` enters, in that order, strictly after 0 and before mu.
std::optional<WalkSummary> ordered_walk(const SurfaceModel& model, const DivisorClass& d, const DivisorClass& a,
                                        const std::vector<std::string>& prefix) {
  if (!is_model_ample(model, a)) return std::nullopt;
  WalkSummary s;
  try {
    s = walk_with_class(model, d, a);
  } catch (const ModelError&) {
    return std::nullopt;
  }
  if (s.order != prefix || !same_set(s.final_support, prefix)) return std::nullopt;
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    if (s.times[i].sign() <= 0) return std::nullopt;
    if (i > 0 && !(s.times[i - 1] < s.times[i])) return std::nullopt;
  }
  if (!s.times.empty() && !(QExt(s.times.back()) < s.mu)) return std::nullopt;
  return s;
}

// Rational points strictly inside (0, t_1), (t_1, t_2), ..., (t_k, mu), plus 0.
std::vector<Rat> sample_times(const std::vector<Rat>& times, const QExt& mu) {
  std::vector<Rat> out{Rat()};
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (i + 1 < times.size()) {
      out.push_back((times[i] + times[i + 1]) / Rat(2));
    } else {
      Rat step = Rat(1);
      while (!(QExt(times[i] + step) < mu)) step /= Rat(2);
      out.push_back(times[i] + step / Rat(2));
    }
  }
  return out;
}

// The chamber at each sample time s_i must be exactly C_1..C_i.
bool chambers_preserved(const SurfaceModel& model, const DivisorClass& d, const DivisorClass& a,
                        const std::vector<Rat>& samples, const std::vector<std::string>& order) {
  const std::vector<std::string> cands = model.labels();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    std::vector<std::string> expected(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(std::min(i, order.size())));
    try {
      const auto z = zariski_decompose(model, d - samples[i] * a, cands);
      if (!same_set(z.support, expected)) return false;
    } catch (const ModelError&) {
      return false;
    }
  }
  return true;
}

bool in_span(const std::vector<DivisorClass>& basis, const DivisorClass& x) {
  std::vector<std::vector<Rat>> rows;
  for (const auto& b : basis) rows.push_back(b.coords);
  const std::size_t r = rank_of(rows);
  rows.push_back(x.coords);
  return rank_of(rows) == r;
}

std::string describe(const DivisorClass& a) { return a.to_string(); }

// The cone K of classes x with x.C_i = 0 on the configuration and x.C >= 0
// on the other declared curves. At the end of a ray whose negative part is
// exactly the configuration, P_mu is a nonzero isotropic point of K.
struct NefSlice {
  std::vector<DivisorClass> isotropic;  // rational isotropic points to aim at
  bool excludes_isotropic = false;      // K - {0} lies in the open positive cone
};

NefSlice nef_slice(const SurfaceModel& model, const std::vector<std::string>& config) {
  const std::size_t rho = model.rank();
  const auto& form = model.form();
  auto dual = [&](const DivisorClass& c) {
    std::vector<Rat> row(rho);
    for (std::size_t i = 0; i < rho; ++i)
      for (std::size_t j = 0; j < rho; ++j) row[i] += form(i, j) * c[j];
    return row;
  };
  auto in_config = [&](const std::string& l) { return std::find(config.begin(), config.end(), l) != config.end(); };
  std::vector<std::vector<Rat>> equalities;
  for (const auto& l : config) equalities.push_back(dual(model.curve_class(l)));
  std::vector<std::vector<Rat>> others;
  for (std::size_t x = 0; x < model.curves().size(); ++x)
    if (!in_config(model.curves()[x].label)) others.push_back(dual(model.curve_class(x)));
  auto in_cone = [&](const DivisorClass& p) {
    for (std::size_t x = 0; x < model.curves().size(); ++x) {
      const Rat v = pair(model, p, model.curve_class(x));
      if (v.sign() < 0 || (in_config(model.curves()[x].label) && !v.is_zero())) return false;
    }
    return true;
  };

  NefSlice out;
  auto add_isotropic = [&](const DivisorClass& p) {
    if (self_intersection(model, p) != Rat() || pair(model, p, model.ample_witness()).sign() <= 0 || !in_cone(p)) return;
    for (const auto& q : out.isotropic)
      if (rank_of({q.coords, p.coords}) == 1) return;
    out.isotropic.push_back(p);
  };
  for (std::size_t x = 0; x < model.curves().size(); ++x) add_isotropic(model.curve_class(x));

  std::vector<std::vector<Rat>> all = equalities;
  all.insert(all.end(), others.begin(), others.end());
  const bool pointed = rank_of(all) == rho;
  if (config.size() + 1 > rho) return out;
  const std::size_t pick = rho - 1 - config.size();
  if (others.size() < pick) return out;

  // Extremal rays: kernels of rho-1 independent tight constraints.
  bool all_inside = true;
  std::vector<bool> mask(others.size(), false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(pick), true);
  do {
    std::vector<std::vector<Rat>> rows = equalities;
    for (std::size_t i = 0; i < others.size(); ++i)
      if (mask[i]) rows.push_back(others[i]);
    if (rank_of(rows) != rho - 1) continue;
    for (std::size_t pinned = 0; pinned < rho; ++pinned) {
      RatMatrix a(rho, rho);
      std::vector<Rat> b(rho);
      for (std::size_t r = 0; r + 1 < rho; ++r)
        for (std::size_t c = 0; c < rho; ++c) a(r, c) = rows[r][c];
      a(rho - 1, pinned) = Rat(1);
      b[rho - 1] = Rat(1);
      if (auto sol = solve_linear(a, b)) {
        for (const Rat& sign : {Rat(1), Rat(-1)}) {
          const DivisorClass p = sign * DivisorClass(*sol);
          if (!in_cone(p)) continue;
          add_isotropic(p);
          if (self_intersection(model, p).sign() <= 0 || pair(model, p, model.ample_witness()).sign() <= 0) {
            all_inside = false;
          }
        }
        break;
      }
    }
  } while (std::prev_permutation(mask.begin(), mask.end()));
  out.excludes_isotropic = pointed && all_inside && out.isotropic.empty();
  return out;
}

std::string join(const std::vector<std::string>& labels) {
  std::string out;
  for (const auto& l : labels) out += (out.empty() ? "" : ",") + l;
  return out;
}

// Largest component first in breadth-first order, then the remaining curves
// in their given order, so every prefix up to mc is connected.
std::vector<std::string> connected_order(const SurfaceModel& model, const std::vector<std::string>& config) {
  const auto comps = dual_graph_components(model, config);
  if (comps.empty()) return {};
  std::size_t best = 0;
  for (std::size_t c = 1; c < comps.size(); ++c)
    if (comps[c].size() > comps[best].size()) best = c;
  std::vector<std::string> out{comps[best].front()};
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (const auto& l : comps[best]) {
      if (std::find(out.begin(), out.end(), l) != out.end()) continue;
      if (pair(model, model.curve_class(out[head]), model.curve_class(l)).sign() > 0) out.push_back(l);
    }
  }
  for (const auto& l : config)
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  return out;
}

// (sub-configuration, full variant?) pairs whose vertex count is v: prefixes
// of the master from the longest down, then the other subsets by size. The
// one-less variant comes first at equal size.
std::vector<std::pair<std::vector<std::string>, bool>> realization_plan(const SurfaceModel& model,
                                                                        const std::vector<std::string>& master, int v) {
  std::vector<std::vector<std::string>> subs;
  for (std::size_t k = master.size() + 1; k-- > 0;) subs.emplace_back(master.begin(), master.begin() + static_cast<std::ptrdiff_t>(k));
  if (master.size() < 16) {
    std::vector<std::pair<std::size_t, std::vector<std::string>>> others;
    for (unsigned long mask = 0; mask < (1UL << master.size()); ++mask) {
      std::vector<std::string> sub;
      for (std::size_t i = 0; i < master.size(); ++i)
        if (mask & (1UL << i)) sub.push_back(master[i]);
      if (std::find(subs.begin(), subs.end(), sub) != subs.end()) continue;
      others.emplace_back(sub.size(), connected_order(model, sub));
    }
    std::stable_sort(others.begin(), others.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (auto& o : others) subs.push_back(std::move(o.second));
  }
  std::vector<std::pair<std::vector<std::string>, bool>> plan;
  for (const auto& sub : subs) {
    const int m = mv(model, sub);
    if (m - 1 == v) plan.emplace_back(sub, false);
    if (m == v) plan.emplace_back(sub, true);
  }
  return plan;
}

Realization realize_with(const SurfaceModel& model, const DivisorClass& d, const std::vector<std::string>& sub,
                         bool full, int v, const SearchOptions& options) {
  const int rho = static_cast<int>(model.rank());
  const int sub_mc = mc(model, sub);
  bool independent = static_cast<int>(sub.size()) < rho - 1;
  std::string on_curve;
  if (full) {
    if (!sub.empty()) on_curve = sub[0];
  } else if (sub_mc >= 2) {
    on_curve = sub[1];
  } else if (sub.empty()) {
    independent = false;  // A = D: a triangle
  }
  const std::string point = on_curve.empty() ? "off N" : on_curve;

  OrderedFlagCertificate cert = find_ordered_ample_class(model, d, sub, independent, options);

  // Smallest multiple of A that is integral and meets each C_i at least twice.
  const Integer m0 = denominator_lcm(cert.flag_class);
  Integer scale = m0;
  for (;; scale += m0) {
    const DivisorClass scaled = Rat(scale) * cert.flag_class;
    const bool enough = std::all_of(sub.begin(), sub.end(), [&](const std::string& l) {
      return pair(model, scaled, model.curve_class(l)) >= Rat(2);
    });
    if (enough) break;
  }
  const std::vector<Integer> flag_class = integral_coords(Rat(scale) * cert.flag_class);
  const std::string label = fresh_label(model, "C");
  SurfaceModel with_flag = model.with_curve({label, flag_class, true});
  FlagSpec flag{label, {}};
  if (!on_curve.empty()) flag.local_mult[on_curve] = 1;

  NewtonOkounkov result = compute_polygon(with_flag, d, flag, model.labels());
  verify_certificate(model, d, cert);
  if (static_cast<int>(result.polygon.size()) != v) {
    std::ostringstream os;
    os << "realized polygon has " << result.polygon.size() << " vertices, expected " << v;
    throw TheoremViolation(os.str());
  }
  // The lattice only knows C.C_i; that an irreducible curve of this class
  // exists with exactly this contact profile is assumed, not checked.
  std::ostringstream assumption;
  assumption << "an irreducible curve of class " << DivisorClass::from_integers(flag_class).to_string()
             << " passes through a point p ";
  if (on_curve.empty()) {
    assumption << "off the configuration";
  } else {
    assumption << "of " << on_curve << " with local intersection 1";
  }
  for (const auto& l : sub) {
    const Rat away = pair(with_flag, with_flag.curve_class(label), model.curve_class(l)) - Rat(flag.mult(l));
    assumption << "; meets " << l << " with multiplicity " << away.to_string() << " away from p";
  }
  return Realization{v,     sub,  full ? "full" : "minus-one", point, scale, flag_class, std::move(cert),
                     std::move(with_flag), flag, std::move(result), assumption.str()};
}

}  // namespace

OrderedFlagCertificate find_ordered_ample_class(const SurfaceModel& model, const DivisorClass& d,
                                                std::span<const std::string> config, bool want_independent,
                                                const SearchOptions& options) {
  if (!is_model_ample(model, d)) throw InputError("divisor is not model-ample");
  const std::vector<std::string> order(config.begin(), config.end());
  if (std::set<std::string>(order.begin(), order.end()).size() != order.size()) {
    throw InputError("configuration lists a curve twice");
  }
  if (!is_negative_definite(model, order)) throw InputError("configuration is not negative definite");
  if (want_independent && order.size() + 1 >= model.rank()) {
    throw InputError("an independent flag class needs fewer than rank-1 curves");
  }

  OrderedFlagCertificate cert;
  cert.flag_class = d;
  cert.perturbation = DivisorClass::zero(model.rank());
  WalkSummary current{{}, {}, {}, QExt(1)};

  for (std::size_t j = 0; j < order.size(); ++j) {
    const DivisorClass& cj = model.curve_class(order[j]);
    Rat cap = 1;
    for (std::size_t x = 0; x < model.curves().size(); ++x) {
      if (model.curves()[x].label == order[j]) continue;
      const Rat cx = pair(model, cj, model.curve_class(x));
      if (cx.sign() > 0) cap = min(cap, pair(model, cert.flag_class, model.curve_class(x)) / cx);
    }
    const std::vector<std::string> prefix(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(j + 1));
    const std::vector<Rat> samples = sample_times(current.times, current.mu);
    Rat a = cap / Rat(2);
    bool found = false;
    for (int it = 0; it < options.budget && !found; ++it, a /= Rat(2)) {
      const DivisorClass candidate = cert.flag_class - a * cj;
      if (!is_model_ample(model, candidate)) continue;
      if (!chambers_preserved(model, d, candidate, samples, order)) continue;
      if (auto s = ordered_walk(model, d, candidate, prefix)) {
        cert.flag_class = candidate;
        cert.coeffs[order[j]] = a;
        current = *s;
        found = true;
      }
    }
    if (!found) {
      throw SearchFailure("no coefficient found for '" + order[j] + "' within budget; last verified class " +
                          describe(cert.flag_class) + " orders " + std::to_string(j) + " curve(s)");
    }
  }

  if (want_independent) {
    std::vector<DivisorClass> span_basis{d};
    for (const auto& l : order) span_basis.push_back(model.curve_class(l));
    const NefSlice slice = nef_slice(model, order);
    if (slice.excludes_isotropic) {
      throw SearchFailure("no nef isotropic class is orthogonal to [" + join(order) +
                          "], so no independent flag class keeps exactly these curves");
    }
    std::vector<DivisorClass> directions = slice.isotropic;
    const std::size_t aimed = directions.size();
    for (std::size_t x = 0; x < model.curves().size(); ++x) directions.push_back(model.curve_class(x));
    directions.push_back(model.ample_witness());
    for (std::size_t i = 0; i < model.rank(); ++i) {
      DivisorClass e = DivisorClass::zero(model.rank());
      e[i] = Rat(1);
      directions.push_back(e);
    }
    const std::vector<Rat> samples = sample_times(current.times, current.mu);
    bool found = false;
    for (std::size_t dir = 0; dir < directions.size() && !found; ++dir) {
      const DivisorClass& b_dir = directions[dir];
      if (in_span(span_basis, b_dir)) continue;
      Rat b = Rat(1, 2);
      for (int it = 0; it < options.budget && !found; ++it, b /= Rat(2)) {
        std::vector<Rat> signs{-b};
        if (dir >= aimed) signs.push_back(b);
        for (const Rat& signed_b : signs) {
          const DivisorClass candidate = cert.flag_class + signed_b * b_dir;
          if (!is_model_ample(model, candidate)) continue;
          if (!chambers_preserved(model, d, candidate, samples, order)) continue;
          if (auto s = ordered_walk(model, d, candidate, order)) {
            cert.flag_class = candidate;
            cert.perturbation = b_dir;
            cert.perturbation_coeff = signed_b;
            current = *s;
            found = true;
            break;
          }
        }
      }
    }
    if (!found) {
      throw SearchFailure("no independent perturbation found within budget; last verified class " +
                          describe(cert.flag_class));
    }
  }

  cert.order = order;
  cert.appearance = current.times;
  cert.mu = current.mu;
  std::vector<DivisorClass> span_basis{d};
  for (const auto& l : order) span_basis.push_back(model.curve_class(l));
  cert.independent = !in_span(span_basis, cert.flag_class);
  verify_certificate(model, d, cert);
  return cert;
}

void verify_certificate(const SurfaceModel& model, const DivisorClass& d, const OrderedFlagCertificate& cert) {
  if (!is_model_ample(model, cert.flag_class)) throw TheoremViolation("certificate class is not model-ample");
  WalkSummary s;
  try {
    s = walk_with_class(model, d, cert.flag_class);
  } catch (const ModelError& e) {
    throw TheoremViolation(std::string("certificate walk failed: ") + e.what());
  }
  if (s.order != cert.order || !same_set(s.final_support, cert.order)) {
    throw TheoremViolation("certificate order not reproduced by walk_ray");
  }
  if (s.times != cert.appearance || !(s.mu == cert.mu)) {
    throw TheoremViolation("certificate appearance times not reproduced by walk_ray");
  }
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    if (s.times[i].sign() <= 0 || (i > 0 && !(s.times[i - 1] < s.times[i]))) {
      throw TheoremViolation("certificate appearance times not strictly increasing");
    }
  }
  std::vector<std::vector<Rat>> rows{d.coords};
  for (const auto& l : cert.order) rows.push_back(model.curve_class(l).coords);
  const std::size_t r = rank_of(rows);
  rows.push_back(cert.flag_class.coords);
  if ((rank_of(rows) > r) != cert.independent) throw TheoremViolation("certificate independence flag is wrong");
}

Realization realize_vertex_count(const SurfaceModel& model, const DivisorClass& d,
                                 std::span<const std::string> master_config, int v, const SearchOptions& options) {
  if (!is_model_ample(model, d)) throw InputError("divisor is not model-ample");
  const std::vector<std::string> master(master_config.begin(), master_config.end());
  const int top_mc = mc(model, master);
  for (int i = 1; i <= top_mc; ++i) {
    const std::vector<std::string> prefix(master.begin(), master.begin() + i);
    if (dual_graph_components(model, prefix).size() != 1) {
      throw InputError("master configuration must start with a connected chain of mc curves");
    }
  }
  const int top = mv(model, master);
  if (v < 3 || v > top) {
    throw InputError("vertex count " + std::to_string(v) + " outside [3, " + std::to_string(top) + "]");
  }

  std::string failures;
  for (const auto& [sub, full] : realization_plan(model, master, v)) {
    try {
      return realize_with(model, d, sub, full, v, options);
    } catch (const SearchFailure& e) {
      failures += "\n  [" + join(sub) + "] " + (full ? "full" : "minus-one") + ": " + e.what();
    }
  }
  throw SearchFailure("no sub-configuration realizes " + std::to_string(v) + " vertices:" + failures);
}

}  // namespace noksurf
