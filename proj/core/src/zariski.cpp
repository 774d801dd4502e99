#include "noksurf/zariski.hpp"

#include <algorithm>
#include <set>

#include "noksurf/errors.hpp"

namespace noksurf {

namespace {

std::vector<std::string> sorted_by_declaration(const SurfaceModel& model, std::vector<std::string> labels) {
  std::sort(labels.begin(), labels.end(), [&](const std::string& a, const std::string& b) {
    return model.index_of(a) < model.index_of(b);
  });
  return labels;
}

void check_candidates(const SurfaceModel& model, std::span<const std::string> candidates) {
  std::set<std::string> seen;
  for (const auto& c : candidates) {
    if (!model.curve(c).declared_irreducible) {
      throw InputError("candidate '" + c + "' is not declared irreducible");
    }
    if (!seen.insert(c).second) throw InputError("duplicate candidate '" + c + "'");
  }
}

// Solves the Gram system on `set`; ModelError when singular.
std::vector<Rat> gram_solve(const SurfaceModel& model, const DivisorClass& d,
                            const std::vector<std::string>& set) {
  std::vector<Rat> rhs;
  rhs.reserve(set.size());
  for (const auto& l : set) rhs.push_back(pair(model, d, model.curve_class(l)));
  auto sol = solve_linear(model.gram(set), std::move(rhs));
  if (!sol) throw ModelError("candidate set contains non-negative-definite support (singular Gram matrix)");
  return *sol;
}

}  // namespace

Rat ZariskiResult::coefficient(const std::string& label) const {
  auto it = coeffs.find(label);
  return it == coeffs.end() ? Rat() : it->second;
}

DivisorClass ZariskiResult::negative_part(const SurfaceModel& model) const {
  DivisorClass n = DivisorClass::zero(model.rank());
  for (const auto& [label, a] : coeffs) n += a * model.curve_class(label);
  return n;
}

ZariskiResult zariski_decompose(const SurfaceModel& model, const DivisorClass& d,
                                std::span<const std::string> candidates) {
  if (d.size() != model.rank()) throw InputError("divisor dimension does not match rank");
  check_candidates(model, candidates);

  std::vector<std::string> set;
  for (const auto& c : candidates)
    if (pair(model, d, model.curve_class(c)).sign() < 0) set.push_back(c);

  std::vector<Rat> coeffs;
  DivisorClass p = d;
  for (std::size_t round = 0; round <= candidates.size(); ++round) {
    if (set.empty()) break;
    if (!is_negative_definite(model, set)) {
      throw ModelError("candidate set contains non-negative-definite support");
    }
    coeffs = gram_solve(model, d, set);
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (coeffs[i].sign() < 0) {
        throw ModelError("class not pseudo-effective within model, or candidate set inconsistent (coefficient of '" +
                         set[i] + "' is " + coeffs[i].to_string() + ")");
      }
    }
    p = d;
    for (std::size_t i = 0; i < set.size(); ++i) p -= coeffs[i] * model.curve_class(set[i]);
    std::vector<std::string> violators;
    for (const auto& c : candidates) {
      if (std::find(set.begin(), set.end(), c) != set.end()) continue;
      if (pair(model, p, model.curve_class(c)).sign() < 0) violators.push_back(c);
    }
    if (violators.empty()) break;
    set.insert(set.end(), violators.begin(), violators.end());
  }

  // A nef P has P^2 >= 0 and P.W >= 0; otherwise D is not pseudo-effective
  // or a curve it is negative on was not declared.
  if (self_intersection(model, p).sign() < 0 || pair(model, p, model.ample_witness()).sign() < 0) {
    throw ModelError("class not pseudo-effective within model, or candidate set incomplete (positive part " +
                     p.to_string() + " is not nef)");
  }

  ZariskiResult result;
  result.positive_part = p;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    result.coeffs.emplace(set[i], coeffs[i]);
    result.support.push_back(set[i]);
  }
  result.support = sorted_by_declaration(model, std::move(result.support));
  return result;
}

std::map<std::string, Rat> relative_negative_part(const SurfaceModel& model, const DivisorClass& d,
                                                  std::span<const std::string> subset) {
  std::map<std::string, Rat> out;
  if (subset.empty()) return out;
  std::vector<std::string> set(subset.begin(), subset.end());
  const auto b = gram_solve(model, d, set);
  for (std::size_t i = 0; i < set.size(); ++i) out.emplace(set[i], b[i]);
  return out;
}

void verify_zariski(const SurfaceModel& model, const DivisorClass& d,
                    std::span<const std::string> candidates, const ZariskiResult& result) {
  DivisorClass p = d - result.negative_part(model);
  if (p != result.positive_part) throw InternalError("zariski: P != D - N");
  for (const auto& l : result.support) {
    if (result.coefficient(l).sign() <= 0) throw InternalError("zariski: nonpositive support coefficient");
    if (!pair(model, p, model.curve_class(l)).is_zero()) {
      throw InternalError("zariski: P not orthogonal to support curve '" + l + "'");
    }
  }
  for (const auto& c : candidates) {
    if (pair(model, p, model.curve_class(c)).sign() < 0) {
      throw InternalError("zariski: P negative on candidate '" + c + "'");
    }
  }
  if (!is_negative_definite(model, result.support)) {
    throw InternalError("zariski: support not negative definite");
  }
}

}  // namespace noksurf
