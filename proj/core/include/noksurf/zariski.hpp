#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "noksurf/lattice.hpp"

namespace noksurf {

/// D = P + N relative to a finite candidate set of irreducible curves.
/// `support` lists the curves with strictly positive coefficient, in model
/// declaration order.
struct ZariskiResult {
  std::vector<std::string> support;
  std::map<std::string, Rat> coeffs;
  DivisorClass positive_part;

  /// Coefficient of `label` in N (zero when absent).
  Rat coefficient(const std::string& label) const;
  DivisorClass negative_part(const SurfaceModel& model) const;
};

/// Fixed-point form of the decomposition: start from the curves D is
/// negative on, solve the Gram system on the current set, then add every
/// candidate the trial positive part is negative on, until none remains.
///
/// Throws ModelError when the working set stops being negative definite or a
/// coefficient comes out negative (D not pseudo-effective within the model,
/// or the candidate list is incomplete).
ZariskiResult zariski_decompose(const SurfaceModel& model, const DivisorClass& d,
                                std::span<const std::string> candidates);

/// Solution b of (D - sum_{i in I} b_i C_i) . C_j = 0 for j in I. No sign
/// constraint on the b_i.
std::map<std::string, Rat> relative_negative_part(const SurfaceModel& model, const DivisorClass& d,
                                                  std::span<const std::string> subset);

/// Re-checks every invariant of `result` against the inputs; throws
/// InternalError describing the first failure.
void verify_zariski(const SurfaceModel& model, const DivisorClass& d,
                    std::span<const std::string> candidates, const ZariskiResult& result);

}  // namespace noksurf
