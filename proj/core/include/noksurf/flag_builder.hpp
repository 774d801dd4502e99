#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "noksurf/lattice.hpp"
#include "noksurf/polygon.hpp"
#include "noksurf/qext.hpp"

namespace noksurf {

struct SearchOptions {
  int budget = 64;  // halving steps per coefficient
};

/// A model-ample class A = D - sum a_i C_i (+ b B) such that on the ray
/// D - tA the curves C_1..C_k enter the negative part one at a time, in
/// order, and nothing else ever does.
struct OrderedFlagCertificate {
  DivisorClass flag_class;
  std::vector<std::string> order;
  std::map<std::string, Rat> coeffs;
  std::vector<Rat> appearance;  // strictly increasing, aligned with `order`
  QExt mu;
  bool independent = false;     // flag_class not in <D, C_1..C_k>
  DivisorClass perturbation;    // B (zero when not perturbed)
  Rat perturbation_coeff;       // b
};

/// Inductive construction: a_j starts at half of min(1, largest value keeping
/// A' - a C_j positive on the declared curves) and is halved until A stays
/// model-ample, the chambers at rational sample times between the previous
/// walls are unchanged, and a full walk shows the requested order. With
/// `want_independent`, A is then perturbed by a class outside the span.
///
/// InputError if D is not model-ample, the configuration is not negative
/// definite, or independence is requested with k >= rank-1; SearchFailure
/// when the budget runs out.
OrderedFlagCertificate find_ordered_ample_class(const SurfaceModel& model, const DivisorClass& d,
                                                std::span<const std::string> config, bool want_independent,
                                                const SearchOptions& options = {});

/// Re-walks the ray from scratch; throws TheoremViolation if anything
/// recorded in the certificate is not reproduced.
void verify_certificate(const SurfaceModel& model, const DivisorClass& d, const OrderedFlagCertificate& cert);

struct Realization {
  int target = 0;
  std::vector<std::string> sub_config;
  std::string variant;        // "full" or "minus-one"
  std::string point;          // where p sits: a curve label or "off N"
  Integer scale;              // flag class = scale * A
  std::vector<Integer> flag_class;
  OrderedFlagCertificate certificate;
  SurfaceModel model;         // input model plus the flag curve
  FlagSpec flag;
  NewtonOkounkov result;
  std::string assumption;     // geometric input the lattice cannot certify
};

/// Builds a flag whose polygon has exactly `v` vertices, following the
/// prefix construction over `master_config`. InputError for v outside
/// [3, mv(master)] or a master ordering whose first mc prefixes are not
/// connected; TheoremViolation if the polygon does not have v vertices.
Realization realize_vertex_count(const SurfaceModel& model, const DivisorClass& d,
                                 std::span<const std::string> master_config, int v,
                                 const SearchOptions& options = {});

}  // namespace noksurf
