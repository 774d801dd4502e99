#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "noksurf/lattice.hpp"
#include "noksurf/polygon.hpp"
#include "noksurf/toric.hpp"

namespace noksurf::cli {

/// The flag as written in the document: an existing label or a class that
/// is added to the model as an irreducible curve.
struct FlagInput {
  std::optional<std::string> label;
  std::optional<std::vector<Integer>> cls;
  std::map<std::string, long> local_mult;
};

struct FanInput {
  ToricFan fan;
  std::optional<ToricDivisor> divisor;
  std::optional<std::size_t> flag_index;
};

/// Parsed and shape-checked input document (schema 1).
struct ProblemDoc {
  std::optional<SurfaceModel> surface;
  std::optional<RatMatrix> raw_matrix;  // kept even when the model is invalid
  std::optional<DivisorClass> divisor;
  std::optional<FlagInput> flag;
  std::optional<std::vector<std::string>> candidates;
  std::vector<std::vector<std::string>> configs;
  std::optional<std::vector<std::string>> config;
  std::optional<std::vector<std::string>> master;
  bool independent = false;
  std::optional<int> target;
  std::optional<FanInput> fan;
  std::optional<std::string> surface_error;  // why `surface` is absent
};

/// Reads and validates `text`; InputError messages carry "line:col" for
/// syntax errors and a field path ("surface.curves[1].class") otherwise.
ProblemDoc parse_problem(const std::string& text);
ProblemDoc load_problem(const std::string& path);

/// Model with the document's flag curve added when given as a class, and the
/// matching FlagSpec. InputError when the document has no flag.
std::pair<SurfaceModel, FlagSpec> resolve_flag(const ProblemDoc& doc);

/// Candidates from the document, or every declared curve.
std::vector<std::string> candidates_of(const ProblemDoc& doc, const SurfaceModel& model);

const SurfaceModel& require_surface(const ProblemDoc& doc);
const DivisorClass& require_divisor(const ProblemDoc& doc);

}  // namespace noksurf::cli
