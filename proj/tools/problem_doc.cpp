#include "problem_doc.hpp"

#include <fstream>
#include <sstream>

#include "noksurf/errors.hpp"

namespace noksurf::cli {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw InputError("field '" + path + "': " + what);
}

Rat to_rat(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_string()) {
    try {
      return Rat::parse(j.get<std::string>());
    } catch (const InputError& e) {
      fail(path, e.what());
    }
  }
  fail(path, "expected an integer or a rational string like \"3/2\"");
}

Integer to_integer(const json& j, const std::string& path) {
  const Rat r = to_rat(j, path);
  if (!r.is_integer()) fail(path, "expected an integer, got " + r.to_string());
  return r.num();
}

const json& array_field(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

std::vector<Rat> rat_vector(const json& j, const std::string& path) {
  std::vector<Rat> out;
  const json& a = array_field(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(to_rat(a[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<Integer> integer_vector(const json& j, const std::string& path) {
  std::vector<Integer> out;
  const json& a = array_field(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(to_integer(a[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::string> label_list(const json& j, const std::string& path) {
  std::vector<std::string> out;
  const json& a = array_field(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_string()) fail(path + "[" + std::to_string(i) + "]", "expected a curve label");
    out.push_back(a[i].get<std::string>());
  }
  return out;
}

long small_integer(const json& j, const std::string& path) {
  const Integer z = to_integer(j, path);
  if (!z.fits_slong_p()) fail(path, "integer out of range");
  return z.get_si();
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) fail(path.empty() ? key : path + "." + key, "unknown field");
  }
}

void parse_surface(const json& s, ProblemDoc& doc) {
  check_keys(s, "surface", {"rank", "matrix", "curves", "ample_witness"});
  if (!s.contains("rank")) fail("surface.rank", "missing");
  if (!s.contains("matrix")) fail("surface.matrix", "missing");
  if (!s.contains("ample_witness")) fail("surface.ample_witness", "missing");
  const long rank = small_integer(s["rank"], "surface.rank");
  if (rank < 1) fail("surface.rank", "must be positive");
  const json& m = array_field(s["matrix"], "surface.matrix");
  if (static_cast<long>(m.size()) != rank) fail("surface.matrix", "expected " + std::to_string(rank) + " rows");
  RatMatrix form(static_cast<std::size_t>(rank), static_cast<std::size_t>(rank));
  for (std::size_t i = 0; i < m.size(); ++i) {
    const std::string row_path = "surface.matrix[" + std::to_string(i) + "]";
    const auto row = integer_vector(m[i], row_path);
    if (static_cast<long>(row.size()) != rank) fail(row_path, "expected " + std::to_string(rank) + " entries");
    for (std::size_t j = 0; j < row.size(); ++j) form(i, j) = Rat(row[j]);
  }
  doc.raw_matrix = form;

  std::vector<CurveRecord> curves;
  if (s.contains("curves")) {
    const json& cs = array_field(s["curves"], "surface.curves");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const std::string path = "surface.curves[" + std::to_string(i) + "]";
      check_keys(cs[i], path, {"label", "class"});
      if (!cs[i].contains("label") || !cs[i]["label"].is_string()) fail(path + ".label", "expected a string");
      if (!cs[i].contains("class")) fail(path + ".class", "missing");
      curves.push_back({cs[i]["label"].get<std::string>(), integer_vector(cs[i]["class"], path + ".class"), true});
    }
  }
  const auto witness = integer_vector(s["ample_witness"], "surface.ample_witness");
  try {
    doc.surface.emplace(form, std::move(curves), DivisorClass::from_integers(witness));
  } catch (const InputError& e) {
    doc.surface_error = e.what();
  }
}

void parse_fan(const json& f, ProblemDoc& doc) {
  check_keys(f, "fan", {"rays", "divisor", "flag_index"});
  if (!f.contains("rays")) fail("fan.rays", "missing");
  FanInput in;
  const json& rays = array_field(f["rays"], "fan.rays");
  for (std::size_t i = 0; i < rays.size(); ++i) {
    const std::string path = "fan.rays[" + std::to_string(i) + "]";
    const json& r = array_field(rays[i], path);
    if (r.size() != 2) fail(path, "expected two coordinates");
    in.fan.rays.push_back({small_integer(r[0], path + "[0]"), small_integer(r[1], path + "[1]")});
  }
  if (f.contains("divisor")) {
    ToricDivisor div;
    const json& a = array_field(f["divisor"], "fan.divisor");
    for (std::size_t i = 0; i < a.size(); ++i) div.coeffs.push_back(small_integer(a[i], "fan.divisor[" + std::to_string(i) + "]"));
    if (div.coeffs.size() != in.fan.rays.size()) fail("fan.divisor", "expected one coefficient per ray");
    in.divisor = div;
  }
  if (f.contains("flag_index")) {
    const long i = small_integer(f["flag_index"], "fan.flag_index");
    if (i < 1 || i > static_cast<long>(in.fan.rays.size())) fail("fan.flag_index", "outside 1..number of rays");
    in.flag_index = static_cast<std::size_t>(i);
  }
  doc.fan = in;
}

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

}  // namespace

ProblemDoc parse_problem(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("syntax error at " + line_col(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
  }
  check_keys(j, "", {"schema", "surface", "divisor", "flag", "candidates", "configs", "config", "independent",
                     "master", "target", "fan", "comment"});
  if (!j.contains("schema")) fail("schema", "missing (expected 1)");
  if (!j["schema"].is_number_integer() || j["schema"].get<long>() != 1) fail("schema", "unsupported version");

  ProblemDoc doc;
  if (j.contains("surface")) parse_surface(j["surface"], doc);
  if (j.contains("divisor")) doc.divisor = DivisorClass(rat_vector(j["divisor"], "divisor"));
  if (j.contains("flag")) {
    const json& f = j["flag"];
    check_keys(f, "flag", {"curve", "local_mult"});
    FlagInput in;
    if (!f.contains("curve")) fail("flag.curve", "missing");
    if (f["curve"].is_string()) {
      in.label = f["curve"].get<std::string>();
    } else {
      in.cls = integer_vector(f["curve"], "flag.curve");
    }
    if (f.contains("local_mult")) {
      if (!f["local_mult"].is_object()) fail("flag.local_mult", "expected an object");
      for (const auto& [label, m] : f["local_mult"].items()) {
        in.local_mult[label] = small_integer(m, "flag.local_mult." + label);
      }
    }
    doc.flag = in;
  }
  if (j.contains("candidates")) doc.candidates = label_list(j["candidates"], "candidates");
  if (j.contains("configs")) {
    const json& cs = array_field(j["configs"], "configs");
    for (std::size_t i = 0; i < cs.size(); ++i) doc.configs.push_back(label_list(cs[i], "configs[" + std::to_string(i) + "]"));
  }
  if (j.contains("config")) doc.config = label_list(j["config"], "config");
  if (j.contains("master")) doc.master = label_list(j["master"], "master");
  if (j.contains("independent")) {
    if (!j["independent"].is_boolean()) fail("independent", "expected true or false");
    doc.independent = j["independent"].get<bool>();
  }
  if (j.contains("target")) doc.target = static_cast<int>(small_integer(j["target"], "target"));
  if (j.contains("fan")) parse_fan(j["fan"], doc);

  if (doc.surface && doc.divisor && doc.divisor->size() != doc.surface->rank()) {
    fail("divisor", "expected " + std::to_string(doc.surface->rank()) + " entries");
  }
  return doc;
}

ProblemDoc load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

const SurfaceModel& require_surface(const ProblemDoc& doc) {
  if (doc.surface_error) throw InputError("surface: " + *doc.surface_error);
  if (!doc.surface) fail("surface", "missing");
  return *doc.surface;
}

const DivisorClass& require_divisor(const ProblemDoc& doc) {
  if (!doc.divisor) fail("divisor", "missing");
  return *doc.divisor;
}

std::pair<SurfaceModel, FlagSpec> resolve_flag(const ProblemDoc& doc) {
  const SurfaceModel& model = require_surface(doc);
  if (!doc.flag) fail("flag", "missing");
  const FlagInput& in = *doc.flag;
  if (in.label) {
    if (!model.has_curve(*in.label)) fail("flag.curve", "unknown curve '" + *in.label + "'");
    return {model, FlagSpec{*in.label, in.local_mult}};
  }
  std::string label = "C";
  for (int i = 1; model.has_curve(label); ++i) label = "C_" + std::to_string(i);
  if (in.cls->size() != model.rank()) fail("flag.curve", "expected " + std::to_string(model.rank()) + " entries");
  try {
    return {model.with_curve({label, *in.cls, true}), FlagSpec{label, in.local_mult}};
  } catch (const InputError& e) {
    fail("flag.curve", e.what());
  }
}

std::vector<std::string> candidates_of(const ProblemDoc& doc, const SurfaceModel& model) {
  if (doc.candidates) {
    for (const auto& l : *doc.candidates) {
      if (!model.has_curve(l)) fail("candidates", "unknown curve '" + l + "'");
    }
    return *doc.candidates;
  }
  std::vector<std::string> out;
  for (const auto& l : model.labels()) out.push_back(l);
  return out;
}

}  // namespace noksurf::cli
