#include "cli.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "noksurf/errors.hpp"
#include "noksurf/flag_builder.hpp"
#include "noksurf/polygon.hpp"
#include "noksurf/ray_walk.hpp"
#include "noksurf/toric.hpp"
#include "noksurf/zariski.hpp"
#include "problem_doc.hpp"
#include "svg.hpp"

namespace noksurf::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct Options {
  std::string command;
  std::string input;
  std::string format = "json";
  std::string svg;
  int budget = 64;
};

ojson str(const Rat& r) { return r.to_string(); }
ojson str(const QExt& x) { return x.to_string(); }

ojson cls(const DivisorClass& d) {
  ojson a = ojson::array();
  for (const auto& x : d.coords) a.push_back(x.to_string());
  return a;
}

ojson integers(const std::vector<Integer>& v) {
  ojson a = ojson::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

ojson labels(const std::vector<std::string>& v) { return ojson(v); }


ojson vertices(const OkPolygon& p) {
  ojson a = ojson::array();
  for (const auto& v : p.vertices) a.push_back({{"t", str(v.t)}, {"s", str(v.s)}, {"tag", v.tag()}});
  return a;
}

ojson rat_points(const std::vector<RatPoint>& pts) {
  ojson a = ojson::array();
  for (const auto& p : pts) a.push_back(point_to_string(p));
  return a;
}

ojson profile_json(const RayProfile& p) {
  ojson segs = ojson::array();
  for (const auto& s : p.segments) {
    ojson coeffs = ojson::object();
    for (const auto& [l, a] : s.coeffs) coeffs[l] = {{"constant", str(a.constant)}, {"slope", str(a.slope)}};
    segs.push_back({{"t_lo", str(s.t_lo)},
                    {"t_hi", str(s.t_hi)},
                    {"support", labels(s.support)},
                    {"entering", labels(s.entering)},
                    {"coefficients", coeffs},
                    {"positive_part", {{"constant", cls(s.positive_constant)}, {"slope", cls(s.positive_slope)}}}});
  }
  ojson app = ojson::array();
  for (const auto& [l, t] : p.appearance) app.push_back({{"curve", l}, {"t", str(t)}});
  return {{"flag", p.flag}, {"nu", str(p.nu)}, {"mu", str(p.mu)}, {"segments", segs}, {"appearance", app}};
}

ojson pwl_json(const PiecewiseLinear& f) {
  ojson a = ojson::array();
  for (std::size_t i = 0; i < f.breakpoints.size(); ++i) a.push_back({{"t", str(f.breakpoints[i])}, {"value", str(f.values[i])}});
  return a;
}

ojson certificate_json(const OrderedFlagCertificate& c) {
  ojson coeffs = ojson::object();
  for (const auto& [l, a] : c.coeffs) coeffs[l] = str(a);
  ojson times = ojson::array();
  for (const auto& t : c.appearance) times.push_back(str(t));
  return {{"flag_class", cls(c.flag_class)},
          {"order", labels(c.order)},
          {"coefficients", coeffs},
          {"appearance", times},
          {"mu", str(c.mu)},
          {"independent", c.independent},
          {"perturbation", cls(c.perturbation)},
          {"perturbation_coefficient", str(c.perturbation_coeff)}};
}

// --- commands -------------------------------------------------------------

ojson cmd_check_lattice(const ProblemDoc& doc, int& code) {
  if (!doc.raw_matrix) throw InputError("field 'surface': missing");
  const Inertia in = inertia(*doc.raw_matrix);
  ojson out{{"rank", doc.raw_matrix->rows()}, {"inertia", in.to_string()}};
  if (doc.surface_error) {
    out["status"] = "INVALID";
    out["reason"] = *doc.surface_error;
    code = kInputFailure;
    return out;
  }
  const SurfaceModel& m = *doc.surface;
  out["status"] = "OK";
  ojson curves = ojson::array();
  for (std::size_t i = 0; i < m.curves().size(); ++i) {
    curves.push_back({{"label", m.curves()[i].label},
                      {"self_intersection", str(self_intersection(m, m.curve_class(i)))},
                      {"witness_degree", str(pair(m, m.ample_witness(), m.curve_class(i)))}});
  }
  out["curves"] = curves;
  out["witness_square"] = str(self_intersection(m, m.ample_witness()));
  return out;
}

ojson cmd_zariski(const ProblemDoc& doc) {
  const SurfaceModel& m = require_surface(doc);
  const DivisorClass& d = require_divisor(doc);
  const auto cands = candidates_of(doc, m);
  const ZariskiResult z = zariski_decompose(m, d, cands);
  verify_zariski(m, d, cands, z);
  ojson coeffs = ojson::object();
  for (const auto& l : z.support) coeffs[l] = str(z.coefficient(l));
  return {{"divisor", cls(d)},
          {"support", labels(z.support)},
          {"coefficients", coeffs},
          {"positive_part", cls(z.positive_part)},
          {"positive_square", str(self_intersection(m, z.positive_part))},
          {"negative_part", cls(z.negative_part(m))}};
}

ojson cmd_ray_profile(const ProblemDoc& doc) {
  const auto [m, flag] = resolve_flag(doc);
  const DivisorClass& d = require_divisor(doc);
  return profile_json(walk_ray(m, d, flag.curve, candidates_of(doc, require_surface(doc))));
}

ojson cmd_polygon(const ProblemDoc& doc, const Options& opt) {
  const auto [m, flag] = resolve_flag(doc);
  validate_flag(m, flag);
  const DivisorClass& d = require_divisor(doc);
  const NewtonOkounkov no = compute_polygon(m, d, flag, candidates_of(doc, require_surface(doc)));
  const BoundReport bounds = vertex_bound_check(m, no.polygon, no.profile, flag);
  const PredictionReport pred = compare_predictions(m, no, flag);
  if (!pred.agree()) throw TheoremViolation("vertex prediction failed: " + pred.disagreements.front());
  const auto slopes = side_slopes(m, no.profile, flag);
  const SideLengths lengths = side_lengths(m, no.profile, no.polygon);
  const QExt area = no.polygon.area();
  const QExt integral = integral_between(no.bounds);
  if (!(QExt(2) * integral == QExt(2) * area)) throw InternalError("shoelace area differs from the integral of beta-alpha");

  ojson sl = ojson::array();
  for (std::size_t k = 0; k < slopes.size(); ++k) {
    sl.push_back({{"t_lo", str(no.profile.segments[k].t_lo)},
                  {"t_hi", str(no.profile.segments[k].t_hi)},
                  {"lower", str(slopes[k].lower)},
                  {"upper", str(slopes[k].upper)}});
  }
  ojson sides = ojson::array();
  for (const auto& s : lengths.sides) {
    sides.push_back({{"from", s.from}, {"to", s.to}, {"dt", str(s.dt)}, {"ds", str(s.ds)}});
  }
  ojson predictions = ojson::array();
  for (std::size_t i = 0; i < pred.predicted.size(); ++i) {
    predictions.push_back({{"t", str(pred.predicted[i].t)},
                           {"lower", pred.predicted[i].lower},
                           {"upper", pred.predicted[i].upper},
                           {"observed_lower", pred.observed[i].lower},
                           {"observed_upper", pred.observed[i].upper}});
  }
  const Rat p0_square = self_intersection(m, no.profile.segments.front().positive_part_at(no.profile.nu));
  ojson out{{"nu", str(no.profile.nu)},
            {"mu", str(no.profile.mu)},
            {"vertices", vertices(no.polygon)},
            {"area", str(area)},
            {"p0_square", str(p0_square)},
            {"alpha", pwl_json(no.bounds.alpha)},
            {"beta", pwl_json(no.bounds.beta)},
            {"slopes", sl},
            {"sides", sides},
            {"leftmost_length", str(lengths.leftmost_length)},
            {"bounds",
             {{"vertex_count", bounds.vertex_count},
              {"mv", bounds.mv_bound},
              {"two_rho_plus_one", bounds.rho_bound},
              {"lower_interior", bounds.lower_interior},
              {"lower_bound", bounds.lower_bound},
              {"upper_interior", bounds.upper_interior},
              {"upper_bound", bounds.upper_bound}}},
            {"predictions", predictions},
            {"rightmost",
             {{"predicted", pred.rightmost.count},
              {"observed", pred.observed_rightmost},
              {"flag_in_span", pred.rightmost.flag_in_span},
              {"flag_ample", pred.rightmost.flag_ample},
              {"certified", pred.rightmost.certified}}}};
  if (!opt.svg.empty()) write_svg(no.polygon, opt.svg);
  return out;
}

ojson cmd_invariants(const ProblemDoc& doc) {
  const SurfaceModel& m = require_surface(doc);
  std::vector<std::vector<std::string>> configs = doc.configs;
  for (const auto* extra : {&doc.config, &doc.master}) {
    if (*extra && std::find(configs.begin(), configs.end(), **extra) == configs.end()) configs.push_back(**extra);
  }
  if (configs.empty()) throw InputError("field 'configs': missing");
  ojson a = ojson::array();
  for (const auto& c : configs) {
    ojson comps = ojson::array();
    for (const auto& comp : dual_graph_components(m, c)) comps.push_back(labels(comp));
    a.push_back({{"config", labels(c)}, {"components", comps}, {"mc", mc(m, c)}, {"mv", mv(m, c)}});
  }
  return {{"rank", m.rank()}, {"two_rho_plus_one", 2 * m.rank() + 1}, {"configs", a}};
}

ojson cmd_flag_search(const ProblemDoc& doc, const Options& opt) {
  const SurfaceModel& m = require_surface(doc);
  const DivisorClass& d = require_divisor(doc);
  if (doc.target) {
    if (!doc.master) throw InputError("field 'master': required with 'target'");
    const Realization r = realize_vertex_count(m, d, *doc.master, *doc.target, {opt.budget});
    return {{"target", r.target},
            {"sub_config", labels(r.sub_config)},
            {"variant", r.variant},
            {"point", r.point},
            {"scale", r.scale.get_str()},
            {"flag_class", integers(r.flag_class)},
            {"vertices", vertices(r.result.polygon)},
            {"certificate", certificate_json(r.certificate)},
            {"assumption", r.assumption}};
  }
  if (!doc.config) throw InputError("field 'config': missing");
  const auto cert = find_ordered_ample_class(m, d, *doc.config, doc.independent, {opt.budget});
  return certificate_json(cert);
}

ojson cmd_scan(const ProblemDoc& doc, const Options& opt) {
  const SurfaceModel& m = require_surface(doc);
  const DivisorClass& d = require_divisor(doc);
  if (!doc.master) throw InputError("field 'master': missing");
  const int top = mv(m, *doc.master);
  // each v is independent; tasks share only read-only inputs
  std::vector<std::future<Realization>> tasks;
  for (int v = 3; v <= top; ++v) {
    tasks.push_back(std::async(std::launch::async, [&m, &d, &doc, &opt, v] {
      return realize_vertex_count(m, d, *doc.master, v, {opt.budget});
    }));
  }
  ojson rs = ojson::array();
  for (auto& f : tasks) {
    const Realization r = f.get();
    rs.push_back({{"v", r.target},
                  {"sub_config", labels(r.sub_config)},
                  {"variant", r.variant},
                  {"point", r.point},
                  {"flag_class", integers(r.flag_class)},
                  {"vertex_count", r.result.polygon.size()},
                  {"vertices", vertices(r.result.polygon)},
                  {"certified", true},
                  {"assumption", r.assumption}});
  }
  return {{"master", labels(*doc.master)}, {"range", {3, top}}, {"realizations", rs}};
}

const FanInput& require_fan(const ProblemDoc& doc) {
  if (!doc.fan) throw InputError("field 'fan': missing");
  return *doc.fan;
}

const ToricDivisor& require_fan_divisor(const FanInput& f) {
  if (!f.divisor) throw InputError("field 'fan.divisor': missing");
  return *f.divisor;
}

ojson cmd_toric_polygon(const ProblemDoc& doc) {
  const FanInput& f = require_fan(doc);
  const ToricModel tm = fan_to_model(f.fan);
  ojson classes = ojson::object();
  for (std::size_t i = 0; i < tm.labels.size(); ++i) classes[tm.labels[i]] = integers(tm.classes[i]);
  ojson matrix = ojson::array();
  for (std::size_t i = 0; i < tm.model.rank(); ++i) {
    ojson row = ojson::array();
    for (std::size_t j = 0; j < tm.model.rank(); ++j) row.push_back(str(tm.model.form()(i, j)));
    matrix.push_back(row);
  }
  ojson out{{"rank", tm.model.rank()}, {"basis", labels(std::vector<std::string>(tm.labels.begin(), tm.labels.end() - 2))},
            {"matrix", matrix}, {"classes", classes}};
  if (f.divisor) {
    const ToricPolygon p = newton_polygon(f.fan, *f.divisor);
    ojson lens = ojson::array();
    for (const auto& l : p.edge_lengths) lens.push_back(str(l));
    out["divisor_class"] = cls(tm.divisor_class(*f.divisor));
    out["newton_polygon"] = rat_points(p.vertices);
    out["edge_lengths"] = lens;
    if (f.flag_index) out["okounkov_polygon"] = rat_points(monomial_okounkov(f.fan, *f.divisor, *f.flag_index).vertices);
  }
  return out;
}

ojson cmd_toric_crosscheck(const ProblemDoc& doc) {
  const FanInput& f = require_fan(doc);
  const ToricDivisor& div = require_fan_divisor(f);
  std::vector<std::size_t> indices;
  if (f.flag_index) {
    indices.push_back(*f.flag_index);
  } else {
    for (std::size_t i = 1; i <= f.fan.size(); ++i) indices.push_back(i);
  }
  ojson a = ojson::array();
  for (std::size_t i : indices) {
    const CrosscheckReport r = crosscheck(f.fan, div, i);
    a.push_back({{"flag_index", i},
                 {"ray_walk", rat_points(r.lattice_side)},
                 {"monomial_map", rat_points(r.toric_side)},
                 {"area", str(r.area)},
                 {"self_intersection", str(r.self_intersection)},
                 {"status", "equal"}});
  }
  return {{"checks", a}};
}

std::string cmd_render_svg(const ProblemDoc& doc, const Options& opt) {
  const auto [m, flag] = resolve_flag(doc);
  validate_flag(m, flag);
  const NewtonOkounkov no = compute_polygon(m, require_divisor(doc), flag, candidates_of(doc, require_surface(doc)));
  if (!opt.svg.empty()) {
    write_svg(no.polygon, opt.svg);
    return {};
  }
  return render_svg(no.polygon);
}

// --- text rendering ---------------------------------------------------------

void flatten(const ojson& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const ojson& x) { return x.is_structured(); })) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else if (j.is_array()) {
    out << prefix << ":";
    for (const auto& x : j) out << " " << (x.is_string() ? x.get<std::string>() : x.dump());
    out << "\n";
  } else {
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void print_text(const std::string& command, const ojson& j, std::ostream& out) {
  if (command == "check-lattice") {
    out << j["inertia"].get<std::string>() << " " << j["status"].get<std::string>() << "\n";
    if (j.contains("reason")) out << "reason: " << j["reason"].get<std::string>() << "\n";
    if (j.contains("curves")) {
      for (const auto& c : j["curves"]) {
        out << c["label"].get<std::string>() << "^2 = " << c["self_intersection"].get<std::string>() << "\n";
      }
    }
    return;
  }
  if (command == "polygon") {
    out << "vertices:";
    for (const auto& v : j["vertices"]) out << " (" << v["t"].get<std::string>() << "," << v["s"].get<std::string>() << ")";
    out << "\ntags:";
    for (const auto& v : j["vertices"]) out << " " << v["tag"].get<std::string>();
    out << "\n";
    ojson rest = j;
    rest.erase("vertices");
    flatten(rest, "", out);
    return;
  }
  flatten(j, "", out);
}

std::string kind_of(const std::exception& e) {
  if (dynamic_cast<const InputError*>(&e)) return "input error";
  if (dynamic_cast<const ModelError*>(&e)) return "model error";
  if (dynamic_cast<const TheoremViolation*>(&e)) return "theorem violation";
  if (dynamic_cast<const OracleMismatch*>(&e)) return "oracle mismatch";
  if (dynamic_cast<const SearchFailure*>(&e)) return "search failure";
  if (dynamic_cast<const DegenerateInput*>(&e)) return "degenerate input";
  if (dynamic_cast<const IOError*>(&e)) return "io error";
  if (dynamic_cast<const InternalError*>(&e)) return "internal error";
  return "error";
}

const std::vector<std::string> kCommands{"check-lattice", "zariski",         "ray-profile",       "polygon",
                                         "invariants",    "flag-search",     "scan-vertex-counts", "toric-polygon",
                                         "toric-crosscheck", "render-svg"};

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const TheoremViolation*>(&e) != nullptr || dynamic_cast<const OracleMismatch*>(&e) != nullptr) {
    return kCheckFailure;
  }
  return kInputFailure;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Newton-Okounkov polygons of divisors on surfaces from Neron-Severi lattice data", "noksurf"};
  app.add_option("command", opt.command, "Command")->required()->check(CLI::IsMember(kCommands));
  app.add_option("input", opt.input, "Input JSON document")->required();
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--svg", opt.svg, "Also write the polygon as SVG");
  app.add_option("--budget", opt.budget, "Halving steps per coefficient in flag searches")->check(CLI::Range(1, 4096));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kInputFailure;
  }

  try {
    const ProblemDoc doc = load_problem(opt.input);
    if (opt.command == "render-svg") {
      out << cmd_render_svg(doc, opt);
      return kOk;
    }
    int code = kOk;
    ojson result;
    if (opt.command == "check-lattice") {
      result = cmd_check_lattice(doc, code);
    } else if (opt.command == "zariski") {
      result = cmd_zariski(doc);
    } else if (opt.command == "ray-profile") {
      result = cmd_ray_profile(doc);
    } else if (opt.command == "polygon") {
      result = cmd_polygon(doc, opt);
    } else if (opt.command == "invariants") {
      result = cmd_invariants(doc);
    } else if (opt.command == "flag-search") {
      result = cmd_flag_search(doc, opt);
    } else if (opt.command == "scan-vertex-counts") {
      result = cmd_scan(doc, opt);
    } else if (opt.command == "toric-polygon") {
      result = cmd_toric_polygon(doc);
    } else {
      result = cmd_toric_crosscheck(doc);
    }
    if (opt.format == "text") {
      print_text(opt.command, result, out);
    } else {
      out << result.dump(2) << "\n";
    }
    return code;
  } catch (const Error& e) {
    err << "error: " << kind_of(e) << ": " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace noksurf::cli
