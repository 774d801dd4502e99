#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "noksurf/errors.hpp"

namespace noksurf::cli {

namespace {

std::string num(double x) {
  std::ostringstream os;
  os.precision(12);
  os << (std::abs(x) < 1e-12 ? 0.0 : x);
  return os.str();
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const OkPolygon& polygon, const SvgOptions& options) {
  if (polygon.vertices.empty()) throw InputError("cannot render an empty polygon");
  double t0 = polygon.vertices[0].t.to_double(), t1 = t0;
  double s0 = polygon.vertices[0].s.to_double(), s1 = s0;
  for (const auto& v : polygon.vertices) {
    t0 = std::min(t0, v.t.to_double());
    t1 = std::max(t1, v.t.to_double());
    s0 = std::min(s0, v.s.to_double());
    s1 = std::max(s1, v.s.to_double());
  }
  // Pad to whole lattice units so the grid frames the polygon.
  t0 = std::floor(t0);
  s0 = std::floor(s0);
  t1 = std::max(std::ceil(t1), t0 + 1);
  s1 = std::max(std::ceil(s1), s0 + 1);

  const double margin = 20;
  const double inner = options.width - 2 * margin;
  const double scale = inner / std::max(t1 - t0, s1 - s0);
  const double height = (s1 - s0) * scale + 2 * margin;
  const double width = (t1 - t0) * scale + 2 * margin;
  auto x = [&](double t) { return margin + (t - t0) * scale; };
  auto y = [&](double s) { return height - margin - (s - s0) * scale; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width) << "\" height=\""
     << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";
  if (options.grid) {
    // at most ~50 lines per axis
    const double span = std::max(t1 - t0, s1 - s0);
    const double step = std::max(1.0, std::ceil(span / 50));
    os << "<g stroke=\"#d0d0d0\" stroke-width=\"0.5\">\n";
    for (double t = t0; t <= t1 + 1e-9; t += step) {
      os << "<line x1=\"" << num(x(t)) << "\" y1=\"" << num(y(s0)) << "\" x2=\"" << num(x(t)) << "\" y2=\""
         << num(y(s1)) << "\"/>\n";
    }
    for (double s = s0; s <= s1 + 1e-9; s += step) {
      os << "<line x1=\"" << num(x(t0)) << "\" y1=\"" << num(y(s)) << "\" x2=\"" << num(x(t1)) << "\" y2=\""
         << num(y(s)) << "\"/>\n";
    }
    os << "</g>\n";
  }
  os << "<polygon fill=\"#9ecae1\" fill-opacity=\"0.5\" stroke=\"#08519c\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < polygon.vertices.size(); ++i) {
    const auto& v = polygon.vertices[i];
    os << (i ? " " : "") << num(x(v.t.to_double())) << "," << num(y(v.s.to_double()));
  }
  os << "\"/>\n";
  for (const auto& v : polygon.vertices) {
    os << "<circle cx=\"" << num(x(v.t.to_double())) << "\" cy=\"" << num(y(v.s.to_double()))
       << "\" r=\"3.5\" fill=\"#08519c\"><title>" << escape(v.tag()) << " (" << escape(v.t.to_string()) << ","
       << escape(v.s.to_string()) << ")</title></circle>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_svg(const OkPolygon& polygon, const std::string& path, const SvgOptions& options) {
  const std::string svg = render_svg(polygon, options);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IOError("cannot write " + path);
  out << svg;
  if (!out) throw IOError("failed writing " + path);
}

}  // namespace noksurf::cli
