#pragma once

#include <string>

#include "noksurf/polygon.hpp"

namespace noksurf::cli {

struct SvgOptions {
  int width = 480;
  bool grid = true;
};

/// SVG 1.1 drawing of the polygon: integer grid, outline, one marker per
/// vertex with its tag and exact coordinates in the <title>. Coordinates are
/// printed with 12 significant digits.
std::string render_svg(const OkPolygon& polygon, const SvgOptions& options = {});

/// IOError when the file cannot be written.
void write_svg(const OkPolygon& polygon, const std::string& path, const SvgOptions& options = {});

}  // namespace noksurf::cli
