#pragma once

#include <string>

#include "fc/checks.hpp"

namespace fc {

/// Standalone SVG line chart; log axes drop nonpositive samples.
std::string render_line_plot(const Plot& p, int width = 640, int height = 420);

}  // namespace fc
