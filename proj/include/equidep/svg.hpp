#pragma once

#include <string>
#include <vector>

namespace equidep {

// Minimal SVG scatter plot writer (a plotting convenience, nothing more).
void write_scatter_svg(const std::string& path, const std::vector<double>& xs,
                       const std::vector<double>& ys, const std::string& title);

}  // namespace equidep
