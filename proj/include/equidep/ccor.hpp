#pragma once

#include <cstddef>
#include <vector>

#include "equidep/kde.hpp"
#include "equidep/sample.hpp"

namespace equidep {

// Corrected copula correlation with the quantities behind it.
struct CcorResult {
  double raw;        // plug-in integral of [1 - c(u,v)]_+
  double corrected;  // (raw - cmin) / (cmax - cmin), clamped to [0,1]
  double cmax;
  double cmin;
  Bandwidth h;
  std::size_t n;
};

// Midpoint-rule integral of [1 - c]_+ over the unit square (cube).
double ccor_raw(const CopulaDensityEstimate& density);
double ccor_raw(const DensityGridNd& density);

// Raw value on the perfectly matched configuration U_i = V_i = i/(n+1).
// Deterministic; cached per (n, h, g_cells).
double cmax_value(std::size_t n, Bandwidth h, int g_cells);

// Raw value on the most even configuration: U_i = i/(n+1) ascending, V
// cycling through k = floor(1/(2h)) + 1 levels (j - 0.5)/k, so neighbouring
// levels sit about 2h apart. Deterministic; cached per (n, h, g_cells).
double cmin_value(std::size_t n, Bandwidth h, int g_cells);

// Full pipeline on an already rank-transformed sample.
CcorResult ccor_from_pseudo(const PseudoSample& pseudo, Bandwidth h, int g_cells);

// Full pipeline: pseudo-observations -> default bandwidth -> density ->
// raw integral -> linear correction.
CcorResult ccor_corrected(const Sample& sample);
CcorResult ccor_corrected(const Sample& sample, Bandwidth h, int g_cells);

// Multivariate raw Ccor1: rank-transforms each column, estimates the
// d-dimensional copula density with the product square kernel and integrates
// [1 - c]_+ over the unit cube. d = columns.size() must be in [2, 4].
double ccor_multivariate(const std::vector<std::vector<double>>& columns, Bandwidth h);

// Drops all cached cmax/cmin values (used by tests).
void clear_ccor_cache();

}  // namespace equidep
