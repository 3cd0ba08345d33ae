#pragma once

#include <cstddef>
#include <vector>

#include "equidep/sample.hpp"

namespace equidep {

// Kernel half-width on the copula scale. Valid range (0, 0.5].
class Bandwidth {
 public:
  explicit Bandwidth(double h);

  double value() const { return h_; }

 private:
  double h_;
};

// h = 0.25 * n^(-1/4), clamped into (0, 0.5].
Bandwidth default_bandwidth(std::size_t n);

// Default lattice resolution: max(100, ceil(4/h)) cells per axis, fine
// enough that midpoint-rule error is negligible next to statistical error.
int default_grid_cells(Bandwidth h);

// Square-kernel density estimate evaluated at the midpoints of a G x G
// lattice on the unit square:
//   c(u,v) = #{i : |u-U_i| < h, |v-V_i| < h} / (n * (2h)^2).
// Kernel windows spill outside the square near the edges, so the midpoint
// integral of the grid is at most 1 and can drop to about 0.5.
struct CopulaDensityEstimate {
  std::vector<double> values;  // row-major: values[iu * g_cells + iv]
  int g_cells;
  Bandwidth h;
  std::size_t n;

  double at(int iu, int iv) const { return values[static_cast<std::size_t>(iu) * g_cells + iv]; }

  // Midpoint-rule integral of the grid (mass kept by the estimator).
  double integral() const;
};

CopulaDensityEstimate estimate_copula_density(const PseudoSample& pseudo, Bandwidth h,
                                              int g_cells);

// d-dimensional product-square-kernel estimate on a G^d midpoint lattice,
// normalised by n * (2h)^d. Supports d in [2, 4]; the grid is capped per
// dimension to bound memory.
struct DensityGridNd {
  std::vector<double> values;  // C-order over d axes
  int g_cells;
  int dim;
  Bandwidth h;
  std::size_t n;
};

int default_grid_cells_nd(Bandwidth h, int dim);

DensityGridNd estimate_density_nd(const std::vector<std::vector<double>>& pseudo_coords,
                                  Bandwidth h, int g_cells);

}  // namespace equidep
