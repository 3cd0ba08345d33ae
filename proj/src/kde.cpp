#include "equidep/kde.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace equidep {

namespace {

// Smallest grid index whose cell midpoint (i + 0.5)/G lies strictly above x.
inline int first_midpoint_above(double x, int G) {
  const double t = static_cast<double>(G) * x - 0.5;
  return static_cast<int>(std::floor(t)) + 1;
}

// Largest grid index whose cell midpoint lies strictly below x.
inline int last_midpoint_below(double x, int G) {
  const double t = static_cast<double>(G) * x - 0.5;
  return static_cast<int>(std::ceil(t)) - 1;
}

}  // namespace

Bandwidth::Bandwidth(double h) : h_(h) {
  if (!(h > 0.0) || h > 0.5)
    throw std::invalid_argument("Bandwidth: h must lie in (0, 0.5]");
}

Bandwidth default_bandwidth(std::size_t n) {
  if (n < 2) throw std::invalid_argument("default_bandwidth: need n >= 2");
  const double h = 0.25 * std::pow(static_cast<double>(n), -0.25);
  return Bandwidth(std::min(h, 0.5));
}

int default_grid_cells(Bandwidth h) {
  return std::max(100, static_cast<int>(std::ceil(4.0 / h.value())));
}

int default_grid_cells_nd(Bandwidth h, int dim) {
  // Memory cap per dimension; d=2 matches default_grid_cells exactly so the
  // bivariate path and the generic path agree.
  if (dim == 2) return default_grid_cells(h);
  const int cap = dim == 3 ? 96 : 32;
  const int g = static_cast<int>(std::ceil(4.0 / h.value()));
  return std::max(10, std::min(cap, g));
}

double CopulaDensityEstimate::integral() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s / (static_cast<double>(g_cells) * g_cells);
}

CopulaDensityEstimate estimate_copula_density(const PseudoSample& pseudo, Bandwidth h,
                                              int g_cells) {
  if (g_cells < 10) throw std::invalid_argument("estimate_copula_density: need g_cells >= 10");
  std::vector<std::vector<double>> coords{pseudo.us, pseudo.vs};
  DensityGridNd grid = estimate_density_nd(coords, h, g_cells);
  return CopulaDensityEstimate{std::move(grid.values), g_cells, h, pseudo.n()};
}

DensityGridNd estimate_density_nd(const std::vector<std::vector<double>>& pseudo_coords,
                                  Bandwidth h, int g_cells) {
  const int d = static_cast<int>(pseudo_coords.size());
  if (d < 2 || d > 4) throw std::invalid_argument("estimate_density_nd: dimension must be 2..4");
  if (g_cells < 10) throw std::invalid_argument("estimate_density_nd: need g_cells >= 10");
  const std::size_t n = pseudo_coords[0].size();
  for (const auto& c : pseudo_coords) {
    if (c.size() != n) throw std::invalid_argument("estimate_density_nd: ragged coordinates");
  }
  if (n == 0) throw std::invalid_argument("estimate_density_nd: empty input");

  const int G = g_cells;
  const double hv = h.value();
  std::size_t total = 1;
  for (int k = 0; k < d; ++k) total *= static_cast<std::size_t>(G);

  std::vector<std::size_t> stride(d);
  stride[d - 1] = 1;
  for (int k = d - 2; k >= 0; --k) stride[k] = stride[k + 1] * static_cast<std::size_t>(G);

  // Each point covers an axis-aligned box of cells; stamp its inclusion-
  // exclusion corners into a difference array, then prefix-sum axis by axis.
  std::vector<double> grid(total, 0.0);
  std::vector<int> lo(d), hi(d);
  for (std::size_t i = 0; i < n; ++i) {
    bool empty = false;
    for (int k = 0; k < d; ++k) {
      const double c = pseudo_coords[k][i];
      lo[k] = std::max(0, first_midpoint_above(c - hv, G));
      hi[k] = std::min(G - 1, last_midpoint_below(c + hv, G));
      if (lo[k] > hi[k]) {
        empty = true;
        break;
      }
    }
    if (empty) continue;
    const unsigned corners = 1u << d;
    for (unsigned mask = 0; mask < corners; ++mask) {
      std::size_t idx = 0;
      bool in_range = true;
      int bits = 0;
      for (int k = 0; k < d; ++k) {
        int pos;
        if (mask & (1u << k)) {
          pos = hi[k] + 1;
          ++bits;
          if (pos >= G) {
            in_range = false;
            break;
          }
        } else {
          pos = lo[k];
        }
        idx += stride[k] * static_cast<std::size_t>(pos);
      }
      if (in_range) grid[idx] += (bits % 2 == 0) ? 1.0 : -1.0;
    }
  }

  for (int k = 0; k < d; ++k) {
    const std::size_t sk = stride[k];
    const std::size_t block = sk * static_cast<std::size_t>(G);
    for (std::size_t base = 0; base < total; base += block) {
      for (std::size_t off = 0; off < sk; ++off) {
        double acc = 0.0;
        std::size_t idx = base + off;
        for (int g = 0; g < G; ++g, idx += sk) {
          acc += grid[idx];
          grid[idx] = acc;
        }
      }
    }
  }

  double norm = static_cast<double>(n);
  for (int k = 0; k < d; ++k) norm *= 2.0 * hv;
  const double inv = 1.0 / norm;
  for (auto& v : grid) v *= inv;

  return DensityGridNd{std::move(grid), G, d, h, n};
}

}  // namespace equidep
