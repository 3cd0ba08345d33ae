#include "equidep/ccor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace equidep {

namespace {

double positive_part_integral(const std::vector<double>& values, std::size_t cells) {
  double s = 0.0;
  for (double c : values) s += std::max(0.0, 1.0 - c);
  return s / static_cast<double>(cells);
}

struct CacheKey {
  std::size_t n;
  std::uint64_t h_bits;
  int g;

  bool operator<(const CacheKey& o) const {
    return std::tie(n, h_bits, g) < std::tie(o.n, o.h_bits, o.g);
  }
};

// Scans recompute cmax/cmin for many pairs that share (n, h, g); the cache
// is read-mostly with single-writer inserts.
std::mutex g_cache_mutex;
std::map<CacheKey, std::pair<double, double>> g_cache;  // key -> (cmax, cmin)

PseudoSample matched_configuration(std::size_t n) {
  PseudoSample ps;
  ps.us.resize(n);
  const double denom = static_cast<double>(n + 1);
  for (std::size_t i = 0; i < n; ++i) ps.us[i] = static_cast<double>(i + 1) / denom;
  ps.vs = ps.us;
  return ps;
}

PseudoSample even_configuration(std::size_t n, Bandwidth h) {
  const int k = static_cast<int>(std::floor(1.0 / (2.0 * h.value()))) + 1;
  PseudoSample ps;
  ps.us.resize(n);
  ps.vs.resize(n);
  const double denom = static_cast<double>(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    ps.us[i] = static_cast<double>(i + 1) / denom;
    ps.vs[i] = (static_cast<double>(i % static_cast<std::size_t>(k)) + 0.5) /
               static_cast<double>(k);
  }
  return ps;
}

std::pair<double, double> correction_pair(std::size_t n, Bandwidth h, int g_cells) {
  const CacheKey key{n, std::bit_cast<std::uint64_t>(h.value()), g_cells};
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = g_cache.find(key);
    if (it != g_cache.end()) return it->second;
  }
  const double cmax = ccor_raw(estimate_copula_density(matched_configuration(n), h, g_cells));
  const double cmin = ccor_raw(estimate_copula_density(even_configuration(n, h), h, g_cells));
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto [it, inserted] = g_cache.emplace(key, std::make_pair(cmax, cmin));
  (void)inserted;
  return it->second;
}

}  // namespace

double ccor_raw(const CopulaDensityEstimate& density) {
  return positive_part_integral(density.values, density.values.size());
}

double ccor_raw(const DensityGridNd& density) {
  return positive_part_integral(density.values, density.values.size());
}

double cmax_value(std::size_t n, Bandwidth h, int g_cells) {
  if (n < 2) throw std::invalid_argument("cmax_value: need n >= 2");
  return correction_pair(n, h, g_cells).first;
}

double cmin_value(std::size_t n, Bandwidth h, int g_cells) {
  if (n < 2) throw std::invalid_argument("cmin_value: need n >= 2");
  return correction_pair(n, h, g_cells).second;
}

CcorResult ccor_from_pseudo(const PseudoSample& pseudo, Bandwidth h, int g_cells) {
  const std::size_t n = pseudo.n();
  if (n < 2) throw std::invalid_argument("ccor_from_pseudo: need n >= 2");
  const double raw = ccor_raw(estimate_copula_density(pseudo, h, g_cells));
  const auto [cmax, cmin] = correction_pair(n, h, g_cells);
  // Raw values can land slightly outside [cmin, cmax] on data unlike either
  // extreme configuration; clamping keeps the result in [0, 1].
  const double corrected = std::clamp((raw - cmin) / (cmax - cmin), 0.0, 1.0);
  return CcorResult{raw, corrected, cmax, cmin, h, n};
}

CcorResult ccor_corrected(const Sample& sample) {
  const Bandwidth h = default_bandwidth(sample.n());
  return ccor_corrected(sample, h, default_grid_cells(h));
}

CcorResult ccor_corrected(const Sample& sample, Bandwidth h, int g_cells) {
  return ccor_from_pseudo(pseudo_observations(sample), h, g_cells);
}

double ccor_multivariate(const std::vector<std::vector<double>>& columns, Bandwidth h) {
  const int d = static_cast<int>(columns.size());
  if (d < 2 || d > 4)
    throw std::invalid_argument("ccor_multivariate: dimension must be in [2, 4]");
  const std::size_t n = columns[0].size();
  if (n < 2) throw std::invalid_argument("ccor_multivariate: need n >= 2");

  std::vector<std::vector<double>> pseudo(columns.size());
  const double denom = static_cast<double>(n + 1);
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (columns[k].size() != n)
      throw std::invalid_argument("ccor_multivariate: ragged columns");
    std::vector<double> ranks = average_ranks(columns[k]);
    pseudo[k].resize(n);
    for (std::size_t i = 0; i < n; ++i) pseudo[k][i] = ranks[i] / denom;
  }
  return ccor_raw(estimate_density_nd(pseudo, h, default_grid_cells_nd(h, d)));
}

void clear_ccor_cache() {
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  g_cache.clear();
}

}  // namespace equidep
