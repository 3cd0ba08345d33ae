#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "equidep/kde.hpp"
#include "equidep/sample.hpp"

namespace equidep {

struct MeasureResult {
  std::string kind;
  double value;
  std::size_t n;
  std::map<std::string, double> params;
};

enum class ConcordanceKind { spearman, kendall, gini, blomqvist };
enum class CdfDistanceKind { sigma, phi2, kappa };
enum class DensityFunctionalKind { copula_distance, phicor, tsallis, hellinger, mi_plugin };

// Concordance measures computed on pseudo-observations. Kendall uses the
// O(n log n) inversion count with ties contributing to neither side (tau-a).
MeasureResult concordance(const PseudoSample& pseudo, ConcordanceKind kind);

// CDF-distance measures of the empirical copula versus independence:
//   sigma = 12 * Int |C_n - uv|,  phi2 = 90 * Int (C_n - uv)^2,
//   kappa = 4 * max |C_n - uv|.
// Integrals use the midpoint rule on a `lattice` x `lattice` grid; the max
// additionally checks every pseudo-observation point.
MeasureResult cdf_distance(const PseudoSample& pseudo, CdfDistanceKind kind, int lattice = 128);

// Rank-based distance correlation (double-centered distance matrices).
MeasureResult distance_correlation(const PseudoSample& pseudo);

// Kraskov-Stoegbauer-Grassberger mutual information estimator on the
// pseudo-observations with max-norm neighbourhoods. A deterministic jitter
// of amplitude 1e-10 (fixed seed, shared by both axes so swapping them does
// not change the result) breaks the exact rank ties. Negative estimates are
// reported as-is.
MeasureResult mi_ksg(const PseudoSample& pseudo, int k);

// MIcor = sqrt(1 - exp(-2 * MI)); negative mi is clamped to 0 first.
double micor(double mi);

// Density functionals of a copula density estimate:
//   copula_distance: Int |c - 1|^alpha          (alpha > 0)
//   phicor:          sqrt(CD_2 / (1 + CD_2))
//   tsallis:         (1 - Int c^alpha) / (1 - alpha)   (alpha != 0, 1)
//   hellinger:       1 - Int sqrt(c)
//   mi_plugin:       Int c log c   with 0 log 0 = 0
MeasureResult density_functional(const CopulaDensityEstimate& density,
                                 DensityFunctionalKind kind, double alpha = 2.0);

// Equipartition-grid approximation of the MIC statistic: the maximum of
// MI_G / log(min(b_x, b_y)) over rank-equipartition grids with
// b_x * b_y <= max(4, n^exponent). This is a comparison baseline, not the
// dynamic-programming search of the original proposal.
MeasureResult grid_mic(const PseudoSample& pseudo, double exponent = 0.6);

// Tuning knobs for the string-kind interface used by the CLI, scans and
// permutation tests.
struct MeasureParams {
  int ksg_k = 3;
  double alpha = 2.0;
  int cdf_lattice = 128;
  double mic_exponent = 0.6;
};

// Kind names accepted by compute_measure / scans / permutation tests.
const std::vector<std::string>& measure_kinds();
bool is_measure_kind(const std::string& kind);

// Computes one measure by name on a raw sample ("pearson" uses the raw
// values; every other kind is rank-based).
MeasureResult compute_measure(const std::string& kind, const Sample& sample,
                              const MeasureParams& params = {});

// Computes several measures sharing one rank transform / density estimate.
std::vector<MeasureResult> compute_measures(const std::vector<std::string>& kinds,
                                            const Sample& sample,
                                            const MeasureParams& params = {});

double pearson_correlation(const std::vector<double>& xs, const std::vector<double>& ys);

namespace detail {
double digamma(double x);
}

}  // namespace equidep
