#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "equidep/measures.hpp"
#include "equidep/sample.hpp"
#include "equidep/synth.hpp"

namespace equidep::infer {

struct TestResult {
  double statistic;   // |value| for signed concordance kinds, value otherwise
  double cutoff;      // empirical (1-level) quantile of the permutation null
  double p_value;     // (1 + #{null >= statistic}) / (n_perm + 1)
  int n_perm;
  std::uint64_t seed;
  bool rejected;      // statistic > cutoff
};

// Permutation independence test: recomputes the statistic on n_perm copies
// of the sample with ys randomly permuted. Deterministic given the seed
// (permutation b uses derive_seed(seed, b)).
TestResult permutation_test(const std::string& kind, const Sample& sample, int n_perm,
                            double level, std::uint64_t seed,
                            const MeasureParams& params = {});

struct PowerPoint {
  double noise_sd;
  double power;
};

// Fraction of simulated regression datasets rejected at `level`; one
// permutation test per simulated dataset.
std::vector<PowerPoint> power_curve(const std::string& kind, synth::RelationshipId rel,
                                    const std::vector<double>& noise_grid, std::size_t n,
                                    int n_sims, int n_perm, std::uint64_t seed,
                                    double level = 0.05, int workers = 0,
                                    const MeasureParams& params = {});

// 30 linearly spaced noise levels, 0.05 .. 1.5.
std::vector<double> default_noise_grid();

struct EquitabilityCell {
  synth::RelationshipId relationship;
  double noise_prop;  // 1 - p
  std::size_t n;
  int rep;
  double value;
};

struct EquitabilityReport {
  std::string kind;
  std::vector<EquitabilityCell> cells;
  // Fraction of (lower-noise, higher-noise) dataset pairs ranked in the
  // correct order; ties count one half.
  double separation_auc;
};

// Mixture datasets over the six equitability relationships x noise_props x
// sizes x reps; every requested measure is computed on the same datasets.
std::vector<EquitabilityReport> equitability_experiment(
    const std::vector<std::string>& kinds, const std::vector<double>& noise_props,
    const std::vector<std::size_t>& sizes, int reps, std::uint64_t seed, int workers = 0,
    const MeasureParams& params = {});

// Rejection rate per kind on independent four-cloud data (type I error of
// the level-`level` permutation test). Permutations are shared across kinds
// within a simulation.
std::map<std::string, double> four_clouds_type_one_rates(
    const std::vector<std::string>& kinds, std::size_t n, int n_sims, int n_perm, double level,
    double cloud_sd, std::uint64_t seed, int workers = 0, const MeasureParams& params = {});

}  // namespace equidep::infer
