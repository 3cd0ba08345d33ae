#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "equidep/measures.hpp"
#include "equidep/sample.hpp"

namespace equidep::synth {

// Deterministic curves (plus the independent four-cloud null) used by the
// generators. Multi-branch curves pick a branch uniformly per point.
enum class RelationshipId {
  linear,
  parabolic,
  square_root,
  cubic,
  centered_cubic,
  centered_parabolic,
  cosine_period1,
  cosine_4pi,
  sine_4pi,
  sine_16pi,
  circle,
  cross,
  two_branches,
  x_parabola,
  w_shape,
  four_clouds,
};

RelationshipId relationship_from_string(const std::string& name);
std::string to_string(RelationshipId rel);
const std::vector<RelationshipId>& all_relationships();

// The six relationships of the equitability ranking experiment.
const std::vector<RelationshipId>& equitability_relationships();
// The eight deterministic relationships of the power comparison.
const std::vector<RelationshipId>& power_relationships();

int branch_count(RelationshipId rel);

// f(t) on the raw data scale (regression model).
double curve_value(RelationshipId rel, double t, int branch);

// The same relationship expressed on the copula scale: t -> v such that a
// uniform t (with a uniform branch pick) yields a uniform v. This is the
// support of the singular copula the relationship induces.
double copula_curve_value(RelationshipId rel, double t, int branch);

struct MixtureSpec {
  RelationshipId relationship;
  double p;  // proportion of deterministic signal, in [0, 1]
};

// Mixture-copula sample: with probability p a point on the copula-scale
// curve, otherwise a uniform point on the unit square. Both marginals are
// uniform, so the sample's copula is p*C_s + (1-p)*Pi. `fixed_count` uses
// round(p*n) curve points instead of Bernoulli draws.
Sample gen_mixture(const MixtureSpec& spec, std::size_t n, std::uint64_t seed,
                   bool fixed_count = false);

// Regression model X ~ U(0,1), Y = f(X) + Gaussian(0, noise_sd^2).
// four_clouds emits the independent four-cluster null (cluster centres at
// 0.25/0.75 on each axis picked independently, spread noise_sd).
Sample gen_regression(RelationshipId rel, double noise_sd, std::size_t n, std::uint64_t seed);

// Standard bivariate Gaussian with correlation rho, |rho| < 1.
Sample gen_gaussian_copula(double rho, std::size_t n, std::uint64_t seed);

// Hard-to-distinguish copula pair: wrapped diagonal strips R1 (above the
// diagonal, density m_high) and R2 (below, density m_low) over a uniform
// remainder R3. Variant c2 moves probability mass epsilon from R1 to R2.
struct HardPairSpec {
  double a;       // mass on R2 (variant c1)
  double delta;   // mass on R1 (variant c1)
  double m_low;   // density on R2
  double m_high;  // density on R1
  double epsilon; // mass moved by variant c2
  enum class Variant { c1, c2 } variant = Variant::c1;

  void validate() const;
  double strip_width_r1() const { return delta / m_high; }
  double strip_width_r2() const { return a / m_low; }
};

Sample gen_hard_pair(const HardPairSpec& spec, std::size_t n, std::uint64_t seed);

// (area, density) atoms of the hard-pair density; functional oracles only
// need the distribution of density values.
std::vector<std::pair<double, double>> hard_pair_atoms(const HardPairSpec& spec);

// Analytic population value of a density functional (ccor, cd, tsallis,
// hellinger, mi, micor, phicor) for the hard-pair density. Regions too thin
// for any uniform grid (m_high up to e^100) are handled exactly.
double hard_pair_population(const HardPairSpec& spec, const std::string& kind,
                            const MeasureParams& params = {});

// Normalized density values on a G x G midpoint lattice; the brute-force
// population oracle representation.
struct GridDensity {
  std::vector<double> values;  // row-major, values[iu * g + iv]
  int g_cells;

  GridDensity(std::vector<double> values_in, int g_cells_in);

  double at(int iu, int iv) const { return values[static_cast<std::size_t>(iu) * g_cells + iv]; }
};

constexpr int kOracleGridCells = 512;

GridDensity uniform_density(int g_cells = kOracleGridCells);

// `blocks` equal square blocks along the diagonal, density = blocks inside.
// blocks=2 and blocks=4 reproduce the two shaded example densities with
// density 2 on half the square and 4 on a quarter of it.
GridDensity diagonal_block_density(int blocks, int g_cells = kOracleGridCells);

// Uniform band {|u-v| < width} discretized by exact cell overlap.
GridDensity diagonal_band_density(double width, int g_cells = kOracleGridCells);

// p * (comonotone M) + (1-p) * Pi with the singular part on the diagonal cells.
GridDensity linear_mixture_density(double p, int g_cells = kOracleGridCells);

// Gaussian copula density at cell midpoints, renormalized to mass one.
GridDensity gaussian_copula_density(double rho, int g_cells = kOracleGridCells);

// Midpoint-rule population functionals of a known density. Kinds: ccor, cd,
// tsallis, hellinger, mi, micor, phicor, sigma, phi2, kappa.
double population_measure(const GridDensity& density, const std::string& kind,
                          const MeasureParams& params = {});

// Population Ccor of any mixture copula p*C_s + (1-p)*Pi is p itself.
double mixture_oracle(double p);

// Inverse standard normal CDF (used by the Gaussian copula oracle).
double normal_quantile(double p);

}  // namespace equidep::synth
