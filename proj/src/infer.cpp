#include "equidep/infer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "equidep/ccor.hpp"
#include "equidep/parallel.hpp"
#include "equidep/random.hpp"

namespace equidep::infer {

namespace {

bool is_signed_kind(const std::string& kind) {
  return kind == "pearson" || kind == "spearman" || kind == "kendall" || kind == "gini" ||
         kind == "blomqvist";
}

std::vector<std::uint32_t> random_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const std::uint32_t j = rng.below(static_cast<std::uint32_t>(i));
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

// Recomputes one measure across permutations of ys, reusing whatever survives
// a permutation: the rank transform always does, and for dcor the centered
// distance matrices only need their rows/columns gathered.
class PermutationEvaluator {
 public:
  PermutationEvaluator(std::string kind, const Sample& sample, const MeasureParams& params)
      : kind_(std::move(kind)), params_(params), n_(sample.n()) {
    if (!is_measure_kind(kind_))
      throw std::invalid_argument("permutation test: unknown measure kind " + kind_);
    pseudo_ = pseudo_observations(sample);
    work_ = pseudo_;
    if (kind_ == "pearson") {
      xs_ = sample.xs;
      ys_ = sample.ys;
    } else if (kind_ == "dcor") {
      a_ = centered_distances(pseudo_.us);
      b_ = centered_distances(pseudo_.vs);
      saa_ = sum_sq(a_);
      sbb_ = sum_sq(b_);
    }
  }

  double statistic(const std::vector<std::uint32_t>* perm) {
    double value;
    if (kind_ == "pearson") {
      if (perm == nullptr) {
        value = pearson_correlation(xs_, ys_);
      } else {
        std::vector<double>& py = scratch_;
        py.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) py[i] = ys_[(*perm)[i]];
        value = pearson_correlation(xs_, py);
      }
    } else if (kind_ == "dcor") {
      value = dcor_stat(perm);
    } else {
      const PseudoSample& ps = permuted_pseudo(perm);
      value = eval_rank_based(ps);
    }
    return is_signed_kind(kind_) ? std::fabs(value) : value;
  }

 private:
  const PseudoSample& permuted_pseudo(const std::vector<std::uint32_t>* perm) {
    if (perm == nullptr) return pseudo_;
    for (std::size_t i = 0; i < n_; ++i) work_.vs[i] = pseudo_.vs[(*perm)[i]];
    return work_;
  }

  double eval_rank_based(const PseudoSample& ps) const {
    if (kind_ == "spearman") return concordance(ps, ConcordanceKind::spearman).value;
    if (kind_ == "kendall") return concordance(ps, ConcordanceKind::kendall).value;
    if (kind_ == "gini") return concordance(ps, ConcordanceKind::gini).value;
    if (kind_ == "blomqvist") return concordance(ps, ConcordanceKind::blomqvist).value;
    if (kind_ == "sigma") return cdf_distance(ps, CdfDistanceKind::sigma, params_.cdf_lattice).value;
    if (kind_ == "phi2") return cdf_distance(ps, CdfDistanceKind::phi2, params_.cdf_lattice).value;
    if (kind_ == "kappa") return cdf_distance(ps, CdfDistanceKind::kappa, params_.cdf_lattice).value;
    if (kind_ == "mi_ksg") return mi_ksg(ps, params_.ksg_k).value;
    if (kind_ == "mi_ksg3") return mi_ksg(ps, 3).value;
    if (kind_ == "mi_ksg20") return mi_ksg(ps, 20).value;
    if (kind_ == "micor") return micor(mi_ksg(ps, params_.ksg_k).value);
    if (kind_ == "mic") return grid_mic(ps, params_.mic_exponent).value;

    const Bandwidth h = default_bandwidth(n_);
    const int g = default_grid_cells(h);
    if (kind_ == "ccor") return ccor_from_pseudo(ps, h, g).corrected;
    const CopulaDensityEstimate density = estimate_copula_density(ps, h, g);
    if (kind_ == "phicor")
      return density_functional(density, DensityFunctionalKind::phicor).value;
    if (kind_ == "hellinger")
      return density_functional(density, DensityFunctionalKind::hellinger).value;
    if (kind_ == "cd")
      return density_functional(density, DensityFunctionalKind::copula_distance, params_.alpha)
          .value;
    if (kind_ == "tsallis")
      return density_functional(density, DensityFunctionalKind::tsallis, params_.alpha).value;
    if (kind_ == "mi_plugin")
      return density_functional(density, DensityFunctionalKind::mi_plugin).value;
    throw std::invalid_argument("permutation test: unsupported kind " + kind_);
  }

  std::vector<double> centered_distances(const std::vector<double>& z) const {
    std::vector<double> a(n_ * n_);
    std::vector<double> row_mean(n_, 0.0);
    double grand = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        const double d = std::fabs(z[i] - z[j]);
        a[i * n_ + j] = d;
        row_mean[i] += d;
      }
    }
    for (std::size_t i = 0; i < n_; ++i) {
      row_mean[i] /= static_cast<double>(n_);
      grand += row_mean[i];
    }
    grand /= static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) a[i * n_ + j] += grand - row_mean[i] - row_mean[j];
    return a;
  }

  static double sum_sq(const std::vector<double>& m) {
    double s = 0.0;
    for (double v : m) s += v * v;
    return s;
  }

  double dcor_stat(const std::vector<std::uint32_t>* perm) const {
    if (saa_ <= 0.0 || sbb_ <= 0.0) return 0.0;
    double sab = 0.0;
    if (perm == nullptr) {
      for (std::size_t k = 0; k < n_ * n_; ++k) sab += a_[k] * b_[k];
    } else {
      // permuting ys permutes B's rows and columns; its sum of squares is
      // unchanged, so only the cross term needs the gather
      for (std::size_t i = 0; i < n_; ++i) {
        const double* arow = a_.data() + i * n_;
        const double* brow = b_.data() + static_cast<std::size_t>((*perm)[i]) * n_;
        for (std::size_t j = 0; j < n_; ++j) sab += arow[j] * brow[(*perm)[j]];
      }
    }
    const double r2 = sab / std::sqrt(saa_ * sbb_);
    return r2 > 0.0 ? std::sqrt(r2) : 0.0;
  }

  std::string kind_;
  MeasureParams params_;
  std::size_t n_;
  PseudoSample pseudo_;
  PseudoSample work_;
  std::vector<double> xs_, ys_, scratch_;
  std::vector<double> a_, b_;
  double saa_ = 0.0, sbb_ = 0.0;
};

double cutoff_from_null(std::vector<double> null_stats, double level) {
  std::sort(null_stats.begin(), null_stats.end());
  const std::size_t n = null_stats.size();
  const std::size_t idx = static_cast<std::size_t>(
      std::ceil((1.0 - level) * static_cast<double>(n)));
  return null_stats[std::min(n - 1, std::max<std::size_t>(1, idx) - 1)];
}

constexpr std::uint64_t kPermStreamSalt = 0x7065726D73616C74ULL;

}  // namespace

TestResult permutation_test(const std::string& kind, const Sample& sample, int n_perm,
                            double level, std::uint64_t seed, const MeasureParams& params) {
  if (n_perm < 19) throw std::invalid_argument("permutation_test: need n_perm >= 19");
  if (!(level > 0.0) || !(level < 1.0))
    throw std::invalid_argument("permutation_test: level must lie in (0, 1)");

  PermutationEvaluator evaluator(kind, sample, params);
  const double stat = evaluator.statistic(nullptr);

  std::vector<double> null_stats(static_cast<std::size_t>(n_perm));
  for (int b = 0; b < n_perm; ++b) {
    const auto perm = random_permutation(sample.n(), derive_seed(seed, static_cast<std::uint64_t>(b)));
    null_stats[static_cast<std::size_t>(b)] = evaluator.statistic(&perm);
  }

  std::size_t count_ge = 0;
  for (double v : null_stats)
    if (v >= stat) ++count_ge;
  const double cutoff = cutoff_from_null(null_stats, level);
  const double p_value =
      (1.0 + static_cast<double>(count_ge)) / (static_cast<double>(n_perm) + 1.0);
  return TestResult{stat, cutoff, p_value, n_perm, seed, stat > cutoff};
}

std::vector<double> default_noise_grid() {
  std::vector<double> grid(30);
  for (int i = 0; i < 30; ++i) grid[i] = 0.05 + (1.5 - 0.05) * static_cast<double>(i) / 29.0;
  return grid;
}

std::vector<PowerPoint> power_curve(const std::string& kind, synth::RelationshipId rel,
                                    const std::vector<double>& noise_grid, std::size_t n,
                                    int n_sims, int n_perm, std::uint64_t seed, double level,
                                    int workers, const MeasureParams& params) {
  if (n_sims < 1) throw std::invalid_argument("power_curve: need n_sims >= 1");
  const std::size_t levels = noise_grid.size();
  const std::size_t tasks = levels * static_cast<std::size_t>(n_sims);
  std::vector<std::uint8_t> rejected(tasks, 0);

  parallel_for(tasks, workers, [&](std::size_t task) {
    const std::size_t li = task / static_cast<std::size_t>(n_sims);
    const Sample sample =
        synth::gen_regression(rel, noise_grid[li], n, derive_seed(seed, task));
    const TestResult r =
        permutation_test(kind, sample, n_perm, level, derive_seed(seed ^ kPermStreamSalt, task),
                         params);
    rejected[task] = r.rejected ? 1 : 0;
  });

  std::vector<PowerPoint> out(levels);
  for (std::size_t li = 0; li < levels; ++li) {
    std::size_t count = 0;
    for (int s = 0; s < n_sims; ++s)
      count += rejected[li * static_cast<std::size_t>(n_sims) + static_cast<std::size_t>(s)];
    out[li] = PowerPoint{noise_grid[li], static_cast<double>(count) / n_sims};
  }
  return out;
}

std::vector<EquitabilityReport> equitability_experiment(
    const std::vector<std::string>& kinds, const std::vector<double>& noise_props,
    const std::vector<std::size_t>& sizes, int reps, std::uint64_t seed, int workers,
    const MeasureParams& params) {
  for (double np : noise_props)
    if (!(np > 0.0) || !(np < 1.0))
      throw std::invalid_argument("equitability_experiment: noise proportions must be in (0,1)");
  for (std::size_t i = 0; i < noise_props.size(); ++i)
    for (std::size_t j = i + 1; j < noise_props.size(); ++j)
      if (noise_props[i] == noise_props[j])
        throw std::invalid_argument("equitability_experiment: noise proportions must be distinct");
  if (reps < 1) throw std::invalid_argument("equitability_experiment: need reps >= 1");

  const auto& rels = synth::equitability_relationships();
  struct CellSpec {
    synth::RelationshipId rel;
    double noise_prop;
    std::size_t n;
    int rep;
  };
  std::vector<CellSpec> cells;
  for (const auto rel : rels)
    for (const double np : noise_props)
      for (const std::size_t n : sizes)
        for (int rep = 0; rep < reps; ++rep) cells.push_back({rel, np, n, rep});

  std::vector<std::vector<double>> values(cells.size());
  parallel_for(cells.size(), workers, [&](std::size_t idx) {
    const CellSpec& c = cells[idx];
    const Sample sample = synth::gen_mixture({c.rel, 1.0 - c.noise_prop}, c.n,
                                             derive_seed(seed, idx));
    const auto results = compute_measures(kinds, sample, params);
    values[idx].resize(results.size());
    for (std::size_t k = 0; k < results.size(); ++k) values[idx][k] = results[k].value;
  });

  std::vector<EquitabilityReport> reports;
  reports.reserve(kinds.size());
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    EquitabilityReport report;
    report.kind = kinds[k];
    report.cells.reserve(cells.size());
    for (std::size_t idx = 0; idx < cells.size(); ++idx)
      report.cells.push_back({cells[idx].rel, cells[idx].noise_prop, cells[idx].n,
                              cells[idx].rep, values[idx][k]});

    double correct = 0.0;
    std::size_t total = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      for (std::size_t j = 0; j < cells.size(); ++j) {
        if (cells[i].noise_prop >= cells[j].noise_prop) continue;
        // i is the lower-noise dataset: an equitable measure ranks it higher
        ++total;
        if (values[i][k] > values[j][k])
          correct += 1.0;
        else if (values[i][k] == values[j][k])
          correct += 0.5;
      }
    }
    report.separation_auc = total == 0 ? 0.0 : correct / static_cast<double>(total);
    reports.push_back(std::move(report));
  }
  return reports;
}

std::map<std::string, double> four_clouds_type_one_rates(
    const std::vector<std::string>& kinds, std::size_t n, int n_sims, int n_perm, double level,
    double cloud_sd, std::uint64_t seed, int workers, const MeasureParams& params) {
  if (n_sims < 1 || n_perm < 19)
    throw std::invalid_argument("four_clouds_type_one_rates: bad n_sims / n_perm");

  std::vector<std::vector<std::uint8_t>> rejected(
      static_cast<std::size_t>(n_sims), std::vector<std::uint8_t>(kinds.size(), 0));

  parallel_for(static_cast<std::size_t>(n_sims), workers, [&](std::size_t sim) {
    const Sample sample = synth::gen_regression(synth::RelationshipId::four_clouds, cloud_sd, n,
                                                derive_seed(seed, sim));
    std::vector<PermutationEvaluator> evaluators;
    evaluators.reserve(kinds.size());
    for (const auto& kind : kinds) evaluators.emplace_back(kind, sample, params);

    std::vector<double> stats(kinds.size());
    for (std::size_t k = 0; k < kinds.size(); ++k) stats[k] = evaluators[k].statistic(nullptr);

    // one permutation stream per simulation, shared by all kinds
    std::vector<std::vector<double>> nulls(kinds.size(),
                                           std::vector<double>(static_cast<std::size_t>(n_perm)));
    for (int b = 0; b < n_perm; ++b) {
      const auto perm = random_permutation(
          n, derive_seed(seed ^ kPermStreamSalt,
                         sim * static_cast<std::size_t>(n_perm) + static_cast<std::size_t>(b)));
      for (std::size_t k = 0; k < kinds.size(); ++k)
        nulls[k][static_cast<std::size_t>(b)] = evaluators[k].statistic(&perm);
    }
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      const double cutoff = cutoff_from_null(nulls[k], level);
      rejected[sim][k] = stats[k] > cutoff ? 1 : 0;
    }
  });

  std::map<std::string, double> rates;
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    std::size_t count = 0;
    for (int s = 0; s < n_sims; ++s) count += rejected[static_cast<std::size_t>(s)][k];
    rates[kinds[k]] = static_cast<double>(count) / n_sims;
  }
  return rates;
}

}  // namespace equidep::infer
