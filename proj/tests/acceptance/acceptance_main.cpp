// Acceptance suite: one checkable criterion per function, one PASS/FAIL line
// per criterion on stdout. Exit status is the number of failed criteria.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "equidep/ccor.hpp"
#include "equidep/infer.hpp"
#include "equidep/measures.hpp"
#include "equidep/parallel.hpp"
#include "equidep/random.hpp"
#include "equidep/scan.hpp"
#include "equidep/synth.hpp"

using namespace equidep;
using synth::RelationshipId;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

double mean_corrected_ccor(RelationshipId rel, double p, std::size_t n, int seeds,
                           std::uint64_t seed_base, int workers) {
  std::vector<double> values(static_cast<std::size_t>(seeds));
  parallel_for(values.size(), workers, [&](std::size_t s) {
    const Sample sample = synth::gen_mixture({rel, p}, n, derive_seed(seed_base, s));
    values[s] = ccor_corrected(sample).corrected;
  });
  double acc = 0.0;
  for (double v : values) acc += v;
  return acc / static_cast<double>(seeds);
}

// 1. robust-equitability: mean corrected Ccor tracks the signal proportion p
Outcome criterion_robust_equitability(int workers) {
  const int seeds = 100;
  const std::vector<double> ps = {0.1, 1.0 / 3.0, 2.0 / 3.0};
  struct Config {
    std::size_t n;
    double tol;
  };
  const std::vector<Config> configs = {{10000, 0.05}, {2000, 0.10}};

  bool pass = true;
  std::ostringstream detail;
  double worst = 0.0;
  std::string worst_cell;
  int failing = 0;
  std::uint64_t stream = 0;
  for (const auto& cfg : configs) {
    for (const double p : ps) {
      for (const auto rel : synth::equitability_relationships()) {
        const double mean =
            mean_corrected_ccor(rel, p, cfg.n, seeds, derive_seed(101, stream++), workers);
        const double err = mean - p;
        if (std::fabs(err) > std::fabs(worst)) {
          worst = err;
          worst_cell = synth::to_string(rel) + " p=" + fmt(p) + " n=" + std::to_string(cfg.n);
        }
        if (std::fabs(err) > cfg.tol) {
          pass = false;
          ++failing;
          detail << ' ' << synth::to_string(rel) << "(p=" << fmt(p) << ",n=" << cfg.n
                 << "):" << fmt(err);
        }
      }
    }
  }
  std::ostringstream out;
  out << "36 cells, 100 seeds each; worst error " << fmt(worst) << " at " << worst_cell;
  if (!pass) out << "; " << failing << " cells outside tolerance:" << detail.str();
  return {pass, out.str()};
}

// 2. equitability separation AUC: ccor >= 0.95, pearson <= 0.85, dcor <= 0.85
Outcome criterion_separation_auc(int workers) {
  const auto reports = infer::equitability_experiment(
      {"ccor", "pearson", "dcor"}, {1.0 / 3.0, 2.0 / 3.0}, {200, 2000}, 10, 2024, workers);
  const double ccor_auc = reports[0].separation_auc;
  const double pearson_auc = reports[1].separation_auc;
  const double dcor_auc = reports[2].separation_auc;
  const bool pass = ccor_auc >= 0.95 && pearson_auc <= 0.85 && dcor_auc <= 0.85;
  return {pass, "auc ccor=" + fmt(ccor_auc) + " (>=0.95), pearson=" + fmt(pearson_auc) +
                    " (<=0.85), dcor=" + fmt(dcor_auc) + " (<=0.85)"};
}

// 3. MI estimates drift with n on a 10% mixture while Ccor stays put
Outcome criterion_mi_instability(int workers) {
  const int seeds = 30;
  std::vector<double> mi_small(seeds), mi_big(seeds), cc_small(seeds), cc_big(seeds);
  parallel_for(static_cast<std::size_t>(seeds), workers, [&](std::size_t s) {
    const synth::MixtureSpec spec{RelationshipId::linear, 0.1};
    const Sample small = synth::gen_mixture(spec, 1000, derive_seed(303, s));
    const Sample big = synth::gen_mixture(spec, 10000, derive_seed(304, s));
    mi_small[s] = mi_ksg(pseudo_observations(small), 3).value;
    mi_big[s] = mi_ksg(pseudo_observations(big), 3).value;
    cc_small[s] = ccor_corrected(small).corrected;
    cc_big[s] = ccor_corrected(big).corrected;
  });
  const auto mean = [&](const std::vector<double>& v) {
    double a = 0.0;
    for (double x : v) a += x;
    return a / static_cast<double>(v.size());
  };
  const double mi_drift = mean(mi_big) - mean(mi_small);
  const double cc_drift = std::fabs(mean(cc_big) - mean(cc_small));
  const bool pass = mi_drift > 0.1 && cc_drift <= 0.05;
  return {pass, "mi_ksg3 drift " + fmt(mi_drift) + " (>0.1), ccor drift " + fmt(cc_drift) +
                    " (<=0.05), " + std::to_string(seeds) + " seeds"};
}

// 4. population oracles reproduce the reference block-density values
Outcome criterion_population_oracles(int) {
  struct Check {
    std::string name;
    double got;
    double want;
    double tol;
  };
  std::vector<Check> checks;
  const synth::GridDensity row_e = synth::diagonal_block_density(4, 512);
  const synth::GridDensity row_f = synth::diagonal_block_density(2, 512);
  const synth::GridDensity row_d = synth::diagonal_band_density(1e-3, 512);
  checks.push_back({"E.ccor", synth::population_measure(row_e, "ccor"), 0.75, 0.01});
  checks.push_back({"E.phicor", synth::population_measure(row_e, "phicor"), 0.87, 0.01});
  checks.push_back({"E.micor", synth::population_measure(row_e, "micor"), 0.97, 0.01});
  checks.push_back({"F.ccor", synth::population_measure(row_f, "ccor"), 0.50, 0.01});
  checks.push_back({"F.phicor", synth::population_measure(row_f, "phicor"), 0.71, 0.01});
  checks.push_back({"F.micor", synth::population_measure(row_f, "micor"), 0.87, 0.01});
  checks.push_back({"D.ccor", synth::population_measure(row_d, "ccor"), 1.0, 0.02});
  checks.push_back({"D.phicor", synth::population_measure(row_d, "phicor"), 1.0, 0.02});
  checks.push_back({"D.micor", synth::population_measure(row_d, "micor"), 1.0, 0.02});

  bool pass = true;
  std::ostringstream out;
  for (const auto& c : checks) {
    const bool ok = std::fabs(c.got - c.want) <= c.tol;
    pass = pass && ok;
    out << c.name << '=' << fmt(c.got) << (ok ? " " : "(FAIL) ");
  }
  return {pass, out.str()};
}

// 5. sigma = kappa = p and phi2 = p^2 on M-mixtures: grid oracle and samples
Outcome criterion_mixture_identities(int workers) {
  bool pass = true;
  std::ostringstream out;
  for (const double p : {0.25, 0.5, 0.75}) {
    const synth::GridDensity grid = synth::linear_mixture_density(p, 512);
    const double gs = synth::population_measure(grid, "sigma");
    const double gk = synth::population_measure(grid, "kappa");
    const double gf = synth::population_measure(grid, "phi2");
    const bool grid_ok = std::fabs(gs - p) <= 1e-3 && std::fabs(gk - p) <= 1e-3 &&
                         std::fabs(gf - p * p) <= 1e-3;

    const int seeds = 10;
    std::vector<double> ss(seeds), sk(seeds), sf(seeds);
    parallel_for(static_cast<std::size_t>(seeds), workers, [&](std::size_t s) {
      const Sample sample = synth::gen_mixture({RelationshipId::linear, p}, 10000,
                                               derive_seed(505 + static_cast<int>(p * 100), s));
      const PseudoSample ps = pseudo_observations(sample);
      ss[s] = cdf_distance(ps, CdfDistanceKind::sigma).value;
      sk[s] = cdf_distance(ps, CdfDistanceKind::kappa).value;
      sf[s] = cdf_distance(ps, CdfDistanceKind::phi2).value;
    });
    const auto mean = [&](const std::vector<double>& v) {
      double a = 0.0;
      for (double x : v) a += x;
      return a / static_cast<double>(v.size());
    };
    const bool sample_ok = std::fabs(mean(ss) - p) <= 0.03 && std::fabs(mean(sk) - p) <= 0.03 &&
                           std::fabs(mean(sf) - p * p) <= 0.03;
    pass = pass && grid_ok && sample_ok;
    out << "p=" << fmt(p) << " grid(" << fmt(gs) << ',' << fmt(gk) << ',' << fmt(gf)
        << (grid_ok ? ")" : ")(FAIL)") << " sample(" << fmt(mean(ss)) << ',' << fmt(mean(sk))
        << ',' << fmt(mean(sf)) << (sample_ok ? ") " : ")(FAIL) ");
  }
  return {pass, out.str()};
}

// 6. Gaussian-copula closed forms at rho = 0.75
Outcome criterion_gaussian_analytics(int workers) {
  const int seeds = 50;
  std::vector<double> sp(seeds), kd(seeds), mc(seeds);
  parallel_for(static_cast<std::size_t>(seeds), workers, [&](std::size_t s) {
    const Sample sample = synth::gen_gaussian_copula(0.75, 10000, derive_seed(606, s));
    const PseudoSample ps = pseudo_observations(sample);
    sp[s] = concordance(ps, ConcordanceKind::spearman).value;
    kd[s] = concordance(ps, ConcordanceKind::kendall).value;
    mc[s] = micor(mi_ksg(ps, 3).value);
  });
  const auto mean = [&](const std::vector<double>& v) {
    double a = 0.0;
    for (double x : v) a += x;
    return a / static_cast<double>(v.size());
  };
  const double spearman_want = (6.0 / M_PI) * std::asin(0.375);
  const double kendall_want = (2.0 / M_PI) * std::asin(0.75);
  const double m_sp = mean(sp), m_kd = mean(kd), m_mc = mean(mc);
  const bool pass = std::fabs(m_sp - spearman_want) <= 0.02 &&
                    std::fabs(m_kd - kendall_want) <= 0.02 && std::fabs(m_mc - 0.75) <= 0.05;
  return {pass, "spearman " + fmt(m_sp) + " (want " + fmt(spearman_want) + "+-0.02), kendall " +
                    fmt(m_kd) + " (want " + fmt(kendall_want) + "+-0.02), micor " + fmt(m_mc) +
                    " (want 0.75+-0.05)"};
}

// 7. permutation tests keep the nominal level on independent four-cloud data
Outcome criterion_type_one_error(int workers) {
  const std::vector<std::string> kinds = {"pearson", "spearman", "kendall", "gini",
                                          "blomqvist", "sigma", "phi2", "kappa", "dcor",
                                          "ccor", "mi_ksg3", "mi_ksg20", "mic"};
  const auto rates = infer::four_clouds_type_one_rates(kinds, 320, 500, 1000, 0.05, 0.1, 707,
                                                       workers);
  bool pass = true;
  std::ostringstream out;
  for (const auto& kind : kinds) {
    const double r = rates.at(kind);
    const bool ok = r >= 0.03 && r <= 0.07;
    pass = pass && ok;
    out << kind << '=' << fmt(r) << (ok ? " " : "(FAIL) ");
  }
  return {pass, out.str()};
}

// 8. noiseless power: 1.0 for ccor/dcor/mi_ksg3 everywhere; pearson weak on
// the symmetric shapes
Outcome criterion_power_sanity(int workers) {
  const int n_sims = 200, n_perm = 99;
  bool pass = true;
  std::ostringstream out;
  std::uint64_t stream = 0;
  for (const std::string kind : {"ccor", "dcor", "mi_ksg3"}) {
    for (const auto rel : synth::power_relationships()) {
      const auto curve = infer::power_curve(kind, rel, {0.0}, 320, n_sims, n_perm,
                                            derive_seed(808, stream++), 0.05, workers);
      const bool ok = curve[0].power == 1.0;
      pass = pass && ok;
      if (!ok)
        out << kind << '/' << synth::to_string(rel) << '=' << fmt(curve[0].power) << "(FAIL) ";
    }
  }
  for (const auto rel : {RelationshipId::circle, RelationshipId::cross}) {
    const auto curve = infer::power_curve("pearson", rel, {0.0}, 320, n_sims, n_perm,
                                          derive_seed(808, stream++), 0.05, workers);
    const bool ok = curve[0].power <= 0.10;
    pass = pass && ok;
    out << "pearson/" << synth::to_string(rel) << '=' << fmt(curve[0].power)
        << (ok ? " " : "(FAIL) ");
  }
  if (pass) out << "; all 24 deterministic powers = 1.0";
  return {pass, out.str()};
}

// 9. convergence rate on the Gaussian copula rho = 0.5
Outcome criterion_convergence_rate(int workers) {
  const synth::GridDensity oracle = synth::gaussian_copula_density(0.5, 1024);
  const double pop = synth::population_measure(oracle, "ccor");
  const std::vector<std::size_t> ns = {1000, 3000, 10000};
  const int seeds = 60;
  std::vector<double> log_err, log_n;
  std::ostringstream out;
  out << "pop=" << fmt(pop) << ", mean|err|:";
  for (const std::size_t n : ns) {
    std::vector<double> errs(seeds);
    parallel_for(static_cast<std::size_t>(seeds), workers, [&](std::size_t s) {
      const Sample sample = synth::gen_gaussian_copula(0.5, n, derive_seed(909 + n, s));
      errs[s] = std::fabs(ccor_corrected(sample).corrected - pop);
    });
    double mean = 0.0;
    for (double e : errs) mean += e;
    mean /= static_cast<double>(seeds);
    out << " n=" << n << ":" << fmt(mean);
    log_err.push_back(std::log(mean));
    log_n.push_back(std::log(static_cast<double>(n)));
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    mx += log_n[i];
    my += log_err[i];
  }
  mx /= 3.0;
  my /= 3.0;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    num += (log_n[i] - mx) * (log_err[i] - my);
    den += (log_n[i] - mx) * (log_n[i] - mx);
  }
  const double slope = num / den;
  out << "; slope " << fmt(slope) << " (<= -0.2)";
  return {slope <= -0.2, out.str()};
}

// 10. performance: one corrected Ccor at n = 1e4, then a 100-column scan
Outcome criterion_performance(int workers) {
  clear_ccor_cache();
  const Sample pair = synth::gen_gaussian_copula(0.4, 10000, 42);
  const auto t0 = std::chrono::steady_clock::now();
  const CcorResult r = ccor_corrected(pair);
  const auto t1 = std::chrono::steady_clock::now();
  const double single_s = std::chrono::duration<double>(t1 - t0).count();

  Rng rng(4242);
  scan::Table table;
  const int cols = 100;
  const std::size_t rows = 500;
  table.names.resize(cols);
  table.columns.assign(cols, std::vector<double>(rows));
  for (int c = 0; c < cols; ++c) {
    char name[16];
    std::snprintf(name, sizeof(name), "v%03d", c);
    table.names[c] = name;
    for (auto& v : table.columns[c]) v = rng.uniform();
  }
  const auto t2 = std::chrono::steady_clock::now();
  const scan::ScanResult scan_result = scan::pairwise_scan(table, {"ccor", "pearson"}, 50,
                                                           workers);
  const auto t3 = std::chrono::steady_clock::now();
  const double scan_s = std::chrono::duration<double>(t3 - t2).count();

  const bool pass = single_s <= 2.0 && scan_s <= 60.0 && scan_result.rows.size() == 4950;
  return {pass, "single ccor(n=1e4) " + fmt(single_s) + "s (<=2s, value " + fmt(r.corrected) +
                    "), 100-column scan " + fmt(scan_s) + "s (<=60s, " +
                    std::to_string(scan_result.rows.size()) + " pairs)"};
}

// 11. hard-pair stability: the estimator barely moves between variants whose
// population MI differs by more than 0.5
Outcome criterion_hard_pair(int workers) {
  synth::HardPairSpec c1{0.01, 0.02, 2.0, std::exp(100.0), 0.01,
                         synth::HardPairSpec::Variant::c1};
  synth::HardPairSpec c2 = c1;
  c2.variant = synth::HardPairSpec::Variant::c2;

  const int seeds = 50;
  std::vector<double> v1(seeds), v2(seeds);
  parallel_for(static_cast<std::size_t>(seeds), workers, [&](std::size_t s) {
    v1[s] = ccor_corrected(synth::gen_hard_pair(c1, 10000, derive_seed(111, s))).corrected;
    v2[s] = ccor_corrected(synth::gen_hard_pair(c2, 10000, derive_seed(112, s))).corrected;
  });
  const auto mean = [&](const std::vector<double>& v) {
    double a = 0.0;
    for (double x : v) a += x;
    return a / static_cast<double>(v.size());
  };
  const double ccor_gap = std::fabs(mean(v1) - mean(v2));
  const double mi_gap = std::fabs(synth::hard_pair_population(c1, "mi") -
                                  synth::hard_pair_population(c2, "mi"));
  const bool pass = ccor_gap <= 0.05 && mi_gap > 0.5;
  return {pass, "ccor means " + fmt(mean(v1)) + " vs " + fmt(mean(v2)) + " (gap " +
                    fmt(ccor_gap) + " <= 0.05), population MI gap " + fmt(mi_gap) + " (> 0.5)"};
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*run)(int workers);
};

const Criterion kCriteria[] = {
    {1, "robust-equitability of corrected Ccor on mixtures", criterion_robust_equitability},
    {2, "equitability separation AUC", criterion_separation_auc},
    {3, "MI estimator instability vs Ccor stability", criterion_mi_instability},
    {4, "population oracles on reference densities", criterion_population_oracles},
    {5, "exact mixture identities for sigma/kappa/phi2", criterion_mixture_identities},
    {6, "Gaussian-copula closed forms", criterion_gaussian_analytics},
    {7, "type I error at the nominal level", criterion_type_one_error},
    {8, "noiseless power sanity", criterion_power_sanity},
    {9, "Ccor convergence rate", criterion_convergence_rate},
    {10, "performance budget", criterion_performance},
    {11, "hard-pair stability of Ccor vs MI", criterion_hard_pair},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  int workers = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
    if (std::strcmp(argv[i], "--workers") == 0 && i + 1 < argc) workers = std::atoi(argv[++i]);
  }

  int failures = 0;
  for (const auto& criterion : kCriteria) {
    if (only != 0 && criterion.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome outcome{false, "exception"};
    try {
      outcome = criterion.run(workers);
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %2d: %s — %s (%.1fs)\n", outcome.pass ? "PASS" : "FAIL",
                criterion.id, criterion.name, outcome.detail.c_str(), secs);
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  return failures;
}
