#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "equidep/ccor.hpp"
#include "equidep/infer.hpp"
#include "equidep/measures.hpp"
#include "equidep/random.hpp"
#include "equidep/scan.hpp"
#include "equidep/svg.hpp"
#include "equidep/synth.hpp"

namespace {

constexpr const char* kVersionLine = "# equidep 0.1.0\n";

std::string sig6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("EQUIDEP_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
    throw std::runtime_error("EQUIDEP_SEED is not a valid integer");
  }
  return 0;  // documented default
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> split_csv_doubles(const std::string& s) {
  std::vector<double> out;
  for (const auto& item : split_csv(s)) out.push_back(std::stod(item));
  return out;
}

std::vector<std::size_t> split_csv_sizes(const std::string& s) {
  std::vector<std::size_t> out;
  for (const auto& item : split_csv(s)) out.push_back(std::stoull(item));
  return out;
}

// Writes to the path or, for an empty path, to stdout.
void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

void write_sample_csv(const std::string& path, const equidep::Sample& sample) {
  std::ostringstream out;
  out << kVersionLine << "x,y\n";
  for (std::size_t i = 0; i < sample.n(); ++i)
    out << full(sample.xs[i]) << ',' << full(sample.ys[i]) << '\n';
  write_text(path, out.str());
}

equidep::Sample load_pair(const std::string& path) {
  const equidep::scan::Table t = equidep::scan::load_table(path);
  if (t.n_cols() != 2)
    throw std::runtime_error("expected a two-column x,y file, got " +
                             std::to_string(t.n_cols()) + " columns");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < t.n_rows(); ++i) {
    if (std::isnan(t.columns[0][i]) || std::isnan(t.columns[1][i])) continue;
    xs.push_back(t.columns[0][i]);
    ys.push_back(t.columns[1][i]);
  }
  return equidep::Sample(std::move(xs), std::move(ys));
}

equidep::synth::GridDensity parse_named_density(const std::string& name, int g_cells) {
  using equidep::synth::GridDensity;
  const auto colon = name.find(':');
  const std::string head = name.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : name.substr(colon + 1);
  if (head == "uniform") return equidep::synth::uniform_density(g_cells);
  if (head == "blocks") return equidep::synth::diagonal_block_density(std::stoi(arg), g_cells);
  if (head == "band") return equidep::synth::diagonal_band_density(std::stod(arg), g_cells);
  if (head == "mixture") return equidep::synth::linear_mixture_density(std::stod(arg), g_cells);
  if (head == "gaussian") return equidep::synth::gaussian_copula_density(std::stod(arg), g_cells);
  throw std::runtime_error(
      "unknown density '" + name +
      "' (expected uniform, blocks:K, band:WIDTH, mixture:P or gaussian:RHO)");
}

equidep::synth::GridDensity load_grid_density(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::vector<double> values;
  std::string line;
  std::size_t cols = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split_csv_doubles(line);
    if (cols == 0) cols = cells.size();
    if (cells.size() != cols) throw std::runtime_error("ragged density grid");
    values.insert(values.end(), cells.begin(), cells.end());
  }
  const std::size_t g = cols;
  if (g < 2 || values.size() != g * g)
    throw std::runtime_error("density grid must be square (G rows of G values)");
  return equidep::synth::GridDensity(std::move(values), static_cast<int>(g));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equidep: copula-correlation dependence estimation toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // inherited: lets --seed appear after any subcommand

  std::optional<std::uint64_t> seed_flag;
  app.add_option("--seed", seed_flag, "RNG seed (default: EQUIDEP_SEED env var, then 0)");

  // ---- measure ----
  auto* measure = app.add_subcommand("measure", "compute dependence measures on an x,y file");
  std::string m_input, m_output, m_kind = "ccor", m_kinds_list, m_plot;
  double m_alpha = 2.0, m_bandwidth = 0.0;
  int m_k = 3, m_grid = 0;
  measure->add_option("--input", m_input, "two-column CSV with header")->required();
  measure->add_option("--kind", m_kind, "measure kind (default ccor)");
  measure->add_option("--kinds", m_kinds_list, "comma-separated list of kinds");
  measure->add_option("--alpha", m_alpha, "alpha for cd / tsallis");
  measure->add_option("--k", m_k, "neighbour count for mi_ksg / micor");
  measure->add_option("--bandwidth", m_bandwidth, "override the default bandwidth rule");
  measure->add_option("--grid", m_grid, "override the default density grid resolution");
  measure->add_option("--output", m_output, "write kind,value CSV here instead of stdout");
  measure->add_option("--plot", m_plot, "write a rank-scatter SVG of the input");

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "generate synthetic samples as x,y CSV");
  gen->require_subcommand(1);
  std::string g_rel = "linear", g_output, g_plot, g_variant = "c1";
  double g_p = 0.5, g_noise = 0.1, g_rho = 0.5;
  double g_a = 0.01, g_delta = 0.02, g_mlow = 2.0, g_mhigh = 50.0, g_eps = 0.0;
  std::size_t g_n = 1000;
  bool g_fixed = false;

  auto* gen_mix = gen->add_subcommand("mixture", "deterministic curve hidden in uniform noise");
  gen_mix->add_option("--rel", g_rel, "relationship name")->required();
  gen_mix->add_option("--p", g_p, "signal proportion")->required();
  gen_mix->add_option("--n", g_n, "sample size")->required();
  gen_mix->add_flag("--fixed-count", g_fixed, "plant exactly round(p*n) curve points");
  gen_mix->add_option("--output", g_output, "output CSV path (default stdout)");
  gen_mix->add_option("--plot", g_plot, "write a scatter SVG");

  auto* gen_reg = gen->add_subcommand("regression", "Y = f(X) + Gaussian noise");
  gen_reg->add_option("--rel", g_rel, "relationship name")->required();
  gen_reg->add_option("--noise-sd", g_noise, "noise standard deviation")->required();
  gen_reg->add_option("--n", g_n, "sample size")->required();
  gen_reg->add_option("--output", g_output, "output CSV path (default stdout)");
  gen_reg->add_option("--plot", g_plot, "write a scatter SVG");

  auto* gen_gauss = gen->add_subcommand("gaussian", "bivariate Gaussian with correlation rho");
  gen_gauss->add_option("--rho", g_rho, "correlation")->required();
  gen_gauss->add_option("--n", g_n, "sample size")->required();
  gen_gauss->add_option("--output", g_output, "output CSV path (default stdout)");
  gen_gauss->add_option("--plot", g_plot, "write a scatter SVG");

  auto* gen_hard = gen->add_subcommand("hardpair", "hard-to-distinguish strip copula");
  gen_hard->add_option("--a", g_a, "mass on the lower strip");
  gen_hard->add_option("--delta", g_delta, "mass on the upper strip");
  gen_hard->add_option("--m-low", g_mlow, "density on the lower strip");
  gen_hard->add_option("--m-high", g_mhigh, "density on the upper strip");
  gen_hard->add_option("--epsilon", g_eps, "mass moved by variant c2");
  gen_hard->add_option("--variant", g_variant, "c1 or c2");
  gen_hard->add_option("--n", g_n, "sample size")->required();
  gen_hard->add_option("--output", g_output, "output CSV path (default stdout)");

  // ---- scan ----
  auto* scan_cmd = app.add_subcommand("scan", "pairwise dependence scan over a table");
  std::string s_input, s_output, s_kinds = "ccor,pearson", s_missing = ",NA", s_rank_output;
  std::size_t s_min_n = 50, s_top_k = 20;
  int s_workers = 0;
  char s_delim = ',';
  scan_cmd->add_option("--input", s_input, "table CSV with header")->required();
  scan_cmd->add_option("--kinds", s_kinds, "comma-separated measure kinds");
  scan_cmd->add_option("--min-n", s_min_n, "minimum common observations per pair");
  scan_cmd->add_option("--workers", s_workers, "worker threads (0 = all cores)");
  scan_cmd->add_option("--delimiter", s_delim, "field delimiter");
  scan_cmd->add_option("--missing", s_missing, "comma-separated missing-value markers");
  scan_cmd->add_option("--output", s_output, "scan CSV path (default stdout)");
  scan_cmd->add_option("--rank-output", s_rank_output, "also write the top-k nonlinear ranking");
  scan_cmd->add_option("--top-k", s_top_k, "rows kept in the ranking output");

  // ---- simulate ----
  auto* sim = app.add_subcommand("simulate", "benchmark harnesses");
  sim->require_subcommand(1);
  std::string p_kinds = "ccor", p_rels = "linear", p_noise_levels, p_output;
  std::size_t p_n = 320;
  int p_sims = 500, p_perm = 1000, p_workers = 0;

  auto* sim_power = sim->add_subcommand("power", "permutation-test power across noise levels");
  sim_power->add_option("--kinds", p_kinds, "comma-separated measure kinds");
  sim_power->add_option("--rels", p_rels, "comma-separated relationships");
  sim_power->add_option("--n", p_n, "sample size per dataset");
  sim_power->add_option("--n-sims", p_sims, "simulated datasets per cell");
  sim_power->add_option("--n-perm", p_perm, "permutations per test");
  sim_power->add_option("--noise-levels", p_noise_levels,
                        "comma-separated noise SDs (default: 30 levels, 0.05..1.5)");
  sim_power->add_option("--workers", p_workers, "worker threads (0 = all cores)");
  sim_power->add_option("--output", p_output, "power CSV path (default stdout)");

  std::string e_kinds = "ccor,pearson,dcor", e_props = "0.3333333333,0.6666666667",
              e_sizes = "200,2000", e_output;
  int e_reps = 10, e_workers = 0;
  auto* sim_equit = sim->add_subcommand("equitability", "noise-level separation experiment");
  sim_equit->add_option("--kinds", e_kinds, "comma-separated measure kinds");
  sim_equit->add_option("--noise-props", e_props, "noise proportions (1-p), each in (0,1)");
  sim_equit->add_option("--sizes", e_sizes, "comma-separated sample sizes");
  sim_equit->add_option("--reps", e_reps, "replicates per cell");
  sim_equit->add_option("--workers", e_workers, "worker threads (0 = all cores)");
  sim_equit->add_option("--output", e_output, "cell CSV path (default stdout)");

  // ---- oracle ----
  auto* oracle = app.add_subcommand("oracle", "population measure of a known grid density");
  std::string o_density = "uniform", o_input, o_kind = "ccor";
  double o_alpha = 2.0;
  int o_grid = equidep::synth::kOracleGridCells;
  oracle->add_option("--density", o_density,
                     "uniform | blocks:K | band:WIDTH | mixture:P | gaussian:RHO");
  oracle->add_option("--input", o_input, "load the density grid from a CSV matrix instead");
  oracle->add_option("--kind", o_kind, "population functional");
  oracle->add_option("--alpha", o_alpha, "alpha for cd / tsallis");
  oracle->add_option("--grid", o_grid, "oracle grid resolution");

  CLI11_PARSE(app, argc, argv);

  try {
    const std::uint64_t seed = resolve_seed(seed_flag);

    if (*measure) {
      const equidep::Sample sample = load_pair(m_input);
      std::vector<std::string> kinds =
          m_kinds_list.empty() ? std::vector<std::string>{m_kind} : split_csv(m_kinds_list);
      equidep::MeasureParams params;
      params.ksg_k = m_k;
      params.alpha = m_alpha;

      std::vector<std::pair<std::string, double>> values;
      const bool overridden = m_bandwidth > 0.0 || m_grid > 0;
      for (const auto& kind : kinds) {
        if (kind == "ccor" && overridden) {
          const equidep::Bandwidth h =
              m_bandwidth > 0.0 ? equidep::Bandwidth(m_bandwidth)
                                : equidep::default_bandwidth(sample.n());
          const int g = m_grid > 0 ? m_grid : equidep::default_grid_cells(h);
          values.emplace_back(kind, equidep::ccor_corrected(sample, h, g).corrected);
        } else {
          values.emplace_back(kind, equidep::compute_measure(kind, sample, params).value);
        }
      }
      if (!m_plot.empty()) {
        const equidep::PseudoSample ps = equidep::pseudo_observations(sample);
        equidep::write_scatter_svg(m_plot, ps.us, ps.vs, "rank scatter: " + m_input);
      }
      if (!m_output.empty()) {
        std::ostringstream out;
        out << kVersionLine << "kind,value,n\n";
        for (const auto& [kind, value] : values)
          out << kind << ',' << sig6(value) << ',' << sample.n() << '\n';
        write_text(m_output, out.str());
      } else if (values.size() == 1) {
        std::cout << sig6(values[0].second) << '\n';
      } else {
        for (const auto& [kind, value] : values)
          std::cout << kind << ',' << sig6(value) << '\n';
      }
      return 0;
    }

    if (*gen) {
      equidep::Sample sample({0.0, 1.0}, {0.0, 1.0});
      if (*gen_mix) {
        sample = equidep::synth::gen_mixture(
            {equidep::synth::relationship_from_string(g_rel), g_p}, g_n, seed, g_fixed);
      } else if (*gen_reg) {
        sample = equidep::synth::gen_regression(
            equidep::synth::relationship_from_string(g_rel), g_noise, g_n, seed);
      } else if (*gen_gauss) {
        sample = equidep::synth::gen_gaussian_copula(g_rho, g_n, seed);
      } else {
        equidep::synth::HardPairSpec spec{g_a, g_delta, g_mlow, g_mhigh, g_eps,
                                          g_variant == "c2"
                                              ? equidep::synth::HardPairSpec::Variant::c2
                                              : equidep::synth::HardPairSpec::Variant::c1};
        sample = equidep::synth::gen_hard_pair(spec, g_n, seed);
      }
      write_sample_csv(g_output, sample);
      if (!g_plot.empty())
        equidep::write_scatter_svg(g_plot, sample.xs, sample.ys, "generated sample");
      return 0;
    }

    if (*scan_cmd) {
      std::vector<std::string> markers = split_csv(s_missing);
      markers.push_back("");  // the empty cell is always missing
      const equidep::scan::Table table = equidep::scan::load_table(s_input, markers, s_delim);
      const equidep::scan::ScanResult result =
          equidep::scan::pairwise_scan(table, split_csv(s_kinds), s_min_n, s_workers);
      std::ostringstream out;
      equidep::scan::write_scan_csv(out, result);
      write_text(s_output, out.str());
      if (!s_rank_output.empty()) {
        equidep::scan::ScanResult ranked = result;
        ranked.rows = equidep::scan::rank_nonlinear(result.rows, s_top_k);
        std::ostringstream rout;
        equidep::scan::write_scan_csv(rout, ranked);
        write_text(s_rank_output, rout.str());
      }
      std::cerr << "pairs: " << result.pairs_total << ", kept: " << result.rows.size()
                << ", skipped (n < " << s_min_n << "): " << result.pairs_skipped
                << ", degenerate: " << result.degenerate_pairs << '\n';
      return 0;
    }

    if (*sim_power) {
      const auto levels = p_noise_levels.empty() ? equidep::infer::default_noise_grid()
                                                 : split_csv_doubles(p_noise_levels);
      std::ostringstream out;
      out << kVersionLine << "kind,relationship,n,noise_sd,power\n";
      std::uint64_t stream = 0;
      for (const auto& kind : split_csv(p_kinds)) {
        for (const auto& rel_name : split_csv(p_rels)) {
          const auto rel = equidep::synth::relationship_from_string(rel_name);
          const auto curve = equidep::infer::power_curve(
              kind, rel, levels, p_n, p_sims, p_perm,
              equidep::derive_seed(seed, stream++), 0.05, p_workers);
          for (const auto& pt : curve)
            out << kind << ',' << rel_name << ',' << p_n << ',' << sig6(pt.noise_sd) << ','
                << sig6(pt.power) << '\n';
        }
      }
      write_text(p_output, out.str());
      return 0;
    }

    if (*sim_equit) {
      const auto reports = equidep::infer::equitability_experiment(
          split_csv(e_kinds), split_csv_doubles(e_props), split_csv_sizes(e_sizes), e_reps,
          seed, e_workers);
      std::ostringstream out;
      out << kVersionLine;
      for (const auto& r : reports)
        out << "# separation_auc " << r.kind << ' ' << sig6(r.separation_auc) << '\n';
      out << "kind,relationship,noise_prop,n,rep,value\n";
      for (const auto& r : reports)
        for (const auto& c : r.cells)
          out << r.kind << ',' << equidep::synth::to_string(c.relationship) << ','
              << sig6(c.noise_prop) << ',' << c.n << ',' << c.rep << ',' << sig6(c.value)
              << '\n';
      write_text(e_output, out.str());
      for (const auto& r : reports)
        std::cerr << "separation_auc " << r.kind << " = " << sig6(r.separation_auc) << '\n';
      return 0;
    }

    if (*oracle) {
      const equidep::synth::GridDensity density =
          o_input.empty() ? parse_named_density(o_density, o_grid) : load_grid_density(o_input);
      equidep::MeasureParams params;
      params.alpha = o_alpha;
      std::cout << sig6(equidep::synth::population_measure(density, o_kind, params)) << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
