#include "equidep/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "equidep/random.hpp"

namespace equidep::synth {

namespace {

constexpr double kPi = std::numbers::pi;

struct RelName {
  RelationshipId id;
  const char* name;
};

constexpr RelName kRelNames[] = {
    {RelationshipId::linear, "linear"},
    {RelationshipId::parabolic, "parabolic"},
    {RelationshipId::square_root, "square_root"},
    {RelationshipId::cubic, "cubic"},
    {RelationshipId::centered_cubic, "centered_cubic"},
    {RelationshipId::centered_parabolic, "centered_parabolic"},
    {RelationshipId::cosine_period1, "cosine_period1"},
    {RelationshipId::cosine_4pi, "cosine_4pi"},
    {RelationshipId::sine_4pi, "sine_4pi"},
    {RelationshipId::sine_16pi, "sine_16pi"},
    {RelationshipId::circle, "circle"},
    {RelationshipId::cross, "cross"},
    {RelationshipId::two_branches, "two_branches"},
    {RelationshipId::x_parabola, "x_parabola"},
    {RelationshipId::w_shape, "w_shape"},
    {RelationshipId::four_clouds, "four_clouds"},
};

}  // namespace

RelationshipId relationship_from_string(const std::string& name) {
  for (const auto& e : kRelNames)
    if (name == e.name) return e.id;
  throw std::invalid_argument("unknown relationship: " + name);
}

std::string to_string(RelationshipId rel) {
  for (const auto& e : kRelNames)
    if (rel == e.id) return e.name;
  return "?";
}

const std::vector<RelationshipId>& all_relationships() {
  static const std::vector<RelationshipId> v = [] {
    std::vector<RelationshipId> out;
    for (const auto& e : kRelNames) out.push_back(e.id);
    return out;
  }();
  return v;
}

const std::vector<RelationshipId>& equitability_relationships() {
  static const std::vector<RelationshipId> v = {
      RelationshipId::linear,       RelationshipId::parabolic, RelationshipId::cosine_4pi,
      RelationshipId::two_branches, RelationshipId::circle,    RelationshipId::cross};
  return v;
}

const std::vector<RelationshipId>& power_relationships() {
  static const std::vector<RelationshipId> v = {
      RelationshipId::linear,  RelationshipId::parabolic, RelationshipId::sine_4pi,
      RelationshipId::sine_16pi, RelationshipId::circle,  RelationshipId::cross,
      RelationshipId::w_shape, RelationshipId::x_parabola};
  return v;
}

int branch_count(RelationshipId rel) {
  switch (rel) {
    case RelationshipId::circle:
    case RelationshipId::cross:
    case RelationshipId::two_branches:
    case RelationshipId::x_parabola:
      return 2;
    default:
      return 1;
  }
}

double curve_value(RelationshipId rel, double t, int branch) {
  const double sign = branch == 0 ? 1.0 : -1.0;
  switch (rel) {
    case RelationshipId::linear:
      return t;
    case RelationshipId::parabolic:
      return 4.0 * (t - 0.5) * (t - 0.5);
    case RelationshipId::square_root:
      return std::sqrt(t);
    case RelationshipId::cubic:
      return t * t * t;
    case RelationshipId::centered_cubic:
      return 4.0 * (t - 0.5) * (t - 0.5) * (t - 0.5);
    case RelationshipId::centered_parabolic:
      return 4.0 * t * (1.0 - t);
    case RelationshipId::cosine_period1:
      return 0.5 * (std::cos(2.0 * kPi * t) + 1.0);
    case RelationshipId::cosine_4pi:
      return std::cos(4.0 * kPi * t);
    case RelationshipId::sine_4pi:
      return std::sin(4.0 * kPi * t);
    case RelationshipId::sine_16pi:
      return std::sin(16.0 * kPi * t);
    case RelationshipId::circle:
      return sign * std::sqrt(std::max(0.0, 0.25 - (t - 0.5) * (t - 0.5)));
    case RelationshipId::cross:
      return sign * (t - 0.5);
    case RelationshipId::two_branches:
      return sign * t;
    case RelationshipId::x_parabola:
      return sign * 4.0 * (t - 0.5) * (t - 0.5);
    case RelationshipId::w_shape: {
      const double s = (2.0 * t - 1.0) * (2.0 * t - 1.0) - 0.5;
      return 4.0 * s * s;
    }
    case RelationshipId::four_clouds:
      throw std::invalid_argument("four_clouds has no curve");
  }
  throw std::invalid_argument("unknown relationship");
}

double copula_curve_value(RelationshipId rel, double t, int branch) {
  switch (rel) {
    // Strictly increasing transforms all share the comonotone copula.
    case RelationshipId::linear:
    case RelationshipId::square_root:
    case RelationshipId::cubic:
    case RelationshipId::centered_cubic:
      return t;
    case RelationshipId::parabolic:
    case RelationshipId::cosine_period1:
      return 2.0 * std::fabs(t - 0.5);
    case RelationshipId::centered_parabolic:
      return 1.0 - 2.0 * std::fabs(t - 0.5);
    case RelationshipId::cosine_4pi: {
      // triangle wave: F_Y(cos(4 pi t)) with the arcsine law of cos(4 pi U)
      const double s = std::fmod(4.0 * t, 2.0);
      return s < 1.0 ? 1.0 - s : s - 1.0;
    }
    case RelationshipId::sine_4pi:
      return 0.5 + std::asin(std::sin(4.0 * kPi * t)) / kPi;
    case RelationshipId::sine_16pi:
      return 0.5 + std::asin(std::sin(16.0 * kPi * t)) / kPi;
    case RelationshipId::circle:
      // the copula of the circle is uniform on the diamond |u-.5|+|v-.5|=.5
      return branch == 0 ? 1.0 - std::fabs(t - 0.5) : std::fabs(t - 0.5);
    case RelationshipId::cross:
      return branch == 0 ? t : 1.0 - t;
    case RelationshipId::two_branches:
      return branch == 0 ? 0.5 * (1.0 + t) : 0.5 * (1.0 - t);
    case RelationshipId::x_parabola:
      return branch == 0 ? 0.5 + std::fabs(t - 0.5) : 0.5 - std::fabs(t - 0.5);
    case RelationshipId::w_shape: {
      const double w = std::fabs(2.0 * (2.0 * t - 1.0) * (2.0 * t - 1.0) - 1.0);
      return std::sqrt(0.5 * (1.0 + w)) - std::sqrt(0.5 * (1.0 - w));
    }
    case RelationshipId::four_clouds:
      throw std::invalid_argument("four_clouds has no curve");
  }
  throw std::invalid_argument("unknown relationship");
}

Sample gen_mixture(const MixtureSpec& spec, std::size_t n, std::uint64_t seed,
                   bool fixed_count) {
  if (spec.relationship == RelationshipId::four_clouds)
    throw std::invalid_argument("gen_mixture: four_clouds is not a deterministic curve");
  if (spec.p < 0.0 || spec.p > 1.0)
    throw std::invalid_argument("gen_mixture: p must lie in [0, 1]");
  if (n < 2) throw std::invalid_argument("gen_mixture: need n >= 2");

  const int nb = branch_count(spec.relationship);
  const std::size_t signal_count =
      fixed_count ? static_cast<std::size_t>(std::llround(spec.p * static_cast<double>(n))) : 0;

  Rng rng(seed);
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    // fixed draw budget per point so both arms consume the stream equally
    const double sel = rng.uniform();
    const double t = rng.uniform();
    const double extra = rng.uniform();
    const bool on_curve = fixed_count ? i < signal_count : sel < spec.p;
    if (on_curve) {
      const int branch = std::min(nb - 1, static_cast<int>(extra * nb));
      xs[i] = t;
      ys[i] = copula_curve_value(spec.relationship, t, branch);
    } else {
      xs[i] = t;
      ys[i] = extra;
    }
  }
  return Sample(std::move(xs), std::move(ys));
}

Sample gen_regression(RelationshipId rel, double noise_sd, std::size_t n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("gen_regression: need n >= 2");
  if (noise_sd < 0.0) throw std::invalid_argument("gen_regression: noise_sd must be >= 0");

  Rng rng(seed);
  std::vector<double> xs(n), ys(n);
  if (rel == RelationshipId::four_clouds) {
    for (std::size_t i = 0; i < n; ++i) {
      const double bx = rng.uniform();
      const double by = rng.uniform();
      xs[i] = (bx < 0.5 ? 0.25 : 0.75) + noise_sd * rng.normal();
      ys[i] = (by < 0.5 ? 0.25 : 0.75) + noise_sd * rng.normal();
    }
    return Sample(std::move(xs), std::move(ys));
  }

  const int nb = branch_count(rel);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = rng.uniform();
    const double pick = rng.uniform();
    const int branch = std::min(nb - 1, static_cast<int>(pick * nb));
    xs[i] = t;
    ys[i] = curve_value(rel, t, branch) + noise_sd * rng.normal();
  }
  return Sample(std::move(xs), std::move(ys));
}

Sample gen_gaussian_copula(double rho, std::size_t n, std::uint64_t seed) {
  if (!(std::fabs(rho) < 1.0))
    throw std::invalid_argument("gen_gaussian_copula: need |rho| < 1");
  if (n < 2) throw std::invalid_argument("gen_gaussian_copula: need n >= 2");

  Rng rng(seed);
  const double comp = std::sqrt(1.0 - rho * rho);
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z1 = rng.normal();
    const double z2 = rng.normal();
    xs[i] = z1;
    ys[i] = rho * z1 + comp * z2;
  }
  return Sample(std::move(xs), std::move(ys));
}

void HardPairSpec::validate() const {
  if (!(a > 0.0) || !(delta > 0.0) || a + delta >= 1.0)
    throw std::invalid_argument("HardPairSpec: need a > 0, delta > 0, a + delta < 1");
  if (!(m_high > m_low) || !(m_low > 1.0))
    throw std::invalid_argument("HardPairSpec: need m_high > m_low > 1");
  if (epsilon < 0.0 || epsilon >= delta)
    throw std::invalid_argument("HardPairSpec: need 0 <= epsilon < delta");
  if (strip_width_r1() + strip_width_r2() >= 1.0)
    throw std::invalid_argument("HardPairSpec: strips cover the square (infeasible geometry)");
}

Sample gen_hard_pair(const HardPairSpec& spec, std::size_t n, std::uint64_t seed) {
  spec.validate();
  if (n < 2) throw std::invalid_argument("gen_hard_pair: need n >= 2");

  const double eps = spec.variant == HardPairSpec::Variant::c2 ? spec.epsilon : 0.0;
  const double mass1 = spec.delta - eps;  // strip above the diagonal
  const double mass2 = spec.a + eps;      // strip below the diagonal
  const double w1 = spec.strip_width_r1();
  const double w2 = spec.strip_width_r2();

  // Strips wrap modulo 1, so each region keeps exactly uniform marginals and
  // the advertised area.
  Rng rng(seed);
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform();
    const double region = rng.uniform();
    const double frac = rng.uniform();
    double offset;
    if (region < mass1) {
      offset = frac * w1;  // v in (u, u + w1)
    } else if (region < mass1 + mass2) {
      offset = 1.0 - frac * w2;  // v in (u - w2, u)
    } else {
      offset = w1 + frac * (1.0 - w1 - w2);
    }
    double v = u + offset;
    if (v >= 1.0) v -= 1.0;
    xs[i] = u;
    ys[i] = v;
  }
  return Sample(std::move(xs), std::move(ys));
}

std::vector<std::pair<double, double>> hard_pair_atoms(const HardPairSpec& spec) {
  spec.validate();
  const double eps = spec.variant == HardPairSpec::Variant::c2 ? spec.epsilon : 0.0;
  const double w1 = spec.strip_width_r1();
  const double w2 = spec.strip_width_r2();
  const double a3 = 1.0 - w1 - w2;
  const double mass3 = 1.0 - spec.a - spec.delta;
  return {{w1, (spec.delta - eps) / w1}, {w2, (spec.a + eps) / w2}, {a3, mass3 / a3}};
}

double hard_pair_population(const HardPairSpec& spec, const std::string& kind,
                            const MeasureParams& params) {
  const auto atoms = hard_pair_atoms(spec);
  auto sum = [&](auto&& f) {
    double s = 0.0;
    for (const auto& [area, density] : atoms) s += area * f(density);
    return s;
  };
  if (kind == "ccor") return sum([](double d) { return std::max(0.0, 1.0 - d); });
  if (kind == "cd")
    return sum([&](double d) { return std::pow(std::fabs(d - 1.0), params.alpha); });
  if (kind == "tsallis") {
    if (params.alpha == 0.0 || params.alpha == 1.0)
      throw std::invalid_argument("hard_pair_population: bad tsallis alpha");
    return (1.0 - sum([&](double d) { return std::pow(d, params.alpha); })) /
           (1.0 - params.alpha);
  }
  if (kind == "hellinger") return 1.0 - sum([](double d) { return std::sqrt(d); });
  if (kind == "mi" || kind == "micor") {
    // mass * log(density) per region, stable even for extreme densities
    double mi = 0.0;
    for (const auto& [area, density] : atoms)
      mi += area * density * std::log(density);
    return kind == "mi" ? mi : micor(mi);
  }
  if (kind == "phicor") {
    const double cd2 = sum([](double d) { return (d - 1.0) * (d - 1.0); });
    return std::sqrt(cd2 / (1.0 + cd2));
  }
  throw std::invalid_argument("hard_pair_population: unsupported kind " + kind);
}

GridDensity::GridDensity(std::vector<double> values_in, int g_cells_in)
    : values(std::move(values_in)), g_cells(g_cells_in) {
  if (g_cells < 2 || values.size() != static_cast<std::size_t>(g_cells) * g_cells)
    throw std::invalid_argument("GridDensity: bad grid shape");
  double mass = 0.0;
  for (double v : values) {
    if (v < 0.0) throw std::invalid_argument("GridDensity: negative density value");
    mass += v;
  }
  mass /= static_cast<double>(g_cells) * g_cells;
  if (std::fabs(mass - 1.0) > 1e-6)
    throw std::invalid_argument("GridDensity: density does not integrate to 1");
}

GridDensity uniform_density(int g_cells) {
  return GridDensity(std::vector<double>(static_cast<std::size_t>(g_cells) * g_cells, 1.0),
                     g_cells);
}

GridDensity diagonal_block_density(int blocks, int g_cells) {
  if (blocks < 1 || g_cells % blocks != 0)
    throw std::invalid_argument("diagonal_block_density: g_cells must be a multiple of blocks");
  std::vector<double> vals(static_cast<std::size_t>(g_cells) * g_cells, 0.0);
  const int side = g_cells / blocks;
  for (int a = 0; a < g_cells; ++a) {
    const int block = a / side;
    for (int b = block * side; b < (block + 1) * side; ++b)
      vals[static_cast<std::size_t>(a) * g_cells + b] = static_cast<double>(blocks);
  }
  return GridDensity(std::move(vals), g_cells);
}

GridDensity diagonal_band_density(double width, int g_cells) {
  if (!(width > 0.0) || width >= 1.0)
    throw std::invalid_argument("diagonal_band_density: width must be in (0, 1)");
  const int G = g_cells;
  const double cell = 1.0 / static_cast<double>(G);

  // area of {x - y <= t} within a cell of side `cell`
  auto corner_area = [cell](double t) {
    if (t <= -cell) return 0.0;
    if (t <= 0.0) return 0.5 * (cell + t) * (cell + t);
    if (t <= cell) return cell * cell - 0.5 * (cell - t) * (cell - t);
    return cell * cell;
  };

  std::vector<double> vals(static_cast<std::size_t>(G) * G, 0.0);
  double mass = 0.0;
  for (int a = 0; a < G; ++a) {
    for (int b = 0; b < G; ++b) {
      const double shift = (a - b) * cell;  // u - v at the cell's lower corner
      const double overlap = corner_area(width - shift) - corner_area(-width - shift);
      vals[static_cast<std::size_t>(a) * G + b] = overlap;
      mass += overlap;
    }
  }
  const double scale = static_cast<double>(G) * G / mass;
  for (auto& v : vals) v *= scale;
  return GridDensity(std::move(vals), G);
}

GridDensity linear_mixture_density(double p, int g_cells) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("linear_mixture_density: bad p");
  std::vector<double> vals(static_cast<std::size_t>(g_cells) * g_cells, 1.0 - p);
  for (int a = 0; a < g_cells; ++a)
    vals[static_cast<std::size_t>(a) * g_cells + a] += p * static_cast<double>(g_cells);
  return GridDensity(std::move(vals), g_cells);
}

GridDensity gaussian_copula_density(double rho, int g_cells) {
  if (!(std::fabs(rho) < 1.0))
    throw std::invalid_argument("gaussian_copula_density: need |rho| < 1");
  const int G = g_cells;
  const double r2 = rho * rho;
  std::vector<double> q(G);
  for (int i = 0; i < G; ++i) q[i] = normal_quantile((i + 0.5) / static_cast<double>(G));

  std::vector<double> vals(static_cast<std::size_t>(G) * G);
  double mass = 0.0;
  for (int a = 0; a < G; ++a) {
    for (int b = 0; b < G; ++b) {
      const double x = q[a], y = q[b];
      const double c =
          std::exp(-(r2 * (x * x + y * y) - 2.0 * rho * x * y) / (2.0 * (1.0 - r2))) /
          std::sqrt(1.0 - r2);
      vals[static_cast<std::size_t>(a) * G + b] = c;
      mass += c;
    }
  }
  const double scale = static_cast<double>(G) * G / mass;
  for (auto& v : vals) v *= scale;
  return GridDensity(std::move(vals), G);
}

double population_measure(const GridDensity& density, const std::string& kind,
                          const MeasureParams& params) {
  const int G = density.g_cells;
  const double cells = static_cast<double>(G) * G;
  auto integrate = [&](auto&& f) {
    double s = 0.0;
    for (double c : density.values) s += f(c);
    return s / cells;
  };

  if (kind == "ccor") return integrate([](double c) { return std::max(0.0, 1.0 - c); });
  if (kind == "cd") {
    if (!(params.alpha > 0.0)) throw std::invalid_argument("population_measure: cd alpha <= 0");
    return integrate([&](double c) { return std::pow(std::fabs(c - 1.0), params.alpha); });
  }
  if (kind == "tsallis") {
    if (params.alpha == 0.0 || params.alpha == 1.0)
      throw std::invalid_argument("population_measure: bad tsallis alpha");
    return (1.0 - integrate([&](double c) { return std::pow(c, params.alpha); })) /
           (1.0 - params.alpha);
  }
  if (kind == "hellinger") return 1.0 - integrate([](double c) { return std::sqrt(c); });
  if (kind == "mi")
    return integrate([](double c) { return c > 0.0 ? c * std::log(c) : 0.0; });
  if (kind == "micor")
    return micor(integrate([](double c) { return c > 0.0 ? c * std::log(c) : 0.0; }));
  if (kind == "phicor") {
    const double cd2 = integrate([](double c) { return (c - 1.0) * (c - 1.0); });
    return std::sqrt(cd2 / (1.0 + cd2));
  }

  if (kind == "sigma" || kind == "phi2" || kind == "kappa") {
    // corner-lattice CDF from the cell masses, then trapezoid integration
    const std::size_t stride = static_cast<std::size_t>(G) + 1;
    std::vector<double> cdf(stride * stride, 0.0);
    for (int a = 0; a < G; ++a) {
      double row = 0.0;
      for (int b = 0; b < G; ++b) {
        row += density.values[static_cast<std::size_t>(a) * G + b] / cells;
        cdf[static_cast<std::size_t>(a + 1) * stride + (b + 1)] =
            cdf[static_cast<std::size_t>(a) * stride + (b + 1)] + row;
      }
    }
    double abs_sum = 0.0, sq_sum = 0.0, max_dev = 0.0;
    for (int a = 0; a <= G; ++a) {
      const double wa = (a == 0 || a == G) ? 0.5 : 1.0;
      const double u = static_cast<double>(a) / G;
      for (int b = 0; b <= G; ++b) {
        const double wb = (b == 0 || b == G) ? 0.5 : 1.0;
        const double v = static_cast<double>(b) / G;
        const double dev = cdf[static_cast<std::size_t>(a) * stride + b] - u * v;
        abs_sum += wa * wb * std::fabs(dev);
        sq_sum += wa * wb * dev * dev;
        max_dev = std::max(max_dev, std::fabs(dev));
      }
    }
    if (kind == "sigma") return 12.0 * abs_sum / cells;
    if (kind == "phi2") return 90.0 * sq_sum / cells;
    return 4.0 * max_dev;
  }

  throw std::invalid_argument("population_measure: unknown kind " + kind);
}

double mixture_oracle(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("mixture_oracle: p must lie in [0, 1]");
  return p;
}

double normal_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0))
    throw std::invalid_argument("normal_quantile: p must lie in (0, 1)");
  // Acklam's rational approximation with one Halley refinement.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p > 1.0 - plow) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
  const double u = e * std::sqrt(2.0 * kPi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

}  // namespace equidep::synth
