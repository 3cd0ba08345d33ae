#include "equidep/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#include "equidep/ccor.hpp"
#include "equidep/random.hpp"

namespace equidep {

namespace detail {

double digamma(double x) {
  // Recurrence into the asymptotic region, then the standard expansion.
  double result = 0.0;
  while (x < 10.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  result += std::log(x) - 0.5 * inv -
            inv2 * (1.0 / 12.0 -
                    inv2 * (1.0 / 120.0 -
                            inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 / 132.0))));
  return result;
}

}  // namespace detail

double pearson_correlation(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

namespace {

// --- Kendall tau-a via merge-sort inversion counting -----------------------

std::uint64_t merge_count(std::vector<double>& vals, std::vector<double>& buf,
                          std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t inv = merge_count(vals, buf, lo, mid) + merge_count(vals, buf, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (vals[j] < vals[i]) {
      inv += mid - i;
      buf[k++] = vals[j++];
    } else {
      buf[k++] = vals[i++];
    }
  }
  while (i < mid) buf[k++] = vals[i++];
  while (j < hi) buf[k++] = vals[j++];
  std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo),
            buf.begin() + static_cast<std::ptrdiff_t>(hi),
            vals.begin() + static_cast<std::ptrdiff_t>(lo));
  return inv;
}

double kendall_tau(const PseudoSample& ps) {
  const std::size_t n = ps.n();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (ps.us[a] != ps.us[b]) return ps.us[a] < ps.us[b];
    return ps.vs[a] < ps.vs[b];
  });

  std::uint64_t tie_x = 0, tie_y = 0, tie_xy = 0;
  {
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j + 1 < n && ps.us[order[j + 1]] == ps.us[order[i]]) ++j;
      const std::uint64_t g = j - i + 1;
      tie_x += g * (g - 1) / 2;
      // within an equal-u run, count pairs tied in v as well
      std::size_t a = i;
      while (a <= j) {
        std::size_t b = a;
        while (b + 1 <= j && ps.vs[order[b + 1]] == ps.vs[order[a]]) ++b;
        const std::uint64_t gg = b - a + 1;
        tie_xy += gg * (gg - 1) / 2;
        a = b + 1;
      }
      i = j + 1;
    }
    std::vector<double> sorted_v(ps.vs);
    std::sort(sorted_v.begin(), sorted_v.end());
    i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j + 1 < n && sorted_v[j + 1] == sorted_v[i]) ++j;
      const std::uint64_t g = j - i + 1;
      tie_y += g * (g - 1) / 2;
      i = j + 1;
    }
  }

  std::vector<double> seq(n), buf(n);
  for (std::size_t i = 0; i < n; ++i) seq[i] = ps.vs[order[i]];
  const std::uint64_t discordant = merge_count(seq, buf, 0, n);

  const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  const std::uint64_t comparable = total - tie_x - tie_y + tie_xy;
  const double concordant = static_cast<double>(comparable) - static_cast<double>(discordant);
  return (concordant - static_cast<double>(discordant)) / static_cast<double>(total);
}

// --- empirical copula on a midpoint lattice --------------------------------

// counts[a * L + b] = #{i : U_i <= (a+0.5)/L, V_i <= (b+0.5)/L}
std::vector<std::uint32_t> lattice_counts(const PseudoSample& ps, int L) {
  const std::size_t n = ps.n();
  std::vector<std::uint32_t> grid(static_cast<std::size_t>(L) * L, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const int a = static_cast<int>(std::ceil(static_cast<double>(L) * ps.us[i] - 0.5));
    const int b = static_cast<int>(std::ceil(static_cast<double>(L) * ps.vs[i] - 0.5));
    if (a >= L || b >= L) continue;  // point lies above the last midpoint
    grid[static_cast<std::size_t>(std::max(0, a)) * L + std::max(0, b)] += 1;
  }
  for (int a = 0; a < L; ++a) {
    std::uint32_t acc = 0;
    for (int b = 0; b < L; ++b) {
      acc += grid[static_cast<std::size_t>(a) * L + b];
      grid[static_cast<std::size_t>(a) * L + b] = acc;
    }
  }
  for (int a = 1; a < L; ++a)
    for (int b = 0; b < L; ++b)
      grid[static_cast<std::size_t>(a) * L + b] += grid[static_cast<std::size_t>(a - 1) * L + b];
  return grid;
}

struct Fenwick {
  std::vector<std::uint32_t> tree;
  explicit Fenwick(std::size_t n) : tree(n + 1, 0) {}
  void add(std::size_t pos) {
    for (std::size_t i = pos + 1; i < tree.size(); i += i & (~i + 1)) tree[i] += 1;
  }
  std::uint32_t prefix(std::size_t count) const {  // sum of first `count` slots
    std::uint32_t s = 0;
    for (std::size_t i = count; i > 0; i -= i & (~i + 1)) s += tree[i];
    return s;
  }
};

// max_i |C_n(U_i, V_i) - U_i V_i| over the data points themselves.
double max_abs_dev_at_points(const PseudoSample& ps) {
  const std::size_t n = ps.n();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (ps.us[a] != ps.us[b]) return ps.us[a] < ps.us[b];
    return ps.vs[a] < ps.vs[b];
  });
  std::vector<double> sorted_v(ps.vs);
  std::sort(sorted_v.begin(), sorted_v.end());

  Fenwick fen(n);
  double best = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && ps.us[order[j + 1]] == ps.us[order[i]]) ++j;
    for (std::size_t k = i; k <= j; ++k) {
      const std::size_t vpos = static_cast<std::size_t>(
          std::upper_bound(sorted_v.begin(), sorted_v.end(), ps.vs[order[k]]) - sorted_v.begin());
      fen.add(vpos - 1);
    }
    for (std::size_t k = i; k <= j; ++k) {
      const std::size_t vcount = static_cast<std::size_t>(
          std::upper_bound(sorted_v.begin(), sorted_v.end(), ps.vs[order[k]]) - sorted_v.begin());
      const double cn = static_cast<double>(fen.prefix(vcount)) / static_cast<double>(n);
      const double dev = std::fabs(cn - ps.us[order[k]] * ps.vs[order[k]]);
      best = std::max(best, dev);
    }
    i = j + 1;
  }
  return best;
}

// --- KSG neighbour machinery ------------------------------------------------

constexpr std::uint64_t kKsgJitterSeed = 0x6A09E667F3BCC909ULL;
constexpr double kKsgJitterAmplitude = 1e-10;

struct BucketGrid {
  int cells;
  double width;
  std::vector<std::uint32_t> start;  // CSR offsets, cells*cells+1
  std::vector<std::uint32_t> items;

  BucketGrid(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    cells = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(n) / 2.0)));
    width = 1.0 / static_cast<double>(cells);
    const std::size_t nc = static_cast<std::size_t>(cells) * cells;
    start.assign(nc + 1, 0);
    items.resize(n);
    std::vector<std::uint32_t> cell_of(n);
    for (std::size_t i = 0; i < n; ++i) {
      const int cx = std::min(cells - 1, std::max(0, static_cast<int>(xs[i] * cells)));
      const int cy = std::min(cells - 1, std::max(0, static_cast<int>(ys[i] * cells)));
      cell_of[i] = static_cast<std::uint32_t>(cx) * cells + cy;
      start[cell_of[i] + 1] += 1;
    }
    for (std::size_t c = 0; c < nc; ++c) start[c + 1] += start[c];
    std::vector<std::uint32_t> cursor(start.begin(), start.end() - 1);
    for (std::size_t i = 0; i < n; ++i) items[cursor[cell_of[i]]++] = static_cast<std::uint32_t>(i);
  }
};

// max-norm distance from point i to its k-th nearest neighbour.
double knn_distance(const BucketGrid& grid, const std::vector<double>& xs,
                    const std::vector<double>& ys, std::size_t i, int k) {
  const int C = grid.cells;
  const int cx = std::min(C - 1, std::max(0, static_cast<int>(xs[i] * C)));
  const int cy = std::min(C - 1, std::max(0, static_cast<int>(ys[i] * C)));

  std::vector<double> heap;  // max-heap of the k best distances
  heap.reserve(static_cast<std::size_t>(k));

  auto consider_cell = [&](int ax, int ay) {
    if (ax < 0 || ay < 0 || ax >= C || ay >= C) return;
    const std::size_t c = static_cast<std::size_t>(ax) * C + ay;
    for (std::uint32_t s = grid.start[c]; s < grid.start[c + 1]; ++s) {
      const std::uint32_t j = grid.items[s];
      if (j == i) continue;
      const double d = std::max(std::fabs(xs[i] - xs[j]), std::fabs(ys[i] - ys[j]));
      if (heap.size() < static_cast<std::size_t>(k)) {
        heap.push_back(d);
        std::push_heap(heap.begin(), heap.end());
      } else if (d < heap.front()) {
        std::pop_heap(heap.begin(), heap.end());
        heap.back() = d;
        std::push_heap(heap.begin(), heap.end());
      }
    }
  };

  for (int r = 0;; ++r) {
    if (r == 0) {
      consider_cell(cx, cy);
    } else {
      for (int ax = cx - r; ax <= cx + r; ++ax) {
        consider_cell(ax, cy - r);
        consider_cell(ax, cy + r);
      }
      for (int ay = cy - r + 1; ay <= cy + r - 1; ++ay) {
        consider_cell(cx - r, ay);
        consider_cell(cx + r, ay);
      }
    }
    // Cells at ring r+1 hold points at distance >= r * width.
    if (heap.size() == static_cast<std::size_t>(k) &&
        heap.front() <= static_cast<double>(r) * grid.width)
      return heap.front();
    if (cx - r < 0 && cy - r < 0 && cx + r >= C && cy + r >= C &&
        heap.size() == static_cast<std::size_t>(k))
      return heap.front();
  }
}

// #{x : |x - center| < radius} with the exact strict comparison. A plain
// binary search on center +- radius rounds the boundary, and the k-th
// neighbour sits exactly on it, so the edges are refined explicitly.
std::size_t open_interval_count(const std::vector<double>& sorted, double center, double radius) {
  const auto pred = [&](double x) { return std::fabs(x - center) < radius; };
  auto lo = std::upper_bound(sorted.begin(), sorted.end(), center - radius);
  while (lo != sorted.begin() && pred(*(lo - 1))) --lo;
  while (lo != sorted.end() && !pred(*lo) && *lo <= center) ++lo;
  auto hi = std::lower_bound(lo, sorted.end(), center + radius);
  while (hi != sorted.end() && pred(*hi)) ++hi;
  while (hi != lo && !pred(*(hi - 1))) --hi;
  return static_cast<std::size_t>(hi - lo);
}

// --- string-kind helpers -----------------------------------------------------

const std::vector<std::string> kMeasureKinds = {
    "pearson",  "spearman", "kendall",  "gini",    "blomqvist", "sigma",
    "phi2",     "kappa",    "dcor",     "ccor",    "mi_ksg",    "mi_ksg3",
    "mi_ksg20", "micor",    "mic",      "phicor",  "hellinger", "cd",
    "tsallis",  "mi_plugin"};

bool needs_density(const std::string& kind) {
  return kind == "phicor" || kind == "hellinger" || kind == "cd" || kind == "tsallis" ||
         kind == "mi_plugin";
}

}  // namespace

MeasureResult concordance(const PseudoSample& pseudo, ConcordanceKind kind) {
  const std::size_t n = pseudo.n();
  if (n < 2) throw std::invalid_argument("concordance: need n >= 2");
  switch (kind) {
    case ConcordanceKind::spearman:
      return {"spearman", pearson_correlation(pseudo.us, pseudo.vs), n, {}};
    case ConcordanceKind::kendall:
      return {"kendall", kendall_tau(pseudo), n, {}};
    case ConcordanceKind::gini: {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        s += std::fabs(pseudo.us[i] + pseudo.vs[i] - 1.0) - std::fabs(pseudo.us[i] - pseudo.vs[i]);
      return {"gini", 2.0 * s / static_cast<double>(n), n, {}};
    }
    case ConcordanceKind::blomqvist: {
      std::size_t count = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (pseudo.us[i] <= 0.5 && pseudo.vs[i] <= 0.5) ++count;
      return {"blomqvist", -1.0 + 4.0 * static_cast<double>(count) / static_cast<double>(n), n, {}};
    }
  }
  throw std::invalid_argument("concordance: unknown kind");
}

MeasureResult cdf_distance(const PseudoSample& pseudo, CdfDistanceKind kind, int lattice) {
  const std::size_t n = pseudo.n();
  if (n < 2) throw std::invalid_argument("cdf_distance: need n >= 2");
  if (lattice < 8) throw std::invalid_argument("cdf_distance: lattice too coarse");
  const int L = lattice;
  const std::vector<std::uint32_t> counts = lattice_counts(pseudo, L);
  const double inv_n = 1.0 / static_cast<double>(n);
  const double cell = 1.0 / (static_cast<double>(L) * L);

  double abs_sum = 0.0, sq_sum = 0.0, max_dev = 0.0;
  for (int a = 0; a < L; ++a) {
    const double u = (a + 0.5) / L;
    for (int b = 0; b < L; ++b) {
      const double v = (b + 0.5) / L;
      const double dev = counts[static_cast<std::size_t>(a) * L + b] * inv_n - u * v;
      abs_sum += std::fabs(dev);
      sq_sum += dev * dev;
      max_dev = std::max(max_dev, std::fabs(dev));
    }
  }
  switch (kind) {
    case CdfDistanceKind::sigma:
      return {"sigma", 12.0 * abs_sum * cell, n, {{"lattice", static_cast<double>(L)}}};
    case CdfDistanceKind::phi2:
      return {"phi2", 90.0 * sq_sum * cell, n, {{"lattice", static_cast<double>(L)}}};
    case CdfDistanceKind::kappa: {
      const double at_points = max_abs_dev_at_points(pseudo);
      return {"kappa", 4.0 * std::max(max_dev, at_points), n,
              {{"lattice", static_cast<double>(L)}}};
    }
  }
  throw std::invalid_argument("cdf_distance: unknown kind");
}

MeasureResult distance_correlation(const PseudoSample& pseudo) {
  const std::size_t n = pseudo.n();
  if (n < 2) throw std::invalid_argument("distance_correlation: need n >= 2");

  auto centered = [n](const std::vector<double>& z) {
    std::vector<double> a(n * n);
    std::vector<double> row_mean(n, 0.0);
    double grand = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double d = std::fabs(z[i] - z[j]);
        a[i * n + j] = d;
        row_mean[i] += d;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      row_mean[i] /= static_cast<double>(n);
      grand += row_mean[i];
    }
    grand /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a[i * n + j] += grand - row_mean[i] - row_mean[j];
    return a;
  };

  const std::vector<double> A = centered(pseudo.us);
  const std::vector<double> B = centered(pseudo.vs);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t k = 0; k < n * n; ++k) {
    sab += A[k] * B[k];
    saa += A[k] * A[k];
    sbb += B[k] * B[k];
  }
  double value = 0.0;
  if (saa > 0.0 && sbb > 0.0) {
    const double r2 = sab / std::sqrt(saa * sbb);
    value = r2 > 0.0 ? std::sqrt(r2) : 0.0;
  }
  return {"dcor", value, n, {}};
}

MeasureResult mi_ksg(const PseudoSample& pseudo, int k) {
  const std::size_t n = pseudo.n();
  if (k < 1 || static_cast<std::size_t>(k) >= n)
    throw std::invalid_argument("mi_ksg: need 1 <= k < n");

  // Shared per-index jitter: swapping the axes permutes nothing, so the
  // estimate is exactly symmetric.
  std::vector<double> xs(pseudo.us), ys(pseudo.vs);
  Rng jitter(kKsgJitterSeed);
  for (std::size_t i = 0; i < n; ++i) {
    const double j = kKsgJitterAmplitude * (jitter.uniform() - 0.5);
    xs[i] += j;
    ys[i] += j;
  }

  BucketGrid grid(xs, ys);
  std::vector<double> sorted_x(xs), sorted_y(ys);
  std::sort(sorted_x.begin(), sorted_x.end());
  std::sort(sorted_y.begin(), sorted_y.end());

  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = knn_distance(grid, xs, ys, i, k);
    // counts exclude the point itself (it always falls in its own interval)
    const std::size_t nx = open_interval_count(sorted_x, xs[i], d) - 1;
    const std::size_t ny = open_interval_count(sorted_y, ys[i], d) - 1;
    acc += detail::digamma(static_cast<double>(nx + 1)) +
           detail::digamma(static_cast<double>(ny + 1));
  }
  const double mi = detail::digamma(static_cast<double>(k)) +
                    detail::digamma(static_cast<double>(n)) - acc / static_cast<double>(n);
  return {"mi_ksg", mi, n, {{"k", static_cast<double>(k)}}};
}

double micor(double mi) {
  const double m = std::max(0.0, mi);
  return std::sqrt(1.0 - std::exp(-2.0 * m));
}

MeasureResult density_functional(const CopulaDensityEstimate& density,
                                 DensityFunctionalKind kind, double alpha) {
  const double cells = static_cast<double>(density.values.size());
  auto integrate = [&](auto&& f) {
    double s = 0.0;
    for (double c : density.values) s += f(c);
    return s / cells;
  };
  switch (kind) {
    case DensityFunctionalKind::copula_distance: {
      if (!(alpha > 0.0)) throw std::invalid_argument("density_functional: cd needs alpha > 0");
      const double v = integrate([&](double c) { return std::pow(std::fabs(c - 1.0), alpha); });
      return {"cd", v, density.n, {{"alpha", alpha}}};
    }
    case DensityFunctionalKind::phicor: {
      const double cd2 = integrate([](double c) { return (c - 1.0) * (c - 1.0); });
      return {"phicor", std::sqrt(cd2 / (1.0 + cd2)), density.n, {}};
    }
    case DensityFunctionalKind::tsallis: {
      if (alpha == 0.0 || alpha == 1.0)
        throw std::invalid_argument("density_functional: tsallis needs alpha outside {0,1}");
      const double v = integrate([&](double c) { return std::pow(c, alpha); });
      return {"tsallis", (1.0 - v) / (1.0 - alpha), density.n, {{"alpha", alpha}}};
    }
    case DensityFunctionalKind::hellinger: {
      const double v = integrate([](double c) { return std::sqrt(c); });
      return {"hellinger", 1.0 - v, density.n, {}};
    }
    case DensityFunctionalKind::mi_plugin: {
      const double v = integrate([](double c) { return c > 0.0 ? c * std::log(c) : 0.0; });
      return {"mi_plugin", v, density.n, {}};
    }
  }
  throw std::invalid_argument("density_functional: unknown kind");
}

MeasureResult grid_mic(const PseudoSample& pseudo, double exponent) {
  const std::size_t n = pseudo.n();
  if (n < 4) throw std::invalid_argument("grid_mic: need n >= 4");

  std::vector<std::size_t> xorder(n), yorder(n);
  std::iota(xorder.begin(), xorder.end(), 0);
  yorder = xorder;
  std::sort(xorder.begin(), xorder.end(), [&](std::size_t a, std::size_t b) {
    if (pseudo.us[a] != pseudo.us[b]) return pseudo.us[a] < pseudo.us[b];
    return pseudo.vs[a] < pseudo.vs[b];
  });
  std::sort(yorder.begin(), yorder.end(), [&](std::size_t a, std::size_t b) {
    if (pseudo.vs[a] != pseudo.vs[b]) return pseudo.vs[a] < pseudo.vs[b];
    return pseudo.us[a] < pseudo.us[b];
  });
  std::vector<std::uint32_t> xrank(n), yrank(n);
  for (std::size_t r = 0; r < n; ++r) {
    xrank[xorder[r]] = static_cast<std::uint32_t>(r);
    yrank[yorder[r]] = static_cast<std::uint32_t>(r);
  }

  // The (2,2) grid is always admitted so the statistic exists for tiny n.
  const double budget = std::max(4.0, std::pow(static_cast<double>(n), exponent));
  double best = 0.0;
  std::vector<std::uint32_t> cellc, xc, yc;
  for (std::size_t bx = 2; static_cast<double>(bx * 2) <= budget; ++bx) {
    const std::size_t by_max =
        std::max<std::size_t>(2, static_cast<std::size_t>(budget / static_cast<double>(bx)));
    for (std::size_t by = 2; by <= by_max; ++by) {
      if (static_cast<double>(bx * by) > budget && !(bx == 2 && by == 2)) continue;
      cellc.assign(bx * by, 0);
      xc.assign(bx, 0);
      yc.assign(by, 0);
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t cx = static_cast<std::size_t>(xrank[i]) * bx / n;
        const std::size_t cy = static_cast<std::size_t>(yrank[i]) * by / n;
        cellc[cx * by + cy] += 1;
        xc[cx] += 1;
        yc[cy] += 1;
      }
      double mi = 0.0;
      for (std::size_t cx = 0; cx < bx; ++cx) {
        for (std::size_t cy = 0; cy < by; ++cy) {
          const std::uint32_t c = cellc[cx * by + cy];
          if (c == 0) continue;
          const double p = static_cast<double>(c) / static_cast<double>(n);
          const double px = static_cast<double>(xc[cx]) / static_cast<double>(n);
          const double py = static_cast<double>(yc[cy]) / static_cast<double>(n);
          mi += p * std::log(p / (px * py));
        }
      }
      const double norm = std::log(static_cast<double>(std::min(bx, by)));
      if (norm > 0.0) best = std::max(best, std::min(1.0, mi / norm));
    }
  }
  return {"mic", best, n, {{"exponent", exponent}}};
}

const std::vector<std::string>& measure_kinds() { return kMeasureKinds; }

bool is_measure_kind(const std::string& kind) {
  return std::find(kMeasureKinds.begin(), kMeasureKinds.end(), kind) != kMeasureKinds.end();
}

std::vector<MeasureResult> compute_measures(const std::vector<std::string>& kinds,
                                            const Sample& sample, const MeasureParams& params) {
  for (const auto& k : kinds) {
    if (!is_measure_kind(k)) throw std::invalid_argument("unknown measure kind: " + k);
  }
  const PseudoSample pseudo = pseudo_observations(sample);

  bool want_density = false;
  for (const auto& k : kinds) want_density = want_density || needs_density(k);
  CopulaDensityEstimate density{{}, 0, Bandwidth(0.5), 0};
  if (want_density) {
    const Bandwidth h = default_bandwidth(sample.n());
    density = estimate_copula_density(pseudo, h, default_grid_cells(h));
  }

  std::vector<MeasureResult> out;
  out.reserve(kinds.size());
  for (const auto& kind : kinds) {
    if (kind == "pearson") {
      out.push_back({"pearson", pearson_correlation(sample.xs, sample.ys), sample.n(), {}});
    } else if (kind == "spearman") {
      out.push_back(concordance(pseudo, ConcordanceKind::spearman));
    } else if (kind == "kendall") {
      out.push_back(concordance(pseudo, ConcordanceKind::kendall));
    } else if (kind == "gini") {
      out.push_back(concordance(pseudo, ConcordanceKind::gini));
    } else if (kind == "blomqvist") {
      out.push_back(concordance(pseudo, ConcordanceKind::blomqvist));
    } else if (kind == "sigma") {
      out.push_back(cdf_distance(pseudo, CdfDistanceKind::sigma, params.cdf_lattice));
    } else if (kind == "phi2") {
      out.push_back(cdf_distance(pseudo, CdfDistanceKind::phi2, params.cdf_lattice));
    } else if (kind == "kappa") {
      out.push_back(cdf_distance(pseudo, CdfDistanceKind::kappa, params.cdf_lattice));
    } else if (kind == "dcor") {
      out.push_back(distance_correlation(pseudo));
    } else if (kind == "ccor") {
      const Bandwidth h = default_bandwidth(sample.n());
      const CcorResult r = ccor_from_pseudo(pseudo, h, default_grid_cells(h));
      out.push_back({"ccor", r.corrected, sample.n(), {{"h", h.value()}, {"raw", r.raw}}});
    } else if (kind == "mi_ksg") {
      out.push_back(mi_ksg(pseudo, params.ksg_k));
    } else if (kind == "mi_ksg3") {
      MeasureResult r = mi_ksg(pseudo, 3);
      r.kind = "mi_ksg3";
      out.push_back(std::move(r));
    } else if (kind == "mi_ksg20") {
      MeasureResult r = mi_ksg(pseudo, 20);
      r.kind = "mi_ksg20";
      out.push_back(std::move(r));
    } else if (kind == "micor") {
      const MeasureResult r = mi_ksg(pseudo, params.ksg_k);
      out.push_back(
          {"micor", micor(r.value), sample.n(), {{"k", static_cast<double>(params.ksg_k)}}});
    } else if (kind == "mic") {
      out.push_back(grid_mic(pseudo, params.mic_exponent));
    } else if (kind == "phicor") {
      out.push_back(density_functional(density, DensityFunctionalKind::phicor));
    } else if (kind == "hellinger") {
      out.push_back(density_functional(density, DensityFunctionalKind::hellinger));
    } else if (kind == "cd") {
      out.push_back(density_functional(density, DensityFunctionalKind::copula_distance,
                                       params.alpha));
    } else if (kind == "tsallis") {
      out.push_back(density_functional(density, DensityFunctionalKind::tsallis, params.alpha));
    } else if (kind == "mi_plugin") {
      out.push_back(density_functional(density, DensityFunctionalKind::mi_plugin));
    }
  }
  return out;
}

MeasureResult compute_measure(const std::string& kind, const Sample& sample,
                              const MeasureParams& params) {
  return compute_measures({kind}, sample, params).front();
}

}  // namespace equidep
