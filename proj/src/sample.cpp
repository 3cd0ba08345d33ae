#include "equidep/sample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace equidep {

Sample::Sample(std::vector<double> xs_in, std::vector<double> ys_in)
    : xs(std::move(xs_in)), ys(std::move(ys_in)) {
  if (xs.size() != ys.size()) throw std::invalid_argument("Sample: xs and ys lengths differ");
  if (xs.size() < 2) throw std::invalid_argument("Sample: need at least 2 observations");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::isnan(xs[i]) || std::isnan(ys[i]))
      throw std::invalid_argument("Sample: NaN values are not allowed");
  }
}

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double shared = 0.5 * static_cast<double>(i + 1 + j + 1);
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

PseudoSample pseudo_observations(const Sample& sample) {
  const std::size_t n = sample.n();
  if (n < 2) throw std::invalid_argument("pseudo_observations: need at least 2 observations");

  const std::vector<double> rx = average_ranks(sample.xs);
  const std::vector<double> ry = average_ranks(sample.ys);

  PseudoSample out;
  out.us.resize(n);
  out.vs.resize(n);
  const double denom = static_cast<double>(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    out.us[i] = rx[i] / denom;
    out.vs[i] = ry[i] / denom;
  }
  return out;
}

EmpiricalCopula::EmpiricalCopula(PseudoSample pseudo) : pseudo_(std::move(pseudo)) {
  if (pseudo_.us.size() != pseudo_.vs.size() || pseudo_.us.empty())
    throw std::invalid_argument("EmpiricalCopula: malformed pseudo-sample");
}

double EmpiricalCopula::eval(double u, double v) const {
  if (u < 0.0 || u > 1.0 || v < 0.0 || v > 1.0)
    throw std::invalid_argument("EmpiricalCopula::eval: arguments must lie in [0,1]");
  std::size_t count = 0;
  const std::size_t n = pseudo_.n();
  for (std::size_t i = 0; i < n; ++i) {
    if (pseudo_.us[i] <= u && pseudo_.vs[i] <= v) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(n);
}

}  // namespace equidep
