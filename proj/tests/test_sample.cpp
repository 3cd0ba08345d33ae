#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "equidep/random.hpp"
#include "equidep/sample.hpp"

using namespace equidep;

TEST_SUITE_BEGIN("sample");

TEST_CASE("pseudo observations: rank/(n+1)") {
  const Sample s({3.2, 1.1, 5.0}, {10.0, 20.0, 30.0});
  const PseudoSample ps = pseudo_observations(s);
  CHECK(ps.us[0] == doctest::Approx(0.50));
  CHECK(ps.us[1] == doctest::Approx(0.25));
  CHECK(ps.us[2] == doctest::Approx(0.75));
  CHECK(ps.vs[0] == doctest::Approx(0.25));
  CHECK(ps.vs[1] == doctest::Approx(0.50));
  CHECK(ps.vs[2] == doctest::Approx(0.75));
}

TEST_CASE("ties receive average ranks") {
  const Sample s({1.0, 1.0, 2.0}, {1.0, 2.0, 3.0});
  const PseudoSample ps = pseudo_observations(s);
  CHECK(ps.us[0] == doctest::Approx(0.375));
  CHECK(ps.us[1] == doctest::Approx(0.375));
  CHECK(ps.us[2] == doctest::Approx(0.75));
}

TEST_CASE("sorted distinct input keeps identity ordering") {
  const Sample s({1.0, 2.0, 3.0, 4.0}, {5.0, 6.0, 7.0, 8.0});
  const PseudoSample ps = pseudo_observations(s);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(ps.us[i] == doctest::Approx(0.2 * static_cast<double>(i + 1)));
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(Sample({1.0}, {2.0}), std::invalid_argument);
  CHECK_THROWS_AS(Sample({1.0, 2.0}, {2.0}), std::invalid_argument);
  CHECK_THROWS_AS(Sample({1.0, std::nan("")}, {2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("tie-free pseudo observations form the exact lattice {i/(n+1)}") {
  Rng rng(11);
  const std::size_t n = 257;
  std::vector<double> xs(n), ys(n);
  for (auto& v : xs) v = rng.normal();
  for (auto& v : ys) v = rng.normal();
  const PseudoSample ps = pseudo_observations(Sample(xs, ys));
  std::vector<double> sorted_u(ps.us);
  std::sort(sorted_u.begin(), sorted_u.end());
  for (std::size_t i = 0; i < n; ++i)
    CHECK(sorted_u[i] == static_cast<double>(i + 1) / static_cast<double>(n + 1));
}

TEST_CASE("weak equitability: strictly increasing transforms leave pseudo obs bit-identical") {
  Rng rng(5);
  const std::size_t n = 101;
  std::vector<double> xs(n), ys(n);
  for (auto& v : xs) v = 4.0 * rng.uniform() - 2.0;
  for (auto& v : ys) v = rng.normal();
  const PseudoSample base = pseudo_observations(Sample(xs, ys));

  std::vector<double> tx(n);
  for (std::size_t i = 0; i < n; ++i) tx[i] = std::exp(xs[i]);
  const PseudoSample transformed = pseudo_observations(Sample(tx, ys));
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(base.us[i] == transformed.us[i]);
    CHECK(base.vs[i] == transformed.vs[i]);
  }
}

TEST_CASE("empirical copula endpoints and a small hand case") {
  PseudoSample ps;
  ps.us = {1.0 / 3.0, 2.0 / 3.0};
  ps.vs = {1.0 / 3.0, 2.0 / 3.0};
  const EmpiricalCopula ec(ps);
  CHECK(ec.eval(1.0, 1.0) == doctest::Approx(1.0));
  CHECK(ec.eval(0.0, 0.0) == doctest::Approx(0.0));
  CHECK(ec.eval(0.5, 0.5) == doctest::Approx(0.5));
  CHECK_THROWS_AS(ec.eval(-0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(ec.eval(0.5, 1.1), std::invalid_argument);
}

TEST_CASE("empirical copula is monotone in each argument") {
  Rng rng(77);
  const std::size_t n = 60;
  std::vector<double> xs(n), ys(n);
  for (auto& v : xs) v = rng.uniform();
  for (auto& v : ys) v = rng.uniform();
  const EmpiricalCopula ec(pseudo_observations(Sample(xs, ys)));
  for (int trial = 0; trial < 200; ++trial) {
    const double u1 = rng.uniform(), u2 = rng.uniform();
    const double v = rng.uniform();
    const double lo = std::min(u1, u2), hi = std::max(u1, u2);
    CHECK(ec.eval(lo, v) <= ec.eval(hi, v));
    CHECK(ec.eval(v, lo) <= ec.eval(v, hi));
  }
}

TEST_SUITE_END();
