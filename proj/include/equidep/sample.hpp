#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace equidep {

// Paired raw observations. Missing values must be filtered by the caller
// before construction; NaN is rejected.
struct Sample {
  std::vector<double> xs;
  std::vector<double> ys;

  Sample(std::vector<double> xs_in, std::vector<double> ys_in);

  std::size_t n() const { return xs.size(); }
};

// Average ranks (midranks) in 1..n. Tied values share the mean of the rank
// positions they occupy.
std::vector<double> average_ranks(std::span<const double> values);

// Rank-transformed observations on the open unit square: U_i = R_i / (n+1).
struct PseudoSample {
  std::vector<double> us;
  std::vector<double> vs;

  std::size_t n() const { return us.size(); }
};

PseudoSample pseudo_observations(const Sample& sample);

// Empirical copula C_n(u,v) = #{i : U_i <= u, V_i <= v} / n.
class EmpiricalCopula {
 public:
  explicit EmpiricalCopula(PseudoSample pseudo);

  // u, v must lie in [0, 1].
  double eval(double u, double v) const;

  const PseudoSample& pseudo() const { return pseudo_; }

 private:
  PseudoSample pseudo_;
};

}  // namespace equidep
