#pragma once

#include <cmath>
#include <limits>
#include <vector>

namespace ising {

// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      c_ += (sum_ - t) + x;
    } else {
      c_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + c_; }

 private:
  double sum_ = 0.0;
  double c_ = 0.0;
};

// log(sum exp(terms)); -inf for an empty list.
inline double log_sum_exp(const std::vector<double>& terms) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double t : terms) mx = t > mx ? t : mx;
  if (!std::isfinite(mx)) return mx;
  CompensatedSum s;
  for (double t : terms) s.add(std::exp(t - mx));
  return mx + std::log(s.value());
}

inline double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// log cosh(y) without overflow.
inline double log_cosh(double y) {
  double a = std::abs(y);
  return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

struct GaussHermiteRule {
  std::vector<double> nodes;    // roots of H_n
  std::vector<double> weights;  // for the weight function exp(-x^2)
};

// Gauss-Hermite rule by Newton iteration on the orthonormal recurrence.
GaussHermiteRule gauss_hermite(int n);

}  // namespace ising
