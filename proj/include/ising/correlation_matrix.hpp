#pragma once

#include <cstddef>
#include <vector>

namespace ising {

// Symmetric d x d matrix of pair correlations with unit diagonal.
class CorrelationMatrix {
 public:
  CorrelationMatrix() = default;
  explicit CorrelationMatrix(int d);
  // Row-major d*d entries; must be symmetric.
  CorrelationMatrix(int d, std::vector<double> entries);

  static CorrelationMatrix identity(int d) { return CorrelationMatrix(d); }

  int dim() const { return d_; }
  double operator()(int u, int v) const { return a_[index(u, v)]; }
  // Sets both (u,v) and (v,u).
  void set(int u, int v, double value);
  const std::vector<double>& data() const { return a_; }

  // Largest |a_uv - b_uv| over u < v.
  static double max_abs_difference(const CorrelationMatrix& a, const CorrelationMatrix& b);

 private:
  std::size_t index(int u, int v) const {
    return static_cast<std::size_t>(u) * static_cast<std::size_t>(d_) + static_cast<std::size_t>(v);
  }

  int d_ = 0;
  std::vector<double> a_;
};

}  // namespace ising
