#include "ising/correlation_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ising {

CorrelationMatrix::CorrelationMatrix(int d) : d_(d) {
  if (d < 0) throw std::invalid_argument("CorrelationMatrix: negative dimension");
  a_.assign(static_cast<std::size_t>(d) * static_cast<std::size_t>(d), 0.0);
  for (int i = 0; i < d; ++i) a_[index(i, i)] = 1.0;
}

CorrelationMatrix::CorrelationMatrix(int d, std::vector<double> entries) : d_(d), a_(std::move(entries)) {
  if (d < 0 || a_.size() != static_cast<std::size_t>(d) * static_cast<std::size_t>(d)) {
    throw std::invalid_argument("CorrelationMatrix: entry count does not match d*d");
  }
  for (int u = 0; u < d; ++u) {
    for (int v = u + 1; v < d; ++v) {
      if (a_[index(u, v)] != a_[index(v, u)]) {
        throw std::invalid_argument("CorrelationMatrix: matrix is not symmetric");
      }
    }
  }
}

void CorrelationMatrix::set(int u, int v, double value) {
  a_[index(u, v)] = value;
  a_[index(v, u)] = value;
}

double CorrelationMatrix::max_abs_difference(const CorrelationMatrix& a, const CorrelationMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("CorrelationMatrix: dimension mismatch");
  double worst = 0.0;
  for (int u = 0; u < a.dim(); ++u) {
    for (int v = u + 1; v < a.dim(); ++v) worst = std::max(worst, std::abs(a(u, v) - b(u, v)));
  }
  return worst;
}

}  // namespace ising
