#include "ising/screening.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ising/numeric.hpp"

namespace ising {

bool Property::holds(const Graph& g) const {
  switch (kind) {
    case PropertyKind::connectivity:
      return is_connected(g);
    case PropertyKind::cycle:
      return !is_forest(g);
    case PropertyKind::clique:
      return has_m_clique(g, m);
  }
  return false;
}

std::string Property::name() const {
  switch (kind) {
    case PropertyKind::connectivity:
      return "connectivity";
    case PropertyKind::cycle:
      return "cycle";
    case PropertyKind::clique:
      return "clique" + std::to_string(m);
  }
  return "";
}

void ScreeningConfig::validate() const {
  if (!(theta > 0.0)) throw std::invalid_argument("ScreeningConfig: theta must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("ScreeningConfig: delta must lie in (0,1)");
  if (Theta && *Theta < theta) throw std::invalid_argument("ScreeningConfig: Theta must be >= theta");
  if (s && *s < 1) throw std::invalid_argument("ScreeningConfig: s must be positive");
  if (property.kind == PropertyKind::clique) {
    if (property.m < 3) throw std::invalid_argument("ScreeningConfig: clique size must be at least 3");
    if (s && property.m > *s + 1) throw std::invalid_argument("ScreeningConfig: clique size exceeds s + 1");
  }
}

bool TestReport::condition(const std::string& name) const {
  for (const auto& [key, value] : conditions) {
    if (key == name) return value;
  }
  throw std::out_of_range("TestReport: no condition named '" + name + "'");
}

double tau(int n, int d, double delta) {
  if (n < 1) throw std::invalid_argument("tau: n must be positive");
  if (d < 2) throw std::invalid_argument("tau: d must be at least 2");
  if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("tau: delta must lie in (0,1]");
  return std::sqrt((4.0 * std::log(static_cast<double>(d)) + std::log(1.0 / delta)) / n);
}

double universal_T_lower(double theta) {
  if (theta < 0.0) throw std::invalid_argument("universal_T_lower: theta must be >= 0");
  return std::tanh(theta);
}

namespace {

double log_add_exp(double a, double b) {
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

double log_R(int s, double Theta) {
  const double log_a = std::log(2.0 * s) - 2.0 * (s - 1) * Theta;
  const double log_num = log_add_exp(log_cosh(2.0 * s * Theta), log_a + log_cosh(2.0 * (s - 1) * Theta));
  const double log_den = log_add_exp(log_a + log_cosh(2.0 * Theta), 0.0);
  return log_num - log_den;
}

}  // namespace

double R_ratio(int s, double Theta) {
  if (s < 1) throw std::invalid_argument("R_ratio: s must be positive");
  return std::exp(log_R(s, Theta));
}

double Q_upper_lowtemp(int s, double Theta) {
  if (s < 1) throw std::invalid_argument("Q_upper_lowtemp: s must be positive");
  if (Theta < 0.0) throw std::invalid_argument("Q_upper_lowtemp: Theta must be >= 0");
  if (s == 1) return 0.0;
  if (s == 2) return 1.0 - 4.0 / (std::cosh(4.0 * Theta) + 3.0);
  // (R - 1) / (R + 1) = tanh(log(R) / 2)
  return std::tanh(log_R(s, Theta) / 2.0);
}

double Q_upper_hightemp(int s, double Theta) {
  if (s < 1) throw std::invalid_argument("Q_upper_hightemp: s must be positive");
  const double t = std::tanh(Theta);
  if (!((s - 1) * t < 1.0)) throw std::domain_error("high-temperature condition fails: (s-1) tanh(Theta) >= 1");
  return s * t * t / (1.0 - (s - 1) * t);
}

double clique_T(int m, double theta) { return curie_weiss_edge_correlation(m, theta); }

WitnessFinder spanning_tree_witness() {
  return [](const CorrelationMatrix& m) { return max_weight_spanning_tree(m).edges(); };
}

WitnessFinder cycle_witness() {
  return [](const CorrelationMatrix& m) { return first_cycle_by_weight(m); };
}

WitnessFinder clique_witness(int m_size) {
  return [m_size](const CorrelationMatrix& m) {
    auto vertices = first_m_clique_by_weight(m, m_size);
    return clique_graph(m.dim(), vertices).edges();
  };
}

namespace {

double smallest_q(const ScreeningConfig& c) {
  double q = Q_upper_lowtemp(*c.s, *c.Theta);
  if ((*c.s - 1) * std::tanh(*c.Theta) < 1.0) q = std::min(q, Q_upper_hightemp(*c.s, *c.Theta));
  return q;
}

}  // namespace

TestReport correlation_screening_test(const CorrelationMatrix& m, int n, const ScreeningConfig& config,
                                      const WitnessFinder& witness_finder, double underline_T) {
  config.validate();
  if (!(underline_T > 0.0 && underline_T <= 1.0)) {
    throw std::invalid_argument("correlation_screening_test: underline_T must lie in (0,1]");
  }
  TestReport report;
  report.tau = tau(n, m.dim(), config.delta);
  report.threshold_used = underline_T;
  report.witness = witness_finder(m);
  double lowest = std::numeric_limits<double>::infinity();
  for (const Edge& e : report.witness) lowest = std::min(lowest, m(e.u, e.v));
  report.min_witness_correlation = lowest;
  report.psi = lowest > underline_T - report.tau ? 1 : 0;
  if (config.s && config.Theta) {
    report.conditions.emplace_back("screening_gap", underline_T - smallest_q(config) > 2.0 * report.tau);
  }
  return report;
}

TestReport correlation_screening_test(const SampleBatch& batch, const ScreeningConfig& config,
                                      const WitnessFinder& witness_finder, double underline_T) {
  return correlation_screening_test(empirical_correlations(batch), batch.n(), config, witness_finder, underline_T);
}

TestReport connectivity_test(const CorrelationMatrix& m, int n, double theta, double delta) {
  ScreeningConfig c;
  c.theta = theta;
  c.delta = delta;
  c.property = Property::connectivity();
  auto report = correlation_screening_test(m, n, c, spanning_tree_witness(), std::tanh(theta));
  report.conditions.emplace_back("connectivity_condition", std::tanh(theta) > 2.0 * report.tau);
  return report;
}

TestReport cycle_test(const CorrelationMatrix& m, int n, double theta, double Theta, double delta) {
  if (m.dim() < 3) throw std::invalid_argument("cycle_test: d must be at least 3");
  ScreeningConfig c;
  c.theta = theta;
  c.Theta = Theta;
  c.delta = delta;
  c.property = Property::cycle();
  auto report = correlation_screening_test(m, n, c, cycle_witness(), std::tanh(theta));
  const double t = std::tanh(Theta);
  report.conditions.emplace_back("cycle_condition", std::tanh(theta) - t * t > 2.0 * report.tau);
  return report;
}

TestReport clique_size_test(const CorrelationMatrix& m, int n, double theta, int m_size, double delta,
                            std::optional<int> s, std::optional<double> Theta) {
  if (m_size < 3) throw std::invalid_argument("clique_size_test: clique size must be at least 3");
  ScreeningConfig c;
  c.theta = theta;
  c.delta = delta;
  c.property = Property::clique(m_size);
  const double T = clique_T(m_size, theta);
  auto report = correlation_screening_test(m, n, c, clique_witness(m_size), T);
  if (s && Theta) {
    report.conditions.emplace_back("clique_lowtemp_condition", T - Q_upper_lowtemp(*s, *Theta) >= 2.0 * report.tau);
    const bool high = (*s - 1) * std::tanh(*Theta) < 1.0;
    report.conditions.emplace_back("clique_hightemp_condition",
                                   high && T - Q_upper_hightemp(*s, *Theta) >= 2.0 * report.tau);
  }
  return report;
}

TestReport connectivity_test(const SampleBatch& batch, double theta, double delta) {
  return connectivity_test(empirical_correlations(batch), batch.n(), theta, delta);
}

TestReport cycle_test(const SampleBatch& batch, double theta, double Theta, double delta) {
  return cycle_test(empirical_correlations(batch), batch.n(), theta, Theta, delta);
}

TestReport clique_size_test(const SampleBatch& batch, double theta, int m, double delta, std::optional<int> s,
                            std::optional<double> Theta) {
  return clique_size_test(empirical_correlations(batch), batch.n(), theta, m, delta, s, Theta);
}

int perfect_alignment_test(const SampleBatch& batch) {
  for (int i = 0; i < batch.n(); ++i) {
    const std::int8_t* x = batch.row(i);
    for (int u = 1; u < batch.d(); ++u) {
      if (x[u] != x[0]) return 0;
    }
  }
  return 1;
}

}  // namespace ising
