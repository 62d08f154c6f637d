#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ising/correlation_matrix.hpp"
#include "ising/graph.hpp"
#include "ising/ising_model.hpp"

namespace ising {

enum class PropertyKind { connectivity, cycle, clique };

struct Property {
  PropertyKind kind = PropertyKind::connectivity;
  int m = 0;  // clique size, clique only

  static Property connectivity() { return {PropertyKind::connectivity, 0}; }
  static Property cycle() { return {PropertyKind::cycle, 0}; }
  static Property clique(int m) { return {PropertyKind::clique, m}; }
  // True when g has the property.
  bool holds(const Graph& g) const;
  std::string name() const;
};

struct ScreeningConfig {
  double theta = 0.0;
  std::optional<double> Theta;
  double delta = 0.05;
  std::optional<int> s;
  Property property;

  void validate() const;
};

struct TestReport {
  int psi = 0;
  double threshold_used = 0.0;
  double tau = 0.0;
  double min_witness_correlation = 0.0;
  std::vector<Edge> witness;
  // Evaluated sufficient conditions, by name.
  std::vector<std::pair<std::string, bool>> conditions;

  bool condition(const std::string& name) const;
};

// sqrt((4 log d + log(1/delta)) / n).
double tau(int n, int d, double delta);

double universal_T_lower(double theta);

// No-edge correlation ratio for max degree s; s >= 1.
double R_ratio(int s, double Theta);
// Low-temperature no-edge correlation bound.
double Q_upper_lowtemp(int s, double Theta);
// High-temperature bound; requires (s - 1) tanh(Theta) < 1.
double Q_upper_hightemp(int s, double Theta);

// Witness edges chosen from M.
using WitnessFinder = std::function<std::vector<Edge>(const CorrelationMatrix&)>;

WitnessFinder spanning_tree_witness();
WitnessFinder cycle_witness();
WitnessFinder clique_witness(int m);

// Generic screening: psi = 1 iff min over witness edges of M > underline_T - tau.
// Equality gives psi = 0.
TestReport correlation_screening_test(const SampleBatch& batch, const ScreeningConfig& config,
                                      const WitnessFinder& witness_finder, double underline_T);
TestReport correlation_screening_test(const CorrelationMatrix& m, int n, const ScreeningConfig& config,
                                      const WitnessFinder& witness_finder, double underline_T);

TestReport connectivity_test(const SampleBatch& batch, double theta, double delta);
TestReport cycle_test(const SampleBatch& batch, double theta, double Theta, double delta);
// s and Theta, when given, only feed the recorded sufficient conditions.
TestReport clique_size_test(const SampleBatch& batch, double theta, int m, double delta,
                            std::optional<int> s = std::nullopt, std::optional<double> Theta = std::nullopt);

// Same tests from a precomputed correlation matrix of n samples.
TestReport connectivity_test(const CorrelationMatrix& m, int n, double theta, double delta);
TestReport cycle_test(const CorrelationMatrix& m, int n, double theta, double Theta, double delta);
TestReport clique_size_test(const CorrelationMatrix& m, int n, double theta, int m_size, double delta,
                            std::optional<int> s = std::nullopt, std::optional<double> Theta = std::nullopt);

// 1 iff every sample has all spins equal.
int perfect_alignment_test(const SampleBatch& batch);

// Clique threshold (r(m, theta) - 1) / (r(m, theta) + 1).
double clique_T(int m, double theta);

}  // namespace ising
