#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ising/correlation_matrix.hpp"
#include "ising/graph.hpp"

namespace ising {

inline constexpr int kMaxExactDim = 25;
inline constexpr int kMaxExactSampleDim = 20;

// Zero-field Ising model; the coupling on edge (u,v) is theta * w_uv.
class IsingModel {
 public:
  IsingModel(double theta, WeightedGraph wg);
  IsingModel(double theta, Graph g) : IsingModel(theta, WeightedGraph(std::move(g))) {}

  double theta() const { return theta_; }
  const WeightedGraph& weighted_graph() const { return wg_; }
  const Graph& graph() const { return wg_.graph(); }
  int dim() const { return wg_.num_vertices(); }
  // theta * w for every edge, aligned with graph().edges().
  std::vector<double> couplings() const;

  bool is_simple_ferromagnet() const { return wg_.is_unit(); }
  bool is_ferromagnet() const { return wg_.is_ferromagnetic(); }
  // 1 <= |w| <= Theta / theta for every edge.
  bool within_general_bounds(double Theta) const;

 private:
  double theta_;
  WeightedGraph wg_;
};

enum class SamplerTag { exact, gibbs };

std::string to_string(SamplerTag tag);
SamplerTag sampler_from_string(const std::string& s);

// n x d spins in {-1, +1}, row-major.
class SampleBatch {
 public:
  SampleBatch(int n, int d, std::vector<std::int8_t> spins, std::uint64_t seed, SamplerTag tag);

  int n() const { return n_; }
  int d() const { return d_; }
  std::int8_t operator()(int i, int u) const { return spins_[static_cast<std::size_t>(i) * d_ + u]; }
  const std::int8_t* row(int i) const { return spins_.data() + static_cast<std::size_t>(i) * d_; }
  const std::vector<std::int8_t>& spins() const { return spins_; }
  std::uint64_t seed() const { return seed_; }
  SamplerTag sampler() const { return tag_; }

 private:
  int n_;
  int d_;
  std::vector<std::int8_t> spins_;
  std::uint64_t seed_;
  SamplerTag tag_;
};

// Header "n=<int> d=<int> seed=<u64> sampler=<tag>", then one row per sample.
void write_batch(std::ostream& os, const SampleBatch& batch);
SampleBatch read_batch(std::istream& is);

double log_weight(const IsingModel& model, const std::vector<int>& x);

// log Z by enumeration; d <= 25.
double log_partition_function(const IsingModel& model);

double exact_pair_correlation(const IsingModel& model, int u, int v);

CorrelationMatrix exact_correlation_matrix(const IsingModel& model);

// Probabilities of all 2^d states indexed by bitmask (bit u set means x_u = -1).
std::vector<double> exact_state_probabilities(const IsingModel& model);

// Product of tanh(theta * w_i).
double path_correlation_formula(double theta, const std::vector<double>& weights);

// log Z of the uniform-theta m-clique from magnetization sums.
double curie_weiss_log_partition(int m, double theta);

// Edge correlation of the m-clique from magnetization sums.
double curie_weiss_correlation_sums(int m, double theta);

// r(m, theta) by Gauss-Hermite quadrature with `nodes` points, and the
// correlation (r - 1) / (r + 1).
double curie_weiss_ratio_quadrature(int m, double theta, int nodes = 64);
double curie_weiss_correlation_quadrature(int m, double theta, int nodes = 64);

// Both evaluations; throws std::runtime_error if they differ by more than 1e-8.
double curie_weiss_edge_correlation(int m, double theta);

struct GibbsOptions {
  int burn_in = -1;  // sweeps; negative selects 100 * d
  int thin = 10;     // sweeps between retained samples
  bool independent_chains = false;
};

SampleBatch gibbs_sample(const IsingModel& model, int n, std::uint64_t seed, const GibbsOptions& opts = {});

// Inverse-CDF draws over the enumerated states; d <= 20.
SampleBatch exact_sample(const IsingModel& model, int n, std::uint64_t seed);

// Precomputed sampler for repeated exact draws from one model.
class ExactSampler {
 public:
  explicit ExactSampler(const IsingModel& model);
  SampleBatch sample(int n, std::uint64_t seed) const;
  int dim() const { return d_; }

 private:
  int d_;
  std::vector<double> cdf_;
};

CorrelationMatrix empirical_correlations(const SampleBatch& batch);

}  // namespace ising
