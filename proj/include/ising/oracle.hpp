#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ising/graph.hpp"
#include "ising/ising_model.hpp"

namespace ising {

inline constexpr int kMaxOracleDim = 20;

// Sum over all 2^d states of p^2 / q, minus 1. Both models on d <= 20 spins.
double chi2_exact(const IsingModel& p, const IsingModel& q);

// factor^n - 1: the divergence of n-fold products for one diagonal term.
double chi2_product(double factor, int n);

// E_0[(P_a / P_0)(P_b / P_0)] by enumeration; all three models share d.
double likelihood_ratio_moment(const IsingModel& null_model, const IsingModel& a, const IsingModel& b);

struct EdgeAdditionFactor {
  double enumerated = 0.0;  // E_0[(P_j / P_0)(P_k / P_0)]
  double identity = 0.0;    // 1 + (E_j - E_0) / (E_0 + coth theta), pair of e_k
  double bound = 0.0;       // 1 + tanh(theta) (E_j - E_0)
  double e_j = 0.0;         // E_j X_{u_k} X_{v_k}
  double e_0 = 0.0;         // E_0 X_{u_k} X_{v_k}
};

// The null is a ferromagnet; P_j and P_k add e_j and e_k with unit weight.
// Both edges must be absent from the null graph; d <= 20.
EdgeAdditionFactor edge_addition_factor(const IsingModel& null_model, Edge e_j, Edge e_k);

struct MixtureChi2 {
  double exact = 0.0;             // (1/m^2) sum_{j,k} F_jk^n - 1, F by enumeration
  double diagonal_formula = 0.0;  // (1/m^2) sum_j F_jj^n + (m - 1)/m - 1
  double tanh_formula = 0.0;      // the same with F_jj replaced by 1 + tanh(theta)(E_j - E_0)
  double max_offdiagonal_gap = 0.0;  // max_{j != k} |F_jk - 1|
};

// chi^2 between the uniform mixture of n-fold alternatives (null plus one
// added edge each) and the n-fold null.
MixtureChi2 mixture_chi2(const IsingModel& null_model, const std::vector<Edge>& added, int n);

// The same divergence by summing over the whole product space; d * n <= 20.
double mixture_chi2_product_space(const IsingModel& null_model, const std::vector<Edge>& added, int n);

// Antiferromagnetic clique pairs. T(theta, I) = Z_{C_s(V) + C_s(V')} / 2^{2s - |I|}
// with |I| = overlap, computed from binomial magnetization sums.
struct CliquePairSpec {
  int s = 0;
  int overlap = 0;
  double theta = 0.0;
  void validate() const;
};

inline constexpr int kMaxCliquePairUnion = 26;
inline constexpr int kMaxCliquePairEnumeration = 16;

double antiferro_log_T(const CliquePairSpec& spec);
double antiferro_T(const CliquePairSpec& spec);
// T by summing over all 2^{2s - overlap} spin states; union <= 16.
double antiferro_T_enumerated(const CliquePairSpec& spec);
// T(theta, overlap) / T(theta, 0).
double antiferro_ratio(const CliquePairSpec& spec);
// The theta -> infinity limit of the ratio (separate even and odd s forms).
double antiferro_ratio_limit(int s, int overlap);

struct MonotonicityReport {
  bool nondecreasing = true;
  double max_violation = 0.0;  // largest ratio(theta_i) - ratio(theta_{i+1})
  double max_ratio = 0.0;
  bool below_cap = true;       // every ratio <= sqrt(2s)
};

// Ratio along an ascending grid, tolerance 1e-10.
MonotonicityReport ratio_monotonicity_check(int s, int overlap, const std::vector<double>& theta_grid);

struct DominanceSpec {
  int k = 0;
  int h = 0;
  double theta = 0.0;
  double theta_prime = 0.0;
  std::vector<double> t_grid;
  void validate() const;
};

struct DominanceReport {
  bool holds = true;
  double max_violation = 0.0;  // max over t of P(left < t) - P(right < t)
  double worst_t = 0.0;
  int points_checked = 0;
};

// P(theta (S_Y + h + 2)^2 + theta' (S_X + h)^2 < t)
//   <= P(theta' (S_Y + h + 2)^2 + theta (S_X + h)^2 < t)
// for S_X, S_Y sums of k Rademachers, at every grid t and every breakpoint of
// both quadratic forms plus midpoints and the ends. Tolerance 1e-12.
DominanceReport stochastic_dominance_check(const DominanceSpec& spec);

struct GriffithsReport {
  int instances = 0;
  int edges_checked = 0;
  int violations = 0;
  double max_increase = 0.0;  // largest E_{G - e} X_u X_v - E_G X_u X_v
};

// Deletes each edge of a ferromagnet in turn and compares all pair
// correlations; an increase beyond 1e-12 is a violation. d <= 8.
GriffithsReport griffiths_edge_prune_check(const IsingModel& model);

// Random ferromagnets with 2 <= d <= 8.
GriffithsReport griffiths_sweep(int trials, std::uint64_t seed);

struct EdgeAdditionSweep {
  int instances = 0;
  double max_identity_gap = 0.0;  // |enumerated - identity|
  int bound_violations = 0;       // enumerated > bound + 1e-12
};

// Random ferromagnetic bases on 3..7 vertices with random absent e_j, e_k.
EdgeAdditionSweep edge_addition_sweep(int trials, std::uint64_t seed);

struct OracleCheck {
  std::string suite;
  std::string name;
  bool passed = false;
  double margin = 0.0;  // worst-case slack; negative when failed
  std::string detail;
};

// Named suites: chi2, edge_addition, antiferro, dominance, griffiths, all.
std::vector<OracleCheck> run_oracle_suite(const std::string& suite, std::uint64_t seed = 1);

// "suite,name,status,margin,detail"
std::string format_oracle_csv_header();
std::string format_oracle_csv(const OracleCheck& check);

}  // namespace ising
