#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ising/graph.hpp"
#include "ising/ising_model.hpp"

namespace ising {

// Null/alternative pair generator. Weights are in units of theta.
struct FamilySpec {
  // two_cycles_with_rungs | repeated_motif | turan | clique_chain | path_chord | files
  std::string kind;
  int rung = 0;
  // repeated_motif: motif is "biclique" (l, r) or "clique_minus_edge" (m)
  std::string motif = "biclique";
  int l = 1;
  int r = 2;
  int m = 4;
  int block = 0;
  std::optional<Edge> edge;  // motif coordinates; defaults to the motif's designated non-edge
  std::vector<double> weights;  // applied cyclically to the null edges; empty means all 1
  double extra_weight = 1.0;
  int s = 4;  // turan and clique_chain
  Edge chord{0, 2};
  std::string null_path;  // files
  std::string alternative_path;
};

struct FamilyInstance {
  WeightedGraph null_graph;
  WeightedGraph alternative_graph;
};

FamilyInstance build_family(const FamilySpec& spec, int d);

enum class ModelClass { simple_ferro, ferro, general };

struct TestSpec {
  // connectivity | cycle | clique | fast_cycle | exhaustive
  std::string kind;
  double delta = 0.05;
  int m = 4;                  // clique size
  std::optional<int> s;       // degree bound for conditions; default max degree of the family
  std::optional<double> rho;  // exhaustive only; default tau
  std::string property = "cycle";  // exhaustive only: null constraint
  std::vector<double> weight_levels;
};

struct SamplerSpec {
  SamplerTag tag = SamplerTag::exact;
  GibbsOptions gibbs;
};

struct SweepSpec {
  std::vector<int> d;
  std::vector<int> n;
  std::vector<double> theta;
  std::vector<double> Theta;  // empty means Theta = theta
};

struct ExperimentConfig {
  FamilySpec family;
  ModelClass model_class = ModelClass::simple_ferro;
  TestSpec test;
  SweepSpec sweep;
  int trials = 100;
  std::uint64_t master_seed = 1;
  SamplerSpec sampler;

  void validate() const;
};

// Throws std::invalid_argument on malformed JSON or invalid values.
ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& path);

struct WilsonInterval {
  double low = 0.0;
  double high = 0.0;
};

WilsonInterval wilson_interval(int successes, int trials, double z = 1.959963984540054);

struct GridPointResult {
  int d = 0;
  int n = 0;
  double theta = 0.0;
  double Theta = 0.0;
  int trials = 0;
  int type1_errors = 0;
  int type2_errors = 0;
  double type1_rate = 0.0;
  double type2_rate = 0.0;
  WilsonInterval type1_ci;
  WilsonInterval type2_ci;
  std::vector<std::pair<std::string, bool>> conditions;
  std::string lb_verdict;  // impossible | open | na
  std::string ub_verdict;
};

struct ExperimentReport {
  std::vector<GridPointResult> points;
};

// Grid order: d, n, theta, Theta (last fastest). Per-trial seed is
// derive_seed(master_seed, {grid_index, side, trial}), side 0 = null.
ExperimentReport run_experiment(const ExperimentConfig& config);

// One hypothesis test on one batch; returns psi and fills the conditions.
int run_configured_test(const TestSpec& test, const SampleBatch& batch, double theta, double Theta, int s,
                        std::vector<std::pair<std::string, bool>>* conditions = nullptr);

// Columns: d,n,theta,Theta,trials,type1_rate,type1_ci_low,type1_ci_high,
// type2_rate,type2_ci_low,type2_ci_high,error_sum,conditions,lb_verdict,ub_verdict
std::string format_report_csv(const ExperimentReport& report);

// Columns: theta,type1,type2,lb_verdict,ub_verdict
std::string format_phase_csv(const ExperimentReport& report);
std::string phase_sweep(const ExperimentConfig& config);

}  // namespace ising
