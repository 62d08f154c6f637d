// Command-line front end: sample, test, experiment, bounds, oracle.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"

#include "ising/bounds.hpp"
#include "ising/general_tests.hpp"
#include "ising/graph.hpp"
#include "ising/harness.hpp"
#include "ising/ising_model.hpp"
#include "ising/oracle.hpp"
#include "ising/screening.hpp"

namespace {

using namespace ising;

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return in;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << text;
}

void print_report(const TestReport& r) {
  std::cout << "psi=" << r.psi << "\n";
  std::cout << "tau=" << format_double(r.tau) << "\n";
  std::cout << "threshold=" << format_double(r.threshold_used) << "\n";
  std::cout << "min_witness_correlation=" << format_double(r.min_witness_correlation) << "\n";
  std::cout << "witness=";
  for (std::size_t i = 0; i < r.witness.size(); ++i)
    std::cout << (i ? ";" : "") << r.witness[i].u + 1 << "-" << r.witness[i].v + 1;
  std::cout << "\n";
  for (const auto& [name, ok] : r.conditions) std::cout << name << "=" << (ok ? "true" : "false") << "\n";
}

struct TestArgs {
  std::string kind;
  std::string batch;
  double theta = 0.0;
  std::optional<double> Theta;
  double delta = 0.05;
  int m = 3;
  std::optional<int> s;
};

int run_test(const TestArgs& a) {
  auto in = open_in(a.batch);
  const SampleBatch batch = read_batch(in);
  if (a.kind == "alignment") {
    std::cout << "psi=" << perfect_alignment_test(batch) << "\n";
    return 0;
  }
  if (a.kind == "connectivity") {
    print_report(connectivity_test(batch, a.theta, a.delta));
    return 0;
  }
  if (a.kind == "clique") {
    print_report(clique_size_test(batch, a.theta, a.m, a.delta, a.s, a.Theta));
    return 0;
  }
  if (!a.Theta) throw std::invalid_argument(a.kind + " needs --Theta");
  if (a.kind == "cycle") {
    print_report(cycle_test(batch, a.theta, *a.Theta, a.delta));
    return 0;
  }
  if (a.kind == "fast_cycle") {
    const FastCycleReport r = fast_cycle_test(batch, a.theta, *a.Theta, a.delta);
    std::cout << "psi=" << r.psi << "\n";
    std::cout << "discrepancy=" << format_double(r.discrepancy) << "\n";
    std::cout << "rho=" << format_double(r.rho) << "\n";
    std::cout << "tau=" << format_double(r.tau) << "\n";
    std::cout << "fast_cycle_condition=" << (r.condition ? "true" : "false") << "\n";
    std::cout << "fitted_forest=";
    const auto& wg = r.fitted.model.weighted_graph();
    for (std::size_t i = 0; i < wg.graph().edges().size(); ++i) {
      const Edge& e = wg.graph().edges()[i];
      std::cout << (i ? ";" : "") << e.u + 1 << "-" << e.v + 1 << ":" << format_double(wg.weights()[i]);
    }
    std::cout << "\n";
    return 0;
  }
  throw std::invalid_argument("unknown test " + a.kind);
}

std::string verdict_row(const std::string& name, double lhs, double rhs, bool holds, bool applicable = true) {
  RegimeVerdict v;
  v.bound_name = name;
  v.lhs = lhs;
  v.rhs = rhs;
  v.condition_holds = holds;
  v.applicable = applicable;
  return format_verdict_csv(v) + "\n";
}

std::string run_bounds(const std::string& kind, const BoundInputs& in, double packing_log, int maxdeg) {
  std::string out = "bound_name,lhs,rhs,holds\n";
  auto append = [&](const RegimeVerdict& v) { out += format_verdict_csv(v) + "\n"; };
  if (kind == "connectivity" || kind == "cycle" || kind == "clique") {
    const ExampleKind k =
        kind == "connectivity" ? ExampleKind::connectivity : kind == "cycle" ? ExampleKind::cycle : ExampleKind::clique;
    for (const auto& v : example_bounds(k, in)) append(v);
  } else if (kind == "monotone_ub") {
    const MonotoneUpperBound b = monotone_ub_theta(in.l, in.r, in.n, in.d, in.kappa);
    out += verdict_row("monotone_ub_threshold", in.theta, b.threshold, in.theta >= b.threshold);
    out += verdict_row("monotone_ub_min_theta_l", in.theta, b.min_theta_l, in.theta >= b.min_theta_l);
    out += verdict_row("monotone_ub_min_theta_r", in.theta, b.min_theta_r, in.theta >= b.min_theta_r);
  } else if (kind == "monotone_lb") {
    const double lb = monotone_lb_theta(in.n, in.d, in.m);
    out += verdict_row("monotone_lb", in.theta, lb, in.theta < lb);
  } else if (kind == "generic_lb") {
    const double lb = generic_lb_theta(packing_log, in.n, maxdeg);
    out += verdict_row("generic_lb", in.theta, lb, in.theta < lb);
  } else if (kind == "detection") {
    const DetectionVerdict v = detection_impossibility(in.n, in.d, in.s, in.epsilon);
    append(v.first);
    append(v.second);
  } else if (kind == "antiferro") {
    const AntiferroVerdict v = antiferro_connectivity_ub(in.theta, in.s, in.n, in.d, in.kappa);
    append(v.main);
    append(v.side);
  } else if (kind == "biclique") {
    const BicliqueBound b = biclique_lowtemp_bound(in.l, in.r, in.theta);
    out += verdict_row("biclique_lowtemp", in.theta, b.value, b.conditions_hold);
  } else if (kind == "general") {
    const double T = T_general(in.theta, in.Theta, in.s);
    const double t = tau(in.n, in.d, in.delta);
    out += verdict_row("general_T_vs_2tau", T, 2.0 * t, T >= 2.0 * t);
  } else {
    throw std::invalid_argument("unknown bound family " + kind);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Property testing for Ising models"};
  app.require_subcommand(1);

  // sample
  auto* sample = app.add_subcommand("sample", "Draw a SampleBatch from a weighted edge list");
  std::string graph_path, out_path, sampler = "exact";
  double theta = 0.0;
  int n = 0;
  std::uint64_t seed = 1;
  GibbsOptions gibbs;
  sample->add_option("--graph", graph_path, "Weighted edge list (1-based)")->required();
  sample->add_option("--theta", theta, "Inverse temperature")->required();
  sample->add_option("--n", n, "Number of samples")->required()->check(CLI::PositiveNumber);
  sample->add_option("--seed", seed, "Seed");
  sample->add_option("--out", out_path, "Output file (default stdout)");
  sample->add_option("--sampler", sampler, "exact or gibbs")->check(CLI::IsMember({"exact", "gibbs"}));
  sample->add_option("--burn-in", gibbs.burn_in, "Gibbs burn-in sweeps (negative: 100 d)");
  sample->add_option("--thin", gibbs.thin, "Gibbs sweeps between samples");

  // test
  auto* test = app.add_subcommand("test", "Run one test on a SampleBatch");
  TestArgs targs;
  test->add_option("kind", targs.kind, "connectivity | cycle | clique | fast_cycle | alignment")
      ->required()
      ->check(CLI::IsMember({"connectivity", "cycle", "clique", "fast_cycle", "alignment"}));
  test->add_option("--batch", targs.batch, "SampleBatch file")->required();
  test->add_option("--theta", targs.theta, "Lower edge strength");
  test->add_option("--Theta", targs.Theta, "Upper edge strength");
  test->add_option("--delta", targs.delta, "Level");
  test->add_option("--m", targs.m, "Clique size");
  test->add_option("--s", targs.s, "Degree bound (conditions only)");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Monte Carlo sweep from a JSON config");
  std::string config_path, exp_out;
  bool phase = false;
  experiment->add_option("--config", config_path, "Config JSON")->required();
  experiment->add_option("--out", exp_out, "CSV output (default stdout)");
  experiment->add_flag("--phase", phase, "Emit theta,type1,type2,lb_verdict,ub_verdict only");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Evaluate closed-form bounds as CSV");
  std::string bound_kind;
  BoundInputs in;
  double packing_log = 0.0;
  int maxdeg = 0;
  bounds->add_option("kind", bound_kind,
                     "connectivity | cycle | clique | monotone_ub | monotone_lb | generic_lb | detection | antiferro | "
                     "biclique | general")
      ->required();
  bounds->add_option("--n", in.n);
  bounds->add_option("--d", in.d);
  bounds->add_option("--theta", in.theta);
  bounds->add_option("--Theta", in.Theta);
  bounds->add_option("--s", in.s);
  bounds->add_option("--m", in.m);
  bounds->add_option("--l", in.l);
  bounds->add_option("--r", in.r);
  bounds->add_option("--kappa", in.kappa);
  bounds->add_option("--epsilon", in.epsilon);
  bounds->add_option("--delta", in.delta);
  bounds->add_option("--clique-constant", in.clique_constant);
  bounds->add_option("--packing-log", packing_log, "log of the packing number (generic_lb)");
  bounds->add_option("--maxdeg", maxdeg, "max degree of the null base graph (generic_lb)");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Run brute-force certification suites");
  std::string suite = "all", oracle_out;
  std::uint64_t oracle_seed = 1;
  oracle->add_option("--suite", suite, "chi2 | edge_addition | antiferro | dominance | griffiths | all");
  oracle->add_option("--seed", oracle_seed);
  oracle->add_option("--out", oracle_out, "CSV output (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sample) {
      auto gin = open_in(graph_path);
      const IsingModel model(theta, read_weighted_graph(gin));
      const SampleBatch batch =
          sampler == "exact" ? exact_sample(model, n, seed) : gibbs_sample(model, n, seed, gibbs);
      std::ostringstream os;
      write_batch(os, batch);
      write_text(out_path, os.str());
    } else if (*test) {
      return run_test(targs);
    } else if (*experiment) {
      const ExperimentConfig cfg = load_experiment_config(config_path);
      const ExperimentReport rep = run_experiment(cfg);
      write_text(exp_out, phase ? format_phase_csv(rep) : format_report_csv(rep));
    } else if (*bounds) {
      std::cout << run_bounds(bound_kind, in, packing_log, maxdeg);
    } else if (*oracle) {
      const auto checks = run_oracle_suite(suite, oracle_seed);
      std::string text = format_oracle_csv_header() + "\n";
      bool ok = true;
      for (const auto& c : checks) {
        text += format_oracle_csv(c) + "\n";
        ok = ok && c.passed;
      }
      write_text(oracle_out, text);
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
