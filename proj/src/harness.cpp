#include "ising/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "json.hpp"

#include "ising/bounds.hpp"
#include "ising/general_tests.hpp"
#include "ising/parallel.hpp"
#include "ising/rng.hpp"
#include "ising/screening.hpp"

namespace ising {

namespace {

using nlohmann::json;

WeightedGraph weighted_cyclic(const Graph& g, const std::vector<double>& weights) {
  if (weights.empty()) return WeightedGraph(g);
  std::vector<double> w;
  w.reserve(g.edges().size());
  for (std::size_t i = 0; i < g.edges().size(); ++i) w.push_back(weights[i % weights.size()]);
  return WeightedGraph(g, std::move(w));
}

WeightedGraph with_weighted_edge(const WeightedGraph& wg, Edge e, double weight) {
  e = make_edge(e.u, e.v);
  if (wg.graph().has_edge(e.u, e.v)) throw std::invalid_argument("family: the alternative edge is already in the null graph");
  Graph g = wg.graph().with_edge(e);
  std::vector<double> w;
  for (const Edge& f : g.edges()) w.push_back(f == e ? weight : wg.weight(f.u, f.v));
  return WeightedGraph(std::move(g), std::move(w));
}

WeightedGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open graph file: " + path);
  return read_weighted_graph(in);
}

Property parse_property(const std::string& name, int m) {
  if (name == "connectivity") return Property::connectivity();
  if (name == "cycle") return Property::cycle();
  if (name == "clique") return Property::clique(m);
  throw std::invalid_argument("unknown property: " + name);
}

ExampleKind example_kind(const TestSpec& test) {
  std::string p = test.kind;
  if (p == "exhaustive") p = test.property;
  if (p == "connectivity") return ExampleKind::connectivity;
  if (p == "clique") return ExampleKind::clique;
  return ExampleKind::cycle;
}

std::string verdict_of(const std::vector<RegimeVerdict>& vs, const std::string& name) {
  for (const auto& v : vs) {
    if (v.bound_name != name) continue;
    if (!v.applicable) return "na";
    return v.condition_holds ? "impossible" : "open";
  }
  return "na";
}

std::pair<std::string, std::string> bound_verdicts(const TestSpec& test, int d, int n, double theta, double Theta,
                                                   int s) {
  BoundInputs in;
  in.n = n;
  in.d = d;
  in.theta = theta;
  in.Theta = Theta;
  in.s = s;
  in.m = test.m;
  const ExampleKind kind = example_kind(test);
  std::vector<RegimeVerdict> vs;
  try {
    vs = example_bounds(kind, in);
  } catch (const std::exception&) {
    return {"na", "na"};
  }
  switch (kind) {
    case ExampleKind::connectivity:
      return {verdict_of(vs, "connectivity_lower"), "na"};
    case ExampleKind::cycle:
      return {verdict_of(vs, "cycle_lower"), verdict_of(vs, "cycle_upper")};
    case ExampleKind::clique:
      return {verdict_of(vs, "clique_lower"), verdict_of(vs, "clique_upper")};
  }
  return {"na", "na"};
}

template <typename T>
std::vector<T> json_list(const json& j, const char* key) {
  if (!j.contains(key)) return {};
  const json& v = j.at(key);
  if (v.is_array()) return v.get<std::vector<T>>();
  return {v.get<T>()};
}

Edge json_edge(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("edge must be a two-element array");
  return make_edge(j[0].get<int>(), j[1].get<int>());
}

}  // namespace

FamilyInstance build_family(const FamilySpec& spec, int d) {
  FamilyInstance out;
  if (spec.kind == "two_cycles_with_rungs") {
    const RungConstruction rc = two_cycles_with_rungs(d);
    if (spec.rung < 0 || spec.rung >= static_cast<int>(rc.rungs.size()))
      throw std::invalid_argument("family: rung index out of range");
    out.null_graph = weighted_cyclic(rc.base, spec.weights);
    out.alternative_graph = with_weighted_edge(out.null_graph, rc.rungs[spec.rung], spec.extra_weight);
  } else if (spec.kind == "repeated_motif" || spec.kind == "turan") {
    Graph h0;
    Edge missing;
    if (spec.kind == "turan") {
      const TuranConstruction tc = turan_h0(spec.s, spec.m);
      h0 = tc.h0;
      missing = tc.designated;
    } else if (spec.motif == "biclique") {
      if (spec.r < 2) throw std::invalid_argument("family: biclique motif needs r >= 2");
      h0 = biclique(spec.l, spec.r);
      missing = {spec.l, spec.l + 1};
    } else if (spec.motif == "clique_minus_edge") {
      if (spec.m < 3) throw std::invalid_argument("family: clique_minus_edge motif needs m >= 3");
      std::vector<int> vs(static_cast<std::size_t>(spec.m));
      for (int i = 0; i < spec.m; ++i) vs[i] = i;
      missing = {0, 1};
      h0 = clique_graph(spec.m, vs).without_edge(missing);
    } else {
      throw std::invalid_argument("family: unknown motif " + spec.motif);
    }
    const Edge e = spec.edge.value_or(missing);
    const int k = h0.num_vertices();
    // Validates the placement against the motif.
    repeated_motif(h0, d, MotifPlacement{spec.block, e});
    out.null_graph = weighted_cyclic(repeated_motif(h0, d), spec.weights);
    out.alternative_graph = with_weighted_edge(out.null_graph, {spec.block * k + e.u, spec.block * k + e.v}, spec.extra_weight);
  } else if (spec.kind == "clique_chain") {
    const CliqueChain cc = clique_chain_with_path(d, spec.s);
    out.null_graph = cc.null_model;
    out.alternative_graph = cc.alternative_model;
  } else if (spec.kind == "path_chord") {
    out.null_graph = weighted_cyclic(path_graph(d), spec.weights);
    out.alternative_graph = with_weighted_edge(out.null_graph, spec.chord, spec.extra_weight);
  } else if (spec.kind == "files") {
    out.null_graph = read_graph_file(spec.null_path);
    out.alternative_graph = read_graph_file(spec.alternative_path);
    if (out.null_graph.num_vertices() != d || out.alternative_graph.num_vertices() != d)
      throw std::invalid_argument("family: graph files do not match the swept d");
  } else {
    throw std::invalid_argument("family: unknown kind '" + spec.kind + "'");
  }
  return out;
}

void ExperimentConfig::validate() const {
  if (sweep.d.empty() || sweep.n.empty() || sweep.theta.empty())
    throw std::invalid_argument("config: sweep grids for d, n and theta must be nonempty");
  if (trials < 1) throw std::invalid_argument("config: trials must be at least 1");
  for (int d : sweep.d) {
    if (d < 2) throw std::invalid_argument("config: d must be at least 2");
    if (sampler.tag == SamplerTag::exact && d > kMaxExactSampleDim)
      throw std::invalid_argument("config: the exact sampler requires d <= 20");
  }
  for (int n : sweep.n)
    if (n < 1) throw std::invalid_argument("config: n must be positive");
  for (double t : sweep.theta)
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("config: theta must be finite and >= 0");
  for (double t : sweep.Theta)
    if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("config: Theta must be finite and positive");
  if (!(test.delta > 0.0 && test.delta < 1.0)) throw std::invalid_argument("config: delta must lie in (0,1)");
  static const char* kinds[] = {"connectivity", "cycle", "clique", "fast_cycle", "exhaustive"};
  if (std::find(std::begin(kinds), std::end(kinds), test.kind) == std::end(kinds))
    throw std::invalid_argument("config: unknown test '" + test.kind + "'");
  if (test.kind == "exhaustive") parse_property(test.property, test.m);
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  ExperimentConfig c;
  try {
    const json j = json::parse(json_text);
    const json& fam = j.at("family");
    FamilySpec& f = c.family;
    f.kind = fam.at("kind").get<std::string>();
    f.rung = fam.value("rung", f.rung);
    f.motif = fam.value("motif", f.motif);
    f.l = fam.value("l", f.l);
    f.r = fam.value("r", f.r);
    f.m = fam.value("m", f.m);
    f.block = fam.value("block", f.block);
    if (fam.contains("edge")) f.edge = json_edge(fam.at("edge"));
    f.weights = json_list<double>(fam, "weights");
    f.extra_weight = fam.value("extra_weight", f.extra_weight);
    f.s = fam.value("s", f.s);
    if (fam.contains("chord")) f.chord = json_edge(fam.at("chord"));
    f.null_path = fam.value("null", std::string());
    f.alternative_path = fam.value("alternative", std::string());

    const std::string mc = j.value("model_class", std::string("simple_ferro"));
    if (mc == "simple_ferro") c.model_class = ModelClass::simple_ferro;
    else if (mc == "ferro") c.model_class = ModelClass::ferro;
    else if (mc == "general") c.model_class = ModelClass::general;
    else throw std::invalid_argument("config: unknown model_class '" + mc + "'");

    const json& t = j.at("test");
    c.test.kind = t.at("kind").get<std::string>();
    c.test.delta = t.value("delta", c.test.delta);
    c.test.m = t.value("m", c.test.m);
    if (t.contains("s")) c.test.s = t.at("s").get<int>();
    if (t.contains("rho")) c.test.rho = t.at("rho").get<double>();
    c.test.property = t.value("property", c.test.property);
    c.test.weight_levels = json_list<double>(t, "weight_levels");

    const json& sw = j.at("sweep");
    c.sweep.d = json_list<int>(sw, "d");
    c.sweep.n = json_list<int>(sw, "n");
    c.sweep.theta = json_list<double>(sw, "theta");
    c.sweep.Theta = json_list<double>(sw, "Theta");

    c.trials = j.value("trials", c.trials);
    if (j.contains("master_seed")) {
      const json& s = j.at("master_seed");
      if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
        throw std::invalid_argument("config: master_seed must be a nonnegative integer");
      c.master_seed = s.get<std::uint64_t>();
    }
    if (j.contains("sampler")) {
      const json& s = j.at("sampler");
      if (s.is_string()) {
        c.sampler.tag = sampler_from_string(s.get<std::string>());
      } else {
        c.sampler.tag = sampler_from_string(s.at("kind").get<std::string>());
        c.sampler.gibbs.burn_in = s.value("burn_in", c.sampler.gibbs.burn_in);
        c.sampler.gibbs.thin = s.value("thin", c.sampler.gibbs.thin);
        c.sampler.gibbs.independent_chains = s.value("independent_chains", c.sampler.gibbs.independent_chains);
      }
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_experiment_config(ss.str());
}

WilsonInterval wilson_interval(int successes, int trials, double z) {
  if (trials < 1 || successes < 0 || successes > trials) throw std::invalid_argument("wilson_interval: bad counts");
  const double t = trials;
  const double p = successes / t;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / t;
  const double center = (p + z2 / (2.0 * t)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / t + z2 / (4.0 * t * t));
  WilsonInterval w{std::max(0.0, center - half), std::min(1.0, center + half)};
  // Guard against rounding at p = 0 or 1.
  w.low = std::min(w.low, p);
  w.high = std::max(w.high, p);
  return w;
}

int run_configured_test(const TestSpec& test, const SampleBatch& batch, double theta, double Theta, int s,
                        std::vector<std::pair<std::string, bool>>* conditions) {
  auto record = [&](const std::vector<std::pair<std::string, bool>>& c) {
    if (conditions) conditions->insert(conditions->end(), c.begin(), c.end());
  };
  if (test.kind == "connectivity") {
    const TestReport r = connectivity_test(batch, theta, test.delta);
    record(r.conditions);
    return r.psi;
  }
  if (test.kind == "cycle") {
    const TestReport r = cycle_test(batch, theta, Theta, test.delta);
    record(r.conditions);
    return r.psi;
  }
  if (test.kind == "clique") {
    const TestReport r = clique_size_test(batch, theta, test.m, test.delta, s, Theta);
    record(r.conditions);
    return r.psi;
  }
  const double t = tau(batch.n(), batch.d(), test.delta);
  if (test.kind == "fast_cycle") {
    const FastCycleReport r = fast_cycle_test(batch, theta, Theta, test.delta);
    const double th = std::tanh(Theta);
    record({{"fast_cycle_condition", r.condition},
            {"general_cycle_condition", T_general(theta, Theta, s) >= t * (3.0 - 2.0 * th) / (1.0 - th)}});
    return r.psi;
  }
  if (test.kind == "exhaustive") {
    GeneralTestConfig cfg;
    cfg.theta = theta;
    cfg.Theta = Theta;
    cfg.delta = test.delta;
    cfg.s = s;
    cfg.rho = test.rho.value_or(t);
    cfg.weight_levels = test.weight_levels;
    const FittedNullModel fitted = exhaustive_null_fit(batch, cfg, parse_property(test.property, test.m));
    record({{"general_condition", T_general(theta, Theta, s) >= t + cfg.rho}});
    return score_test(batch, fitted, cfg.rho);
  }
  throw std::invalid_argument("unknown test '" + test.kind + "'");
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentReport report;
  std::uint64_t grid_index = 0;
  for (int d : config.sweep.d) {
    const FamilyInstance fam = build_family(config.family, d);
    for (const WeightedGraph* wg : {&fam.null_graph, &fam.alternative_graph}) {
      if (config.model_class == ModelClass::simple_ferro && !wg->is_unit())
        throw std::invalid_argument("family is not a simple ferromagnet");
      if (config.model_class == ModelClass::ferro && !wg->is_ferromagnetic())
        throw std::invalid_argument("family is not ferromagnetic");
    }
    const int s = config.test.s.value_or(
        std::max({1, max_degree(fam.null_graph.graph()), max_degree(fam.alternative_graph.graph())}));
    for (int n : config.sweep.n) {
      for (double theta : config.sweep.theta) {
        const std::vector<double> Thetas = config.sweep.Theta.empty() ? std::vector<double>{theta} : config.sweep.Theta;
        for (double Theta : Thetas) {
          const IsingModel models[2] = {IsingModel(theta, fam.null_graph), IsingModel(theta, fam.alternative_graph)};
          std::vector<ExactSampler> samplers;
          if (config.sampler.tag == SamplerTag::exact) {
            samplers.emplace_back(models[0]);
            samplers.emplace_back(models[1]);
          }
          const std::size_t trials = static_cast<std::size_t>(config.trials);
          std::vector<int> psi(2 * trials, 0);
          std::vector<std::pair<std::string, bool>> conditions;
          parallel_for(2 * trials, [&](std::size_t i) {
            const std::size_t side = i / trials, trial = i % trials;
            const std::uint64_t seed = derive_seed(config.master_seed, {grid_index, side, trial});
            const SampleBatch batch = config.sampler.tag == SamplerTag::exact
                                          ? samplers[side].sample(n, seed)
                                          : gibbs_sample(models[side], n, seed, config.sampler.gibbs);
            psi[i] = run_configured_test(config.test, batch, theta, Theta, s, i == 0 ? &conditions : nullptr);
          });
          GridPointResult g;
          g.d = d;
          g.n = n;
          g.theta = theta;
          g.Theta = Theta;
          g.trials = config.trials;
          for (std::size_t t = 0; t < trials; ++t) {
            g.type1_errors += psi[t];
            g.type2_errors += 1 - psi[trials + t];
          }
          g.type1_rate = static_cast<double>(g.type1_errors) / config.trials;
          g.type2_rate = static_cast<double>(g.type2_errors) / config.trials;
          g.type1_ci = wilson_interval(g.type1_errors, config.trials);
          g.type2_ci = wilson_interval(g.type2_errors, config.trials);
          g.conditions = std::move(conditions);
          std::tie(g.lb_verdict, g.ub_verdict) = bound_verdicts(config.test, d, n, theta, Theta, s);
          report.points.push_back(std::move(g));
          ++grid_index;
        }
      }
    }
  }
  return report;
}

std::string format_report_csv(const ExperimentReport& report) {
  std::string out =
      "d,n,theta,Theta,trials,type1_rate,type1_ci_low,type1_ci_high,type2_rate,type2_ci_low,type2_ci_high,"
      "error_sum,conditions,lb_verdict,ub_verdict\n";
  for (const auto& g : report.points) {
    std::string cond;
    for (const auto& [name, ok] : g.conditions) {
      if (!cond.empty()) cond += ';';
      cond += name + "=" + (ok ? "1" : "0");
    }
    out += std::to_string(g.d) + "," + std::to_string(g.n) + "," + format_double(g.theta) + "," +
           format_double(g.Theta) + "," + std::to_string(g.trials) + "," + format_double(g.type1_rate) + "," +
           format_double(g.type1_ci.low) + "," + format_double(g.type1_ci.high) + "," + format_double(g.type2_rate) +
           "," + format_double(g.type2_ci.low) + "," + format_double(g.type2_ci.high) + "," +
           format_double(g.type1_rate + g.type2_rate) + "," + cond + "," + g.lb_verdict + "," + g.ub_verdict + "\n";
  }
  return out;
}

std::string format_phase_csv(const ExperimentReport& report) {
  std::string out = "theta,type1,type2,lb_verdict,ub_verdict\n";
  for (const auto& g : report.points) {
    out += format_double(g.theta) + "," + format_double(g.type1_rate) + "," + format_double(g.type2_rate) + "," +
           g.lb_verdict + "," + g.ub_verdict + "\n";
  }
  return out;
}

std::string phase_sweep(const ExperimentConfig& config) { return format_phase_csv(run_experiment(config)); }

}  // namespace ising
