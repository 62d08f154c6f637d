// Python module: exact inference, sampling, the tests and the harness.
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ising/bounds.hpp"
#include "ising/general_tests.hpp"
#include "ising/graph.hpp"
#include "ising/harness.hpp"
#include "ising/ising_model.hpp"
#include "ising/oracle.hpp"
#include "ising/screening.hpp"

namespace py = pybind11;
using namespace ising;

namespace {

using SpinArray = py::array_t<std::int8_t, py::array::c_style | py::array::forcecast>;

IsingModel make_model(int d, const std::vector<std::pair<int, int>>& edges, double theta,
                      const std::optional<std::vector<double>>& weights) {
  std::vector<Edge> es;
  es.reserve(edges.size());
  for (auto [u, v] : edges) es.push_back(make_edge(u, v));
  Graph g(d, es);
  if (!weights) return IsingModel(theta, g);
  if (weights->size() != es.size()) throw std::invalid_argument("weights must match edges");
  // Graph sorts its edges; realign the weights.
  std::vector<double> aligned(es.size());
  for (std::size_t i = 0; i < es.size(); ++i) aligned[g.edge_index(es[i].u, es[i].v)] = (*weights)[i];
  return IsingModel(theta, WeightedGraph(g, aligned));
}

py::array_t<double> to_numpy(const CorrelationMatrix& m) {
  const int d = m.dim();
  py::array_t<double> out({d, d});
  auto r = out.mutable_unchecked<2>();
  for (int u = 0; u < d; ++u)
    for (int v = 0; v < d; ++v) r(u, v) = m(u, v);
  return out;
}

SampleBatch to_batch(const SpinArray& spins) {
  if (spins.ndim() != 2) throw std::invalid_argument("spins must be a 2-D array");
  const auto n = static_cast<int>(spins.shape(0));
  const auto d = static_cast<int>(spins.shape(1));
  std::vector<std::int8_t> data(spins.data(), spins.data() + spins.size());
  return SampleBatch(n, d, std::move(data), 0, SamplerTag::exact);
}

py::list edge_list(const std::vector<Edge>& edges) {
  py::list out;
  for (const Edge& e : edges) out.append(py::make_tuple(e.u, e.v));
  return out;
}

py::dict report_dict(const TestReport& r) {
  py::dict out;
  out["psi"] = r.psi;
  out["tau"] = r.tau;
  out["threshold"] = r.threshold_used;
  out["min_witness_correlation"] = r.min_witness_correlation;
  out["witness"] = edge_list(r.witness);
  py::dict cond;
  for (const auto& [name, ok] : r.conditions) cond[py::str(name)] = ok;
  out["conditions"] = cond;
  return out;
}

}  // namespace

PYBIND11_MODULE(_ising_proptest, m) {
  m.doc() = "Property testing for Ising models";

  m.def("tau", &tau, py::arg("n"), py::arg("d"), py::arg("delta"));
  m.def("clique_threshold", &clique_T, py::arg("m"), py::arg("theta"));
  m.def("T_general", &T_general, py::arg("theta"), py::arg("Theta"), py::arg("s"));
  m.def("fast_cycle_epsilon", &fast_cycle_epsilon, py::arg("tau"), py::arg("Theta"));
  m.def("curie_weiss_edge_correlation", &curie_weiss_edge_correlation, py::arg("m"), py::arg("theta"));

  m.def(
      "exact_correlations",
      [](int d, const std::vector<std::pair<int, int>>& edges, double theta, std::optional<std::vector<double>> weights) {
        return to_numpy(exact_correlation_matrix(make_model(d, edges, theta, weights)));
      },
      py::arg("d"), py::arg("edges"), py::arg("theta"), py::arg("weights") = py::none(),
      "Exact pair correlations by enumeration (d <= 25). Vertices are 0-based.");

  m.def(
      "log_partition_function",
      [](int d, const std::vector<std::pair<int, int>>& edges, double theta, std::optional<std::vector<double>> weights) {
        return log_partition_function(make_model(d, edges, theta, weights));
      },
      py::arg("d"), py::arg("edges"), py::arg("theta"), py::arg("weights") = py::none());

  m.def(
      "sample",
      [](int d, const std::vector<std::pair<int, int>>& edges, double theta, int n, std::uint64_t seed,
         std::optional<std::vector<double>> weights, const std::string& sampler) {
        const IsingModel model = make_model(d, edges, theta, weights);
        SampleBatch b = [&] {
          py::gil_scoped_release release;
          if (sampler == "exact") return exact_sample(model, n, seed);
          if (sampler == "gibbs") return gibbs_sample(model, n, seed);
          throw std::invalid_argument("sampler must be 'exact' or 'gibbs'");
        }();
        py::array_t<std::int8_t> out({b.n(), b.d()});
        std::copy(b.spins().begin(), b.spins().end(), out.mutable_data());
        return out;
      },
      py::arg("d"), py::arg("edges"), py::arg("theta"), py::arg("n"), py::arg("seed") = 1,
      py::arg("weights") = py::none(), py::arg("sampler") = "exact",
      "An (n, d) int8 array of +-1 spins.");

  m.def(
      "empirical_correlations", [](const SpinArray& spins) { return to_numpy(empirical_correlations(to_batch(spins))); },
      py::arg("spins"));

  m.def(
      "connectivity_test",
      [](const SpinArray& spins, double theta, double delta) {
        return report_dict(connectivity_test(to_batch(spins), theta, delta));
      },
      py::arg("spins"), py::arg("theta"), py::arg("delta") = 0.05);
  m.def(
      "cycle_test",
      [](const SpinArray& spins, double theta, double Theta, double delta) {
        return report_dict(cycle_test(to_batch(spins), theta, Theta, delta));
      },
      py::arg("spins"), py::arg("theta"), py::arg("Theta"), py::arg("delta") = 0.05);
  m.def(
      "clique_test",
      [](const SpinArray& spins, double theta, int size, double delta) {
        return report_dict(clique_size_test(to_batch(spins), theta, size, delta));
      },
      py::arg("spins"), py::arg("theta"), py::arg("m"), py::arg("delta") = 0.05);
  m.def(
      "fast_cycle_test",
      [](const SpinArray& spins, double theta, double Theta, double delta) {
        const FastCycleReport r = fast_cycle_test(to_batch(spins), theta, Theta, delta);
        py::dict out;
        out["psi"] = r.psi;
        out["discrepancy"] = r.discrepancy;
        out["rho"] = r.rho;
        out["tau"] = r.tau;
        out["condition"] = r.condition;
        const WeightedGraph& wg = r.fitted.model.weighted_graph();
        out["forest"] = edge_list(wg.graph().edges());
        out["weights"] = wg.weights();
        return out;
      },
      py::arg("spins"), py::arg("theta"), py::arg("Theta"), py::arg("delta") = 0.05);

  m.def(
      "run_experiment",
      [](const std::string& config_json, bool phase) {
        const ExperimentConfig c = parse_experiment_config(config_json);
        ExperimentReport rep;
        {
          py::gil_scoped_release release;
          rep = run_experiment(c);
        }
        return phase ? format_phase_csv(rep) : format_report_csv(rep);
      },
      py::arg("config_json"), py::arg("phase") = false, "Runs a JSON-configured sweep and returns the CSV text.");

  m.def(
      "monotone_upper_bound",
      [](int l, int r, int n, int d, double kappa) {
        const MonotoneUpperBound b = monotone_ub_theta(l, r, n, d, kappa);
        py::dict out;
        out["threshold"] = b.threshold;
        out["min_theta_l"] = b.min_theta_l;
        out["min_theta_r"] = b.min_theta_r;
        out["binding"] = b.binding();
        return out;
      },
      py::arg("l"), py::arg("r"), py::arg("n"), py::arg("d"), py::arg("kappa") = 2.0);
  m.def("monotone_lower_bound", &monotone_lb_theta, py::arg("n"), py::arg("d"), py::arg("m"));

  m.def(
      "run_oracle_suite",
      [](const std::string& suite, std::uint64_t seed) {
        std::vector<OracleCheck> checks;
        {
          py::gil_scoped_release release;
          checks = run_oracle_suite(suite, seed);
        }
        py::list out;
        for (const OracleCheck& c : checks) {
          py::dict row;
          row["suite"] = c.suite;
          row["name"] = c.name;
          row["passed"] = c.passed;
          row["margin"] = c.margin;
          row["detail"] = c.detail;
          out.append(row);
        }
        return out;
      },
      py::arg("suite") = "all", py::arg("seed") = 1);
}
