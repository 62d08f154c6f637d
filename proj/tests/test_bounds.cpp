#include <gtest/gtest.h>

#include <cmath>

#include "ising/bounds.hpp"
#include "ising/general_tests.hpp"
#include "ising/graph.hpp"
#include "ising/ising_model.hpp"
#include "ising/rng.hpp"
#include "ising/screening.hpp"

using namespace ising;

namespace {

const RegimeVerdict& find(const std::vector<RegimeVerdict>& vs, const std::string& name) {
  for (const auto& v : vs)
    if (v.bound_name == name) return v;
  throw std::runtime_error("missing verdict " + name);
}

Graph random_bounded_degree_graph(int d, int s, double p, Rng& rng) {
  std::vector<Edge> edges;
  std::vector<int> deg(d, 0);
  for (int u = 0; u < d; ++u)
    for (int v = u + 1; v < d; ++v)
      if (deg[u] < s && deg[v] < s && rng.uniform() < p) {
        edges.push_back({u, v});
        ++deg[u];
        ++deg[v];
      }
  return Graph(d, edges);
}

}  // namespace

TEST(Bounds, GenericLower) {
  EXPECT_EQ(generic_lb_theta(0.0, 100, 2), 0.0);
  EXPECT_NEAR(generic_lb_theta(1e6, 100, 2), 0.045142400378194957, 1e-16);
  EXPECT_NEAR(generic_lb_theta(2.0, 20000, 2) * std::sqrt(2.0), generic_lb_theta(2.0, 10000, 2), 1e-15);
  EXPECT_NEAR(generic_lb_theta(2.0, 10000, 2), 0.5 * std::sqrt(2e-4), 1e-15);
  EXPECT_THROW(generic_lb_theta(-1.0, 100, 2), std::invalid_argument);
  EXPECT_THROW(generic_lb_theta(1.0, 100, 2, 1.5), std::invalid_argument);
}

TEST(Bounds, MonotoneUpper) {
  const MonotoneUpperBound b = monotone_ub_theta(3, 7, 10000, 1000, 2.0);
  EXPECT_NEAR(b.threshold, 3.6717884187811619, 1e-14);
  EXPECT_NEAR(b.threshold, std::log(280000.0 / std::log(100.0)) / 3, 1e-14);
  EXPECT_NEAR(b.min_theta_l, 2.0 / 3, 1e-15);
  EXPECT_NEAR(b.min_theta_r, 3.0 / 5, 1e-15);
  EXPECT_NEAR(b.binding(), b.threshold, 0.0);
  // l = 1, r = 2 reduces to 2 v log(4 kappa n / log floor(d/3)).
  const MonotoneUpperBound c = monotone_ub_theta(1, 2, 10000, 3000, 1.5);
  EXPECT_NEAR(std::max(c.binding(), 2.0), std::max(2.0, std::log(6.0 * 10000 / std::log(1000.0))), 1e-14);
  EXPECT_NEAR(c.min_theta_r, std::log(2.0), 1e-15);
  for (int l = 1; l < 6; ++l)
    EXPECT_GT(monotone_ub_theta(l, 4, 1000, 500).threshold, monotone_ub_theta(l + 1, 4, 1000, 500).threshold);
  EXPECT_THROW(monotone_ub_theta(1, 1, 100, 100), std::invalid_argument);
  EXPECT_THROW(monotone_ub_theta(1, 2, 100, 5), std::invalid_argument);
}

TEST(Bounds, MonotoneLower) {
  EXPECT_NEAR(monotone_lb_theta(10000, 3000, 3), 0.026288663152615804, 1e-16);
  EXPECT_EQ(monotone_lb_theta(100, 5, 3), 0.0);
  const double x = std::sqrt(std::log(1000.0) / 1e8);
  EXPECT_NEAR(monotone_lb_theta(100000000, 3000, 3), x, 1e-10);
  EXPECT_THROW(monotone_lb_theta(1, 100000, 1), std::domain_error);
}

TEST(Bounds, ExampleConnectivity) {
  BoundInputs in;
  in.n = 1000000;
  in.d = 10;
  in.kappa = 100.0;
  in.theta = 0.01;
  const auto vs = example_bounds(ExampleKind::connectivity, in);
  const RegimeVerdict& lo = find(vs, "connectivity_lower");
  EXPECT_NEAR(lo.rhs, 0.045142400378194957, 1e-16);
  EXPECT_TRUE(lo.condition_holds);
  EXPECT_TRUE(find(vs, "connectivity_large_log_d").condition_holds);
}

TEST(Bounds, ExampleCycle) {
  BoundInputs in;
  in.n = 10000;
  in.d = 3000;
  in.kappa = 1.0;
  in.theta = 1.0;
  const auto vs = example_bounds(ExampleKind::cycle, in);
  EXPECT_NEAR(find(vs, "cycle_lower").rhs, 0.026288663152615804, 1e-16);
  EXPECT_FALSE(find(vs, "cycle_lower").condition_holds);
  EXPECT_NEAR(find(vs, "cycle_upper").rhs, 8.6639899991800079, 1e-13);
  EXPECT_FALSE(find(vs, "cycle_upper").condition_holds);
}

TEST(Bounds, ExampleCliqueNotApplicable) {
  BoundInputs in;
  in.n = 1000;
  in.d = 1000;
  in.m = 4;
  in.s = 9;
  in.theta = 1.0;
  const auto vs = example_bounds(ExampleKind::clique, in);
  EXPECT_FALSE(find(vs, "clique_upper").applicable);
  EXPECT_EQ(format_verdict_csv(find(vs, "clique_upper")).substr(format_verdict_csv(find(vs, "clique_upper")).size() - 3), ",na");
  in.s = 13;
  EXPECT_TRUE(find(example_bounds(ExampleKind::clique, in), "clique_upper").applicable);
}

TEST(Bounds, Detection) {
  const DetectionVerdict v = detection_impossibility(10, 10000, 50, 0.1);
  EXPECT_NEAR(v.first.lhs, 6.9314718055994531, 1e-14);
  EXPECT_NEAR(v.second.lhs, 10.0, 1e-14);
  EXPECT_NEAR(v.first.rhs, 2.1, 1e-15);
  EXPECT_NEAR(v.second.rhs, 1.1, 1e-15);
  EXPECT_TRUE(v.impossible);
  EXPECT_FALSE(v.sparsity_warning);
  EXPECT_TRUE(detection_impossibility(10, 100, 10, 0.1).sparsity_warning);
  EXPECT_FALSE(detection_impossibility(100000000, 10000, 50, 0.1).impossible);
}

TEST(Bounds, Antiferro) {
  EXPECT_FALSE(antiferro_connectivity_ub(1.0, 16, 10000, 10000).main.applicable);
  const AntiferroVerdict v = antiferro_connectivity_ub(1.0, 100, 10000, 10000, 2.0);
  EXPECT_NEAR(v.main.rhs, 0.28292537676305259, 1e-15);
  EXPECT_NEAR(v.side.rhs, 3.0 / 48, 1e-15);
  EXPECT_TRUE(v.holds);
  double prev = 1e9;
  for (int s = 50; s <= 500; s += 50) {
    const double r = antiferro_connectivity_ub(1.0, s, 10000, 10000).main.rhs;
    EXPECT_LT(r, prev);
    prev = r;
  }
}

TEST(Bounds, VerdictsAreReproducible) {
  BoundInputs in;
  in.n = 777;
  in.d = 123;
  in.theta = 0.3;
  in.m = 4;
  in.s = 12;
  for (ExampleKind k : {ExampleKind::connectivity, ExampleKind::cycle, ExampleKind::clique}) {
    const auto a = example_bounds(k, in), b = example_bounds(k, in);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(format_verdict_csv(a[i]), format_verdict_csv(b[i]));
  }
}

TEST(Bounds, Biclique) {
  const BicliqueBound b = biclique_lowtemp_bound(1, 2, std::log(2.0));
  EXPECT_NEAR(b.value, 1.0 / 3, 1e-15);
  EXPECT_FALSE(b.conditions_hold);  // theta >= 2 / l fails at log 2
  EXPECT_NEAR(exact_pair_correlation(IsingModel(std::log(2.0), biclique(1, 2)), 1, 2), 0.36, 1e-14);
  EXPECT_NEAR(biclique_lowtemp_bound(4, 3, 3.0).value, 0.99997542345259374, 1e-15);
  EXPECT_GE(exact_pair_correlation(IsingModel(3.0, biclique(4, 3)), 4, 5), 0.99997542345259374);
  EXPECT_GT(biclique_lowtemp_bound(2, 3, 40.0).value, 1 - 1e-15);
  EXPECT_FALSE(biclique_lowtemp_bound(1, 2, 0.5).conditions_hold);
}

TEST(Bounds, BicliqueDominatesExact) {
  for (int l = 1; l <= 4; ++l)
    for (int r : {2, 3, 4}) {
      const double lo = std::max(2.0 / l, r == 2 ? std::log(2.0) : 3.0 / (r - 2));
      for (double th = lo; th <= lo + 3.0; th += 0.25) {
        const BicliqueBound b = biclique_lowtemp_bound(l, r, th);
        ASSERT_TRUE(b.conditions_hold);
        EXPECT_GE(exact_pair_correlation(IsingModel(th, biclique(l, r)), l, l + 1), b.value - 1e-15);
      }
    }
}

TEST(Bounds, Dobrushin) {
  const Graph g = path_graph(6);
  EXPECT_EQ(dobrushin_series_bound(g, 0.0, {4, 5}, 3, 4, 5), 0.0);
  const double th = 0.1;
  const double diff =
      exact_pair_correlation(IsingModel(th, g), 3, 4) - exact_pair_correlation(IsingModel(th, g.without_edge({4, 5})), 3, 4);
  double prev = 1e9;
  for (int L = 1; L <= 12; ++L) {
    const double b = dobrushin_series_bound(g, th, {4, 5}, 3, 4, L);
    EXPECT_GE(b, std::abs(diff));
    EXPECT_LE(b, prev + 1e-15);
    prev = b;
  }
  EXPECT_THROW(dobrushin_series_bound(cycle_graph(5), 1.0, {0, 1}, 2, 3, 3), std::domain_error);
}

TEST(Bounds, DobrushinDominatesRandom) {
  Rng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 4 + static_cast<int>(rng.below(6));
    const Graph g = random_bounded_degree_graph(d, 3, 0.5, rng);
    if (g.num_edges() == 0) continue;
    const double th = 0.3 * rng.uniform();
    const Edge e = g.edges()[rng.below(g.edges().size())];
    const CorrelationMatrix a = exact_correlation_matrix(IsingModel(th, g));
    const CorrelationMatrix b = exact_correlation_matrix(IsingModel(th, g.without_edge(e)));
    for (int k = 0; k < d; ++k)
      for (int l = k + 1; l < d; ++l) EXPECT_GE(dobrushin_series_bound(g, th, e, k, l, 4), a(k, l) - b(k, l) - 1e-15);
  }
}

TEST(Bounds, SelfAvoidingWalks) {
  EXPECT_EQ(count_self_avoiding_walks(cycle_graph(3), 0, 1, 3), (std::vector<long long>{0, 1, 1, 0}));
  EXPECT_NEAR(fisher_saw_bound(Graph(2, {{0, 1}}), 0.4, 0, 1, 1), std::tanh(0.4), 1e-15);
  EXPECT_EQ(fisher_saw_bound(Graph(4, {{0, 1}, {2, 3}}), 0.4, 0, 3, 3), 0.0);
  EXPECT_NEAR(fisher_saw_bound(cycle_graph(3), 0.3, 0, 1, 2), 0.37617565062496169, 1e-15);
  EXPECT_NEAR(exact_pair_correlation(IsingModel(0.3, cycle_graph(3)), 0, 1), 0.36710031651312549, 1e-15);
  const double e4 = std::exp(4 * 0.3);
  EXPECT_NEAR(0.36710031651312549, (e4 - 1) / (e4 + 3), 1e-15);
}

TEST(Bounds, SelfAvoidingWalkBoundDominates) {
  Rng rng(44);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 4 + static_cast<int>(rng.below(6));
    const Graph g = random_bounded_degree_graph(d, 3, 0.5, rng);
    const double th = 0.05 + 0.4 * rng.uniform();
    const CorrelationMatrix m = exact_correlation_matrix(IsingModel(th, g));
    for (int u = 0; u < d; ++u)
      for (int v = u + 1; v < d; ++v) EXPECT_GE(fisher_saw_bound(g, th, u, v, d - 1), m(u, v) - 1e-15);
  }
}

// No-edge bounds against exact no-edge correlations on random graphs of max degree s.
TEST(Bounds, NoEdgeBoundsSweep) {
  Rng rng(2718);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int s = 2 + trial % 3;
    const int d = 4 + static_cast<int>(rng.below(7));
    const Graph g = random_bounded_degree_graph(d, s, 0.6, rng);
    const double Theta = 0.05 + 0.6 * rng.uniform();
    const CorrelationMatrix m = exact_correlation_matrix(IsingModel(Theta, g));
    const double low = Q_upper_lowtemp(s, Theta);
    const bool high_ok = (s - 1) * std::tanh(Theta) < 1.0;
    const double high = high_ok ? Q_upper_hightemp(s, Theta) : 1.0;
    for (int u = 0; u < d; ++u)
      for (int v = u + 1; v < d; ++v) {
        if (g.has_edge(u, v)) continue;
        ++checked;
        EXPECT_LE(m(u, v), low + 1e-14);
        EXPECT_LE(m(u, v), high + 1e-14);
      }
  }
  EXPECT_GT(checked, 1000);
}

TEST(Bounds, VerdictCsv) {
  RegimeVerdict v{"x", true, 0.5, 0.25, true, ""};
  EXPECT_EQ(format_verdict_csv(v), "x," + format_double(0.5) + "," + format_double(0.25) + ",true");
}
