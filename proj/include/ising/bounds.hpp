#pragma once

#include <string>
#include <vector>

#include "ising/graph.hpp"

namespace ising {

// One evaluated inequality lhs (op) rhs.
struct RegimeVerdict {
  std::string bound_name;
  bool condition_holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
  bool applicable = true;
  std::string note;
};

struct BoundInputs {
  int n = 0;
  int d = 0;
  double theta = 0.0;
  double Theta = 0.0;
  int s = 0;
  int m = 0;
  int l = 0;
  int r = 0;
  double kappa = 2.0;
  double epsilon = 0.5;
  double delta = 0.05;
  // Multiplier on the clique upper bound, whose constant is left open.
  double clique_constant = 1.0;
};

// min((1 - eps) sqrt(packing_log / n), atanh(c / (maxdeg + 1))).
double generic_lb_theta(double packing_log, int n, int maxdeg_g0, double c = 0.1353352832366127, double eps = 0.5);

struct MonotoneUpperBound {
  double threshold = 0.0;    // log(2 kappa n r / log floor(d/(l+r))) / l
  double min_theta_l = 0.0;  // 2 / l
  double min_theta_r = 0.0;  // 3 / (r - 2) for r > 2, log 2 for r = 2
  double binding() const;
};

MonotoneUpperBound monotone_ub_theta(int l, int r, int n, int d, double kappa = 2.0);

// atanh(sqrt(log floor(d/m) / n)).
double monotone_lb_theta(int n, int d, int m);

enum class ExampleKind { connectivity, cycle, clique };

// Each displayed inequality of the worked examples, evaluated at inputs.theta.
// condition_holds means the inequality is satisfied, i.e. testing is
// impossible in that regime.
std::vector<RegimeVerdict> example_bounds(ExampleKind kind, const BoundInputs& inputs);

struct DetectionVerdict {
  RegimeVerdict first;   // s log(d / s^2) / n > 2 + eps
  RegimeVerdict second;  // s log(d / (2s)) / (n log sqrt(2s)) >= 1 + eps
  bool impossible = false;
  bool sparsity_warning = false;  // s^2 >= d
};

DetectionVerdict detection_impossibility(int n, int d, int s, double eps);

struct AntiferroVerdict {
  RegimeVerdict main;  // theta > 2 log(kappa s n / log(d s)) / (s - 16)
  RegimeVerdict side;  // theta >= 3 / (2 floor(s/4) - 2)
  bool holds = false;
};

AntiferroVerdict antiferro_connectivity_ub(double theta, int s, int n, int d, double kappa = 2.0);

struct BicliqueBound {
  double value = 0.0;
  bool conditions_hold = false;
};

// 1 - 2(r - 1) / (exp(theta l) + r - 1) when its theta conditions hold.
BicliqueBound biclique_lowtemp_bound(int l, int r, double theta);

// Certified upper bound on E_G X_k X_l - E_{G - e} X_k X_l: the series truncated
// at L plus the tail 8 t (t Lambda)^{L+1} / (1 - t Lambda), t = tanh(theta),
// Lambda = maxdeg(G). G must contain e; requires Lambda t < 1.
double dobrushin_series_bound(const Graph& g, double theta, Edge e, int k, int l, int L);

// Number of self-avoiding walks from u to v of each length 0..max_len.
std::vector<long long> count_self_avoiding_walks(const Graph& g, int u, int v, int max_len);

// sum_{k <= max_len} tanh(theta)^k N_uv(k) plus the tail
// sum_{k = max_len+1}^{d-1} (tanh(theta) maxdeg)^k, which bounds the rest
// because a self-avoiding walk has length at most d - 1.
double fisher_saw_bound(const Graph& g, double theta, int u, int v, int max_len);

std::string format_verdict_csv(const RegimeVerdict& v);

}  // namespace ising
