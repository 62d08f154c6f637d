#include "ising/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ising/numeric.hpp"

namespace ising {

namespace {

double floor_log(int d, int denom) {
  const int q = d / denom;
  if (q < 1) throw std::invalid_argument("floor(d / k) must be at least 1");
  return std::log(static_cast<double>(q));
}

}  // namespace

double generic_lb_theta(double packing_log, int n, int maxdeg_g0, double c, double eps) {
  if (packing_log < 0.0) throw std::invalid_argument("generic_lb_theta: packing_log must be >= 0");
  if (n < 1) throw std::invalid_argument("generic_lb_theta: n must be positive");
  if (maxdeg_g0 < 0) throw std::invalid_argument("generic_lb_theta: maxdeg must be >= 0");
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("generic_lb_theta: c must lie in (0,1)");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("generic_lb_theta: eps must lie in (0,1)");
  return std::min((1.0 - eps) * std::sqrt(packing_log / n), std::atanh(c / (maxdeg_g0 + 1.0)));
}

double MonotoneUpperBound::binding() const { return std::max({threshold, min_theta_l, min_theta_r}); }

MonotoneUpperBound monotone_ub_theta(int l, int r, int n, int d, double kappa) {
  if (l < 1 || r < 2) throw std::invalid_argument("monotone_ub_theta: need l >= 1 and r >= 2");
  if (n < 1) throw std::invalid_argument("monotone_ub_theta: n must be positive");
  if (!(kappa > 1.0)) throw std::invalid_argument("monotone_ub_theta: kappa must exceed 1");
  if (d / (l + r) < 2) throw std::invalid_argument("monotone_ub_theta: floor(d/(l+r)) must be at least 2");
  MonotoneUpperBound out;
  out.threshold = std::log(2.0 * kappa * n * r / floor_log(d, l + r)) / l;
  out.min_theta_l = 2.0 / l;
  out.min_theta_r = r > 2 ? 3.0 / (r - 2) : std::log(2.0);
  return out;
}

double monotone_lb_theta(int n, int d, int m) {
  if (n < 1 || m < 1 || d < 1) throw std::invalid_argument("monotone_lb_theta: n, d, m must be positive");
  const double arg = std::sqrt(floor_log(d, m) / n);
  if (arg >= 1.0) throw std::domain_error("monotone_lb_theta: log floor(d/m) >= n, outside the formula's regime");
  return std::atanh(arg);
}

std::vector<RegimeVerdict> example_bounds(ExampleKind kind, const BoundInputs& in) {
  if (in.n < 1 || in.d < 2) throw std::invalid_argument("example_bounds: need n >= 1 and d >= 2");
  std::vector<RegimeVerdict> out;
  const double theta = in.theta;
  switch (kind) {
    case ExampleKind::connectivity: {
      const double rhs =
          std::min(in.kappa * std::sqrt(std::log(static_cast<double>(in.d)) / in.n), std::atanh(1.0 / (3.0 * std::exp(2.0))));
      out.push_back({"connectivity_lower", theta < rhs, theta, rhs, true, "theta < kappa sqrt(log d / n) ^ atanh(1/(3e^2))"});
      const double t = std::tanh(theta);
      out.push_back({"connectivity_large_log_d", t < 1.0, t, 1.0, true, "tanh(theta) < 1, applies when log d >> n"});
      break;
    }
    case ExampleKind::cycle: {
      const double lower = monotone_lb_theta(in.n, in.d, 3);
      out.push_back({"cycle_lower", theta < lower, theta, lower, true, "theta < atanh(sqrt(log floor(d/3) / n))"});
      const double upper = std::max(2.0, std::log(4.0 * in.kappa * in.n / floor_log(in.d, 3)));
      out.push_back({"cycle_upper", theta >= upper, theta, upper, true, "theta >= 2 v log(4 kappa n / log floor(d/3))"});
      break;
    }
    case ExampleKind::clique: {
      if (in.m < 2 || in.s < 1) throw std::invalid_argument("example_bounds: clique needs m >= 2 and s >= 1");
      const double lower = monotone_lb_theta(in.n, in.d, in.m);
      out.push_back({"clique_lower", theta < lower, theta, lower, true, "theta < atanh(sqrt(log floor(d/m) / n))"});
      if (in.s <= 9 || (2 * in.d) / in.s < 2) {
        out.push_back({"clique_upper", false, theta, 0.0, false, "not applicable: needs s > 9 and floor(2d/s) >= 2"});
      } else {
        const double a = 12.0 / (in.s - 9);
        const double b = std::log(in.kappa * in.n * in.s / std::log(static_cast<double>((2 * in.d) / in.s))) /
                         ((in.s - 1) / 4.0);
        const double upper = in.clique_constant * std::max(a, b);
        out.push_back({"clique_upper", theta >= upper, theta, upper, true, "up to the unstated constant (clique_constant)"});
      }
      break;
    }
  }
  return out;
}

DetectionVerdict detection_impossibility(int n, int d, int s, double eps) {
  if (n < 1 || d < 1 || s < 1) throw std::invalid_argument("detection_impossibility: n, d, s must be positive");
  if (!(eps > 0.0)) throw std::invalid_argument("detection_impossibility: eps must be positive");
  DetectionVerdict v;
  const double ds = static_cast<double>(d);
  v.first.bound_name = "detection_first";
  v.first.lhs = s * std::log(ds / (static_cast<double>(s) * s)) / n;
  v.first.rhs = 2.0 + eps;
  v.first.condition_holds = v.first.lhs > v.first.rhs;
  v.second.bound_name = "detection_second";
  v.second.lhs = s * std::log(ds / (2.0 * s)) / (n * std::log(std::sqrt(2.0 * s)));
  v.second.rhs = 1.0 + eps;
  v.second.condition_holds = v.second.lhs >= v.second.rhs;
  v.impossible = v.first.condition_holds && v.second.condition_holds;
  v.sparsity_warning = static_cast<double>(s) * s >= ds;
  if (v.sparsity_warning) v.first.note = v.second.note = "s^2 >= d: outside the s = o(sqrt d) regime";
  return v;
}

AntiferroVerdict antiferro_connectivity_ub(double theta, int s, int n, int d, double kappa) {
  if (n < 1 || d < 1 || s < 1) throw std::invalid_argument("antiferro_connectivity_ub: n, d, s must be positive");
  if (!(kappa > 1.0)) throw std::invalid_argument("antiferro_connectivity_ub: kappa must exceed 1");
  AntiferroVerdict v;
  v.main.bound_name = "antiferro_connectivity";
  v.side.bound_name = "antiferro_connectivity_side";
  v.main.lhs = v.side.lhs = theta;
  if (s <= 16) {
    v.main.applicable = v.side.applicable = false;
    v.main.note = v.side.note = "not applicable: needs s > 16";
    return v;
  }
  v.main.rhs = 2.0 * std::log(kappa * s * n / std::log(static_cast<double>(d) * s)) / (s - 16);
  v.main.condition_holds = theta > v.main.rhs;
  v.side.rhs = 3.0 / (2.0 * (s / 4) - 2.0);
  v.side.condition_holds = theta >= v.side.rhs;
  v.holds = v.main.condition_holds && v.side.condition_holds;
  return v;
}

BicliqueBound biclique_lowtemp_bound(int l, int r, double theta) {
  if (l < 1 || r < 2) throw std::invalid_argument("biclique_lowtemp_bound: need l >= 1 and r >= 2");
  BicliqueBound out;
  // 2(r-1) / (e^{theta l} + r - 1) written to stay finite for large theta l.
  const double x = std::exp(-theta * l);
  out.value = 1.0 - 2.0 * (r - 1) * x / (1.0 + (r - 1) * x);
  const bool cond_l = theta >= 2.0 / l;
  const bool cond_r = r > 2 ? theta >= 3.0 / (r - 2) : theta >= std::log(2.0);
  out.conditions_hold = cond_l && cond_r;
  return out;
}

double dobrushin_series_bound(const Graph& g, double theta, Edge e, int k, int l, int L) {
  if (L < 1) throw std::invalid_argument("dobrushin_series_bound: L must be at least 1");
  if (!g.has_edge(e.u, e.v)) throw std::invalid_argument("dobrushin_series_bound: the removed edge must be in G");
  const int d = g.num_vertices();
  if (k < 0 || l < 0 || k >= d || l >= d) throw std::out_of_range("dobrushin_series_bound: vertex out of range");
  const double t = std::tanh(theta);
  const int lambda = max_degree(g);
  if (!(lambda * t < 1.0)) throw std::domain_error("Dobrushin condition fails: maxdeg * tanh(theta) >= 1");
  // Rows u and v of A^j, advanced by one multiplication per term.
  std::vector<double> ru(static_cast<std::size_t>(d), 0.0), rv(static_cast<std::size_t>(d), 0.0);
  ru[e.u] = 1.0;
  rv[e.v] = 1.0;
  auto step = [&](const std::vector<double>& row) {
    std::vector<double> next(row.size(), 0.0);
    for (const Edge& f : g.edges()) {
      next[f.v] += row[f.u];
      next[f.u] += row[f.v];
    }
    return next;
  };
  CompensatedSum sum;
  double tp = t;
  for (int j = 0; j <= L; ++j) {
    sum.add(tp * (ru[k] + rv[k] + ru[l] + rv[l]));
    ru = step(ru);
    rv = step(rv);
    tp *= t;
  }
  const double q = t * lambda;
  const double tail = 8.0 * t * std::pow(q, L + 1) / (1.0 - q);
  return 2.0 * sum.value() + tail;
}

std::vector<long long> count_self_avoiding_walks(const Graph& g, int u, int v, int max_len) {
  const int d = g.num_vertices();
  if (u < 0 || v < 0 || u >= d || v >= d) throw std::out_of_range("count_self_avoiding_walks: vertex out of range");
  if (d > 16) throw std::invalid_argument("count_self_avoiding_walks: d exceeds the enumeration limit 16");
  std::vector<long long> counts(static_cast<std::size_t>(std::max(max_len, 0)) + 1, 0);
  if (max_len < 0) return counts;
  std::vector<char> on_path(static_cast<std::size_t>(d), 0);
  auto dfs = [&](auto&& self, int x, int len) -> void {
    if (x == v) {
      ++counts[len];
      return;
    }
    if (len == max_len) return;
    for (int y : g.neighbors(x)) {
      if (on_path[y]) continue;
      on_path[y] = 1;
      self(self, y, len + 1);
      on_path[y] = 0;
    }
  };
  on_path[u] = 1;
  dfs(dfs, u, 0);
  return counts;
}

double fisher_saw_bound(const Graph& g, double theta, int u, int v, int max_len) {
  const int d = g.num_vertices();
  if (u == v) return 1.0;
  const int dist = bfs_distances(g, u).at(v);
  if (dist == kUnreachable) return 0.0;
  if (max_len < dist) throw std::invalid_argument("fisher_saw_bound: max_len below the geodesic distance");
  const auto counts = count_self_avoiding_walks(g, u, v, max_len);
  const double t = std::tanh(theta);
  CompensatedSum sum;
  for (int k = dist; k <= max_len; ++k) sum.add(std::pow(t, k) * static_cast<double>(counts[k]));
  const double q = t * max_degree(g);
  for (int k = max_len + 1; k <= d - 1; ++k) sum.add(std::pow(q, k));
  return sum.value();
}

std::string format_verdict_csv(const RegimeVerdict& v) {
  std::string holds = v.applicable ? (v.condition_holds ? "true" : "false") : "na";
  return v.bound_name + "," + format_double(v.lhs) + "," + format_double(v.rhs) + "," + holds;
}

}  // namespace ising
