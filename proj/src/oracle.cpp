#include "ising/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ising/numeric.hpp"
#include "ising/parallel.hpp"
#include "ising/rng.hpp"

namespace ising {

namespace {

void check_oracle_dim(int d, const char* what) {
  if (d > kMaxOracleDim) throw std::invalid_argument(std::string(what) + ": d exceeds the enumeration limit 20");
}

// Log-probabilities of all 2^d states, indexed by bitmask (bit set means -1).
std::vector<double> log_probabilities(const IsingModel& model) {
  const int d = model.dim();
  check_oracle_dim(d, "log_probabilities");
  const auto& edges = model.graph().edges();
  const auto couplings = model.couplings();
  const std::size_t states = std::size_t{1} << d;
  std::vector<double> lw(states);
  for (std::size_t mask = 0; mask < states; ++mask) {
    CompensatedSum e;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const bool differ = ((mask >> edges[i].u) ^ (mask >> edges[i].v)) & 1U;
      e.add(differ ? -couplings[i] : couplings[i]);
    }
    lw[mask] = e.value();
  }
  const double log_z = log_sum_exp(lw);
  for (double& x : lw) x -= log_z;
  return lw;
}

WeightedGraph add_unit_edge(const WeightedGraph& wg, Edge e) {
  e = make_edge(e.u, e.v);
  if (wg.graph().has_edge(e.u, e.v)) throw std::invalid_argument("added edge is already present in the null graph");
  Graph g = wg.graph().with_edge(e);
  std::vector<double> w;
  w.reserve(g.edges().size());
  for (const Edge& f : g.edges()) w.push_back(f == e ? 1.0 : wg.weight(f.u, f.v));
  return WeightedGraph(std::move(g), std::move(w));
}

double moment_from_logs(const std::vector<double>& l0, const std::vector<double>& la, const std::vector<double>& lb) {
  std::vector<double> terms(l0.size());
  for (std::size_t i = 0; i < l0.size(); ++i) terms[i] = la[i] + lb[i] - l0[i];
  return std::exp(log_sum_exp(terms));
}

// Exact for the small arguments used here.
double binom(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

double log_rademacher_sum_prob(int k, int a) { return log_binomial(k, a) - k * std::log(2.0); }

}  // namespace

double chi2_exact(const IsingModel& p, const IsingModel& q) {
  if (p.dim() != q.dim()) throw std::invalid_argument("chi2_exact: models must share the state space");
  check_oracle_dim(p.dim(), "chi2_exact");
  const auto lp = log_probabilities(p);
  const auto lq = log_probabilities(q);
  std::vector<double> terms(lp.size());
  for (std::size_t i = 0; i < lp.size(); ++i) terms[i] = 2.0 * lp[i] - lq[i];
  return std::expm1(log_sum_exp(terms));
}

double chi2_product(double factor, int n) {
  if (n < 1) throw std::invalid_argument("chi2_product: n must be positive");
  if (!(factor > 0.0)) throw std::invalid_argument("chi2_product: factor must be positive");
  return std::expm1(n * std::log(factor));
}

double likelihood_ratio_moment(const IsingModel& null_model, const IsingModel& a, const IsingModel& b) {
  if (a.dim() != null_model.dim() || b.dim() != null_model.dim())
    throw std::invalid_argument("likelihood_ratio_moment: models must share the state space");
  return moment_from_logs(log_probabilities(null_model), log_probabilities(a), log_probabilities(b));
}

EdgeAdditionFactor edge_addition_factor(const IsingModel& null_model, Edge e_j, Edge e_k) {
  if (!null_model.is_ferromagnet()) throw std::invalid_argument("edge_addition_factor: the null must be ferromagnetic");
  check_oracle_dim(null_model.dim(), "edge_addition_factor");
  e_j = make_edge(e_j.u, e_j.v);
  e_k = make_edge(e_k.u, e_k.v);
  const double theta = null_model.theta();
  const IsingModel pj(theta, add_unit_edge(null_model.weighted_graph(), e_j));
  const IsingModel pk(theta, add_unit_edge(null_model.weighted_graph(), e_k));
  EdgeAdditionFactor out;
  out.enumerated = likelihood_ratio_moment(null_model, pj, pk);
  out.e_j = exact_pair_correlation(pj, e_k.u, e_k.v);
  out.e_0 = exact_pair_correlation(null_model, e_k.u, e_k.v);
  const double t = std::tanh(theta);
  // (E_j - E_0) / (E_0 + coth theta) = t (E_j - E_0) / (1 + t E_0), finite at theta = 0.
  out.identity = 1.0 + t * (out.e_j - out.e_0) / (1.0 + t * out.e_0);
  out.bound = 1.0 + t * (out.e_j - out.e_0);
  return out;
}

MixtureChi2 mixture_chi2(const IsingModel& null_model, const std::vector<Edge>& added, int n) {
  if (added.empty()) throw std::invalid_argument("mixture_chi2: need at least one alternative");
  if (n < 1) throw std::invalid_argument("mixture_chi2: n must be positive");
  const double theta = null_model.theta();
  const int m = static_cast<int>(added.size());
  const auto l0 = log_probabilities(null_model);
  std::vector<std::vector<double>> la;
  std::vector<double> tanh_factor;
  const double t = std::tanh(theta);
  for (const Edge& e : added) {
    const IsingModel alt(theta, add_unit_edge(null_model.weighted_graph(), e));
    la.push_back(log_probabilities(alt));
    const Edge f = make_edge(e.u, e.v);
    tanh_factor.push_back(1.0 + t * (exact_pair_correlation(alt, f.u, f.v) - exact_pair_correlation(null_model, f.u, f.v)));
  }
  CompensatedSum all, diag, tanh_diag;
  MixtureChi2 out;
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      const double f = moment_from_logs(l0, la[j], la[k]);
      all.add(std::pow(f, n));
      if (j == k) {
        diag.add(std::pow(f, n));
        tanh_diag.add(std::pow(tanh_factor[j], n));
      } else {
        out.max_offdiagonal_gap = std::max(out.max_offdiagonal_gap, std::abs(f - 1.0));
      }
    }
  }
  const double m2 = static_cast<double>(m) * m;
  out.exact = all.value() / m2 - 1.0;
  out.diagonal_formula = diag.value() / m2 - 1.0 / m;
  out.tanh_formula = tanh_diag.value() / m2 - 1.0 / m;
  return out;
}

double mixture_chi2_product_space(const IsingModel& null_model, const std::vector<Edge>& added, int n) {
  if (added.empty()) throw std::invalid_argument("mixture_chi2_product_space: need at least one alternative");
  const int d = null_model.dim();
  if (n < 1 || d * n > kMaxOracleDim)
    throw std::invalid_argument("mixture_chi2_product_space: need n >= 1 and d * n <= 20");
  const auto l0 = log_probabilities(null_model);
  std::vector<std::vector<double>> la;
  for (const Edge& e : added) la.push_back(log_probabilities(IsingModel(null_model.theta(), add_unit_edge(null_model.weighted_graph(), e))));
  const int m = static_cast<int>(added.size());
  const std::size_t block = (std::size_t{1} << d) - 1;
  const std::size_t states = std::size_t{1} << (d * n);
  std::vector<double> terms(states);
  std::vector<double> alt_terms(static_cast<std::size_t>(m));
  for (std::size_t mask = 0; mask < states; ++mask) {
    double null_log = 0.0;
    std::fill(alt_terms.begin(), alt_terms.end(), 0.0);
    for (int i = 0; i < n; ++i) {
      const std::size_t x = (mask >> (i * d)) & block;
      null_log += l0[x];
      for (int j = 0; j < m; ++j) alt_terms[j] += la[j][x];
    }
    const double mix_log = log_sum_exp(alt_terms) - std::log(static_cast<double>(m));
    terms[mask] = 2.0 * mix_log - null_log;
  }
  return std::expm1(log_sum_exp(terms));
}

void CliquePairSpec::validate() const {
  if (s < 1) throw std::invalid_argument("CliquePairSpec: s must be positive");
  if (overlap < 0 || overlap > s) throw std::invalid_argument("CliquePairSpec: overlap must lie in [0, s]");
  if (!(theta >= 0.0) || !std::isfinite(theta)) throw std::invalid_argument("CliquePairSpec: theta must be finite and >= 0");
  if (2 * s - overlap > kMaxCliquePairUnion) throw std::invalid_argument("CliquePairSpec: union exceeds 26 vertices");
}

double antiferro_log_T(const CliquePairSpec& spec) {
  spec.validate();
  const int o = spec.overlap;
  const int r = spec.s - o;
  std::vector<double> outer;
  outer.reserve(static_cast<std::size_t>(o) + 1);
  std::vector<double> inner(static_cast<std::size_t>(r) + 1);
  for (int a = 0; a <= o; ++a) {
    const int shared = 2 * a - o;
    for (int b = 0; b <= r; ++b) {
      const double total = 2 * b - r + shared;
      inner[b] = log_rademacher_sum_prob(r, b) - 0.5 * spec.theta * total * total;
    }
    outer.push_back(log_rademacher_sum_prob(o, a) + 2.0 * log_sum_exp(inner));
  }
  return spec.s * spec.theta + log_sum_exp(outer);
}

double antiferro_T(const CliquePairSpec& spec) { return std::exp(antiferro_log_T(spec)); }

double antiferro_T_enumerated(const CliquePairSpec& spec) {
  spec.validate();
  const int s = spec.s;
  const int u = 2 * s - spec.overlap;
  if (u > kMaxCliquePairEnumeration) throw std::invalid_argument("antiferro_T_enumerated: union exceeds 16 vertices");
  // V = [0, s), V' = [s - overlap, u).
  const std::size_t states = std::size_t{1} << u;
  CompensatedSum z;
  for (std::size_t mask = 0; mask < states; ++mask) {
    int sv = 0, svp = 0;
    for (int i = 0; i < u; ++i) {
      const int x = ((mask >> i) & 1U) ? -1 : 1;
      if (i < s) sv += x;
      if (i >= s - spec.overlap) svp += x;
    }
    const double ss = 0.5 * (sv * sv - s) + 0.5 * (svp * svp - s);
    z.add(std::exp(-spec.theta * ss));
  }
  return z.value() / static_cast<double>(states);
}

double antiferro_ratio(const CliquePairSpec& spec) {
  CliquePairSpec empty = spec;
  empty.overlap = 0;
  return std::exp(antiferro_log_T(spec) - antiferro_log_T(empty));
}

double antiferro_ratio_limit(int s, int overlap) {
  CliquePairSpec{s, overlap, 0.0}.validate();
  const int r = s - overlap;
  CompensatedSum sum;
  if (s % 2 == 0) {
    for (int j = 0; j <= 2 * overlap; j += 2) {
      const double c = binom(r, (s - j) / 2);
      sum.add(binom(overlap, j / 2) * c * c);
    }
    const double c = binom(s, s / 2);
    return std::ldexp(sum.value(), overlap) / (c * c);
  }
  for (int j = 0; j <= 2 * overlap; j += 2) {
    // s - 1 - j is even here, so both lower indices are integers.
    const double c = binom(r, (s - 1 - j) / 2) + binom(r, (s + 1 - j) / 2);
    sum.add(binom(overlap, j / 2) * c * c);
  }
  const double c = binom(s, (s - 1) / 2);
  return std::ldexp(sum.value(), overlap) / (4.0 * c * c);
}

MonotonicityReport ratio_monotonicity_check(int s, int overlap, const std::vector<double>& theta_grid) {
  if (!std::is_sorted(theta_grid.begin(), theta_grid.end()))
    throw std::invalid_argument("ratio_monotonicity_check: grid must be ascending");
  MonotonicityReport rep;
  const double cap = std::sqrt(2.0 * s);
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (double theta : theta_grid) {
    const double r = antiferro_ratio({s, overlap, theta});
    rep.max_ratio = std::max(rep.max_ratio, r);
    if (r > cap + 1e-12) rep.below_cap = false;
    if (!std::isnan(prev)) {
      rep.max_violation = std::max(rep.max_violation, prev - r);
      if (prev - r > 1e-10) rep.nondecreasing = false;
    }
    prev = r;
  }
  return rep;
}

void DominanceSpec::validate() const {
  if (k < 0 || k > 40) throw std::invalid_argument("DominanceSpec: k must lie in [0, 40]");
  if (h < 0) throw std::invalid_argument("DominanceSpec: h must be >= 0");
  if (!(theta_prime >= 0.0) || !(theta >= theta_prime)) throw std::invalid_argument("DominanceSpec: need theta >= theta' >= 0");
}

DominanceReport stochastic_dominance_check(const DominanceSpec& spec) {
  spec.validate();
  const int k = spec.k;
  struct Atom {
    double q;
    double w;
  };
  std::vector<Atom> left, right;
  for (int a = 0; a <= k; ++a) {
    for (int b = 0; b <= k; ++b) {
      const double sx = 2 * a - k + spec.h;
      const double sy = 2 * b - k + spec.h + 2;
      const double w = std::exp(log_rademacher_sum_prob(k, a) + log_rademacher_sum_prob(k, b));
      left.push_back({spec.theta * sy * sy + spec.theta_prime * sx * sx, w});
      right.push_back({spec.theta_prime * sy * sy + spec.theta * sx * sx, w});
    }
  }
  auto by_q = [](const Atom& x, const Atom& y) { return x.q < y.q; };
  std::sort(left.begin(), left.end(), by_q);
  std::sort(right.begin(), right.end(), by_q);
  auto prefix = [](const std::vector<Atom>& atoms) {
    std::vector<double> p(atoms.size() + 1, 0.0);
    CompensatedSum s;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      s.add(atoms[i].w);
      p[i + 1] = s.value();
    }
    return p;
  };
  const auto pl = prefix(left), pr = prefix(right);
  // Strict "< t" with a relative slack so mathematically equal atoms computed
  // along different rounding paths land on the same side.
  auto prob_below = [](const std::vector<Atom>& atoms, const std::vector<double>& p, double t) {
    const double cut = t - 1e-12 * std::max(1.0, std::abs(t));
    auto it = std::lower_bound(atoms.begin(), atoms.end(), cut, [](const Atom& x, double c) { return x.q < c; });
    return p[static_cast<std::size_t>(it - atoms.begin())];
  };

  std::vector<double> ts = spec.t_grid;
  std::vector<double> values;
  for (const Atom& x : left) values.push_back(x.q);
  for (const Atom& x : right) values.push_back(x.q);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  for (std::size_t i = 0; i < values.size(); ++i) {
    ts.push_back(values[i]);
    if (i + 1 < values.size()) ts.push_back(0.5 * (values[i] + values[i + 1]));
  }
  ts.push_back(-1.0);
  ts.push_back(0.0);
  if (!values.empty()) ts.push_back(values.back() + 1.0);

  DominanceReport rep;
  rep.max_violation = -std::numeric_limits<double>::infinity();
  for (double t : ts) {
    const double diff = prob_below(left, pl, t) - prob_below(right, pr, t);
    if (diff > rep.max_violation) {
      rep.max_violation = diff;
      rep.worst_t = t;
    }
    ++rep.points_checked;
  }
  rep.holds = rep.max_violation <= 1e-12;
  return rep;
}

GriffithsReport griffiths_edge_prune_check(const IsingModel& model) {
  if (!model.is_ferromagnet()) throw std::invalid_argument("griffiths_edge_prune_check: model must be ferromagnetic");
  if (model.dim() > 8) throw std::invalid_argument("griffiths_edge_prune_check: d exceeds 8");
  GriffithsReport rep;
  rep.instances = 1;
  const int d = model.dim();
  const CorrelationMatrix full = exact_correlation_matrix(model);
  const WeightedGraph& wg = model.weighted_graph();
  for (const Edge& e : wg.graph().edges()) {
    Graph g = wg.graph().without_edge(e);
    std::vector<double> w;
    for (const Edge& f : g.edges()) w.push_back(wg.weight(f.u, f.v));
    const CorrelationMatrix pruned = exact_correlation_matrix(IsingModel(model.theta(), WeightedGraph(std::move(g), std::move(w))));
    ++rep.edges_checked;
    for (int u = 0; u < d; ++u) {
      for (int v = u + 1; v < d; ++v) {
        const double inc = pruned(u, v) - full(u, v);
        rep.max_increase = std::max(rep.max_increase, inc);
        if (inc > 1e-12) ++rep.violations;
      }
    }
  }
  return rep;
}

GriffithsReport griffiths_sweep(int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("griffiths_sweep: trials must be positive");
  std::vector<GriffithsReport> parts(static_cast<std::size_t>(trials));
  parallel_for(parts.size(), [&](std::size_t i) {
    Rng rng(seed, {0x67726966, i});
    const int d = 2 + static_cast<int>(rng.below(7));
    std::vector<Edge> edges;
    for (int u = 0; u < d; ++u)
      for (int v = u + 1; v < d; ++v)
        if (rng.uniform() < 0.5) edges.push_back({u, v});
    if (edges.empty()) edges.push_back({0, 1});
    std::vector<double> w;
    for (std::size_t j = 0; j < edges.size(); ++j) w.push_back(0.5 + 1.5 * rng.uniform());
    const double theta = 0.05 + 1.45 * rng.uniform();
    parts[i] = griffiths_edge_prune_check(IsingModel(theta, WeightedGraph(Graph(d, edges), std::move(w))));
  });
  GriffithsReport total;
  for (const auto& p : parts) {
    total.instances += p.instances;
    total.edges_checked += p.edges_checked;
    total.violations += p.violations;
    total.max_increase = std::max(total.max_increase, p.max_increase);
  }
  return total;
}

EdgeAdditionSweep edge_addition_sweep(int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("edge_addition_sweep: trials must be positive");
  std::vector<EdgeAdditionFactor> parts(static_cast<std::size_t>(trials));
  parallel_for(parts.size(), [&](std::size_t i) {
    Rng rng(seed, {0x65646765, i});
    const int d = 3 + static_cast<int>(rng.below(5));
    std::vector<Edge> present, absent;
    for (int u = 0; u < d; ++u)
      for (int v = u + 1; v < d; ++v) (rng.uniform() < 0.4 ? present : absent).push_back({u, v});
    if (absent.empty()) {
      absent.push_back(present.back());
      present.pop_back();
    }
    std::vector<double> w;
    for (std::size_t j = 0; j < present.size(); ++j) w.push_back(0.5 + rng.uniform());
    const double theta = 0.05 + 1.45 * rng.uniform();
    const Edge ej = absent[rng.below(absent.size())];
    const Edge ek = absent[rng.below(absent.size())];
    parts[i] = edge_addition_factor(IsingModel(theta, WeightedGraph(Graph(d, present), std::move(w))), ej, ek);
  });
  EdgeAdditionSweep out;
  for (const auto& f : parts) {
    ++out.instances;
    out.max_identity_gap = std::max(out.max_identity_gap, std::abs(f.enumerated - f.identity));
    if (f.enumerated > f.bound + 1e-12) ++out.bound_violations;
  }
  return out;
}

namespace {

std::string fmt(double x) { return format_double(x); }

OracleCheck tolerance_check(const std::string& suite, const std::string& name, double error, double tol,
                            const std::string& detail) {
  return {suite, name, error <= tol, tol - error, detail};
}

// Three triangles missing one edge each on d = 9; alternatives complete one.
std::pair<IsingModel, std::vector<Edge>> triangle_family(double theta) {
  const Graph g = repeated_motif(biclique(1, 2), 9);
  std::vector<Edge> added;
  for (int b = 0; b < 3; ++b) added.push_back({3 * b + 1, 3 * b + 2});
  return {IsingModel(theta, g), added};
}

std::vector<OracleCheck> chi2_suite() {
  const std::string suite = "chi2";
  std::vector<OracleCheck> out;
  {
    const IsingModel p(0.7, cycle_graph(5));
    const double v = chi2_exact(p, p);
    out.push_back(tolerance_check(suite, "identical_models_zero", std::abs(v), 1e-12, "chi2(P,P)=" + fmt(v)));
  }
  {
    const double theta = 0.5;
    const double v = chi2_exact(IsingModel(theta, Graph(2, {{0, 1}})), IsingModel(theta, Graph(2)));
    const double expect = std::tanh(theta) * std::tanh(theta);
    out.push_back(tolerance_check(suite, "single_edge_second_moment", std::abs(v - expect), 1e-12,
                                  "chi2=" + fmt(v) + " tanh^2=" + fmt(expect)));
  }
  {
    double worst = 0.0, worst_dom = std::numeric_limits<double>::infinity();
    for (double theta : {0.1, 0.5, 1.0, 2.0}) {
      auto [null_model, added] = triangle_family(theta);
      for (int n : {1, 2, 5, 10, 20}) {
        const MixtureChi2 mc = mixture_chi2(null_model, added, n);
        worst = std::max(worst, std::abs(mc.exact - mc.diagonal_formula));
        worst_dom = std::min(worst_dom, mc.tanh_formula - mc.exact);
      }
    }
    out.push_back(tolerance_check(suite, "triangle_family_mixture_formula", worst, 1e-10,
                                  "max |exact - (1/m)F^n + 1/m| over theta,n"));
    out.push_back({suite, "triangle_family_tanh_form_dominates", worst_dom >= -1e-12, worst_dom,
                   "min (tanh form - exact)"});
  }
  {
    double worst = 0.0;
    const IsingModel null_model(0.6, path_graph(4));
    const std::vector<Edge> added = {{0, 2}, {1, 3}, {0, 3}};
    for (int n = 1; n <= 5; ++n) {
      worst = std::max(worst, std::abs(mixture_chi2(null_model, added, n).exact -
                                       mixture_chi2_product_space(null_model, added, n)));
      const std::vector<Edge> one = {{0, 2}};
      const double f = mixture_chi2(null_model, one, 1).exact + 1.0;
      worst = std::max(worst, std::abs(chi2_product(f, n) - mixture_chi2_product_space(null_model, one, n)));
    }
    out.push_back(tolerance_check(suite, "product_space_agreement", worst, 1e-10, "d=4, n<=5"));
  }
  return out;
}

std::vector<OracleCheck> edge_addition_suite(std::uint64_t seed) {
  const std::string suite = "edge_addition";
  std::vector<OracleCheck> out;
  const auto f = edge_addition_factor(IsingModel(0.5, Graph(2)), {0, 1}, {0, 1});
  const double expect = 1.0 + std::tanh(0.5) * std::tanh(0.5);
  out.push_back(tolerance_check(suite, "single_edge_empty_base", std::abs(f.enumerated - expect), 1e-12,
                                "factor=" + fmt(f.enumerated)));
  const auto sweep = edge_addition_sweep(100, seed);
  out.push_back(tolerance_check(suite, "identity_matches_enumeration", sweep.max_identity_gap, 1e-12,
                                std::to_string(sweep.instances) + " instances"));
  out.push_back({suite, "bound_never_violated", sweep.bound_violations == 0, 0.0 - sweep.bound_violations,
                 std::to_string(sweep.bound_violations) + " violations"});
  return out;
}

std::vector<OracleCheck> antiferro_suite() {
  const std::string suite = "antiferro";
  std::vector<OracleCheck> out;
  std::vector<double> grid;
  for (int i = 0; i <= 50; ++i) grid.push_back(0.1 * i);
  struct Item {
    int s, o;
  };
  std::vector<Item> items;
  for (int s = 2; s <= 8; ++s)
    for (int o = 0; o <= s; ++o) items.push_back({s, o});
  std::vector<MonotonicityReport> reps(items.size());
  std::vector<double> limit_gap(items.size());
  parallel_for(items.size(), [&](std::size_t i) {
    reps[i] = ratio_monotonicity_check(items[i].s, items[i].o, grid);
    limit_gap[i] = std::abs(antiferro_ratio({items[i].s, items[i].o, 20.0}) - antiferro_ratio_limit(items[i].s, items[i].o));
    reps[i].below_cap = reps[i].below_cap && antiferro_ratio({items[i].s, items[i].o, 20.0}) <= std::sqrt(2.0 * items[i].s) + 1e-12;
  });
  double worst_violation = 0.0, worst_limit = 0.0, worst_cap_slack = std::numeric_limits<double>::infinity();
  bool monotone = true, capped = true;
  for (std::size_t i = 0; i < items.size(); ++i) {
    monotone = monotone && reps[i].nondecreasing;
    capped = capped && reps[i].below_cap;
    worst_violation = std::max(worst_violation, reps[i].max_violation);
    worst_limit = std::max(worst_limit, limit_gap[i]);
    worst_cap_slack = std::min(worst_cap_slack, std::sqrt(2.0 * items[i].s) - reps[i].max_ratio);
  }
  out.push_back({suite, "ratio_nondecreasing", monotone, 1e-10 - worst_violation, "s<=8, all overlaps, theta in [0,5]"});
  out.push_back(tolerance_check(suite, "limit_at_theta_20", worst_limit, 1e-6, "closed form vs theta=20"));
  out.push_back({suite, "ratio_below_sqrt_2s", capped, worst_cap_slack, "min sqrt(2s) - max ratio"});
  double worst_enum = 0.0;
  for (int s = 1; s <= 8; ++s)
    for (int o = 0; o <= s; ++o) {
      if (2 * s - o > kMaxCliquePairEnumeration) continue;
      for (double theta : {0.0, 0.3, 1.0, 3.0}) {
        const CliquePairSpec spec{s, o, theta};
        const double a = antiferro_T(spec), b = antiferro_T_enumerated(spec);
        worst_enum = std::max(worst_enum, std::abs(a - b) / std::max(1.0, std::abs(b)));
      }
    }
  out.push_back(tolerance_check(suite, "sums_match_enumeration", worst_enum, 1e-12, "relative, union<=16"));
  return out;
}

std::vector<OracleCheck> dominance_suite() {
  const std::string suite = "dominance";
  std::vector<OracleCheck> out;
  const std::pair<double, double> pairs[] = {{2.0, 0.5}, {1.0, 0.9}, {0.3, 0.3}};
  for (const auto& [th, thp] : pairs) {
    double worst = -std::numeric_limits<double>::infinity();
    int points = 0;
    for (int k = 1; k <= 12; ++k)
      for (int h = 0; h <= 6; ++h) {
        const auto rep = stochastic_dominance_check({k, h, th, thp, {}});
        worst = std::max(worst, rep.max_violation);
        points += rep.points_checked;
      }
    out.push_back({suite, "theta=" + fmt(th) + " theta'=" + fmt(thp), worst <= 1e-12, 0.0 - worst,
                   std::to_string(points) + " breakpoints, k<=12, h<=6"});
  }
  return out;
}

std::vector<OracleCheck> griffiths_suite(std::uint64_t seed) {
  const auto rep = griffiths_sweep(200, seed);
  return {{"griffiths", "edge_deletion_monotone", rep.violations == 0, 1e-12 - rep.max_increase,
           std::to_string(rep.instances) + " instances, " + std::to_string(rep.edges_checked) + " deletions"}};
}

}  // namespace

std::vector<OracleCheck> run_oracle_suite(const std::string& suite, std::uint64_t seed) {
  std::vector<OracleCheck> out;
  auto append = [&](std::vector<OracleCheck> part) { out.insert(out.end(), part.begin(), part.end()); };
  const bool all = suite == "all";
  bool matched = all;
  if (all || suite == "chi2") append(chi2_suite()), matched = true;
  if (all || suite == "edge_addition") append(edge_addition_suite(seed)), matched = true;
  if (all || suite == "antiferro") append(antiferro_suite()), matched = true;
  if (all || suite == "dominance") append(dominance_suite()), matched = true;
  if (all || suite == "griffiths") append(griffiths_suite(seed)), matched = true;
  if (!matched) throw std::invalid_argument("unknown oracle suite: " + suite);
  return out;
}

std::string format_oracle_csv_header() { return "suite,name,status,margin,detail"; }

std::string format_oracle_csv(const OracleCheck& c) {
  std::string detail = c.detail;
  std::replace(detail.begin(), detail.end(), ',', ';');
  return c.suite + "," + c.name + "," + (c.passed ? "pass" : "fail") + "," + format_double(c.margin) + "," + detail;
}

}  // namespace ising
