#include "ising/ising_model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ising/numeric.hpp"
#include "ising/rng.hpp"

namespace ising {

namespace {

struct Neighbor {
  int v;
  double j;
};

std::vector<std::vector<Neighbor>> coupling_lists(const IsingModel& model) {
  std::vector<std::vector<Neighbor>> adj(static_cast<std::size_t>(model.dim()));
  const auto& edges = model.graph().edges();
  const auto j = model.couplings();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    adj[edges[i].u].push_back({edges[i].v, j[i]});
    adj[edges[i].v].push_back({edges[i].u, j[i]});
  }
  return adj;
}

void check_exact_dim(const IsingModel& model, int limit, const char* what) {
  if (model.dim() > limit) {
    throw std::invalid_argument(std::string(what) + ": d=" + std::to_string(model.dim()) + " exceeds the limit " +
                                std::to_string(limit));
  }
  if (model.dim() < 1) throw std::invalid_argument(std::string(what) + ": empty model");
}

// Visits the 2^(d-1) states with x_0 = +1 in Gray-code order, passing the
// state mask (bit u set means x_u = -1) and its log-weight.
template <typename F>
void for_each_half_state(const IsingModel& model, F&& visit) {
  const int d = model.dim();
  const auto adj = coupling_lists(model);
  const auto& edges = model.graph().edges();
  const auto j = model.couplings();
  std::vector<int> x(static_cast<std::size_t>(d), 1);
  std::vector<double> field(static_cast<std::size_t>(d), 0.0);
  for (int u = 0; u < d; ++u) {
    for (const auto& nb : adj[u]) field[u] += nb.j;
  }
  double energy = 0.0;
  for (double c : j) energy += c;
  auto recompute = [&]() {
    CompensatedSum s;
    for (std::size_t i = 0; i < edges.size(); ++i) s.add(j[i] * x[edges[i].u] * x[edges[i].v]);
    energy = s.value();
  };
  std::uint64_t mask = 0;
  const std::uint64_t count = std::uint64_t{1} << (d - 1);
  visit(mask, energy);
  for (std::uint64_t i = 1; i < count; ++i) {
    const int b = std::countr_zero(i) + 1;
    energy -= 2.0 * x[b] * field[b];
    x[b] = -x[b];
    mask ^= std::uint64_t{1} << b;
    for (const auto& nb : adj[b]) field[nb.v] += 2.0 * nb.j * x[b];
    if ((i & 0xfff) == 0) recompute();
    visit(mask, energy);
  }
}

double max_half_energy(const IsingModel& model) {
  double mx = -std::numeric_limits<double>::infinity();
  for_each_half_state(model, [&](std::uint64_t, double e) { mx = std::max(mx, e); });
  return mx;
}

// Normalized probabilities over the half space, indexed by mask >> 1.
std::vector<double> half_probabilities(const IsingModel& model) {
  const int d = model.dim();
  const double shift = max_half_energy(model);
  std::vector<double> p(std::size_t{1} << (d - 1));
  CompensatedSum total;
  for_each_half_state(model, [&](std::uint64_t mask, double e) {
    double w = std::exp(e - shift);
    p[mask >> 1] = w;
    total.add(w);
  });
  const double z = total.value();
  for (double& w : p) w /= z;
  return p;
}

void walsh_hadamard(std::vector<double>& a) {
  const std::size_t n = a.size();
  for (std::size_t len = 1; len < n; len <<= 1) {
    for (std::size_t i = 0; i < n; i += len << 1) {
      for (std::size_t k = i; k < i + len; ++k) {
        double x = a[k];
        double y = a[k + len];
        a[k] = x + y;
        a[k + len] = x - y;
      }
    }
  }
}

}  // namespace

IsingModel::IsingModel(double theta, WeightedGraph wg) : theta_(theta), wg_(std::move(wg)) {
  if (!(theta >= 0.0) || !std::isfinite(theta)) throw std::invalid_argument("IsingModel: theta must be finite and >= 0");
}

std::vector<double> IsingModel::couplings() const {
  std::vector<double> out = wg_.weights();
  for (double& w : out) w *= theta_;
  return out;
}

bool IsingModel::within_general_bounds(double Theta) const {
  if (theta_ <= 0.0) return false;
  const double hi = Theta / theta_;
  return std::all_of(wg_.weights().begin(), wg_.weights().end(), [&](double w) {
    double a = std::abs(w);
    return a >= 1.0 && a <= hi * (1.0 + 1e-12);
  });
}

std::string to_string(SamplerTag tag) { return tag == SamplerTag::exact ? "exact" : "gibbs"; }

SamplerTag sampler_from_string(const std::string& s) {
  if (s == "exact") return SamplerTag::exact;
  if (s == "gibbs") return SamplerTag::gibbs;
  throw std::invalid_argument("unknown sampler tag '" + s + "'");
}

SampleBatch::SampleBatch(int n, int d, std::vector<std::int8_t> spins, std::uint64_t seed, SamplerTag tag)
    : n_(n), d_(d), spins_(std::move(spins)), seed_(seed), tag_(tag) {
  if (n < 1 || d < 1) throw std::invalid_argument("SampleBatch: n and d must be positive");
  if (spins_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(d)) {
    throw std::invalid_argument("SampleBatch: spin count does not match n*d");
  }
  for (std::int8_t s : spins_) {
    if (s != 1 && s != -1) throw std::invalid_argument("SampleBatch: entries must be +1 or -1");
  }
}

void write_batch(std::ostream& os, const SampleBatch& batch) {
  os << "n=" << batch.n() << " d=" << batch.d() << " seed=" << batch.seed() << " sampler=" << to_string(batch.sampler())
     << '\n';
  for (int i = 0; i < batch.n(); ++i) {
    for (int u = 0; u < batch.d(); ++u) {
      if (u) os << ' ';
      os << (batch(i, u) > 0 ? "+1" : "-1");
    }
    os << '\n';
  }
}

SampleBatch read_batch(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw std::runtime_error("batch file: missing header");
  std::istringstream hs(header);
  long long n = -1, d = -1;
  std::uint64_t seed = 0;
  std::string tag;
  bool have_seed = false;
  std::string field;
  while (hs >> field) {
    auto eq = field.find('=');
    if (eq == std::string::npos) throw std::runtime_error("batch file: malformed header field '" + field + "'");
    std::string key = field.substr(0, eq), val = field.substr(eq + 1);
    if (key == "n") {
      n = std::stoll(val);
    } else if (key == "d") {
      d = std::stoll(val);
    } else if (key == "seed") {
      seed = std::stoull(val);
      have_seed = true;
    } else if (key == "sampler") {
      tag = val;
    } else {
      throw std::runtime_error("batch file: unknown header key '" + key + "'");
    }
  }
  if (n < 1 || d < 1 || !have_seed || tag.empty()) throw std::runtime_error("batch file: incomplete header");
  std::vector<std::int8_t> spins;
  spins.reserve(static_cast<std::size_t>(n * d));
  std::string tok;
  for (long long k = 0; k < n * d; ++k) {
    if (!(is >> tok)) throw std::runtime_error("batch file: fewer entries than n*d");
    if (tok == "+1" || tok == "1") {
      spins.push_back(1);
    } else if (tok == "-1") {
      spins.push_back(-1);
    } else {
      throw std::runtime_error("batch file: entry '" + tok + "' is not +1 or -1");
    }
  }
  if (is >> tok) throw std::runtime_error("batch file: more entries than n*d");
  return SampleBatch(static_cast<int>(n), static_cast<int>(d), std::move(spins), seed, sampler_from_string(tag));
}

double log_weight(const IsingModel& model, const std::vector<int>& x) {
  if (static_cast<int>(x.size()) != model.dim()) throw std::invalid_argument("log_weight: dimension mismatch");
  const auto& edges = model.graph().edges();
  const auto& w = model.weighted_graph().weights();
  CompensatedSum s;
  for (std::size_t i = 0; i < edges.size(); ++i) s.add(w[i] * x[edges[i].u] * x[edges[i].v]);
  return model.theta() * s.value();
}

double log_partition_function(const IsingModel& model) {
  check_exact_dim(model, kMaxExactDim, "log_partition_function");
  const double shift = max_half_energy(model);
  CompensatedSum total;
  for_each_half_state(model, [&](std::uint64_t, double e) { total.add(std::exp(e - shift)); });
  return std::log(2.0) + shift + std::log(total.value());
}

double exact_pair_correlation(const IsingModel& model, int u, int v) {
  check_exact_dim(model, kMaxExactDim, "exact_pair_correlation");
  const int d = model.dim();
  if (u < 0 || v < 0 || u >= d || v >= d) throw std::out_of_range("exact_pair_correlation: vertex out of range");
  if (u == v) return 1.0;
  const double shift = max_half_energy(model);
  CompensatedSum total, signed_total;
  for_each_half_state(model, [&](std::uint64_t mask, double e) {
    double w = std::exp(e - shift);
    total.add(w);
    bool differ = ((mask >> u) ^ (mask >> v)) & 1U;
    signed_total.add(differ ? -w : w);
  });
  return signed_total.value() / total.value();
}

CorrelationMatrix exact_correlation_matrix(const IsingModel& model) {
  check_exact_dim(model, kMaxExactDim, "exact_correlation_matrix");
  const int d = model.dim();
  CorrelationMatrix m(d);
  if (d == 1) return m;
  // Transform of the half-space law: entry at mask S is E[prod_{u in S} x_u | x_0 = +1].
  auto p = half_probabilities(model);
  walsh_hadamard(p);
  auto clamp = [](double x) { return std::clamp(x, -1.0, 1.0); };
  for (int v = 1; v < d; ++v) m.set(0, v, clamp(p[std::size_t{1} << (v - 1)]));
  for (int u = 1; u < d; ++u) {
    for (int v = u + 1; v < d; ++v) m.set(u, v, clamp(p[(std::size_t{1} << (u - 1)) | (std::size_t{1} << (v - 1))]));
  }
  return m;
}

std::vector<double> exact_state_probabilities(const IsingModel& model) {
  check_exact_dim(model, kMaxExactSampleDim, "exact_state_probabilities");
  const int d = model.dim();
  auto half = half_probabilities(model);
  const std::size_t full = std::size_t{1} << d;
  std::vector<double> p(full);
  for (std::size_t h = 0; h < half.size(); ++h) {
    std::size_t mask = h << 1;
    p[mask] = 0.5 * half[h];
    p[(full - 1) ^ mask] = 0.5 * half[h];
  }
  return p;
}

double path_correlation_formula(double theta, const std::vector<double>& weights) {
  double out = 1.0;
  for (double w : weights) out *= std::tanh(theta * w);
  return out;
}

double curie_weiss_log_partition(int m, double theta) {
  if (m < 1) throw std::invalid_argument("curie_weiss_log_partition: m must be positive");
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(m) + 1);
  for (int k = 0; k <= m; ++k) {
    double mag = m - 2.0 * k;
    terms.push_back(log_binomial(m, k) + theta * (mag * mag - m) / 2.0);
  }
  return log_sum_exp(terms);
}

double curie_weiss_correlation_sums(int m, double theta) {
  if (m < 2) throw std::invalid_argument("curie_weiss_correlation: m must be at least 2");
  if (theta < 0.0) throw std::invalid_argument("curie_weiss_correlation: theta must be >= 0");
  // Fix x_1 = +1; x_2 = +1 (aligned) or -1 (anti), k minus spins among the rest.
  std::vector<double> aligned, anti;
  const int rest = m - 2;
  for (int k = 0; k <= rest; ++k) {
    double lb = log_binomial(rest, k);
    double tail = rest - 2.0 * k;
    aligned.push_back(lb + theta * ((tail + 2.0) * (tail + 2.0) - m) / 2.0);
    anti.push_back(lb + theta * (tail * tail - m) / 2.0);
  }
  return std::tanh((log_sum_exp(aligned) - log_sum_exp(anti)) / 2.0);
}

namespace {

// log E cosh^k(a Z + b), Z ~ N(0,1), by Gauss-Hermite.
double log_mean_cosh_power(const GaussHermiteRule& rule, int k, double a, double b) {
  std::vector<double> terms;
  terms.reserve(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    double y = a * std::sqrt(2.0) * rule.nodes[i] + b;
    terms.push_back(std::log(rule.weights[i]) + k * log_cosh(y));
  }
  return log_sum_exp(terms) - 0.5 * std::log(std::numbers::pi);
}

}  // namespace

double curie_weiss_ratio_quadrature(int m, double theta, int nodes) {
  if (m < 2) throw std::invalid_argument("curie_weiss_ratio: m must be at least 2");
  if (theta < 0.0) throw std::invalid_argument("curie_weiss_ratio: theta must be >= 0");
  const auto rule = gauss_hermite(nodes);
  const double a = std::sqrt(theta);
  return std::exp(2.0 * theta + log_mean_cosh_power(rule, m - 2, a, 2.0 * theta) -
                  log_mean_cosh_power(rule, m - 2, a, 0.0));
}

double curie_weiss_correlation_quadrature(int m, double theta, int nodes) {
  if (m < 2) throw std::invalid_argument("curie_weiss_correlation: m must be at least 2");
  if (theta < 0.0) throw std::invalid_argument("curie_weiss_correlation: theta must be >= 0");
  const auto rule = gauss_hermite(nodes);
  const double a = std::sqrt(theta);
  // (r - 1) / (r + 1) = tanh(log(r) / 2)
  const double log_r =
      2.0 * theta + log_mean_cosh_power(rule, m - 2, a, 2.0 * theta) - log_mean_cosh_power(rule, m - 2, a, 0.0);
  return std::tanh(log_r / 2.0);
}

double curie_weiss_edge_correlation(int m, double theta) {
  const double sums = curie_weiss_correlation_sums(m, theta);
  const double quad = curie_weiss_correlation_quadrature(m, theta);
  if (std::abs(sums - quad) > 1e-8) {
    throw std::runtime_error("curie_weiss_edge_correlation: magnetization sums and quadrature disagree (" +
                             format_double(sums) + " vs " + format_double(quad) + ")");
  }
  return sums;
}

SampleBatch gibbs_sample(const IsingModel& model, int n, std::uint64_t seed, const GibbsOptions& opts) {
  if (n < 1) throw std::invalid_argument("gibbs_sample: n must be positive");
  const int d = model.dim();
  const int burn_in = opts.burn_in < 0 ? 100 * d : opts.burn_in;
  const int thin = std::max(opts.thin, 1);
  const auto adj = coupling_lists(model);
  std::vector<std::int8_t> out;
  out.reserve(static_cast<std::size_t>(n) * d);
  std::vector<int> x(static_cast<std::size_t>(d));

  auto sweep = [&](Rng& rng) {
    for (int u = 0; u < d; ++u) {
      double h = 0.0;
      for (const auto& nb : adj[u]) h += nb.j * x[nb.v];
      // P(x_u = +1 | rest) = 1 / (1 + exp(-2h))
      double p_plus = 1.0 / (1.0 + std::exp(-2.0 * h));
      x[u] = rng.uniform() < p_plus ? 1 : -1;
    }
  };
  auto init = [&](Rng& rng) {
    for (int u = 0; u < d; ++u) x[u] = rng.spin();
  };
  auto emit = [&]() {
    for (int u = 0; u < d; ++u) out.push_back(static_cast<std::int8_t>(x[u]));
  };

  if (opts.independent_chains) {
    for (int i = 0; i < n; ++i) {
      Rng rng(seed, {static_cast<std::uint64_t>(i)});
      init(rng);
      for (int s = 0; s < burn_in + thin; ++s) sweep(rng);
      emit();
    }
  } else {
    Rng rng(seed, {0x6769626273ULL});
    init(rng);
    for (int s = 0; s < burn_in; ++s) sweep(rng);
    for (int i = 0; i < n; ++i) {
      for (int s = 0; s < thin; ++s) sweep(rng);
      emit();
    }
  }
  return SampleBatch(n, d, std::move(out), seed, SamplerTag::gibbs);
}

ExactSampler::ExactSampler(const IsingModel& model) : d_(model.dim()) {
  auto p = exact_state_probabilities(model);
  cdf_.resize(p.size());
  CompensatedSum s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    s.add(p[i]);
    cdf_[i] = s.value();
  }
  const double total = cdf_.back();
  for (double& c : cdf_) c /= total;
  cdf_.back() = 1.0;
}

SampleBatch ExactSampler::sample(int n, std::uint64_t seed) const {
  if (n < 1) throw std::invalid_argument("exact_sample: n must be positive");
  Rng rng(seed, {0x6578616374ULL});
  std::vector<std::int8_t> out;
  out.reserve(static_cast<std::size_t>(n) * d_);
  for (int i = 0; i < n; ++i) {
    double u = rng.uniform();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    std::size_t mask = static_cast<std::size_t>(it - cdf_.begin());
    if (mask >= cdf_.size()) mask = cdf_.size() - 1;
    for (int v = 0; v < d_; ++v) out.push_back(((mask >> v) & 1U) ? -1 : 1);
  }
  return SampleBatch(n, d_, std::move(out), seed, SamplerTag::exact);
}

SampleBatch exact_sample(const IsingModel& model, int n, std::uint64_t seed) {
  return ExactSampler(model).sample(n, seed);
}

CorrelationMatrix empirical_correlations(const SampleBatch& batch) {
  const int d = batch.d();
  const int n = batch.n();
  // Integer counts keep the result exact and order independent.
  std::vector<long long> acc(static_cast<std::size_t>(d) * d, 0);
  for (int i = 0; i < n; ++i) {
    const std::int8_t* x = batch.row(i);
    for (int u = 0; u < d; ++u) {
      const int xu = x[u];
      long long* row = acc.data() + static_cast<std::size_t>(u) * d;
      for (int v = u + 1; v < d; ++v) row[v] += xu * x[v];
    }
  }
  CorrelationMatrix m(d);
  for (int u = 0; u < d; ++u) {
    for (int v = u + 1; v < d; ++v) m.set(u, v, static_cast<double>(acc[static_cast<std::size_t>(u) * d + v]) / n);
  }
  return m;
}

}  // namespace ising
