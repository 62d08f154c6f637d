#include "ising/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace ising {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)), size_(static_cast<std::size_t>(n), 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
};

struct WeightedPair {
  double w;
  Edge e;
};

std::vector<WeightedPair> sorted_pairs(const CorrelationMatrix& m, bool use_abs, bool skip_zero) {
  std::vector<WeightedPair> pairs;
  const int d = m.dim();
  pairs.reserve(static_cast<std::size_t>(d) * static_cast<std::size_t>(d > 0 ? d - 1 : 0) / 2);
  for (int u = 0; u < d; ++u) {
    for (int v = u + 1; v < d; ++v) {
      double w = use_abs ? std::abs(m(u, v)) : m(u, v);
      if (skip_zero && w == 0.0) continue;
      pairs.push_back({w, Edge{u, v}});
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const WeightedPair& a, const WeightedPair& b) {
    if (a.w != b.w) return a.w > b.w;
    return a.e < b.e;
  });
  return pairs;
}

Graph kruskal(const CorrelationMatrix& m, bool use_abs, bool skip_zero) {
  const int d = m.dim();
  DisjointSets sets(d);
  std::vector<Edge> chosen;
  for (const auto& p : sorted_pairs(m, use_abs, skip_zero)) {
    if (sets.unite(p.e.u, p.e.v)) {
      chosen.push_back(p.e);
      if (static_cast<int>(chosen.size()) == d - 1) break;
    }
  }
  return Graph(d, chosen);
}

// Path between u and v in a forest given by adjacency lists; empty if none.
std::vector<int> tree_vertex_path(const std::vector<std::vector<int>>& adj, int u, int v) {
  const int d = static_cast<int>(adj.size());
  std::vector<int> parent(static_cast<std::size_t>(d), -1);
  std::vector<char> seen(static_cast<std::size_t>(d), 0);
  std::queue<int> q;
  q.push(u);
  seen[u] = 1;
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    if (x == v) break;
    for (int y : adj[x]) {
      if (!seen[y]) {
        seen[y] = 1;
        parent[y] = x;
        q.push(y);
      }
    }
  }
  if (!seen[v]) return {};
  std::vector<int> path;
  for (int x = v; x != -1; x = parent[x]) path.push_back(x);
  std::reverse(path.begin(), path.end());
  return path;
}

// Extends `chosen` to a clique of size `need` from `candidates` (ascending),
// using adjacency matrix `adj`. First hit in lexicographic order.
bool extend_clique(const std::vector<std::vector<char>>& adj, const std::vector<int>& candidates, std::size_t start,
                   int need, std::vector<int>& chosen) {
  if (need == 0) return true;
  for (std::size_t i = start; i < candidates.size(); ++i) {
    if (static_cast<int>(candidates.size() - i) < need) return false;
    int c = candidates[i];
    bool ok = true;
    for (int x : chosen) {
      if (!adj[x][c]) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    chosen.push_back(c);
    if (extend_clique(adj, candidates, i + 1, need - 1, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

Edge make_edge(int a, int b) {
  if (a == b) throw std::invalid_argument("self-loop (" + std::to_string(a) + "," + std::to_string(b) + ")");
  return a < b ? Edge{a, b} : Edge{b, a};
}

Graph::Graph(int d) : d_(d) {
  if (d < 0) throw std::invalid_argument("Graph: negative vertex count");
  adj_.resize(static_cast<std::size_t>(d));
}

Graph::Graph(int d, const std::vector<Edge>& edges) : Graph(d) {
  edges_.reserve(edges.size());
  for (const Edge& raw : edges) {
    Edge e = make_edge(raw.u, raw.v);
    check_vertex(e.u);
    check_vertex(e.v);
    edges_.push_back(e);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw std::invalid_argument("Graph: duplicate edge");
  }
  for (const Edge& e : edges_) {
    adj_[e.u].push_back(e.v);
    adj_[e.v].push_back(e.u);
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

void Graph::check_vertex(int u) const {
  if (u < 0 || u >= d_) {
    throw std::out_of_range("vertex " + std::to_string(u) + " outside [0," + std::to_string(d_) + ")");
  }
}

const std::vector<int>& Graph::neighbors(int u) const {
  check_vertex(u);
  return adj_[u];
}

bool Graph::has_edge(int a, int b) const { return edge_index(a, b) >= 0; }

int Graph::edge_index(int a, int b) const {
  check_vertex(a);
  check_vertex(b);
  if (a == b) return -1;
  Edge e = make_edge(a, b);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return -1;
  return static_cast<int>(it - edges_.begin());
}

Graph Graph::with_edge(Edge e) const {
  std::vector<Edge> edges = edges_;
  edges.push_back(e);
  return Graph(d_, edges);
}

Graph Graph::without_edge(Edge e) const {
  int idx = edge_index(e.u, e.v);
  if (idx < 0) throw std::invalid_argument("Graph::without_edge: edge not present");
  std::vector<Edge> edges = edges_;
  edges.erase(edges.begin() + idx);
  return Graph(d_, edges);
}

WeightedGraph::WeightedGraph(Graph g) : g_(std::move(g)), w_(static_cast<std::size_t>(g_.num_edges()), 1.0) {}

WeightedGraph::WeightedGraph(Graph g, std::vector<double> weights) : g_(std::move(g)), w_(std::move(weights)) {
  if (static_cast<int>(w_.size()) != g_.num_edges()) {
    throw std::invalid_argument("WeightedGraph: weight count does not match edge count");
  }
  for (double w : w_) {
    if (w == 0.0 || !std::isfinite(w)) {
      throw std::invalid_argument("WeightedGraph: weights must be finite and nonzero");
    }
  }
}

double WeightedGraph::weight(int a, int b) const {
  int idx = g_.edge_index(a, b);
  return idx < 0 ? 0.0 : w_[idx];
}

bool WeightedGraph::is_ferromagnetic() const {
  return std::all_of(w_.begin(), w_.end(), [](double w) { return w > 0.0; });
}

bool WeightedGraph::is_unit() const {
  return std::all_of(w_.begin(), w_.end(), [](double w) { return w == 1.0; });
}

int max_degree(const Graph& g) {
  int best = 0;
  for (int u = 0; u < g.num_vertices(); ++u) best = std::max(best, g.degree(u));
  return best;
}

std::vector<int> bfs_distances(const Graph& g, int src) {
  std::vector<int> dist(static_cast<std::size_t>(g.num_vertices()), kUnreachable);
  dist.at(src) = 0;
  std::queue<int> q;
  q.push(src);
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (int y : g.neighbors(x)) {
      if (dist[y] == kUnreachable) {
        dist[y] = dist[x] + 1;
        q.push(y);
      }
    }
  }
  return dist;
}

int edge_geodesic_predistance(const Graph& g, const EdgePair& p) {
  const int d = g.num_vertices();
  for (int x : {p.e.u, p.e.v, p.e_prime.u, p.e_prime.v}) {
    if (x < 0 || x >= d) throw std::out_of_range("edge_geodesic_predistance: vertex out of range");
  }
  int best = kUnreachable;
  for (int a : {p.e.u, p.e.v}) {
    auto dist = bfs_distances(g, a);
    best = std::min({best, dist[p.e_prime.u], dist[p.e_prime.v]});
  }
  return best;
}

namespace {

// conflict[i][j] is true when candidates i and j are closer than r.
std::vector<std::vector<char>> conflict_matrix(const Graph& g, const std::vector<Edge>& cand, int r) {
  const std::size_t k = cand.size();
  std::vector<std::vector<int>> dist(static_cast<std::size_t>(g.num_vertices()));
  auto dist_from = [&](int x) -> const std::vector<int>& {
    if (dist[x].empty()) dist[x] = bfs_distances(g, x);
    return dist[x];
  };
  std::vector<std::vector<char>> conflict(k, std::vector<char>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      int best = kUnreachable;
      for (int a : {cand[i].u, cand[i].v}) {
        const auto& da = dist_from(a);
        best = std::min({best, da[cand[j].u], da[cand[j].v]});
      }
      conflict[i][j] = conflict[j][i] = best < r ? 1 : 0;
    }
  }
  return conflict;
}

}  // namespace

bool is_valid_packing(const Graph& g, const std::vector<Edge>& packing, int r) {
  auto conflict = conflict_matrix(g, packing, r);
  for (std::size_t i = 0; i < packing.size(); ++i) {
    for (std::size_t j = i + 1; j < packing.size(); ++j) {
      if (conflict[i][j]) return false;
    }
  }
  return true;
}

std::vector<Edge> greedy_packing(const Graph& g, const std::vector<Edge>& candidates, int r) {
  if (r < 0) throw std::invalid_argument("greedy_packing: r must be nonnegative");
  if (r == 0) return candidates;
  // Distances only from endpoints of kept edges, so cost scales with the output.
  std::vector<Edge> kept;
  std::vector<std::vector<int>> kept_dist;
  for (const Edge& c : candidates) {
    bool ok = true;
    for (const auto& dist : kept_dist) {
      if (dist[c.u] < r || dist[c.v] < r) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    kept.push_back(c);
    auto du = bfs_distances(g, c.u);
    auto dv = bfs_distances(g, c.v);
    for (std::size_t i = 0; i < du.size(); ++i) du[i] = std::min(du[i], dv[i]);
    kept_dist.push_back(std::move(du));
  }
  if (!is_valid_packing(g, kept, r)) throw std::logic_error("greedy_packing: produced an invalid packing");
  return kept;
}

std::vector<Edge> exact_max_packing(const Graph& g, const std::vector<Edge>& candidates, int r) {
  if (candidates.size() > 20) throw std::invalid_argument("exact_max_packing: more than 20 candidates");
  if (r < 0) throw std::invalid_argument("exact_max_packing: r must be nonnegative");
  const auto conflict = conflict_matrix(g, candidates, r);
  const std::size_t k = candidates.size();
  std::vector<std::size_t> current, best;
  std::function<void(std::size_t)> search = [&](std::size_t i) {
    if (current.size() + (k - i) <= best.size()) return;
    if (i == k) {
      best = current;
      return;
    }
    bool ok = std::none_of(current.begin(), current.end(), [&](std::size_t j) { return conflict[i][j]; });
    if (ok) {
      current.push_back(i);
      search(i + 1);
      current.pop_back();
    }
    search(i + 1);
  };
  search(0);
  std::vector<Edge> out;
  for (std::size_t i : best) out.push_back(candidates[i]);
  return out;
}

bool is_connected(const Graph& g) {
  if (g.num_vertices() <= 1) return true;
  auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](int x) { return x == kUnreachable; });
}

bool is_forest(const Graph& g) {
  DisjointSets sets(g.num_vertices());
  for (const Edge& e : g.edges()) {
    if (!sets.unite(e.u, e.v)) return false;
  }
  return true;
}

bool has_m_clique(const Graph& g, int m) {
  if (m < 2) throw std::invalid_argument("has_m_clique: m must be at least 2");
  const int d = g.num_vertices();
  if (m > d) return false;
  if (m == 2) return g.num_edges() > 0;
  std::vector<std::vector<char>> adj(static_cast<std::size_t>(d), std::vector<char>(static_cast<std::size_t>(d), 0));
  for (const Edge& e : g.edges()) adj[e.u][e.v] = adj[e.v][e.u] = 1;
  for (const Edge& e : g.edges()) {
    std::vector<int> common;
    for (int x : g.neighbors(e.u)) {
      if (x > e.v && adj[e.v][x]) common.push_back(x);
    }
    std::vector<int> chosen;
    if (extend_clique(adj, common, 0, m - 2, chosen)) return true;
  }
  return false;
}

Graph max_weight_spanning_forest(const CorrelationMatrix& m) { return kruskal(m, false, true); }
Graph max_weight_spanning_tree(const CorrelationMatrix& m) { return kruskal(m, false, false); }
Graph max_abs_weight_spanning_tree(const CorrelationMatrix& m) { return kruskal(m, true, false); }

std::vector<Edge> edges_by_descending_weight(const CorrelationMatrix& m) {
  std::vector<Edge> out;
  for (const auto& p : sorted_pairs(m, false, false)) out.push_back(p.e);
  return out;
}

std::vector<Edge> first_cycle_by_weight(const CorrelationMatrix& m) {
  const int d = m.dim();
  if (d < 3) throw std::domain_error("no cycle: fewer than 3 vertices");
  DisjointSets sets(d);
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(d));
  for (const Edge& e : edges_by_descending_weight(m)) {
    if (sets.unite(e.u, e.v)) {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
      continue;
    }
    auto path = tree_vertex_path(adj, e.u, e.v);
    std::vector<Edge> cycle;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) cycle.push_back(make_edge(path[i], path[i + 1]));
    cycle.push_back(e);
    std::sort(cycle.begin(), cycle.end());
    return cycle;
  }
  throw std::domain_error("no cycle");
}

std::vector<int> first_m_clique_by_weight(const CorrelationMatrix& m, int m_size) {
  const int d = m.dim();
  if (m_size < 3) throw std::invalid_argument("first_m_clique_by_weight: clique size must be at least 3");
  if (d < m_size) throw std::invalid_argument("first_m_clique_by_weight: clique size exceeds dimension");
  std::vector<std::vector<char>> adj(static_cast<std::size_t>(d), std::vector<char>(static_cast<std::size_t>(d), 0));
  for (const Edge& e : edges_by_descending_weight(m)) {
    adj[e.u][e.v] = adj[e.v][e.u] = 1;
    std::vector<int> common;
    for (int x = 0; x < d; ++x) {
      if (adj[e.u][x] && adj[e.v][x]) common.push_back(x);
    }
    std::vector<int> chosen;
    if (extend_clique(adj, common, 0, m_size - 2, chosen)) {
      chosen.push_back(e.u);
      chosen.push_back(e.v);
      std::sort(chosen.begin(), chosen.end());
      return chosen;
    }
  }
  throw std::domain_error("no m-clique");
}

std::optional<std::vector<Edge>> forest_path(const Graph& t, int u, int v) {
  if (!is_forest(t)) throw std::invalid_argument("forest_path: graph has a cycle");
  t.neighbors(u);
  t.neighbors(v);
  if (u == v) return std::vector<Edge>{};
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(t.num_vertices()));
  for (int x = 0; x < t.num_vertices(); ++x) adj[x] = t.neighbors(x);
  auto path = tree_vertex_path(adj, u, v);
  if (path.empty()) return std::nullopt;
  std::vector<Edge> out;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) out.push_back(make_edge(path[i], path[i + 1]));
  return out;
}

RungConstruction two_cycles_with_rungs(int d) {
  if (d < 6) throw std::invalid_argument("two_cycles_with_rungs: d must be at least 6");
  const int half = d / 2;
  std::vector<Edge> edges;
  for (int j = 0; j + 1 < half; ++j) edges.push_back({j, j + 1});
  edges.push_back({0, half - 1});
  for (int j = half; j + 1 < d; ++j) edges.push_back({j, j + 1});
  edges.push_back({half, d - 1});
  RungConstruction out{Graph(d, edges), {}};
  for (int j = 0; j < half; ++j) out.rungs.push_back({j, half + j});
  return out;
}

Graph repeated_motif(const Graph& h0, int d, std::optional<MotifPlacement> extra) {
  const int k = h0.num_vertices();
  if (k < 1 || d < k) throw std::invalid_argument("repeated_motif: d smaller than the motif");
  const int copies = d / k;
  std::vector<Edge> edges;
  for (int c = 0; c < copies; ++c) {
    for (const Edge& e : h0.edges()) edges.push_back({c * k + e.u, c * k + e.v});
  }
  if (extra) {
    if (extra->block < 0 || extra->block >= copies) throw std::invalid_argument("repeated_motif: block out of range");
    Edge e = make_edge(extra->edge.u, extra->edge.v);
    if (e.u < 0 || e.v >= k || h0.has_edge(e.u, e.v)) {
      throw std::invalid_argument("repeated_motif: extra edge must be a non-edge of the motif");
    }
    edges.push_back({extra->block * k + e.u, extra->block * k + e.v});
  }
  return Graph(d, edges);
}

TuranConstruction turan_h0(int s, int m) {
  if (m < 3 || s < m - 1) throw std::invalid_argument("turan_h0: need m >= 3 and m <= s + 1");
  const int k = (s - 1) / (m - 2);
  const int parts = m - 1;
  const int n = k * parts + 1;
  std::vector<int> part_of(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) part_of[x] = std::min(x / k, parts - 1);
  std::vector<Edge> edges;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (part_of[a] != part_of[b]) edges.push_back({a, b});
    }
  }
  TuranConstruction out;
  out.h0 = Graph(n, edges);
  out.designated = {(parts - 1) * k, (parts - 1) * k + 1};
  out.biclique_left = k * ((m - 1) / 2);
  out.biclique_right = n - out.biclique_left;
  return out;
}

CliqueChain clique_chain_with_path(int d, int s) {
  if (s < 4) throw std::invalid_argument("clique_chain_with_path: s must be at least 4");
  if (d < 3 * s) throw std::invalid_argument("clique_chain_with_path: need d >= 3s");
  const int cliques = d / s - 1;
  std::vector<Edge> edges;
  for (int c = 0; c < cliques; ++c) {
    for (int a = 0; a < s; ++a) {
      for (int b = a + 1; b < s; ++b) edges.push_back({c * s + a, c * s + b});
    }
    if (c > 0) edges.push_back({c * s - 1, c * s});
  }
  const int path_start = cliques * s;
  for (int x = path_start; x + 1 < d; ++x) edges.push_back({x, x + 1});
  CliqueChain out;
  out.num_cliques = cliques;
  out.null_model = WeightedGraph(Graph(d, edges));
  edges.push_back({1, path_start});
  edges.push_back({2, path_start});
  Graph g(d, edges);
  std::vector<double> aligned(static_cast<std::size_t>(g.num_edges()), 1.0);
  aligned[g.edge_index(2, path_start)] = -1.0;
  out.alternative_model = WeightedGraph(g, aligned);
  return out;
}

Graph biclique(int l, int r) {
  if (l < 1 || r < 1) throw std::invalid_argument("biclique: sides must be nonempty");
  std::vector<Edge> edges;
  for (int a = 0; a < l; ++a) {
    for (int b = 0; b < r; ++b) edges.push_back({a, l + b});
  }
  return Graph(l + r, edges);
}

Graph clique_graph(int d, const std::vector<int>& vertices) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) edges.push_back(make_edge(vertices[i], vertices[j]));
  }
  return Graph(d, edges);
}

Graph path_graph(int d) {
  std::vector<Edge> edges;
  for (int j = 0; j + 1 < d; ++j) edges.push_back({j, j + 1});
  return Graph(d, edges);
}

Graph cycle_graph(int d) {
  if (d < 3) throw std::invalid_argument("cycle_graph: d must be at least 3");
  Graph p = path_graph(d);
  return p.with_edge({0, d - 1});
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_graph(std::ostream& os, const Graph& g) {
  os << "d=" << g.num_vertices() << '\n';
  for (const Edge& e : g.edges()) os << e.u + 1 << ' ' << e.v + 1 << '\n';
}

void write_weighted_graph(std::ostream& os, const WeightedGraph& wg) {
  os << "d=" << wg.num_vertices() << '\n';
  const auto& edges = wg.graph().edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    os << edges[i].u + 1 << ' ' << edges[i].v + 1 << ' ' << format_double(wg.weights()[i]) << '\n';
  }
}

WeightedGraph read_weighted_graph(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("d=", 0) != 0) {
    throw std::runtime_error("graph file: missing 'd=<int>' header");
  }
  const int d = std::stoi(line.substr(2));
  std::vector<Edge> edges;
  std::vector<double> weights;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    int a = 0, b = 0;
    if (!(ls >> a >> b)) throw std::runtime_error("graph file: bad edge at line " + std::to_string(lineno));
    double w = 1.0;
    if (!(ls >> w)) w = 1.0;
    if (a < 1 || b < 1 || a > d || b > d) {
      throw std::runtime_error("graph file: vertex out of range at line " + std::to_string(lineno));
    }
    edges.push_back(make_edge(a - 1, b - 1));
    weights.push_back(w);
  }
  Graph g(d, edges);
  std::vector<double> aligned(weights.size());
  for (std::size_t i = 0; i < edges.size(); ++i) aligned[g.edge_index(edges[i].u, edges[i].v)] = weights[i];
  return WeightedGraph(g, aligned);
}

Graph read_graph(std::istream& is) { return read_weighted_graph(is).graph(); }

}  // namespace ising
