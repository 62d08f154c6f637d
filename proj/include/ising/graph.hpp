#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ising/correlation_matrix.hpp"

namespace ising {

// Vertices are 0-based everywhere in the library; file formats are 1-based.
struct Edge {
  int u = 0;
  int v = 0;
  auto operator<=>(const Edge&) const = default;
};

// Orders the endpoints; throws std::invalid_argument on a self-loop.
Edge make_edge(int a, int b);

struct EdgePair {
  Edge e;
  Edge e_prime;
};

class Graph {
 public:
  Graph() = default;
  explicit Graph(int d);
  // Edges may be given in any orientation; duplicates are rejected.
  Graph(int d, const std::vector<Edge>& edges);

  int num_vertices() const { return d_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  // Sorted lexicographically.
  const std::vector<Edge>& edges() const { return edges_; }
  // Sorted ascending.
  const std::vector<int>& neighbors(int u) const;
  int degree(int u) const { return static_cast<int>(neighbors(u).size()); }
  bool has_edge(int a, int b) const;
  // Position of the edge in edges(), or -1.
  int edge_index(int a, int b) const;

  Graph with_edge(Edge e) const;
  Graph without_edge(Edge e) const;

  bool operator==(const Graph& other) const { return d_ == other.d_ && edges_ == other.edges_; }

 private:
  void check_vertex(int u) const;

  int d_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
};

// Graph plus one real weight per edge, aligned with graph().edges().
class WeightedGraph {
 public:
  WeightedGraph() = default;
  // All weights 1.
  explicit WeightedGraph(Graph g);
  WeightedGraph(Graph g, std::vector<double> weights);

  const Graph& graph() const { return g_; }
  int num_vertices() const { return g_.num_vertices(); }
  const std::vector<double>& weights() const { return w_; }
  // 0 when the edge is absent.
  double weight(int a, int b) const;
  bool is_ferromagnetic() const;
  bool is_unit() const;

 private:
  Graph g_;
  std::vector<double> w_;
};

inline constexpr int kUnreachable = std::numeric_limits<int>::max();

int max_degree(const Graph& g);

// BFS distances from src; kUnreachable for other components.
std::vector<int> bfs_distances(const Graph& g, int src);

// Minimum geodesic distance over the four endpoint pairs; kUnreachable if none.
int edge_geodesic_predistance(const Graph& g, const EdgePair& p);

// Scans candidates in order, keeping each edge at pre-distance >= r from
// all kept edges. The result is re-verified before returning.
std::vector<Edge> greedy_packing(const Graph& g, const std::vector<Edge>& candidates, int r);

// Maximum r-packing by branch and bound; at most 20 candidates.
std::vector<Edge> exact_max_packing(const Graph& g, const std::vector<Edge>& candidates, int r);

bool is_valid_packing(const Graph& g, const std::vector<Edge>& packing, int r);

bool is_connected(const Graph& g);
bool is_forest(const Graph& g);
bool has_m_clique(const Graph& g, int m);

// Kruskal over pairs with nonzero weight, descending weight, ties broken
// toward the lexicographically smaller pair.
Graph max_weight_spanning_forest(const CorrelationMatrix& m);
// Same as above over all pairs, zero and negative weights included.
Graph max_weight_spanning_tree(const CorrelationMatrix& m);
// Kruskal on |M| over all pairs.
Graph max_abs_weight_spanning_tree(const CorrelationMatrix& m);

// All pairs u < v sorted by descending weight, lexicographic on ties.
std::vector<Edge> edges_by_descending_weight(const CorrelationMatrix& m);

// Edges of the first cycle closed by descending insertion.
std::vector<Edge> first_cycle_by_weight(const CorrelationMatrix& m);

// Sorted vertex set of the first m-clique completed by descending insertion.
std::vector<int> first_m_clique_by_weight(const CorrelationMatrix& m, int m_size);

// Edges along the unique forest path; nullopt when u and v are disconnected.
std::optional<std::vector<Edge>> forest_path(const Graph& t, int u, int v);

// Generators.

struct RungConstruction {
  Graph base;
  std::vector<Edge> rungs;
};

// Two cycles on [0, d/2) and [d/2, d) plus the candidate rungs (j, d/2 + j).
RungConstruction two_cycles_with_rungs(int d);

struct MotifPlacement {
  int block = 0;
  Edge edge;  // in h0 coordinates
};

// floor(d / |V(h0)|) disjoint copies of h0; leftover vertices isolated.
Graph repeated_motif(const Graph& h0, int d, std::optional<MotifPlacement> extra = std::nullopt);

struct TuranConstruction {
  Graph h0;
  Edge designated;      // adding it creates an m-clique
  int biclique_left = 0;   // vertices [0, left) versus the rest
  int biclique_right = 0;
};

// Complete (m-1)-partite graph on floor((s-1)/(m-2))*(m-1)+1 vertices; the
// last part carries the extra vertex.
TuranConstruction turan_h0(int s, int m);

struct CliqueChain {
  WeightedGraph null_model;         // cliques chain and path, disconnected
  WeightedGraph alternative_model;  // path joined to the first clique by +1 and -1 edges
  int num_cliques = 0;
};

CliqueChain clique_chain_with_path(int d, int s);

// Left vertices [0, l), right vertices [l, l + r).
Graph biclique(int l, int r);

Graph clique_graph(int d, const std::vector<int>& vertices);

Graph path_graph(int d);
Graph cycle_graph(int d);

// Text formats. Header "d=<int>", then "u v" or "u v w" lines, 1-based.
void write_graph(std::ostream& os, const Graph& g);
void write_weighted_graph(std::ostream& os, const WeightedGraph& wg);
// Accepts both plain and weighted variants; a missing weight reads as 1.
WeightedGraph read_weighted_graph(std::istream& is);
Graph read_graph(std::istream& is);

std::string format_double(double x);

}  // namespace ising
