#ifndef MINSUM_GRAPH_HPP
#define MINSUM_GRAPH_HPP

#include <Eigen/Dense>
#include <string>
#include <tuple>
#include <vector>

#include "minsum/error.hpp"

namespace minsum {

/// Directed edge of the fixed orientation: tail -> head with a positive weight.
struct Edge {
  int tail;
  int head;
  double weight;
};

/// Entry of a vertex adjacency list: edge index, the neighbor reached through
/// it, and the incidence sign of the edge at this vertex (+1 leaving, -1
/// entering).
struct IncidentEdge {
  int edge;
  int neighbor;
  int sign;
};

// Messages, flows and perturbations are indexed by (edge, endpoint) slots:
// slot 2e is the one associated with the tail of edge e, slot 2e+1 with the
// head.  A "message slot" (e -> v) refers to the message sent along e toward
// endpoint v.
inline int message_slot(int edge, int side) { return 2 * edge + side; }

/// Simple connected undirected weighted graph with a fixed edge orientation.
/// Immutable after construction; cheap matrix views are built on demand.
class WeightedGraph {
 public:
  static constexpr int kDenseCap = 2048;

  /// Empty graph (n = 0); produced by leaf_strip when the input is a tree.
  WeightedGraph() = default;

  /// Validates and builds a graph from an edge list.  Vertex ids must be the
  /// contiguous range 0..n-1; the list order fixes the directed edge set.
  static WeightedGraph build(const std::vector<Edge>& edges);

  int n_vertices() const { return n_; }
  int n_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<IncidentEdge>& incident(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  double weighted_degree(int v) const { return weighted_degree_[v]; }

  /// Endpoint side of vertex v on edge e (0 = tail, 1 = head).
  int side_of(int e, int v) const;
  int endpoint(int e, int side) const {
    return side == 0 ? edges_[e].tail : edges_[e].head;
  }
  int other_endpoint(int e, int v) const {
    return v == edges_[e].tail ? edges_[e].head : edges_[e].tail;
  }
  /// Incidence sign A_{ve} for v an endpoint of e.
  int incidence_sign(int e, int v) const {
    return v == edges_[e].tail ? +1 : -1;
  }

  bool has_edge(int v, int w) const;
  /// Symmetric weight lookup W_vw (0 when {v,w} is not an edge).
  double weight_between(int v, int w) const;

  int min_degree() const;
  bool is_regular() const;
  /// Common degree; throws NotRegular otherwise.
  int regular_degree() const;
  bool has_equal_weights(double rel_tol = 1e-12) const;
  /// Common edge weight; throws UnequalWeights otherwise.
  double equal_weight() const;

  /// BFS diameter (max graph distance over all pairs, unit edge lengths).
  int diameter() const;

  // Dense matrix views, available for n <= kDenseCap (InvalidParameter above).
  Eigen::MatrixXd laplacian() const;
  Eigen::MatrixXd adjacency() const;          // weighted W
  Eigen::MatrixXd incidence() const;          // signed A, n x m
  Eigen::VectorXd resistances() const;        // R_ee = 1/W_e, size m
  Eigen::VectorXd weighted_degrees() const;   // diag of D

  /// Coordinate triplets of the Laplacian, usable at any size.
  std::vector<std::tuple<int, int, double>> laplacian_triplets() const;

  /// y = L x without materializing L.
  Eigen::VectorXd apply_laplacian(const Eigen::VectorXd& x) const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<IncidentEdge>> adj_;
  std::vector<double> weighted_degree_;
};

/// External current vector; entries must sum to zero (b in the range of L).
class Injection {
 public:
  Injection() = default;
  explicit Injection(Eigen::VectorXd b);

  const Eigen::VectorXd& values() const { return b_; }
  double operator[](int v) const { return b_(v); }
  int size() const { return static_cast<int>(b_.size()); }

 private:
  Eigen::VectorXd b_;
};

WeightedGraph build_graph(const std::vector<Edge>& edges);

// Generators for the standard graph families, all with a common edge weight.
WeightedGraph make_cycle(int n, double weight = 1.0);
WeightedGraph make_k_connected_cycle(int n, int k, double weight = 1.0);
WeightedGraph make_torus(const std::vector<int>& sides, double weight = 1.0);
WeightedGraph make_petersen(double weight = 1.0);
WeightedGraph make_complete(int n, double weight = 1.0);

/// Result of iterated leaf elimination.  Fixed flows are keyed by original
/// edge index and signed with respect to the stored orientation.  The core
/// graph renumbers the surviving vertices; the maps translate between views.
struct LeafStripResult {
  WeightedGraph core;                     // empty (n=0) when input is a tree
  Injection core_injection;
  std::vector<std::pair<int, double>> fixed_flows;
  std::vector<int> core_to_original;      // core vertex -> original vertex
  std::vector<int> original_to_core;      // -1 for stripped vertices
  std::vector<int> core_edge_to_original; // core edge -> original edge
};

LeafStripResult leaf_strip(const WeightedGraph& graph, const Injection& b);

// File formats: graphs are "tail head weight" lines, injections are
// "vertex value" lines; '#' starts a comment, blank lines are skipped.
WeightedGraph read_graph_file(const std::string& path);
Injection read_injection_file(const std::string& path, int n_vertices);

}  // namespace minsum

#endif
