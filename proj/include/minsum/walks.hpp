#ifndef MINSUM_WALKS_HPP
#define MINSUM_WALKS_HPP

#include <Eigen/Dense>
#include <vector>

#include "minsum/graph.hpp"

namespace minsum {

/// Non-backtracking walk distributions at a fixed time t on a d-regular
/// equal-weight graph.  P(v, z) = P_v(Y_t = z).  P_excl holds the
/// first-step-conditioned rows for edge pairs only: row message_slot(e, side)
/// is the distribution started at the side endpoint of e conditioned on the
/// first step avoiding the other endpoint.
struct WalkDistribution {
  int t = 0;
  Eigen::MatrixXd P;       // n x n
  Eigen::MatrixXd P_excl;  // 2m x n
};

/// Row s of the conditioned block: source vertex and excluded neighbor.
inline std::pair<int, int> excl_row_meaning(const WeightedGraph& g, int slot) {
  int e = slot / 2, side = slot % 2;
  return {g.endpoint(e, side), g.endpoint(e, 1 - side)};
}

/// Incremental stepper for a batch of non-backtracking walks.  State rows are
/// independent walk ensembles; columns are directed edge traversals.
class NonBacktrackingWalker {
 public:
  /// One ensemble per vertex, started uniformly over the d incident edges.
  static NonBacktrackingWalker all_sources(const WeightedGraph& graph);
  /// One ensemble per (edge, endpoint) slot, conditioned to avoid the other
  /// endpoint on the first step (uniform over the remaining d-1 edges).
  static NonBacktrackingWalker edge_conditioned(const WeightedGraph& graph);

  void step();
  int t() const { return t_; }
  /// Vertex distribution of every ensemble at the current time (rows x n).
  Eigen::MatrixXd distribution() const;

 private:
  NonBacktrackingWalker(const WeightedGraph& graph, Eigen::MatrixXd state);

  const WeightedGraph* graph_;
  int d_;
  Eigen::MatrixXd state_;  // rows x 2m, column = directed traversal
  int t_ = 1;
};

/// Exact distributions via the traversal-state dynamic program (t = 0 gives
/// point masses).  Requires d-regular (d >= 2) with equal weights.
WalkDistribution nb_distribution(const WeightedGraph& graph, int t);

/// Per-edge difference of walk distributions; rows follow the stored
/// orientation and sum to zero.
struct DeltaMatrix {
  int t = 0;
  bool tilde = false;
  Eigen::MatrixXd rows;  // m x n
};

/// Delta^(t): row e = P_v - P_w for e = (v, w).
DeltaMatrix delta_matrix(const WeightedGraph& graph, const WalkDistribution& dist);
/// Delta~^(t) built definitionally from the conditioned distributions.
DeltaMatrix delta_tilde_matrix(const WeightedGraph& graph,
                               const WalkDistribution& dist);
/// Delta~^(t) via the three-term adjacency recursion.
DeltaMatrix delta_tilde_recursion(const WeightedGraph& graph, int t);

/// Incremental form of the adjacency recursion: after construction the kernel
/// is at t = 1; step() advances it.  Row e of the current Delta~ is
/// K.col(v) - K.col(w).
class DeltaTildeKernel {
 public:
  explicit DeltaTildeKernel(const WeightedGraph& graph);
  void step();
  int t() const { return t_; }
  DeltaMatrix current(const WeightedGraph& graph) const;
  const Eigen::MatrixXd& kernel() const { return K_; }
  const Eigen::MatrixXd& kernel_prev() const { return K_prev_; }

 private:
  Eigen::MatrixXd mul_adjacency(const Eigen::MatrixXd& X) const;

  const WeightedGraph* graph_;
  int d_;
  Eigen::MatrixXd K_prev_, K_;
  int t_ = 1;
};

/// Induced infinity norm: max row l1 sum.
double delta_inf_norm(const DeltaMatrix& delta);
/// Per-edge total variation distances (half row l1 sums).
Eigen::VectorXd tv_profile(const DeltaMatrix& delta);

// Killed-walk machinery (Z-absorbed diffusion walk, weighted graphs allowed).

/// Laplacian with the rows/columns of `removed` deleted; kept vertices in
/// ascending original order.
Eigen::MatrixXd restricted_laplacian(const WeightedGraph& graph,
                                     const std::vector<int>& removed);

/// Transition matrix of the transient part of the walk killed at `removed`
/// (original weighted degrees on the diagonal scaling, hence sub-stochastic).
Eigen::MatrixXd killed_transition(const WeightedGraph& graph,
                                  const std::vector<int>& removed);

/// Entry (v, w) of the inverse restricted Laplacian computed through hitting
/// probabilities and expected visit counts of the diffusion walk (linear
/// solves, no sampling).
double restricted_laplacian_inverse_via_walks(const WeightedGraph& graph,
                                              const std::vector<int>& removed,
                                              int v, int w);

}  // namespace minsum

#endif
