#ifndef MINSUM_CHARACTERIZATION_HPP
#define MINSUM_CHARACTERIZATION_HPP

#include <Eigen/Dense>
#include <vector>

#include "minsum/graph.hpp"

namespace minsum {

enum class TreeKind { FlowRootedAtEdge, VoltageRootedAtVertex };

struct TreeVertex {
  int original;  // sigma: image vertex in the source graph
  int level;     // flow kind: 0..t; voltage kind: -1..t (root at -1)
};

struct TreeEdge {
  int tail;         // tree vertex ids, orientation copied from the source edge
  int head;
  int level;        // flow kind: 0 for the root edge, else 1..t; voltage: 0..t
  int original;     // sigma: image edge index
  double weight;
  int parent_slot;  // message slot (original edge -> sigma of the shallower
                    // endpoint); -1 for the root edge of a flow tree
};

/// Unrolled synchronous message-passing computations of depth t.  Vertex 0 is
/// the root vertex (voltage kind) or the root edge tail (flow kind, where
/// edge 0 is the root edge).
struct ComputationTree {
  TreeKind kind;
  int depth = 0;
  std::vector<TreeVertex> vertices;
  std::vector<TreeEdge> edges;

  int n_at_level(int level) const;
};

/// Caps: trees larger than 200000 vertices are rejected at construction, and
/// the dense tree solvers reject above 4000 vertices.
ComputationTree build_tree_flow(const WeightedGraph& graph, int root_edge,
                                int depth);
ComputationTree build_tree_voltage(const WeightedGraph& graph, int root_vertex,
                                   int depth);

/// Minimizes (1/2) x^T R x + p(p)^T x over tree flows subject to conservation
/// at every non-leaf vertex; returns the flow on every tree edge (root edge
/// first).  The perturbation is read through sigma on the level-t edges.
Eigen::VectorXd solve_tree_flow(const ComputationTree& tree,
                                const Injection& injection,
                                const Eigen::VectorXd& perturbation);

/// Solves the strictly convex voltage problem on the tree restricted to the
/// non-leaf vertices; returns their potentials (root first).  The
/// perturbation is accumulated on the level-(t-1) vertices through sigma.
Eigen::VectorXd solve_tree_voltage(const ComputationTree& tree,
                                   const Injection& injection,
                                   const Eigen::VectorXd& perturbation);

/// d-regular characterization constants.  h and delta follow the stated
/// recursions; b_dt and c_dt come from the Gambler's-ruin reduction of the
/// computation tree (hitting-probability closed form), which is the value the
/// min-sum error actually obeys.
struct RegularConstants {
  int d = 0;
  int t = 0;
  std::vector<double> h;      // h[s] = 1/((d-1)^s - 1), s = 1..t+1 (h[0] = inf unused)
  std::vector<double> delta;  // delta[s], s = 0..max(t-2, 1)
  double b_dt = 0.0;
  double c_dt = 0.0;
  double eps_d = 0.0;         // bound parameter; c_dt <= 1 + eps_d < 4
};

RegularConstants regular_constants(int d, int t);

// Cycle (d = 2) error characterization, any positive weights, t >= 2.
// Positions follow the ring order discovered from vertex 0 toward its
// smaller-id neighbor; predictions are exact values of nu* - nuhat^t and
// x* - xhat^t under the stored orientation.

double cycle_alpha(const WeightedGraph& cycle, int vertex, int t);
double cycle_beta(const WeightedGraph& cycle, int edge, int t);
double error_characterization_cycle_voltage(const WeightedGraph& cycle,
                                            const Injection& injection,
                                            int vertex, int t);
double error_characterization_cycle_flow(const WeightedGraph& cycle,
                                         const Injection& injection, int edge,
                                         int t);

// d-regular equal-weight error characterization, d >= 3, t >= 3.  Entry v
// (resp. e) predicts nu*_v - nuhat^t_v (resp. x*_e - xhat^t_e).
Eigen::VectorXd error_characterization_regular_voltage(
    const WeightedGraph& graph, const Injection& injection, int t);
Eigen::VectorXd error_characterization_regular_flow(const WeightedGraph& graph,
                                                    const Injection& injection,
                                                    int t);

}  // namespace minsum

#endif
