#include "minsum/walks.hpp"

#include <algorithm>
#include <string>

namespace minsum {

namespace {

int require_regular_unweighted(const WeightedGraph& g, int min_d) {
  int d = g.regular_degree();
  if (d < min_d) {
    throw Error(ErrorCode::NotRegular,
                "walk computations require degree >= " + std::to_string(min_d) +
                    " (d = " + std::to_string(d) + ")");
  }
  if (!g.has_equal_weights()) {
    throw Error(ErrorCode::UnequalWeights,
                "walk computations require equal edge weights");
  }
  return d;
}

// Traversal slots: column 2e is the traversal of edge e along its stored
// orientation (arriving at the head), column 2e+1 the reverse.
inline int arrival(const WeightedGraph& g, int slot) {
  const Edge& e = g.edge(slot / 2);
  return slot % 2 == 0 ? e.head : e.tail;
}

}  // namespace

NonBacktrackingWalker::NonBacktrackingWalker(const WeightedGraph& graph,
                                             Eigen::MatrixXd state)
    : graph_(&graph), d_(graph.regular_degree()), state_(std::move(state)) {}

NonBacktrackingWalker NonBacktrackingWalker::all_sources(
    const WeightedGraph& graph) {
  int d = require_regular_unweighted(graph, 2);
  int n = graph.n_vertices(), m = graph.n_edges();
  Eigen::MatrixXd state = Eigen::MatrixXd::Zero(n, 2 * m);
  for (int e = 0; e < m; ++e) {
    state(graph.edge(e).tail, 2 * e) = 1.0 / d;      // tail -> head
    state(graph.edge(e).head, 2 * e + 1) = 1.0 / d;  // head -> tail
  }
  return NonBacktrackingWalker(graph, std::move(state));
}

NonBacktrackingWalker NonBacktrackingWalker::edge_conditioned(
    const WeightedGraph& graph) {
  int d = require_regular_unweighted(graph, 2);
  int m = graph.n_edges();
  Eigen::MatrixXd state = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  for (int e = 0; e < m; ++e) {
    for (int side = 0; side < 2; ++side) {
      int row = message_slot(e, side);
      int source = graph.endpoint(e, side);
      int excluded = graph.endpoint(e, 1 - side);
      for (const IncidentEdge& ie : graph.incident(source)) {
        if (ie.neighbor == excluded) continue;
        int slot = 2 * ie.edge + (ie.sign > 0 ? 0 : 1);
        state(row, slot) = 1.0 / (d - 1);
      }
    }
  }
  return NonBacktrackingWalker(graph, std::move(state));
}

Eigen::MatrixXd NonBacktrackingWalker::distribution() const {
  const WeightedGraph& g = *graph_;
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(state_.rows(), g.n_vertices());
  for (int e = 0; e < g.n_edges(); ++e) {
    P.col(g.edge(e).head) += state_.col(2 * e);
    P.col(g.edge(e).tail) += state_.col(2 * e + 1);
  }
  return P;
}

void NonBacktrackingWalker::step() {
  const WeightedGraph& g = *graph_;
  Eigen::MatrixXd arrived = distribution();  // mass sitting at each vertex
  Eigen::MatrixXd next(state_.rows(), state_.cols());
  double scale = 1.0 / (d_ - 1);
  for (int e = 0; e < g.n_edges(); ++e) {
    // Traversal leaving the tail continues everything that arrived at the
    // tail except the mass that came in along e itself (no backtracking).
    next.col(2 * e) =
        (arrived.col(g.edge(e).tail) - state_.col(2 * e + 1)) * scale;
    next.col(2 * e + 1) =
        (arrived.col(g.edge(e).head) - state_.col(2 * e)) * scale;
  }
  state_.swap(next);
  ++t_;
}

WalkDistribution nb_distribution(const WeightedGraph& graph, int t) {
  require_regular_unweighted(graph, 2);
  if (t < 0) {
    throw Error(ErrorCode::InvalidParameter, "t must be >= 0");
  }
  int n = graph.n_vertices(), m = graph.n_edges();
  WalkDistribution dist;
  dist.t = t;
  if (t == 0) {
    dist.P = Eigen::MatrixXd::Identity(n, n);
    dist.P_excl = Eigen::MatrixXd::Zero(2 * m, n);
    for (int slot = 0; slot < 2 * m; ++slot) {
      dist.P_excl(slot, excl_row_meaning(graph, slot).first) = 1.0;
    }
    return dist;
  }
  NonBacktrackingWalker plain = NonBacktrackingWalker::all_sources(graph);
  NonBacktrackingWalker cond = NonBacktrackingWalker::edge_conditioned(graph);
  for (int s = 1; s < t; ++s) {
    plain.step();
    cond.step();
  }
  dist.P = plain.distribution();
  dist.P_excl = cond.distribution();
  return dist;
}

DeltaMatrix delta_matrix(const WeightedGraph& graph,
                         const WalkDistribution& dist) {
  DeltaMatrix delta;
  delta.t = dist.t;
  delta.tilde = false;
  delta.rows.resize(graph.n_edges(), graph.n_vertices());
  for (int e = 0; e < graph.n_edges(); ++e) {
    delta.rows.row(e) =
        dist.P.row(graph.edge(e).tail) - dist.P.row(graph.edge(e).head);
  }
  return delta;
}

DeltaMatrix delta_tilde_matrix(const WeightedGraph& graph,
                               const WalkDistribution& dist) {
  DeltaMatrix delta;
  delta.t = dist.t;
  delta.tilde = true;
  delta.rows.resize(graph.n_edges(), graph.n_vertices());
  for (int e = 0; e < graph.n_edges(); ++e) {
    delta.rows.row(e) =
        dist.P_excl.row(message_slot(e, 0)) - dist.P_excl.row(message_slot(e, 1));
  }
  return delta;
}

DeltaTildeKernel::DeltaTildeKernel(const WeightedGraph& graph)
    : graph_(&graph), d_(require_regular_unweighted(graph, 2)) {
  int n = graph.n_vertices();
  Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  // K_1 = (B + I)/(d-1); K_2 = (B K_1 - I)/(d-1); K_t follows the
  // three-term recursion.  Row e of Delta~^(t) equals K_t (1_v - 1_w).
  K_ = (mul_adjacency(I) + I) / (d_ - 1);
  K_prev_.resize(0, 0);
}

Eigen::MatrixXd DeltaTildeKernel::mul_adjacency(const Eigen::MatrixXd& X) const {
  Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(X.rows(), X.cols());
  for (const Edge& e : graph_->edges()) {
    Y.row(e.tail) += X.row(e.head);
    Y.row(e.head) += X.row(e.tail);
  }
  return Y;
}

void DeltaTildeKernel::step() {
  int n = graph_->n_vertices();
  Eigen::MatrixXd next;
  if (t_ == 1) {
    next = (mul_adjacency(K_) - Eigen::MatrixXd::Identity(n, n)) / (d_ - 1);
  } else {
    next = (mul_adjacency(K_) - K_prev_) / (d_ - 1);
  }
  K_prev_ = std::move(K_);
  K_ = std::move(next);
  ++t_;
}

DeltaMatrix DeltaTildeKernel::current(const WeightedGraph& graph) const {
  DeltaMatrix delta;
  delta.t = t_;
  delta.tilde = true;
  delta.rows.resize(graph.n_edges(), graph.n_vertices());
  for (int e = 0; e < graph.n_edges(); ++e) {
    delta.rows.row(e) =
        (K_.col(graph.edge(e).tail) - K_.col(graph.edge(e).head)).transpose();
  }
  return delta;
}

DeltaMatrix delta_tilde_recursion(const WeightedGraph& graph, int t) {
  if (t < 1) {
    throw Error(ErrorCode::InvalidParameter, "t must be >= 1");
  }
  DeltaTildeKernel kernel(graph);
  for (int s = 1; s < t; ++s) kernel.step();
  return kernel.current(graph);
}

double delta_inf_norm(const DeltaMatrix& delta) {
  double best = 0.0;
  for (int i = 0; i < delta.rows.rows(); ++i) {
    best = std::max(best, delta.rows.row(i).lpNorm<1>());
  }
  return best;
}

Eigen::VectorXd tv_profile(const DeltaMatrix& delta) {
  Eigen::VectorXd tv(delta.rows.rows());
  for (int i = 0; i < delta.rows.rows(); ++i) {
    tv(i) = 0.5 * delta.rows.row(i).lpNorm<1>();
  }
  return tv;
}

namespace {

struct KeptIndex {
  std::vector<int> keep;  // kept vertices in ascending order
  std::vector<int> pos;   // original -> kept position, -1 if removed
};

KeptIndex kept_index(const WeightedGraph& g, const std::vector<int>& removed) {
  if (removed.empty()) {
    throw Error(ErrorCode::InvalidParameter, "removed set must be nonempty");
  }
  KeptIndex idx;
  idx.pos.assign(g.n_vertices(), 0);
  for (int z : removed) {
    if (z < 0 || z >= g.n_vertices()) {
      throw Error(ErrorCode::InvalidParameter,
                  "removed vertex " + std::to_string(z) + " out of range");
    }
    idx.pos[z] = -1;
  }
  for (int v = 0; v < g.n_vertices(); ++v) {
    if (idx.pos[v] == 0) {
      idx.pos[v] = static_cast<int>(idx.keep.size());
      idx.keep.push_back(v);
    }
  }
  return idx;
}

}  // namespace

Eigen::MatrixXd restricted_laplacian(const WeightedGraph& graph,
                                     const std::vector<int>& removed) {
  KeptIndex idx = kept_index(graph, removed);
  int k = static_cast<int>(idx.keep.size());
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < k; ++i) {
    L(i, i) = graph.weighted_degree(idx.keep[i]);
  }
  for (const Edge& e : graph.edges()) {
    int i = idx.pos[e.tail], j = idx.pos[e.head];
    if (i >= 0 && j >= 0) {
      L(i, j) -= e.weight;
      L(j, i) -= e.weight;
    }
  }
  return L;
}

Eigen::MatrixXd killed_transition(const WeightedGraph& graph,
                                  const std::vector<int>& removed) {
  KeptIndex idx = kept_index(graph, removed);
  int k = static_cast<int>(idx.keep.size());
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(k, k);
  for (const Edge& e : graph.edges()) {
    int i = idx.pos[e.tail], j = idx.pos[e.head];
    if (i >= 0 && j >= 0) {
      P(i, j) = e.weight / graph.weighted_degree(e.tail);
      P(j, i) = e.weight / graph.weighted_degree(e.head);
    }
  }
  return P;
}

double restricted_laplacian_inverse_via_walks(const WeightedGraph& graph,
                                              const std::vector<int>& removed,
                                              int v, int w) {
  KeptIndex idx = kept_index(graph, removed);
  if (v < 0 || v >= graph.n_vertices() || w < 0 || w >= graph.n_vertices()) {
    throw Error(ErrorCode::InvalidParameter, "vertex out of range");
  }
  if (idx.pos[v] < 0 || idx.pos[w] < 0) {
    throw Error(ErrorCode::VertexInRemovedSet,
                "v and w must not belong to the removed set");
  }

  // Hitting probabilities h_u = P_u(T_w < T_Z) of the diffusion walk: solve
  // the absorbing-chain system over the kept vertices other than w.
  std::vector<int> unknown;
  std::vector<int> upos(graph.n_vertices(), -1);
  for (int u : idx.keep) {
    if (u == w) continue;
    upos[u] = static_cast<int>(unknown.size());
    unknown.push_back(u);
  }
  int k = static_cast<int>(unknown.size());
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(k, k);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k);
  for (int i = 0; i < k; ++i) {
    int u = unknown[i];
    double du = graph.weighted_degree(u);
    for (const IncidentEdge& ie : graph.incident(u)) {
      double p = graph.edge(ie.edge).weight / du;
      if (ie.neighbor == w) {
        rhs(i) += p;
      } else if (upos[ie.neighbor] >= 0) {
        M(i, upos[ie.neighbor]) -= p;
      }
      // neighbors in Z contribute 0
    }
  }
  Eigen::VectorXd h_unknown =
      k > 0 ? Eigen::VectorXd(M.partialPivLu().solve(rhs)) : Eigen::VectorXd();

  auto h_at = [&](int u) -> double {
    if (u == w) return 1.0;
    if (idx.pos[u] < 0) return 0.0;
    return h_unknown(upos[u]);
  };

  // First-step analysis at w: expected visits to w before absorption equal
  // 1 / (1 - return probability).
  double ret = 0.0;
  double dw = graph.weighted_degree(w);
  for (const IncidentEdge& ie : graph.incident(w)) {
    ret += graph.edge(ie.edge).weight / dw * h_at(ie.neighbor);
  }
  if (!(ret < 1.0)) {
    throw Error(ErrorCode::SingularSystem,
                "walk is not absorbed from vertex " + std::to_string(w));
  }
  double diag = 1.0 / ((1.0 - ret) * dw);  // inverse entry at (w, w)
  return diag * h_at(v);
}

}  // namespace minsum
