#include "minsum/minsum_flow.hpp"

#include <string>

#include "minsum/characterization.hpp"

namespace minsum {

namespace {

void require_leafless(const WeightedGraph& g) {
  for (int v = 0; v < g.n_vertices(); ++v) {
    if (g.degree(v) < 2) {
      throw Error(ErrorCode::HasLeaves,
                  "vertex " + std::to_string(v) + " has degree " +
                      std::to_string(g.degree(v)) +
                      "; strip leaves before running the flow solver");
    }
  }
  if (g.n_vertices() == 0) {
    throw Error(ErrorCode::InvalidParameter, "empty graph");
  }
}

}  // namespace

FlowMessageState init_flow(const WeightedGraph& graph,
                           const std::optional<Eigen::VectorXd>& perturbation) {
  require_leafless(graph);
  int m = graph.n_edges();
  FlowMessageState state;
  state.quad.resize(2 * m);
  for (int e = 0; e < m; ++e) {
    double r_ee = 1.0 / graph.edge(e).weight;
    state.quad(message_slot(e, 0)) = r_ee;
    state.quad(message_slot(e, 1)) = r_ee;
  }
  if (perturbation) {
    if (perturbation->size() != 2 * m) {
      throw Error(ErrorCode::InvalidParameter,
                  "perturbation must have one entry per (edge, endpoint) pair");
    }
    state.lin = *perturbation;
  } else {
    state.lin = Eigen::VectorXd::Zero(2 * m);
  }
  state.iteration = 0;
  return state;
}

FlowMessageState step_flow(const FlowMessageState& state,
                           const WeightedGraph& graph,
                           const Injection& injection) {
  int m = graph.n_edges();
  int n = graph.n_vertices();
  if (state.quad.size() != 2 * m || injection.size() != n) {
    throw Error(ErrorCode::InvalidParameter, "state does not match graph");
  }
  // Per-vertex sums of 1/R and of A_wf r/R over incoming messages.
  Eigen::VectorXd sum_inv = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sum_signed = Eigen::VectorXd::Zero(n);
  for (int e = 0; e < m; ++e) {
    const Edge& ed = graph.edge(e);
    double inv0 = 1.0 / state.quad(message_slot(e, 0));
    double inv1 = 1.0 / state.quad(message_slot(e, 1));
    sum_inv(ed.tail) += inv0;
    sum_inv(ed.head) += inv1;
    // A_{tail,e} = +1 and A_{head,e} = -1 under the stored orientation.
    sum_signed(ed.tail) += state.lin(message_slot(e, 0)) * inv0;
    sum_signed(ed.head) -= state.lin(message_slot(e, 1)) * inv1;
  }

  FlowMessageState next;
  next.quad.resize(2 * m);
  next.lin.resize(2 * m);
  next.iteration = state.iteration + 1;
  for (int e = 0; e < m; ++e) {
    const Edge& ed = graph.edge(e);
    double r_ee = 1.0 / ed.weight;
    for (int side = 0; side < 2; ++side) {
      int w = side == 0 ? ed.head : ed.tail;
      int sign_w = graph.incidence_sign(e, w);
      double inv_excl =
          sum_inv(w) - 1.0 / state.quad(message_slot(e, 1 - side));
      double signed_excl = sum_signed(w) -
                           sign_w * state.lin(message_slot(e, 1 - side)) /
                               state.quad(message_slot(e, 1 - side));
      if (!(inv_excl > 0.0)) {
        throw Error(ErrorCode::ZeroDenominator,
                    "degenerate message denominator at edge " +
                        std::to_string(e));
      }
      next.quad(message_slot(e, side)) = r_ee + 1.0 / inv_excl;
      next.lin(message_slot(e, side)) =
          -sign_w * (signed_excl + injection[w]) / inv_excl;
    }
  }
  return next;
}

Eigen::VectorXd estimate_flow(const FlowMessageState& state,
                              const WeightedGraph& graph) {
  if (state.iteration < 1) {
    throw Error(ErrorCode::InvalidParameter,
                "estimate requires at least one iteration");
  }
  int m = graph.n_edges();
  Eigen::VectorXd est(m);
  for (int e = 0; e < m; ++e) {
    double r_ee = 1.0 / graph.edge(e).weight;
    double denom = state.quad(message_slot(e, 0)) +
                   state.quad(message_slot(e, 1)) - r_ee;
    if (!(denom > 0.0)) {
      throw Error(ErrorCode::ZeroDenominator,
                  "zero belief curvature at edge " + std::to_string(e));
    }
    est(e) =
        -(state.lin(message_slot(e, 0)) + state.lin(message_slot(e, 1))) / denom;
  }
  return est;
}

Eigen::VectorXd estimate_flow_averaged(const FlowMessageState& prev,
                                       const FlowMessageState& curr,
                                       const WeightedGraph& graph, int d,
                                       int t) {
  if (graph.regular_degree() != d) {
    throw Error(ErrorCode::NotRegular,
                "graph degree does not match requested d");
  }
  graph.equal_weight();
  if (t < 4) {
    throw Error(ErrorCode::TooEarly,
                "averaged estimator requires t >= 4 (t = " + std::to_string(t) +
                    ")");
  }
  if (curr.iteration != t || prev.iteration != t - 1) {
    throw Error(ErrorCode::InvalidParameter,
                "states must be at iterations t-1 and t");
  }
  double c_prev = regular_constants(d, t - 1).c_dt;
  double c_curr = regular_constants(d, t).c_dt;
  Eigen::VectorXd est_prev = estimate_flow(prev, graph);
  Eigen::VectorXd est_curr = estimate_flow(curr, graph);
  return (c_prev * est_prev + c_curr * est_curr) / (c_prev + c_curr);
}

}  // namespace minsum
