#include "minsum/minsum_voltage.hpp"

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
                      "; the voltage solver requires min degree >= 2");
    }
  }
  if (g.n_vertices() == 0) {
    throw Error(ErrorCode::InvalidParameter, "empty graph");
  }
}

// Sums of incoming messages per vertex; the update subtracts the one excluded
// term instead of re-summing the neighborhood.
void vertex_sums(const WeightedGraph& g, const Eigen::VectorXd& quad,
                 const Eigen::VectorXd& lin, Eigen::VectorXd& sum_quad,
                 Eigen::VectorXd& sum_lin) {
  sum_quad = Eigen::VectorXd::Zero(g.n_vertices());
  sum_lin = Eigen::VectorXd::Zero(g.n_vertices());
  for (int e = 0; e < g.n_edges(); ++e) {
    const Edge& ed = g.edge(e);
    sum_quad(ed.tail) += quad(message_slot(e, 0));
    sum_lin(ed.tail) += lin(message_slot(e, 0));
    sum_quad(ed.head) += quad(message_slot(e, 1));
    sum_lin(ed.head) += lin(message_slot(e, 1));
  }
}

}  // namespace

VoltageMessageState init_voltage(
    const WeightedGraph& graph,
    const std::optional<Eigen::VectorXd>& perturbation) {
  require_leafless(graph);
  int m = graph.n_edges();
  VoltageMessageState state;
  state.quad.resize(2 * m);
  for (int e = 0; e < m; ++e) {
    state.quad(message_slot(e, 0)) = graph.edge(e).weight;
    state.quad(message_slot(e, 1)) = graph.edge(e).weight;
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

VoltageMessageState step_voltage(const VoltageMessageState& state,
                                 const WeightedGraph& graph,
                                 const Injection& injection) {
  int m = graph.n_edges();
  if (state.quad.size() != 2 * m || injection.size() != graph.n_vertices()) {
    throw Error(ErrorCode::InvalidParameter, "state does not match graph");
  }
  Eigen::VectorXd sum_quad, sum_lin;
  vertex_sums(graph, state.quad, state.lin, sum_quad, sum_lin);

  VoltageMessageState next;
  next.quad.resize(2 * m);
  next.lin.resize(2 * m);
  next.iteration = state.iteration + 1;
  for (int e = 0; e < m; ++e) {
    const Edge& ed = graph.edge(e);
    for (int side = 0; side < 2; ++side) {
      // Message toward this side's endpoint is assembled at the opposite
      // endpoint w from all of w's incoming messages except the one along e.
      int w = side == 0 ? ed.head : ed.tail;
      double excl_quad = sum_quad(w) - state.quad(message_slot(e, 1 - side));
      double excl_lin = sum_lin(w) - state.lin(message_slot(e, 1 - side));
      double denom = ed.weight + excl_quad;
      if (!(denom > 0.0)) {
        throw Error(ErrorCode::ZeroDenominator,
                    "degenerate message denominator at edge " +
                        std::to_string(e));
      }
      next.quad(message_slot(e, side)) = ed.weight * excl_quad / denom;
      next.lin(message_slot(e, side)) =
          ed.weight * (excl_lin - injection[w]) / denom;
    }
  }
  return next;
}

Eigen::VectorXd estimate_voltage(const VoltageMessageState& state,
                                 const WeightedGraph& graph,
                                 const Injection& injection) {
  if (state.iteration < 1) {
    throw Error(ErrorCode::InvalidParameter,
                "estimate requires at least one iteration");
  }
  Eigen::VectorXd sum_quad, sum_lin;
  vertex_sums(graph, state.quad, state.lin, sum_quad, sum_lin);
  Eigen::VectorXd est(graph.n_vertices());
  for (int v = 0; v < graph.n_vertices(); ++v) {
    if (!(sum_quad(v) > 0.0)) {
      throw Error(ErrorCode::ZeroDenominator,
                  "zero belief curvature at vertex " + std::to_string(v));
    }
    est(v) = (injection[v] - sum_lin(v)) / sum_quad(v);
  }
  return est;
}

Eigen::VectorXd estimate_voltage_averaged(const VoltageMessageState& prev,
                                          const VoltageMessageState& curr,
                                          const WeightedGraph& graph,
                                          const Injection& injection, int d,
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
  double b_prev = regular_constants(d, t - 1).b_dt;
  double b_curr = regular_constants(d, t).b_dt;
  Eigen::VectorXd est_prev = estimate_voltage(prev, graph, injection);
  Eigen::VectorXd est_curr = estimate_voltage(curr, graph, injection);
  return (b_prev * est_prev + b_curr * est_curr) / (b_prev + b_curr);
}

}  // namespace minsum
