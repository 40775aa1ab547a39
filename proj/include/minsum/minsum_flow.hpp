#ifndef MINSUM_MINSUM_FLOW_HPP
#define MINSUM_MINSUM_FLOW_HPP

#include <Eigen/Dense>
#include <optional>

#include "minsum/graph.hpp"

namespace minsum {

/// Quadratic message coefficients for the flow solver, slot layout as in
/// VoltageMessageState.  quad entries satisfy R^s >= R_ee > 0 throughout.
struct FlowMessageState {
  Eigen::VectorXd quad;  // R^s_{e->v}, size 2m
  Eigen::VectorXd lin;   // r^s_{e->v}, size 2m
  int iteration = 0;
};

/// Initial messages: quad(e, v) = R_ee = 1/W_e, lin(e, v) = perturbation or 0.
FlowMessageState init_flow(
    const WeightedGraph& graph,
    const std::optional<Eigen::VectorXd>& perturbation = std::nullopt);

FlowMessageState step_flow(const FlowMessageState& state,
                           const WeightedGraph& graph,
                           const Injection& injection);

/// Per-edge flow estimate, signed with the stored orientation (iteration >= 1).
Eigen::VectorXd estimate_flow(const FlowMessageState& state,
                              const WeightedGraph& graph);

Eigen::VectorXd estimate_flow_averaged(const FlowMessageState& prev,
                                       const FlowMessageState& curr,
                                       const WeightedGraph& graph, int d,
                                       int t);

}  // namespace minsum

#endif
