#ifndef MINSUM_MINSUM_VOLTAGE_HPP
#define MINSUM_MINSUM_VOLTAGE_HPP

#include <Eigen/Dense>
#include <optional>

#include "minsum/graph.hpp"

namespace minsum {

/// Quadratic message coefficients for the voltage solver.  Slot 2e+side holds
/// the message sent along edge e toward its side endpoint; quad entries stay
/// strictly positive on leafless graphs under the standard initialization.
struct VoltageMessageState {
  Eigen::VectorXd quad;  // W^s_{e->v}, size 2m
  Eigen::VectorXd lin;   // w^s_{e->v}, size 2m
  int iteration = 0;
};

/// Initial messages: quad(e, v) = W_e, lin(e, v) = perturbation (default 0).
/// Requires a leafless graph (min degree >= 2).
VoltageMessageState init_voltage(
    const WeightedGraph& graph,
    const std::optional<Eigen::VectorXd>& perturbation = std::nullopt);

/// One synchronous double-buffered update round.
VoltageMessageState step_voltage(const VoltageMessageState& state,
                                 const WeightedGraph& graph,
                                 const Injection& injection);

/// Per-vertex estimate from the current messages (iteration >= 1).
Eigen::VectorXd estimate_voltage(const VoltageMessageState& state,
                                 const WeightedGraph& graph,
                                 const Injection& injection);

/// Convex combination of two consecutive estimates with weights from the
/// d-regular characterization constants; requires equal weights and t >= 4.
Eigen::VectorXd estimate_voltage_averaged(const VoltageMessageState& prev,
                                          const VoltageMessageState& curr,
                                          const WeightedGraph& graph,
                                          const Injection& injection, int d,
                                          int t);

}  // namespace minsum

#endif
