#ifndef MINSUM_REPORT_HPP
#define MINSUM_REPORT_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "minsum/graph.hpp"

namespace minsum {

enum class Problem { Voltage, Flow };

Problem parse_problem(const std::string& s);

struct SolveConfig {
  Problem problem = Problem::Voltage;
  int iterations = 0;
  bool averaged = false;
  std::vector<std::string> norms;  // subset of {"linf","l2","L"}
  std::string graph_file;          // echo only
  std::string injection_file;      // echo only
};

struct IterationRecord {
  int t = 0;
  double estimate_min = 0.0;
  double estimate_max = 0.0;
  std::vector<double> errors;           // per config norm
  bool has_averaged = false;
  std::vector<double> errors_averaged;  // per config norm, t >= 4 only
};

/// Per-iteration error trace against the exact baseline plus the final
/// estimate.  Serialization omits timing so identical inputs produce
/// byte-identical files.
struct SolveReport {
  SolveConfig config;
  std::vector<IterationRecord> rows;
  Eigen::VectorXd final_estimate;  // voltages per vertex, or flows per edge
  double exact_residual = 0.0;
  double elapsed_ms = 0.0;
};

/// Runs the requested solver for the configured number of iterations.  Flow
/// problems strip leaves first and fold the fixed flows back into every
/// reported estimate; voltage problems require a leafless graph.
SolveReport run_solve(const WeightedGraph& graph, const Injection& injection,
                      const SolveConfig& config);

std::string report_to_csv(const SolveReport& report);
std::string report_to_json(const SolveReport& report);

std::string format_double17(double x);

}  // namespace minsum

#endif
