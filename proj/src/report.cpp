#include "minsum/report.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "minsum/exact.hpp"
#include "minsum/minsum_flow.hpp"
#include "minsum/minsum_voltage.hpp"

namespace minsum {

std::string format_double17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Problem parse_problem(const std::string& s) {
  if (s == "voltage") return Problem::Voltage;
  if (s == "flow") return Problem::Flow;
  throw Error(ErrorCode::InvalidParameter, "unknown problem: " + s);
}

namespace {

double error_norm(const std::string& kind, const Eigen::VectorXd& err,
                  const WeightedGraph& g, bool vertex_indexed) {
  if (kind == "linf") return norm(NormKind::LInf, err, g);
  if (kind == "l2") return norm(NormKind::L2, err, g);
  if (kind == "L") {
    if (!vertex_indexed) {
      throw Error(ErrorCode::InvalidParameter,
                  "the L norm applies to vertex-indexed vectors only");
    }
    return norm(NormKind::LNorm, err, g);
  }
  throw Error(ErrorCode::InvalidParameter, "unknown norm: " + kind);
}

}  // namespace

SolveReport run_solve(const WeightedGraph& graph, const Injection& injection,
                      const SolveConfig& config) {
  auto start = std::chrono::steady_clock::now();
  if (config.iterations < 1) {
    throw Error(ErrorCode::InvalidParameter, "iterations must be >= 1");
  }
  SolveReport report;
  report.config = config;
  if (report.config.norms.empty()) {
    report.config.norms = config.problem == Problem::Voltage
                              ? std::vector<std::string>{"linf", "l2", "L"}
                              : std::vector<std::string>{"linf", "l2"};
  }
  const std::vector<std::string>& norms = report.config.norms;

  ExactSolution exact = solve_exact(graph, injection);
  report.exact_residual = exact.residual;

  int degree = 0;
  if (config.averaged) {
    degree = graph.regular_degree();
    graph.equal_weight();
    if (config.iterations < 4) {
      throw Error(ErrorCode::TooEarly,
                  "--averaged requires at least 4 iterations");
    }
  }

  if (config.problem == Problem::Voltage) {
    VoltageMessageState prev, state = init_voltage(graph);
    for (int t = 1; t <= config.iterations; ++t) {
      VoltageMessageState next = step_voltage(state, graph, injection);
      prev = std::move(state);
      state = std::move(next);
      Eigen::VectorXd est = estimate_voltage(state, graph, injection);
      IterationRecord rec;
      rec.t = t;
      rec.estimate_min = est.minCoeff();
      rec.estimate_max = est.maxCoeff();
      for (const std::string& kind : norms) {
        rec.errors.push_back(
            error_norm(kind, exact.voltages - est, graph, true));
      }
      if (config.averaged && t >= 4) {
        Eigen::VectorXd ave = estimate_voltage_averaged(prev, state, graph,
                                                        injection, degree, t);
        rec.has_averaged = true;
        for (const std::string& kind : norms) {
          rec.errors_averaged.push_back(
              error_norm(kind, exact.voltages - ave, graph, true));
        }
      }
      report.rows.push_back(std::move(rec));
      if (t == config.iterations) report.final_estimate = est;
    }
  } else {
    // Leaves are peeled off first; their flows are pinned by conservation and
    // merged back into every reported estimate.
    LeafStripResult strip = leaf_strip(graph, injection);
    Eigen::VectorXd merged = Eigen::VectorXd::Zero(graph.n_edges());
    for (auto [e, flow] : strip.fixed_flows) merged(e) = flow;

    const WeightedGraph& core = strip.core;
    bool has_core = core.n_vertices() > 0;
    FlowMessageState prev, state;
    if (has_core) state = init_flow(core);
    if (config.averaged && has_core &&
        (!core.is_regular() || !core.has_equal_weights())) {
      throw Error(ErrorCode::NotRegular,
                  "--averaged requires a regular equal-weight core");
    }
    for (int t = 1; t <= config.iterations; ++t) {
      Eigen::VectorXd est = merged;
      Eigen::VectorXd ave_est;
      if (has_core) {
        FlowMessageState next = step_flow(state, core, strip.core_injection);
        prev = std::move(state);
        state = std::move(next);
        Eigen::VectorXd core_est = estimate_flow(state, core);
        for (int ce = 0; ce < core.n_edges(); ++ce) {
          est(strip.core_edge_to_original[ce]) = core_est(ce);
        }
        if (config.averaged && t >= 4) {
          Eigen::VectorXd core_ave = estimate_flow_averaged(
              prev, state, core, core.regular_degree(), t);
          ave_est = merged;
          for (int ce = 0; ce < core.n_edges(); ++ce) {
            ave_est(strip.core_edge_to_original[ce]) = core_ave(ce);
          }
        }
      } else if (config.averaged && t >= 4) {
        ave_est = merged;
      }
      IterationRecord rec;
      rec.t = t;
      rec.estimate_min = est.minCoeff();
      rec.estimate_max = est.maxCoeff();
      for (const std::string& kind : norms) {
        rec.errors.push_back(error_norm(kind, exact.flows - est, graph, false));
      }
      if (config.averaged && t >= 4) {
        rec.has_averaged = true;
        for (const std::string& kind : norms) {
          rec.errors_averaged.push_back(
              error_norm(kind, exact.flows - ave_est, graph, false));
        }
      }
      report.rows.push_back(std::move(rec));
      if (t == config.iterations) report.final_estimate = est;
    }
  }
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                start)
          .count();
  return report;
}

std::string report_to_csv(const SolveReport& report) {
  std::ostringstream out;
  out << "t,est_min,est_max";
  for (const std::string& kind : report.config.norms) out << ",err_" << kind;
  if (report.config.averaged) {
    for (const std::string& kind : report.config.norms) {
      out << ",ave_err_" << kind;
    }
  }
  out << "\n";
  for (const IterationRecord& rec : report.rows) {
    out << rec.t << "," << format_double17(rec.estimate_min) << ","
        << format_double17(rec.estimate_max);
    for (double e : rec.errors) out << "," << format_double17(e);
    if (report.config.averaged) {
      for (size_t i = 0; i < report.config.norms.size(); ++i) {
        out << ",";
        if (rec.has_averaged) out << format_double17(rec.errors_averaged[i]);
      }
    }
    out << "\n";
  }
  return out.str();
}

std::string report_to_json(const SolveReport& report) {
  nlohmann::json j;
  j["problem"] = report.config.problem == Problem::Voltage ? "voltage" : "flow";
  j["graph_file"] = report.config.graph_file;
  j["injection_file"] = report.config.injection_file;
  j["iterations"] = report.config.iterations;
  j["averaged"] = report.config.averaged;
  j["norms"] = report.config.norms;
  j["exact_residual"] = report.exact_residual;
  nlohmann::json rows = nlohmann::json::array();
  for (const IterationRecord& rec : report.rows) {
    nlohmann::json row;
    row["t"] = rec.t;
    row["est_min"] = rec.estimate_min;
    row["est_max"] = rec.estimate_max;
    for (size_t i = 0; i < report.config.norms.size(); ++i) {
      row["err_" + report.config.norms[i]] = rec.errors[i];
    }
    if (rec.has_averaged) {
      for (size_t i = 0; i < report.config.norms.size(); ++i) {
        row["ave_err_" + report.config.norms[i]] = rec.errors_averaged[i];
      }
    }
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  j["final_estimate"] = std::vector<double>(
      report.final_estimate.data(),
      report.final_estimate.data() + report.final_estimate.size());
  return j.dump(2) + "\n";
}

}  // namespace minsum
