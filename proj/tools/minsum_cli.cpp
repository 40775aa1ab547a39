// Command-line front end: solve commands, verification suites, and the
// walk-difference decay experiments.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "minsum/experiment.hpp"
#include "minsum/graph.hpp"
#include "minsum/report.hpp"
#include "minsum/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitInputError = 2;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw minsum::Error(minsum::ErrorCode::IoError,
                        "cannot write file: " + path);
  }
  out << content;
}

int run_solve_command(const std::string& problem, const std::string& graph_file,
                      const std::string& injection_file, int iters,
                      bool averaged, const std::string& norms_csv,
                      const std::string& format, const std::string& output) {
  minsum::SolveConfig config;
  config.problem = minsum::parse_problem(problem);
  config.iterations = iters;
  config.averaged = averaged;
  config.graph_file = graph_file;
  config.injection_file = injection_file;
  if (!norms_csv.empty()) {
    std::string token;
    for (char c : norms_csv + ",") {
      if (c == ',') {
        if (!token.empty()) config.norms.push_back(token);
        token.clear();
      } else {
        token.push_back(c);
      }
    }
  }

  minsum::WeightedGraph graph = minsum::read_graph_file(graph_file);
  minsum::Injection injection =
      minsum::read_injection_file(injection_file, graph.n_vertices());
  minsum::SolveReport report = minsum::run_solve(graph, injection, config);

  std::string rendered = format == "json" ? minsum::report_to_json(report)
                                          : minsum::report_to_csv(report);
  if (output.empty()) {
    std::cout << rendered;
  } else {
    write_file(output, rendered);
  }
  std::cerr << "solved " << problem << " on " << graph.n_vertices()
            << " vertices / " << graph.n_edges() << " edges, " << iters
            << " iterations in " << report.elapsed_ms << " ms\n";
  return kExitOk;
}

int run_verify_command(const std::string& suite) {
  std::vector<std::string> suites;
  if (suite == "all") {
    suites = minsum::suite_names();
  } else {
    suites.push_back(suite);
  }
  bool all_pass = true;
  for (const std::string& name : suites) {
    for (const minsum::CheckResult& check : minsum::run_suite(name)) {
      std::printf("%s %-45s max_residual=%.3e tolerance=%.0e\n",
                  check.pass ? "PASS" : "FAIL", check.name.c_str(),
                  check.max_residual, check.tolerance);
      all_pass = all_pass && check.pass;
    }
  }
  return all_pass ? kExitOk : kExitVerifyFailure;
}

int run_decay_command(const std::string& family, int d, int n, int t_max,
                      const std::string& which, const std::string& csv_out,
                      const std::string& svg_out) {
  minsum::DecayResult result =
      minsum::tv_decay(minsum::parse_decay_family(family), d, n, t_max,
                       minsum::parse_decay_which(which));
  std::string csv = minsum::decay_to_csv(result);
  if (csv_out.empty()) {
    std::cout << csv;
  } else {
    write_file(csv_out, csv);
  }
  if (!svg_out.empty()) {
    write_file(svg_out, minsum::decay_to_svg(result));
  }
  std::cerr << "family=" << result.family << " n=" << result.n
            << " d=" << result.d << " diameter=" << result.diameter
            << " window_tmax=" << result.window_tmax << "\n";
  if (result.fit_valid) {
    std::cerr << "log-log slope over window: " << result.slope << "\n";
  } else {
    std::cerr << "insufficient points in the pre-wrap window for a fit\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Min-sum message-passing solvers for voltage and flow problems"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand(
      "solve", "Run a min-sum solver and report per-iteration errors");
  std::string problem, graph_file, injection_file;
  std::string norms_csv, format = "csv", output;
  int iters = 10;
  bool averaged = false;
  solve->add_option("--problem", problem, "voltage or flow")->required();
  solve->add_option("--graph", graph_file, "edge-list file")->required();
  solve->add_option("--injection", injection_file, "injection file")->required();
  solve->add_option("--iters", iters, "number of iterations");
  solve->add_flag("--averaged", averaged,
                  "also report the two-step averaged estimator (regular "
                  "equal-weight graphs, iters >= 4)");
  solve->add_option("--norms", norms_csv,
                    "comma-separated error norms (linf,l2,L)");
  solve->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  solve->add_option("--output", output, "write the report to a file");

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string suite = "all";
  verify->add_option("--suite", suite, "suite name or 'all'")
      ->check(CLI::IsMember({"all", "fixpoint", "tree-equivalence",
                             "cycle-characterization",
                             "regular-characterization", "constants",
                             "walks"}));

  auto* decay = app.add_subcommand(
      "tv-decay", "Decay of walk-difference norms with iteration time");
  std::string family, which = "delta", csv_out, svg_out;
  int d = 4, n = 0, t_max = 10;
  decay->add_option("--family", family, "connected-cycle or torus")->required();
  decay->add_option("--d", d, "graph degree (even, >= 4)");
  decay->add_option("--n", n, "cycle size / torus side length")->required();
  decay->add_option("--t-max", t_max, "last iteration to report (>= 3)");
  decay->add_option("--which", which,
                    "delta, delta-sum, delta-tilde or delta-tilde-sum");
  decay->add_option("--csv", csv_out, "write rows to a CSV file");
  decay->add_option("--svg", svg_out, "write a log-log line plot");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      return run_solve_command(problem, graph_file, injection_file, iters,
                               averaged, norms_csv, format, output);
    }
    if (verify->parsed()) {
      return run_verify_command(suite);
    }
    if (decay->parsed()) {
      return run_decay_command(family, d, n, t_max, which, csv_out, svg_out);
    }
  } catch (const minsum::Error& err) {
    std::cerr << "error [" << minsum::error_code_name(err.code())
              << "]: " << err.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}
