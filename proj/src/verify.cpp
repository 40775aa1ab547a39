#include "minsum/verify.hpp"

#include <algorithm>
#include <cmath>

#include "minsum/characterization.hpp"
#include "minsum/corpus.hpp"
#include "minsum/exact.hpp"
#include "minsum/minsum_flow.hpp"
#include "minsum/minsum_voltage.hpp"
#include "minsum/walks.hpp"

namespace minsum {

namespace {

// p* makes both solvers exact at every t: the flow side reads the optimal
// Lagrange multipliers, the voltage side the optimal potentials.
Eigen::VectorXd optimal_perturbation_flow(const WeightedGraph& g,
                                          const Eigen::VectorXd& voltages) {
  Eigen::VectorXd p(2 * g.n_edges());
  for (int e = 0; e < g.n_edges(); ++e) {
    for (int side = 0; side < 2; ++side) {
      int w = g.endpoint(e, 1 - side);
      p(message_slot(e, side)) = -g.incidence_sign(e, w) * voltages(w);
    }
  }
  return p;
}

Eigen::VectorXd optimal_perturbation_voltage(const WeightedGraph& g,
                                             const Eigen::VectorXd& voltages) {
  Eigen::VectorXd p(2 * g.n_edges());
  for (int e = 0; e < g.n_edges(); ++e) {
    for (int side = 0; side < 2; ++side) {
      int w = g.endpoint(e, 1 - side);
      p(message_slot(e, side)) = -g.edge(e).weight * voltages(w);
    }
  }
  return p;
}

CheckResult make_result(const std::string& name, double residual, double tol) {
  return {name, residual, tol, residual <= tol};
}

}  // namespace

std::vector<CheckResult> verify_fixpoint() {
  std::vector<CheckResult> results;
  std::mt19937 rng(kCorpusSeed);
  for (const CorpusEntry& entry : builtin_corpus()) {
    const WeightedGraph& g = entry.graph;
    if (g.n_vertices() > 12) continue;
    Injection b = random_zero_sum_injection(g.n_vertices(), rng);
    ExactSolution exact = solve_exact(g, b);

    double worst_flow = 0.0, worst_volt = 0.0;
    FlowMessageState fs = init_flow(g, optimal_perturbation_flow(g, exact.voltages));
    VoltageMessageState vs =
        init_voltage(g, optimal_perturbation_voltage(g, exact.voltages));
    for (int t = 1; t <= 6; ++t) {
      fs = step_flow(fs, g, b);
      vs = step_voltage(vs, g, b);
      worst_flow = std::max(worst_flow, (estimate_flow(fs, g) - exact.flows)
                                            .lpNorm<Eigen::Infinity>());
      worst_volt = std::max(worst_volt,
                            (estimate_voltage(vs, g, b) - exact.voltages)
                                .lpNorm<Eigen::Infinity>());
    }
    results.push_back(make_result("fixpoint/flow/" + entry.name, worst_flow, 1e-9));
    results.push_back(
        make_result("fixpoint/voltage/" + entry.name, worst_volt, 1e-9));
  }
  return results;
}

std::vector<CheckResult> verify_tree_equivalence() {
  std::vector<CheckResult> results;
  std::mt19937 rng(kCorpusSeed + 1);
  for (const CorpusEntry& entry : builtin_corpus()) {
    const WeightedGraph& g = entry.graph;
    if (g.n_vertices() > 8) continue;
    Injection b = random_zero_sum_injection(g.n_vertices(), rng);
    Eigen::VectorXd p = random_perturbation(2 * g.n_edges(), rng);

    double worst_flow = 0.0, worst_volt = 0.0;
    FlowMessageState fs = init_flow(g, p);
    VoltageMessageState vs = init_voltage(g, p);
    for (int t = 1; t <= 5; ++t) {
      fs = step_flow(fs, g, b);
      vs = step_voltage(vs, g, b);
      Eigen::VectorXd xhat = estimate_flow(fs, g);
      Eigen::VectorXd nuhat = estimate_voltage(vs, g, b);
      for (int e = 0; e < g.n_edges(); ++e) {
        ComputationTree tree = build_tree_flow(g, e, t);
        double root = solve_tree_flow(tree, b, p)(0);
        worst_flow = std::max(worst_flow, std::abs(root - xhat(e)));
      }
      for (int v = 0; v < g.n_vertices(); ++v) {
        ComputationTree tree = build_tree_voltage(g, v, t);
        double root = solve_tree_voltage(tree, b, p)(0);
        worst_volt = std::max(worst_volt, std::abs(root - nuhat(v)));
      }
    }
    results.push_back(make_result("tree/flow/" + entry.name, worst_flow, 1e-9));
    results.push_back(make_result("tree/voltage/" + entry.name, worst_volt, 1e-9));
  }
  return results;
}

namespace {

WeightedGraph weighted_cycle(int n, const std::vector<double>& pattern) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    edges.push_back({i, (i + 1) % n, pattern[i % pattern.size()]});
  }
  return WeightedGraph::build(edges);
}

}  // namespace

std::vector<CheckResult> verify_cycle_characterization() {
  std::vector<CheckResult> results;
  std::mt19937 rng(kCorpusSeed + 2);
  const std::vector<std::pair<std::string, std::vector<double>>> patterns = {
      {"equal", {1.0}},
      {"w236", {2.0, 3.0, 6.0}},
      {"ramp", {0.5, 0.8, 1.1, 1.4, 1.7, 2.0}},
  };
  for (int n : {7, 9, 12}) {
    for (const auto& [pname, pattern] : patterns) {
      WeightedGraph g = weighted_cycle(n, pattern);
      Injection b = random_zero_sum_injection(n, rng);
      ExactSolution exact = solve_exact(g, b);
      VoltageMessageState vs = init_voltage(g);
      FlowMessageState fs = init_flow(g);
      double worst = 0.0, worst_ab = 0.0;
      for (int t = 1; t <= 8; ++t) {
        vs = step_voltage(vs, g, b);
        fs = step_flow(fs, g, b);
        if (t < 2) continue;
        Eigen::VectorXd nuhat = estimate_voltage(vs, g, b);
        Eigen::VectorXd xhat = estimate_flow(fs, g);
        for (int v = 0; v < n; ++v) {
          double pred = error_characterization_cycle_voltage(g, b, v, t);
          worst = std::max(worst,
                           std::abs(pred - (exact.voltages(v) - nuhat(v))));
        }
        for (int e = 0; e < g.n_edges(); ++e) {
          double pred = error_characterization_cycle_flow(g, b, e, t);
          worst = std::max(worst, std::abs(pred - (exact.flows(e) - xhat(e))));
        }
        if (pname == "equal") {
          for (int v = 0; v < n; ++v) {
            worst_ab = std::max(worst_ab, std::abs(cycle_alpha(g, v, t) - 0.5));
          }
          for (int e = 0; e < g.n_edges(); ++e) {
            worst_ab = std::max(
                worst_ab, std::abs(cycle_beta(g, e, t) - 1.0 / (2.0 * t + 1.0)));
          }
        }
      }
      std::string name = "cycle/" + std::to_string(n) + "/" + pname;
      results.push_back(make_result(name, worst, 1e-10));
      if (pname == "equal") {
        results.push_back(make_result(name + "/alpha-beta", worst_ab, 1e-10));
      }
    }
  }
  return results;
}

std::vector<CheckResult> verify_regular_characterization() {
  std::vector<CheckResult> results;
  std::mt19937 rng(kCorpusSeed + 3);
  const std::vector<std::string> wanted = {"K4", "K5", "petersen", "cc2_10",
                                           "torus3x3"};
  for (const CorpusEntry& entry : builtin_corpus()) {
    if (std::find(wanted.begin(), wanted.end(), entry.name) == wanted.end()) {
      continue;
    }
    const WeightedGraph& g = entry.graph;
    Injection b = random_zero_sum_injection(g.n_vertices(), rng);
    ExactSolution exact = solve_exact(g, b);
    VoltageMessageState vs = init_voltage(g);
    FlowMessageState fs = init_flow(g);
    double worst = 0.0;
    for (int t = 1; t <= 6; ++t) {
      vs = step_voltage(vs, g, b);
      fs = step_flow(fs, g, b);
      if (t < 3) continue;
      Eigen::VectorXd pred_v = error_characterization_regular_voltage(g, b, t);
      Eigen::VectorXd pred_f = error_characterization_regular_flow(g, b, t);
      Eigen::VectorXd err_v = exact.voltages - estimate_voltage(vs, g, b);
      Eigen::VectorXd err_f = exact.flows - estimate_flow(fs, g);
      worst = std::max(worst, (pred_v - err_v).lpNorm<Eigen::Infinity>());
      worst = std::max(worst, (pred_f - err_f).lpNorm<Eigen::Infinity>());
    }
    results.push_back(make_result("regular/" + entry.name, worst, 1e-8));
  }
  return results;
}

std::vector<CheckResult> verify_constants() {
  std::vector<CheckResult> results;
  double violation = 0.0;
  bool threw = false;
  for (int d = 3; d <= 10 && !threw; ++d) {
    for (int t = 3; t <= 50; ++t) {
      try {
        RegularConstants rc = regular_constants(d, t);
        double lo = (d - 2.0) / (d - 1.0);
        violation = std::max(violation, lo - rc.b_dt);
        violation = std::max(violation, rc.b_dt - rc.c_dt);
        violation = std::max(violation, 1.0 - rc.c_dt);
        violation = std::max(violation, rc.c_dt - 4.0);
      } catch (const Error&) {
        threw = true;
        violation = 1.0;
        break;
      }
    }
  }
  results.push_back(make_result("constants/bounds-d3..10-t3..50",
                                std::max(violation, 0.0), 1e-12));
  return results;
}

std::vector<CheckResult> verify_walks() {
  std::vector<CheckResult> results;

  // Recursion vs definitional conditioned distributions.
  for (const std::string name : {"K4", "petersen", "cc2_10"}) {
    for (const CorpusEntry& entry : builtin_corpus()) {
      if (entry.name != name) continue;
      double worst = 0.0;
      for (int t = 1; t <= 6; ++t) {
        DeltaMatrix rec = delta_tilde_recursion(entry.graph, t);
        DeltaMatrix def =
            delta_tilde_matrix(entry.graph, nb_distribution(entry.graph, t));
        worst = std::max(worst,
                         (rec.rows - def.rows).cwiseAbs().maxCoeff());
      }
      results.push_back(make_result("walks/recursion/" + name, worst, 1e-12));
    }
  }

  // Row stochasticity of P^(t) and the conditioned rows.
  {
    double worst = 0.0;
    for (const CorpusEntry& entry : builtin_corpus()) {
      if (!entry.graph.is_regular() || !entry.graph.has_equal_weights()) continue;
      if (entry.graph.n_vertices() > 30) continue;
      for (int t = 0; t <= 6; ++t) {
        WalkDistribution dist = nb_distribution(entry.graph, t);
        worst = std::max(
            worst, (dist.P.rowwise().sum().array() - 1.0).abs().maxCoeff());
        worst = std::max(
            worst,
            (dist.P_excl.rowwise().sum().array() - 1.0).abs().maxCoeff());
        if (dist.P.minCoeff() < 0.0 || dist.P_excl.minCoeff() < 0.0) {
          worst = std::max(worst, 1.0);
        }
      }
    }
    results.push_back(make_result("walks/row-stochastic", worst, 1e-12));
  }

  // Bipartite neighbors never overlap: TV of every Delta row is exactly 1.
  {
    double worst = 0.0;
    for (const std::string name : {"cycle12", "torus4x4"}) {
      for (const CorpusEntry& entry : builtin_corpus()) {
        if (entry.name != name) continue;
        for (int t = 1; t <= 6; ++t) {
          DeltaMatrix delta =
              delta_matrix(entry.graph, nb_distribution(entry.graph, t));
          worst = std::max(
              worst, (tv_profile(delta).array() - 1.0).abs().maxCoeff());
        }
      }
    }
    results.push_back(make_result("walks/bipartite-disjoint", worst, 1e-12));
  }

  // Hitting-time route to the restricted Laplacian inverse vs direct
  // inversion, removing 1..3 vertices.
  {
    double worst = 0.0;
    std::mt19937 rng(kCorpusSeed + 4);
    for (const CorpusEntry& entry : builtin_corpus()) {
      const WeightedGraph& g = entry.graph;
      if (g.n_vertices() > 12) continue;
      for (int zsize = 1; zsize <= 3 && zsize < g.n_vertices() - 1; ++zsize) {
        std::vector<int> removed;
        while (static_cast<int>(removed.size()) < zsize) {
          int z = static_cast<int>(rng() % g.n_vertices());
          if (std::find(removed.begin(), removed.end(), z) == removed.end()) {
            removed.push_back(z);
          }
        }
        Eigen::MatrixXd direct = restricted_laplacian(g, removed).inverse();
        std::vector<int> kept;
        for (int v = 0; v < g.n_vertices(); ++v) {
          if (std::find(removed.begin(), removed.end(), v) == removed.end()) {
            kept.push_back(v);
          }
        }
        for (size_t i = 0; i < kept.size(); ++i) {
          for (size_t j = 0; j < kept.size(); ++j) {
            double walk = restricted_laplacian_inverse_via_walks(
                g, removed, kept[i], kept[j]);
            worst = std::max(worst, std::abs(walk - direct(i, j)));
          }
        }
      }
    }
    results.push_back(make_result("walks/restricted-inverse", worst, 1e-10));
  }

  return results;
}

std::vector<std::string> suite_names() {
  return {"fixpoint",  "tree-equivalence", "cycle-characterization",
          "regular-characterization", "constants", "walks"};
}

std::vector<CheckResult> run_suite(const std::string& name) {
  if (name == "fixpoint") return verify_fixpoint();
  if (name == "tree-equivalence") return verify_tree_equivalence();
  if (name == "cycle-characterization") return verify_cycle_characterization();
  if (name == "regular-characterization") return verify_regular_characterization();
  if (name == "constants") return verify_constants();
  if (name == "walks") return verify_walks();
  throw Error(ErrorCode::InvalidParameter, "unknown suite: " + name);
}

}  // namespace minsum
