// Acceptance suite: one line per criterion, exit status 0 only if all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "minsum/characterization.hpp"
#include "minsum/corpus.hpp"
#include "minsum/exact.hpp"
#include "minsum/experiment.hpp"
#include "minsum/minsum_flow.hpp"
#include "minsum/minsum_voltage.hpp"
#include "minsum/walks.hpp"
#include "oracles.hpp"

using namespace minsum;

namespace {

struct Criterion {
  int id;
  std::string name;
  double max_residual;
  double tolerance;
  double seconds;
  double budget_seconds;
  bool pass;
};

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

Eigen::VectorXd perturbation_flow(const WeightedGraph& g,
                                  const Eigen::VectorXd& nu) {
  Eigen::VectorXd p(2 * g.n_edges());
  for (int e = 0; e < g.n_edges(); ++e) {
    for (int side = 0; side < 2; ++side) {
      int w = g.endpoint(e, 1 - side);
      p(message_slot(e, side)) = -g.incidence_sign(e, w) * nu(w);
    }
  }
  return p;
}

Eigen::VectorXd perturbation_voltage(const WeightedGraph& g,
                                     const Eigen::VectorXd& nu) {
  Eigen::VectorXd p(2 * g.n_edges());
  for (int e = 0; e < g.n_edges(); ++e) {
    for (int side = 0; side < 2; ++side) {
      int w = g.endpoint(e, 1 - side);
      p(message_slot(e, side)) = -g.edge(e).weight * nu(w);
    }
  }
  return p;
}

// 1. Fix-point exactness of the optimally perturbed initialization.
Criterion criterion_fixpoint() {
  Timer timer;
  double worst = 0.0;
  std::mt19937 rng(kCorpusSeed + 100);
  for (const CorpusEntry& entry : builtin_corpus()) {
    const WeightedGraph& g = entry.graph;
    if (g.n_vertices() > 12) continue;
    Injection b = random_zero_sum_injection(g.n_vertices(), rng);
    ExactSolution exact = solve_exact(g, b);
    FlowMessageState fs = init_flow(g, perturbation_flow(g, exact.voltages));
    VoltageMessageState vs =
        init_voltage(g, perturbation_voltage(g, exact.voltages));
    for (int t = 1; t <= 6; ++t) {
      fs = step_flow(fs, g, b);
      vs = step_voltage(vs, g, b);
      worst = std::max(worst, (estimate_flow(fs, g) - exact.flows)
                                  .lpNorm<Eigen::Infinity>());
      worst = std::max(worst, (estimate_voltage(vs, g, b) - exact.voltages)
                                  .lpNorm<Eigen::Infinity>());
    }
  }
  return {1, "fix-point exactness", worst, 1e-9, timer.seconds(), 5.0,
          worst < 1e-9};
}

// 2. Min-sum estimates equal computation-tree root solves (random p).
Criterion criterion_tree_equivalence() {
  Timer timer;
  double worst = 0.0;
  std::mt19937 rng(kCorpusSeed + 101);
  for (const CorpusEntry& entry : builtin_corpus()) {
    const WeightedGraph& g = entry.graph;
    if (g.n_vertices() > 8) continue;
    Injection b = random_zero_sum_injection(g.n_vertices(), rng);
    Eigen::VectorXd p = random_perturbation(2 * g.n_edges(), rng);
    FlowMessageState fs = init_flow(g, p);
    VoltageMessageState vs = init_voltage(g, p);
    for (int t = 1; t <= 5; ++t) {
      fs = step_flow(fs, g, b);
      vs = step_voltage(vs, g, b);
      Eigen::VectorXd xhat = estimate_flow(fs, g);
      Eigen::VectorXd nuhat = estimate_voltage(vs, g, b);
      for (int e = 0; e < g.n_edges(); ++e) {
        double root = solve_tree_flow(build_tree_flow(g, e, t), b, p)(0);
        worst = std::max(worst, std::abs(root - xhat(e)));
      }
      for (int v = 0; v < g.n_vertices(); ++v) {
        double root = solve_tree_voltage(build_tree_voltage(g, v, t), b, p)(0);
        worst = std::max(worst, std::abs(root - nuhat(v)));
      }
    }
  }
  return {2, "computation-tree equivalence", worst, 1e-9, timer.seconds(), 30.0,
          worst < 1e-9};
}

WeightedGraph weighted_cycle(int n, const std::vector<double>& pattern) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    edges.push_back({i, (i + 1) % n, pattern[i % pattern.size()]});
  }
  return WeightedGraph::build(edges);
}

// 3. Cycle error characterization, three weight patterns.
Criterion criterion_cycle_characterization() {
  Timer timer;
  double worst = 0.0;
  std::mt19937 rng(kCorpusSeed + 102);
  const std::vector<std::vector<double>> patterns = {
      {1.0}, {2.0, 3.0, 6.0}, {0.5, 0.8, 1.1, 1.4, 1.7, 2.0}};
  for (int n : {7, 9, 12}) {
    for (const std::vector<double>& pattern : patterns) {
      WeightedGraph g = weighted_cycle(n, pattern);
      Injection b = random_zero_sum_injection(n, rng);
      ExactSolution exact = solve_exact(g, b);
      VoltageMessageState vs = init_voltage(g);
      FlowMessageState fs = init_flow(g);
      bool equal = pattern.size() == 1;
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
          if (equal) {
            worst = std::max(worst, std::abs(cycle_alpha(g, v, t) - 0.5));
          }
        }
        for (int e = 0; e < n; ++e) {
          double pred = error_characterization_cycle_flow(g, b, e, t);
          worst = std::max(worst, std::abs(pred - (exact.flows(e) - xhat(e))));
          if (equal) {
            worst = std::max(worst, std::abs(cycle_beta(g, e, t) -
                                             pattern[0] / (2.0 * t + 1.0)));
          }
        }
      }
    }
  }
  return {3, "cycle characterization", worst, 1e-10, timer.seconds(), 5.0,
          worst < 1e-10};
}

// 4. Regular-graph error characterization through walk distributions.
Criterion criterion_regular_characterization() {
  Timer timer;
  double worst = 0.0;
  std::mt19937 rng(kCorpusSeed + 103);
  std::vector<std::pair<std::string, WeightedGraph>> graphs;
  graphs.emplace_back("K4", make_complete(4));
  graphs.emplace_back("K5", make_complete(5));
  graphs.emplace_back("petersen", make_petersen());
  graphs.emplace_back("cc2_10", make_k_connected_cycle(10, 2));
  graphs.emplace_back("torus3x3", make_torus({3, 3}));
  for (const auto& [name, g] : graphs) {
    Injection b = random_zero_sum_injection(g.n_vertices(), rng);
    ExactSolution exact = solve_exact(g, b);
    VoltageMessageState vs = init_voltage(g);
    FlowMessageState fs = init_flow(g);
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
  }
  return {4, "regular characterization", worst, 1e-8, timer.seconds(), 60.0,
          worst < 1e-8};
}

// 5. Bound chain for the characterization constants.
Criterion criterion_constant_bounds() {
  Timer timer;
  double violation = 0.0;
  for (int d = 3; d <= 10; ++d) {
    for (int t = 3; t <= 50; ++t) {
      try {
        RegularConstants rc = regular_constants(d, t);
        if (!std::isfinite(rc.b_dt) || !std::isfinite(rc.c_dt)) {
          violation = std::max(violation, 1.0);
          continue;
        }
        violation = std::max(violation, 0.5 - (d - 2.0) / (d - 1.0));
        violation = std::max(violation, (d - 2.0) / (d - 1.0) - rc.b_dt);
        violation = std::max(violation, rc.b_dt - rc.c_dt);
        violation = std::max(violation, 1.0 - rc.c_dt);
        violation = std::max(violation, rc.c_dt - 4.0);
      } catch (const Error&) {
        violation = std::max(violation, 1.0);
      }
    }
  }
  violation = std::max(violation, 0.0);
  return {5, "constant bound chain", violation, 1e-12, timer.seconds(), 1.0,
          violation <= 1e-12};
}

// 6. Uniform cycle flow error bound and its exact per-edge value.
Criterion criterion_cycle_flow_bound() {
  Timer timer;
  double worst = 0.0;
  std::mt19937 rng(kCorpusSeed + 104);
  for (int n : {7, 9, 12}) {
    for (double omega : {1.0, 2.5}) {
      WeightedGraph g = make_cycle(n, omega);
      Injection b = random_zero_sum_injection(n, rng);
      ExactSolution exact = solve_exact(g, b);
      double nu_inf = exact.voltages.lpNorm<Eigen::Infinity>();
      FlowMessageState fs = init_flow(g);
      for (int t = 1; t <= 8; ++t) {
        fs = step_flow(fs, g, b);
        if (t < 2) continue;
        Eigen::VectorXd err = exact.flows - estimate_flow(fs, g);
        double bound = 2.0 * omega / (2.0 * t + 1.0) * nu_inf;
        worst = std::max(
            worst, err.lpNorm<Eigen::Infinity>() - bound);  // must be <= 0
        for (int e = 0; e < n; ++e) {
          double pred = error_characterization_cycle_flow(g, b, e, t);
          worst = std::max(worst, std::abs(std::abs(err(e)) - std::abs(pred)));
        }
      }
    }
  }
  worst = std::max(worst, 0.0);
  return {6, "cycle flow error bound", worst, 1e-10, timer.seconds(), 1.0,
          worst <= 1e-10};
}

// 7. Oscillatory voltage error on the cycle, exact closed form.
Criterion criterion_cycle_oscillation() {
  Timer timer;
  int n = 9;
  WeightedGraph g = make_cycle(n);
  Injection b = dipole(n, 0, 4);
  ExactSolution exact = solve_exact(g, b);
  const Eigen::VectorXd& nu = exact.voltages;
  double nuL2 = nu.dot(g.apply_laplacian(nu));
  VoltageMessageState vs = init_voltage(g);
  double worst = 0.0;
  std::vector<double> series;
  for (int t = 1; t <= 10; ++t) {
    vs = step_voltage(vs, g, b);
    if (t < 2) continue;
    Eigen::VectorXd err = nu - estimate_voltage(vs, g, b);
    double measured = err.dot(g.apply_laplacian(err));
    double closed = 0.5 * nuL2;
    for (int v = 0; v < n; ++v) {
      closed += 0.5 * nu(v) *
                (2 * nu((v + 2 * t + 2) % n) - nu((v + 2 * t + 3) % n) -
                 nu((v + 2 * t + 1) % n));
    }
    worst = std::max(worst, std::abs(measured - closed));
    series.push_back(std::sqrt(std::max(measured, 0.0)));
  }
  bool monotone = true;
  for (size_t i = 0; i + 1 < series.size(); ++i) {
    if (series[i + 1] > series[i] + 1e-12) monotone = false;
  }
  bool pass = worst <= 1e-9 && !monotone;
  if (monotone) worst = std::max(worst, 1.0);
  return {7, "cycle voltage oscillation", worst, 1e-9, timer.seconds(), 1.0,
          pass};
}

// 8. Restricted Laplacian inverses through killed walks.
Criterion criterion_restricted_laplacian() {
  Timer timer;
  double worst = 0.0;
  std::mt19937 rng(kCorpusSeed + 105);
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
          double walk = restricted_laplacian_inverse_via_walks(g, removed,
                                                               kept[i], kept[j]);
          worst = std::max(worst, std::abs(walk - direct(i, j)));
        }
      }
    }
  }
  bool pass = worst <= 1e-10;

  // Killed-walk matrix powers against exhaustive path enumeration.
  double worst_killed = 0.0;
  for (const CorpusEntry& entry : builtin_corpus()) {
    const WeightedGraph& g = entry.graph;
    if (g.n_vertices() > 7) continue;
    std::vector<int> removed = {0};
    if (g.n_vertices() > 4) removed.push_back(2);
    Eigen::MatrixXd P = killed_transition(g, removed);
    std::vector<int> kept;
    for (int v = 0; v < g.n_vertices(); ++v) {
      if (std::find(removed.begin(), removed.end(), v) == removed.end()) {
        kept.push_back(v);
      }
    }
    Eigen::MatrixXd Pk = Eigen::MatrixXd::Identity(P.rows(), P.cols());
    for (int k = 0; k <= 6; ++k) {
      for (size_t i = 0; i < kept.size(); ++i) {
        Eigen::VectorXd ref = oracles::killed_walk_enum(g, removed, kept[i], k);
        for (size_t j = 0; j < kept.size(); ++j) {
          worst_killed =
              std::max(worst_killed, std::abs(Pk(i, j) - ref(kept[j])));
        }
      }
      Pk = Pk * P;
    }
  }
  pass = pass && worst_killed <= 1e-12;
  worst = std::max(worst, worst_killed);
  return {8, "restricted Laplacian via walks", worst, 1e-10, timer.seconds(),
          10.0, pass};
}

// 9. Walk-difference recursion and the path-count distributions.
Criterion criterion_walk_recursion() {
  Timer timer;
  double worst_rec = 0.0;
  for (const WeightedGraph& g : {make_complete(4), make_petersen()}) {
    for (int t = 1; t <= 6; ++t) {
      DeltaMatrix rec = delta_tilde_recursion(g, t);
      DeltaMatrix def = delta_tilde_matrix(g, nb_distribution(g, t));
      worst_rec =
          std::max(worst_rec, (rec.rows - def.rows).cwiseAbs().maxCoeff());
    }
  }
  double worst_enum = 0.0;
  std::vector<WeightedGraph> graphs = {make_complete(4),  make_complete(5),
                                       make_petersen(),   make_cycle(5),
                                       make_cycle(9),     make_torus({3, 3})};
  for (const WeightedGraph& g : graphs) {
    for (int t = 1; t <= 4; ++t) {
      WalkDistribution dist = nb_distribution(g, t);
      for (int v = 0; v < g.n_vertices(); ++v) {
        Eigen::VectorXd ref = oracles::nb_distribution_enum(g, v, t);
        worst_enum = std::max(
            worst_enum,
            (dist.P.row(v).transpose() - ref).cwiseAbs().maxCoeff());
      }
    }
  }
  bool pass = worst_rec <= 1e-12 && worst_enum <= 1e-12;
  return {9, "walk recursion and enumeration", std::max(worst_rec, worst_enum),
          1e-12, timer.seconds(), 10.0, pass};
}

// 10. Size-independent decay of the walk-difference norms.
Criterion criterion_decay() {
  Timer timer;
  // Pre-wrap windows: diameter/d with diameter 250 (cycle 1000) and 20
  // (torus 20x20).
  DecayResult cycle_big =
      tv_decay(DecayFamily::ConnectedCycle, 4, 1000, 62, DecayWhich::Delta);
  DecayResult cycle_small =
      tv_decay(DecayFamily::ConnectedCycle, 4, 500, 31, DecayWhich::Delta);
  DecayResult torus_big =
      tv_decay(DecayFamily::Torus, 4, 20, 5, DecayWhich::DeltaSum);
  DecayResult torus_small =
      tv_decay(DecayFamily::Torus, 4, 16, 4, DecayWhich::DeltaSum);

  bool pass = cycle_big.fit_valid && torus_big.fit_valid;
  pass = pass && cycle_big.slope > -0.65 && cycle_big.slope < -0.35;
  pass = pass && torus_big.slope > -0.65 && torus_big.slope < -0.35;

  double worst = 0.0;
  auto agree = [&](const DecayResult& a, const DecayResult& b) {
    int shared = std::min(a.window_tmax, b.window_tmax);
    for (const DecayRow& row : a.rows) {
      if (row.t > shared) continue;
      for (const DecayRow& other : b.rows) {
        if (other.t == row.t) {
          worst = std::max(worst, std::abs(row.value - other.value));
        }
      }
    }
  };
  agree(cycle_big, cycle_small);
  agree(torus_big, torus_small);
  pass = pass && worst <= 1e-10;

  std::printf(
      "      decay detail: cycle slope %.3f (window %d), torus slope %.3f "
      "(window %d), size agreement %.2e\n",
      cycle_big.slope, cycle_big.window_tmax, torus_big.slope,
      torus_big.window_tmax, worst);
  return {10, "walk-difference decay", worst, 1e-10, timer.seconds(), 120.0,
          pass};
}

}  // namespace

int main() {
  std::vector<Criterion> results;
  results.push_back(criterion_fixpoint());
  results.push_back(criterion_tree_equivalence());
  results.push_back(criterion_cycle_characterization());
  results.push_back(criterion_regular_characterization());
  results.push_back(criterion_constant_bounds());
  results.push_back(criterion_cycle_flow_bound());
  results.push_back(criterion_cycle_oscillation());
  results.push_back(criterion_restricted_laplacian());
  results.push_back(criterion_walk_recursion());
  results.push_back(criterion_decay());

  bool all_pass = true;
  for (const Criterion& c : results) {
    bool in_budget = c.seconds < c.budget_seconds;
    bool pass = c.pass && in_budget;
    all_pass = all_pass && pass;
    std::printf("%s %2d %-32s max_residual=%.3e tol=%.0e time=%.2fs budget=%gs\n",
                pass ? "PASS" : "FAIL", c.id, c.name.c_str(), c.max_residual,
                c.tolerance, c.seconds, c.budget_seconds);
  }
  std::printf("%s\n", all_pass ? "ACCEPTANCE: all criteria passed"
                               : "ACCEPTANCE: FAILURES PRESENT");
  return all_pass ? 0 : 1;
}
