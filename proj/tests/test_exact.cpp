#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minsum/corpus.hpp"
#include "minsum/exact.hpp"
#include "minsum/walks.hpp"
#include "oracles.hpp"

using namespace minsum;

TEST_CASE("triangle voltages and flows") {
  WeightedGraph g = build_graph({{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}});
  Injection b((Eigen::VectorXd(3) << 1, -1, 0).finished());
  ExactSolution sol = solve_exact(g, b);
  CHECK(sol.voltages(0) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(sol.voltages(1) == doctest::Approx(-1.0 / 3).epsilon(1e-12));
  CHECK(sol.voltages(2) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(sol.flows(0) == doctest::Approx(2.0 / 3).epsilon(1e-12));
  CHECK(sol.flows(1) == doctest::Approx(-1.0 / 3).epsilon(1e-12));
  CHECK(sol.flows(2) == doctest::Approx(-1.0 / 3).epsilon(1e-12));
}

TEST_CASE("zero injection gives zero solution") {
  WeightedGraph g = make_petersen();
  ExactSolution sol = solve_exact(g, Injection(Eigen::VectorXd::Zero(10)));
  CHECK(sol.voltages.cwiseAbs().maxCoeff() == 0.0);
  CHECK(sol.flows.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("solution invariants on the corpus") {
  std::mt19937 rng(kCorpusSeed + 10);
  for (const CorpusEntry& entry : builtin_corpus()) {
    const WeightedGraph& g = entry.graph;
    Injection b = random_zero_sum_injection(g.n_vertices(), rng);
    ExactSolution sol = solve_exact(g, b);
    CAPTURE(entry.name);
    double bnorm = b.values().norm();
    CHECK(std::abs(sol.voltages.sum()) <=
          1e-10 * g.n_vertices() *
              std::max(sol.voltages.cwiseAbs().maxCoeff(), 1e-30));
    CHECK((g.apply_laplacian(sol.voltages) - b.values()).norm() <=
          1e-9 * bnorm);
    // Kirchhoff: A x = b.
    Eigen::VectorXd net = Eigen::VectorXd::Zero(g.n_vertices());
    for (int e = 0; e < g.n_edges(); ++e) {
      net(g.edge(e).tail) += sol.flows(e);
      net(g.edge(e).head) -= sol.flows(e);
    }
    CHECK((net - b.values()).norm() <= 1e-9 * bnorm);
    // Ohm per edge.
    for (int e = 0; e < g.n_edges(); ++e) {
      double expect = g.edge(e).weight *
                      (sol.voltages(g.edge(e).tail) - sol.voltages(g.edge(e).head));
      CHECK(std::abs(sol.flows(e) - expect) <= 1e-10);
    }
    // Duality: dual objective equals primal energy.
    double dual = -0.5 * sol.voltages.dot(g.apply_laplacian(sol.voltages)) +
                  b.values().dot(sol.voltages);
    double primal = 0.5 * sol.flows.cwiseProduct(g.resistances())
                              .dot(sol.flows);
    CHECK(dual == doctest::Approx(primal).epsilon(1e-9));
    // Against the SVD pseudoinverse oracle.
    Eigen::VectorXd ref = oracles::voltages_pinv(g, b.values());
    CHECK((sol.voltages - ref).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("constrained QP closed form") {
  SUBCASE("symmetric split") {
    Eigen::VectorXd R = Eigen::VectorXd::Ones(2);
    Eigen::VectorXd h = Eigen::VectorXd::Zero(2);
    Eigen::MatrixXd A(1, 2);
    A << 1, 1;
    Eigen::VectorXd b(1);
    b << 2;
    Eigen::VectorXd x = solve_constrained_qp(R, h, A, b);
    CHECK(x(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(x(1) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("identity constraints pin x") {
    Eigen::VectorXd R(3);
    R << 1, 2, 3;
    Eigen::VectorXd h(3);
    h << 0.5, -1, 2;
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(3, 3);
    Eigen::VectorXd b(3);
    b << -1, 0.25, 4;
    Eigen::VectorXd x = solve_constrained_qp(R, h, A, b);
    CHECK((x - b).cwiseAbs().maxCoeff() <= 1e-10);
  }
  SUBCASE("weighted split") {
    Eigen::VectorXd R(2);
    R << 1, 2;
    Eigen::VectorXd h = Eigen::VectorXd::Zero(2);
    Eigen::MatrixXd A(1, 2);
    A << 1, 1;
    Eigen::VectorXd b(1);
    b << 3;
    Eigen::VectorXd x = solve_constrained_qp(R, h, A, b);
    CHECK(x(0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(x(1) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("range violation") {
    Eigen::VectorXd R = Eigen::VectorXd::Ones(2);
    Eigen::VectorXd h = Eigen::VectorXd::Zero(2);
    Eigen::MatrixXd A(2, 2);
    A << 1, 0, 1, 0;  // rank 1
    Eigen::VectorXd b(2);
    b << 1, 2;  // not in the range
    try {
      solve_constrained_qp(R, h, A, b);
      FAIL("expected RangeViolation");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::RangeViolation);
    }
  }
  SUBCASE("random instances against the KKT oracle") {
    std::mt19937 rng(kCorpusSeed + 11);
    for (int rep = 0; rep < 25; ++rep) {
      int m = 2 + static_cast<int>(rng() % 19);
      int n = 1 + static_cast<int>(rng() % std::min(m, 20));
      Eigen::VectorXd R(m), h(m);
      for (int i = 0; i < m; ++i) {
        R(i) = uniform_double(rng, 0.2, 3.0);
        h(i) = uniform_double(rng, -1.0, 1.0);
      }
      Eigen::MatrixXd A(n, m);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) A(i, j) = uniform_double(rng, -1.0, 1.0);
      }
      Eigen::VectorXd xr(m);
      for (int j = 0; j < m; ++j) xr(j) = uniform_double(rng, -1.0, 1.0);
      Eigen::VectorXd b = A * xr;  // guaranteed feasible
      Eigen::VectorXd x = solve_constrained_qp(R, h, A, b);
      Eigen::VectorXd ref = oracles::kkt_solve(R, h, A, b);
      CHECK((x - ref).cwiseAbs().maxCoeff() <= 1e-9);
      CHECK((A * x - b).cwiseAbs().maxCoeff() <= 1e-9);
    }
  }
}

TEST_CASE("norms") {
  WeightedGraph g = make_cycle(3);
  SUBCASE("L norm vanishes on constants") {
    Eigen::VectorXd c = Eigen::VectorXd::Constant(3, 4.2);
    CHECK(norm(NormKind::LNorm, c, g) == doctest::Approx(0.0));
  }
  SUBCASE("triangle L norm") {
    Eigen::VectorXd v(3);
    v << 1.0 / 3, -1.0 / 3, 0;
    CHECK(norm(NormKind::LNorm, v, g) ==
          doctest::Approx(std::sqrt(2.0 / 3)).epsilon(1e-12));
  }
  SUBCASE("infinity norm") {
    Eigen::VectorXd v(3);
    v << 2, -3, 1;
    CHECK(norm(NormKind::LInf, v, g) == 3.0);
    CHECK(norm(NormKind::L2, v, g) == doctest::Approx(std::sqrt(14.0)));
  }
}

TEST_CASE("TV-normalized norm") {
  WeightedGraph g = make_petersen();
  SUBCASE("rejects non-stochastic matrices") {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(10, 10);
    try {
      norm_L_M(Eigen::VectorXd::Ones(10), M, g);
      FAIL("expected NonStochasticMatrix");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonStochasticMatrix);
    }
  }
  SUBCASE("coinciding rows are dropped") {
    Eigen::MatrixXd M = Eigen::MatrixXd::Constant(10, 10, 0.1);
    Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(10, -1, 1);
    CHECK(norm_L_M(v, M, g) == doctest::Approx(0.0));
  }
  SUBCASE("bounds the plain L norm through the max TV distance") {
    std::mt19937 rng(kCorpusSeed + 12);
    Eigen::MatrixXd P_prev;
    for (int t : {1, 2, 3, 4}) {
      WalkDistribution dist = nb_distribution(g, t);
      std::vector<Eigen::MatrixXd> mats{dist.P};
      if (P_prev.size() > 0) mats.push_back(0.5 * (P_prev + dist.P));
      P_prev = dist.P;
      for (const Eigen::MatrixXd& M : mats) {
        for (int rep = 0; rep < 5; ++rep) {
          Eigen::VectorXd v(10);
          for (int i = 0; i < 10; ++i) v(i) = uniform_double(rng, -1.0, 1.0);
          double max_tv = 0.0;
          for (const Edge& e : g.edges()) {
            max_tv = std::max(max_tv, tv_distance(M, e.tail, e.head));
          }
          double lhs = norm(NormKind::LNorm, M * v, g);
          double rhs = max_tv * norm_L_M(v, M, g);
          CHECK(lhs <= rhs + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("conjugate gradient handles larger systems") {
  WeightedGraph g = make_k_connected_cycle(600, 2);
  std::mt19937 rng(kCorpusSeed + 13);
  Injection b = random_zero_sum_injection(600, rng);
  ExactSolution sol = solve_exact(g, b);
  CHECK((g.apply_laplacian(sol.voltages) - b.values()).norm() <=
        1e-10 * b.values().norm());
}

TEST_CASE("moderately ill-conditioned weights still solve to tolerance") {
  std::vector<Edge> edges;
  int n = 24;
  for (int i = 0; i < n; ++i) {
    edges.push_back({i, (i + 1) % n, i % 2 == 0 ? 10.0 : 0.1});
  }
  WeightedGraph g = WeightedGraph::build(edges);
  Injection b = dipole(n, 0, n / 2);
  ExactSolution sol = solve_exact(g, b);
  CHECK((g.apply_laplacian(sol.voltages) - b.values()).norm() <=
        1e-9 * b.values().norm());
  for (int e = 0; e < g.n_edges(); ++e) {
    double expect = g.edge(e).weight *
                    (sol.voltages(g.edge(e).tail) - sol.voltages(g.edge(e).head));
    CHECK(std::abs(sol.flows(e) - expect) <= 1e-10 * std::abs(expect) + 1e-12);
  }
}

TEST_CASE("hopelessly conditioned systems report NotConverged") {
  // A 1e12 weight ratio puts the target residual out of reach of double
  // precision for both solver routes; the failure must be reported, not
  // papered over by the drifting recurrence residual.
  std::vector<Edge> edges;
  int n = 24;
  for (int i = 0; i < n; ++i) {
    edges.push_back({i, (i + 1) % n, i % 2 == 0 ? 1e6 : 1e-6});
  }
  WeightedGraph g = WeightedGraph::build(edges);
  Injection b = dipole(n, 0, n / 2);
  try {
    solve_exact(g, b);
    FAIL("expected NotConverged");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotConverged);
    CHECK(std::string(e.what()).find("residual") != std::string::npos);
  }
}
