#include "minsum/exact.hpp"

#include <cmath>
#include <string>

namespace minsum {

namespace {

void project_zero_sum(Eigen::VectorXd& x) {
  x.array() -= x.mean();
}

// CG on the singular Laplacian restricted to the zero-sum subspace.  Every
// iterate is re-projected so roundoff cannot accumulate along the kernel.
bool conjugate_gradient(const WeightedGraph& g, const Eigen::VectorXd& b,
                        double tol, int max_iter, Eigen::VectorXd& x,
                        double& out_residual, int& out_iterations) {
  int n = g.n_vertices();
  x = Eigen::VectorXd::Zero(n);
  double bnorm = b.norm();
  out_residual = bnorm;
  out_iterations = 0;
  if (bnorm == 0.0) return true;

  Eigen::VectorXd r = b;
  Eigen::VectorXd p = r;
  double rs = r.squaredNorm();
  for (int it = 1; it <= max_iter; ++it) {
    Eigen::VectorXd Lp = g.apply_laplacian(p);
    double pLp = p.dot(Lp);
    if (!(pLp > 0.0)) return false;
    double alpha = rs / pLp;
    x += alpha * p;
    r -= alpha * Lp;
    project_zero_sum(x);
    project_zero_sum(r);
    double rs_next = r.squaredNorm();
    out_iterations = it;
    out_residual = std::sqrt(rs_next);
    if (out_residual <= tol * bnorm) {
      // The recurrence residual can drift below the true one on
      // ill-conditioned systems; only the recomputed residual counts.
      Eigen::VectorXd true_r = b - g.apply_laplacian(x);
      project_zero_sum(true_r);
      out_residual = true_r.norm();
      if (out_residual <= tol * bnorm) return true;
      r = std::move(true_r);
      rs_next = r.squaredNorm();
      p = r;
      rs = rs_next;
      continue;
    }
    p = r + (rs_next / rs) * p;
    rs = rs_next;
  }
  return false;
}

}  // namespace

Eigen::MatrixXd pseudo_inverse_spd(const Eigen::MatrixXd& M) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorCode::SingularSystem, "eigendecomposition failed");
  }
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  double cutoff = 1e-10 * std::max(lambda.cwiseAbs().maxCoeff(), 1e-300);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(lambda.size());
  for (int i = 0; i < lambda.size(); ++i) {
    if (lambda(i) > cutoff) inv(i) = 1.0 / lambda(i);
  }
  return eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose();
}

ExactSolution solve_exact(const WeightedGraph& graph, const Injection& inj) {
  int n = graph.n_vertices();
  Eigen::VectorXd b = inj.values();
  project_zero_sum(b);

  ExactSolution sol;
  double residual = 0.0;
  int iterations = 0;
  bool ok = conjugate_gradient(graph, b, 1e-12, 20 * std::max(n, 1),
                               sol.voltages, residual, iterations);
  if (!ok) {
    if (n <= 512) {
      sol.voltages = pseudo_inverse_spd(graph.laplacian()) * b;
      residual = (graph.apply_laplacian(sol.voltages) - b).norm();
      ok = b.norm() == 0.0 || residual <= 1e-9 * b.norm();
    }
    if (!ok) {
      throw Error(ErrorCode::NotConverged,
                  "exact solve did not converge: residual " +
                      std::to_string(residual) + " after " +
                      std::to_string(iterations) + " iterations");
    }
  }
  project_zero_sum(sol.voltages);
  sol.residual = residual;
  sol.iterations = iterations;

  sol.flows.resize(graph.n_edges());
  for (int e = 0; e < graph.n_edges(); ++e) {
    const Edge& ed = graph.edge(e);
    sol.flows(e) = ed.weight * (sol.voltages(ed.tail) - sol.voltages(ed.head));
  }
  return sol;
}

Eigen::VectorXd solve_constrained_qp(const Eigen::VectorXd& R_diag,
                                     const Eigen::VectorXd& h,
                                     const Eigen::MatrixXd& A,
                                     const Eigen::VectorXd& b) {
  int m = static_cast<int>(R_diag.size());
  if (A.cols() != m || h.size() != m || A.rows() != b.size()) {
    throw Error(ErrorCode::InvalidParameter,
                "inconsistent dimensions in constrained QP");
  }
  for (int i = 0; i < m; ++i) {
    if (!(R_diag(i) > 0.0)) {
      throw Error(ErrorCode::InvalidParameter,
                  "R must have strictly positive diagonal entries");
    }
  }
  Eigen::VectorXd Rinv = R_diag.cwiseInverse();
  Eigen::MatrixXd L = A * Rinv.asDiagonal() * A.transpose();
  Eigen::MatrixXd Lplus = pseudo_inverse_spd(L);

  // b must lie in range(A) = range(L): the projection L L^+ b must recover b.
  Eigen::VectorXd b_proj = L * (Lplus * b);
  double scale = std::max(1.0, b.lpNorm<Eigen::Infinity>());
  if ((b_proj - b).lpNorm<Eigen::Infinity>() > 1e-10 * scale) {
    throw Error(ErrorCode::RangeViolation,
                "right-hand side is not in the range of A");
  }

  Eigen::VectorXd nu = Lplus * (b + A * Rinv.cwiseProduct(h));
  return Rinv.cwiseProduct(A.transpose() * nu - h);
}

double norm(NormKind kind, const Eigen::VectorXd& v, const WeightedGraph& graph) {
  switch (kind) {
    case NormKind::LInf:
      return v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>();
    case NormKind::L2:
      return v.norm();
    case NormKind::LNorm: {
      double acc = 0.0;
      for (const Edge& e : graph.edges()) {
        double d = v(e.tail) - v(e.head);
        acc += e.weight * d * d;
      }
      return std::sqrt(acc);
    }
  }
  return 0.0;
}

double tv_distance(const Eigen::MatrixXd& M, int v, int w) {
  return 0.5 * (M.row(v) - M.row(w)).lpNorm<1>();
}

double norm_L_M(const Eigen::VectorXd& v, const Eigen::MatrixXd& M,
                const WeightedGraph& graph) {
  int n = graph.n_vertices();
  if (M.rows() != n || M.cols() != n) {
    throw Error(ErrorCode::InvalidParameter, "M must be n x n");
  }
  for (int i = 0; i < n; ++i) {
    if (std::abs(M.row(i).sum() - 1.0) > 1e-10 || M.row(i).minCoeff() < -1e-12) {
      throw Error(ErrorCode::NonStochasticMatrix,
                  "row " + std::to_string(i) + " of M is not a distribution");
    }
  }
  Eigen::VectorXd Mv = M * v;
  double scale = std::max(Mv.lpNorm<Eigen::Infinity>(), 1.0);
  double acc = 0.0;
  for (const Edge& e : graph.edges()) {
    double tv = tv_distance(M, e.tail, e.head);
    double d = Mv(e.tail) - Mv(e.head);
    if (tv <= 1e-15) {
      // Coinciding rows: the numerator vanishes with the denominator and the
      // edge term is dropped as its limit.
      if (std::abs(d) > 1e-10 * scale) {
        throw Error(ErrorCode::InvalidParameter,
                    "zero-TV edge with a nonzero row difference");
      }
      continue;
    }
    acc += e.weight * d * d / (tv * tv);
  }
  return std::sqrt(acc);
}

}  // namespace minsum
