#ifndef MINSUM_EXACT_HPP
#define MINSUM_EXACT_HPP

#include <Eigen/Dense>

#include "minsum/graph.hpp"

namespace minsum {

/// Ground-truth solution of the voltage and flow problems: the zero-sum
/// voltages nu* = L^+ b and the induced minimum-energy flows x* (signed with
/// respect to the stored orientation).
struct ExactSolution {
  Eigen::VectorXd voltages;  // indexed by vertex
  Eigen::VectorXd flows;     // indexed by directed edge
  int iterations = 0;
  double residual = 0.0;
};

/// Solves L nu = b on the zero-sum subspace by conjugate gradient with
/// per-iterate re-projection (relative residual 1e-12, cap 20n iterations);
/// falls back to a dense eigendecomposition for n <= 512 when CG stalls.
ExactSolution solve_exact(const WeightedGraph& graph, const Injection& b);

/// Minimizer of (1/2) x^T R x + h^T x subject to A x = b, for diagonal
/// positive R, via the pseudoinverse closed form with L = A R^-1 A^T.
Eigen::VectorXd solve_constrained_qp(const Eigen::VectorXd& R_diag,
                                     const Eigen::VectorXd& h,
                                     const Eigen::MatrixXd& A,
                                     const Eigen::VectorXd& b);

/// Symmetric PSD pseudoinverse via eigendecomposition (eigenvalues below
/// 1e-10 * lambda_max are treated as zero).
Eigen::MatrixXd pseudo_inverse_spd(const Eigen::MatrixXd& M);

enum class NormKind { LInf, L2, LNorm };

double norm(NormKind kind, const Eigen::VectorXd& v, const WeightedGraph& graph);

/// Energy norm of v through a row-stochastic matrix M, with per-edge total
/// variation denominators.  Edge terms whose row pair coincides (TV = 0) are
/// dropped; their numerators vanish as well so the limit of the term is 0.
double norm_L_M(const Eigen::VectorXd& v, const Eigen::MatrixXd& M,
                const WeightedGraph& graph);

/// Total variation distance between rows v and w of M.
double tv_distance(const Eigen::MatrixXd& M, int v, int w);

}  // namespace minsum

#endif
