#ifndef KDA_GEIG_HPP
#define KDA_GEIG_HPP

#include <Eigen/Core>

#include "kda/common.hpp"

namespace kda {

/// Solution of the rank-one generalized eigenproblem
///   (delta delta^T) nu = lambda (W + ridge I) nu.
/// nu has unit norm with its largest-magnitude entry positive, except in the
/// degenerate case (delta ~ 0) where lambda = 0 and nu is the zero vector.
struct EigenSolution {
  double lambda = 0.0;
  Eigen::VectorXd nu;
  bool degenerate = false;
  double ridge_used = 0.0;
};

/// Closed-form solve: lambda = delta^T (W + ridge I)^{-1} delta with
/// eigenvector proportional to (W + ridge I)^{-1} delta, via Cholesky.
/// Throws SingularWithinClass when the 1-norm condition estimate of
/// W + ridge I exceeds 1e14 or the factorization fails.
EigenSolution rank_one_geig(const Eigen::VectorXd& delta, const Eigen::MatrixXd& w,
                            double ridge = 0.0);

/// All generalized eigenpairs of B nu = lambda W nu for symmetric B and
/// symmetric positive definite W, by Cholesky whitening followed by a
/// symmetric eigendecomposition. Sorted by eigenvalue descending; columns of
/// `eigenvectors` are unit-norm with the rank-one sign convention. Oracle for
/// rank_one_geig.
struct GeigPairs {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
};
GeigPairs brute_force_geig(const Eigen::MatrixXd& b, const Eigen::MatrixXd& w);

/// Shared sign convention: flips v so its largest-magnitude entry is positive.
void fix_sign(Eigen::VectorXd& v);

} // namespace kda

#endif
