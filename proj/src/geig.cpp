#include "kda/geig.hpp"

#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace kda {

namespace {
constexpr double kDegenerateDeltaNorm = 1e-12;
constexpr double kMaxCondition = 1e14;
} // namespace

void fix_sign(Eigen::VectorXd& v) {
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v[imax] < 0.0) v = -v;
}

EigenSolution rank_one_geig(const Eigen::VectorXd& delta, const Eigen::MatrixXd& w,
                            double ridge) {
  if (w.rows() != w.cols() || w.rows() != delta.size())
    throw Error("rank_one_geig: dimension mismatch between delta and W");
  if (ridge < 0.0) throw Error("rank_one_geig: ridge must be nonnegative");

  EigenSolution sol;
  sol.ridge_used = ridge;
  if (delta.norm() < kDegenerateDeltaNorm) {
    sol.degenerate = true;
    sol.nu = Eigen::VectorXd::Zero(delta.size());
    return sol;
  }

  Eigen::MatrixXd a = w;
  a.diagonal().array() += ridge;
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success)
    throw SingularWithinClass(
        "rank_one_geig: W + ridge*I is not positive definite (ridge = " +
            std::to_string(ridge) + ")",
        ridge);
  if (llt.rcond() < 1.0 / kMaxCondition)
    throw SingularWithinClass(
        "rank_one_geig: condition estimate of W + ridge*I exceeds 1e14 (ridge = " +
            std::to_string(ridge) + ")",
        ridge);

  Eigen::VectorXd y = llt.solve(delta);
  sol.lambda = delta.dot(y);
  sol.nu = y / y.norm();
  fix_sign(sol.nu);
  return sol;
}

GeigPairs brute_force_geig(const Eigen::MatrixXd& b, const Eigen::MatrixXd& w) {
  if (b.rows() != b.cols() || w.rows() != w.cols() || b.rows() != w.rows())
    throw Error("brute_force_geig: B and W must be square with equal size");
  Eigen::LLT<Eigen::MatrixXd> llt(w);
  if (llt.info() != Eigen::Success)
    throw Error("brute_force_geig: W is not positive definite");

  // whiten: M = L^{-1} B L^{-T}, then ordinary symmetric eigenproblem
  Eigen::MatrixXd l = llt.matrixL();
  Eigen::MatrixXd m = l.triangularView<Eigen::Lower>().solve(b);
  m = l.triangularView<Eigen::Lower>().solve(m.transpose().eval());
  m = 0.5 * (m + m.transpose().eval());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success)
    throw Error("brute_force_geig: eigendecomposition failed");

  const Eigen::Index n = b.rows();
  GeigPairs out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    // ascending -> descending
    Eigen::Index src = n - 1 - k;
    out.eigenvalues[k] = es.eigenvalues()[src];
    Eigen::VectorXd v =
        l.transpose().triangularView<Eigen::Upper>().solve(es.eigenvectors().col(src));
    v.normalize();
    fix_sign(v);
    out.eigenvectors.col(k) = v;
  }
  return out;
}

} // namespace kda
