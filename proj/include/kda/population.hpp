#ifndef KDA_POPULATION_HPP
#define KDA_POPULATION_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "kda/geig.hpp"
#include "kda/moments.hpp"
#include "kda/multiindex.hpp"

namespace kda {

/// Which fit produced a polynomial discriminant.
struct FitProvenance {
  enum class Method { Homogeneous, Inhomogeneous, GaussianTruncated, SampleMoments };
  Method method = Method::Homogeneous;
  int degree = 0;       // polynomial degree or truncation degree N
  double omega = 0.0;   // Gaussian bandwidth (GaussianTruncated only)
  std::string kernel;   // kernel name for SampleMoments fits

  std::string method_name() const;
};

/// Polynomial discriminant f(x) = sum_j nu_j x^j over an ordered monomial
/// basis. Degenerate fits (zero moment difference) carry lambda = 0 and a
/// zero coefficient vector.
struct DiscriminantModel {
  IndexSet basis;
  Eigen::VectorXd nu;
  double lambda = 0.0;
  bool degenerate = false;
  double ridge = 0.0;
  FitProvenance provenance;

  int dimension() const { return basis.dimension(); }
};

/// Exact-degree-d fit: Delta and W over S_d, rank-one generalized eigensolve.
DiscriminantModel fit_homogeneous(const TwoClassProblem& problem, int degree,
                                  double ridge = 0.0);

/// Degrees 1..d stacked: block moment-difference vector and covariance matrix.
DiscriminantModel fit_inhomogeneous(const TwoClassProblem& problem, int degree,
                                    double ridge = 0.0);

/// Hermite representation of the Gaussian kernel truncated at |j| = N. The
/// truncated eigensystem has the same moment-difference and pooled-covariance
/// coefficients as the inhomogeneous fit of degree N, so the solve is shared;
/// (omega, N) are recorded in the provenance.
DiscriminantModel fit_gaussian_truncated(const TwoClassProblem& problem, double omega,
                                         int truncation, double ridge = 0.0);

/// (N, lambda_N) for N = 1..n_max from the inhomogeneous fits. Requires
/// n_max <= 20.
std::vector<std::pair<int, double>> lambda_curve(const TwoClassProblem& problem, int n_max,
                                                 double ridge = 0.0);

double evaluate(const DiscriminantModel& model, const Eigen::VectorXd& x);

struct GridSpec {
  double x_min = -3.0, x_max = 3.0;
  double y_min = -3.0, y_max = 3.0;
  int nx = 100, ny = 100;
};

/// Scores of a 2-d model on a rectangular grid; row r = y_r, column c = x_c.
struct GridResult {
  Eigen::VectorXd xs;
  Eigen::VectorXd ys;
  Eigen::MatrixXd scores; // ny x nx
};
GridResult grid_eval(const DiscriminantModel& model, const GridSpec& grid);

/// Same lattice for an arbitrary scoring callable (sample-KDA and RFF grids).
GridResult grid_eval_fn(const GridSpec& grid,
                        const std::function<double(const Eigen::VectorXd&)>& f);

} // namespace kda

#endif
