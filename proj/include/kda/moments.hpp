#ifndef KDA_MOMENTS_HPP
#define KDA_MOMENTS_HPP

#include <cstdint>
#include <unordered_map>
#include <variant>

#include <Eigen/Core>

#include "kda/multiindex.hpp"

namespace kda {

struct DiagonalGaussian {
  Eigen::VectorXd mean;
  Eigen::VectorXd variance; // per-coordinate, all > 0
};

struct FullGaussian {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance; // symmetric positive definite
};

struct Empirical {
  Eigen::MatrixXd points; // rows = observations
};

/// One class of a two-class problem: a distribution plus its prior.
class ClassSpec {
public:
  ClassSpec(DiagonalGaussian g, double prior);
  ClassSpec(FullGaussian g, double prior);
  ClassSpec(Empirical e, double prior);

  int dimension() const;
  double prior() const { return prior_; }
  const std::variant<DiagonalGaussian, FullGaussian, Empirical>& dist() const { return dist_; }

  bool is_empirical() const { return std::holds_alternative<Empirical>(dist_); }
  bool is_full_gaussian() const { return std::holds_alternative<FullGaussian>(dist_); }

private:
  std::variant<DiagonalGaussian, FullGaussian, Empirical> dist_;
  double prior_;
};

class TwoClassProblem {
public:
  TwoClassProblem(ClassSpec class1, ClassSpec class2);
  const ClassSpec& class1() const { return class1_; }
  const ClassSpec& class2() const { return class2_; }
  int dimension() const { return class1_.dimension(); }

private:
  ClassSpec class1_;
  ClassSpec class2_;
};

/// Monte-Carlo options for the FullGaussian oracle path.
struct McOptions {
  std::uint64_t seed = 20240901;
  int batches = 16;
  int points_per_batch = 4096;
};

struct EstimatedMoment {
  double value = 0.0;
  double std_error = 0.0; // 0 for exact (closed-form / empirical) moments
};

/// Raw moments E[X^j] of one class, complete for all |j| <= max_degree.
/// The zero index always maps to 1. For FullGaussian classes values are
/// randomized-QMC estimates and carry standard errors.
class MomentTable {
public:
  static MomentTable compute(const ClassSpec& cls, int max_degree, McOptions mc = {});

  int dimension() const { return dimension_; }
  int max_degree() const { return max_degree_; }
  double at(const MultiIndex& j) const;
  double std_error(const MultiIndex& j) const; // 0 unless MC-backed

private:
  int dimension_ = 0;
  int max_degree_ = 0;
  std::unordered_map<MultiIndex, EstimatedMoment, MultiIndexHash> values_;
};

struct DeltaVector {
  IndexSet indices;
  Eigen::VectorXd values; // E_1[X^j] - E_2[X^j] in canonical order
};

struct PooledCovariance {
  IndexSet indices;
  Eigen::MatrixXd w; // pi_1 Cov_1[X^i, X^j] + pi_2 Cov_2[X^i, X^j]
};

/// E[X^k] for X ~ N(mu, sigma2) via m_k = mu*m_{k-1} + (k-1)*sigma2*m_{k-2}.
double gaussian_raw_moment_1d(double mu, double sigma2, int k);

/// E[X^j] for a single class. Diagonal Gaussians use the 1-d recurrence per
/// coordinate, empirical classes average monomials, full-covariance Gaussians
/// use the seeded QMC estimate.
double raw_moment(const ClassSpec& cls, const MultiIndex& j, McOptions mc = {});

/// FullGaussian QMC estimate with its standard error (Halton points under
/// Cranley-Patterson shifts; the oracle path for moment cross-checks).
EstimatedMoment raw_moment_mc(const FullGaussian& g, const MultiIndex& j, McOptions mc = {});

DeltaVector delta_vector(const TwoClassProblem& problem, const IndexSet& idx);
PooledCovariance pooled_covariance(const TwoClassProblem& problem, const IndexSet& idx);

/// Table-backed variants used by the fitting code so one moment pass serves
/// both Delta and W.
DeltaVector delta_from_tables(const MomentTable& t1, const MomentTable& t2, const IndexSet& idx);
PooledCovariance pooled_from_tables(const MomentTable& t1, const MomentTable& t2,
                                    double prior1, const IndexSet& idx);

} // namespace kda

#endif
