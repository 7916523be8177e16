#ifndef KDA_SAMPLE_HPP
#define KDA_SAMPLE_HPP

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "kda/kernels.hpp"
#include "kda/population.hpp"

namespace kda {

/// Two-class training data; labels take values 1 and 2.
struct LabeledSample {
  Eigen::MatrixXd points; // n x p
  std::vector<int> labels;

  int size() const { return static_cast<int>(points.rows()); }
  int dimension() const { return static_cast<int>(points.cols()); }
  int class_count(int label) const;
  void validate() const; // both classes nonempty, labels in {1,2}, sizes match
};

/// Dual-coefficient kernel discriminant: f(x) = sum_i alpha_i K(x_i, x).
struct SampleKdaModel {
  Eigen::MatrixXd points;
  std::vector<int> labels;
  KernelSpec kernel;
  Eigen::VectorXd alpha;
  double lambda = 0.0;
  bool degenerate = false;
  double ridge = 0.0;
  std::optional<double> threshold;
};

Eigen::MatrixXd kernel_matrix(const LabeledSample& sample, const KernelSpec& spec);

/// B_n = (Kbar_1 - Kbar_2)(Kbar_1 - Kbar_2)^T and the pooled within-class
/// matrix W_n assembled from the class blocks of the kernel matrix.
struct BetweenWithin {
  Eigen::MatrixXd b;
  Eigen::MatrixXd w;
  Eigen::VectorXd kbar_diff; // Kbar_1 - Kbar_2, so B = diff diff^T
};
BetweenWithin between_within(const LabeledSample& sample, const KernelSpec& spec);

/// Ridge used when none is requested: 1e-8 * trace(W_n) / n. W_n is always
/// rank-deficient (rank <= n - 2), so some ridge is required.
double default_sample_ridge(const Eigen::MatrixXd& w);

/// Dual-path fit: top generalized eigenvector of B_n a = lambda (W_n + r I) a.
SampleKdaModel fit_sample(const LabeledSample& sample, const KernelSpec& spec,
                          std::optional<double> ridge = std::nullopt);

/// Moment-space fast path for polynomial kernels: empirical class moments on
/// the monomial basis, then the population eigensystem. Produces the same
/// score function as the dual path up to sign, positive scale, and (for
/// inhomogeneous kernels) an additive constant.
DiscriminantModel fit_sample_moments(const LabeledSample& sample, const KernelSpec& spec,
                                     std::optional<double> ridge = std::nullopt);

double score(const SampleKdaModel& model, const Eigen::VectorXd& x);
Eigen::VectorXd score_all(const SampleKdaModel& model, const Eigen::MatrixXd& points);

/// Exact 0-1-error threshold scan over midpoints of sorted scores plus
/// sentinels below/above; ties prefer the smaller |threshold|. `flipped`
/// reports that scores were negated so class 1 ends up on the high side.
struct ThresholdChoice {
  double threshold = 0.0;
  double training_error = 0.0;
  bool flipped = false;
};
ThresholdChoice choose_threshold_for_scores(const Eigen::VectorXd& scores,
                                            const std::vector<int>& labels);

/// Orients the model (possibly negating alpha / nu) and stores the chosen
/// threshold. Returns the choice made.
ThresholdChoice choose_threshold(SampleKdaModel& model, const LabeledSample& sample);
ThresholdChoice choose_threshold(DiscriminantModel& model, double& threshold,
                                 const LabeledSample& sample);

/// score > threshold -> class 1, else class 2.
std::vector<int> classify(const SampleKdaModel& model, const Eigen::MatrixXd& points);
std::vector<int> classify_scores(const Eigen::VectorXd& scores, double threshold);

struct ConfusionReport {
  int n_true1_pred1 = 0, n_true1_pred2 = 0;
  int n_true2_pred1 = 0, n_true2_pred2 = 0;
  double overall_error = 0.0;
  double class1_error = 0.0; // fraction of true class 1 misassigned
  double class2_error = 0.0;
};
ConfusionReport confusion(const std::vector<int>& predicted, const std::vector<int>& truth);
ConfusionReport classify_eval(const SampleKdaModel& model, const Eigen::MatrixXd& points,
                              const std::vector<int>& truth);

} // namespace kda

#endif
