#ifndef KDA_SPAM_HPP
#define KDA_SPAM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "kda/dataprep.hpp"
#include "kda/population.hpp"
#include "kda/sample.hpp"

namespace kda {

/// End-to-end spam experiment: load, zero-replace + transform, correlation
/// PCA, stratified split, then one inhomogeneous-polynomial discriminant per
/// degree fitted on the training scores via the moment-space path.
/// Regular email is class 1, spam is class 2.
struct SpamOptions {
  std::string data_path;
  std::vector<int> degrees = {1, 2, 3, 4, 5, 6};
  int n_components = 2;
  double train_frac = 0.6;
  std::uint64_t seed = 1;
  TransformPolicy policy = TransformPolicy::LogitLog;
};

struct SpamDegreeResult {
  int degree = 0;
  double ratio = 0.0; // between/within eigenvalue of the fit
  double training_error = 0.0;
  double test_misclassified_spam = 0.0;
  double test_misclassified_regular = 0.0;
  double test_overall_error = 0.0;
  DiscriminantModel model;
  double threshold = 0.0;
};

struct SpamOutcome {
  int n_rows = 0;
  double spam_fraction = 0.0;
  PcaModel pca;
  Eigen::MatrixXd train_scores, test_scores;
  std::vector<int> train_labels, test_labels; // class labels 1/2
  std::vector<SpamDegreeResult> per_degree;
  double explained_first_two() const;
};

SpamOutcome run_spam_pipeline(const SpamOptions& options);

} // namespace kda

#endif
