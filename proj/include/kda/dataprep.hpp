#ifndef KDA_DATAPREP_HPP
#define KDA_DATAPREP_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "kda/common.hpp"

namespace kda {

enum class ColumnKind { Percentage, CapitalRunLength };

/// Parsed spambase-layout table: 54 percentage columns, 3 capital-run-length
/// columns, trailing 0/1 label (1 = spam).
struct RawTable {
  Eigen::MatrixXd features;
  std::vector<int> labels; // 0 = regular, 1 = spam
  std::vector<ColumnKind> kinds;

  int rows() const { return static_cast<int>(features.rows()); }
  int cols() const { return static_cast<int>(features.cols()); }
  double spam_fraction() const;
};

RawTable load_spambase(const std::string& path);

/// Zeros replaced by half the least nonzero value; positives untouched.
/// Throws if the column has no positive entry.
std::vector<double> zero_replace(const std::vector<double>& column);

enum class TransformPolicy {
  LogitLog, // logit(v/100) on percentage columns, log(v) on length columns
  LogitAll  // clamped logit(v/100) on every column (sensitivity probe)
};

TransformPolicy transform_policy_from_name(const std::string& name);
std::string transform_policy_name(TransformPolicy p);

/// Per-column parameters fitted before the logit/log maps: the half-least-
/// positive replacement value for the zero tail, its mirror for the upper
/// tail of percentage columns, and which columns were dropped for having no
/// positive values.
struct TransformParams {
  TransformPolicy policy = TransformPolicy::LogitLog;
  std::vector<double> zero_eps;
  std::vector<double> upper_eps; // 0 where no upper clamp applies
  std::vector<ColumnKind> kinds;
  std::vector<bool> dropped;
  std::vector<std::string> warnings;

  std::vector<int> kept_columns() const;
};

TransformParams fit_transform_params(const RawTable& table, TransformPolicy policy);

/// Applies zero replacement, clamping, and the logit/log maps; returns the
/// matrix over kept columns only.
Eigen::MatrixXd apply_transform(const Eigen::MatrixXd& features, const TransformParams& params);

/// Convenience: fit + apply on the same table.
Eigen::MatrixXd transform_table(const RawTable& table, TransformPolicy policy,
                                TransformParams* fitted = nullptr);

/// Correlation-matrix PCA. Columns are standardized to mean 0, sd 1; loading
/// signs are fixed so each component's largest-magnitude entry is positive.
struct PcaModel {
  Eigen::VectorXd mean;
  Eigen::VectorXd sd;
  Eigen::MatrixXd loadings;        // cols x k, orthonormal
  Eigen::VectorXd explained_ratio; // k entries, eigenvalue share of total
  TransformParams transform;       // empty unless attached by the pipeline
};

PcaModel pca_fit(const Eigen::MatrixXd& data, int k);
Eigen::MatrixXd pca_scores(const PcaModel& model, const Eigen::MatrixXd& data);

/// Stratified, seeded split of row indices. Each class contributes
/// round(train_frac * n_c) training rows; throws if a class would end up
/// empty on either side. The shuffle is an explicit Fisher-Yates over
/// mt19937_64 draws so results are reproducible across platforms.
struct SplitIndices {
  std::vector<int> train;
  std::vector<int> test;
};
SplitIndices stratified_split(const std::vector<int>& labels, double train_frac,
                              std::uint64_t seed);

} // namespace kda

#endif
