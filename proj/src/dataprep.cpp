#include "kda/dataprep.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "kda/geig.hpp"

namespace kda {

namespace {
constexpr int kPercentageCols = 54;
constexpr int kLengthCols = 3;
constexpr int kFeatureCols = kPercentageCols + kLengthCols;
} // namespace

double RawTable::spam_fraction() const {
  if (labels.empty()) return 0.0;
  double s = 0.0;
  for (int y : labels) s += y;
  return s / static_cast<double>(labels.size());
}

RawTable load_spambase(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("load_spambase: cannot open '" + path + "'");

  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> fields;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        std::size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        fields.push_back(v);
      } catch (const std::exception&) {
        throw Error("load_spambase: line " + std::to_string(line_no) +
                    ": cannot parse field '" + tok + "'");
      }
    }
    if (static_cast<int>(fields.size()) != kFeatureCols + 1)
      throw Error("load_spambase: line " + std::to_string(line_no) + ": expected " +
                  std::to_string(kFeatureCols + 1) + " fields, got " +
                  std::to_string(fields.size()));
    double lab = fields.back();
    if (lab != 0.0 && lab != 1.0)
      throw Error("load_spambase: line " + std::to_string(line_no) +
                  ": label must be 0 or 1");
    fields.pop_back();
    for (int c = 0; c < kPercentageCols; ++c) {
      if (fields[static_cast<std::size_t>(c)] < 0.0 || fields[static_cast<std::size_t>(c)] > 100.0)
        throw Error("load_spambase: line " + std::to_string(line_no) + ": column " +
                    std::to_string(c + 1) + " outside [0, 100]");
    }
    for (int c = kPercentageCols; c < kFeatureCols; ++c) {
      if (fields[static_cast<std::size_t>(c)] < 1.0)
        throw Error("load_spambase: line " + std::to_string(line_no) + ": column " +
                    std::to_string(c + 1) + " must be a length >= 1");
    }
    rows.push_back(std::move(fields));
    labels.push_back(static_cast<int>(lab));
  }
  if (rows.empty()) throw Error("load_spambase: '" + path + "' contains no data rows");

  RawTable table;
  table.features.resize(static_cast<Eigen::Index>(rows.size()), kFeatureCols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < kFeatureCols; ++c)
      table.features(static_cast<Eigen::Index>(r), c) = rows[r][static_cast<std::size_t>(c)];
  table.labels = std::move(labels);
  table.kinds.assign(kPercentageCols, ColumnKind::Percentage);
  table.kinds.insert(table.kinds.end(), kLengthCols, ColumnKind::CapitalRunLength);
  return table;
}

std::vector<double> zero_replace(const std::vector<double>& column) {
  double min_pos = std::numeric_limits<double>::infinity();
  for (double v : column)
    if (v > 0.0) min_pos = std::min(min_pos, v);
  if (!std::isfinite(min_pos))
    throw Error("zero_replace: column has no positive value");
  std::vector<double> out = column;
  for (double& v : out)
    if (v == 0.0) v = 0.5 * min_pos;
  return out;
}

TransformPolicy transform_policy_from_name(const std::string& name) {
  if (name == "logit-log") return TransformPolicy::LogitLog;
  if (name == "logit-all") return TransformPolicy::LogitAll;
  throw Error("unknown transform policy '" + name + "' (expected logit-log or logit-all)");
}

std::string transform_policy_name(TransformPolicy p) {
  return p == TransformPolicy::LogitLog ? "logit-log" : "logit-all";
}

std::vector<int> TransformParams::kept_columns() const {
  std::vector<int> kept;
  for (std::size_t c = 0; c < dropped.size(); ++c)
    if (!dropped[c]) kept.push_back(static_cast<int>(c));
  return kept;
}

TransformParams fit_transform_params(const RawTable& table, TransformPolicy policy) {
  TransformParams params;
  params.policy = policy;
  const int n = table.rows(), p = table.cols();
  params.zero_eps.assign(static_cast<std::size_t>(p), 0.0);
  params.upper_eps.assign(static_cast<std::size_t>(p), 0.0);
  params.kinds = table.kinds;
  params.dropped.assign(static_cast<std::size_t>(p), false);

  for (int c = 0; c < p; ++c) {
    double min_pos = std::numeric_limits<double>::infinity();
    double min_gap = std::numeric_limits<double>::infinity(); // min positive of 100 - v
    bool logit_col = table.kinds[static_cast<std::size_t>(c)] == ColumnKind::Percentage ||
                     policy == TransformPolicy::LogitAll;
    for (int r = 0; r < n; ++r) {
      double v = table.features(r, c);
      if (v > 0.0) min_pos = std::min(min_pos, v);
      double gap = 100.0 - v;
      if (gap > 0.0) min_gap = std::min(min_gap, gap);
    }
    if (!std::isfinite(min_pos)) {
      params.dropped[static_cast<std::size_t>(c)] = true;
      params.warnings.push_back("column " + std::to_string(c + 1) +
                                " has no positive values; dropped");
      continue;
    }
    if (logit_col && !std::isfinite(min_gap)) {
      params.dropped[static_cast<std::size_t>(c)] = true;
      params.warnings.push_back("column " + std::to_string(c + 1) +
                                " is constant at 100; dropped");
      continue;
    }
    params.zero_eps[static_cast<std::size_t>(c)] = 0.5 * min_pos;
    if (logit_col) params.upper_eps[static_cast<std::size_t>(c)] = 0.5 * min_gap;
  }
  return params;
}

Eigen::MatrixXd apply_transform(const Eigen::MatrixXd& features, const TransformParams& params) {
  if (features.cols() != static_cast<Eigen::Index>(params.dropped.size()))
    throw Error("apply_transform: column count does not match fitted parameters");
  std::vector<int> kept = params.kept_columns();
  Eigen::MatrixXd out(features.rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t k = 0; k < kept.size(); ++k) {
    const int c = kept[k];
    const auto kind = params.kinds[static_cast<std::size_t>(c)];
    const bool logit_col =
        kind == ColumnKind::Percentage || params.policy == TransformPolicy::LogitAll;
    const double lo = params.zero_eps[static_cast<std::size_t>(c)];
    const double hi = 100.0 - params.upper_eps[static_cast<std::size_t>(c)];
    for (Eigen::Index r = 0; r < features.rows(); ++r) {
      double v = features(r, c);
      if (v <= 0.0) v = lo;
      if (logit_col) {
        v = std::min(std::max(v, lo), hi);
        double q = v / 100.0;
        out(r, static_cast<Eigen::Index>(k)) = std::log(q / (1.0 - q));
      } else {
        out(r, static_cast<Eigen::Index>(k)) = std::log(v);
      }
    }
  }
  return out;
}

Eigen::MatrixXd transform_table(const RawTable& table, TransformPolicy policy,
                                TransformParams* fitted) {
  TransformParams params = fit_transform_params(table, policy);
  Eigen::MatrixXd out = apply_transform(table.features, params);
  if (fitted) *fitted = std::move(params);
  return out;
}

PcaModel pca_fit(const Eigen::MatrixXd& data, int k) {
  const Eigen::Index n = data.rows(), p = data.cols();
  if (n < 2) throw Error("pca_fit: need at least two rows");
  if (k < 1 || k > p) throw Error("pca_fit: component count out of range");

  PcaModel model;
  model.mean = data.colwise().mean();
  Eigen::MatrixXd centered = data.rowwise() - model.mean.transpose();
  model.sd.resize(p);
  for (Eigen::Index c = 0; c < p; ++c) {
    double var = centered.col(c).squaredNorm() / static_cast<double>(n - 1);
    if (var <= 0.0)
      throw Error("pca_fit: column " + std::to_string(c + 1) + " has zero variance");
    model.sd[c] = std::sqrt(var);
  }
  Eigen::MatrixXd z = centered.array().rowwise() / model.sd.transpose().array();
  Eigen::MatrixXd corr = z.transpose() * z / static_cast<double>(n - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(corr);
  if (es.info() != Eigen::Success) throw Error("pca_fit: eigendecomposition failed");
  const double total = es.eigenvalues().sum();

  model.loadings.resize(p, k);
  model.explained_ratio.resize(k);
  for (int i = 0; i < k; ++i) {
    Eigen::Index src = p - 1 - i; // ascending -> descending
    Eigen::VectorXd v = es.eigenvectors().col(src);
    fix_sign(v);
    model.loadings.col(i) = v;
    model.explained_ratio[i] = es.eigenvalues()[src] / total;
  }
  return model;
}

Eigen::MatrixXd pca_scores(const PcaModel& model, const Eigen::MatrixXd& data) {
  if (data.cols() != model.mean.size())
    throw Error("pca_scores: column count does not match fitted model");
  Eigen::MatrixXd centered = data.rowwise() - model.mean.transpose();
  Eigen::MatrixXd z = centered.array().rowwise() / model.sd.transpose().array();
  return z * model.loadings;
}

SplitIndices stratified_split(const std::vector<int>& labels, double train_frac,
                              std::uint64_t seed) {
  if (!(train_frac > 0.0 && train_frac < 1.0))
    throw Error("stratified_split: train fraction must be in (0, 1)");
  std::map<int, std::vector<int>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i)
    by_class[labels[i]].push_back(static_cast<int>(i));
  if (by_class.empty()) throw Error("stratified_split: no rows");

  std::mt19937_64 rng(seed);
  SplitIndices out;
  for (auto& [label, idx] : by_class) {
    // explicit Fisher-Yates, reproducible across standard libraries
    for (std::size_t i = idx.size() - 1; i > 0; --i) {
      std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
      std::swap(idx[i], idx[j]);
    }
    const auto n_c = static_cast<long>(idx.size());
    const long n_train = std::lround(train_frac * static_cast<double>(n_c));
    if (n_train <= 0 || n_train >= n_c)
      throw Error("stratified_split: fraction leaves class " + std::to_string(label) +
                  " empty on one side");
    out.train.insert(out.train.end(), idx.begin(), idx.begin() + n_train);
    out.test.insert(out.test.end(), idx.begin() + n_train, idx.end());
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

} // namespace kda
