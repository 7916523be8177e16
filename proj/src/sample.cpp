#include "kda/sample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace kda {

int LabeledSample::class_count(int label) const {
  return static_cast<int>(std::count(labels.begin(), labels.end(), label));
}

void LabeledSample::validate() const {
  if (points.rows() != static_cast<Eigen::Index>(labels.size()))
    throw Error("LabeledSample: label count does not match point count");
  for (int y : labels)
    if (y != 1 && y != 2) throw Error("LabeledSample: labels must be 1 or 2");
  if (class_count(1) == 0 || class_count(2) == 0)
    throw Error("LabeledSample: both classes must be nonempty");
}

Eigen::MatrixXd kernel_matrix(const LabeledSample& sample, const KernelSpec& spec) {
  const int n = sample.size();
  Eigen::MatrixXd k(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double v = kernel_eval(spec, sample.points.row(i).transpose(),
                             sample.points.row(j).transpose());
      k(i, j) = k(j, i) = v;
    }
  }
  return k;
}

BetweenWithin between_within(const LabeledSample& sample, const KernelSpec& spec) {
  sample.validate();
  const int n = sample.size();
  Eigen::MatrixXd kmat = kernel_matrix(sample, spec);

  BetweenWithin out;
  out.w = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd kbar[2];
  for (int cls = 1; cls <= 2; ++cls) {
    std::vector<int> cols;
    for (int i = 0; i < n; ++i)
      if (sample.labels[static_cast<std::size_t>(i)] == cls) cols.push_back(i);
    const int nj = static_cast<int>(cols.size());
    Eigen::MatrixXd kj(n, nj);
    for (int c = 0; c < nj; ++c) kj.col(c) = kmat.col(cols[static_cast<std::size_t>(c)]);
    Eigen::VectorXd bar = kj.rowwise().sum() / nj;
    // (n_j/n) K_j ((1/n_j) I - (1/n_j^2) J) K_j^T
    out.w += (kj * kj.transpose()) / n - (static_cast<double>(nj) / n) * (bar * bar.transpose());
    kbar[cls - 1] = std::move(bar);
  }
  out.kbar_diff = kbar[0] - kbar[1];
  out.b = out.kbar_diff * out.kbar_diff.transpose();
  out.w = 0.5 * (out.w + out.w.transpose().eval());
  return out;
}

double default_sample_ridge(const Eigen::MatrixXd& w) {
  return 1e-8 * w.trace() / static_cast<double>(w.rows());
}

SampleKdaModel fit_sample(const LabeledSample& sample, const KernelSpec& spec,
                          std::optional<double> ridge) {
  sample.validate();
  if (sample.size() < 2) throw Error("fit_sample: need at least two points");
  BetweenWithin bw = between_within(sample, spec);
  const double r = ridge.value_or(default_sample_ridge(bw.w));
  EigenSolution sol = rank_one_geig(bw.kbar_diff, bw.w, r);

  SampleKdaModel model{sample.points, sample.labels, spec,
                       sol.nu,        sol.lambda,    sol.degenerate,
                       sol.ridge_used, std::nullopt};
  return model;
}

DiscriminantModel fit_sample_moments(const LabeledSample& sample, const KernelSpec& spec,
                                     std::optional<double> ridge) {
  sample.validate();
  int degree = 0;
  bool homogeneous = false;
  if (const auto* h = std::get_if<HomoPoly>(&spec.variant())) {
    degree = h->degree;
    homogeneous = true;
  } else if (const auto* i = std::get_if<InhomoPoly>(&spec.variant())) {
    degree = i->degree;
  } else {
    throw Error("fit_sample_moments: only polynomial kernels have a moment-space path");
  }

  const int n = sample.size();
  std::vector<int> rows1, rows2;
  for (int i = 0; i < n; ++i)
    (sample.labels[static_cast<std::size_t>(i)] == 1 ? rows1 : rows2).push_back(i);
  auto take = [&](const std::vector<int>& rows) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), sample.dimension());
    for (std::size_t r = 0; r < rows.size(); ++r) m.row(static_cast<Eigen::Index>(r)) = sample.points.row(rows[r]);
    return m;
  };
  const double pi1 = static_cast<double>(rows1.size()) / n;
  TwoClassProblem problem(ClassSpec(Empirical{take(rows1)}, pi1),
                          ClassSpec(Empirical{take(rows2)}, 1.0 - pi1));

  IndexSet idx = enumerate_indices(sample.dimension(),
                                   homogeneous ? DegreeSpec::exact(degree)
                                               : DegreeSpec::range(degree));
  MomentTable t1 = MomentTable::compute(problem.class1(), 2 * degree);
  MomentTable t2 = MomentTable::compute(problem.class2(), 2 * degree);
  DeltaVector delta = delta_from_tables(t1, t2, idx);
  PooledCovariance w = pooled_from_tables(t1, t2, pi1, idx);
  const double r = ridge.value_or(default_sample_ridge(w.w));
  EigenSolution sol = rank_one_geig(delta.values, w.w, r);

  DiscriminantModel model;
  model.basis = idx;
  model.nu = sol.nu;
  model.lambda = sol.lambda;
  model.degenerate = sol.degenerate;
  model.ridge = sol.ridge_used;
  model.provenance.method = FitProvenance::Method::SampleMoments;
  model.provenance.degree = degree;
  model.provenance.kernel = spec.name();
  return model;
}

double score(const SampleKdaModel& model, const Eigen::VectorXd& x) {
  if (x.size() != model.points.cols()) throw Error("score: dimension mismatch");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < model.points.rows(); ++i)
    acc += model.alpha[i] * kernel_eval(model.kernel, model.points.row(i).transpose(), x);
  return acc;
}

Eigen::VectorXd score_all(const SampleKdaModel& model, const Eigen::MatrixXd& points) {
  Eigen::VectorXd s(points.rows());
  for (Eigen::Index i = 0; i < points.rows(); ++i) s[i] = score(model, points.row(i).transpose());
  return s;
}

ThresholdChoice choose_threshold_for_scores(const Eigen::VectorXd& scores,
                                            const std::vector<int>& labels) {
  const int n = static_cast<int>(scores.size());
  if (n == 0 || labels.size() != static_cast<std::size_t>(n))
    throw Error("choose_threshold: scores/labels mismatch");

  ThresholdChoice choice;
  double mean1 = 0.0, mean2 = 0.0;
  int n1 = 0, n2 = 0;
  for (int i = 0; i < n; ++i) {
    if (labels[static_cast<std::size_t>(i)] == 1) { mean1 += scores[i]; ++n1; }
    else { mean2 += scores[i]; ++n2; }
  }
  mean1 /= std::max(n1, 1);
  mean2 /= std::max(n2, 1);
  choice.flipped = mean1 < mean2;
  Eigen::VectorXd s = choice.flipped ? Eigen::VectorXd(-scores) : scores;

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return s[a] < s[b]; });

  // prefix1[i] = # class-1 points among the i smallest scores; a cut after
  // position i predicts class 2 for those and class 1 for the rest
  std::vector<int> prefix1(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 0; i < n; ++i)
    prefix1[static_cast<std::size_t>(i) + 1] =
        prefix1[static_cast<std::size_t>(i)] +
        (labels[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] == 1 ? 1 : 0);

  auto candidate_at = [&](int i) {
    if (i == 0) return s[order[0]] - 1.0;
    if (i == n) return s[order[static_cast<std::size_t>(n) - 1]] + 1.0;
    return 0.5 * (s[order[static_cast<std::size_t>(i) - 1]] + s[order[static_cast<std::size_t>(i)]]);
  };

  int best_errors = n + 1;
  double best_t = 0.0;
  for (int i = 0; i <= n; ++i) {
    // skip cuts inside a tie group; they misclassify inconsistently
    if (i > 0 && i < n &&
        s[order[static_cast<std::size_t>(i) - 1]] == s[order[static_cast<std::size_t>(i)]])
      continue;
    int errors = prefix1[static_cast<std::size_t>(i)]          // class 1 predicted 2
                 + (n2 - (i - prefix1[static_cast<std::size_t>(i)])); // class 2 predicted 1
    double t = candidate_at(i);
    if (errors < best_errors ||
        (errors == best_errors && std::abs(t) < std::abs(best_t))) {
      best_errors = errors;
      best_t = t;
    }
  }
  choice.threshold = best_t;
  choice.training_error = static_cast<double>(best_errors) / n;
  return choice;
}

ThresholdChoice choose_threshold(SampleKdaModel& model, const LabeledSample& sample) {
  sample.validate();
  Eigen::VectorXd s = score_all(model, sample.points);
  ThresholdChoice choice = choose_threshold_for_scores(s, sample.labels);
  if (choice.flipped) model.alpha = -model.alpha;
  model.threshold = choice.threshold;
  return choice;
}

ThresholdChoice choose_threshold(DiscriminantModel& model, double& threshold,
                                 const LabeledSample& sample) {
  sample.validate();
  Eigen::VectorXd s(sample.size());
  for (int i = 0; i < sample.size(); ++i)
    s[i] = evaluate(model, sample.points.row(i).transpose());
  ThresholdChoice choice = choose_threshold_for_scores(s, sample.labels);
  if (choice.flipped) model.nu = -model.nu;
  threshold = choice.threshold;
  return choice;
}

std::vector<int> classify_scores(const Eigen::VectorXd& scores, double threshold) {
  std::vector<int> labels(static_cast<std::size_t>(scores.size()));
  for (Eigen::Index i = 0; i < scores.size(); ++i)
    labels[static_cast<std::size_t>(i)] = scores[i] > threshold ? 1 : 2;
  return labels;
}

std::vector<int> classify(const SampleKdaModel& model, const Eigen::MatrixXd& points) {
  if (!model.threshold) throw Error("classify: threshold has not been chosen");
  return classify_scores(score_all(model, points), *model.threshold);
}

ConfusionReport confusion(const std::vector<int>& predicted, const std::vector<int>& truth) {
  if (predicted.size() != truth.size()) throw Error("confusion: size mismatch");
  ConfusionReport r;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] == 1)
      ++(predicted[i] == 1 ? r.n_true1_pred1 : r.n_true1_pred2);
    else
      ++(predicted[i] == 1 ? r.n_true2_pred1 : r.n_true2_pred2);
  }
  const int n1 = r.n_true1_pred1 + r.n_true1_pred2;
  const int n2 = r.n_true2_pred1 + r.n_true2_pred2;
  r.class1_error = n1 > 0 ? static_cast<double>(r.n_true1_pred2) / n1 : 0.0;
  r.class2_error = n2 > 0 ? static_cast<double>(r.n_true2_pred1) / n2 : 0.0;
  r.overall_error = (n1 + n2) > 0
                        ? static_cast<double>(r.n_true1_pred2 + r.n_true2_pred1) / (n1 + n2)
                        : 0.0;
  return r;
}

ConfusionReport classify_eval(const SampleKdaModel& model, const Eigen::MatrixXd& points,
                              const std::vector<int>& truth) {
  return confusion(classify(model, points), truth);
}

} // namespace kda
