#include "kda/spam.hpp"

namespace kda {

double SpamOutcome::explained_first_two() const {
  double s = 0.0;
  for (int i = 0; i < std::min<int>(2, static_cast<int>(pca.explained_ratio.size())); ++i)
    s += pca.explained_ratio[i];
  return s;
}

SpamOutcome run_spam_pipeline(const SpamOptions& options) {
  RawTable table = load_spambase(options.data_path);

  TransformParams params;
  Eigen::MatrixXd transformed = transform_table(table, options.policy, &params);

  PcaModel pca = pca_fit(transformed, options.n_components);
  pca.transform = params;
  Eigen::MatrixXd scores = pca_scores(pca, transformed);

  // regular (0) -> class 1, spam (1) -> class 2
  std::vector<int> classes(table.labels.size());
  for (std::size_t i = 0; i < table.labels.size(); ++i)
    classes[i] = table.labels[i] == 0 ? 1 : 2;

  SplitIndices split = stratified_split(classes, options.train_frac, options.seed);

  SpamOutcome out;
  out.n_rows = table.rows();
  out.spam_fraction = table.spam_fraction();
  out.pca = pca;

  auto gather = [&](const std::vector<int>& rows, Eigen::MatrixXd& pts, std::vector<int>& labs) {
    pts.resize(static_cast<Eigen::Index>(rows.size()), scores.cols());
    labs.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      pts.row(static_cast<Eigen::Index>(i)) = scores.row(rows[i]);
      labs[i] = classes[static_cast<std::size_t>(rows[i])];
    }
  };
  gather(split.train, out.train_scores, out.train_labels);
  gather(split.test, out.test_scores, out.test_labels);

  LabeledSample train{out.train_scores, out.train_labels};

  for (int degree : options.degrees) {
    SpamDegreeResult res;
    res.degree = degree;
    res.model = fit_sample_moments(train, KernelSpec(InhomoPoly{degree}));
    res.ratio = res.model.lambda;

    ThresholdChoice choice = choose_threshold(res.model, res.threshold, train);
    res.training_error = choice.training_error;

    Eigen::VectorXd test_s(out.test_scores.rows());
    for (Eigen::Index i = 0; i < out.test_scores.rows(); ++i)
      test_s[i] = evaluate(res.model, out.test_scores.row(i).transpose());
    ConfusionReport rep = confusion(classify_scores(test_s, res.threshold), out.test_labels);
    res.test_misclassified_regular = rep.class1_error;
    res.test_misclassified_spam = rep.class2_error;
    res.test_overall_error = rep.overall_error;

    out.per_degree.push_back(std::move(res));
  }
  return out;
}

} // namespace kda
