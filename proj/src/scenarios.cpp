#include "kda/scenarios.hpp"

#include <random>

#include <Eigen/Cholesky>

namespace kda {

TwoClassProblem scenario_problem(int id) {
  Eigen::VectorXd mu1(2), mu2(2), v1(2), v2(2);
  if (id == 1) {
    mu1 << 0.6, 0.9;
    mu2 << -1.0, -1.2;
    v1 << 1.0, 1.0;
    v2 << 1.0, 1.0;
  } else if (id == 2) {
    mu1 << 0.0, 0.0;
    mu2 << 0.0, 0.0;
    v1 << 2.0, 0.2;
    v2 << 0.2, 2.0;
  } else {
    throw Error("scenario_problem: id must be 1 or 2");
  }
  return TwoClassProblem(ClassSpec(DiagonalGaussian{mu1, v1}, 0.5),
                         ClassSpec(DiagonalGaussian{mu2, v2}, 0.5));
}

Eigen::MatrixXd draw_class(const ClassSpec& cls, int n, std::uint64_t seed) {
  if (n < 1) throw Error("draw_class: need n >= 1");
  const int p = cls.dimension();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd z(n, p);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < p; ++c) z(r, c) = normal(rng);

  if (const auto* d = std::get_if<DiagonalGaussian>(&cls.dist())) {
    Eigen::RowVectorXd sd = d->variance.cwiseSqrt().transpose();
    return (z.array().rowwise() * sd.array()).matrix().rowwise() + d->mean.transpose();
  }
  if (const auto* f = std::get_if<FullGaussian>(&cls.dist())) {
    Eigen::MatrixXd chol = Eigen::LLT<Eigen::MatrixXd>(f->covariance).matrixL();
    return (z * chol.transpose()).rowwise() + f->mean.transpose();
  }
  throw Error("draw_class: cannot draw from an empirical class spec");
}

LabeledSample draw_sample(const TwoClassProblem& problem, int n1, int n2, std::uint64_t seed) {
  Eigen::MatrixXd x1 = draw_class(problem.class1(), n1, seed * 2 + 1);
  Eigen::MatrixXd x2 = draw_class(problem.class2(), n2, seed * 2 + 2);
  LabeledSample sample;
  sample.points.resize(n1 + n2, problem.dimension());
  sample.points.topRows(n1) = x1;
  sample.points.bottomRows(n2) = x2;
  sample.labels.assign(static_cast<std::size_t>(n1), 1);
  sample.labels.insert(sample.labels.end(), static_cast<std::size_t>(n2), 2);
  return sample;
}

LabeledSample draw_scenario_sample(int id, int n_per_class, std::uint64_t seed) {
  return draw_sample(scenario_problem(id), n_per_class, n_per_class, seed);
}

} // namespace kda
