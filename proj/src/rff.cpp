#include "kda/rff.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace kda {

std::string rff_variant_name(RffVariant v) {
  return v == RffVariant::SinCosPairs ? "sincos" : "cos";
}

RffVariant rff_variant_from_name(const std::string& name) {
  if (name == "sincos") return RffVariant::SinCosPairs;
  if (name == "cos") return RffVariant::PhaseShiftedCos;
  throw Error("unknown RFF variant '" + name + "' (expected sincos or cos)");
}

RffFeatures RffFeatures::prefix(int d) const {
  if (d < 1 || d > count()) throw Error("RffFeatures::prefix: count out of range");
  RffFeatures out = *this;
  out.frequencies = frequencies.topRows(d);
  if (phases.size() > 0) out.phases = phases.head(d);
  return out;
}

RffFeatures sample_features(int p, int feature_count, double omega, RffVariant variant,
                            std::uint64_t seed) {
  if (p < 1) throw Error("sample_features: dimension must be >= 1");
  if (feature_count < 1) throw Error("sample_features: feature count must be >= 1");
  if (!(omega > 0.0)) throw Error("sample_features: bandwidth must be positive");

  RffFeatures f;
  f.variant = variant;
  f.omega = omega;
  f.seed = seed;
  f.frequencies.resize(feature_count, p);
  if (variant == RffVariant::PhaseShiftedCos) f.phases.resize(feature_count);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 2.0 * std::numbers::pi);
  // drawn feature by feature so a longer run shares its prefix with a shorter one
  for (int i = 0; i < feature_count; ++i) {
    for (int k = 0; k < p; ++k) f.frequencies(i, k) = normal(rng) / omega;
    if (variant == RffVariant::PhaseShiftedCos) f.phases[i] = unif(rng);
  }
  return f;
}

Eigen::VectorXd feature_eval(const RffFeatures& features, const Eigen::VectorXd& x) {
  if (x.size() != features.input_dim()) throw Error("feature_eval: dimension mismatch");
  const int d = features.count();
  Eigen::VectorXd proj = features.frequencies * x;
  Eigen::VectorXd z(features.feature_dim());
  if (features.variant == RffVariant::SinCosPairs) {
    for (int i = 0; i < d; ++i) {
      z[2 * i] = std::cos(proj[i]);
      z[2 * i + 1] = std::sin(proj[i]);
    }
  } else {
    for (int i = 0; i < d; ++i) z[i] = std::sqrt(2.0) * std::cos(proj[i] + features.phases[i]);
  }
  return z;
}

double cos_expectation(const Eigen::VectorXd& mu, const Eigen::MatrixXd& sigma,
                       const Eigen::VectorXd& w, double b) {
  if (mu.size() != w.size() || sigma.rows() != mu.size() || sigma.cols() != mu.size())
    throw Error("cos_expectation: dimension mismatch");
  return std::exp(-0.5 * w.dot(sigma * w)) * std::cos(w.dot(mu) + b);
}

double sin_expectation(const Eigen::VectorXd& mu, const Eigen::MatrixXd& sigma,
                       const Eigen::VectorXd& w, double b) {
  if (mu.size() != w.size() || sigma.rows() != mu.size() || sigma.cols() != mu.size())
    throw Error("sin_expectation: dimension mismatch");
  return std::exp(-0.5 * w.dot(sigma * w)) * std::sin(w.dot(mu) + b);
}

namespace {

struct GaussianParams {
  Eigen::VectorXd mu;
  Eigen::MatrixXd sigma;
};

GaussianParams gaussian_params(const ClassSpec& cls) {
  if (const auto* d = std::get_if<DiagonalGaussian>(&cls.dist()))
    return {d->mean, Eigen::MatrixXd(d->variance.asDiagonal())};
  if (const auto* f = std::get_if<FullGaussian>(&cls.dist())) return {f->mean, f->covariance};
  throw Error("fit_rff_population: class is not Gaussian");
}

/// Closed-form per-class feature mean vector and covariance matrix.
void gaussian_feature_stats(const GaussianParams& g, const RffFeatures& f,
                            Eigen::VectorXd& mean, Eigen::MatrixXd& cov) {
  const int d = f.count();
  if (f.variant == RffVariant::PhaseShiftedCos) {
    mean.resize(d);
    for (int i = 0; i < d; ++i)
      mean[i] = std::sqrt(2.0) *
                cos_expectation(g.mu, g.sigma, f.frequencies.row(i).transpose(), f.phases[i]);
    cov.resize(d, d);
    for (int i = 0; i < d; ++i) {
      const Eigen::VectorXd wi = f.frequencies.row(i).transpose();
      for (int j = i; j < d; ++j) {
        const Eigen::VectorXd wj = f.frequencies.row(j).transpose();
        // 2 cos(A) cos(B) = cos(A - B) + cos(A + B)
        double ezz = cos_expectation(g.mu, g.sigma, wi - wj, f.phases[i] - f.phases[j]) +
                     cos_expectation(g.mu, g.sigma, wi + wj, f.phases[i] + f.phases[j]);
        cov(i, j) = cov(j, i) = ezz - mean[i] * mean[j];
      }
    }
    return;
  }
  // sin/cos pairs: entries indexed (feature i, trig t) with t = 0 cos, 1 sin
  mean.resize(2 * d);
  for (int i = 0; i < d; ++i) {
    const Eigen::VectorXd wi = f.frequencies.row(i).transpose();
    mean[2 * i] = cos_expectation(g.mu, g.sigma, wi, 0.0);
    mean[2 * i + 1] = sin_expectation(g.mu, g.sigma, wi, 0.0);
  }
  cov.resize(2 * d, 2 * d);
  for (int i = 0; i < d; ++i) {
    const Eigen::VectorXd wi = f.frequencies.row(i).transpose();
    for (int j = 0; j < d; ++j) {
      const Eigen::VectorXd wj = f.frequencies.row(j).transpose();
      double cm = cos_expectation(g.mu, g.sigma, wi - wj, 0.0); // E cos((wi-wj)'X)
      double cp = cos_expectation(g.mu, g.sigma, wi + wj, 0.0);
      double sm = sin_expectation(g.mu, g.sigma, wi - wj, 0.0);
      double sp = sin_expectation(g.mu, g.sigma, wi + wj, 0.0);
      double e_cc = 0.5 * (cm + cp);
      double e_ss = 0.5 * (cm - cp);
      double e_sc = 0.5 * (sp + sm); // E[sin(wi'X) cos(wj'X)]
      double e_cs = 0.5 * (sp - sm);
      cov(2 * i, 2 * j) = e_cc - mean[2 * i] * mean[2 * j];
      cov(2 * i, 2 * j + 1) = e_cs - mean[2 * i] * mean[2 * j + 1];
      cov(2 * i + 1, 2 * j) = e_sc - mean[2 * i + 1] * mean[2 * j];
      cov(2 * i + 1, 2 * j + 1) = e_ss - mean[2 * i + 1] * mean[2 * j + 1];
    }
  }
}

void empirical_feature_stats(const Empirical& e, const RffFeatures& f,
                             Eigen::VectorXd& mean, Eigen::MatrixXd& cov) {
  const Eigen::Index n = e.points.rows();
  Eigen::MatrixXd z(n, f.feature_dim());
  for (Eigen::Index r = 0; r < n; ++r)
    z.row(r) = feature_eval(f, e.points.row(r).transpose()).transpose();
  mean = z.colwise().mean().transpose();
  Eigen::MatrixXd centered = z.rowwise() - mean.transpose();
  cov = centered.transpose() * centered / static_cast<double>(n);
}

void feature_stats(const ClassSpec& cls, const RffFeatures& f, Eigen::VectorXd& mean,
                   Eigen::MatrixXd& cov) {
  if (const auto* e = std::get_if<Empirical>(&cls.dist()))
    empirical_feature_stats(*e, f, mean, cov);
  else
    gaussian_feature_stats(gaussian_params(cls), f, mean, cov);
}

} // namespace

RffModel fit_rff_population(const TwoClassProblem& problem, const RffFeatures& features,
                            double ridge) {
  if (problem.dimension() != features.input_dim())
    throw Error("fit_rff_population: feature dimension does not match problem");
  Eigen::VectorXd m1, m2;
  Eigen::MatrixXd c1, c2;
  feature_stats(problem.class1(), features, m1, c1);
  feature_stats(problem.class2(), features, m2, c2);

  Eigen::VectorXd delta = m1 - m2;
  Eigen::MatrixXd w = problem.class1().prior() * c1 + problem.class2().prior() * c2;
  EigenSolution sol = rank_one_geig(delta, w, ridge);

  RffModel model{features, sol.nu, sol.lambda, sol.degenerate, sol.ridge_used};
  return model;
}

double evaluate(const RffModel& model, const Eigen::VectorXd& x) {
  Eigen::VectorXd z = feature_eval(model.features, x);
  return model.nu.dot(z) / model.features.count();
}

double kernel_mc_check(const RffFeatures& features, const Eigen::VectorXd& x,
                       const Eigen::VectorXd& u) {
  Eigen::VectorXd zx = feature_eval(features, x);
  Eigen::VectorXd zu = feature_eval(features, u);
  return zx.dot(zu) / features.count();
}

} // namespace kda
