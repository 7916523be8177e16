#ifndef KDA_RFF_HPP
#define KDA_RFF_HPP

#include <cstdint>
#include <string>

#include <Eigen/Core>

#include "kda/geig.hpp"
#include "kda/moments.hpp"

namespace kda {

enum class RffVariant { SinCosPairs, PhaseShiftedCos };

std::string rff_variant_name(RffVariant v);
RffVariant rff_variant_from_name(const std::string& name);

/// Random Fourier features for the Gaussian kernel with bandwidth omega:
/// frequencies w_i ~ N(0, omega^{-2} I), phases b_i ~ U(0, 2pi) (cosine
/// variant only). Regeneration from (seed, omega, D, variant) is exact, and
/// the draw is per-feature, so features(D') with the same seed extends
/// features(D) for D' > D.
struct RffFeatures {
  RffVariant variant = RffVariant::PhaseShiftedCos;
  double omega = 1.0;
  std::uint64_t seed = 0;
  Eigen::MatrixXd frequencies; // D x p
  Eigen::VectorXd phases;      // D (cosine variant), empty otherwise

  int count() const { return static_cast<int>(frequencies.rows()); }
  int input_dim() const { return static_cast<int>(frequencies.cols()); }
  int feature_dim() const {
    return variant == RffVariant::SinCosPairs ? 2 * count() : count();
  }
  /// First d features (shared prefix of the seed stream).
  RffFeatures prefix(int d) const;
};

RffFeatures sample_features(int p, int feature_count, double omega, RffVariant variant,
                            std::uint64_t seed);

/// Raw feature vector z(x): interleaved (cos(w_i'x), sin(w_i'x)) pairs, or
/// sqrt(2) cos(w_i'x + b_i). The kernel approximation averages z(x)'z(u)/D.
Eigen::VectorXd feature_eval(const RffFeatures& features, const Eigen::VectorXd& x);

/// E[cos(w'X + b)] = exp(-w' Sigma w / 2) cos(w' mu + b) for X ~ N(mu, Sigma).
double cos_expectation(const Eigen::VectorXd& mu, const Eigen::MatrixXd& sigma,
                       const Eigen::VectorXd& w, double b);
/// Sine analogue (imaginary part of the same characteristic function).
double sin_expectation(const Eigen::VectorXd& mu, const Eigen::MatrixXd& sigma,
                       const Eigen::VectorXd& w, double b);

/// Discriminant over random Fourier features: f_D(x) = (1/D) nu' z(x).
struct RffModel {
  RffFeatures features;
  Eigen::VectorXd nu;
  double lambda = 0.0;
  bool degenerate = false;
  double ridge = 0.0;
};

/// Population fit. Gaussian classes use closed-form feature means and
/// covariances (product-to-sum reductions of cos/sin products); empirical
/// classes use sample averages of the features.
RffModel fit_rff_population(const TwoClassProblem& problem, const RffFeatures& features,
                            double ridge = 0.0);

double evaluate(const RffModel& model, const Eigen::VectorXd& x);

/// (1/D) z(x)'z(u): the Monte-Carlo kernel estimate behind the feature map.
double kernel_mc_check(const RffFeatures& features, const Eigen::VectorXd& x,
                       const Eigen::VectorXd& u);

} // namespace kda

#endif
