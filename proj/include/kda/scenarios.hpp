#ifndef KDA_SCENARIOS_HPP
#define KDA_SCENARIOS_HPP

#include <cstdint>

#include "kda/moments.hpp"
#include "kda/sample.hpp"

namespace kda {

/// Bivariate-normal simulation presets, equal priors.
/// Scenario 1: mu1 = (0.6, 0.9), mu2 = (-1.0, -1.2), common identity covariance.
/// Scenario 2: equal zero means, covariances diag(2, 0.2) and diag(0.2, 2).
TwoClassProblem scenario_problem(int id);

/// Seeded draw from any Gaussian class spec (empirical specs are refused).
Eigen::MatrixXd draw_class(const ClassSpec& cls, int n, std::uint64_t seed);

/// n1 points of class 1 followed by n2 of class 2, seeds derived from `seed`.
LabeledSample draw_sample(const TwoClassProblem& problem, int n1, int n2, std::uint64_t seed);

LabeledSample draw_scenario_sample(int id, int n_per_class, std::uint64_t seed);

} // namespace kda

#endif
