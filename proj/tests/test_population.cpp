#include <doctest.h>

#include <random>

#include "golden_tables.hpp"
#include "kda/population.hpp"
#include "kda/scenarios.hpp"
#include "testutil.hpp"

using namespace kda;

namespace {

DiscriminantModel fit_column(const TwoClassProblem& problem, const golden::Column& col) {
  return col.inhomogeneous ? fit_inhomogeneous(problem, col.degree)
                           : fit_homogeneous(problem, col.degree);
}

/// Independent route: LDA on the sqrt-multinomial weighted feature map via the
/// brute-force generalized eigensolver, mapped back to monomial coefficients.
DiscriminantModel fit_via_weighted_features(const TwoClassProblem& problem, int degree,
                                            bool inhomogeneous) {
  IndexSet idx = enumerate_indices(problem.dimension(),
                                   inhomogeneous ? DegreeSpec::range(degree)
                                                 : DegreeSpec::exact(degree));
  MomentTable t1 = MomentTable::compute(problem.class1(), 2 * degree);
  MomentTable t2 = MomentTable::compute(problem.class2(), 2 * degree);

  const int n = idx.size();
  Eigen::VectorXd wts(n);
  for (int i = 0; i < n; ++i)
    wts[i] = std::sqrt(static_cast<double>(multinomial(idx[i].degree(), idx[i])));

  Eigen::VectorXd delta(n);
  for (int i = 0; i < n; ++i) delta[i] = wts[i] * (t1.at(idx[i]) - t2.at(idx[i]));
  Eigen::MatrixXd w(n, n);
  const double pi1 = problem.class1().prior();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      MultiIndex sum = idx[a] + idx[b];
      double c1 = t1.at(sum) - t1.at(idx[a]) * t1.at(idx[b]);
      double c2 = t2.at(sum) - t2.at(idx[a]) * t2.at(idx[b]);
      w(a, b) = wts[a] * wts[b] * (pi1 * c1 + (1 - pi1) * c2);
    }

  GeigPairs pairs = brute_force_geig(delta * delta.transpose(), w);
  DiscriminantModel model;
  model.basis = idx;
  model.lambda = pairs.eigenvalues[0];
  // feature coefficients back to the monomial basis
  Eigen::VectorXd nu = pairs.eigenvectors.col(0).cwiseProduct(wts);
  model.nu = nu / nu.norm();
  fix_sign(model.nu);
  return model;
}

} // namespace

TEST_CASE("Scenario 1 population coefficients match the reference table") {
  TwoClassProblem problem = scenario_problem(1);
  for (const auto& col : golden::scenario1_columns()) {
    DiscriminantModel model = fit_column(problem, col);
    REQUIRE(model.basis.size() == static_cast<int>(col.coeffs.size()));
    CHECK(model.degenerate == col.degenerate);
    INFO((col.inhomogeneous ? "inhomogeneous " : "homogeneous "), col.degree);
    CHECK(golden::column_error(model.nu, col.coeffs) <= 1e-3);
  }
}

TEST_CASE("Scenario 2 population coefficients match the reference table") {
  TwoClassProblem problem = scenario_problem(2);
  for (const auto& col : golden::scenario2_columns()) {
    DiscriminantModel model = fit_column(problem, col);
    REQUIRE(model.basis.size() == static_cast<int>(col.coeffs.size()));
    CHECK(model.degenerate == col.degenerate);
    if (col.degenerate) CHECK(model.lambda == 0.0);
    INFO((col.inhomogeneous ? "inhomogeneous " : "homogeneous "), col.degree);
    CHECK(golden::column_error(model.nu, col.coeffs) <= 1e-3);
  }
}

TEST_CASE("fits agree with the weighted-feature-map route") {
  for (int scenario : {1, 2}) {
    TwoClassProblem problem = scenario_problem(scenario);
    for (int d = 1; d <= 4; ++d) {
      for (bool inhomo : {false, true}) {
        DiscriminantModel direct = inhomo ? fit_inhomogeneous(problem, d)
                                          : fit_homogeneous(problem, d);
        if (direct.degenerate) continue;
        DiscriminantModel via = fit_via_weighted_features(problem, d, inhomo);
        CHECK(std::abs(direct.lambda - via.lambda) <= 1e-8 * std::max(1.0, direct.lambda));
        CHECK(testutil::cosine_abs(direct.nu, via.nu) >= 1.0 - 1e-8);
      }
    }
  }
}

TEST_CASE("truncated-Gaussian fits coincide with inhomogeneous fits") {
  for (int scenario : {1, 2}) {
    TwoClassProblem problem = scenario_problem(scenario);
    for (int n = 1; n <= 6; ++n) {
      DiscriminantModel trunc = fit_gaussian_truncated(problem, 1.0, n);
      DiscriminantModel inhomo = fit_inhomogeneous(problem, n);
      CHECK(std::abs(trunc.lambda - inhomo.lambda) <= 1e-12);
      CHECK((trunc.nu - inhomo.nu).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK(trunc.provenance.method == FitProvenance::Method::GaussianTruncated);
      CHECK(trunc.provenance.omega == 1.0);
      CHECK(trunc.provenance.degree == n);
    }
  }
  CHECK(fit_gaussian_truncated(scenario_problem(2), 1.0, 1).degenerate);
}

TEST_CASE("lambda curves are non-decreasing with the documented shapes") {
  auto curve1 = lambda_curve(scenario_problem(1), 10);
  auto curve2 = lambda_curve(scenario_problem(2), 10);
  REQUIRE(curve1.size() == 10);
  for (std::size_t i = 1; i < curve1.size(); ++i) {
    CHECK(curve1[i].second >= curve1[i - 1].second * (1.0 - 1e-9) - 1e-12);
    CHECK(curve2[i].second >= curve2[i - 1].second * (1.0 - 1e-9) - 1e-12);
  }
  CHECK(curve1[0].second == doctest::Approx(6.97).epsilon(1e-9));
  CHECK(curve1[0].second > 0.9 * curve1[1].second);
  CHECK(curve2[0].second == 0.0);
  CHECK(curve2[1].second > 0.0);

  TwoClassProblem same(scenario_problem(1).class1(), scenario_problem(1).class1());
  for (auto [n, lam] : lambda_curve(same, 5)) CHECK(lam == 0.0);
  CHECK_THROWS_AS(lambda_curve(scenario_problem(1), 21), Error);
}

TEST_CASE("evaluate") {
  TwoClassProblem s1 = scenario_problem(1);
  DiscriminantModel linear = fit_homogeneous(s1, 1);
  Eigen::VectorXd x(2);
  x << 1.6, 2.1;
  CHECK(evaluate(linear, x) == doctest::Approx(2.640).epsilon(1e-3));

  DiscriminantModel quad = fit_homogeneous(scenario_problem(2), 2);
  Eigen::VectorXd on_boundary(2);
  on_boundary << 1.0, 1.0;
  CHECK(evaluate(quad, on_boundary) == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));

  DiscriminantModel degen = fit_homogeneous(scenario_problem(2), 1);
  CHECK(degen.degenerate);
  CHECK(evaluate(degen, x) == 0.0);
  CHECK_THROWS_AS(evaluate(linear, Eigen::VectorXd::Zero(3)), Error);
}

TEST_CASE("linear fit reproduces the optimal discriminant direction") {
  // the degree-1 score must be a positive multiple of 1.6 x1 + 2.1 x2
  DiscriminantModel linear = fit_homogeneous(scenario_problem(1), 1);
  std::mt19937_64 rng(31);
  Eigen::VectorXd model_scores(200), optimal_scores(200);
  for (int i = 0; i < 200; ++i) {
    Eigen::VectorXd x = testutil::random_vector(rng, 2, 2.0);
    model_scores[i] = evaluate(linear, x);
    optimal_scores[i] = 1.6 * x[0] + 2.1 * x[1];
  }
  CHECK(testutil::pearson(model_scores, optimal_scores) >= 1.0 - 1e-12);
}

TEST_CASE("even-degree homogeneous fits in Scenario 1 share their sign at both means") {
  DiscriminantModel quad = fit_homogeneous(scenario_problem(1), 2);
  CHECK(quad.lambda > 0.0);
  Eigen::VectorXd mu1(2), mu2(2);
  mu1 << 0.6, 0.9;
  mu2 << -1.0, -1.2;
  CHECK(evaluate(quad, mu1) * evaluate(quad, mu2) > 0.0);
}

TEST_CASE("grid evaluation") {
  DiscriminantModel linear = fit_homogeneous(scenario_problem(1), 1);
  GridSpec spec{-1.0, 1.0, -1.0, 1.0, 3, 3};
  GridResult grid = grid_eval(linear, spec);
  REQUIRE(grid.scores.rows() == 3);
  REQUIRE(grid.scores.cols() == 3);
  CHECK(grid.xs[0] == -1.0);
  CHECK(grid.xs[2] == 1.0);
  // linear in the coordinates: equal steps along rows and columns
  double dx = grid.scores(0, 1) - grid.scores(0, 0);
  CHECK(grid.scores(0, 2) - grid.scores(0, 1) == doctest::Approx(dx).epsilon(1e-12));
  CHECK(grid.scores(1, 1) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  // antisymmetric about the origin
  CHECK(grid.scores(0, 0) == doctest::Approx(-grid.scores(2, 2)).epsilon(1e-12));

  DiscriminantModel quad = fit_homogeneous(scenario_problem(2), 2);
  GridResult qgrid = grid_eval(quad, spec);
  // sign pattern of x1^2 - x2^2 (up to a global sign): zero on diagonals,
  // opposite signs on the axes
  double sign = qgrid.scores(1, 2) > 0 ? 1.0 : -1.0;
  CHECK(sign * qgrid.scores(1, 0) > 0.0);  // (-1, 0)
  CHECK(sign * qgrid.scores(0, 1) < 0.0);  // (0, -1)
  CHECK(std::abs(qgrid.scores(0, 0)) < 1e-12);
  CHECK(std::abs(qgrid.scores(2, 0)) < 1e-12);

  GridSpec point{0.5, 0.5, -0.25, -0.25, 1, 1};
  GridResult single = grid_eval(fit_inhomogeneous(scenario_problem(1), 2), point);
  Eigen::VectorXd pt(2);
  pt << 0.5, -0.25;
  CHECK(single.scores(0, 0) ==
        doctest::Approx(evaluate(fit_inhomogeneous(scenario_problem(1), 2), pt)));

  CHECK_THROWS_AS(grid_eval(linear, GridSpec{0, 1, 0, 1, 0, 3}), Error);
}

TEST_CASE("fit degree caps and ridge plumbing") {
  TwoClassProblem s1 = scenario_problem(1);
  CHECK_THROWS_AS(fit_homogeneous(s1, 21), Error);
  CHECK_THROWS_AS(fit_homogeneous(s1, 0), Error);
  DiscriminantModel ridged = fit_inhomogeneous(s1, 2, 1e-4);
  CHECK(ridged.ridge == 1e-4);
  CHECK(ridged.lambda < fit_inhomogeneous(s1, 2).lambda);
}
