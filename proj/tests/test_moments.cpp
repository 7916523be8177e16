#include <doctest.h>

#include <random>

#include "kda/moments.hpp"
#include "kda/scenarios.hpp"
#include "testutil.hpp"

using namespace kda;

TEST_CASE("1-d Gaussian raw moments follow the recurrence") {
  CHECK(gaussian_raw_moment_1d(3.7, 0.4, 0) == 1.0);
  CHECK(gaussian_raw_moment_1d(0.6, 1.0, 2) == doctest::Approx(1.36).epsilon(1e-14)); // mu^2 + s2
  CHECK(gaussian_raw_moment_1d(0.0, 2.0, 4) == doctest::Approx(12.0)); // 3 s2^2
  CHECK(gaussian_raw_moment_1d(0.0, 1.0, 5) == 0.0);
  CHECK(gaussian_raw_moment_1d(2.0, 0.0, 3) == doctest::Approx(8.0)); // degenerate to mu^k
}

TEST_CASE("raw_moment on the scenario parameters") {
  TwoClassProblem s2 = scenario_problem(2);
  CHECK(raw_moment(s2.class1(), MultiIndex({2, 0})) == doctest::Approx(2.0));
  CHECK(raw_moment(s2.class1(), MultiIndex({0, 0})) == 1.0);
  CHECK(raw_moment(s2.class2(), MultiIndex({0, 2})) == doctest::Approx(2.0));

  Eigen::MatrixXd pts(2, 2);
  pts << 1, 2, 3, 4;
  ClassSpec emp(Empirical{pts}, 0.5);
  CHECK(raw_moment(emp, MultiIndex({1, 1})) == doctest::Approx(7.0)); // (2 + 12) / 2
}

TEST_CASE("diagonal-Gaussian moments match a seeded Monte-Carlo average within 4 SE") {
  std::mt19937_64 rng(1234);
  Eigen::VectorXd mu(2), var(2);
  mu << 0.6, -0.4;
  var << 1.3, 0.5;
  ClassSpec cls(DiagonalGaussian{mu, var}, 0.5);

  const int n = 1000000;
  Eigen::MatrixXd draws(n, 2);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < 2; ++c) draws(i, c) = mu[c] + std::sqrt(var[c]) * normal(rng);

  for (int m = 0; m <= 6; ++m) {
    for (const auto& j : enumerate_indices(2, DegreeSpec::exact(m))) {
      double acc = 0.0, acc2 = 0.0;
      for (int i = 0; i < n; ++i) {
        double v = monomial_eval(draws.row(i).transpose(), j);
        acc += v;
        acc2 += v * v;
      }
      double mean = acc / n;
      double se = std::sqrt((acc2 / n - mean * mean) / n);
      double exact = raw_moment(cls, j);
      INFO("index ", j.monomial_string());
      CHECK(std::abs(exact - mean) <= 4.0 * se);
    }
  }
}

TEST_CASE("full-covariance QMC moments agree with the closed diagonal case") {
  Eigen::VectorXd mu(2);
  mu << 0.3, -0.7;
  Eigen::MatrixXd cov(2, 2);
  cov << 1.5, 0.0, 0.0, 0.8;
  FullGaussian full{mu, cov};
  Eigen::VectorXd var = cov.diagonal();
  ClassSpec diag(DiagonalGaussian{mu, var}, 0.5);

  for (const auto& j : {MultiIndex({2, 0}), MultiIndex({1, 1}), MultiIndex({3, 1})}) {
    EstimatedMoment est = raw_moment_mc(full, j);
    double exact = raw_moment(diag, j);
    INFO("index ", j.monomial_string(), " est ", est.value, " +- ", est.std_error);
    CHECK(est.std_error > 0.0);
    CHECK(std::abs(est.value - exact) <= 4.0 * est.std_error);
  }
}

TEST_CASE("full-covariance QMC picks up genuine correlation") {
  Eigen::VectorXd mu = Eigen::VectorXd::Zero(2);
  Eigen::MatrixXd cov(2, 2);
  cov << 1.0, 0.6, 0.6, 1.0;
  EstimatedMoment est = raw_moment_mc(FullGaussian{mu, cov}, MultiIndex({1, 1}));
  CHECK(std::abs(est.value - 0.6) <= 4.0 * est.std_error);
  CHECK(std::abs(est.value - 0.6) < 0.01);
}

TEST_CASE("delta vectors for the scenarios") {
  TwoClassProblem s1 = scenario_problem(1);
  IndexSet d1 = enumerate_indices(2, DegreeSpec::exact(1));
  DeltaVector delta = delta_vector(s1, d1);
  CHECK(delta.values[0] == doctest::Approx(1.6).epsilon(1e-14));
  CHECK(delta.values[1] == doctest::Approx(2.1).epsilon(1e-14));

  TwoClassProblem s2 = scenario_problem(2);
  DeltaVector delta2 = delta_vector(s2, d1);
  CHECK(delta2.values.cwiseAbs().maxCoeff() == 0.0);

  // degree-2 entry for x1^2 under Scenario 1: (1 + 0.36) - (1 + 1.0)
  IndexSet d2 = enumerate_indices(2, DegreeSpec::exact(2));
  DeltaVector delta3 = delta_vector(s1, d2);
  CHECK(delta3.values[0] == doctest::Approx(-0.64).epsilon(1e-12));
}

TEST_CASE("delta is antisymmetric under class swap and zero for equal classes") {
  TwoClassProblem s1 = scenario_problem(1);
  TwoClassProblem swapped(s1.class2(), s1.class1());
  IndexSet idx = enumerate_indices(2, DegreeSpec::range(3));
  Eigen::VectorXd a = delta_vector(s1, idx).values;
  Eigen::VectorXd b = delta_vector(swapped, idx).values;
  CHECK((a + b).cwiseAbs().maxCoeff() == 0.0);

  TwoClassProblem same(s1.class1(), s1.class1());
  Eigen::VectorXd c = delta_vector(same, idx).values;
  CHECK(c.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("pooled covariance for the scenarios") {
  IndexSet d1 = enumerate_indices(2, DegreeSpec::exact(1));
  PooledCovariance w1 = pooled_covariance(scenario_problem(1), d1);
  CHECK((w1.w - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);

  PooledCovariance w2 = pooled_covariance(scenario_problem(2), d1);
  CHECK(w2.w(0, 0) == doctest::Approx(1.1).epsilon(1e-14));
  CHECK(w2.w(1, 1) == doctest::Approx(1.1).epsilon(1e-14));
  CHECK(std::abs(w2.w(0, 1)) < 1e-15);
}

TEST_CASE("pooled covariance is symmetric PSD, including empirical classes") {
  Eigen::MatrixXd a(2, 2), b(3, 2);
  a << 0.0, 1.0, 2.0, -1.0;
  b << 1.0, 1.0, -1.0, 0.5, 0.25, -2.0;
  TwoClassProblem problem(ClassSpec(Empirical{a}, 0.4), ClassSpec(Empirical{b}, 0.6));
  IndexSet idx = enumerate_indices(2, DegreeSpec::range(2));
  PooledCovariance pc = pooled_covariance(problem, idx);
  CHECK((pc.w - pc.w.transpose()).cwiseAbs().maxCoeff() < 1e-14);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(pc.w);
  CHECK(es.eigenvalues().minCoeff() >= -1e-10);
}

TEST_CASE("moment table validation") {
  TwoClassProblem s1 = scenario_problem(1);
  MomentTable t = MomentTable::compute(s1.class1(), 4);
  CHECK(t.at(MultiIndex({0, 0})) == 1.0);
  CHECK_THROWS_AS(t.at(MultiIndex({5, 0})), Error);
  CHECK_THROWS_AS(MomentTable::compute(s1.class1(), 41), Error);
}

TEST_CASE("class spec validation") {
  Eigen::VectorXd mu(2), bad_var(2);
  mu << 0, 0;
  bad_var << 1.0, 0.0;
  CHECK_THROWS_AS(ClassSpec(DiagonalGaussian{mu, bad_var}, 0.5), Error);
  CHECK_THROWS_AS(ClassSpec(DiagonalGaussian{mu, mu.cwiseAbs()}, 0.5), Error);

  Eigen::MatrixXd not_pd(2, 2);
  not_pd << 1.0, 2.0, 2.0, 1.0;
  CHECK_THROWS_AS(ClassSpec(FullGaussian{mu, not_pd}, 0.5), Error);

  Eigen::VectorXd var = Eigen::VectorXd::Ones(2);
  ClassSpec ok(DiagonalGaussian{mu, var}, 0.3);
  CHECK_THROWS_AS(TwoClassProblem(ok, ClassSpec(DiagonalGaussian{mu, var}, 0.5)), Error);
  Eigen::VectorXd mu3 = Eigen::VectorXd::Zero(3);
  CHECK_THROWS_AS(
      TwoClassProblem(ok, ClassSpec(DiagonalGaussian{mu3, Eigen::VectorXd::Ones(3)}, 0.7)),
      Error);
}
