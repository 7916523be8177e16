// Acceptance suite: runs every criterion end to end and prints one PASS/FAIL
// line per criterion (SKIP only for the spam suite when the dataset file is
// absent). Exit code 0 iff nothing failed.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "golden_tables.hpp"
#include "kda/rff.hpp"
#include "kda/scenarios.hpp"
#include "kda/serialize.hpp"
#include "kda/spam.hpp"
#include "testutil.hpp"

using namespace kda;

namespace {

struct Outcome {
  bool pass = true;
  bool skipped = false;
  std::string detail;
};

struct Check {
  Outcome& out;
  void require(bool ok, const std::string& what) {
    if (!ok && out.pass) {
      out.pass = false;
      out.detail = what;
    }
  }
};

double relative_gap(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

double sign_invariant_gap(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return std::min((a - b).cwiseAbs().maxCoeff(), (a + b).cwiseAbs().maxCoeff());
}

// --------------------------------------------------------------------------

Outcome criterion_table1() {
  Outcome out;
  Check c{out};
  TwoClassProblem problem = scenario_problem(1);
  int values = 0;
  for (const auto& col : golden::scenario1_columns()) {
    DiscriminantModel model = col.inhomogeneous ? fit_inhomogeneous(problem, col.degree)
                                                : fit_homogeneous(problem, col.degree);
    c.require(model.basis.size() == static_cast<int>(col.coeffs.size()),
              "basis size mismatch at degree " + std::to_string(col.degree));
    c.require(golden::column_error(model.nu, col.coeffs) <= 1e-3,
              "coefficients off at degree " + std::to_string(col.degree) +
                  (col.inhomogeneous ? " (inhomogeneous)" : " (homogeneous)"));
    values += static_cast<int>(col.coeffs.size());
  }
  if (out.pass) out.detail = std::to_string(values) + " coefficients within 1e-3";
  return out;
}

Outcome criterion_table2() {
  Outcome out;
  Check c{out};
  TwoClassProblem problem = scenario_problem(2);
  for (const auto& col : golden::scenario2_columns()) {
    DiscriminantModel model = col.inhomogeneous ? fit_inhomogeneous(problem, col.degree)
                                                : fit_homogeneous(problem, col.degree);
    c.require(model.degenerate == col.degenerate,
              "degeneracy flag wrong at degree " + std::to_string(col.degree));
    if (col.degenerate) c.require(model.lambda == 0.0, "degenerate fit must have lambda 0");
    c.require(golden::column_error(model.nu, col.coeffs) <= 1e-3,
              "coefficients off at degree " + std::to_string(col.degree) +
                  (col.inhomogeneous ? " (inhomogeneous)" : " (homogeneous)"));
  }
  // the quartic inhomogeneous entries specifically
  DiscriminantModel ft4 = fit_inhomogeneous(problem, 4);
  double s = ft4.nu[2] > 0 ? 1.0 : -1.0;
  c.require(std::abs(s * ft4.nu[2] - 0.7063) <= 1e-3, "x1^2 entry of the degree-4 fit");
  c.require(std::abs(s * ft4.nu[9] + 0.0335) <= 1e-3, "x1^4 entry of the degree-4 fit");
  c.require(std::abs(s * ft4.nu[13] - 0.0335) <= 1e-3, "x2^4 entry of the degree-4 fit");
  if (out.pass) out.detail = "all columns within 1e-3, degenerate columns flagged";
  return out;
}

Outcome criterion_truncation_equivalence() {
  Outcome out;
  Check c{out};
  for (int scenario : {1, 2}) {
    TwoClassProblem problem = scenario_problem(scenario);
    for (int n = 1; n <= 8; ++n) {
      DiscriminantModel a = fit_gaussian_truncated(problem, 1.0, n);
      DiscriminantModel b = fit_inhomogeneous(problem, n);
      c.require(std::abs(a.lambda - b.lambda) <= 1e-10 * std::max(1.0, b.lambda),
                "lambda mismatch at N=" + std::to_string(n));
      c.require(sign_invariant_gap(a.nu, b.nu) <= 1e-10,
                "nu mismatch at N=" + std::to_string(n));
    }
  }
  if (out.pass) out.detail = "N=1..8 identical to 1e-10 for both scenarios";
  return out;
}

Outcome criterion_lambda_monotone() {
  Outcome out;
  Check c{out};
  auto curve1 = lambda_curve(scenario_problem(1), 10);
  auto curve2 = lambda_curve(scenario_problem(2), 10);
  for (std::size_t i = 1; i < curve1.size(); ++i) {
    c.require(curve1[i].second >= curve1[i - 1].second * (1.0 - 1e-9) - 1e-12,
              "Scenario 1 curve decreases at N=" + std::to_string(i + 1));
    c.require(curve2[i].second >= curve2[i - 1].second * (1.0 - 1e-9) - 1e-12,
              "Scenario 2 curve decreases at N=" + std::to_string(i + 1));
  }
  c.require(curve1[0].second > 0.9 * curve1[1].second, "Scenario 1 lacks the degree-1 jump");
  c.require(curve2[0].second == 0.0, "Scenario 2 lambda_1 must be exactly 0");
  if (out.pass) out.detail = "non-decreasing to N=10; lambda_1 jump / exact zero as required";
  return out;
}

Outcome criterion_eigensolver_oracle() {
  Outcome out;
  Check c{out};
  std::mt19937_64 rng(90210);
  for (int trial = 0; trial < 100; ++trial) {
    int dim = 2 + static_cast<int>(rng() % 19); // 2..20
    Eigen::VectorXd delta = testutil::random_vector(rng, dim);
    Eigen::MatrixXd a = testutil::random_matrix(rng, dim, dim);
    Eigen::MatrixXd w = a * a.transpose();
    w.diagonal().array() += 0.1;
    EigenSolution fast = rank_one_geig(delta, w, 0.0);
    GeigPairs slow = brute_force_geig(delta * delta.transpose(), w);
    c.require(relative_gap(fast.lambda, slow.eigenvalues[0]) <= 1e-8,
              "lambda disagreement at trial " + std::to_string(trial));
    c.require(testutil::cosine_abs(fast.nu, slow.eigenvectors.col(0)) >= 1.0 - 1e-8,
              "eigenvector disagreement at trial " + std::to_string(trial));
  }
  if (out.pass) out.detail = "100 random instances (dim <= 20) agree to 1e-8";
  return out;
}

Outcome criterion_rff_statistics() {
  Outcome out;
  Check c{out};
  std::mt19937_64 rng(314159);

  // kernel unbiasedness: 20 pairs x 200 seeds at D = 64
  KernelSpec gauss(GaussianKernel{1.0});
  for (int pair = 0; pair < 20; ++pair) {
    Eigen::VectorXd x = testutil::random_vector(rng, 2);
    Eigen::VectorXd u = testutil::random_vector(rng, 2);
    double exact = kernel_eval(gauss, x, u);
    for (RffVariant variant : {RffVariant::PhaseShiftedCos, RffVariant::SinCosPairs}) {
      double acc = 0.0, acc2 = 0.0;
      for (int s = 0; s < 200; ++s) {
        double v = kernel_mc_check(sample_features(2, 64, 1.0, variant, 7000 + s), x, u);
        acc += v;
        acc2 += v * v;
      }
      double mean = acc / 200;
      double se = std::sqrt((acc2 / 200 - mean * mean) / 200);
      c.require(std::abs(mean - exact) <= 3.0 * se + 1e-12,
                "kernel estimate biased at pair " + std::to_string(pair));
    }
  }

  // closed-form cosine expectation vs 1e6-draw Monte Carlo, 50 cases
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 2 * std::numbers::pi);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd mu = testutil::random_vector(rng, 2);
    Eigen::MatrixXd sigma = testutil::random_spd(rng, 2, 0.3);
    Eigen::VectorXd w = testutil::random_vector(rng, 2);
    double b = unif(rng);
    Eigen::MatrixXd chol = Eigen::LLT<Eigen::MatrixXd>(sigma).matrixL();
    const int n = 1000000;
    double acc = 0.0, acc2 = 0.0;
    for (int i = 0; i < n; ++i) {
      Eigen::Vector2d z(normal(rng), normal(rng));
      double v = std::cos(w.dot(mu + chol * z) + b);
      acc += v;
      acc2 += v * v;
    }
    double mean = acc / n;
    double se = std::sqrt((acc2 / n - mean * mean) / n);
    c.require(std::abs(cos_expectation(mu, sigma, w, b) - mean) <= 4.0 * se + 1e-12,
              "cosine expectation off at case " + std::to_string(trial));
  }

  // nested-feature monotonicity with one seed stream
  for (int scenario : {1, 2}) {
    TwoClassProblem problem = scenario_problem(scenario);
    RffFeatures features = sample_features(2, 40, 1.0, RffVariant::PhaseShiftedCos, 2024);
    double prev = -1.0;
    for (int d = 2; d <= 40; d += 2) {
      double lam = fit_rff_population(problem, features.prefix(d)).lambda;
      c.require(lam >= prev - 1e-9,
                "lambda_D decreased at D=" + std::to_string(d) + " in scenario " +
                    std::to_string(scenario));
      prev = lam;
    }
  }
  if (out.pass)
    out.detail = "unbiased within 3 SE; closed form within 4 SE of 1e6-draw MC; lambda_D monotone";
  return out;
}

Outcome criterion_sample_population_consistency() {
  Outcome out;
  Check c{out};
  GridSpec grid{-4, 4, -4, 4, 50, 50};

  // Scenario 1: dual-path linear fit on 400/class
  LabeledSample s1 = draw_scenario_sample(1, 400, 10);
  SampleKdaModel linear = fit_sample(s1, KernelSpec(HomoPoly{1}));
  choose_threshold(linear, s1);
  GridResult sg1 = grid_eval_fn(grid, [&](const Eigen::VectorXd& x) { return score(linear, x); });
  GridResult pg1 = grid_eval(fit_homogeneous(scenario_problem(1), 1), grid);
  double corr1 = testutil::pearson(testutil::flatten(sg1.scores), testutil::flatten(pg1.scores));
  c.require(corr1 >= 0.99, "Scenario 1 grid correlation " + std::to_string(corr1));

  // Scenario 2: moment-path inhomogeneous degree-2 fit on 2000/class
  LabeledSample s2 = draw_scenario_sample(2, 2000, 10);
  DiscriminantModel quad = fit_sample_moments(s2, KernelSpec(InhomoPoly{2}));
  double thr = 0.0;
  choose_threshold(quad, thr, s2);
  GridResult sg2 = grid_eval(quad, grid);
  GridResult pg2 = grid_eval(fit_inhomogeneous(scenario_problem(2), 2), grid);
  double corr2 = testutil::pearson(testutil::flatten(sg2.scores), testutil::flatten(pg2.scores));
  c.require(corr2 >= 0.99, "Scenario 2 grid correlation " + std::to_string(corr2));

  if (out.pass) {
    std::ostringstream os;
    os << "grid correlations " << corr1 << " and " << corr2 << " (seed 10)";
    out.detail = os.str();
  }
  return out;
}

Outcome criterion_sample_structure() {
  Outcome out;
  Check c{out};
  LabeledSample s = draw_scenario_sample(1, 30, 8); // n = 60
  std::mt19937_64 rng(246);

  for (const KernelSpec& spec :
       {KernelSpec(HomoPoly{2}), KernelSpec(InhomoPoly{3}), KernelSpec(GaussianKernel{0.9})}) {
    BetweenWithin bw = between_within(s, spec);
    c.require((bw.b - bw.b.transpose()).cwiseAbs().maxCoeff() <= 1e-12, "B not symmetric");
    c.require((bw.w - bw.w.transpose()).cwiseAbs().maxCoeff() <= 1e-12, "W not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eb(bw.b), ew(bw.w);
    c.require(eb.eigenvalues().minCoeff() >= -1e-8, "B not PSD for " + spec.name());
    c.require(ew.eigenvalues().minCoeff() >= -1e-8, "W not PSD for " + spec.name());
    const auto nev = eb.eigenvalues().size();
    c.require(eb.eigenvalues()[nev - 2] <= 1e-10 * std::max(1.0, eb.eigenvalues()[nev - 1]),
              "B has rank above 1 for " + spec.name());

    SampleKdaModel model = fit_sample(s, spec);

    // permutation invariance
    std::vector<int> perm(60);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    LabeledSample shuffled;
    shuffled.points.resize(60, 2);
    shuffled.labels.resize(60);
    for (int i = 0; i < 60; ++i) {
      shuffled.points.row(i) = s.points.row(perm[static_cast<std::size_t>(i)]);
      shuffled.labels[static_cast<std::size_t>(i)] =
          s.labels[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
    }
    SampleKdaModel permuted = fit_sample(shuffled, spec);
    c.require(relative_gap(permuted.lambda, model.lambda) <= 1e-6,
              "lambda changed under permutation for " + spec.name());
    std::mt19937_64 qrng(99);
    for (int q = 0; q < 10; ++q) {
      Eigen::VectorXd x = testutil::random_vector(qrng, 2);
      double a = score(model, x), b = score(permuted, x);
      c.require(std::abs(a - b) <= 1e-6 * std::max(1.0, std::abs(b)),
                "scores changed under permutation for " + spec.name());
    }

    // Rayleigh optimality against 200 random unit directions
    Eigen::MatrixXd wr = bw.w;
    wr.diagonal().array() += model.ridge;
    double best = model.alpha.dot(bw.b * model.alpha) / model.alpha.dot(wr * model.alpha);
    for (int trial = 0; trial < 200; ++trial) {
      Eigen::VectorXd v = testutil::random_vector(rng, 60);
      v.normalize();
      double q = v.dot(bw.b * v) / v.dot(wr * v);
      c.require(q <= best * (1.0 + 1e-10) + 1e-12, "Rayleigh quotient beaten for " + spec.name());
    }
  }
  if (out.pass) out.detail = "rank/PSD/permutation/Rayleigh checks for all three kernels at n=60";
  return out;
}

Outcome criterion_spam() {
  Outcome out;
  const char* env = std::getenv("KDA_SPAMBASE");
  std::string path = env ? env : "data/spambase.data";
  if (!std::filesystem::exists(path)) {
    out.skipped = true;
    out.detail = "dataset not found at '" + path +
                 "' (set KDA_SPAMBASE or place data/spambase.data); suite skipped";
    return out;
  }
  Check c{out};
  SpamOptions opt;
  opt.data_path = path;
  opt.seed = 1;
  SpamOutcome res = run_spam_pipeline(opt);
  c.require(res.n_rows == 4601, "expected the canonical 4601 rows");
  double evr = res.explained_first_two();
  c.require(evr >= 0.23 && evr <= 0.29,
            "explained variance of two components = " + std::to_string(evr));
  std::vector<double> expected = golden::spam_overall_errors();
  for (std::size_t i = 0; i < res.per_degree.size(); ++i) {
    c.require(std::abs(res.per_degree[i].test_overall_error - expected[i]) <= 0.02,
              "overall test error off at degree " + std::to_string(i + 1) + ": " +
                  std::to_string(res.per_degree[i].test_overall_error));
    if (i > 0)
      c.require(res.per_degree[i].ratio >= res.per_degree[i - 1].ratio * (1.0 - 1e-9),
                "ratio column not monotone at degree " + std::to_string(i + 1));
  }
  if (out.pass) {
    std::ostringstream os;
    os << "explained " << evr << "; overall errors within 0.02; ratios monotone";
    out.detail = os.str();
  }
  return out;
}

Outcome criterion_qualitative_grids() {
  Outcome out;
  Check c{out};
  GridSpec grid{-3, 3, -3, 3, 61, 61}; // odd resolution puts lattice points on the diagonals

  // Scenario 2 quadratic: zero set on the diagonals, opposite signs across them
  DiscriminantModel quad = fit_homogeneous(scenario_problem(2), 2);
  GridResult qg = grid_eval(quad, grid);
  double scale = qg.scores.cwiseAbs().maxCoeff();
  for (int i = 0; i < 61; ++i) {
    c.require(std::abs(qg.scores(i, i)) <= 1e-10 * scale, "diagonal not on the zero set");
    c.require(std::abs(qg.scores(i, 60 - i)) <= 1e-10 * scale, "antidiagonal not on the zero set");
  }
  double s_axis = qg.scores(30, 60); // (x=3, y=0)
  c.require(std::abs(s_axis) > 0.1 * scale, "axis score unexpectedly small");
  c.require(qg.scores(60, 30) * s_axis < 0, "quadrant signs not opposite across the diagonal");
  c.require(qg.scores(30, 0) * s_axis > 0, "x-axis scores disagree in sign");

  // Scenario 1 linear: grid antisymmetric about the origin
  GridResult lg = grid_eval(fit_homogeneous(scenario_problem(1), 1), grid);
  for (int r = 0; r < 61; ++r)
    for (int col = 0; col < 61; ++col)
      c.require(std::abs(lg.scores(r, col) + lg.scores(60 - r, 60 - col)) <=
                    1e-10 * lg.scores.cwiseAbs().maxCoeff(),
                "linear grid not antisymmetric");

  // grids (population, sample, RFF) are emitted through one writer; smoke the
  // files and their metadata line
  std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "kda_acceptance_grids";
  std::filesystem::create_directories(dir);
  write_grid_csv((dir / "quad.csv").string(), nlohmann::json{{"model", "scenario2_d2"}}, qg);
  RffFeatures features = sample_features(2, 10, 1.0, RffVariant::PhaseShiftedCos, 5);
  RffModel rff = fit_rff_population(scenario_problem(2), features);
  GridResult rg =
      grid_eval_fn(grid, [&](const Eigen::VectorXd& x) { return evaluate(rff, x); });
  write_grid_csv((dir / "rff.csv").string(), nlohmann::json{{"model", "rff_D10"}}, rg);
  c.require(rg.scores.allFinite(), "RFF grid contains non-finite scores");
  c.require((rg.scores.maxCoeff() - rg.scores.minCoeff()) > 0.0, "RFF grid is constant");
  std::ifstream check(dir / "quad.csv");
  std::string first;
  std::getline(check, first);
  c.require(first.rfind("# ", 0) == 0, "grid CSV missing its metadata line");

  if (out.pass)
    out.detail = "sign/zero-set structure verified; figure-style grids emitted to " + dir.string();
  return out;
}

} // namespace

int main() {
  struct Entry {
    int id;
    std::string name;
    double budget_s;
    std::function<Outcome()> run;
  };
  std::vector<Entry> criteria = {
      {1, "Scenario 1 population coefficient table", 1.0, criterion_table1},
      {2, "Scenario 2 population coefficient table (incl. degenerate columns)", 1.0,
       criterion_table2},
      {3, "truncated-Gaussian / inhomogeneous equivalence", 5.0, criterion_truncation_equivalence},
      {4, "lambda_N monotonicity and endpoints", 5.0, criterion_lambda_monotone},
      {5, "rank-one eigensolver vs brute-force oracle", 2.0, criterion_eigensolver_oracle},
      {6, "RFF statistical suite", 60.0, criterion_rff_statistics},
      {7, "sample-population grid consistency", 30.0, criterion_sample_population_consistency},
      {8, "sample-KDA structural suite", 10.0, criterion_sample_structure},
      {9, "spam pipeline vs reference error table", 60.0, criterion_spam},
      {10, "qualitative discriminant-grid properties", 10.0, criterion_qualitative_grids},
  };

  bool all_pass = true;
  for (const auto& entry : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = entry.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!out.skipped && elapsed > entry.budget_s) {
      out.pass = false;
      out.detail += (out.detail.empty() ? "" : "; ") + std::string("over the ") +
                    std::to_string(entry.budget_s) + " s budget";
    }
    const char* tag = out.skipped ? "SKIP" : (out.pass ? "PASS" : "FAIL");
    std::printf("%s  criterion %2d: %s [%.2f s]\n      %s\n", tag, entry.id, entry.name.c_str(),
                elapsed, out.detail.c_str());
    if (!out.pass && !out.skipped) all_pass = false;
  }
  std::printf(all_pass ? "acceptance: all criteria passed\n"
                       : "acceptance: FAILURES present\n");
  return all_pass ? 0 : 1;
}
