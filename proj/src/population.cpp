#include "kda/population.hpp"

namespace kda {

std::string FitProvenance::method_name() const {
  switch (method) {
    case Method::Homogeneous: return "homogeneous";
    case Method::Inhomogeneous: return "inhomogeneous";
    case Method::GaussianTruncated: return "gaussian_truncated";
    case Method::SampleMoments: return "sample_moments";
  }
  return "unknown";
}

namespace {

constexpr int kMaxFitDegree = 20; // keeps moment degree 2d within the table cap

DiscriminantModel fit_over(const TwoClassProblem& problem, const IndexSet& idx,
                           double ridge, FitProvenance provenance) {
  const int max_deg = idx.max_degree();
  if (max_deg > kMaxFitDegree)
    throw Error("population fit: degree " + std::to_string(max_deg) +
                " exceeds the cap of 20 (moments to 2d are required)");
  MomentTable t1 = MomentTable::compute(problem.class1(), 2 * max_deg);
  MomentTable t2 = MomentTable::compute(problem.class2(), 2 * max_deg);
  DeltaVector delta = delta_from_tables(t1, t2, idx);
  PooledCovariance w = pooled_from_tables(t1, t2, problem.class1().prior(), idx);
  EigenSolution sol = rank_one_geig(delta.values, w.w, ridge);

  DiscriminantModel model;
  model.basis = idx;
  model.nu = sol.nu;
  model.lambda = sol.lambda;
  model.degenerate = sol.degenerate;
  model.ridge = sol.ridge_used;
  model.provenance = std::move(provenance);
  return model;
}

} // namespace

DiscriminantModel fit_homogeneous(const TwoClassProblem& problem, int degree, double ridge) {
  if (degree < 1) throw Error("fit_homogeneous: degree must be >= 1");
  IndexSet idx = enumerate_indices(problem.dimension(), DegreeSpec::exact(degree));
  FitProvenance prov;
  prov.method = FitProvenance::Method::Homogeneous;
  prov.degree = degree;
  return fit_over(problem, idx, ridge, prov);
}

DiscriminantModel fit_inhomogeneous(const TwoClassProblem& problem, int degree, double ridge) {
  if (degree < 1) throw Error("fit_inhomogeneous: degree must be >= 1");
  IndexSet idx = enumerate_indices(problem.dimension(), DegreeSpec::range(degree));
  FitProvenance prov;
  prov.method = FitProvenance::Method::Inhomogeneous;
  prov.degree = degree;
  return fit_over(problem, idx, ridge, prov);
}

DiscriminantModel fit_gaussian_truncated(const TwoClassProblem& problem, double omega,
                                         int truncation, double ridge) {
  if (!(omega > 0.0)) throw Error("fit_gaussian_truncated: bandwidth must be positive");
  if (truncation < 1) throw Error("fit_gaussian_truncated: truncation degree must be >= 1");
  IndexSet idx = enumerate_indices(problem.dimension(), DegreeSpec::range(truncation));
  FitProvenance prov;
  prov.method = FitProvenance::Method::GaussianTruncated;
  prov.degree = truncation;
  prov.omega = omega;
  return fit_over(problem, idx, ridge, prov);
}

std::vector<std::pair<int, double>> lambda_curve(const TwoClassProblem& problem, int n_max,
                                                 double ridge) {
  if (n_max < 1 || n_max > 20) throw Error("lambda_curve: N_max must be in 1..20");
  std::vector<std::pair<int, double>> curve;
  curve.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n)
    curve.emplace_back(n, fit_inhomogeneous(problem, n, ridge).lambda);
  return curve;
}

double evaluate(const DiscriminantModel& model, const Eigen::VectorXd& x) {
  if (x.size() != model.dimension())
    throw Error("evaluate: point dimension does not match model basis");
  double acc = 0.0;
  for (int i = 0; i < model.basis.size(); ++i)
    acc += model.nu[i] * monomial_eval(x, model.basis[i]);
  return acc;
}

GridResult grid_eval_fn(const GridSpec& grid,
                        const std::function<double(const Eigen::VectorXd&)>& f) {
  if (grid.nx < 1 || grid.ny < 1) throw Error("grid_eval: resolution must be positive");
  GridResult out;
  out.xs.resize(grid.nx);
  out.ys.resize(grid.ny);
  for (int i = 0; i < grid.nx; ++i)
    out.xs[i] = grid.nx == 1 ? grid.x_min
                             : grid.x_min + (grid.x_max - grid.x_min) * i / (grid.nx - 1.0);
  for (int i = 0; i < grid.ny; ++i)
    out.ys[i] = grid.ny == 1 ? grid.y_min
                             : grid.y_min + (grid.y_max - grid.y_min) * i / (grid.ny - 1.0);
  out.scores.resize(grid.ny, grid.nx);
  Eigen::VectorXd pt(2);
  for (int r = 0; r < grid.ny; ++r) {
    for (int c = 0; c < grid.nx; ++c) {
      pt << out.xs[c], out.ys[r];
      out.scores(r, c) = f(pt);
    }
  }
  return out;
}

GridResult grid_eval(const DiscriminantModel& model, const GridSpec& grid) {
  if (model.dimension() != 2) throw Error("grid_eval: model must be two-dimensional");
  return grid_eval_fn(grid, [&](const Eigen::VectorXd& x) { return evaluate(model, x); });
}

} // namespace kda
