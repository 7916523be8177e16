// Command-line driver: population/sample kernel discriminant fits for the
// two simulation scenarios, random-Fourier-feature curves, the spam pipeline,
// and grid/score utilities over serialized models.
//
// Every CSV artifact starts with a `#`-prefixed JSON line carrying the full
// run configuration; JSON artifacts embed it as "run_config". Exit code is 0
// only if every requested artifact was written; errors print a JSON object to
// stderr.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kda/rff.hpp"
#include "kda/scenarios.hpp"
#include "kda/serialize.hpp"
#include "kda/spam.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct GlobalOpts {
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  std::string format = "csv";
  double ridge = -1.0;     // < 0: unset
  double ridge_rel = -1.0; // < 0: unset; ridge = ridge_rel * trace(W)/dim
};

std::vector<int> parse_int_list(const std::string& spec) {
  std::vector<int> out;
  auto dots = spec.find("..");
  try {
    if (dots != std::string::npos) {
      int lo = std::stoi(spec.substr(0, dots));
      int hi = std::stoi(spec.substr(dots + 2));
      if (lo < 1 || hi < lo) throw kda::Error("bad range '" + spec + "'");
      for (int d = lo; d <= hi; ++d) out.push_back(d);
      return out;
    }
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  } catch (const std::logic_error&) {
    throw kda::Error("cannot parse integer list '" + spec + "'");
  }
  if (out.empty()) throw kda::Error("empty integer list '" + spec + "'");
  for (int d : out)
    if (d < 1) throw kda::Error("list entries must be positive in '" + spec + "'");
  return out;
}

kda::GridSpec parse_grid(const std::string& spec) {
  // "xmin:xmax:nx,ymin:ymax:ny"
  auto comma = spec.find(',');
  if (comma == std::string::npos) throw kda::Error("grid spec '" + spec + "' needs two axes");
  auto axis = [&](const std::string& s, double& lo, double& hi, int& n) {
    std::stringstream ss(s);
    std::string a, b, c;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c, ':'))
      throw kda::Error("grid axis '" + s + "' must be min:max:count");
    try {
      lo = std::stod(a);
      hi = std::stod(b);
      n = std::stoi(c);
    } catch (const std::logic_error&) {
      throw kda::Error("grid axis '" + s + "' must be numeric min:max:count");
    }
    if (n < 1) throw kda::Error("grid resolution must be positive");
  };
  kda::GridSpec g;
  axis(spec.substr(0, comma), g.x_min, g.x_max, g.nx);
  axis(spec.substr(comma + 1), g.y_min, g.y_max, g.ny);
  return g;
}

json grid_json(const kda::GridSpec& g) {
  return {{"x_min", g.x_min}, {"x_max", g.x_max}, {"nx", g.nx},
          {"y_min", g.y_min}, {"y_max", g.y_max}, {"ny", g.ny}};
}

int g_artifacts = 0;

std::string out_path(const GlobalOpts& g, const std::string& name) {
  fs::create_directories(g.out_dir);
  return (fs::path(g.out_dir) / name).string();
}

void note_artifact(const std::string& path) {
  ++g_artifacts;
  std::cout << "wrote " << path << "\n";
}

void write_grid_artifact(const GlobalOpts& g, const std::string& stem, const json& meta,
                         const kda::GridResult& grid) {
  if (g.format == "json") {
    json j = json_of(grid);
    j["run_config"] = meta;
    kda::save_json(out_path(g, stem + ".json"), j);
    note_artifact(out_path(g, stem + ".json"));
  } else {
    kda::write_grid_csv(out_path(g, stem + ".csv"), meta, grid);
    note_artifact(out_path(g, stem + ".csv"));
  }
}

void write_curve_artifact(const GlobalOpts& g, const std::string& stem, const json& meta,
                          const std::string& key_name,
                          const std::vector<std::pair<int, double>>& curve) {
  if (g.format == "json") {
    json j;
    j["run_config"] = meta;
    for (const auto& [k, v] : curve) {
      j[key_name].push_back(k);
      j["lambda"].push_back(v);
    }
    kda::save_json(out_path(g, stem + ".json"), j);
    note_artifact(out_path(g, stem + ".json"));
  } else {
    kda::CsvWriter w(out_path(g, stem + ".csv"), meta, {key_name, "lambda"});
    for (const auto& [k, v] : curve) w.row(std::vector<double>{static_cast<double>(k), v});
    note_artifact(out_path(g, stem + ".csv"));
  }
}

/// Coefficient table: monomial rows, one column per fitted model, blank
/// cells where a term is outside a model's basis.
void write_coefficient_table(const GlobalOpts& g, const std::string& stem, const json& meta,
                             const std::vector<kda::DiscriminantModel>& models,
                             const std::vector<std::string>& names) {
  int max_degree = 1;
  for (const auto& m : models) max_degree = std::max(max_degree, m.basis.max_degree());
  kda::IndexSet rows = kda::enumerate_indices(2, kda::DegreeSpec::range(max_degree));

  json extra = meta;
  for (std::size_t c = 0; c < models.size(); ++c) {
    extra["model_lambda"][names[c]] = models[c].lambda;
    extra["model_degenerate"][names[c]] = models[c].degenerate;
    extra["model_ridge"][names[c]] = models[c].ridge;
  }

  std::vector<std::string> header = {"term"};
  header.insert(header.end(), names.begin(), names.end());

  if (g.format == "json") {
    json j;
    j["run_config"] = extra;
    for (int r = 0; r < rows.size(); ++r) {
      json row;
      row["term"] = rows[r].monomial_string();
      for (std::size_t c = 0; c < models.size(); ++c) {
        const auto& basis = models[c].basis;
        for (int i = 0; i < basis.size(); ++i)
          if (basis[i] == rows[r]) row[names[c]] = models[c].nu[i];
      }
      j["rows"].push_back(std::move(row));
    }
    kda::save_json(out_path(g, stem + ".json"), j);
    note_artifact(out_path(g, stem + ".json"));
    return;
  }

  kda::CsvWriter w(out_path(g, stem + ".csv"), extra, header);
  for (int r = 0; r < rows.size(); ++r) {
    std::vector<std::string> cells = {rows[r].monomial_string()};
    for (std::size_t c = 0; c < models.size(); ++c) {
      const auto& basis = models[c].basis;
      std::string cell;
      for (int i = 0; i < basis.size(); ++i)
        if (basis[i] == rows[r]) cell = kda::format_double(models[c].nu[i]);
      cells.push_back(cell);
    }
    w.row(cells);
  }
  note_artifact(out_path(g, stem + ".csv"));
}

/// Absolute ridge for a population fit honoring --ridge / --ridge-rel.
double population_ridge(const GlobalOpts& g, const kda::TwoClassProblem& problem,
                        const kda::DegreeSpec& spec) {
  if (g.ridge >= 0.0) return g.ridge;
  if (g.ridge_rel >= 0.0) {
    kda::IndexSet idx = kda::enumerate_indices(problem.dimension(), spec);
    kda::PooledCovariance w = kda::pooled_covariance(problem, idx);
    return g.ridge_rel * w.w.trace() / idx.size();
  }
  return 0.0;
}

std::optional<double> sample_ridge(const GlobalOpts& g) {
  if (g.ridge >= 0.0) return g.ridge;
  return std::nullopt; // fit_sample applies its relative default
}

std::string sanitize(std::string name) {
  for (char& c : name)
    if (c == ':' || c == '.') c = '_';
  return name;
}

Eigen::VectorXd parse_vec(const std::string& spec) {
  std::vector<double> vals;
  std::stringstream ss(spec);
  std::string tok;
  try {
    while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
  } catch (const std::logic_error&) {
    throw kda::Error("cannot parse vector '" + spec + "'");
  }
  if (vals.empty()) throw kda::Error("empty vector '" + spec + "'");
  return Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

/// Preset parameter overrides shared by the scenario and rff commands.
struct ProblemOverrides {
  std::string mu1, mu2, var1, var2;
  double prior1 = -1.0;

  void register_flags(CLI::App* cmd) {
    cmd->add_option("--mu1", mu1, "Override class-1 mean, e.g. 0.6,0.9");
    cmd->add_option("--mu2", mu2, "Override class-2 mean");
    cmd->add_option("--var1", var1, "Override class-1 coordinate variances");
    cmd->add_option("--var2", var2, "Override class-2 coordinate variances");
    cmd->add_option("--prior1", prior1, "Override class-1 prior");
  }

  kda::TwoClassProblem apply(int scenario_id, json& run) const {
    kda::TwoClassProblem preset = kda::scenario_problem(scenario_id);
    const auto& d1 = std::get<kda::DiagonalGaussian>(preset.class1().dist());
    const auto& d2 = std::get<kda::DiagonalGaussian>(preset.class2().dist());
    Eigen::VectorXd m1 = mu1.empty() ? d1.mean : parse_vec(mu1);
    Eigen::VectorXd m2 = mu2.empty() ? d2.mean : parse_vec(mu2);
    Eigen::VectorXd v1 = var1.empty() ? d1.variance : parse_vec(var1);
    Eigen::VectorXd v2 = var2.empty() ? d2.variance : parse_vec(var2);
    double p1 = prior1 < 0.0 ? preset.class1().prior() : prior1;
    if (!mu1.empty()) run["mu1"] = mu1;
    if (!mu2.empty()) run["mu2"] = mu2;
    if (!var1.empty()) run["var1"] = var1;
    if (!var2.empty()) run["var2"] = var2;
    if (prior1 >= 0.0) run["prior1"] = prior1;
    return kda::TwoClassProblem(kda::ClassSpec(kda::DiagonalGaussian{m1, v1}, p1),
                                kda::ClassSpec(kda::DiagonalGaussian{m2, v2}, 1.0 - p1));
  }
};

// ---------------------------------------------------------------------------

void cmd_scenario(const GlobalOpts& g, int id, const ProblemOverrides& overrides,
                  const std::string& homo_spec, const std::string& inhomo_spec,
                  int gauss_trunc, double omega, int lambda_n, int sample_n,
                  const std::string& sample_kernel, const std::string& grid_spec) {
  kda::GridSpec grid = parse_grid(grid_spec);

  json run{{"command", "scenario"},
           {"scenario", id},
           {"seed", g.seed},
           {"format", g.format},
           {"grid", grid_json(grid)},
           {"ridge", g.ridge},
           {"ridge_rel", g.ridge_rel}};
  kda::TwoClassProblem problem = overrides.apply(id, run);
  const std::string tag = "scenario" + std::to_string(id);

  std::vector<kda::DiscriminantModel> homo_models, inhomo_models;
  std::vector<std::string> homo_names, inhomo_names;

  if (!homo_spec.empty()) {
    run["poly_homo"] = homo_spec;
    for (int d : parse_int_list(homo_spec)) {
      double r = population_ridge(g, problem, kda::DegreeSpec::exact(d));
      homo_models.push_back(kda::fit_homogeneous(problem, d, r));
      homo_names.push_back("f" + std::to_string(d));
    }
  }
  if (!inhomo_spec.empty()) {
    run["poly_inhomo"] = inhomo_spec;
    for (int d : parse_int_list(inhomo_spec)) {
      double r = population_ridge(g, problem, kda::DegreeSpec::range(d));
      inhomo_models.push_back(kda::fit_inhomogeneous(problem, d, r));
      inhomo_names.push_back("ft" + std::to_string(d));
    }
  }
  if (!homo_models.empty())
    write_coefficient_table(g, tag + "_homogeneous_coefficients", run, homo_models, homo_names);
  if (!inhomo_models.empty())
    write_coefficient_table(g, tag + "_inhomogeneous_coefficients", run, inhomo_models,
                            inhomo_names);

  auto emit_model = [&](const kda::DiscriminantModel& m, const std::string& name) {
    json meta = run;
    meta["model"] = name;
    json mj = json_of(m);
    mj["run_config"] = meta;
    kda::save_json(out_path(g, tag + "_model_" + name + ".json"), mj);
    note_artifact(out_path(g, tag + "_model_" + name + ".json"));
    write_grid_artifact(g, tag + "_grid_" + name, meta, kda::grid_eval(m, grid));
  };
  for (const auto& m : homo_models)
    emit_model(m, "homo" + std::to_string(m.provenance.degree));
  for (const auto& m : inhomo_models)
    emit_model(m, "inhomo" + std::to_string(m.provenance.degree));

  if (gauss_trunc > 0) {
    run["gauss_trunc"] = gauss_trunc;
    run["omega"] = omega;
    double r = population_ridge(g, problem, kda::DegreeSpec::range(gauss_trunc));
    kda::DiscriminantModel m = kda::fit_gaussian_truncated(problem, omega, gauss_trunc, r);
    emit_model(m, "gausstrunc" + std::to_string(gauss_trunc));
  }

  if (lambda_n > 0) {
    run["lambda_curve"] = lambda_n;
    double r = g.ridge >= 0.0 ? g.ridge : 0.0;
    write_curve_artifact(g, tag + "_lambda_curve", run, "N",
                         kda::lambda_curve(problem, lambda_n, r));
  }

  if (sample_n > 0) {
    run["sample_n"] = sample_n;
    run["sample_kernel"] = sample_kernel;
    kda::LabeledSample sample = kda::draw_sample(problem, sample_n, sample_n, g.seed);
    kda::write_labeled_sample_csv(out_path(g, tag + "_sample.csv"), run, sample);
    note_artifact(out_path(g, tag + "_sample.csv"));

    kda::KernelSpec spec = kda::kernel_from_name(sample_kernel);
    kda::SampleKdaModel model = kda::fit_sample(sample, spec, sample_ridge(g));
    kda::ThresholdChoice choice = kda::choose_threshold(model, sample);
    json meta = run;
    meta["training_error"] = choice.training_error;
    json mj = json_of(model);
    mj["run_config"] = meta;
    const std::string kn = sanitize(spec.name());
    kda::save_json(out_path(g, tag + "_sample_model_" + kn + ".json"), mj);
    note_artifact(out_path(g, tag + "_sample_model_" + kn + ".json"));
    kda::GridResult sg = kda::grid_eval_fn(
        grid, [&](const Eigen::VectorXd& x) { return kda::score(model, x); });
    write_grid_artifact(g, tag + "_sample_grid_" + kn, meta, sg);
  }
}

void cmd_rff(const GlobalOpts& g, int id, const ProblemOverrides& overrides, double omega,
             const std::string& d_spec, const std::string& variant_name,
             const std::string& grid_spec, const std::string& grid_at_spec) {
  kda::GridSpec grid = parse_grid(grid_spec);
  kda::RffVariant variant = kda::rff_variant_from_name(variant_name);
  std::vector<int> d_list = parse_int_list(d_spec);
  int d_max = *std::max_element(d_list.begin(), d_list.end());

  json run{{"command", "rff"},     {"scenario", id},          {"omega", omega},
           {"D", d_spec},          {"variant", variant_name}, {"seed", g.seed},
           {"format", g.format},   {"grid", grid_json(grid)}, {"ridge", g.ridge},
           {"grid_at", grid_at_spec}};
  kda::TwoClassProblem problem = overrides.apply(id, run);
  const std::string tag = "rff_scenario" + std::to_string(id);

  kda::RffFeatures features =
      kda::sample_features(problem.dimension(), d_max, omega, variant, g.seed);
  json fj = json_of(features);
  fj["run_config"] = run;
  kda::save_json(out_path(g, tag + "_features.json"), fj);
  note_artifact(out_path(g, tag + "_features.json"));

  const double ridge = g.ridge >= 0.0 ? g.ridge : 0.0;
  std::vector<std::pair<int, double>> curve;
  for (int d : d_list)
    curve.emplace_back(d, kda::fit_rff_population(problem, features.prefix(d), ridge).lambda);
  write_curve_artifact(g, tag + "_lambda_curve", run, "D", curve);

  std::vector<int> grid_at =
      grid_at_spec.empty() ? std::vector<int>{d_max} : parse_int_list(grid_at_spec);
  for (int d : grid_at) {
    if (d > d_max) throw kda::Error("--grid-at entry exceeds the largest D");
    kda::RffModel model = kda::fit_rff_population(problem, features.prefix(d), ridge);
    json meta = run;
    meta["model_D"] = d;
    json mj = json_of(model);
    mj["run_config"] = meta;
    kda::save_json(out_path(g, tag + "_model_D" + std::to_string(d) + ".json"), mj);
    note_artifact(out_path(g, tag + "_model_D" + std::to_string(d) + ".json"));
    kda::GridResult gr = kda::grid_eval_fn(
        grid, [&](const Eigen::VectorXd& x) { return kda::evaluate(model, x); });
    write_grid_artifact(g, tag + "_grid_D" + std::to_string(d), meta, gr);
  }
}

void cmd_spam(const GlobalOpts& g, const std::string& data_path, const std::string& degrees,
              int pcs, double train_frac, const std::string& policy_name) {
  kda::SpamOptions opt;
  opt.data_path = data_path;
  opt.degrees = parse_int_list(degrees);
  opt.n_components = pcs;
  opt.train_frac = train_frac;
  opt.seed = g.seed;
  opt.policy = kda::transform_policy_from_name(policy_name);

  json run{{"command", "spam"},
           {"data", data_path},
           {"degrees", degrees},
           {"pcs", pcs},
           {"train_frac", train_frac},
           {"seed", g.seed},
           {"transform_policy", policy_name},
           {"format", g.format}};

  kda::SpamOutcome outcome = kda::run_spam_pipeline(opt);
  for (const auto& w : outcome.pca.transform.warnings) std::cerr << "warning: " << w << "\n";

  json meta = run;
  meta["n_rows"] = outcome.n_rows;
  meta["spam_fraction"] = outcome.spam_fraction;
  meta["explained_first_two"] = outcome.explained_first_two();

  {
    kda::CsvWriter w(out_path(g, "spam_table.csv"), meta,
                     {"degree", "ratio", "training_error", "test_misclassified_spam",
                      "test_misclassified_regular", "test_overall_error"});
    for (const auto& row : outcome.per_degree)
      w.row(std::vector<double>{static_cast<double>(row.degree), row.ratio,
                                row.training_error, row.test_misclassified_spam,
                                row.test_misclassified_regular, row.test_overall_error});
    note_artifact(out_path(g, "spam_table.csv"));
  }

  std::vector<kda::DiscriminantModel> models;
  std::vector<std::string> names;
  for (const auto& row : outcome.per_degree) {
    models.push_back(row.model);
    names.push_back("d" + std::to_string(row.degree));
  }
  write_coefficient_table(g, "spam_coefficients", meta, models, names);

  json pj = json_of(outcome.pca);
  pj["run_config"] = meta;
  kda::save_json(out_path(g, "spam_pca.json"), pj);
  note_artifact(out_path(g, "spam_pca.json"));

  auto write_scores = [&](const Eigen::MatrixXd& scores, const std::vector<int>& labels,
                          const std::string& name) {
    std::vector<std::string> header;
    for (int c = 0; c < scores.cols(); ++c) header.push_back("pc" + std::to_string(c + 1));
    header.push_back("label");
    kda::CsvWriter w(out_path(g, name), meta, header);
    for (Eigen::Index r = 0; r < scores.rows(); ++r) {
      std::vector<double> row;
      for (Eigen::Index c = 0; c < scores.cols(); ++c) row.push_back(scores(r, c));
      row.push_back(labels[static_cast<std::size_t>(r)]);
      w.row(row);
    }
    note_artifact(out_path(g, name));
  };
  write_scores(outcome.train_scores, outcome.train_labels, "spam_scores_train.csv");
  write_scores(outcome.test_scores, outcome.test_labels, "spam_scores_test.csv");

  // decision-boundary grids over the span of the training scores
  if (pcs >= 2) {
    double x0 = outcome.train_scores.col(0).minCoeff();
    double x1 = outcome.train_scores.col(0).maxCoeff();
    double y0 = outcome.train_scores.col(1).minCoeff();
    double y1 = outcome.train_scores.col(1).maxCoeff();
    double mx = 0.1 * (x1 - x0), my = 0.1 * (y1 - y0);
    kda::GridSpec grid{x0 - mx, x1 + mx, y0 - my, y1 + my, 150, 150};
    for (const auto& row : outcome.per_degree) {
      if (row.model.dimension() != 2) continue;
      json bmeta = meta;
      bmeta["degree"] = row.degree;
      bmeta["threshold"] = row.threshold;
      bmeta["grid"] = grid_json(grid);
      write_grid_artifact(g, "spam_boundary_d" + std::to_string(row.degree), bmeta,
                          kda::grid_eval(row.model, grid));
    }
  }
}

void cmd_grid(const GlobalOpts& g, const std::string& model_path, const std::string& grid_spec,
              const std::string& out_name) {
  kda::GridSpec grid = parse_grid(grid_spec);
  json mj = kda::load_json(model_path);
  kda::AnyModel model = kda::model_from_json(mj);
  if (kda::any_model_dimension(model) != 2)
    throw kda::Error("grid: model must be two-dimensional");
  json run{{"command", "grid"},
           {"model", model_path},
           {"grid", grid_json(grid)},
           {"format", g.format}};
  kda::GridResult gr = kda::grid_eval_fn(
      grid, [&](const Eigen::VectorXd& x) { return kda::score_any(model, x); });
  std::string stem = out_name.empty() ? "grid" : out_name;
  write_grid_artifact(g, stem, run, gr);
}

void cmd_fit(const GlobalOpts& g, const std::string& data_path, const std::string& kernel_name,
             const std::string& path_kind, bool with_threshold, const std::string& out_name) {
  kda::LabeledSample sample = kda::read_labeled_sample_csv(data_path);
  kda::KernelSpec spec = kda::kernel_from_name(kernel_name);
  json run{{"command", "fit"},
           {"data", data_path},
           {"kernel", kernel_name},
           {"path", path_kind},
           {"threshold", with_threshold},
           {"ridge", g.ridge},
           {"seed", g.seed}};

  json mj;
  if (path_kind == "dual") {
    kda::SampleKdaModel model = kda::fit_sample(sample, spec, sample_ridge(g));
    if (with_threshold) kda::choose_threshold(model, sample);
    mj = json_of(model);
  } else {
    kda::DiscriminantModel model = kda::fit_sample_moments(sample, spec, sample_ridge(g));
    if (with_threshold) {
      double thr = 0.0;
      kda::choose_threshold(model, thr, sample);
      mj = json_of(model);
      mj["threshold"] = thr;
    } else {
      mj = json_of(model);
    }
  }
  mj["run_config"] = run;
  std::string path = out_path(g, out_name.empty() ? "model.json" : out_name);
  kda::save_json(path, mj);
  note_artifact(path);
}

void cmd_score(const GlobalOpts& g, const std::string& model_path, const std::string& data_path,
               const std::string& out_name) {
  json mj = kda::load_json(model_path);
  kda::AnyModel model = kda::model_from_json(mj);
  kda::LabeledSample sample = kda::read_labeled_sample_csv(data_path);
  if (kda::any_model_dimension(model) != sample.dimension())
    throw kda::Error("score: model and data dimensions differ");

  std::optional<double> threshold;
  if (const auto* s = std::get_if<kda::SampleKdaModel>(&model); s && s->threshold)
    threshold = *s->threshold;
  else if (mj.contains("threshold") && mj["threshold"].is_number())
    threshold = mj["threshold"].get<double>();

  json run{{"command", "score"}, {"model", model_path}, {"data", data_path}};
  std::vector<std::string> header;
  for (int c = 0; c < sample.dimension(); ++c) header.push_back("x" + std::to_string(c + 1));
  header.push_back("label");
  header.push_back("score");
  if (threshold) header.push_back("predicted");

  std::string path = out_path(g, out_name.empty() ? "scores.csv" : out_name);
  kda::CsvWriter w(path, run, header);
  int correct = 0;
  for (int r = 0; r < sample.size(); ++r) {
    Eigen::VectorXd x = sample.points.row(r).transpose();
    double s = kda::score_any(model, x);
    std::vector<double> row;
    for (int c = 0; c < sample.dimension(); ++c) row.push_back(x[c]);
    row.push_back(sample.labels[static_cast<std::size_t>(r)]);
    row.push_back(s);
    if (threshold) {
      int pred = s > *threshold ? 1 : 2;
      row.push_back(pred);
      if (pred == sample.labels[static_cast<std::size_t>(r)]) ++correct;
    }
    w.row(row);
  }
  note_artifact(path);
  if (threshold)
    std::cout << "accuracy " << static_cast<double>(correct) / sample.size() << "\n";
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kernel discriminant analysis: population and sample fits, "
               "polynomial and Gaussian kernels, random Fourier features"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--seed", g.seed, "RNG seed for draws, splits, and features");
  app.add_option("--out-dir", g.out_dir, "Directory for artifacts (created if missing)");
  app.add_option("--format", g.format, "Artifact format for tables/curves/grids")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--ridge", g.ridge, "Absolute ridge added to the within matrix");
  app.add_option("--ridge-rel", g.ridge_rel, "Ridge as a multiple of trace(W)/dim");

  auto* sc = app.add_subcommand("scenario", "Population and sample fits for a preset scenario");
  int sc_id = 1;
  std::string sc_homo, sc_inhomo, sc_grid = "-4:4:100,-4:4:100", sc_kernel = "homo:1";
  int sc_gauss = 0, sc_lambda = 0, sc_sample = 0;
  double sc_omega = 1.0;
  sc->add_option("id", sc_id, "Scenario id")->required()->check(CLI::IsMember({1, 2}));
  sc->add_option("--poly-homo", sc_homo, "Homogeneous degrees, e.g. 1..4 or 2,4");
  sc->add_option("--poly-inhomo", sc_inhomo, "Inhomogeneous degrees, e.g. 1..4");
  sc->add_option("--gauss-trunc", sc_gauss, "Truncated-Gaussian fit at this degree");
  sc->add_option("--omega", sc_omega, "Gaussian bandwidth for --gauss-trunc");
  sc->add_option("--lambda-curve", sc_lambda, "Emit lambda_N for N = 1..this");
  sc->add_option("--sample-n", sc_sample, "Draw this many points per class and fit");
  sc->add_option("--sample-kernel", sc_kernel, "Kernel for the sample fit (name:param)");
  sc->add_option("--grid", sc_grid, "Score grid spec xmin:xmax:nx,ymin:ymax:ny");
  ProblemOverrides sc_over;
  sc_over.register_flags(sc);

  auto* rf = app.add_subcommand("rff", "Random-Fourier-feature discriminants for a scenario");
  int rf_id = 1;
  std::string rf_d = "1..40", rf_variant = "cos", rf_grid = "-4:4:100,-4:4:100", rf_at;
  double rf_omega = 1.0;
  rf->add_option("id", rf_id, "Scenario id")->required()->check(CLI::IsMember({1, 2}));
  rf->add_option("--omega", rf_omega, "Gaussian bandwidth");
  rf->add_option("--D", rf_d, "Feature counts for the lambda_D curve, e.g. 1..40");
  rf->add_option("--variant", rf_variant, "Feature variant")
      ->check(CLI::IsMember({"cos", "sincos"}));
  rf->add_option("--grid", rf_grid, "Score grid spec");
  rf->add_option("--grid-at", rf_at, "Emit grids at these D values (default: largest)");
  ProblemOverrides rf_over;
  rf_over.register_flags(rf);

  auto* sp = app.add_subcommand("spam", "Spam-filter experiment on a spambase-format file");
  std::string sp_data, sp_degrees = "1..6", sp_policy = "logit-log";
  int sp_pcs = 2;
  double sp_frac = 0.6;
  sp->add_option("--data", sp_data, "Path to spambase.data")->required();
  sp->add_option("--degrees", sp_degrees, "Inhomogeneous degrees to fit");
  sp->add_option("--pcs", sp_pcs, "Number of principal components");
  sp->add_option("--train-frac", sp_frac, "Training fraction for the stratified split");
  sp->add_option("--transform-policy", sp_policy, "Column transform policy")
      ->check(CLI::IsMember({"logit-log", "logit-all"}));

  auto* gr = app.add_subcommand("grid", "Evaluate a serialized model on a grid");
  std::string gr_model, gr_grid = "-4:4:100,-4:4:100", gr_out;
  gr->add_option("--model", gr_model, "Model JSON file")->required();
  gr->add_option("--grid", gr_grid, "Grid spec");
  gr->add_option("--out", gr_out, "Output stem (default 'grid')");

  auto* ft = app.add_subcommand("fit", "Fit a sample-KDA model from a labeled CSV");
  std::string ft_data, ft_kernel, ft_path = "dual", ft_out;
  bool ft_threshold = false;
  ft->add_option("--data", ft_data, "Labeled sample CSV (features then label)")->required();
  ft->add_option("--kernel", ft_kernel, "Kernel name:param, e.g. inhomo:3")->required();
  ft->add_option("--path", ft_path, "Fit path")->check(CLI::IsMember({"dual", "moments"}));
  ft->add_flag("--threshold", ft_threshold, "Choose the training-error threshold");
  ft->add_option("--out", ft_out, "Output model file name (default model.json)");

  auto* so = app.add_subcommand("score", "Score a labeled CSV with a serialized model");
  std::string so_model, so_data, so_out;
  so->add_option("--model", so_model, "Model JSON file")->required();
  so->add_option("--data", so_data, "Labeled sample CSV")->required();
  so->add_option("--out", so_out, "Output file name (default scores.csv)");

  try {
    app.parse(argc, argv);
    if (sc->parsed()) {
      // with no explicit requests, reproduce the full population set
      if (sc_homo.empty() && sc_inhomo.empty() && sc_gauss == 0 && sc_lambda == 0 &&
          sc_sample == 0) {
        sc_homo = "1..4";
        sc_inhomo = "1..4";
        sc_lambda = 10;
      }
      cmd_scenario(g, sc_id, sc_over, sc_homo, sc_inhomo, sc_gauss, sc_omega, sc_lambda,
                   sc_sample, sc_kernel, sc_grid);
    } else if (rf->parsed()) {
      cmd_rff(g, rf_id, rf_over, rf_omega, rf_d, rf_variant, rf_grid, rf_at);
    } else if (sp->parsed()) {
      cmd_spam(g, sp_data, sp_degrees, sp_pcs, sp_frac, sp_policy);
    } else if (gr->parsed()) {
      cmd_grid(g, gr_model, gr_grid, gr_out);
    } else if (ft->parsed()) {
      cmd_fit(g, ft_data, ft_kernel, ft_path, ft_threshold, ft_out);
    } else if (so->parsed()) {
      cmd_score(g, so_model, so_data, so_out);
    }
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() != 0) {
      json err{{"error", {{"type", "usage"}, {"message", e.what()}}}};
      std::cerr << err.dump() << "\n";
    }
    return app.exit(e);
  } catch (const kda::SingularWithinClass& e) {
    json err{{"error",
              {{"type", "singular_within_class"}, {"message", e.what()}, {"ridge", e.ridge()}}}};
    std::cerr << err.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    json err{{"error", {{"type", "runtime"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
  std::cout << g_artifacts << " artifact(s) written\n";
  return 0;
}
