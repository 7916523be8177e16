#include "kda/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace kda {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  // prefer the shortest representation that round-trips
  for (int prec = 1; prec <= 16; ++prec) {
    char cand[40];
    std::snprintf(cand, sizeof(cand), "%.*g", prec, v);
    if (std::strtod(cand, nullptr) == v) return cand;
  }
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, const nlohmann::json& metadata,
                     const std::vector<std::string>& header)
    : out_(path) {
  if (!out_) throw Error("CsvWriter: cannot open '" + path + "' for writing");
  out_ << "# " << metadata.dump() << "\n";
  for (std::size_t i = 0; i < header.size(); ++i)
    out_ << header[i] << (i + 1 < header.size() ? "," : "");
  out_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i)
    out_ << format_double(values[i]) << (i + 1 < values.size() ? "," : "");
  out_ << "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i)
    out_ << cells[i] << (i + 1 < cells.size() ? "," : "");
  out_ << "\n";
}

namespace {

std::vector<double> to_vec(const Eigen::VectorXd& v) {
  return {v.data(), v.data() + v.size()};
}

Eigen::VectorXd from_vec(const nlohmann::json& j) {
  std::vector<double> v = j.get<std::vector<double>>();
  return Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

nlohmann::json matrix_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (rows == 0) return {};
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(j[static_cast<std::size_t>(r)].size()) != cols)
      throw Error("matrix_from_json: ragged rows");
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].get<double>();
  }
  return m;
}

} // namespace

nlohmann::json json_of(const KernelSpec& spec) {
  nlohmann::json j;
  if (const auto* h = std::get_if<HomoPoly>(&spec.variant())) {
    j["family"] = "homo";
    j["degree"] = h->degree;
  } else if (const auto* i = std::get_if<InhomoPoly>(&spec.variant())) {
    j["family"] = "inhomo";
    j["degree"] = i->degree;
  } else {
    j["family"] = "gauss";
    j["omega"] = std::get<GaussianKernel>(spec.variant()).omega;
  }
  return j;
}

KernelSpec kernel_from_json(const nlohmann::json& j) {
  const std::string family = j.at("family").get<std::string>();
  if (family == "homo") return KernelSpec(HomoPoly{j.at("degree").get<int>()});
  if (family == "inhomo") return KernelSpec(InhomoPoly{j.at("degree").get<int>()});
  if (family == "gauss") return KernelSpec(GaussianKernel{j.at("omega").get<double>()});
  throw Error("kernel_from_json: unknown family '" + family + "'");
}

KernelSpec kernel_from_name(const std::string& name) {
  auto colon = name.find(':');
  if (colon == std::string::npos)
    throw Error("kernel spec '" + name + "' must look like homo:2, inhomo:3, or gauss:0.5");
  const std::string family = name.substr(0, colon);
  const std::string arg = name.substr(colon + 1);
  try {
    if (family == "homo") return KernelSpec(HomoPoly{std::stoi(arg)});
    if (family == "inhomo") return KernelSpec(InhomoPoly{std::stoi(arg)});
    if (family == "gauss") return KernelSpec(GaussianKernel{std::stod(arg)});
  } catch (const std::logic_error&) {
    throw Error("kernel spec '" + name + "': cannot parse parameter '" + arg + "'");
  }
  throw Error("kernel spec '" + name + "': unknown family '" + family + "'");
}

nlohmann::json json_of(const DiscriminantModel& model) {
  nlohmann::json j;
  j["type"] = "polynomial_discriminant";
  j["dimension"] = model.basis.dimension();
  j["degree_kind"] = model.basis.spec().kind == DegreeSpec::Kind::Exact ? "exact" : "range";
  j["degree"] = model.basis.spec().degree;
  nlohmann::json idx = nlohmann::json::array();
  for (const auto& mi : model.basis) idx.push_back(mi.exponents());
  j["indices"] = std::move(idx);
  j["nu"] = to_vec(model.nu);
  j["lambda"] = model.lambda;
  j["degenerate"] = model.degenerate;
  j["ridge"] = model.ridge;
  nlohmann::json prov;
  prov["method"] = model.provenance.method_name();
  prov["degree"] = model.provenance.degree;
  if (model.provenance.method == FitProvenance::Method::GaussianTruncated)
    prov["omega"] = model.provenance.omega;
  if (!model.provenance.kernel.empty()) prov["kernel"] = model.provenance.kernel;
  j["provenance"] = std::move(prov);
  return j;
}

DiscriminantModel discriminant_from_json(const nlohmann::json& j) {
  DiscriminantModel model;
  const int p = j.at("dimension").get<int>();
  const std::string kind = j.at("degree_kind").get<std::string>();
  DegreeSpec spec = kind == "exact" ? DegreeSpec::exact(j.at("degree").get<int>())
                                    : DegreeSpec::range(j.at("degree").get<int>());
  model.basis = enumerate_indices(p, spec);
  // stored indices must agree with the canonical enumeration
  const auto& idx = j.at("indices");
  if (static_cast<int>(idx.size()) != model.basis.size())
    throw Error("discriminant_from_json: index list does not match basis size");
  for (int i = 0; i < model.basis.size(); ++i)
    if (MultiIndex(idx[static_cast<std::size_t>(i)].get<std::vector<int>>()) != model.basis[i])
      throw Error("discriminant_from_json: non-canonical index ordering");
  model.nu = from_vec(j.at("nu"));
  if (model.nu.size() != model.basis.size())
    throw Error("discriminant_from_json: coefficient length mismatch");
  model.lambda = j.at("lambda").get<double>();
  model.degenerate = j.at("degenerate").get<bool>();
  model.ridge = j.value("ridge", 0.0);
  const auto& prov = j.at("provenance");
  const std::string method = prov.at("method").get<std::string>();
  if (method == "homogeneous") model.provenance.method = FitProvenance::Method::Homogeneous;
  else if (method == "inhomogeneous") model.provenance.method = FitProvenance::Method::Inhomogeneous;
  else if (method == "gaussian_truncated") model.provenance.method = FitProvenance::Method::GaussianTruncated;
  else if (method == "sample_moments") model.provenance.method = FitProvenance::Method::SampleMoments;
  else throw Error("discriminant_from_json: unknown provenance method '" + method + "'");
  model.provenance.degree = prov.at("degree").get<int>();
  model.provenance.omega = prov.value("omega", 0.0);
  model.provenance.kernel = prov.value("kernel", std::string());
  return model;
}

nlohmann::json json_of(const SampleKdaModel& model) {
  nlohmann::json j;
  j["type"] = "sample_kda";
  j["kernel"] = json_of(model.kernel);
  j["alpha"] = to_vec(model.alpha);
  j["lambda"] = model.lambda;
  j["degenerate"] = model.degenerate;
  j["ridge"] = model.ridge;
  if (model.threshold)
    j["threshold"] = *model.threshold;
  else
    j["threshold"] = nullptr;
  j["points"] = matrix_json(model.points);
  j["labels"] = model.labels;
  return j;
}

SampleKdaModel sample_model_from_json(const nlohmann::json& j) {
  SampleKdaModel model{matrix_from_json(j.at("points")),
                       j.at("labels").get<std::vector<int>>(),
                       kernel_from_json(j.at("kernel")),
                       from_vec(j.at("alpha")),
                       j.at("lambda").get<double>(),
                       j.value("degenerate", false),
                       j.value("ridge", 0.0),
                       std::nullopt};
  if (!j.at("threshold").is_null()) model.threshold = j.at("threshold").get<double>();
  if (model.alpha.size() != model.points.rows())
    throw Error("sample_model_from_json: alpha length does not match point count");
  return model;
}

nlohmann::json json_of(const RffFeatures& features) {
  nlohmann::json j;
  j["type"] = "rff_features";
  j["variant"] = rff_variant_name(features.variant);
  j["dimension"] = features.input_dim();
  j["count"] = features.count();
  j["omega"] = features.omega;
  j["seed"] = features.seed;
  return j;
}

RffFeatures rff_features_from_json(const nlohmann::json& j) {
  return sample_features(j.at("dimension").get<int>(), j.at("count").get<int>(),
                         j.at("omega").get<double>(),
                         rff_variant_from_name(j.at("variant").get<std::string>()),
                         j.at("seed").get<std::uint64_t>());
}

nlohmann::json json_of(const RffModel& model) {
  nlohmann::json j;
  j["type"] = "rff_model";
  j["features"] = json_of(model.features);
  j["nu"] = to_vec(model.nu);
  j["lambda"] = model.lambda;
  j["degenerate"] = model.degenerate;
  j["ridge"] = model.ridge;
  return j;
}

RffModel rff_model_from_json(const nlohmann::json& j) {
  RffModel model{rff_features_from_json(j.at("features")), from_vec(j.at("nu")),
                 j.at("lambda").get<double>(), j.value("degenerate", false),
                 j.value("ridge", 0.0)};
  if (model.nu.size() != model.features.feature_dim())
    throw Error("rff_model_from_json: coefficient length does not match feature count");
  return model;
}

nlohmann::json json_of(const PcaModel& model) {
  nlohmann::json j;
  j["type"] = "pca";
  j["mean"] = to_vec(model.mean);
  j["sd"] = to_vec(model.sd);
  j["loadings"] = matrix_json(model.loadings);
  j["explained_ratio"] = to_vec(model.explained_ratio);
  nlohmann::json t;
  t["policy"] = transform_policy_name(model.transform.policy);
  t["zero_eps"] = model.transform.zero_eps;
  t["upper_eps"] = model.transform.upper_eps;
  std::vector<int> kinds;
  kinds.reserve(model.transform.kinds.size());
  for (auto k : model.transform.kinds)
    kinds.push_back(k == ColumnKind::Percentage ? 0 : 1);
  t["kinds"] = kinds;
  t["dropped"] = model.transform.dropped;
  j["transform"] = std::move(t);
  return j;
}

void save_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw Error("save_json: cannot open '" + path + "' for writing");
  out << j.dump(2) << "\n";
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("load_json: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("load_json: '" + path + "' is not valid JSON: " + e.what());
  }
  return j;
}

AnyModel model_from_json(const nlohmann::json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "polynomial_discriminant") return discriminant_from_json(j);
  if (type == "sample_kda") return sample_model_from_json(j);
  if (type == "rff_model") return rff_model_from_json(j);
  throw Error("model_from_json: unknown model type '" + type + "'");
}

double score_any(const AnyModel& model, const Eigen::VectorXd& x) {
  if (const auto* d = std::get_if<DiscriminantModel>(&model)) return evaluate(*d, x);
  if (const auto* s = std::get_if<SampleKdaModel>(&model)) return score(*s, x);
  return evaluate(std::get<RffModel>(model), x);
}

int any_model_dimension(const AnyModel& model) {
  if (const auto* d = std::get_if<DiscriminantModel>(&model)) return d->dimension();
  if (const auto* s = std::get_if<SampleKdaModel>(&model))
    return static_cast<int>(s->points.cols());
  return std::get<RffModel>(model).features.input_dim();
}

void write_grid_csv(const std::string& path, const nlohmann::json& metadata,
                    const GridResult& grid) {
  CsvWriter w(path, metadata, {"x", "y", "score"});
  for (Eigen::Index r = 0; r < grid.ys.size(); ++r)
    for (Eigen::Index c = 0; c < grid.xs.size(); ++c)
      w.row(std::vector<double>{grid.xs[c], grid.ys[r], grid.scores(r, c)});
}

nlohmann::json json_of(const GridResult& grid) {
  nlohmann::json j;
  j["x"] = to_vec(grid.xs);
  j["y"] = to_vec(grid.ys);
  j["scores"] = matrix_json(grid.scores);
  return j;
}

void write_labeled_sample_csv(const std::string& path, const nlohmann::json& metadata,
                              const LabeledSample& sample) {
  std::vector<std::string> header;
  for (int c = 0; c < sample.dimension(); ++c) header.push_back("x" + std::to_string(c + 1));
  header.push_back("label");
  CsvWriter w(path, metadata, header);
  for (int r = 0; r < sample.size(); ++r) {
    std::vector<double> row(static_cast<std::size_t>(sample.dimension()) + 1);
    for (int c = 0; c < sample.dimension(); ++c) row[static_cast<std::size_t>(c)] = sample.points(r, c);
    row.back() = sample.labels[static_cast<std::size_t>(r)];
    w.row(row);
  }
}

LabeledSample read_labeled_sample_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("read_labeled_sample_csv: cannot open '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> fields;
    std::stringstream ss(line);
    std::string tok;
    bool numeric = true;
    while (std::getline(ss, tok, ',')) {
      try {
        std::size_t pos = 0;
        fields.push_back(std::stod(tok, &pos));
        if (pos != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      if (rows.empty()) continue; // header line
      throw Error("read_labeled_sample_csv: line " + std::to_string(line_no) +
                  ": cannot parse '" + tok + "'");
    }
    if (!rows.empty() && fields.size() != rows.front().size())
      throw Error("read_labeled_sample_csv: line " + std::to_string(line_no) +
                  ": inconsistent column count");
    rows.push_back(std::move(fields));
  }
  if (rows.empty()) throw Error("read_labeled_sample_csv: no data rows in '" + path + "'");
  const auto cols = rows.front().size();
  if (cols < 2) throw Error("read_labeled_sample_csv: need feature columns plus a label");

  LabeledSample sample;
  sample.points.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols - 1));
  sample.labels.resize(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c + 1 < cols; ++c)
      sample.points(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    double lab = rows[r][cols - 1];
    if (lab != 1.0 && lab != 2.0)
      throw Error("read_labeled_sample_csv: labels must be 1 or 2");
    sample.labels[r] = static_cast<int>(lab);
  }
  sample.validate();
  return sample;
}

} // namespace kda
