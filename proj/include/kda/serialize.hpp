#ifndef KDA_SERIALIZE_HPP
#define KDA_SERIALIZE_HPP

#include <fstream>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "kda/dataprep.hpp"
#include "kda/population.hpp"
#include "kda/rff.hpp"
#include "kda/sample.hpp"

namespace kda {

std::string format_double(double v); // shortest round-trippable decimal

/// CSV with a single `#`-prefixed JSON metadata line, then a header row.
class CsvWriter {
public:
  CsvWriter(const std::string& path, const nlohmann::json& metadata,
            const std::vector<std::string>& header);
  void row(const std::vector<double>& values);
  void row(const std::vector<std::string>& cells);

private:
  std::ofstream out_;
};

nlohmann::json json_of(const KernelSpec& spec);
KernelSpec kernel_from_json(const nlohmann::json& j);
KernelSpec kernel_from_name(const std::string& name); // "homo:2", "inhomo:3", "gauss:0.5"

nlohmann::json json_of(const DiscriminantModel& model);
DiscriminantModel discriminant_from_json(const nlohmann::json& j);

nlohmann::json json_of(const SampleKdaModel& model);
SampleKdaModel sample_model_from_json(const nlohmann::json& j);

nlohmann::json json_of(const RffFeatures& features); // seed/omega/D/variant only
RffFeatures rff_features_from_json(const nlohmann::json& j);

nlohmann::json json_of(const RffModel& model);
RffModel rff_model_from_json(const nlohmann::json& j);

nlohmann::json json_of(const PcaModel& model);

void save_json(const std::string& path, const nlohmann::json& j);
nlohmann::json load_json(const std::string& path);

/// Any serialized model that can score points; resolved by the "type" field.
using AnyModel = std::variant<DiscriminantModel, SampleKdaModel, RffModel>;
AnyModel model_from_json(const nlohmann::json& j);
double score_any(const AnyModel& model, const Eigen::VectorXd& x);
int any_model_dimension(const AnyModel& model);

void write_grid_csv(const std::string& path, const nlohmann::json& metadata,
                    const GridResult& grid);
nlohmann::json json_of(const GridResult& grid);

void write_labeled_sample_csv(const std::string& path, const nlohmann::json& metadata,
                              const LabeledSample& sample);
LabeledSample read_labeled_sample_csv(const std::string& path);

} // namespace kda

#endif
