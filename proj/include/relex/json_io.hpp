#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "relex/audit.hpp"
#include "relex/catalog.hpp"
#include "relex/pipeline.hpp"
#include "relex/scoring.hpp"

// JSON shapes for the machine-readable artifacts the CLI writes and the test
// harness parses back.
namespace relex::jsonio {

nlohmann::ordered_json to_json(const TypePair& pair);
nlohmann::ordered_json to_json(const ConfusionCounts& counts);
nlohmann::ordered_json to_json(const ScoreReport& report);  // counts + raw + display
nlohmann::ordered_json to_json(const SubsetDescriptor& descriptor);
nlohmann::ordered_json to_json(const CatalogDiffEntry& entry);
nlohmann::ordered_json to_json(const CatalogDiff& diff);
nlohmann::ordered_json to_json(const SuspicionReport& report);
nlohmann::ordered_json to_json(const AuditReport& report);

std::string prediction_to_json_line(const Prediction& prediction);
std::vector<Prediction> read_predictions(const std::string& path);
void write_predictions(const std::vector<Prediction>& predictions, const std::string& path);

// Lenient form for files produced elsewhere: only id and predicted/label are
// required, provenance is ignored.
std::map<std::string, std::string> read_prediction_labels(const std::string& path);

}  // namespace relex::jsonio
