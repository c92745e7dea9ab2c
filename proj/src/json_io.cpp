#include "relex/json_io.hpp"

#include <stdexcept>

#include "relex/io.hpp"

namespace relex::jsonio {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) {
  throw std::runtime_error("json_io: " + msg);
}

}  // namespace

ordered_json to_json(const TypePair& pair) {
  return ordered_json::array({pair.subj_type, pair.obj_type});
}

ordered_json to_json(const ConfusionCounts& counts) {
  ordered_json j;
  j["tp"] = counts.tp;
  j["fp"] = counts.fp;
  j["fn"] = counts.fn;
  return j;
}

ordered_json to_json(const ScoreReport& report) {
  ordered_json j;
  j["counts"] = to_json(report.counts);
  j["precision"] = report.precision;
  j["recall"] = report.recall;
  j["f1"] = report.f1;
  ordered_json display;
  display["precision"] = format_display(report.precision);
  display["recall"] = format_display(report.recall);
  display["f1"] = format_display(report.f1);
  j["display"] = display;
  return j;
}

ordered_json to_json(const SubsetDescriptor& descriptor) {
  ordered_json j;
  j["pair"] = to_json(descriptor.pair);
  j["kind"] = to_string(descriptor.kind);
  j["labels"] = descriptor.labels;
  j["train_count"] = descriptor.train_count;
  j["meaningful_train_count"] = descriptor.meaningful_train_count;
  return j;
}

ordered_json to_json(const CatalogDiffEntry& entry) {
  ordered_json j;
  j["pair"] = to_json(entry.pair);
  j["status"] = to_string(entry.status);
  if (entry.kind_a) j["kind_a"] = to_string(*entry.kind_a);
  if (entry.kind_b) j["kind_b"] = to_string(*entry.kind_b);
  j["labels_a"] = entry.labels_a;
  j["labels_b"] = entry.labels_b;
  return j;
}

ordered_json to_json(const CatalogDiff& diff) {
  ordered_json j;
  j["source_a"] = diff.source_a;
  j["source_b"] = diff.source_b;
  ordered_json entries = ordered_json::array();
  for (const CatalogDiffEntry& e : diff.entries) entries.push_back(to_json(e));
  j["entries"] = entries;
  return j;
}

ordered_json to_json(const SuspicionReport& report) {
  ordered_json j;
  j["min_gold_negatives"] = report.min_gold_negatives;
  j["flagged"] = report.flagged;
  j["perfect_predictor_caveat"] = report.perfect_predictor_caveat;
  if (!report.caveat.empty()) j["caveat"] = report.caveat;
  ordered_json pairs = ordered_json::array();
  for (const PairCoincidence& pc : report.pairs) {
    ordered_json p;
    p["pair"] = to_json(pc.pair);
    p["gold_negatives"] = pc.gold_negatives;
    p["coincident"] = pc.coincident;
    p["rate"] = pc.rate;
    p["flagged"] = pc.flagged;
    p["perfect_on_positives"] = pc.perfect_on_positives;
    pairs.push_back(p);
  }
  j["pairs"] = pairs;
  return j;
}

ordered_json to_json(const AuditReport& report) {
  ordered_json j;
  j["rescued_ids"] = report.rescued_ids;
  j["rescued_count"] = report.rescued_ids.size();
  j["leaky"] = to_json(report.leaky_scores);
  j["corrected"] = to_json(report.corrected_scores);
  j["inflation"] = report.inflation;
  j["inflation_display"] = format_display(report.inflation);
  if (report.catalog_diff) j["catalog_diff"] = to_json(*report.catalog_diff);
  return j;
}

std::string prediction_to_json_line(const Prediction& prediction) {
  ordered_json rec;
  rec["id"] = prediction.sample_id;
  rec["predicted"] = prediction.predicted;
  rec["decided_at"] = to_string(prediction.decided_at);
  return rec.dump();
}

void write_predictions(const std::vector<Prediction>& predictions, const std::string& path) {
  std::string buf;
  for (const Prediction& p : predictions) {
    buf += prediction_to_json_line(p);
    buf += '\n';
  }
  io::atomic_write(path, buf);
}

std::vector<Prediction> read_predictions(const std::string& path) {
  std::vector<Prediction> out;
  io::for_each_line(path, [&](std::size_t line_no, const std::string& line) {
    const std::string where = "file '" + path + "' record " + std::to_string(line_no);
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      fail(where + ": invalid JSON: " + e.what());
    }
    try {
      out.push_back(Prediction{rec.at("id").get<std::string>(),
                               rec.at("predicted").get<std::string>(),
                               provenance_from_string(rec.at("decided_at").get<std::string>())});
    } catch (const json::exception& e) {
      fail(where + ": " + e.what());
    }
  });
  return out;
}

std::map<std::string, std::string> read_prediction_labels(const std::string& path) {
  std::map<std::string, std::string> out;
  io::for_each_line(path, [&](std::size_t line_no, const std::string& line) {
    const std::string where = "file '" + path + "' record " + std::to_string(line_no);
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      fail(where + ": invalid JSON: " + e.what());
    }
    if (!rec.is_object() || !rec.contains("id"))
      fail(where + ": expected records with an 'id' field");
    std::string label;
    if (rec.contains("predicted")) label = rec["predicted"].get<std::string>();
    else if (rec.contains("label")) label = rec["label"].get<std::string>();
    else fail(where + ": expected a 'predicted' or 'label' field");
    const std::string id = rec["id"].get<std::string>();
    if (!out.emplace(id, std::move(label)).second)
      fail(where + ": duplicate id '" + id + "'");
  });
  return out;
}

}  // namespace relex::jsonio
