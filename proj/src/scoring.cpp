#include "relex/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace relex {

namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw std::runtime_error("scoring: " + msg);
}

std::string join_ids(const std::vector<std::string>& ids) {
  std::string out;
  const std::size_t shown = std::min<std::size_t>(ids.size(), 10);
  for (std::size_t i = 0; i < shown; ++i) {
    if (i) out += ", ";
    out += "'" + ids[i] + "'";
  }
  if (ids.size() > shown)
    out += ", ... (" + std::to_string(ids.size() - shown) + " more)";
  return out;
}

}  // namespace

ConfusionCounts count_confusion(const std::vector<std::string>& gold,
                                const std::vector<std::string>& predicted) {
  if (gold.size() != predicted.size())
    fail("gold and predicted lengths differ (" + std::to_string(gold.size()) +
         " vs " + std::to_string(predicted.size()) + ")");
  ConfusionCounts c;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const std::string& g = gold[i];
    const std::string& p = predicted[i];
    if (is_meaningful(g) && p == g) ++c.tp;
    if (is_meaningful(p) && p != g) ++c.fp;
    if (is_meaningful(g) && p != g) ++c.fn;
  }
  return c;
}

ScoreReport compute_scores(const ConfusionCounts& counts) {
  if (counts.tp < 0 || counts.fp < 0 || counts.fn < 0) fail("negative confusion counts");
  ScoreReport report;
  report.counts = counts;
  const double tp = static_cast<double>(counts.tp);
  if (counts.tp + counts.fp > 0) report.precision = tp / static_cast<double>(counts.tp + counts.fp);
  if (counts.tp + counts.fn > 0) report.recall = tp / static_cast<double>(counts.tp + counts.fn);
  if (report.precision + report.recall > 0.0)
    report.f1 = 2.0 * report.precision * report.recall / (report.precision + report.recall);
  return report;
}

ScoreReport score_labeled(const Dataset& data,
                          const std::map<std::string, std::string>& predicted_by_id) {
  std::vector<std::string> unlabeled;
  std::vector<std::string> missing;
  std::vector<std::string> gold;
  std::vector<std::string> predicted;
  gold.reserve(data.samples.size());
  predicted.reserve(data.samples.size());

  for (const Sample& s : data.samples) {
    if (!s.has_gold()) {
      unlabeled.push_back(s.id);
      continue;
    }
    auto it = predicted_by_id.find(s.id);
    if (it == predicted_by_id.end()) {
      missing.push_back(s.id);
      continue;
    }
    gold.push_back(*s.gold_relation);
    predicted.push_back(it->second);
  }
  if (!unlabeled.empty())
    fail("cannot score unlabeled samples (missing gold is never treated as no_relation): " +
         join_ids(unlabeled));
  if (!missing.empty()) fail("missing predictions for ids: " + join_ids(missing));
  if (predicted_by_id.size() != data.samples.size()) {
    std::vector<std::string> extra;
    std::set<std::string> known;
    for (const Sample& s : data.samples) known.insert(s.id);
    for (const auto& [id, label] : predicted_by_id)
      if (!known.contains(id)) extra.push_back(id);
    fail("predictions for unknown ids: " + join_ids(extra));
  }
  return compute_scores(count_confusion(gold, predicted));
}

ScoreReport score_predictions(const Dataset& data,
                              const std::vector<Prediction>& predictions) {
  std::map<std::string, std::string> by_id;
  for (const Prediction& p : predictions)
    if (!by_id.emplace(p.sample_id, p.predicted).second)
      fail("duplicate prediction for id '" + p.sample_id + "'");
  return score_labeled(data, by_id);
}

double display_value(double ratio) {
  // Published-table convention: scale to x100 and truncate at 2 decimals.
  // The epsilon compensates for ratios that are exact decimals but sit just
  // below their double representation.
  return std::floor(ratio * 10000.0 + 1e-9) / 100.0;
}

std::string format_display(double ratio) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", display_value(ratio));
  return buf;
}

}  // namespace relex
