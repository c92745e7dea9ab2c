#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "relex/dataset.hpp"
#include "relex/pipeline.hpp"

namespace relex {

// Micro tallies with no_relation as the negative class: a no_relation
// prediction is never a true positive, and a wrong meaningful label on a
// gold-positive sample counts as both a false positive and a false negative.
struct ConfusionCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;

  bool operator==(const ConfusionCounts&) const = default;
};

// Position-aligned gold/predicted label vectors. Throws on length mismatch.
ConfusionCounts count_confusion(const std::vector<std::string>& gold,
                                const std::vector<std::string>& predicted);

struct ScoreReport {
  double precision = 0.0;  // raw ratios in [0, 1]
  double recall = 0.0;
  double f1 = 0.0;
  ConfusionCounts counts;
};

// P = tp/(tp+fp), R = tp/(tp+fn), F1 = 2PR/(P+R). Zero denominators yield 0.
ScoreReport compute_scores(const ConfusionCounts& counts);

// Aligns predictions to samples by id; errors list missing and extra ids.
// Every scored sample must carry a gold label.
ScoreReport score_predictions(const Dataset& data,
                              const std::vector<Prediction>& predictions);
ScoreReport score_labeled(const Dataset& data,
                          const std::map<std::string, std::string>& predicted_by_id);

// Published-table display scale: ratio x 100 truncated to 2 decimals.
double display_value(double ratio);
std::string format_display(double ratio);  // e.g. "89.86"

}  // namespace relex
