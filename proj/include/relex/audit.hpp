#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relex/catalog.hpp"
#include "relex/pipeline.hpp"
#include "relex/scoring.hpp"

namespace relex {

// Side-by-side accounting of the two modes. A "rescued" sample is a
// gold-negative one that the binary classifier misjudged as meaningful and
// the leaky fallback nonetheless labeled no_relation, purely because it had
// been filtered out of the pre-evaluation data.
struct AuditReport {
  std::vector<std::string> rescued_ids;  // sorted
  ConfusionCounts leaky_counts;
  ConfusionCounts corrected_counts;
  ScoreReport leaky_scores;
  ScoreReport corrected_scores;
  double inflation = 0.0;  // leaky F1 - corrected F1, raw ratio scale
  std::optional<CatalogDiff> catalog_diff;
};

// Cross-checks the two prediction lists against the data and each other.
// Provenance must be consistent with a shared steps-1-2 prefix; tp and fn
// must agree across modes and the fp delta must equal the rescued count.
// Violations mean the lists came from mismatched pipelines and throw.
AuditReport audit_modes(const Dataset& data, const TrainedPipeline& pipeline,
                        const std::vector<Prediction>& leaky,
                        const std::vector<Prediction>& corrected);

struct PairCoincidence {
  TypePair pair;
  std::size_t gold_negatives = 0;
  std::size_t coincident = 0;  // gold no_relation and predicted no_relation
  double rate = 0.0;
  bool flagged = false;
  bool perfect_on_positives = false;  // every gold-positive predicted exactly
};

// Heuristic detector for the loophole's footprint in provenance-free
// predictions: within a Complicated pair, the leaky fallback makes the
// no_relation predictions cover the gold no_relation samples exactly.
struct SuspicionReport {
  std::size_t min_gold_negatives = 3;
  std::vector<PairCoincidence> pairs;  // complicated pairs only, sorted
  bool flagged = false;
  bool perfect_predictor_caveat = false;
  std::string caveat;
};

// The catalog tells it which pairs are Complicated; predictions are a plain
// id -> label map so third-party result files can be screened. Predictions
// must cover every labeled sample of the complicated pairs.
SuspicionReport detect_leak_signature(const SubsetCatalog& catalog, const Dataset& data,
                                      const std::map<std::string, std::string>& predicted_by_id,
                                      std::size_t min_gold_negatives = 3);

}  // namespace relex
