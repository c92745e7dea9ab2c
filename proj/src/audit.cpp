#include "relex/audit.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace relex {

namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw std::runtime_error("audit: " + msg);
}

std::map<std::string, const Prediction*> index_predictions(
    const std::vector<Prediction>& predictions, const char* which) {
  std::map<std::string, const Prediction*> by_id;
  for (const Prediction& p : predictions)
    if (!by_id.emplace(p.sample_id, &p).second)
      fail(std::string(which) + " predictions contain duplicate id '" + p.sample_id + "'");
  return by_id;
}

bool shared_prefix_step(Provenance p) {
  return p == Provenance::BinaryStep || p == Provenance::SimpleStep ||
         p == Provenance::Degenerate || p == Provenance::UnseenPair;
}

}  // namespace

AuditReport audit_modes(const Dataset& data, const TrainedPipeline& pipeline,
                        const std::vector<Prediction>& leaky,
                        const std::vector<Prediction>& corrected) {
  validate_pipeline(pipeline);
  if (leaky.size() != data.samples.size() || corrected.size() != data.samples.size())
    fail("prediction lists must cover the dataset exactly (" +
         std::to_string(data.samples.size()) + " samples, got " +
         std::to_string(leaky.size()) + " leaky / " + std::to_string(corrected.size()) +
         " corrected)");

  const auto leaky_by_id = index_predictions(leaky, "leaky");
  const auto corrected_by_id = index_predictions(corrected, "corrected");

  AuditReport report;
  for (const Sample& s : data.samples) {
    auto li = leaky_by_id.find(s.id);
    auto ci = corrected_by_id.find(s.id);
    if (li == leaky_by_id.end()) fail("leaky predictions miss sample '" + s.id + "'");
    if (ci == corrected_by_id.end()) fail("corrected predictions miss sample '" + s.id + "'");
    const Prediction& l = *li->second;
    const Prediction& c = *ci->second;

    // Steps 1-2 are shared, so any decision made there must match exactly.
    // Step 3: a leaky store hit replays the same classifier's answer; a miss
    // pairs with a live semantic answer on the corrected side.
    if (c.decided_at == Provenance::LeakyFallback)
      fail("corrected predictions contain a leaky_fallback tag for '" + s.id +
           "'; the lists look swapped or mismatched");
    const bool consistent =
        (shared_prefix_step(l.decided_at) && c.decided_at == l.decided_at &&
         c.predicted == l.predicted) ||
        (l.decided_at == Provenance::SemanticStep &&
         c.decided_at == Provenance::SemanticStep && c.predicted == l.predicted) ||
        (l.decided_at == Provenance::LeakyFallback &&
         c.decided_at == Provenance::SemanticStep);
    if (!consistent)
      fail("provenance for sample '" + s.id + "' is inconsistent (leaky " +
           std::string(to_string(l.decided_at)) + " '" + l.predicted + "' vs corrected " +
           std::string(to_string(c.decided_at)) + " '" + c.predicted +
           "'); the lists must come from the same pipeline");

    if (l.decided_at == Provenance::LeakyFallback) {
      if (!s.has_gold())
        fail("leaky fallback on unlabeled sample '" + s.id +
             "'; the store cannot have been built from this data");
      if (!s.gold_is_meaningful()) {
        report.rescued_ids.push_back(s.id);
      } else {
        // A gold-positive sample can only miss the store if the store was
        // built from different data.
        fail("leaky fallback on gold-positive sample '" + s.id +
             "'; the store does not match this dataset");
      }
    }
  }
  std::sort(report.rescued_ids.begin(), report.rescued_ids.end());

  report.leaky_scores = score_predictions(data, leaky);
  report.corrected_scores = score_predictions(data, corrected);
  report.leaky_counts = report.leaky_scores.counts;
  report.corrected_counts = report.corrected_scores.counts;
  report.inflation = report.leaky_scores.f1 - report.corrected_scores.f1;

  // The FP-only delta is what makes the loophole an inflation mechanism: the
  // rescued samples turn into false positives once the fallback is removed,
  // and nothing else moves.
  if (report.corrected_counts.tp != report.leaky_counts.tp ||
      report.corrected_counts.fn != report.leaky_counts.fn)
    fail("tp/fn differ across modes; the prediction lists cannot come from the same pipeline");
  if (report.corrected_counts.fp - report.leaky_counts.fp !=
      static_cast<std::int64_t>(report.rescued_ids.size()))
    fail("fp delta (" +
         std::to_string(report.corrected_counts.fp - report.leaky_counts.fp) +
         ") does not equal the rescued count (" +
         std::to_string(report.rescued_ids.size()) + ")");

  return report;
}

SuspicionReport detect_leak_signature(const SubsetCatalog& catalog, const Dataset& data,
                                      const std::map<std::string, std::string>& predicted_by_id,
                                      std::size_t min_gold_negatives) {
  SuspicionReport report;
  report.min_gold_negatives = min_gold_negatives;

  std::set<TypePair> complicated;
  for (const TypePair& pair : catalog.complicated_pairs()) complicated.insert(pair);

  std::map<TypePair, PairCoincidence> stats;
  std::map<TypePair, bool> positives_ok;
  for (const TypePair& pair : complicated) {
    stats[pair].pair = pair;
    positives_ok[pair] = true;
  }

  for (const Sample& s : data.samples) {
    const TypePair pair = type_pair_of(s);
    if (!complicated.contains(pair) || !s.has_gold()) continue;
    auto it = predicted_by_id.find(s.id);
    if (it == predicted_by_id.end())
      fail("no prediction for sample '" + s.id + "' in complicated pair " + to_string(pair));
    const std::string& predicted = it->second;
    PairCoincidence& pc = stats[pair];
    if (!s.gold_is_meaningful()) {
      ++pc.gold_negatives;
      if (!is_meaningful(predicted)) ++pc.coincident;
    } else if (predicted != *s.gold_relation) {
      positives_ok[pair] = false;
    }
  }

  bool all_flagged_perfect = true;
  for (auto& [pair, pc] : stats) {
    pc.rate = pc.gold_negatives == 0
                  ? 0.0
                  : static_cast<double>(pc.coincident) / static_cast<double>(pc.gold_negatives);
    pc.perfect_on_positives = positives_ok[pair];
    pc.flagged = pc.gold_negatives >= min_gold_negatives && pc.coincident == pc.gold_negatives;
    if (pc.flagged) {
      report.flagged = true;
      if (!pc.perfect_on_positives) all_flagged_perfect = false;
    }
    report.pairs.push_back(pc);
  }

  if (report.flagged && all_flagged_perfect) {
    report.perfect_predictor_caveat = true;
    report.caveat =
        "every flagged pair is also predicted perfectly on its gold-positive samples; "
        "a genuinely perfect predictor is indistinguishable from leakage by this "
        "signature alone";
  }
  return report;
}

}  // namespace relex
