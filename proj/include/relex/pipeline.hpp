#pragma once

#include <map>
#include <string>
#include <vector>

#include "relex/catalog.hpp"
#include "relex/classifiers.hpp"

namespace relex {

// Which workflow step produced a prediction. The audit hinges on *why* a
// prediction was made, so every prediction carries this tag.
enum class Provenance {
  BinaryStep,     // step 1: binary classifier said NO_RELATION
  SimpleStep,     // step 2: pair is Simple, its one relation was emitted
  Degenerate,     // pair seen only with no_relation in the catalog source
  UnseenPair,     // pair absent from the catalog
  SemanticStep,   // step 3: semantic answer (store hit or live invocation)
  LeakyFallback,  // step 3 store miss: hard-coded no_relation
};

const char* to_string(Provenance p);
Provenance provenance_from_string(const std::string& s);

// Directory layouts that hold one file per type pair (partial result stores,
// semantic oracle ledgers, semantic models) carry an index.json mapping each
// file name to its pair, so pair names never need to round-trip through
// filesystem-safe encodings.
void write_pair_index(const std::string& path, const std::map<std::string, TypePair>& files);
std::map<std::string, TypePair> read_pair_index(const std::string& path);

struct Prediction {
  std::string sample_id;
  std::string predicted;
  Provenance decided_at = Provenance::BinaryStep;

  bool operator==(const Prediction&) const = default;
};

// Pre-computed step-3 answers over no_relation-filtered test data, keyed by
// pair and sample id. The deliberate absence of gold-negative samples is the
// loophole the leaky mode exploits.
class PartialResultStore {
 public:
  void insert(const TypePair& pair, const std::string& id, const std::string& label);
  const std::string* lookup(const TypePair& pair, const std::string& id) const;

  std::size_t size() const;
  std::vector<TypePair> pairs() const;
  const std::map<std::string, std::string>& entries(const TypePair& pair) const;

  // One {id, label} file per pair plus an index.json naming each file's pair.
  // The per-pair files are plain oracle ledgers, so stores written by other
  // systems can be replayed by supplying the same layout.
  void write(const std::string& dir) const;
  static PartialResultStore read(const std::string& dir);

  bool operator==(const PartialResultStore&) const = default;

 private:
  std::map<TypePair, std::map<std::string, std::string>> by_pair_;
};

struct PipelineSpec {
  ClassifierKind binary_kind = ClassifierKind::FrequencyPrior;
  ClassifierKind semantic_kind = ClassifierKind::FrequencyPrior;
  OracleLedger binary_ledger;                         // scripted binary only
  std::map<TypePair, OracleLedger> semantic_ledgers;  // scripted semantics only
  unsigned seed = 0;
};

// One binary classifier for the whole dataset plus one semantic classifier
// per Complicated pair, tied to the catalog they were built from.
struct TrainedPipeline {
  SubsetCatalog catalog;
  ClassifierPtr binary;
  std::map<TypePair, ClassifierPtr> semantics;
};

// Checks the structural invariants: semantics keyed exactly by the catalog's
// Complicated pairs, each with a label set equal to its descriptor's.
void validate_pipeline(const TrainedPipeline& pipeline);

// Binary is trained once on the whole train split. Each semantic classifier
// is trained on its pair's training samples cleared of no_relation (and of
// labels outside the descriptor's set, which can occur when the catalog was
// built from a different split).
TrainedPipeline train_pipeline(const Dataset& train, SubsetCatalog catalog,
                               const PipelineSpec& spec);

void save_pipeline(const TrainedPipeline& pipeline, const std::string& dir);
TrainedPipeline load_pipeline(const std::string& dir);

// Pre-evaluation: runs each Complicated pair's semantic classifier over that
// pair's test samples whose gold is meaningful. Gold-negative samples are
// filtered out, so they are simply absent from the store.
PartialResultStore precompute_partials(const TrainedPipeline& pipeline,
                                       const Dataset& test);

// Step 1: binary says NO_RELATION -> no_relation. Step 2: Simple pair -> its
// relation; Degenerate/unseen -> no_relation. Step 3: look the sample id up
// in the store; a miss is hard-coded to no_relation.
Prediction predict_leaky(const TrainedPipeline& pipeline,
                         const PartialResultStore& store, const Sample& sample);

// Same through step 2; at step 3 the semantic classifier is always invoked,
// so a meaningful label comes out. no_relation is impossible at step 3.
Prediction predict_corrected(const TrainedPipeline& pipeline, const Sample& sample);

// Bookkeeping-equivalent form of the correction: keeps the store machinery
// but replaces the fallback with a deliberately wrong meaningful label (the
// first subset label differing from gold). Produces the same confusion
// counts as predict_corrected; exists so that equivalence can be tested.
Prediction predict_corrected_substitution(const TrainedPipeline& pipeline,
                                          const PartialResultStore& store,
                                          const Sample& sample);

enum class EvalMode { Leaky, Corrected };

const char* to_string(EvalMode mode);
EvalMode eval_mode_from_string(const std::string& s);

// One prediction per sample, order preserved. Leaky mode first builds the
// store from the same data, emulating the original workflow; pass `store` to
// replay an externally produced one instead.
std::vector<Prediction> run_split(const TrainedPipeline& pipeline, const Dataset& data,
                                  EvalMode mode,
                                  const PartialResultStore* store = nullptr);

}  // namespace relex
