#include "relex/pipeline.hpp"

#include <set>
#include <stdexcept>

#include <json.hpp>

#include "relex/io.hpp"

namespace relex {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) {
  throw std::runtime_error("pipeline: " + msg);
}

std::string no_relation() { return std::string(kNoRelation); }

// Stable file name for a pair; an index maps names back to pairs, so
// sanitization collisions only need uniqueness, not reversibility.
std::string pair_filename(const TypePair& pair, std::set<std::string>& used) {
  std::string base = io::sanitize_component(pair.subj_type) + "__" +
                     io::sanitize_component(pair.obj_type);
  std::string name = base + ".jsonl";
  for (int i = 2; used.contains(name); ++i)
    name = base + "-" + std::to_string(i) + ".jsonl";
  used.insert(name);
  return name;
}

}  // namespace

void write_pair_index(const std::string& path,
                      const std::map<std::string, TypePair>& files) {
  ordered_json entries = ordered_json::array();
  for (const auto& [file, pair] : files) {
    ordered_json e;
    e["file"] = file;
    e["subj_type"] = pair.subj_type;
    e["obj_type"] = pair.obj_type;
    entries.push_back(e);
  }
  ordered_json doc;
  doc["entries"] = entries;
  io::atomic_write(path, doc.dump(2) + "\n");
}

std::map<std::string, TypePair> read_pair_index(const std::string& path) {
  json doc;
  try {
    doc = json::parse(io::read_file(path));
  } catch (const json::exception& e) {
    fail("index '" + path + "': invalid JSON: " + e.what());
  }
  std::map<std::string, TypePair> files;
  for (const json& e : doc.at("entries")) {
    files.emplace(e.at("file").get<std::string>(),
                  TypePair{e.at("subj_type").get<std::string>(),
                           e.at("obj_type").get<std::string>()});
  }
  return files;
}

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::BinaryStep: return "binary_step";
    case Provenance::SimpleStep: return "simple_step";
    case Provenance::Degenerate: return "degenerate";
    case Provenance::UnseenPair: return "unseen_pair";
    case Provenance::SemanticStep: return "semantic_step";
    case Provenance::LeakyFallback: return "leaky_fallback";
  }
  return "?";
}

Provenance provenance_from_string(const std::string& s) {
  if (s == "binary_step") return Provenance::BinaryStep;
  if (s == "simple_step") return Provenance::SimpleStep;
  if (s == "degenerate") return Provenance::Degenerate;
  if (s == "unseen_pair") return Provenance::UnseenPair;
  if (s == "semantic_step") return Provenance::SemanticStep;
  if (s == "leaky_fallback") return Provenance::LeakyFallback;
  fail("unknown provenance '" + s + "'");
}

const char* to_string(EvalMode mode) {
  return mode == EvalMode::Leaky ? "leaky" : "corrected";
}

EvalMode eval_mode_from_string(const std::string& s) {
  if (s == "leaky") return EvalMode::Leaky;
  if (s == "corrected") return EvalMode::Corrected;
  fail("unknown mode '" + s + "'");
}

void PartialResultStore::insert(const TypePair& pair, const std::string& id,
                                const std::string& label) {
  if (!is_meaningful(label))
    fail("partial result stores never hold no_relation (sample '" + id + "')");
  if (!by_pair_[pair].emplace(id, label).second)
    fail("duplicate partial result for sample '" + id + "'");
}

const std::string* PartialResultStore::lookup(const TypePair& pair,
                                              const std::string& id) const {
  auto p = by_pair_.find(pair);
  if (p == by_pair_.end()) return nullptr;
  auto e = p->second.find(id);
  return e == p->second.end() ? nullptr : &e->second;
}

std::size_t PartialResultStore::size() const {
  std::size_t n = 0;
  for (const auto& [pair, entries] : by_pair_) n += entries.size();
  return n;
}

std::vector<TypePair> PartialResultStore::pairs() const {
  std::vector<TypePair> out;
  for (const auto& [pair, entries] : by_pair_) out.push_back(pair);
  return out;
}

const std::map<std::string, std::string>& PartialResultStore::entries(
    const TypePair& pair) const {
  auto it = by_pair_.find(pair);
  if (it == by_pair_.end()) fail("no partial results for pair " + to_string(pair));
  return it->second;
}

void PartialResultStore::write(const std::string& dir) const {
  io::ensure_dir(dir);
  std::set<std::string> used;
  std::map<std::string, TypePair> files;
  for (const auto& [pair, entries] : by_pair_) {
    const std::string name = pair_filename(pair, used);
    files.emplace(name, pair);
    std::string buf;
    for (const auto& [id, label] : entries) {
      ordered_json rec;
      rec["id"] = id;
      rec["label"] = label;
      buf += rec.dump();
      buf += '\n';
    }
    io::atomic_write(dir + "/" + name, buf);
  }
  write_pair_index(dir + "/index.json", files);
}

PartialResultStore PartialResultStore::read(const std::string& dir) {
  PartialResultStore store;
  for (const auto& [file, pair] : read_pair_index(dir + "/index.json")) {
    store.by_pair_[pair];  // a pair may legitimately have zero entries
    const OracleLedger ledger = OracleLedger::read(dir + "/" + file);
    for (const auto& [id, label] : ledger.entries) store.insert(pair, id, label);
  }
  return store;
}

void validate_pipeline(const TrainedPipeline& pipeline) {
  if (!pipeline.binary) fail("missing binary classifier");
  if (pipeline.binary->label_set() != LabelSet::binary())
    fail("binary classifier must use the binary label set");

  std::set<TypePair> expected;
  for (const TypePair& pair : pipeline.catalog.complicated_pairs()) expected.insert(pair);
  std::set<TypePair> actual;
  for (const auto& [pair, c] : pipeline.semantics) actual.insert(pair);
  if (expected != actual)
    fail("semantic classifiers must exist for exactly the catalog's complicated pairs");

  for (const auto& [pair, classifier] : pipeline.semantics) {
    const SubsetDescriptor* desc = pipeline.catalog.find(pair);
    if (!classifier) fail("missing semantic classifier for " + to_string(pair));
    if (classifier->label_set() != LabelSet::semantic(desc->labels))
      fail("semantic classifier for " + to_string(pair) +
           " does not match the descriptor's label set");
  }
}

TrainedPipeline train_pipeline(const Dataset& train, SubsetCatalog catalog,
                               const PipelineSpec& spec) {
  TrainedPipeline pipeline;

  {
    ClassifierSpec binary_spec;
    binary_spec.kind = spec.binary_kind;
    binary_spec.ledger = spec.binary_ledger;
    binary_spec.seed = spec.seed;
    pipeline.binary = train_classifier(binary_spec, ClassifierRole::Binary,
                                       train.samples, LabelSet::binary());
  }

  const auto groups = group_by_pair(train);
  for (const TypePair& pair : catalog.complicated_pairs()) {
    const SubsetDescriptor* desc = catalog.find(pair);
    const LabelSet labels = LabelSet::semantic(desc->labels);

    ClassifierSpec semantic_spec;
    semantic_spec.kind = spec.semantic_kind;
    semantic_spec.seed = spec.seed;
    if (spec.semantic_kind == ClassifierKind::ScriptedOracle) {
      auto it = spec.semantic_ledgers.find(pair);
      if (it == spec.semantic_ledgers.end())
        fail("no oracle ledger supplied for complicated pair " + to_string(pair));
      semantic_spec.ledger = it->second;
    }

    // The per-pair training data, cleared of no_relation. When the catalog
    // came from another split, labels unseen there are dropped as well so the
    // classifier's outputs stay inside the descriptor's set.
    std::vector<Sample> subset;
    if (auto g = groups.find(pair); g != groups.end()) {
      for (std::size_t i : g->second) {
        const Sample& s = train.samples[i];
        if (s.gold_is_meaningful() && labels.contains(*s.gold_relation))
          subset.push_back(s);
      }
    }
    if (subset.empty() && spec.semantic_kind != ClassifierKind::ScriptedOracle)
      fail("no usable training samples for complicated pair " + to_string(pair));

    pipeline.semantics.emplace(
        pair, train_classifier(semantic_spec, ClassifierRole::Semantic, subset, labels));
  }

  pipeline.catalog = std::move(catalog);
  validate_pipeline(pipeline);
  return pipeline;
}

void save_pipeline(const TrainedPipeline& pipeline, const std::string& dir) {
  io::ensure_dir(dir);
  write_catalog(pipeline.catalog, dir + "/catalog.jsonl");
  save_classifier(*pipeline.binary, dir + "/binary.model.jsonl");

  const std::string sem_dir = dir + "/semantics";
  io::ensure_dir(sem_dir);
  std::set<std::string> used;
  std::map<std::string, TypePair> files;
  for (const auto& [pair, classifier] : pipeline.semantics) {
    const std::string name = pair_filename(pair, used);
    files.emplace(name, pair);
    save_classifier(*classifier, sem_dir + "/" + name);
  }
  write_pair_index(sem_dir + "/index.json", files);

  ordered_json manifest;
  manifest["format"] = "relex-pipeline";
  manifest["catalog_source"] = pipeline.catalog.source_split;
  manifest["binary_kind"] = to_string(pipeline.binary->kind());
  io::atomic_write(dir + "/pipeline.json", manifest.dump(2) + "\n");
}

TrainedPipeline load_pipeline(const std::string& dir) {
  TrainedPipeline pipeline;
  pipeline.catalog = read_catalog(dir + "/catalog.jsonl");
  pipeline.binary = load_classifier(dir + "/binary.model.jsonl");
  for (const auto& [file, pair] : read_pair_index(dir + "/semantics/index.json"))
    pipeline.semantics.emplace(pair, load_classifier(dir + "/semantics/" + file));
  validate_pipeline(pipeline);
  return pipeline;
}

PartialResultStore precompute_partials(const TrainedPipeline& pipeline,
                                       const Dataset& test) {
  PartialResultStore store;
  for (const Sample& s : test.samples) {
    const RouteDecision decision = route(pipeline.catalog, s);
    if (decision.kind != RouteKind::Complicated) continue;
    if (!s.has_gold())
      fail("pre-evaluation requires gold labels to filter no_relation; sample '" +
           s.id + "' is unlabeled");
    if (!s.gold_is_meaningful()) continue;  // the filtering that opens the loophole
    store.insert(decision.pair, s.id, pipeline.semantics.at(decision.pair)->predict(s));
  }
  return store;
}

namespace {

// Steps 1 and 2 are shared by every mode; step 3 differs.
template <typename Step3>
Prediction predict_with(const TrainedPipeline& pipeline, const Sample& sample,
                        Step3&& step3) {
  if (pipeline.binary->predict(sample) == kBinaryNoRelation)
    return Prediction{sample.id, no_relation(), Provenance::BinaryStep};

  const RouteDecision decision = route(pipeline.catalog, sample);
  switch (decision.kind) {
    case RouteKind::Simple:
      return Prediction{sample.id, decision.simple_relation, Provenance::SimpleStep};
    case RouteKind::Degenerate:
      return Prediction{sample.id, no_relation(), Provenance::Degenerate};
    case RouteKind::UnseenPair:
      return Prediction{sample.id, no_relation(), Provenance::UnseenPair};
    case RouteKind::Complicated:
      return step3(decision.pair);
  }
  fail("unreachable route kind");
}

}  // namespace

Prediction predict_leaky(const TrainedPipeline& pipeline, const PartialResultStore& store,
                         const Sample& sample) {
  return predict_with(pipeline, sample, [&](const TypePair& pair) {
    if (const std::string* hit = store.lookup(pair, sample.id))
      return Prediction{sample.id, *hit, Provenance::SemanticStep};
    return Prediction{sample.id, no_relation(), Provenance::LeakyFallback};
  });
}

Prediction predict_corrected(const TrainedPipeline& pipeline, const Sample& sample) {
  return predict_with(pipeline, sample, [&](const TypePair& pair) {
    return Prediction{sample.id, pipeline.semantics.at(pair)->predict(sample),
                      Provenance::SemanticStep};
  });
}

Prediction predict_corrected_substitution(const TrainedPipeline& pipeline,
                                          const PartialResultStore& store,
                                          const Sample& sample) {
  return predict_with(pipeline, sample, [&](const TypePair& pair) {
    if (const std::string* hit = store.lookup(pair, sample.id))
      return Prediction{sample.id, *hit, Provenance::SemanticStep};
    // A miss means the gold answer was no_relation, so every subset label is
    // wrong; pick the first one that differs from gold to stay wrong even on
    // inconsistent stores.
    const SubsetDescriptor* desc = pipeline.catalog.find(pair);
    for (const std::string& label : desc->labels)
      if (!sample.has_gold() || label != *sample.gold_relation)
        return Prediction{sample.id, label, Provenance::SemanticStep};
    return Prediction{sample.id, desc->labels.front(), Provenance::SemanticStep};
  });
}

std::vector<Prediction> run_split(const TrainedPipeline& pipeline, const Dataset& data,
                                  EvalMode mode, const PartialResultStore* store) {
  std::vector<Prediction> predictions;
  predictions.reserve(data.samples.size());

  if (mode == EvalMode::Leaky) {
    PartialResultStore own;
    if (store == nullptr) {
      own = precompute_partials(pipeline, data);
      store = &own;
    }
    for (const Sample& s : data.samples)
      predictions.push_back(predict_leaky(pipeline, *store, s));
    return predictions;
  }

  for (const Sample& s : data.samples)
    predictions.push_back(predict_corrected(pipeline, s));
  return predictions;
}

}  // namespace relex
