#include "relex/classifiers.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "relex/io.hpp"

namespace relex {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) {
  throw std::runtime_error("classifiers: " + msg);
}

// Majority label of the training data; ties break to the lexicographically
// smallest label so retraining is reproducible without a seed.
class FrequencyPriorClassifier : public Classifier {
 public:
  FrequencyPriorClassifier(ClassifierRole role, LabelSet labels, std::string modal_label)
      : Classifier(role, ClassifierKind::FrequencyPrior, std::move(labels)),
        modal_label_(std::move(modal_label)) {
    if (!label_set().contains(modal_label_))
      fail("frequency prior label '" + modal_label_ + "' is outside the label set");
  }

  std::string predict(const Sample&) const override { return modal_label_; }

  const std::string& modal_label() const { return modal_label_; }

 private:
  std::string modal_label_;
};

struct Neighbor {
  std::string id;
  std::vector<std::string> tokens;
  std::string label;
};

std::map<std::string, int> token_counts(const std::vector<std::string>& tokens) {
  std::map<std::string, int> counts;
  for (const std::string& t : tokens) ++counts[t];
  return counts;
}

// Bag-of-words 1-NN. The overlap score is the multiset intersection size of
// the token bags; ties break to the lowest training-sample id.
class NearestNeighborBowClassifier : public Classifier {
 public:
  NearestNeighborBowClassifier(ClassifierRole role, LabelSet labels,
                               std::vector<Neighbor> neighbors)
      : Classifier(role, ClassifierKind::NearestNeighborBow, std::move(labels)),
        neighbors_(std::move(neighbors)) {
    if (neighbors_.empty()) fail("nearest neighbor classifier has no training samples");
    for (const Neighbor& n : neighbors_)
      if (!label_set().contains(n.label))
        fail("training label '" + n.label + "' (id '" + n.id + "') is outside the label set");
  }

  std::string predict(const Sample& sample) const override {
    const auto query = token_counts(sample.tokens);
    long best_overlap = -1;
    const Neighbor* best = nullptr;
    for (const Neighbor& n : neighbors_) {
      long overlap = 0;
      const auto counts = token_counts(n.tokens);
      for (const auto& [tok, c] : query) {
        auto it = counts.find(tok);
        if (it != counts.end()) overlap += std::min(c, it->second);
      }
      if (overlap > best_overlap || (overlap == best_overlap && best != nullptr && n.id < best->id)) {
        best_overlap = overlap;
        best = &n;
      }
    }
    return best->label;
  }

  const std::vector<Neighbor>& neighbors() const { return neighbors_; }

 private:
  std::vector<Neighbor> neighbors_;
};

class ScriptedOracleClassifier : public Classifier {
 public:
  ScriptedOracleClassifier(ClassifierRole role, LabelSet labels, OracleLedger ledger)
      : Classifier(role, ClassifierKind::ScriptedOracle, std::move(labels)),
        ledger_(std::move(ledger)) {
    for (const auto& [id, label] : ledger_.entries)
      if (!label_set().contains(label))
        fail("oracle ledger maps id '" + id + "' to '" + label + "', outside the label set");
  }

  std::string predict(const Sample& sample) const override {
    auto it = ledger_.entries.find(sample.id);
    if (it == ledger_.entries.end())
      fail("scripted oracle has no entry for sample '" + sample.id +
           "'; ledgers must cover the evaluation set");
    return it->second;
  }

  const OracleLedger& ledger() const { return ledger_; }

 private:
  OracleLedger ledger_;
};

void check_role_labels(ClassifierRole role, const LabelSet& labels) {
  if (labels.labels.empty()) fail("label set is empty");
  if (role == ClassifierRole::Binary) {
    if (labels != LabelSet::binary())
      fail("binary classifiers use exactly {MEANINGFUL, NO_RELATION}");
  } else {
    for (const std::string& l : labels.labels)
      if (!is_meaningful(l)) fail("semantic label sets cannot contain no_relation");
  }
}

std::string training_label(ClassifierRole role, const Sample& s) {
  if (role == ClassifierRole::Binary) return binary_gold_label(s);
  if (!s.has_gold()) fail("training sample '" + s.id + "' has no gold label");
  if (!s.gold_is_meaningful())
    fail("semantic training data contains a no_relation sample ('" + s.id +
         "'); it must be cleared before training");
  return *s.gold_relation;
}

}  // namespace

const char* to_string(ClassifierRole role) {
  return role == ClassifierRole::Binary ? "binary" : "semantic";
}

ClassifierRole classifier_role_from_string(const std::string& s) {
  if (s == "binary") return ClassifierRole::Binary;
  if (s == "semantic") return ClassifierRole::Semantic;
  fail("unknown classifier role '" + s + "'");
}

const char* to_string(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::FrequencyPrior: return "frequency_prior";
    case ClassifierKind::NearestNeighborBow: return "nearest_neighbor_bow";
    case ClassifierKind::ScriptedOracle: return "scripted_oracle";
  }
  return "?";
}

ClassifierKind classifier_kind_from_string(const std::string& s) {
  if (s == "frequency_prior") return ClassifierKind::FrequencyPrior;
  if (s == "nearest_neighbor_bow") return ClassifierKind::NearestNeighborBow;
  if (s == "scripted_oracle") return ClassifierKind::ScriptedOracle;
  fail("unknown classifier kind '" + s + "'");
}

LabelSet LabelSet::binary() {
  return LabelSet{{std::string(kBinaryMeaningful), std::string(kBinaryNoRelation)}};
}

LabelSet LabelSet::semantic(std::vector<std::string> labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  if (labels.empty()) fail("semantic label set is empty");
  for (const std::string& l : labels)
    if (!is_meaningful(l)) fail("semantic label sets cannot contain no_relation");
  return LabelSet{std::move(labels)};
}

bool LabelSet::contains(std::string_view label) const {
  return std::find(labels.begin(), labels.end(), label) != labels.end();
}

OracleLedger OracleLedger::read(const std::string& path) {
  OracleLedger ledger;
  io::for_each_line(path, [&](std::size_t line_no, const std::string& line) {
    const std::string where = "ledger '" + path + "' record " + std::to_string(line_no);
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      fail(where + ": invalid JSON: " + e.what());
    }
    if (!rec.is_object() || !rec.contains("id") || !rec.contains("label"))
      fail(where + ": expected {id, label}");
    const std::string id = rec["id"].get<std::string>();
    if (!ledger.entries.emplace(id, rec["label"].get<std::string>()).second)
      fail(where + ": duplicate id '" + id + "'");
  });
  return ledger;
}

void OracleLedger::write(const std::string& path) const {
  std::string buf;
  for (const auto& [id, label] : entries) {
    ordered_json rec;
    rec["id"] = id;
    rec["label"] = label;
    buf += rec.dump();
    buf += '\n';
  }
  io::atomic_write(path, buf);
}

std::string binary_gold_label(const Sample& sample) {
  if (!sample.has_gold())
    fail("sample '" + sample.id + "' has no gold label to map onto the binary space");
  return std::string(sample.gold_is_meaningful() ? kBinaryMeaningful : kBinaryNoRelation);
}

ClassifierPtr train_classifier(const ClassifierSpec& spec, ClassifierRole role,
                               const std::vector<Sample>& samples, const LabelSet& labels) {
  check_role_labels(role, labels);

  switch (spec.kind) {
    case ClassifierKind::ScriptedOracle:
      return std::make_shared<ScriptedOracleClassifier>(role, labels, spec.ledger);

    case ClassifierKind::FrequencyPrior: {
      if (samples.empty()) fail("frequency prior needs a non-empty training set");
      std::map<std::string, std::size_t> histogram;
      for (const Sample& s : samples) ++histogram[training_label(role, s)];
      const auto modal = std::max_element(
          histogram.begin(), histogram.end(),
          [](const auto& a, const auto& b) { return a.second < b.second; });
      // max_element keeps the first of equal counts; map order makes that the
      // lexicographically smallest label.
      return std::make_shared<FrequencyPriorClassifier>(role, labels, modal->first);
    }

    case ClassifierKind::NearestNeighborBow: {
      if (samples.empty()) fail("nearest neighbor needs a non-empty training set");
      std::vector<Neighbor> neighbors;
      neighbors.reserve(samples.size());
      for (const Sample& s : samples)
        neighbors.push_back(Neighbor{s.id, s.tokens, training_label(role, s)});
      return std::make_shared<NearestNeighborBowClassifier>(role, labels, std::move(neighbors));
    }
  }
  fail("unreachable classifier kind");
}

void save_classifier(const Classifier& classifier, const std::string& path) {
  ordered_json header;
  header["format"] = "relex-classifier";
  header["kind"] = to_string(classifier.kind());
  header["role"] = to_string(classifier.role());
  header["labels"] = classifier.label_set().labels;
  std::string buf = header.dump();
  buf += '\n';

  switch (classifier.kind()) {
    case ClassifierKind::FrequencyPrior: {
      const auto& c = static_cast<const FrequencyPriorClassifier&>(classifier);
      ordered_json rec;
      rec["modal_label"] = c.modal_label();
      buf += rec.dump();
      buf += '\n';
      break;
    }
    case ClassifierKind::NearestNeighborBow: {
      const auto& c = static_cast<const NearestNeighborBowClassifier&>(classifier);
      for (const Neighbor& n : c.neighbors()) {
        ordered_json rec;
        rec["id"] = n.id;
        rec["token"] = n.tokens;
        rec["label"] = n.label;
        buf += rec.dump();
        buf += '\n';
      }
      break;
    }
    case ClassifierKind::ScriptedOracle: {
      const auto& c = static_cast<const ScriptedOracleClassifier&>(classifier);
      for (const auto& [id, label] : c.ledger().entries) {
        ordered_json rec;
        rec["id"] = id;
        rec["label"] = label;
        buf += rec.dump();
        buf += '\n';
      }
      break;
    }
  }
  io::atomic_write(path, buf);
}

ClassifierPtr load_classifier(const std::string& path) {
  bool have_header = false;
  ClassifierKind kind = ClassifierKind::FrequencyPrior;
  ClassifierRole role = ClassifierRole::Binary;
  LabelSet labels;
  std::string modal_label;
  std::vector<Neighbor> neighbors;
  OracleLedger ledger;

  io::for_each_line(path, [&](std::size_t line_no, const std::string& line) {
    const std::string where = "model '" + path + "' record " + std::to_string(line_no);
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      fail(where + ": invalid JSON: " + e.what());
    }
    if (!have_header) {
      if (rec.value("format", "") != "relex-classifier")
        fail(where + ": not a relex classifier file");
      kind = classifier_kind_from_string(rec.at("kind").get<std::string>());
      role = classifier_role_from_string(rec.at("role").get<std::string>());
      labels.labels = rec.at("labels").get<std::vector<std::string>>();
      std::sort(labels.labels.begin(), labels.labels.end());
      have_header = true;
      return;
    }
    switch (kind) {
      case ClassifierKind::FrequencyPrior:
        modal_label = rec.at("modal_label").get<std::string>();
        break;
      case ClassifierKind::NearestNeighborBow:
        neighbors.push_back(Neighbor{rec.at("id").get<std::string>(),
                                     rec.at("token").get<std::vector<std::string>>(),
                                     rec.at("label").get<std::string>()});
        break;
      case ClassifierKind::ScriptedOracle:
        ledger.entries.emplace(rec.at("id").get<std::string>(),
                               rec.at("label").get<std::string>());
        break;
    }
  });
  if (!have_header) fail("model '" + path + "' is empty");

  switch (kind) {
    case ClassifierKind::FrequencyPrior:
      return std::make_shared<FrequencyPriorClassifier>(role, labels, modal_label);
    case ClassifierKind::NearestNeighborBow:
      return std::make_shared<NearestNeighborBowClassifier>(role, labels, std::move(neighbors));
    case ClassifierKind::ScriptedOracle:
      return std::make_shared<ScriptedOracleClassifier>(role, labels, std::move(ledger));
  }
  fail("unreachable classifier kind");
}

}  // namespace relex
