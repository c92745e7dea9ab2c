#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "relex/dataset.hpp"

namespace relex {

// Binary-role output labels. The binary classifier decides whether a triplet
// carries any meaningful relation at all; it never names one.
inline constexpr std::string_view kBinaryMeaningful = "MEANINGFUL";
inline constexpr std::string_view kBinaryNoRelation = "NO_RELATION";

enum class ClassifierRole { Binary, Semantic };

const char* to_string(ClassifierRole role);
ClassifierRole classifier_role_from_string(const std::string& s);

enum class ClassifierKind { FrequencyPrior, NearestNeighborBow, ScriptedOracle };

const char* to_string(ClassifierKind kind);
ClassifierKind classifier_kind_from_string(const std::string& s);

// Closed world of outputs for one classifier. Semantic label sets can never
// contain no_relation; the binary set is exactly {MEANINGFUL, NO_RELATION}.
struct LabelSet {
  std::vector<std::string> labels;  // sorted, distinct, non-empty

  static LabelSet binary();
  static LabelSet semantic(std::vector<std::string> labels);

  bool contains(std::string_view label) const;
  bool operator==(const LabelSet&) const = default;
};

// Scripted predictions keyed by sample id. Lets a harness realize any
// confusion pattern without training anything.
struct OracleLedger {
  std::map<std::string, std::string> entries;

  static OracleLedger read(const std::string& path);
  void write(const std::string& path) const;
};

struct ClassifierSpec {
  ClassifierKind kind = ClassifierKind::FrequencyPrior;
  OracleLedger ledger;  // scripted_oracle only
  unsigned seed = 0;    // recorded for reproducibility; baselines are deterministic
};

// A trained classifier is immutable and safe to share across threads. Its
// predictions always come from its label set.
class Classifier {
 public:
  virtual ~Classifier() = default;

  virtual std::string predict(const Sample& sample) const = 0;

  const LabelSet& label_set() const { return labels_; }
  ClassifierRole role() const { return role_; }
  ClassifierKind kind() const { return kind_; }

 protected:
  Classifier(ClassifierRole role, ClassifierKind kind, LabelSet labels)
      : role_(role), kind_(kind), labels_(std::move(labels)) {}

 private:
  ClassifierRole role_;
  ClassifierKind kind_;
  LabelSet labels_;
};

using ClassifierPtr = std::shared_ptr<Classifier>;

// Maps a gold label onto the binary output space. Errors on unlabeled samples.
std::string binary_gold_label(const Sample& sample);

// Trains (or scripts) a classifier for the given role.
//
// Contract checks: the binary role requires the exact binary label set;
// semantic training data must already be cleared of no_relation samples and
// every gold label must come from `labels`; trainable kinds need a non-empty
// training set; scripted ledgers must only map to labels in `labels`.
ClassifierPtr train_classifier(const ClassifierSpec& spec, ClassifierRole role,
                               const std::vector<Sample>& samples,
                               const LabelSet& labels);

// Kind tag plus parameter block, line-delimited.
void save_classifier(const Classifier& classifier, const std::string& path);
ClassifierPtr load_classifier(const std::string& path);

}  // namespace relex
