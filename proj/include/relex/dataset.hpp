#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace relex {

// The distinguished negative label: the two mentions are unrelated.
inline constexpr std::string_view kNoRelation = "no_relation";

inline bool is_meaningful(std::string_view label) { return label != kNoRelation; }

// Inclusive token index range of an annotated mention.
struct TokenSpan {
  int start = 0;
  int end = 0;
  bool operator==(const TokenSpan&) const = default;
};

// One annotated sentence: a candidate (sentence, subject, object) triplet with
// entity types and, when labeled, a gold relation. Mentions arrive
// pre-annotated; no tokenization or NER happens here.
struct Sample {
  std::string id;
  std::vector<std::string> tokens;
  TokenSpan subj_span;
  TokenSpan obj_span;
  std::string subj_type;
  std::string obj_type;
  // Absent for prediction-only inputs. Never defaulted to no_relation: the
  // scorer must fail loudly on missing gold, not treat it as negative.
  std::optional<std::string> gold_relation;

  bool has_gold() const { return gold_relation.has_value(); }
  bool gold_is_meaningful() const {
    return gold_relation.has_value() && is_meaningful(*gold_relation);
  }
  bool operator==(const Sample&) const = default;
};

// Ordered (subject type, object type) pair. Relations are directed, so the
// order matters. Type labels are opaque, case-sensitive strings; any schema
// with pre-annotated mention types works, not just the TACRED inventory.
struct TypePair {
  std::string subj_type;
  std::string obj_type;
  auto operator<=>(const TypePair&) const = default;
};

std::string to_string(const TypePair& pair);

struct Dataset {
  std::string split_name;  // train | dev | test
  std::vector<Sample> samples;
  std::set<std::string> label_inventory;  // distinct gold labels present
  std::size_t unlabeled_count = 0;
};

struct ParseOptions {
  // Routing needs only ids and types; consumers that never look at token
  // text can drop it after span validation. Trainable baselines need it.
  bool keep_tokens = true;
};

// Throws std::runtime_error naming the offending field or id. `where` is the
// message context, e.g. "record 12".
void validate_sample(const Sample& sample, const std::string& where);

// Validates every sample, rejects duplicate ids, computes the inventory.
Dataset make_dataset(std::string split_name, std::vector<Sample> samples);

// Line-delimited records with fields: id, token (array of strings),
// subj_start, subj_end, obj_start, obj_end (0-based inclusive token indices),
// subj_type, obj_type, relation. A whole-file JSON array of the same records
// is accepted too. Unknown fields are ignored so annotated corpora with extra
// per-token annotations load as-is. A missing or null `relation` field yields
// an unlabeled sample.
Dataset parse_dataset(const std::string& path, const std::string& split_name,
                      const ParseOptions& options = {});

std::string sample_to_json_line(const Sample& sample);

// Re-serializes the interchange fields, one record per line.
void write_dataset(const Dataset& data, const std::string& path);

TypePair type_pair_of(const Sample& sample);

}  // namespace relex
