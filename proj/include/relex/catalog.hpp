#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relex/dataset.hpp"

namespace relex {

// Simple: exactly one distinct meaningful relation observed for the pair.
// Complicated: two or more. Degenerate: the pair was seen only with
// no_relation.
enum class SubsetKind { Simple, Complicated, Degenerate };

const char* to_string(SubsetKind kind);
SubsetKind subset_kind_from_string(const std::string& s);

struct SubsetDescriptor {
  TypePair pair;
  SubsetKind kind = SubsetKind::Degenerate;
  // Sorted distinct meaningful labels observed in the source split. Never
  // contains no_relation. Size 1 for Simple, >= 2 for Complicated, empty for
  // Degenerate.
  std::vector<std::string> labels;
  std::size_t train_count = 0;             // samples observed for the pair
  std::size_t meaningful_train_count = 0;  // of those, gold != no_relation

  const std::string& simple_relation() const;  // kind must be Simple
};

struct CatalogSummary {
  std::size_t simple = 0;
  std::size_t complicated = 0;
  std::size_t degenerate = 0;
};

struct SubsetCatalog {
  std::string source_split;  // recorded for audit: train or test
  std::map<TypePair, SubsetDescriptor> descriptors;

  const SubsetDescriptor* find(const TypePair& pair) const;
  std::vector<TypePair> complicated_pairs() const;
  CatalogSummary summary() const;
};

// Indices into data.samples, grouped by type pair. The groups partition the
// dataset: every index appears in exactly one group.
std::map<TypePair, std::vector<std::size_t>> group_by_pair(const Dataset& data);

// Decomposes the dataset into type-pair subsets and classifies each one.
// Requires a non-empty, fully labeled dataset.
SubsetCatalog build_catalog(const Dataset& data, const std::string& source_split);

enum class RouteKind { Simple, Complicated, Degenerate, UnseenPair };

const char* to_string(RouteKind kind);

struct RouteDecision {
  RouteKind kind = RouteKind::UnseenPair;
  TypePair pair;                // always type_pair_of(sample)
  std::string simple_relation;  // set iff kind == Simple
};

RouteDecision route(const SubsetCatalog& catalog, const Sample& sample);

struct CatalogDiffEntry {
  enum class Status { OnlyInA, OnlyInB, KindChanged, LabelsChanged };
  TypePair pair;
  Status status = Status::OnlyInA;
  std::optional<SubsetKind> kind_a;
  std::optional<SubsetKind> kind_b;
  std::vector<std::string> labels_a;
  std::vector<std::string> labels_b;
};

const char* to_string(CatalogDiffEntry::Status status);

// Pairs whose kind or label set differs between the two catalogs. Counts are
// deliberately not compared. Empty iff the catalogs agree on every pair.
struct CatalogDiff {
  std::string source_a;
  std::string source_b;
  std::vector<CatalogDiffEntry> entries;  // sorted by pair

  bool empty() const { return entries.empty(); }
};

CatalogDiff catalog_diff(const SubsetCatalog& a, const SubsetCatalog& b);

// Line-delimited records {pair, kind, labels, train_count,
// meaningful_train_count, source_split}.
void write_catalog(const SubsetCatalog& catalog, const std::string& path);
SubsetCatalog read_catalog(const std::string& path);

}  // namespace relex
