#include "relex/catalog.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "relex/io.hpp"

namespace relex {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) {
  throw std::runtime_error("catalog: " + msg);
}

SubsetKind kind_for(std::size_t distinct_meaningful) {
  if (distinct_meaningful == 0) return SubsetKind::Degenerate;
  if (distinct_meaningful == 1) return SubsetKind::Simple;
  return SubsetKind::Complicated;
}

}  // namespace

const char* to_string(SubsetKind kind) {
  switch (kind) {
    case SubsetKind::Simple: return "simple";
    case SubsetKind::Complicated: return "complicated";
    case SubsetKind::Degenerate: return "degenerate";
  }
  return "?";
}

SubsetKind subset_kind_from_string(const std::string& s) {
  if (s == "simple") return SubsetKind::Simple;
  if (s == "complicated") return SubsetKind::Complicated;
  if (s == "degenerate") return SubsetKind::Degenerate;
  fail("unknown subset kind '" + s + "'");
}

const std::string& SubsetDescriptor::simple_relation() const {
  if (kind != SubsetKind::Simple || labels.size() != 1)
    fail("simple_relation() called on a non-Simple descriptor for " + to_string(pair));
  return labels.front();
}

const SubsetDescriptor* SubsetCatalog::find(const TypePair& pair) const {
  auto it = descriptors.find(pair);
  return it == descriptors.end() ? nullptr : &it->second;
}

std::vector<TypePair> SubsetCatalog::complicated_pairs() const {
  std::vector<TypePair> out;
  for (const auto& [pair, desc] : descriptors)
    if (desc.kind == SubsetKind::Complicated) out.push_back(pair);
  return out;
}

CatalogSummary SubsetCatalog::summary() const {
  CatalogSummary s;
  for (const auto& [pair, desc] : descriptors) {
    switch (desc.kind) {
      case SubsetKind::Simple: ++s.simple; break;
      case SubsetKind::Complicated: ++s.complicated; break;
      case SubsetKind::Degenerate: ++s.degenerate; break;
    }
  }
  return s;
}

std::map<TypePair, std::vector<std::size_t>> group_by_pair(const Dataset& data) {
  std::map<TypePair, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < data.samples.size(); ++i)
    groups[type_pair_of(data.samples[i])].push_back(i);
  return groups;
}

SubsetCatalog build_catalog(const Dataset& data, const std::string& source_split) {
  if (data.samples.empty()) fail("cannot build a catalog from an empty dataset");
  SubsetCatalog catalog;
  catalog.source_split = source_split;
  for (const auto& [pair, indices] : group_by_pair(data)) {
    std::set<std::string> meaningful;
    std::size_t meaningful_count = 0;
    for (std::size_t i : indices) {
      const Sample& s = data.samples[i];
      if (!s.has_gold())
        fail("sample '" + s.id + "' has no gold label; the catalog source split must be fully labeled");
      if (s.gold_is_meaningful()) {
        meaningful.insert(*s.gold_relation);
        ++meaningful_count;
      }
    }
    SubsetDescriptor desc;
    desc.pair = pair;
    desc.kind = kind_for(meaningful.size());
    desc.labels.assign(meaningful.begin(), meaningful.end());
    desc.train_count = indices.size();
    desc.meaningful_train_count = meaningful_count;
    catalog.descriptors.emplace(pair, std::move(desc));
  }
  return catalog;
}

const char* to_string(RouteKind kind) {
  switch (kind) {
    case RouteKind::Simple: return "simple";
    case RouteKind::Complicated: return "complicated";
    case RouteKind::Degenerate: return "degenerate";
    case RouteKind::UnseenPair: return "unseen_pair";
  }
  return "?";
}

RouteDecision route(const SubsetCatalog& catalog, const Sample& sample) {
  RouteDecision decision;
  decision.pair = type_pair_of(sample);
  const SubsetDescriptor* desc = catalog.find(decision.pair);
  if (desc == nullptr) {
    decision.kind = RouteKind::UnseenPair;
    return decision;
  }
  switch (desc->kind) {
    case SubsetKind::Simple:
      decision.kind = RouteKind::Simple;
      decision.simple_relation = desc->simple_relation();
      break;
    case SubsetKind::Complicated:
      decision.kind = RouteKind::Complicated;
      break;
    case SubsetKind::Degenerate:
      decision.kind = RouteKind::Degenerate;
      break;
  }
  return decision;
}

const char* to_string(CatalogDiffEntry::Status status) {
  switch (status) {
    case CatalogDiffEntry::Status::OnlyInA: return "only_in_a";
    case CatalogDiffEntry::Status::OnlyInB: return "only_in_b";
    case CatalogDiffEntry::Status::KindChanged: return "kind_changed";
    case CatalogDiffEntry::Status::LabelsChanged: return "labels_changed";
  }
  return "?";
}

CatalogDiff catalog_diff(const SubsetCatalog& a, const SubsetCatalog& b) {
  CatalogDiff diff;
  diff.source_a = a.source_split;
  diff.source_b = b.source_split;

  std::set<TypePair> pairs;
  for (const auto& [pair, desc] : a.descriptors) pairs.insert(pair);
  for (const auto& [pair, desc] : b.descriptors) pairs.insert(pair);

  for (const TypePair& pair : pairs) {
    const SubsetDescriptor* da = a.find(pair);
    const SubsetDescriptor* db = b.find(pair);
    CatalogDiffEntry entry;
    entry.pair = pair;
    if (da != nullptr) {
      entry.kind_a = da->kind;
      entry.labels_a = da->labels;
    }
    if (db != nullptr) {
      entry.kind_b = db->kind;
      entry.labels_b = db->labels;
    }
    if (da == nullptr) entry.status = CatalogDiffEntry::Status::OnlyInB;
    else if (db == nullptr) entry.status = CatalogDiffEntry::Status::OnlyInA;
    else if (da->kind != db->kind) entry.status = CatalogDiffEntry::Status::KindChanged;
    else if (da->labels != db->labels) entry.status = CatalogDiffEntry::Status::LabelsChanged;
    else continue;  // counts alone are not a divergence
    diff.entries.push_back(std::move(entry));
  }
  return diff;
}

void write_catalog(const SubsetCatalog& catalog, const std::string& path) {
  std::string buf;
  for (const auto& [pair, desc] : catalog.descriptors) {
    ordered_json rec;
    rec["pair"] = {pair.subj_type, pair.obj_type};
    rec["kind"] = to_string(desc.kind);
    rec["labels"] = desc.labels;
    rec["train_count"] = desc.train_count;
    rec["meaningful_train_count"] = desc.meaningful_train_count;
    rec["source_split"] = catalog.source_split;
    buf += rec.dump();
    buf += '\n';
  }
  io::atomic_write(path, buf);
}

SubsetCatalog read_catalog(const std::string& path) {
  SubsetCatalog catalog;
  io::for_each_line(path, [&](std::size_t line_no, const std::string& line) {
    const std::string where = "file '" + path + "' record " + std::to_string(line_no);
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      fail(where + ": invalid JSON: " + e.what());
    }
    SubsetDescriptor desc;
    try {
      desc.pair = TypePair{rec.at("pair").at(0).get<std::string>(),
                           rec.at("pair").at(1).get<std::string>()};
      desc.kind = subset_kind_from_string(rec.at("kind").get<std::string>());
      desc.labels = rec.at("labels").get<std::vector<std::string>>();
      desc.train_count = rec.at("train_count").get<std::size_t>();
      desc.meaningful_train_count = rec.at("meaningful_train_count").get<std::size_t>();
      const std::string source = rec.at("source_split").get<std::string>();
      if (catalog.source_split.empty()) catalog.source_split = source;
      else if (catalog.source_split != source) fail(where + ": inconsistent source_split");
    } catch (const json::exception& e) {
      fail(where + ": " + e.what());
    }
    std::sort(desc.labels.begin(), desc.labels.end());
    desc.labels.erase(std::unique(desc.labels.begin(), desc.labels.end()),
                      desc.labels.end());
    for (const std::string& l : desc.labels)
      if (!is_meaningful(l)) fail(where + ": label sets never contain no_relation");
    const SubsetKind expected = kind_for(desc.labels.size());
    if (desc.kind != expected)
      fail(where + ": kind '" + to_string(desc.kind) + "' does not match " +
           std::to_string(desc.labels.size()) + " label(s)");
    if (!catalog.descriptors.emplace(desc.pair, desc).second)
      fail(where + ": duplicate pair " + to_string(desc.pair));
  });
  if (catalog.descriptors.empty()) fail("file '" + path + "' holds no catalog records");
  return catalog;
}

}  // namespace relex
