#include "relex/dataset.hpp"

#include <fstream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "relex/io.hpp"

namespace relex {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) {
  throw std::runtime_error("dataset: " + msg);
}

const json& require_field(const json& rec, const char* name, const std::string& where) {
  auto it = rec.find(name);
  if (it == rec.end() || it->is_null())
    fail(where + ": missing field '" + std::string(name) + "'");
  return *it;
}

std::string require_string(const json& rec, const char* name, const std::string& where) {
  const json& v = require_field(rec, name, where);
  if (!v.is_string())
    fail(where + ": field '" + std::string(name) + "' must be a string");
  return v.get<std::string>();
}

int require_int(const json& rec, const char* name, const std::string& where) {
  const json& v = require_field(rec, name, where);
  if (!v.is_number_integer())
    fail(where + ": field '" + std::string(name) + "' must be an integer");
  return v.get<int>();
}

Sample record_to_sample(const json& rec, const std::string& where) {
  if (!rec.is_object()) fail(where + ": record must be a JSON object");
  Sample s;
  s.id = require_string(rec, "id", where);
  const json& toks = require_field(rec, "token", where);
  if (!toks.is_array()) fail(where + ": field 'token' must be an array of strings");
  s.tokens.reserve(toks.size());
  for (const json& t : toks) {
    if (!t.is_string()) fail(where + ": field 'token' must be an array of strings");
    s.tokens.push_back(t.get<std::string>());
  }
  s.subj_span.start = require_int(rec, "subj_start", where);
  s.subj_span.end = require_int(rec, "subj_end", where);
  s.obj_span.start = require_int(rec, "obj_start", where);
  s.obj_span.end = require_int(rec, "obj_end", where);
  s.subj_type = require_string(rec, "subj_type", where);
  s.obj_type = require_string(rec, "obj_type", where);
  if (auto it = rec.find("relation"); it != rec.end() && !it->is_null()) {
    if (!it->is_string()) fail(where + ": field 'relation' must be a string");
    s.gold_relation = it->get<std::string>();
  }
  return s;
}

void check_split_name(const std::string& split_name) {
  if (split_name != "train" && split_name != "dev" && split_name != "test")
    fail("split name must be one of train/dev/test, got '" + split_name + "'");
}

}  // namespace

std::string to_string(const TypePair& pair) {
  return "(" + pair.subj_type + ", " + pair.obj_type + ")";
}

void validate_sample(const Sample& s, const std::string& where) {
  const int n = static_cast<int>(s.tokens.size());
  const auto check_span = [&](const TokenSpan& sp, const char* which) {
    if (sp.start < 0 || sp.start > sp.end || sp.end >= n)
      fail(where + ": " + which + " (" + std::to_string(sp.start) + ", " +
           std::to_string(sp.end) + ") out of bounds for id '" + s.id + "' (" +
           std::to_string(n) + " tokens)");
  };
  check_span(s.subj_span, "subj_span");
  check_span(s.obj_span, "obj_span");
  if (s.subj_span == s.obj_span)
    fail(where + ": subj_span and obj_span are identical for id '" + s.id + "'");
  if (s.subj_type.empty()) fail(where + ": field 'subj_type' is empty for id '" + s.id + "'");
  if (s.obj_type.empty()) fail(where + ": field 'obj_type' is empty for id '" + s.id + "'");
  if (s.gold_relation) {
    const std::string& r = *s.gold_relation;
    if (is_meaningful(r) && !r.starts_with("org:") && !r.starts_with("per:"))
      fail(where + ": field 'relation' ('" + r + "') for id '" + s.id +
           "' must be no_relation or carry an org:/per: prefix");
  }
}

namespace {

// Duplicate-id check and inventory only; spans must already be validated
// (token text may have been dropped by then).
Dataset finalize_dataset(std::string split_name, std::vector<Sample> samples) {
  Dataset data;
  data.split_name = std::move(split_name);
  std::unordered_map<std::string, std::size_t> seen;
  seen.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Sample& s = samples[i];
    if (auto [it, inserted] = seen.emplace(s.id, i); !inserted)
      fail("duplicate id '" + s.id + "' (samples " + std::to_string(it->second + 1) +
           " and " + std::to_string(i + 1) + ")");
    if (s.gold_relation) data.label_inventory.insert(*s.gold_relation);
    else ++data.unlabeled_count;
  }
  data.samples = std::move(samples);
  return data;
}

}  // namespace

Dataset make_dataset(std::string split_name, std::vector<Sample> samples) {
  check_split_name(split_name);
  for (std::size_t i = 0; i < samples.size(); ++i)
    validate_sample(samples[i], "sample " + std::to_string(i + 1));
  return finalize_dataset(std::move(split_name), std::move(samples));
}

Dataset parse_dataset(const std::string& path, const std::string& split_name,
                      const ParseOptions& options) {
  check_split_name(split_name);
  std::vector<Sample> samples;

  const auto add = [&](Sample s, const std::string& where) {
    validate_sample(s, where);
    if (!options.keep_tokens) {
      s.tokens.clear();
      s.tokens.shrink_to_fit();
    }
    samples.push_back(std::move(s));
  };

  // Sniff the first non-whitespace byte: '[' means one whole-file JSON array,
  // anything else is treated as line-delimited records.
  {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) fail("cannot open file '" + path + "'");
    char c = 0;
    bool array_form = false;
    while (probe.get(c)) {
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
      array_form = (c == '[');
      break;
    }
    if (array_form) {
      json doc;
      try {
        std::ifstream in(path, std::ios::binary);
        doc = json::parse(in);
      } catch (const json::exception& e) {
        fail("file '" + path + "': invalid JSON: " + e.what());
      }
      std::size_t idx = 0;
      for (const json& rec : doc) {
        ++idx;
        const std::string where = "record " + std::to_string(idx);
        add(record_to_sample(rec, where), where);
      }
      return finalize_dataset(split_name, std::move(samples));
    }
  }

  io::for_each_line(path, [&](std::size_t line_no, const std::string& line) {
    const std::string where = "record " + std::to_string(line_no);
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      fail(where + ": invalid JSON: " + e.what());
    }
    add(record_to_sample(rec, where), where);
  });
  return finalize_dataset(split_name, std::move(samples));
}

std::string sample_to_json_line(const Sample& s) {
  ordered_json rec;
  rec["id"] = s.id;
  rec["token"] = s.tokens;
  rec["subj_start"] = s.subj_span.start;
  rec["subj_end"] = s.subj_span.end;
  rec["obj_start"] = s.obj_span.start;
  rec["obj_end"] = s.obj_span.end;
  rec["subj_type"] = s.subj_type;
  rec["obj_type"] = s.obj_type;
  if (s.gold_relation) rec["relation"] = *s.gold_relation;
  return rec.dump();
}

void write_dataset(const Dataset& data, const std::string& path) {
  std::string buf;
  for (const Sample& s : data.samples) {
    buf += sample_to_json_line(s);
    buf += '\n';
  }
  io::atomic_write(path, buf);
}

TypePair type_pair_of(const Sample& sample) {
  return TypePair{sample.subj_type, sample.obj_type};
}

}  // namespace relex
