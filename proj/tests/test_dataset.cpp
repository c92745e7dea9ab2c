#include <doctest.h>

#include <fstream>
#include <random>
#include <set>

#include <json.hpp>

#include "relex/dataset.hpp"
#include "relex/io.hpp"
#include "support/random_world.hpp"
#include "support/temp_dir.hpp"

using namespace relex;
using relex::testsupport::TempDir;

namespace {

std::string fixtures_dir() { return RELEX_FIXTURES_DIR; }

std::string write_lines(const TempDir& dir, const std::string& name,
                        const std::vector<std::string>& lines) {
  std::string buf;
  for (const std::string& l : lines) buf += l + "\n";
  const std::string path = dir / name;
  io::atomic_write(path, buf);
  return path;
}

const char* kMinimalRecord =
    R"({"id":"a1","token":["Bob","died"],"subj_start":0,"subj_end":0,"obj_start":1,"obj_end":1,"subj_type":"PERSON","obj_type":"DATE","relation":"no_relation"})";

}  // namespace

TEST_CASE("parse_dataset reads a minimal well-formed record") {
  TempDir dir("dataset");
  const auto path = write_lines(dir, "one.jsonl", {kMinimalRecord});
  const Dataset data = parse_dataset(path, "test");
  REQUIRE(data.samples.size() == 1);
  const Sample& s = data.samples[0];
  CHECK(s.id == "a1");
  CHECK(s.tokens == std::vector<std::string>{"Bob", "died"});
  CHECK(s.subj_type == "PERSON");
  CHECK(s.obj_type == "DATE");
  CHECK(s.gold_relation == "no_relation");
  CHECK(data.label_inventory == std::set<std::string>{"no_relation"});
  CHECK(data.unlabeled_count == 0);
}

TEST_CASE("parse_dataset rejects spans past the token count") {
  TempDir dir("dataset");
  const auto path = write_lines(
      dir, "bad.jsonl",
      {R"({"id":"a1","token":["Bob","died"],"subj_start":0,"subj_end":2,"obj_start":1,"obj_end":1,"subj_type":"PERSON","obj_type":"DATE","relation":"no_relation"})"});
  CHECK_THROWS_WITH_AS(parse_dataset(path, "test"),
                       doctest::Contains("out of bounds for id 'a1'"), std::runtime_error);
}

TEST_CASE("parse_dataset rejects identical subject and object spans") {
  TempDir dir("dataset");
  const auto path = write_lines(
      dir, "bad.jsonl",
      {R"({"id":"a1","token":["Bob","died"],"subj_start":0,"subj_end":0,"obj_start":0,"obj_end":0,"subj_type":"PERSON","obj_type":"DATE","relation":"no_relation"})"});
  CHECK_THROWS_WITH_AS(parse_dataset(path, "test"), doctest::Contains("identical"),
                       std::runtime_error);
}

TEST_CASE("parse_dataset rejects duplicate ids by name") {
  TempDir dir("dataset");
  const auto path = write_lines(dir, "dup.jsonl", {kMinimalRecord, kMinimalRecord});
  CHECK_THROWS_WITH_AS(parse_dataset(path, "test"),
                       doctest::Contains("duplicate id 'a1'"), std::runtime_error);
}

TEST_CASE("meaningful relations must carry the org:/per: prefix") {
  TempDir dir("dataset");
  const auto path = write_lines(
      dir, "bad.jsonl",
      {R"({"id":"a1","token":["Bob","died"],"subj_start":0,"subj_end":0,"obj_start":1,"obj_end":1,"subj_type":"PERSON","obj_type":"DATE","relation":"died_on"})"});
  CHECK_THROWS_WITH_AS(parse_dataset(path, "test"), doctest::Contains("org:/per:"),
                       std::runtime_error);
}

TEST_CASE("missing fields are reported by name and record") {
  TempDir dir("dataset");
  const auto path = write_lines(
      dir, "bad.jsonl",
      {kMinimalRecord,
       R"({"id":"a2","token":["x","y"],"subj_start":0,"subj_end":0,"obj_start":1,"obj_end":1,"subj_type":"PERSON","relation":"no_relation"})"});
  CHECK_THROWS_WITH_AS(parse_dataset(path, "test"),
                       doctest::Contains("record 2: missing field 'obj_type'"),
                       std::runtime_error);
}

TEST_CASE("invalid JSON is reported with its record index") {
  TempDir dir("dataset");
  const auto path = write_lines(dir, "bad.jsonl", {kMinimalRecord, "{not json"});
  CHECK_THROWS_WITH_AS(parse_dataset(path, "test"),
                       doctest::Contains("record 2: invalid JSON"), std::runtime_error);
}

TEST_CASE("a missing relation field yields an unlabeled sample, not no_relation") {
  TempDir dir("dataset");
  const auto path = write_lines(
      dir, "unlabeled.jsonl",
      {R"({"id":"a1","token":["Bob","died"],"subj_start":0,"subj_end":0,"obj_start":1,"obj_end":1,"subj_type":"PERSON","obj_type":"DATE"})"});
  const Dataset data = parse_dataset(path, "test");
  REQUIRE(data.samples.size() == 1);
  CHECK(!data.samples[0].has_gold());
  CHECK(data.unlabeled_count == 1);
  CHECK(data.label_inventory.empty());
}

TEST_CASE("unknown fields are ignored so enriched corpora load as-is") {
  TempDir dir("dataset");
  const auto path = write_lines(
      dir, "extra.jsonl",
      {R"({"id":"a1","docid":"d0","stanford_pos":["NNP","VBD"],"token":["Bob","died"],"subj_start":0,"subj_end":0,"obj_start":1,"obj_end":1,"subj_type":"PERSON","obj_type":"DATE","relation":"no_relation"})"});
  CHECK(parse_dataset(path, "test").samples.size() == 1);
}

TEST_CASE("a whole-file JSON array parses like line-delimited records") {
  TempDir dir("dataset");
  const std::string path = dir / "array.json";
  io::atomic_write(path, std::string("[\n") + kMinimalRecord + "\n]\n");
  const Dataset data = parse_dataset(path, "test");
  REQUIRE(data.samples.size() == 1);
  CHECK(data.samples[0].id == "a1");
}

TEST_CASE("blank lines are skipped but keep line numbering for errors") {
  TempDir dir("dataset");
  const auto path = write_lines(dir, "gaps.jsonl", {kMinimalRecord, "", "   ", "{oops"});
  CHECK_THROWS_WITH_AS(parse_dataset(path, "test"), doctest::Contains("record 4"),
                       std::runtime_error);
}

TEST_CASE("split names are restricted to train/dev/test") {
  TempDir dir("dataset");
  const auto path = write_lines(dir, "one.jsonl", {kMinimalRecord});
  CHECK_THROWS_WITH_AS(parse_dataset(path, "eval"), doctest::Contains("split name"),
                       std::runtime_error);
}

TEST_CASE("keep_tokens=false validates spans but drops token text") {
  TempDir dir("dataset");
  const auto path = write_lines(dir, "one.jsonl", {kMinimalRecord});
  ParseOptions options;
  options.keep_tokens = false;
  const Dataset data = parse_dataset(path, "test", options);
  REQUIRE(data.samples.size() == 1);
  CHECK(data.samples[0].tokens.empty());
  CHECK(data.samples[0].subj_type == "PERSON");
}

TEST_CASE("fixture test split: 40 records, inventory matches an independent scan") {
  const std::string path = fixtures_dir() + "/synth_test.jsonl";
  const Dataset data = parse_dataset(path, "test");

  // Independent scan: raw line count and a per-line relation grab.
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string line;
  std::size_t lines = 0;
  std::set<std::string> labels;
  std::vector<std::string> ids_in_file_order;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++lines;
    const auto rec = nlohmann::json::parse(line);
    labels.insert(rec.at("relation").get<std::string>());
    ids_in_file_order.push_back(rec.at("id").get<std::string>());
  }

  CHECK(lines == 40);
  CHECK(data.samples.size() == 40);
  CHECK(data.label_inventory == labels);
  // Record order is preserved.
  std::vector<std::string> parsed_ids;
  for (const Sample& s : data.samples) parsed_ids.push_back(s.id);
  CHECK(parsed_ids == ids_in_file_order);
}

TEST_CASE("type_pair_of is the ordered (subject, object) type pair") {
  Sample s;
  s.subj_type = "ORGANIZATION";
  s.obj_type = "PERSON";
  CHECK(type_pair_of(s) == TypePair{"ORGANIZATION", "PERSON"});
  s.subj_type = "PERSON";
  s.obj_type = "RELIGION";
  CHECK(type_pair_of(s) == TypePair{"PERSON", "RELIGION"});

  // A function of the types only.
  Sample t = s;
  t.id = "other";
  t.tokens = {"completely", "different", "words"};
  t.subj_span = {0, 0};
  t.obj_span = {2, 2};
  CHECK(type_pair_of(t) == type_pair_of(s));
}

TEST_CASE("parse -> serialize -> parse is the identity on samples") {
  std::mt19937 rng(7);
  for (int round = 0; round < 25; ++round) {
    const Dataset data = testsupport::make_random_dataset(rng, "train");
    TempDir dir("roundtrip");
    const std::string path = dir / "data.jsonl";
    write_dataset(data, path);
    const Dataset reparsed = parse_dataset(path, "train");
    REQUIRE(reparsed.samples == data.samples);
    CHECK(reparsed.label_inventory == data.label_inventory);
  }
}

TEST_CASE("serialization keeps non-ascii token text intact") {
  Sample s;
  s.id = "u1";
  s.tokens = {"Wrocław", "—", "città"};
  s.subj_span = {0, 0};
  s.obj_span = {2, 2};
  s.subj_type = "PERSON";
  s.obj_type = "LOCATION";
  s.gold_relation = "per:origin";
  const Dataset data = make_dataset("test", {s});

  TempDir dir("unicode");
  const std::string path = dir / "data.jsonl";
  write_dataset(data, path);
  CHECK(parse_dataset(path, "test").samples == data.samples);
}
