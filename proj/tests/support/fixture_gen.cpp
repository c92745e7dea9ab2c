#include "support/fixture_gen.hpp"

#include <json.hpp>

#include "relex/io.hpp"
#include "relex/pipeline.hpp"

namespace relex::testsupport {

namespace {

using nlohmann::ordered_json;

const std::vector<std::string> kPeople = {"alice", "bob", "carol", "dave", "erin", "frank"};
const std::vector<std::string> kOrgs = {"acme", "globex", "initech", "umbrella"};
const std::vector<std::string> kTitles = {"chairman", "director", "analyst"};
const std::vector<std::string> kReligions = {"buddhism", "taoism"};
const std::vector<std::string> kDates = {"1999", "2004", "2010", "2017"};
const std::vector<std::string> kPlaces = {"lisbon", "oslo", "quito"};
const std::vector<std::string> kMisc = {"ax-9", "kite-2"};

// Rotating entity fillers keep the corpus deterministic but non-repetitive.
struct Fillers {
  std::map<const std::vector<std::string>*, std::size_t> next;

  const std::string& take(const std::vector<std::string>& pool) {
    std::size_t& i = next[&pool];
    const std::string& v = pool[i % pool.size()];
    ++i;
    return v;
  }
};

struct Builder {
  std::vector<Sample> samples;
  Fillers fillers;
  std::string prefix;
  int counter = 0;

  std::string next_id() {
    ++counter;
    char buf[16];
    std::snprintf(buf, sizeof buf, "%s-%03d", prefix.c_str(), counter);
    return buf;
  }

  std::string add(const std::string& relation, const std::string& subj_type,
                  const std::string& obj_type) {
    Sample s;
    s.id = next_id();
    s.subj_type = subj_type;
    s.obj_type = obj_type;
    s.gold_relation = relation;

    const auto person = [&] { return fillers.take(kPeople); };
    const auto org = [&] { return fillers.take(kOrgs); };

    if (relation == "per:title") {
      s.tokens = {person(), "served", "as", fillers.take(kTitles)};
      s.subj_span = {0, 0};
      s.obj_span = {3, 3};
    } else if (relation == "per:religion") {
      s.tokens = {person(), "practices", fillers.take(kReligions)};
      s.subj_span = {0, 0};
      s.obj_span = {2, 2};
    } else if (relation == "org:founded_by") {
      s.tokens = {org(), "was", "founded", "by", person()};
      s.subj_span = {0, 0};
      s.obj_span = {4, 4};
    } else if (relation == "org:shareholders") {
      s.tokens = {person(), "holds", "shares", "of", org()};
      s.subj_span = {4, 4};
      s.obj_span = {0, 0};
    } else if (relation == "org:employees") {
      s.tokens = {person(), "works", "for", org()};
      s.subj_span = {3, 3};
      s.obj_span = {0, 0};
    } else if (relation == "per:date_of_birth") {
      s.tokens = {person(), "was", "born", "in", fillers.take(kDates)};
      s.subj_span = {0, 0};
      s.obj_span = {4, 4};
    } else if (relation == "per:date_of_death") {
      s.tokens = {person(), "died", "in", fillers.take(kDates)};
      s.subj_span = {0, 0};
      s.obj_span = {3, 3};
    } else if (relation == "per:origin") {
      s.tokens = {person(), "comes", "from", fillers.take(kPlaces)};
      s.subj_span = {0, 0};
      s.obj_span = {3, 3};
    } else if (relation == "per:cities_of_residence") {
      s.tokens = {person(), "lives", "in", fillers.take(kPlaces)};
      s.subj_span = {0, 0};
      s.obj_span = {3, 3};
    } else if (relation == "org:founded") {
      s.tokens = {org(), "was", "established", "in", fillers.take(kDates)};
      s.subj_span = {0, 0};
      s.obj_span = {4, 4};
    } else if (relation == "org:alternate_names") {
      s.tokens = {org(), "also", "known", "as", fillers.take(kMisc)};
      s.subj_span = {0, 0};
      s.obj_span = {4, 4};
    } else {  // no_relation, fillers matched to the mention types
      const auto filler = [&](const std::string& type) -> std::string {
        if (type == "PERSON") return person();
        if (type == "ORGANIZATION") return org();
        if (type == "TITLE") return fillers.take(kTitles);
        if (type == "RELIGION") return fillers.take(kReligions);
        if (type == "DATE") return fillers.take(kDates);
        if (type == "LOCATION") return fillers.take(kPlaces);
        return fillers.take(kMisc);
      };
      s.tokens = {filler(subj_type), "and", filler(obj_type), "met"};
      s.subj_span = {0, 0};
      s.obj_span = {2, 2};
    }
    samples.push_back(s);
    return samples.back().id;
  }
};

}  // namespace

FixtureSet make_fixture_set() {
  FixtureSet f;

  // Train split.
  {
    Builder b;
    b.prefix = "tr";
    for (int i = 0; i < 5; ++i) b.add("per:title", "PERSON", "TITLE");
    for (int i = 0; i < 3; ++i) b.add("no_relation", "PERSON", "TITLE");
    for (int i = 0; i < 4; ++i) b.add("per:religion", "PERSON", "RELIGION");
    for (int i = 0; i < 2; ++i) b.add("no_relation", "PERSON", "RELIGION");
    for (int i = 0; i < 4; ++i) b.add("org:founded_by", "ORGANIZATION", "PERSON");
    for (int i = 0; i < 3; ++i) b.add("org:shareholders", "ORGANIZATION", "PERSON");
    for (int i = 0; i < 3; ++i) b.add("org:employees", "ORGANIZATION", "PERSON");
    for (int i = 0; i < 2; ++i) b.add("no_relation", "ORGANIZATION", "PERSON");
    for (int i = 0; i < 3; ++i) b.add("per:date_of_birth", "PERSON", "DATE");
    for (int i = 0; i < 2; ++i) b.add("per:date_of_death", "PERSON", "DATE");
    for (int i = 0; i < 3; ++i) b.add("no_relation", "PERSON", "DATE");
    for (int i = 0; i < 4; ++i) b.add("no_relation", "ORGANIZATION", "LOCATION");
    for (int i = 0; i < 3; ++i) b.add("per:origin", "PERSON", "LOCATION");
    for (int i = 0; i < 2; ++i) b.add("no_relation", "PERSON", "LOCATION");
    for (int i = 0; i < 2; ++i) b.add("org:founded", "ORGANIZATION", "DATE");
    for (int i = 0; i < 2; ++i) b.add("no_relation", "ORGANIZATION", "DATE");
    f.train = make_dataset("train", std::move(b.samples));
  }
  f.train_simple = 4;  // TITLE, RELIGION, (PERSON,LOCATION), (ORGANIZATION,DATE)
  f.train_complicated = 2;  // (ORGANIZATION,PERSON), (PERSON,DATE)
  f.train_degenerate = 1;   // (ORGANIZATION,LOCATION)

  // Dev split; accepted by the tooling, unused by the baselines.
  {
    Builder b;
    b.prefix = "dv";
    b.add("per:title", "PERSON", "TITLE");
    b.add("per:title", "PERSON", "TITLE");
    b.add("no_relation", "PERSON", "TITLE");
    b.add("org:founded_by", "ORGANIZATION", "PERSON");
    b.add("org:employees", "ORGANIZATION", "PERSON");
    b.add("no_relation", "ORGANIZATION", "PERSON");
    f.dev = make_dataset("dev", std::move(b.samples));
  }

  // Test split: 40 records.
  std::map<std::string, std::string> test_gold;  // id -> gold, for the oracles
  {
    Builder b;
    b.prefix = "te";
    const auto add = [&](const std::string& rel, const std::string& st,
                         const std::string& ot) {
      const std::string id = b.add(rel, st, ot);
      test_gold[id] = rel;
      return id;
    };

    // (ORGANIZATION, PERSON): test loses org:shareholders -> labels diverge.
    add("org:founded_by", "ORGANIZATION", "PERSON");                      // te-001
    add("org:founded_by", "ORGANIZATION", "PERSON");                      // te-002
    f.semantic_error = add("org:founded_by", "ORGANIZATION", "PERSON");   // te-003
    for (int i = 0; i < 3; ++i) add("org:employees", "ORGANIZATION", "PERSON");
    f.binary_misfires_complicated.push_back(
        add("no_relation", "ORGANIZATION", "PERSON"));                    // te-007
    f.binary_misfires_complicated.push_back(
        add("no_relation", "ORGANIZATION", "PERSON"));                    // te-008
    add("no_relation", "ORGANIZATION", "PERSON");
    add("no_relation", "ORGANIZATION", "PERSON");

    add("per:date_of_birth", "PERSON", "DATE");                           // te-011
    add("per:date_of_birth", "PERSON", "DATE");
    add("per:date_of_death", "PERSON", "DATE");
    add("per:date_of_death", "PERSON", "DATE");
    f.binary_misfires_complicated.push_back(
        add("no_relation", "PERSON", "DATE"));                            // te-015
    add("no_relation", "PERSON", "DATE");
    add("no_relation", "PERSON", "DATE");

    f.binary_false_negative = add("per:title", "PERSON", "TITLE");        // te-018
    for (int i = 0; i < 4; ++i) add("per:title", "PERSON", "TITLE");
    f.binary_misfire_simple = add("no_relation", "PERSON", "TITLE");      // te-023
    add("no_relation", "PERSON", "TITLE");
    add("no_relation", "PERSON", "TITLE");

    for (int i = 0; i < 3; ++i) add("per:religion", "PERSON", "RELIGION");
    add("no_relation", "PERSON", "RELIGION");
    add("no_relation", "PERSON", "RELIGION");

    for (int i = 0; i < 4; ++i) add("no_relation", "ORGANIZATION", "LOCATION");

    // Simple in train, two meaningful labels here -> kind diverges.
    add("per:origin", "PERSON", "LOCATION");
    add("per:origin", "PERSON", "LOCATION");
    add("per:cities_of_residence", "PERSON", "LOCATION");
    add("no_relation", "PERSON", "LOCATION");

    // Pair that only exists in the test split.
    add("org:alternate_names", "ORGANIZATION", "MISC");
    add("no_relation", "ORGANIZATION", "MISC");

    f.test = make_dataset("test", std::move(b.samples));
  }
  f.test_simple = 3;       // TITLE, RELIGION, (ORGANIZATION,MISC)
  f.test_complicated = 3;  // (ORG,PERSON), (PERSON,DATE), (PERSON,LOCATION)
  f.test_degenerate = 1;   // (ORGANIZATION,LOCATION)

  f.divergences = {
      {TypePair{"ORGANIZATION", "DATE"}, "only_in_a"},
      {TypePair{"ORGANIZATION", "MISC"}, "only_in_b"},
      {TypePair{"ORGANIZATION", "PERSON"}, "labels_changed"},
      {TypePair{"PERSON", "LOCATION"}, "kind_changed"},
  };

  // Binary oracle: gold mapping with the planted exceptions above.
  for (const Sample& s : f.test.samples) {
    std::string verdict(s.gold_is_meaningful() ? kBinaryMeaningful : kBinaryNoRelation);
    f.binary_oracle.entries.emplace(s.id, verdict);
  }
  for (const std::string& id : f.binary_misfires_complicated)
    f.binary_oracle.entries[id] = kBinaryMeaningful;
  f.binary_oracle.entries[f.binary_misfire_simple] = kBinaryMeaningful;
  f.binary_oracle.entries[f.binary_false_negative] = kBinaryNoRelation;

  // Semantic oracles for the train-catalog complicated pairs: echo gold for
  // meaningful samples (except the planted error) and fall back to a fixed
  // label for everything else.
  {
    OracleLedger org_person;
    OracleLedger person_date;
    for (const Sample& s : f.test.samples) {
      const std::string& gold = test_gold[s.id];
      if (s.subj_type == "ORGANIZATION" && s.obj_type == "PERSON")
        org_person.entries[s.id] = gold == "no_relation" ? "org:founded_by" : gold;
      else if (s.subj_type == "PERSON" && s.obj_type == "DATE")
        person_date.entries[s.id] = gold == "no_relation" ? "per:date_of_birth" : gold;
    }
    org_person.entries[f.semantic_error] = "org:employees";
    f.semantic_oracles.emplace(TypePair{"ORGANIZATION", "PERSON"}, std::move(org_person));
    f.semantic_oracles.emplace(TypePair{"PERSON", "DATE"}, std::move(person_date));
  }

  return f;
}

void write_fixtures(const FixtureSet& f, const std::string& dir) {
  io::ensure_dir(dir);
  write_dataset(f.train, dir + "/synth_train.jsonl");
  write_dataset(f.dev, dir + "/synth_dev.jsonl");
  write_dataset(f.test, dir + "/synth_test.jsonl");
  f.binary_oracle.write(dir + "/binary_oracle.jsonl");

  const std::string sem_dir = dir + "/semantic_oracles";
  io::ensure_dir(sem_dir);
  std::map<std::string, TypePair> files;
  for (const auto& [pair, ledger] : f.semantic_oracles) {
    const std::string name = io::sanitize_component(pair.subj_type) + "__" +
                             io::sanitize_component(pair.obj_type) + ".jsonl";
    ledger.write(sem_dir + "/" + name);
    files.emplace(name, pair);
  }
  write_pair_index(sem_dir + "/index.json", files);

  ordered_json manifest;
  manifest["splits"] = {
      {"train", {{"file", "synth_train.jsonl"}, {"records", f.train.samples.size()}}},
      {"dev", {{"file", "synth_dev.jsonl"}, {"records", f.dev.samples.size()}}},
      {"test", {{"file", "synth_test.jsonl"}, {"records", f.test.samples.size()}}},
  };
  manifest["catalog_counts"] = {
      {"train",
       {{"simple", f.train_simple},
        {"complicated", f.train_complicated},
        {"degenerate", f.train_degenerate}}},
      {"test",
       {{"simple", f.test_simple},
        {"complicated", f.test_complicated},
        {"degenerate", f.test_degenerate}}},
  };
  ordered_json divergences = ordered_json::array();
  for (const PlantedDivergence& d : f.divergences) {
    ordered_json e;
    e["pair"] = {d.pair.subj_type, d.pair.obj_type};
    e["status"] = d.status;
    divergences.push_back(e);
  }
  manifest["divergent_pairs"] = divergences;
  manifest["planted"] = {
      {"binary_misfires_complicated", f.binary_misfires_complicated},
      {"binary_misfire_simple", f.binary_misfire_simple},
      {"binary_false_negative", f.binary_false_negative},
      {"semantic_error", f.semantic_error},
  };
  manifest["expected"] = {{"rescued", f.binary_misfires_complicated.size()}};
  io::atomic_write(dir + "/manifest.json", manifest.dump(2) + "\n");
}

}  // namespace relex::testsupport
