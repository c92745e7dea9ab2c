// relex: entity-type-routed relation classification with a dual-mode
// (leaky vs corrected) evaluation harness.

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "relex/audit.hpp"
#include "relex/catalog.hpp"
#include "relex/classifiers.hpp"
#include "relex/dataset.hpp"
#include "relex/io.hpp"
#include "relex/json_io.hpp"
#include "relex/pipeline.hpp"
#include "relex/scoring.hpp"

namespace {

using nlohmann::ordered_json;
using namespace relex;

constexpr int kExitOk = 0;
constexpr int kExitSignatureFired = 1;
constexpr int kExitError = 2;

std::string join(const std::vector<std::string>& parts, const char* sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

void print_score_header() {
  std::cout << std::left << std::setw(28) << "experiment" << std::right
            << std::setw(11) << "precision" << std::setw(11) << "recall"
            << std::setw(11) << "f1" << "\n";
}

void print_score_row(const std::string& name, const ScoreReport& report) {
  std::cout << std::left << std::setw(28) << name << std::right << std::setw(11)
            << format_display(report.precision) << std::setw(11)
            << format_display(report.recall) << std::setw(11)
            << format_display(report.f1) << "   (tp=" << report.counts.tp
            << " fp=" << report.counts.fp << " fn=" << report.counts.fn << ")\n";
}

struct SplitArg {
  std::string path;
  std::string split = "test";
};

Dataset load_split(const std::string& path, const std::string& split,
                   bool keep_tokens = true) {
  ParseOptions options;
  options.keep_tokens = keep_tokens;
  return parse_dataset(path, split, options);
}

void write_json(const std::string& path, const ordered_json& doc) {
  io::atomic_write(path, doc.dump(2) + "\n");
}

// ---------------------------------------------------------------- ingest --

struct IngestOptions {
  std::string train, dev, test, out;
};

int cmd_ingest(const IngestOptions& opt) {
  std::vector<std::pair<std::string, std::string>> inputs;
  if (!opt.train.empty()) inputs.emplace_back("train", opt.train);
  if (!opt.dev.empty()) inputs.emplace_back("dev", opt.dev);
  if (!opt.test.empty()) inputs.emplace_back("test", opt.test);
  if (inputs.empty())
    throw std::runtime_error("cli: ingest needs at least one of --train/--dev/--test");

  ordered_json splits = ordered_json::array();
  std::cout << std::left << std::setw(8) << "split" << std::right << std::setw(9)
            << "samples" << std::setw(11) << "unlabeled" << std::setw(9) << "labels"
            << "\n";
  for (const auto& [split, path] : inputs) {
    // Validation only; token text is not needed for the summary.
    const Dataset data = load_split(path, split, /*keep_tokens=*/false);
    std::cout << std::left << std::setw(8) << split << std::right << std::setw(9)
              << data.samples.size() << std::setw(11) << data.unlabeled_count
              << std::setw(9) << data.label_inventory.size() << "\n";
    ordered_json s;
    s["split"] = split;
    s["path"] = path;
    s["samples"] = data.samples.size();
    s["unlabeled"] = data.unlabeled_count;
    s["labels"] = std::vector<std::string>(data.label_inventory.begin(),
                                           data.label_inventory.end());
    splits.push_back(s);
  }
  for (const ordered_json& s : splits)
    std::cout << "label inventory (" << s["split"].get<std::string>()
              << "): " << join(s["labels"].get<std::vector<std::string>>()) << "\n";

  if (!opt.out.empty()) {
    io::ensure_dir(opt.out);
    ordered_json doc;
    doc["splits"] = splits;
    write_json(opt.out + "/ingest.json", doc);
  }
  return kExitOk;
}

// ------------------------------------------------------------- decompose --

struct DecomposeOptions {
  std::string train, test, source = "train", out;
};

void print_catalog(const SubsetCatalog& catalog) {
  std::cout << std::left << std::setw(36) << "pair" << std::setw(13) << "kind"
            << std::right << std::setw(7) << "count" << std::setw(12) << "meaningful"
            << "  labels\n";
  for (const auto& [pair, desc] : catalog.descriptors) {
    std::string labels = join(desc.labels, ",");
    if (labels.size() > 48) labels = labels.substr(0, 45) + "...";
    std::cout << std::left << std::setw(36) << to_string(pair) << std::setw(13)
              << to_string(desc.kind) << std::right << std::setw(7) << desc.train_count
              << std::setw(12) << desc.meaningful_train_count << "  " << labels << "\n";
  }
}

void print_summary(const std::string& source, const CatalogSummary& s) {
  std::cout << "catalog from " << source << ": " << s.simple << " simple, "
            << s.complicated << " complicated, " << s.degenerate << " degenerate\n";
}

int cmd_decompose(const DecomposeOptions& opt) {
  const std::string& source_path = opt.source == "train" ? opt.train : opt.test;
  if (source_path.empty())
    throw std::runtime_error("cli: --catalog-source " + opt.source + " needs --" +
                             opt.source);

  const Dataset source_data = load_split(source_path, opt.source == "train" ? "train" : "test");
  const SubsetCatalog catalog = build_catalog(source_data, opt.source);
  print_catalog(catalog);
  print_summary(opt.source, catalog.summary());

  // When the other split is on hand too, report its view and the divergence.
  std::optional<SubsetCatalog> other;
  const std::string other_source = opt.source == "train" ? "test" : "train";
  const std::string& other_path = opt.source == "train" ? opt.test : opt.train;
  if (!other_path.empty()) {
    other = build_catalog(load_split(other_path, other_source), other_source);
    print_summary(other_source, other->summary());
    const CatalogDiff diff = opt.source == "train" ? catalog_diff(catalog, *other)
                                                   : catalog_diff(*other, catalog);
    std::cout << "catalog divergence (train vs test): " << diff.entries.size()
              << " pair(s)\n";
    for (const CatalogDiffEntry& e : diff.entries)
      std::cout << "  " << to_string(e.pair) << ": " << to_string(e.status) << "\n";
  }

  if (!opt.out.empty()) {
    io::ensure_dir(opt.out);
    write_catalog(catalog, opt.out + "/catalog.jsonl");
    ordered_json doc;
    doc["source_split"] = opt.source;
    const CatalogSummary s = catalog.summary();
    doc["counts"] = {{"simple", s.simple},
                     {"complicated", s.complicated},
                     {"degenerate", s.degenerate}};
    ordered_json pairs = ordered_json::array();
    for (const auto& [pair, desc] : catalog.descriptors)
      pairs.push_back(jsonio::to_json(desc));
    doc["pairs"] = pairs;
    if (other) {
      const CatalogSummary so = other->summary();
      doc["other_source_counts"] = {{"source_split", other_source},
                                    {"simple", so.simple},
                                    {"complicated", so.complicated},
                                    {"degenerate", so.degenerate}};
      const CatalogDiff diff = opt.source == "train" ? catalog_diff(catalog, *other)
                                                     : catalog_diff(*other, catalog);
      doc["catalog_diff"] = jsonio::to_json(diff);
    }
    write_json(opt.out + "/decompose.json", doc);
  }
  return kExitOk;
}

// ----------------------------------------------------------------- train --

struct TrainOptions {
  std::string train, dev, test;
  std::string source = "train";
  std::string binary_kind = "frequency_prior";
  std::string semantic_kind = "frequency_prior";
  std::string binary_oracle, semantic_oracles;
  unsigned seed = 0;
  std::string out;
};

int cmd_train(const TrainOptions& opt) {
  const Dataset train = load_split(opt.train, "train");

  SubsetCatalog catalog;
  if (opt.source == "train") {
    catalog = build_catalog(train, "train");
  } else {
    if (opt.test.empty())
      throw std::runtime_error("cli: --catalog-source test needs --test");
    catalog = build_catalog(load_split(opt.test, "test"), "test");
  }

  PipelineSpec spec;
  spec.binary_kind = classifier_kind_from_string(opt.binary_kind);
  spec.semantic_kind = classifier_kind_from_string(opt.semantic_kind);
  spec.seed = opt.seed;
  if (spec.binary_kind == ClassifierKind::ScriptedOracle) {
    if (opt.binary_oracle.empty())
      throw std::runtime_error("cli: --binary scripted_oracle needs --binary-oracle");
    spec.binary_ledger = OracleLedger::read(opt.binary_oracle);
  }
  if (spec.semantic_kind == ClassifierKind::ScriptedOracle) {
    if (opt.semantic_oracles.empty())
      throw std::runtime_error("cli: --semantic scripted_oracle needs --semantic-oracles");
    for (const auto& [file, pair] : read_pair_index(opt.semantic_oracles + "/index.json"))
      spec.semantic_ledgers.emplace(pair, OracleLedger::read(opt.semantic_oracles + "/" + file));
  }

  if (!opt.dev.empty()) load_split(opt.dev, "dev");  // accepted and validated; baselines have no tuning loop

  const TrainedPipeline pipeline = train_pipeline(train, std::move(catalog), spec);
  io::ensure_dir(opt.out);
  save_pipeline(pipeline, opt.out);

  ordered_json manifest;
  manifest["train"] = opt.train;
  if (!opt.dev.empty()) manifest["dev"] = opt.dev;
  if (!opt.test.empty()) manifest["test"] = opt.test;
  manifest["catalog_source"] = opt.source;
  manifest["binary"] = opt.binary_kind;
  manifest["semantic"] = opt.semantic_kind;
  if (!opt.binary_oracle.empty()) manifest["binary_oracle"] = opt.binary_oracle;
  if (!opt.semantic_oracles.empty()) manifest["semantic_oracles"] = opt.semantic_oracles;
  manifest["seed"] = opt.seed;
  write_json(opt.out + "/train_manifest.json", manifest);

  const CatalogSummary s = pipeline.catalog.summary();
  print_summary(pipeline.catalog.source_split, s);
  std::cout << "trained binary (" << opt.binary_kind << ") and " << pipeline.semantics.size()
            << " semantic classifier(s) (" << opt.semantic_kind << ") -> " << opt.out << "\n";
  return kExitOk;
}

// --------------------------------------------------------------- predict --

struct PredictOptions {
  std::string model_dir, data, data_split = "test", mode = "both", partials_dir, out;
};

int cmd_predict(const PredictOptions& opt) {
  const TrainedPipeline pipeline = load_pipeline(opt.model_dir);
  const Dataset data = load_split(opt.data, opt.data_split);
  io::ensure_dir(opt.out);

  const bool want_leaky = opt.mode == "leaky" || opt.mode == "both";
  const bool want_corrected = opt.mode == "corrected" || opt.mode == "both";
  const bool labeled = data.unlabeled_count == 0;

  std::vector<Prediction> leaky, corrected;
  ordered_json manifest;
  manifest["model_dir"] = opt.model_dir;
  manifest["data"] = opt.data;
  manifest["data_split"] = opt.data_split;
  manifest["mode"] = opt.mode;

  bool printed_header = false;
  const auto print_scores = [&](const std::string& name, const ScoreReport& report) {
    if (!printed_header) {
      print_score_header();
      printed_header = true;
    }
    print_score_row(name, report);
  };

  if (want_leaky) {
    PartialResultStore store;
    if (!opt.partials_dir.empty()) {
      store = PartialResultStore::read(opt.partials_dir);
      manifest["partials"] = opt.partials_dir;
    } else if (!labeled) {
      throw std::runtime_error(
          "cli: leaky mode pre-computes partial results from the gold labels of the "
          "evaluated data itself; '" + opt.data +
          "' has unlabeled samples, so there is nothing to filter no_relation out of. "
          "Use --mode corrected for fresh data, or replay a store with --partials-dir.");
    } else {
      store = precompute_partials(pipeline, data);
      manifest["partials"] = "precomputed";
    }
    store.write(opt.out + "/partials");
    leaky = run_split(pipeline, data, EvalMode::Leaky, &store);
    jsonio::write_predictions(leaky, opt.out + "/predictions_leaky.jsonl");
    if (labeled) {
      const ScoreReport report = score_predictions(data, leaky);
      write_json(opt.out + "/scores_leaky.json", jsonio::to_json(report));
      print_scores("leaky", report);
    }
  }

  if (want_corrected) {
    corrected = run_split(pipeline, data, EvalMode::Corrected);
    jsonio::write_predictions(corrected, opt.out + "/predictions_corrected.jsonl");
    if (labeled) {
      const ScoreReport report = score_predictions(data, corrected);
      write_json(opt.out + "/scores_corrected.json", jsonio::to_json(report));
      print_scores("corrected", report);
    }
  }

  if (!labeled)
    std::cout << "data has " << data.unlabeled_count
              << " unlabeled sample(s); predictions written, scoring skipped\n";

  if (opt.mode == "both" && labeled) {
    const AuditReport report = audit_modes(data, pipeline, leaky, corrected);
    write_json(opt.out + "/audit.json", jsonio::to_json(report));
    std::string ids;
    for (const std::string& id : report.rescued_ids) ids += id + "\n";
    io::atomic_write(opt.out + "/rescued_ids.txt", ids);
    std::cout << "rescued samples: " << report.rescued_ids.size()
              << "   F1 inflation: " << format_display(report.inflation) << "\n";
  }

  write_json(opt.out + "/run_manifest.json", manifest);
  return kExitOk;
}

// ----------------------------------------------------------------- score --

struct ScoreOptions {
  std::string name = "experiment";
  std::int64_t tp = -1, fp = -1, fn = -1;
  std::string data, data_split = "test", predictions, out;
};

int cmd_score(const ScoreOptions& opt) {
  const bool counts_form = opt.tp >= 0 || opt.fp >= 0 || opt.fn >= 0;
  const bool file_form = !opt.data.empty() || !opt.predictions.empty();
  if (counts_form == file_form)
    throw std::runtime_error(
        "cli: score takes either --tp/--fp/--fn or --data/--predictions");

  ScoreReport report;
  if (counts_form) {
    if (opt.tp < 0 || opt.fp < 0 || opt.fn < 0)
      throw std::runtime_error("cli: score needs all of --tp, --fp, --fn (non-negative)");
    report = compute_scores(ConfusionCounts{opt.tp, opt.fp, opt.fn});
  } else {
    if (opt.data.empty() || opt.predictions.empty())
      throw std::runtime_error("cli: score needs both --data and --predictions");
    const Dataset data = load_split(opt.data, opt.data_split);
    report = score_labeled(data, jsonio::read_prediction_labels(opt.predictions));
  }

  print_score_header();
  print_score_row(opt.name, report);

  if (!opt.out.empty()) {
    io::ensure_dir(opt.out);
    ordered_json doc = jsonio::to_json(report);
    doc["name"] = opt.name;
    write_json(opt.out + "/score.json", doc);
  }
  return kExitOk;
}

// ----------------------------------------------------------------- audit --

struct AuditOptions {
  std::string model_dir, data, data_split = "test", train, out;
  std::size_t min_negatives = 3;
};

int cmd_audit(const AuditOptions& opt) {
  const TrainedPipeline pipeline = load_pipeline(opt.model_dir);
  const Dataset data = load_split(opt.data, opt.data_split);
  io::ensure_dir(opt.out);

  const PartialResultStore store = precompute_partials(pipeline, data);
  const std::vector<Prediction> leaky = run_split(pipeline, data, EvalMode::Leaky, &store);
  const std::vector<Prediction> corrected = run_split(pipeline, data, EvalMode::Corrected);
  jsonio::write_predictions(leaky, opt.out + "/predictions_leaky.jsonl");
  jsonio::write_predictions(corrected, opt.out + "/predictions_corrected.jsonl");

  AuditReport report = audit_modes(data, pipeline, leaky, corrected);
  if (!opt.train.empty()) {
    const SubsetCatalog from_train = build_catalog(load_split(opt.train, "train"), "train");
    const SubsetCatalog from_data = build_catalog(data, opt.data_split);
    report.catalog_diff = catalog_diff(from_train, from_data);
  }

  // Screen the leaky output the way an outsider would: labels only.
  std::map<std::string, std::string> labels_only;
  for (const Prediction& p : leaky) labels_only.emplace(p.sample_id, p.predicted);
  const SuspicionReport suspicion =
      detect_leak_signature(pipeline.catalog, data, labels_only, opt.min_negatives);

  ordered_json doc = jsonio::to_json(report);
  doc["suspicion"] = jsonio::to_json(suspicion);
  write_json(opt.out + "/audit.json", doc);
  write_json(opt.out + "/suspicion.json", jsonio::to_json(suspicion));
  std::string ids;
  for (const std::string& id : report.rescued_ids) ids += id + "\n";
  io::atomic_write(opt.out + "/rescued_ids.txt", ids);

  print_score_header();
  print_score_row("leaky", report.leaky_scores);
  print_score_row("corrected", report.corrected_scores);
  std::cout << "rescued samples: " << report.rescued_ids.size()
            << "   F1 inflation: " << format_display(report.inflation) << "\n";
  if (report.catalog_diff)
    std::cout << "catalog divergence (train vs " << opt.data_split
              << "): " << report.catalog_diff->entries.size() << " pair(s)\n";
  for (const PairCoincidence& pc : suspicion.pairs)
    std::cout << "pair " << to_string(pc.pair) << ": " << pc.coincident << "/"
              << pc.gold_negatives << " gold negatives predicted no_relation"
              << (pc.flagged ? "  [signature]" : "") << "\n";
  if (suspicion.flagged) {
    std::cout << "leak signature FIRED";
    if (suspicion.perfect_predictor_caveat) std::cout << " (caveat: " << suspicion.caveat << ")";
    std::cout << "\n";
    return kExitSignatureFired;
  }
  std::cout << "leak signature not fired\n";
  return kExitOk;
}

// ---------------------------------------------------------------- report --

struct ReportOptions {
  std::string in;
  bool as_json = false;
};

int cmd_report(const ReportOptions& opt) {
  namespace fs = std::filesystem;
  ordered_json aggregate;

  const auto read_json = [](const std::string& path) {
    return ordered_json::parse(io::read_file(path));
  };

  bool printed_header = false;
  const auto print_row_from = [&](const std::string& name, const ordered_json& score) {
    if (!printed_header) {
      print_score_header();
      printed_header = true;
    }
    const auto& d = score.at("display");
    const auto& c = score.at("counts");
    std::cout << std::left << std::setw(28) << name << std::right << std::setw(11)
              << d.at("precision").get<std::string>() << std::setw(11)
              << d.at("recall").get<std::string>() << std::setw(11)
              << d.at("f1").get<std::string>() << "   (tp=" << c.at("tp")
              << " fp=" << c.at("fp") << " fn=" << c.at("fn") << ")\n";
  };

  if (fs::exists(opt.in + "/audit.json")) {
    const ordered_json audit = read_json(opt.in + "/audit.json");
    aggregate["audit"] = audit;
    print_row_from("leaky", audit.at("leaky"));
    print_row_from("corrected", audit.at("corrected"));
    std::cout << "rescued samples: " << audit.at("rescued_count")
              << "   F1 inflation: " << audit.at("inflation_display").get<std::string>()
              << "\n";
    if (audit.contains("catalog_diff"))
      std::cout << "catalog divergence: " << audit.at("catalog_diff").at("entries").size()
                << " pair(s)\n";
    if (audit.contains("suspicion"))
      std::cout << "leak signature: "
                << (audit.at("suspicion").at("flagged").get<bool>() ? "FIRED" : "not fired")
                << "\n";
  } else {
    for (const auto& [file, name] :
         std::vector<std::pair<std::string, std::string>>{
             {"scores_leaky.json", "leaky"},
             {"scores_corrected.json", "corrected"},
             {"score.json", "experiment"}}) {
      if (!fs::exists(opt.in + "/" + file)) continue;
      const ordered_json score = read_json(opt.in + "/" + file);
      aggregate[name] = score;
      print_row_from(score.contains("name") ? score.at("name").get<std::string>() : name,
                     score);
    }
    if (aggregate.empty())
      throw std::runtime_error("cli: no score artifacts found under '" + opt.in + "'");
  }

  if (opt.as_json) std::cout << aggregate.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entity-type-routed relation classification with a dual-mode "
               "(leaky vs corrected) evaluation harness"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from a TOML/INI file; command-line flags win");

  IngestOptions ingest;
  auto* cmd_i = app.add_subcommand("ingest", "validate data splits and summarize them");
  cmd_i->add_option("--train", ingest.train, "train split file")->envname("RELEX_INGEST_TRAIN");
  cmd_i->add_option("--dev", ingest.dev, "dev split file")->envname("RELEX_INGEST_DEV");
  cmd_i->add_option("--test", ingest.test, "test split file")->envname("RELEX_INGEST_TEST");
  cmd_i->add_option("--out", ingest.out, "output directory for ingest.json")
      ->envname("RELEX_INGEST_OUT");

  DecomposeOptions decompose;
  auto* cmd_d = app.add_subcommand("decompose",
                                   "group a split into type-pair subsets and classify them");
  cmd_d->add_option("--train", decompose.train, "train split file")
      ->envname("RELEX_DECOMPOSE_TRAIN");
  cmd_d->add_option("--test", decompose.test, "test split file")
      ->envname("RELEX_DECOMPOSE_TEST");
  cmd_d->add_option("--catalog-source", decompose.source,
                    "split the catalog is built from (default train)")
      ->check(CLI::IsMember({"train", "test"}))
      ->envname("RELEX_DECOMPOSE_CATALOG_SOURCE");
  cmd_d->add_option("--out", decompose.out, "output directory for catalog artifacts")
      ->envname("RELEX_DECOMPOSE_OUT");

  TrainOptions train;
  auto* cmd_t = app.add_subcommand("train", "build the catalog and train the pipeline");
  cmd_t->add_option("--train", train.train, "train split file")
      ->required()
      ->envname("RELEX_TRAIN_TRAIN");
  cmd_t->add_option("--dev", train.dev, "dev split file (validated; baselines do not tune)")
      ->envname("RELEX_TRAIN_DEV");
  cmd_t->add_option("--test", train.test, "test split file (only read with --catalog-source test)")
      ->envname("RELEX_TRAIN_TEST");
  cmd_t->add_option("--catalog-source", train.source,
                    "split the catalog is built from; 'test' reproduces the original "
                    "system's bug for audit parity (default train)")
      ->check(CLI::IsMember({"train", "test"}))
      ->envname("RELEX_TRAIN_CATALOG_SOURCE");
  cmd_t->add_option("--binary", train.binary_kind, "binary classifier kind")
      ->check(CLI::IsMember({"frequency_prior", "nearest_neighbor_bow", "scripted_oracle"}))
      ->envname("RELEX_TRAIN_BINARY");
  cmd_t->add_option("--semantic", train.semantic_kind, "semantic classifier kind")
      ->check(CLI::IsMember({"frequency_prior", "nearest_neighbor_bow", "scripted_oracle"}))
      ->envname("RELEX_TRAIN_SEMANTIC");
  cmd_t->add_option("--binary-oracle", train.binary_oracle,
                    "ledger file for a scripted binary classifier")
      ->envname("RELEX_TRAIN_BINARY_ORACLE");
  cmd_t->add_option("--semantic-oracles", train.semantic_oracles,
                    "directory of per-pair ledgers (index.json + files) for scripted semantics")
      ->envname("RELEX_TRAIN_SEMANTIC_ORACLES");
  cmd_t->add_option("--seed", train.seed, "recorded in the manifest; baselines are deterministic")
      ->envname("RELEX_TRAIN_SEED");
  cmd_t->add_option("--out", train.out, "model output directory")
      ->required()
      ->envname("RELEX_TRAIN_OUT");

  PredictOptions predict;
  auto* cmd_p = app.add_subcommand("predict", "run the workflow over a split and score it");
  cmd_p->add_option("--model-dir", predict.model_dir, "directory written by train")
      ->required()
      ->envname("RELEX_PREDICT_MODEL_DIR");
  cmd_p->add_option("--data", predict.data, "data file to predict")
      ->required()
      ->envname("RELEX_PREDICT_DATA");
  cmd_p->add_option("--data-split", predict.data_split, "split tag for the data file")
      ->check(CLI::IsMember({"train", "dev", "test"}))
      ->envname("RELEX_PREDICT_DATA_SPLIT");
  cmd_p->add_option("--mode", predict.mode, "leaky, corrected, or both (default both)")
      ->check(CLI::IsMember({"leaky", "corrected", "both"}))
      ->envname("RELEX_PREDICT_MODE");
  cmd_p->add_option("--partials-dir", predict.partials_dir,
                    "replay an existing partial result store instead of pre-computing one")
      ->envname("RELEX_PREDICT_PARTIALS_DIR");
  cmd_p->add_option("--out", predict.out, "output directory")
      ->required()
      ->envname("RELEX_PREDICT_OUT");

  ScoreOptions score;
  auto* cmd_s = app.add_subcommand("score", "micro P/R/F1 from counts or prediction files");
  cmd_s->add_option("--name", score.name, "experiment name for the table row")
      ->envname("RELEX_SCORE_NAME");
  cmd_s->add_option("--tp", score.tp, "true positives")->envname("RELEX_SCORE_TP");
  cmd_s->add_option("--fp", score.fp, "false positives")->envname("RELEX_SCORE_FP");
  cmd_s->add_option("--fn", score.fn, "false negatives")->envname("RELEX_SCORE_FN");
  cmd_s->add_option("--data", score.data, "gold data file")->envname("RELEX_SCORE_DATA");
  cmd_s->add_option("--data-split", score.data_split, "split tag for the data file")
      ->check(CLI::IsMember({"train", "dev", "test"}))
      ->envname("RELEX_SCORE_DATA_SPLIT");
  cmd_s->add_option("--predictions", score.predictions, "predictions file ({id, predicted|label})")
      ->envname("RELEX_SCORE_PREDICTIONS");
  cmd_s->add_option("--out", score.out, "output directory for score.json")
      ->envname("RELEX_SCORE_OUT");

  AuditOptions audit;
  auto* cmd_a = app.add_subcommand(
      "audit", "run both modes, quantify the loophole, screen for its signature");
  cmd_a->add_option("--model-dir", audit.model_dir, "directory written by train")
      ->required()
      ->envname("RELEX_AUDIT_MODEL_DIR");
  cmd_a->add_option("--data", audit.data, "labeled data file to audit")
      ->required()
      ->envname("RELEX_AUDIT_DATA");
  cmd_a->add_option("--data-split", audit.data_split, "split tag for the data file")
      ->check(CLI::IsMember({"train", "dev", "test"}))
      ->envname("RELEX_AUDIT_DATA_SPLIT");
  cmd_a->add_option("--train", audit.train,
                    "train split file; enables the train-vs-data catalog diff")
      ->envname("RELEX_AUDIT_TRAIN");
  cmd_a->add_option("--min-negatives", audit.min_negatives,
                    "minimum gold negatives for a pair to be screened (default 3)")
      ->envname("RELEX_AUDIT_MIN_NEGATIVES");
  cmd_a->add_option("--out", audit.out, "output directory")
      ->required()
      ->envname("RELEX_AUDIT_OUT");

  ReportOptions report;
  auto* cmd_r = app.add_subcommand("report", "render tables from a run's output directory");
  cmd_r->add_option("--in", report.in, "output directory of a predict/audit run")
      ->required()
      ->envname("RELEX_REPORT_IN");
  cmd_r->add_flag("--json", report.as_json, "also print the aggregate as JSON")
      ->envname("RELEX_REPORT_JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_i->parsed()) return cmd_ingest(ingest);
    if (cmd_d->parsed()) return cmd_decompose(decompose);
    if (cmd_t->parsed()) return cmd_train(train);
    if (cmd_p->parsed()) return cmd_predict(predict);
    if (cmd_s->parsed()) return cmd_score(score);
    if (cmd_a->parsed()) return cmd_audit(audit);
    if (cmd_r->parsed()) return cmd_report(report);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitOk;
}
