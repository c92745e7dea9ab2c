#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "relex/audit.hpp"
#include "relex/catalog.hpp"
#include "relex/classifiers.hpp"
#include "relex/dataset.hpp"
#include "relex/pipeline.hpp"
#include "relex/scoring.hpp"

namespace py = pybind11;
using namespace relex;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Entity-type-routed relation classification with a dual-mode "
            "(leaky vs corrected) evaluation harness";

  // --- dataset ---------------------------------------------------------------
  py::class_<TokenSpan>(m, "TokenSpan")
      .def(py::init<>())
      .def(py::init([](int start, int end) { return TokenSpan{start, end}; }),
           py::arg("start"), py::arg("end"))
      .def_readwrite("start", &TokenSpan::start)
      .def_readwrite("end", &TokenSpan::end)
      .def("__eq__", [](const TokenSpan& a, const TokenSpan& b) { return a == b; })
      .def("__repr__", [](const TokenSpan& s) {
        return "TokenSpan(" + std::to_string(s.start) + ", " + std::to_string(s.end) + ")";
      });

  py::class_<Sample>(m, "Sample")
      .def(py::init<>())
      .def_readwrite("id", &Sample::id)
      .def_readwrite("tokens", &Sample::tokens)
      .def_readwrite("subj_span", &Sample::subj_span)
      .def_readwrite("obj_span", &Sample::obj_span)
      .def_readwrite("subj_type", &Sample::subj_type)
      .def_readwrite("obj_type", &Sample::obj_type)
      .def_readwrite("gold_relation", &Sample::gold_relation)
      .def("has_gold", &Sample::has_gold)
      .def("gold_is_meaningful", &Sample::gold_is_meaningful)
      .def("__eq__", [](const Sample& a, const Sample& b) { return a == b; })
      .def("__repr__", [](const Sample& s) { return "Sample(id='" + s.id + "')"; });

  py::class_<TypePair>(m, "TypePair")
      .def(py::init([](std::string subj, std::string obj) {
             return TypePair{std::move(subj), std::move(obj)};
           }),
           py::arg("subj_type"), py::arg("obj_type"))
      .def_readwrite("subj_type", &TypePair::subj_type)
      .def_readwrite("obj_type", &TypePair::obj_type)
      .def("__eq__", [](const TypePair& a, const TypePair& b) { return a == b; })
      .def("__lt__", [](const TypePair& a, const TypePair& b) { return a < b; })
      .def("__hash__",
           [](const TypePair& p) {
             return py::hash(py::make_tuple(p.subj_type, p.obj_type));
           })
      .def("__repr__", [](const TypePair& p) { return to_string(p); });

  py::class_<Dataset>(m, "Dataset")
      .def_readonly("split_name", &Dataset::split_name)
      .def_readonly("samples", &Dataset::samples)
      .def_readonly("label_inventory", &Dataset::label_inventory)
      .def_readonly("unlabeled_count", &Dataset::unlabeled_count)
      .def("__len__", [](const Dataset& d) { return d.samples.size(); });

  m.def("make_dataset", &make_dataset, py::arg("split_name"), py::arg("samples"));
  m.def(
      "parse_dataset",
      [](const std::string& path, const std::string& split_name, bool keep_tokens) {
        ParseOptions options;
        options.keep_tokens = keep_tokens;
        return parse_dataset(path, split_name, options);
      },
      py::arg("path"), py::arg("split_name"), py::arg("keep_tokens") = true);
  m.def("write_dataset", &write_dataset, py::arg("data"), py::arg("path"));
  m.def("type_pair_of", &type_pair_of, py::arg("sample"));

  // --- catalog ---------------------------------------------------------------
  py::enum_<SubsetKind>(m, "SubsetKind")
      .value("SIMPLE", SubsetKind::Simple)
      .value("COMPLICATED", SubsetKind::Complicated)
      .value("DEGENERATE", SubsetKind::Degenerate);

  py::class_<SubsetDescriptor>(m, "SubsetDescriptor")
      .def_readonly("pair", &SubsetDescriptor::pair)
      .def_readonly("kind", &SubsetDescriptor::kind)
      .def_readonly("labels", &SubsetDescriptor::labels)
      .def_readonly("train_count", &SubsetDescriptor::train_count)
      .def_readonly("meaningful_train_count", &SubsetDescriptor::meaningful_train_count)
      .def("simple_relation", &SubsetDescriptor::simple_relation,
           py::return_value_policy::copy);

  py::class_<CatalogSummary>(m, "CatalogSummary")
      .def_readonly("simple", &CatalogSummary::simple)
      .def_readonly("complicated", &CatalogSummary::complicated)
      .def_readonly("degenerate", &CatalogSummary::degenerate);

  py::class_<SubsetCatalog>(m, "SubsetCatalog")
      .def_readonly("source_split", &SubsetCatalog::source_split)
      .def("pairs",
           [](const SubsetCatalog& c) {
             std::vector<TypePair> out;
             for (const auto& [pair, desc] : c.descriptors) out.push_back(pair);
             return out;
           })
      .def(
          "descriptor",
          [](const SubsetCatalog& c, const TypePair& pair) {
            const SubsetDescriptor* d = c.find(pair);
            if (d == nullptr) throw py::key_error(to_string(pair));
            return *d;
          },
          py::arg("pair"))
      .def("complicated_pairs", &SubsetCatalog::complicated_pairs)
      .def("summary", &SubsetCatalog::summary);

  m.def("build_catalog", &build_catalog, py::arg("data"), py::arg("source_split"));
  m.def("write_catalog", &write_catalog, py::arg("catalog"), py::arg("path"));
  m.def("read_catalog", &read_catalog, py::arg("path"));

  py::enum_<RouteKind>(m, "RouteKind")
      .value("SIMPLE", RouteKind::Simple)
      .value("COMPLICATED", RouteKind::Complicated)
      .value("DEGENERATE", RouteKind::Degenerate)
      .value("UNSEEN_PAIR", RouteKind::UnseenPair);

  py::class_<RouteDecision>(m, "RouteDecision")
      .def_readonly("kind", &RouteDecision::kind)
      .def_readonly("pair", &RouteDecision::pair)
      .def_readonly("simple_relation", &RouteDecision::simple_relation);

  m.def("route", &route, py::arg("catalog"), py::arg("sample"));

  py::enum_<CatalogDiffEntry::Status>(m, "DiffStatus")
      .value("ONLY_IN_A", CatalogDiffEntry::Status::OnlyInA)
      .value("ONLY_IN_B", CatalogDiffEntry::Status::OnlyInB)
      .value("KIND_CHANGED", CatalogDiffEntry::Status::KindChanged)
      .value("LABELS_CHANGED", CatalogDiffEntry::Status::LabelsChanged);

  py::class_<CatalogDiffEntry>(m, "CatalogDiffEntry")
      .def_readonly("pair", &CatalogDiffEntry::pair)
      .def_readonly("status", &CatalogDiffEntry::status)
      .def_readonly("kind_a", &CatalogDiffEntry::kind_a)
      .def_readonly("kind_b", &CatalogDiffEntry::kind_b)
      .def_readonly("labels_a", &CatalogDiffEntry::labels_a)
      .def_readonly("labels_b", &CatalogDiffEntry::labels_b);

  py::class_<CatalogDiff>(m, "CatalogDiff")
      .def_readonly("source_a", &CatalogDiff::source_a)
      .def_readonly("source_b", &CatalogDiff::source_b)
      .def_readonly("entries", &CatalogDiff::entries)
      .def("empty", &CatalogDiff::empty)
      .def("__len__", [](const CatalogDiff& d) { return d.entries.size(); });

  m.def("catalog_diff", &catalog_diff, py::arg("a"), py::arg("b"));

  // --- classifiers -----------------------------------------------------------
  py::enum_<ClassifierRole>(m, "ClassifierRole")
      .value("BINARY", ClassifierRole::Binary)
      .value("SEMANTIC", ClassifierRole::Semantic);

  py::enum_<ClassifierKind>(m, "ClassifierKind")
      .value("FREQUENCY_PRIOR", ClassifierKind::FrequencyPrior)
      .value("NEAREST_NEIGHBOR_BOW", ClassifierKind::NearestNeighborBow)
      .value("SCRIPTED_ORACLE", ClassifierKind::ScriptedOracle);

  py::class_<LabelSet>(m, "LabelSet")
      .def_static("binary", &LabelSet::binary)
      .def_static("semantic", &LabelSet::semantic, py::arg("labels"))
      .def_readonly("labels", &LabelSet::labels)
      .def("contains",
           [](const LabelSet& ls, const std::string& label) { return ls.contains(label); })
      .def("__eq__", [](const LabelSet& a, const LabelSet& b) { return a == b; });

  py::class_<OracleLedger>(m, "OracleLedger")
      .def(py::init<>())
      .def(py::init([](std::map<std::string, std::string> entries) {
             OracleLedger ledger;
             ledger.entries = std::move(entries);
             return ledger;
           }),
           py::arg("entries"))
      .def_readwrite("entries", &OracleLedger::entries)
      .def_static("read", &OracleLedger::read, py::arg("path"))
      .def("write", &OracleLedger::write, py::arg("path"));

  py::class_<ClassifierSpec>(m, "ClassifierSpec")
      .def(py::init<>())
      .def_readwrite("kind", &ClassifierSpec::kind)
      .def_readwrite("ledger", &ClassifierSpec::ledger)
      .def_readwrite("seed", &ClassifierSpec::seed);

  py::class_<Classifier, ClassifierPtr>(m, "Classifier")
      .def("predict", &Classifier::predict, py::arg("sample"))
      .def("label_set", &Classifier::label_set, py::return_value_policy::copy)
      .def("role", &Classifier::role)
      .def("kind", &Classifier::kind);

  m.def("train_classifier", &train_classifier, py::arg("spec"), py::arg("role"),
        py::arg("samples"), py::arg("labels"));
  m.def(
      "save_classifier",
      [](const ClassifierPtr& c, const std::string& path) { save_classifier(*c, path); },
      py::arg("classifier"), py::arg("path"));
  m.def("load_classifier", &load_classifier, py::arg("path"));
  m.def("binary_gold_label", &binary_gold_label, py::arg("sample"));

  // --- pipeline ----------------------------------------------------------------
  py::enum_<Provenance>(m, "Provenance")
      .value("BINARY_STEP", Provenance::BinaryStep)
      .value("SIMPLE_STEP", Provenance::SimpleStep)
      .value("DEGENERATE", Provenance::Degenerate)
      .value("UNSEEN_PAIR", Provenance::UnseenPair)
      .value("SEMANTIC_STEP", Provenance::SemanticStep)
      .value("LEAKY_FALLBACK", Provenance::LeakyFallback);

  py::class_<Prediction>(m, "Prediction")
      .def_readonly("sample_id", &Prediction::sample_id)
      .def_readonly("predicted", &Prediction::predicted)
      .def_readonly("decided_at", &Prediction::decided_at)
      .def("__repr__", [](const Prediction& p) {
        return "Prediction('" + p.sample_id + "' -> '" + p.predicted + "', " +
               to_string(p.decided_at) + ")";
      });

  py::class_<PartialResultStore>(m, "PartialResultStore")
      .def(py::init<>())
      .def("insert", &PartialResultStore::insert, py::arg("pair"), py::arg("id"),
           py::arg("label"))
      .def(
          "lookup",
          [](const PartialResultStore& store, const TypePair& pair,
             const std::string& id) -> std::optional<std::string> {
            const std::string* hit = store.lookup(pair, id);
            if (hit == nullptr) return std::nullopt;
            return *hit;
          },
          py::arg("pair"), py::arg("id"))
      .def("pairs", &PartialResultStore::pairs)
      .def("entries", &PartialResultStore::entries, py::arg("pair"))
      .def("write", &PartialResultStore::write, py::arg("dir"))
      .def_static("read", &PartialResultStore::read, py::arg("dir"))
      .def("__len__", &PartialResultStore::size);

  py::class_<PipelineSpec>(m, "PipelineSpec")
      .def(py::init<>())
      .def_readwrite("binary_kind", &PipelineSpec::binary_kind)
      .def_readwrite("semantic_kind", &PipelineSpec::semantic_kind)
      .def_readwrite("binary_ledger", &PipelineSpec::binary_ledger)
      .def_readwrite("seed", &PipelineSpec::seed)
      .def(
          "set_semantic_ledger",
          [](PipelineSpec& spec, const TypePair& pair, OracleLedger ledger) {
            spec.semantic_ledgers[pair] = std::move(ledger);
          },
          py::arg("pair"), py::arg("ledger"));

  py::class_<TrainedPipeline>(m, "TrainedPipeline")
      .def_readonly("catalog", &TrainedPipeline::catalog)
      .def_readonly("binary", &TrainedPipeline::binary)
      .def("semantic_pairs",
           [](const TrainedPipeline& p) {
             std::vector<TypePair> out;
             for (const auto& [pair, c] : p.semantics) out.push_back(pair);
             return out;
           })
      .def(
          "semantic_for",
          [](const TrainedPipeline& p, const TypePair& pair) {
            auto it = p.semantics.find(pair);
            if (it == p.semantics.end()) throw py::key_error(to_string(pair));
            return it->second;
          },
          py::arg("pair"));

  m.def("validate_pipeline", &validate_pipeline, py::arg("pipeline"));
  m.def("train_pipeline", &train_pipeline, py::arg("train"), py::arg("catalog"),
        py::arg("spec"));
  m.def("save_pipeline", &save_pipeline, py::arg("pipeline"), py::arg("dir"));
  m.def("load_pipeline", &load_pipeline, py::arg("dir"));
  m.def("precompute_partials", &precompute_partials, py::arg("pipeline"), py::arg("test"));
  m.def("predict_leaky", &predict_leaky, py::arg("pipeline"), py::arg("store"),
        py::arg("sample"));
  m.def("predict_corrected", &predict_corrected, py::arg("pipeline"), py::arg("sample"));
  m.def("predict_corrected_substitution", &predict_corrected_substitution,
        py::arg("pipeline"), py::arg("store"), py::arg("sample"));

  py::enum_<EvalMode>(m, "EvalMode")
      .value("LEAKY", EvalMode::Leaky)
      .value("CORRECTED", EvalMode::Corrected);

  m.def(
      "run_split",
      [](const TrainedPipeline& pipeline, const Dataset& data, EvalMode mode,
         const PartialResultStore* store) { return run_split(pipeline, data, mode, store); },
      py::arg("pipeline"), py::arg("data"), py::arg("mode"),
      py::arg("store") = static_cast<const PartialResultStore*>(nullptr));

  // --- scoring -----------------------------------------------------------------
  py::class_<ConfusionCounts>(m, "ConfusionCounts")
      .def(py::init<>())
      .def(py::init([](std::int64_t tp, std::int64_t fp, std::int64_t fn) {
             return ConfusionCounts{tp, fp, fn};
           }),
           py::arg("tp"), py::arg("fp"), py::arg("fn"))
      .def_readwrite("tp", &ConfusionCounts::tp)
      .def_readwrite("fp", &ConfusionCounts::fp)
      .def_readwrite("fn", &ConfusionCounts::fn)
      .def("__eq__",
           [](const ConfusionCounts& a, const ConfusionCounts& b) { return a == b; })
      .def("__repr__", [](const ConfusionCounts& c) {
        return "ConfusionCounts(tp=" + std::to_string(c.tp) + ", fp=" +
               std::to_string(c.fp) + ", fn=" + std::to_string(c.fn) + ")";
      });

  py::class_<ScoreReport>(m, "ScoreReport")
      .def_readonly("precision", &ScoreReport::precision)
      .def_readonly("recall", &ScoreReport::recall)
      .def_readonly("f1", &ScoreReport::f1)
      .def_readonly("counts", &ScoreReport::counts)
      .def("display", [](const ScoreReport& r) {
        return py::make_tuple(format_display(r.precision), format_display(r.recall),
                              format_display(r.f1));
      });

  m.def("count_confusion", &count_confusion, py::arg("gold"), py::arg("predicted"));
  m.def("compute_scores", &compute_scores, py::arg("counts"));
  m.def("score_predictions", &score_predictions, py::arg("data"), py::arg("predictions"));
  m.def("score_labeled", &score_labeled, py::arg("data"), py::arg("predicted_by_id"));
  m.def("display_value", &display_value, py::arg("ratio"));
  m.def("format_display", &format_display, py::arg("ratio"));

  // --- audit ---------------------------------------------------------------------
  py::class_<AuditReport>(m, "AuditReport")
      .def_readonly("rescued_ids", &AuditReport::rescued_ids)
      .def_readonly("leaky_counts", &AuditReport::leaky_counts)
      .def_readonly("corrected_counts", &AuditReport::corrected_counts)
      .def_readonly("leaky_scores", &AuditReport::leaky_scores)
      .def_readonly("corrected_scores", &AuditReport::corrected_scores)
      .def_readonly("inflation", &AuditReport::inflation)
      .def_readonly("catalog_diff", &AuditReport::catalog_diff);

  m.def("audit_modes", &audit_modes, py::arg("data"), py::arg("pipeline"),
        py::arg("leaky"), py::arg("corrected"));

  py::class_<PairCoincidence>(m, "PairCoincidence")
      .def_readonly("pair", &PairCoincidence::pair)
      .def_readonly("gold_negatives", &PairCoincidence::gold_negatives)
      .def_readonly("coincident", &PairCoincidence::coincident)
      .def_readonly("rate", &PairCoincidence::rate)
      .def_readonly("flagged", &PairCoincidence::flagged)
      .def_readonly("perfect_on_positives", &PairCoincidence::perfect_on_positives);

  py::class_<SuspicionReport>(m, "SuspicionReport")
      .def_readonly("min_gold_negatives", &SuspicionReport::min_gold_negatives)
      .def_readonly("pairs", &SuspicionReport::pairs)
      .def_readonly("flagged", &SuspicionReport::flagged)
      .def_readonly("perfect_predictor_caveat", &SuspicionReport::perfect_predictor_caveat)
      .def_readonly("caveat", &SuspicionReport::caveat);

  m.def("detect_leak_signature", &detect_leak_signature, py::arg("catalog"),
        py::arg("data"), py::arg("predicted_by_id"), py::arg("min_gold_negatives") = 3);

  m.attr("NO_RELATION") = std::string(kNoRelation);
  m.attr("BINARY_MEANINGFUL") = std::string(kBinaryMeaningful);
  m.attr("BINARY_NO_RELATION") = std::string(kBinaryNoRelation);
#ifdef RELEX_VERSION
  m.attr("__version__") = RELEX_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
