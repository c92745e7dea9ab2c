"""Smoke tests for the python bindings.

Run after `pip install --no-build-isolation .` (or `-e .`), from the repo root:
    pytest tests/python
"""

import json
from pathlib import Path

import pytest

relex = pytest.importorskip("relex")

FIXTURES = Path(__file__).resolve().parents[2] / "fixtures"


@pytest.fixture(scope="module")
def splits():
    train = relex.parse_dataset(str(FIXTURES / "synth_train.jsonl"), "train")
    test = relex.parse_dataset(str(FIXTURES / "synth_test.jsonl"), "test")
    return train, test


@pytest.fixture(scope="module")
def pipeline(splits):
    train, test = splits
    manifest = json.loads((FIXTURES / "manifest.json").read_text())
    spec = relex.PipelineSpec()
    spec.binary_kind = relex.ClassifierKind.SCRIPTED_ORACLE
    spec.semantic_kind = relex.ClassifierKind.SCRIPTED_ORACLE
    spec.binary_ledger = relex.OracleLedger.read(str(FIXTURES / "binary_oracle.jsonl"))
    index = json.loads((FIXTURES / "semantic_oracles" / "index.json").read_text())
    for entry in index["entries"]:
        pair = relex.TypePair(entry["subj_type"], entry["obj_type"])
        ledger = relex.OracleLedger.read(str(FIXTURES / "semantic_oracles" / entry["file"]))
        spec.set_semantic_ledger(pair, ledger)
    catalog = relex.build_catalog(train, "train")
    return relex.train_pipeline(train, catalog, spec), manifest


def test_scorer_matches_published_rows():
    original = relex.compute_scores(relex.ConfusionCounts(2182, 246, 1143))
    assert original.display() == ("89.86", "65.62", "75.85")
    corrected = relex.compute_scores(relex.ConfusionCounts(2182, 1190, 1143))
    assert corrected.display() == ("64.70", "65.62", "65.16")


def test_parse_and_catalog(splits):
    train, test = splits
    assert len(test) == 40
    assert test.unlabeled_count == 0
    catalog = relex.build_catalog(train, "train")
    summary = catalog.summary()
    assert (summary.simple, summary.complicated, summary.degenerate) == (4, 2, 1)
    desc = catalog.descriptor(relex.TypePair("ORGANIZATION", "PERSON"))
    assert desc.kind == relex.SubsetKind.COMPLICATED
    assert "org:founded_by" in desc.labels


def test_routing(splits):
    train, _ = splits
    catalog = relex.build_catalog(train, "train")
    sample = relex.Sample()
    sample.id = "q"
    sample.tokens = ["a", "b"]
    sample.subj_span = relex.TokenSpan(0, 0)
    sample.obj_span = relex.TokenSpan(1, 1)
    sample.subj_type = "PERSON"
    sample.obj_type = "RELIGION"
    decision = relex.route(catalog, sample)
    assert decision.kind == relex.RouteKind.SIMPLE
    assert decision.simple_relation == "per:religion"


def test_both_modes_and_audit(splits, pipeline):
    _, test = splits
    trained, manifest = pipeline
    leaky = relex.run_split(trained, test, relex.EvalMode.LEAKY)
    corrected = relex.run_split(trained, test, relex.EvalMode.CORRECTED)
    report = relex.audit_modes(test, trained, leaky, corrected)

    planted = manifest["planted"]["binary_misfires_complicated"]
    assert sorted(report.rescued_ids) == sorted(planted)
    assert report.corrected_counts.tp == report.leaky_counts.tp
    assert report.corrected_counts.fn == report.leaky_counts.fn
    assert report.corrected_counts.fp - report.leaky_counts.fp == len(planted)
    assert report.inflation > 0


def test_leak_signature_fires_on_leaky_only(splits, pipeline):
    _, test = splits
    trained, _ = pipeline
    leaky = relex.run_split(trained, test, relex.EvalMode.LEAKY)
    corrected = relex.run_split(trained, test, relex.EvalMode.CORRECTED)
    catalog = trained.catalog

    fired = relex.detect_leak_signature(
        catalog, test, {p.sample_id: p.predicted for p in leaky}, 3
    )
    quiet = relex.detect_leak_signature(
        catalog, test, {p.sample_id: p.predicted for p in corrected}, 3
    )
    assert fired.flagged
    assert not quiet.flagged


def test_catalog_diff_between_sources(splits):
    train, test = splits
    diff = relex.catalog_diff(
        relex.build_catalog(train, "train"), relex.build_catalog(test, "test")
    )
    manifest = json.loads((FIXTURES / "manifest.json").read_text())
    assert len(diff) == len(manifest["divergent_pairs"])
