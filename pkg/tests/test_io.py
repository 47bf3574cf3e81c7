import sys
from pathlib import Path

import pytest

from beliefgraph import serialize_graph
from beliefgraph.errors import CorpusError
from beliefgraph.io import (
    DatasetFormatError,
    RunConfig,
    load_dataset,
    load_predictions,
    write_report,
)
from beliefgraph.metrics import MetricReport, SampleOutcome
from conftest import EXAMPLE_ARGUMENT, EXAMPLE_BELIEF, EXAMPLE_STANCE, EXAMPLE_TEXT

STUB = Path(__file__).with_name("stub_sidecar.py")


def write_dataset(tmp_path, rows, name="data.tsv"):
    path = tmp_path / name
    path.write_text("\n".join("\t".join(r) for r in rows) + "\n", encoding="utf-8")
    return path


EXAMPLE_ROW = (EXAMPLE_BELIEF, EXAMPLE_ARGUMENT, EXAMPLE_STANCE, EXAMPLE_TEXT)


class TestLoadDataset:
    def test_single_row(self, tmp_path):
        samples = load_dataset(write_dataset(tmp_path, [EXAMPLE_ROW]))
        assert len(samples) == 1
        s = samples[0]
        assert s.id == "0"
        assert s.belief == EXAMPLE_BELIEF
        assert s.gold_stance == "counter"
        assert serialize_graph(s.gold_graphs[0]) == EXAMPLE_TEXT

    def test_two_gold_graphs(self, tmp_path):
        second = "(a; causes; b)(b; causes; c)(c; causes; d)"
        samples = load_dataset(write_dataset(tmp_path, [EXAMPLE_ROW + (second,)]))
        assert len(samples[0].gold_graphs) == 2

    def test_blank_lines_skipped(self, tmp_path):
        path = tmp_path / "d.tsv"
        path.write_text("\n" + "\t".join(EXAMPLE_ROW) + "\n\n", encoding="utf-8")
        assert len(load_dataset(path)) == 1

    def test_bad_column_count(self, tmp_path):
        with pytest.raises(DatasetFormatError, match="row 1"):
            load_dataset(write_dataset(tmp_path, [("a", "b", "support")]))

    def test_bad_stance(self, tmp_path):
        with pytest.raises(DatasetFormatError, match="stance"):
            load_dataset(write_dataset(tmp_path, [("a", "b", "maybe", EXAMPLE_TEXT)]))

    def test_bad_graph(self, tmp_path):
        with pytest.raises(DatasetFormatError, match="row 1"):
            load_dataset(write_dataset(tmp_path, [("a", "b", "support", "broken(")]))

    def test_empty_dataset(self, tmp_path):
        path = tmp_path / "d.tsv"
        path.write_text("", encoding="utf-8")
        with pytest.raises(DatasetFormatError, match="no rows"):
            load_dataset(path)


class TestLoadPredictions:
    def test_aligned(self, tmp_path):
        samples = load_dataset(write_dataset(tmp_path, [EXAMPLE_ROW]))
        ppath = write_dataset(tmp_path, [("counter", EXAMPLE_TEXT)], name="pred.tsv")
        preds = load_predictions(ppath, samples)
        assert preds[0].id == "0"
        assert preds[0].stance == "counter"
        assert preds[0].graph_text == EXAMPLE_TEXT

    def test_row_count_mismatch(self, tmp_path):
        samples = load_dataset(write_dataset(tmp_path, [EXAMPLE_ROW]))
        ppath = write_dataset(tmp_path, [("counter", EXAMPLE_TEXT)] * 2, name="p.tsv")
        with pytest.raises(CorpusError, match="row count"):
            load_predictions(ppath, samples)

    def test_bad_columns(self, tmp_path):
        samples = load_dataset(write_dataset(tmp_path, [EXAMPLE_ROW]))
        ppath = write_dataset(tmp_path, [("counter",)], name="p.tsv")
        with pytest.raises(DatasetFormatError):
            load_predictions(ppath, samples)


class TestRunConfig:
    def test_defaults(self):
        cfg = RunConfig()
        assert cfg.similarity == "token-f1"
        assert cfg.ged_aggregation == "min"

    def test_parse_file(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text(
            "# comment\n"
            "\n"
            "ged_aggregation = first\n"
            "parse_mode = strict\n"
            "sidecar_timeout = 2.5\n",
            encoding="utf-8")
        cfg = RunConfig.from_file(path)
        assert cfg.ged_aggregation == "first"
        assert cfg.parse_mode == "strict"
        assert cfg.sidecar_timeout == 2.5

    def test_unknown_key_rejected(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("mystery = 1\n", encoding="utf-8")
        with pytest.raises(DatasetFormatError, match="unknown key"):
            RunConfig.from_file(path)

    def test_bad_value_rejected(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("ged_aggregation = median\n", encoding="utf-8")
        with pytest.raises(DatasetFormatError):
            RunConfig.from_file(path)

    def test_custom_vocabulary(self, tmp_path):
        vpath = tmp_path / "rels.txt"
        vpath.write_text("likes\nnot likes\n", encoding="utf-8")
        cfg = RunConfig(vocabulary=str(vpath))
        assert "likes" in cfg.load_vocabulary()

    def test_builtin_scorers(self):
        cfg = RunConfig()
        assert cfg.similarity_scorer().score("a", "a") == 1.0
        assert 0 <= cfg.stance_scorer().probability("a", "b", "(a; causes; b)",
                                                    "support") <= 1
        assert cfg.graph_classifier().classify("b", "(a; causes; b)") == "support"

    def test_sidecar_clients_are_shared_per_command(self):
        command = f"sidecar {sys.executable} {STUB} ok"
        cfg = RunConfig(similarity=command, classifier=command)
        try:
            sim = cfg.similarity_scorer()
            cls = cfg.graph_classifier()
            assert sim.client is cls.client
            assert sim.score("x y", "x y") == pytest.approx(1.0)
            assert cls.classify("b", "(a; not causes; b)") == "counter"
        finally:
            cfg.close()

    def test_bad_scorer_setting(self):
        with pytest.raises(DatasetFormatError):
            RunConfig(similarity="telepathy").similarity_scorer()


def test_write_report(tmp_path):
    report = MetricReport(per_sample=[
        SampleOutcome(id="0", stance_correct=True, structurally_correct=True,
                      seca_label="counter", seca=True, gbs=1.0, ged=0.0, ea=0.5)])
    out = tmp_path / "report.json"
    text = write_report(report, out)
    assert out.read_text("utf-8").strip() == text.strip()
    assert '"SA": 100.0' in text
    assert '"per_sample"' in text
