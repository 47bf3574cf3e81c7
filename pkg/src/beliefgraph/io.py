"""TSV dataset/prediction ingestion, config parsing and report emission."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import BeliefGraphError, CorpusError
from .graph import parse_graph
from .metrics import MetricReport, Prediction, Sample, STANCES
from .scorers import (
    LexicalOverlapStanceScorer,
    NegationHeuristicClassifier,
    TokenF1Scorer,
)
from .sidecar import (
    SidecarClient,
    SidecarGraphClassifier,
    SidecarSimilarityScorer,
    SidecarStanceScorer,
)
from .vocab import RelationVocabulary


class DatasetFormatError(BeliefGraphError):
    """Bad TSV row; message carries the 1-based row number."""


def load_dataset(path: str | Path) -> list[Sample]:
    """Parse a TSV of belief/argument/stance/graph[/graph2] rows."""
    samples: list[Sample] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            cols = line.split("\t")
            if len(cols) not in (4, 5):
                raise DatasetFormatError(
                    f"row {lineno}: expected 4 or 5 tab-separated columns, got {len(cols)}")
            belief, argument, stance = cols[0], cols[1], cols[2].strip().lower()
            if stance not in STANCES:
                raise DatasetFormatError(f"row {lineno}: bad stance {cols[2]!r}")
            try:
                graphs = tuple(parse_graph(text) for text in cols[3:])
            except BeliefGraphError as exc:
                raise DatasetFormatError(f"row {lineno}: {exc}") from exc
            samples.append(Sample(id=str(len(samples)), belief=belief, argument=argument,
                                  gold_stance=stance, gold_graphs=graphs))
    if not samples:
        raise DatasetFormatError("dataset contains no rows")
    return samples


def load_predictions(path: str | Path, samples: list[Sample]) -> list[Prediction]:
    """Parse a TSV of stance/graph rows, aligned 1:1 with the dataset rows."""
    preds: list[Prediction] = []
    with open(path, encoding="utf-8") as fh:
        rows = [line.rstrip("\n") for line in fh if line.strip()]
    if len(rows) != len(samples):
        raise CorpusError(
            f"prediction row count {len(rows)} does not match dataset row count {len(samples)}")
    for i, line in enumerate(rows):
        cols = line.split("\t")
        if len(cols) != 2:
            raise DatasetFormatError(
                f"prediction row {i + 1}: expected 2 tab-separated columns, got {len(cols)}")
        preds.append(Prediction(id=samples[i].id, stance=cols[0].strip().lower(),
                                graph_text=cols[1]))
    return preds


@dataclass(slots=True)
class RunConfig:
    """Parsed `key = value` config selecting vocabulary, scorers and modes."""

    vocabulary: str | None = None
    similarity: str = "token-f1"          # "token-f1" or "sidecar <command>"
    stance: str = "builtin"               # "builtin" or "sidecar <command>"
    classifier: str = "builtin"           # "builtin" or "sidecar <command>"
    ged_aggregation: str = "min"          # "min" or "first"
    parse_mode: str = "lenient"           # "strict" or "lenient"
    sidecar_timeout: float = 30.0
    _clients: dict = field(default_factory=dict)

    @classmethod
    def from_file(cls, path: str | Path) -> "RunConfig":
        cfg = cls()
        for lineno, line in enumerate(Path(path).read_text("utf-8").splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise DatasetFormatError(f"config line {lineno}: expected 'key = value'")
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if key == "vocabulary":
                cfg.vocabulary = value
            elif key == "similarity":
                cfg.similarity = value
            elif key == "stance":
                cfg.stance = value
            elif key == "classifier":
                cfg.classifier = value
            elif key == "ged_aggregation":
                if value not in ("min", "first"):
                    raise DatasetFormatError(f"config line {lineno}: bad ged_aggregation")
                cfg.ged_aggregation = value
            elif key == "parse_mode":
                if value not in ("strict", "lenient"):
                    raise DatasetFormatError(f"config line {lineno}: bad parse_mode")
                cfg.parse_mode = value
            elif key == "sidecar_timeout":
                cfg.sidecar_timeout = float(value)
            else:
                raise DatasetFormatError(f"config line {lineno}: unknown key {key!r}")
        return cfg

    def load_vocabulary(self) -> RelationVocabulary:
        if self.vocabulary:
            return RelationVocabulary.from_file(self.vocabulary)
        return RelationVocabulary.default()

    def _client(self, command: str) -> SidecarClient:
        if command not in self._clients:
            client = SidecarClient(command, timeout=self.sidecar_timeout)
            client.start()
            self._clients[command] = client
        return self._clients[command]

    def similarity_scorer(self):
        if self.similarity == "token-f1":
            return TokenF1Scorer()
        if self.similarity.startswith("sidecar "):
            return SidecarSimilarityScorer(self._client(self.similarity[len("sidecar "):]))
        raise DatasetFormatError(f"bad similarity setting {self.similarity!r}")

    def stance_scorer(self):
        if self.stance == "builtin":
            return LexicalOverlapStanceScorer()
        if self.stance.startswith("sidecar "):
            return SidecarStanceScorer(self._client(self.stance[len("sidecar "):]))
        raise DatasetFormatError(f"bad stance setting {self.stance!r}")

    def graph_classifier(self):
        if self.classifier == "builtin":
            return NegationHeuristicClassifier()
        if self.classifier.startswith("sidecar "):
            return SidecarGraphClassifier(self._client(self.classifier[len("sidecar "):]))
        raise DatasetFormatError(f"bad classifier setting {self.classifier!r}")

    def close(self) -> None:
        for client in self._clients.values():
            client.close()
        self._clients.clear()


def report_to_dict(report: MetricReport) -> dict:
    return {
        "aggregate": report.aggregate_dict(),
        "per_sample": [o.as_dict() for o in report.per_sample],
    }


def write_report(report: MetricReport, path: str | Path | None) -> str:
    text = json.dumps(report_to_dict(report), indent=2)
    if path is not None:
        Path(path).write_text(text + "\n", encoding="utf-8")
    return text
