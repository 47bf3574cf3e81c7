"""Multi-level evaluation: stance gate, structure gate, then GED/G-BS/EA/SeCA.

Gated-out samples (wrong stance or structurally invalid graph) score the
worst case at every later level: GED 1, G-BS 0, EA 0, SeCA false.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .assignment import hungarian
from .errors import CorpusError
from .ged import ged
from .graph import ExplanationGraph, parse_graph, serialize_graph
from .scorers import EdgeSimilarityScorer, GraphStanceClassifier, StanceScorer
from .structure import validate
from .vocab import RelationVocabulary

STANCES = ("support", "counter")


@dataclass(frozen=True, slots=True)
class Sample:
    id: str
    belief: str
    argument: str
    gold_stance: str
    gold_graphs: tuple[ExplanationGraph, ...]

    def __post_init__(self):
        if self.gold_stance not in STANCES:
            raise ValueError(f"bad stance {self.gold_stance!r}")
        if not 1 <= len(self.gold_graphs) <= 2:
            raise ValueError("expected 1 or 2 gold graphs")


@dataclass(frozen=True, slots=True)
class Prediction:
    id: str
    stance: str
    graph_text: str


@dataclass(slots=True)
class SampleOutcome:
    id: str
    stance_correct: bool
    structurally_correct: bool
    seca_label: str | None
    seca: bool
    gbs: float
    ged: float
    ea: float

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "stance_correct": self.stance_correct,
            "structurally_correct": self.structurally_correct,
            "seca_label": self.seca_label,
            "seca": self.seca,
            "gbs": self.gbs,
            "ged": self.ged,
            "ea": self.ea,
        }


@dataclass(slots=True)
class MetricReport:
    """Per-sample outcomes plus corpus aggregates, all aggregates in [0, 1]."""

    per_sample: list[SampleOutcome] = field(default_factory=list)

    @property
    def sa(self) -> float:
        return self._mean(lambda o: float(o.stance_correct))

    @property
    def stca(self) -> float:
        return self._mean(lambda o: float(o.stance_correct and o.structurally_correct))

    @property
    def seca(self) -> float:
        return self._mean(lambda o: float(o.seca))

    @property
    def gbs(self) -> float:
        return self._mean(lambda o: o.gbs)

    @property
    def ged(self) -> float:
        return self._mean(lambda o: o.ged)

    @property
    def ea(self) -> float:
        return self._mean(lambda o: o.ea)

    def _mean(self, f) -> float:
        if not self.per_sample:
            return 0.0
        return sum(f(o) for o in self.per_sample) / len(self.per_sample)

    def aggregate_dict(self) -> dict[str, float]:
        """JSON-facing aggregates: accuracies as percentages, GED/G-BS/EA as fractions."""
        return {
            "SA": 100.0 * self.sa,
            "StCA": 100.0 * self.stca,
            "SeCA": 100.0 * self.seca,
            "GBS": self.gbs,
            "GED": self.ged,
            "EA": self.ea,
        }


def gbs(pred: ExplanationGraph, gold_graphs, scorer: EdgeSimilarityScorer) -> float:
    """Edge-level F1 from a maximum-weight assignment; best match over golds."""
    if not gold_graphs:
        raise ValueError("need at least one gold graph")
    pred_sents = [e.sentence() for e in pred.edges]
    best = 0.0
    for gold in gold_graphs:
        gold_sents = [e.sentence() for e in gold.edges]
        matrix = [[scorer.score(gs, ps) for ps in pred_sents] for gs in gold_sents]
        _, weight = hungarian(matrix)
        p = weight / len(pred_sents)
        r = weight / len(gold_sents)
        f1 = 0.0 if p + r == 0 else 2 * p * r / (p + r)
        best = max(best, f1)
    return best


def ea(sample: Sample, pred_graph: ExplanationGraph, scorer: StanceScorer) -> float:
    """Fraction of edges whose removal strictly drops the stance probability."""
    full_text = serialize_graph(pred_graph)
    full_p = scorer.probability(sample.belief, sample.argument, full_text,
                                sample.gold_stance)
    important = 0
    for i in range(len(pred_graph.edges)):
        # render the reduced edge list directly: it may be disconnected or empty
        reduced = "".join(str(e) for j, e in enumerate(pred_graph.edges) if j != i)
        p = scorer.probability(sample.belief, sample.argument, reduced,
                               sample.gold_stance)
        if p < full_p:
            important += 1
    return important / len(pred_graph.edges)


def seca(sample: Sample, pred_graph: ExplanationGraph,
         classifier: GraphStanceClassifier) -> bool:
    """True iff the belief-graph classifier recovers the gold stance."""
    label = classifier.classify(sample.belief, serialize_graph(pred_graph))
    return label == sample.gold_stance


@dataclass(slots=True)
class EvalConfig:
    ged_aggregation: str = "min"  # "min" over gold graphs, or "first"


def evaluate_sample(sample: Sample, prediction: Prediction, vocab: RelationVocabulary,
                    similarity: EdgeSimilarityScorer, stance: StanceScorer,
                    classifier: GraphStanceClassifier,
                    config: EvalConfig | None = None) -> SampleOutcome:
    config = config or EvalConfig()
    stance_correct = prediction.stance == sample.gold_stance
    pred_graph: ExplanationGraph | None = None
    structurally_correct = False
    try:
        pred_graph = parse_graph(prediction.graph_text)
        report = validate(pred_graph, sample.belief, sample.argument, vocab)
        structurally_correct = report.overall
    except Exception:
        pred_graph = None
    if not (stance_correct and structurally_correct):
        return SampleOutcome(sample.id, stance_correct, structurally_correct,
                             seca_label=None, seca=False, gbs=0.0, ged=1.0, ea=0.0)
    assert pred_graph is not None
    ged_values = [ged(pred_graph, g) for g in sample.gold_graphs]
    ged_value = ged_values[0] if config.ged_aggregation == "first" else min(ged_values)
    label = classifier.classify(sample.belief, serialize_graph(pred_graph))
    return SampleOutcome(
        id=sample.id,
        stance_correct=True,
        structurally_correct=True,
        seca_label=label,
        seca=label == sample.gold_stance,
        gbs=gbs(pred_graph, sample.gold_graphs, similarity),
        ged=ged_value,
        ea=ea(sample, pred_graph, stance),
    )


def evaluate_corpus(samples, predictions, vocab: RelationVocabulary,
                    similarity: EdgeSimilarityScorer, stance: StanceScorer,
                    classifier: GraphStanceClassifier,
                    config: EvalConfig | None = None) -> MetricReport:
    """Evaluate a full corpus; every prediction id must resolve exactly once."""
    by_id: dict[str, Sample] = {}
    for s in samples:
        if s.id in by_id:
            raise CorpusError(f"duplicate sample id {s.id!r}")
        by_id[s.id] = s
    seen: set[str] = set()
    report = MetricReport()
    for pred in predictions:
        if pred.id not in by_id:
            raise CorpusError(f"unknown prediction id {pred.id!r}")
        if pred.id in seen:
            raise CorpusError(f"duplicate prediction id {pred.id!r}")
        seen.add(pred.id)
        report.per_sample.append(
            evaluate_sample(by_id[pred.id], pred, vocab, similarity, stance,
                            classifier, config))
    return report
