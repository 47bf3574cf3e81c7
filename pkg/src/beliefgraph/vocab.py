"""Closed relation vocabulary organized as positive/negated pairs."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import VocabularyError

NEGATION_PREFIX = "not "


@dataclass(frozen=True, slots=True)
class Relation:
    """A single relation with its polarity and paired counterpart."""

    name: str
    positive: bool

    @property
    def counterpart(self) -> str:
        if self.positive:
            return NEGATION_PREFIX + self.name
        return self.name[len(NEGATION_PREFIX):]


class RelationVocabulary:
    """Ordered set of relations; every positive relation has a "not " twin."""

    def __init__(self, names: list[str]):
        seen: dict[str, Relation] = {}
        order: list[Relation] = []
        for raw in names:
            name = " ".join(raw.lower().split())
            if not name:
                continue
            if name in seen:
                raise VocabularyError(f"duplicate relation name: {name!r}")
            rel = Relation(name=name, positive=not name.startswith(NEGATION_PREFIX))
            seen[name] = rel
            order.append(rel)
        for rel in order:
            if rel.counterpart not in seen:
                raise VocabularyError(f"relation {rel.name!r} has no counterpart {rel.counterpart!r}")
        if not order:
            raise VocabularyError("empty vocabulary")
        self._relations = order
        self._by_name = seen

    def __len__(self) -> int:
        return len(self._relations)

    def __iter__(self):
        return iter(self._relations)

    def __contains__(self, name: str) -> bool:
        return " ".join(name.lower().split()) in self._by_name

    @property
    def names(self) -> list[str]:
        return [r.name for r in self._relations]

    @property
    def positive_names(self) -> list[str]:
        return [r.name for r in self._relations if r.positive]

    def index(self, name: str) -> int:
        key = " ".join(name.lower().split())
        for i, rel in enumerate(self._relations):
            if rel.name == key:
                return i
        raise KeyError(name)

    def counterpart(self, name: str) -> str:
        key = " ".join(name.lower().split())
        if key not in self._by_name:
            raise KeyError(name)
        return self._by_name[key].counterpart

    @classmethod
    def from_file(cls, path: str | Path) -> RelationVocabulary:
        """Load from UTF-8 text, one relation name per line; blank lines ignored."""
        text = Path(path).read_text(encoding="utf-8")
        return cls([line for line in text.splitlines() if line.strip()])

    @classmethod
    def default(cls) -> RelationVocabulary:
        """The shipped 28-relation vocabulary (14 positive + 14 negated)."""
        text = resources.files("beliefgraph.data").joinpath("relations.txt").read_text("utf-8")
        return cls([line for line in text.splitlines() if line.strip()])
