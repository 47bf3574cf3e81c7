"""Exception hierarchy shared across the package."""


class BeliefGraphError(Exception):
    """Base class for all package errors."""


class GraphSyntaxError(BeliefGraphError):
    """Malformed linearized graph text.

    ``offset`` is the byte offset into the input where parsing failed.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class SelfLoopError(BeliefGraphError):
    """An edge whose head and tail are the same concept."""


class DuplicateEdgeError(BeliefGraphError):
    """The same (head, relation, tail) triple appears twice."""


class EmptyGraphError(BeliefGraphError):
    """Input text contains no edges."""


class NotADagError(BeliefGraphError):
    """Operation requires a directed acyclic graph."""


class DisconnectedGraphError(BeliefGraphError):
    """Operation requires a (weakly) connected graph."""


class PerturbationInfeasibleError(BeliefGraphError):
    """No structure-preserving perturbation found within the retry budget."""


class VocabularyError(BeliefGraphError):
    """Relation vocabulary file violates the pairing or uniqueness rules."""


class SizeLimitError(BeliefGraphError):
    """Graph exceeds the size bound for exact computation."""


class InfeasibleDecodeError(BeliefGraphError):
    """No edge selection can satisfy the structural constraints."""


class TensorInvariantError(BeliefGraphError):
    """Edge-probability tensor violates one of its invariants."""


class SidecarProtocolError(BeliefGraphError):
    """Sidecar sent a malformed or out-of-contract response."""


class SidecarTimeoutError(BeliefGraphError):
    """Sidecar did not respond within the deadline."""


class CorpusError(BeliefGraphError):
    """Dataset/prediction alignment problem (unknown or duplicate id, row mismatch)."""
