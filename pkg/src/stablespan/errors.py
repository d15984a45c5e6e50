"""Exception hierarchy shared by all stablespan modules."""


class StableSpanError(Exception):
    """Base class for all errors raised by this package."""


class InvalidGraph(StableSpanError):
    """Graph construction violated an invariant (self-loop, bad index, ...)."""


class ZeroWeightEdge(InvalidGraph):
    """An edge with weight 0 was supplied; drop it explicitly instead."""


class DisconnectedGraph(StableSpanError):
    """Operation requires a connected graph."""


class EmptySet(StableSpanError):
    """A nonempty vertex set was required."""


class InvalidSubset(StableSpanError):
    """Subset is not a proper nonempty subset of the vertex set."""


class SizeCapExceeded(StableSpanError):
    """Input is larger than the configured exhaustive-search cap."""


class LeafMismatch(StableSpanError):
    """Decomposition tree leaves do not biject to the graph vertices."""


class MalformedTrace(StableSpanError):
    """A reduction trace references nonexistent vertices or illegal steps."""


class VariableMismatch(StableSpanError):
    """Certificate variables do not partition the polynomial's variables."""


class ZeroPolynomial(StableSpanError):
    """The zero polynomial was supplied where a nonzero one is required."""


class NonpositiveWeight(StableSpanError):
    """A strictly positive weight was required."""


class ParseError(StableSpanError):
    """Malformed graph file or polynomial expression."""
