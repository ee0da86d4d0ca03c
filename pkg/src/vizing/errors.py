"""Exception types shared across the package.

Two families matter to callers:

* `ValueError` subclasses signal bad input or bad parameters (malformed
  graphs, infeasible generator requests, out-of-range knobs).  The CLI maps
  these to exit code 1.

* `InternalError` and its subclasses signal a violated internal invariant of
  the coloring engine — a bug, never a property of the input.  The CLI maps
  these to exit code 2.  The test suite asserts they are never raised.
"""

from __future__ import annotations


class SelfLoop(ValueError):
    """An edge joins a vertex to itself."""


class DuplicateEdge(ValueError):
    """The same vertex pair appears twice in an edge list."""


class VertexOutOfRange(ValueError):
    """An edge endpoint is not in ``0..n-1``."""


class Infeasible(ValueError):
    """A graph generator cannot satisfy its parameters.

    Raised either for plainly inadmissible parameters (odd stub count,
    too many edges requested) or when a randomized generator exhausts its
    retry budget.
    """


class QTooSmall(ValueError):
    """A coloring was requested with fewer than max_degree + 1 colors."""


class EpsilonTooSmall(ValueError):
    """floor(epsilon * max_degree) < 1, so no valid color count exists."""


class InvalidOverride(ValueError):
    """An explicit parameter override violates a correctness floor."""


class BadStart(ValueError):
    """An alternating-path walk was started at a vertex of degree 2 in the
    two-color subgraph, which cannot anchor a maximal path."""


class BoundaryMismatch(ValueError):
    """Two chains were concatenated without a shared boundary edge."""


class PreconditionViolated(ValueError):
    """An engine procedure received arguments outside its contract."""


class InternalError(AssertionError):
    """An internal invariant of the coloring engine failed.

    This is always a bug in the implementation (or memory corruption),
    never a property of the input graph.
    """


class NotShiftable(InternalError):
    """A chain submitted for shifting is not shiftable in the current
    coloring (first edge not blank, or the shift would break properness).

    Only detected when debug validation is enabled; release-mode shifts
    trust their callers.
    """


class InvalidFinalColor(InternalError):
    """The final color of an augmentation conflicts at an endpoint of the
    chain's last edge — the engine produced an unhappy chain."""
