"""Finding d-local cutvertices.

A vertex ``v`` is a *d-local cutvertex* when the ball of diameter ``d``
around ``v``, punctured at ``v``, falls apart into at least two connected
components.  Isolated vertices and leaves are never local cutvertices (the
punctured ball is empty or has a single component), and a vertex whose
punctured ball is empty does not count as one.

Each vertex is tested independently against the shared immutable graph, so
the scan is a parallel map; results are aggregated into a deterministic
sorted list that does not depend on the worker count.
"""

from __future__ import annotations

from .errors import PreconditionError
from .graph import Graph, VertexPartition, components
from ._kernels import cutvertex_scan


def find_local_cutvertices(graph: Graph, d: int, jobs: int | None = None) -> list[int]:
    """All d-local cutvertices of ``graph``, sorted ascending.

    ``jobs`` caps the number of worker threads; the output is identical
    for every value.  ``d`` must be at least 1; ``d == 2`` is legal but
    degenerate (balls are stars), the pipeline defaults to odd ``d >= 3``.
    """
    if d < 1:
        raise PreconditionError(f"locality d must be >= 1, got {d}")
    flags, _ = cutvertex_scan(graph, d, jobs=jobs)
    return [int(v) for v in flags.nonzero()[0]]


def local_blocks(graph: Graph, cutvertices) -> VertexPartition:
    """Clusters left after deleting all local cutvertices.

    These are the connected components of ``G`` minus the cutvertex set;
    they become the bag contents of the adhesion-one decomposition.
    """
    return components(graph, removed=cutvertices)
