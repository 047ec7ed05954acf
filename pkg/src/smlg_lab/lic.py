"""Index schemes and linear independent-components reductions.

A problem instance is a pair (first, second): ``first`` is what gets indexed,
``second`` is what gets queried. A reduction maps each half independently
(``r_x``, ``r_y``) and maps the target answer back with ``s``. Composing a
reduction with an index scheme for the target problem yields an index scheme
for the source problem with the same cost exponents.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Any, Callable, Sequence

from .matcher import match_online
from .model import BitVector, LabeledGraph, OvInstance, _require_valid
from .ov import solve_ov_bruteforce
from .reduction import Variant, assemble_graph, build_pattern


@dataclass(frozen=True)
class IndexScheme:
    build: Callable[[Any], Any]
    query: Callable[[Any, Any], Any]
    alpha: float = 1.0
    delta: float = 1.0
    beta: float = 1.0
    k: str | None = None
    name: str = "scheme"

    def solve(self, first, second):
        return self.query(self.build(first), second)


@dataclass(frozen=True)
class LicReduction:
    r_x: Callable[[Any], Any]
    r_y: Callable[[Any], Any]
    s: Callable[[Any], Any]
    k: str | None = None
    name: str = "reduction"

    def apply(self, first, second) -> tuple[Any, Any]:
        return self.r_x(first), self.r_y(second)


def _identity(v):
    return v


def identity_reduction() -> LicReduction:
    return LicReduction(_identity, _identity, _identity, None, "identity")


def compose(inner: LicReduction, outer: LicReduction) -> LicReduction:
    """Reduction A -> C from ``inner``: A -> B and ``outer``: B -> C."""
    return LicReduction(
        lambda a: outer.r_x(inner.r_x(a)),
        lambda a: outer.r_y(inner.r_y(a)),
        lambda c: inner.s(outer.s(c)),
        inner.k or outer.k,
        f"{outer.name}∘{inner.name}",
    )


def transfer_index(red: LicReduction, scheme: IndexScheme) -> IndexScheme:
    """Index the source problem by indexing ``r_x(first)`` with ``scheme``.

    Queries map the second input through ``r_y``, ask the target index and
    translate the answer with ``s``. Exponents are unchanged; the reduction
    parameter is attached.
    """

    def build(first):
        return scheme.build(red.r_x(first))

    def query(index, second):
        return red.s(scheme.query(index, red.r_y(second)))

    return replace(
        scheme,
        build=build,
        query=query,
        k=red.k or scheme.k,
        name=f"{scheme.name} via {red.name}",
    )


def _dimension(vectors: Sequence[BitVector]) -> int:
    if not vectors:
        raise ValueError("vector set must be non-empty")
    return len(vectors[0])


def ov_to_smlg_reduction(variant: Variant | str = Variant.CYCLIC) -> LicReduction:
    """X -> reduction graph, Y -> pattern, answer unchanged. Parameter k = d."""
    variant = Variant(variant)

    def r_x(X: Sequence[BitVector]) -> LabeledGraph:
        return assemble_graph(X, _dimension(X), variant).graph

    def r_y(Y: Sequence[BitVector]):
        return build_pattern(Y, _dimension(Y))

    return LicReduction(r_x, r_y, bool, "d", f"ov->smlg[{variant.value}]")


def _build_graph_index(g: LabeledGraph) -> LabeledGraph:
    _require_valid(g)
    g.successors  # noqa: B018 - warm the adjacency cache once at build time
    return g


def matcher_scheme() -> IndexScheme:
    """The trivial graph index: keep the graph, answer queries online."""
    return IndexScheme(_build_graph_index, match_online, 1.0, 1.0, 1.0, None, "online-matcher")


def ov_bruteforce_scheme() -> IndexScheme:
    """Index that stores X and compares every pair at query time."""

    def query(X, Y):
        if not X or not Y:
            return False
        return solve_ov_bruteforce(OvInstance(tuple(X), tuple(Y), len(X[0])))

    return IndexScheme(tuple, query, 1.0, 1.0, 1.0, "d", "ov-bruteforce")
