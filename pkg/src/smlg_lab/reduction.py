"""OV -> string matching in labeled graphs.

The graph is built from X alone and the pattern from Y alone. A pattern
block ``B P_y E`` can cross a component only along its d layers, so:

* a W component for x admits the block iff x·y = 0;
* a universal component admits every block.

The full pattern ``B (B P_y1 E) ... (B P_yM E) E`` is forced to start at the
source ``s`` (the only B node with a B successor) and end at the sink ``t``
(the only E node with an E predecessor). Every s..t route crosses exactly one
W component, with some prefix of the blocks absorbed by the top universal
chain and the remaining suffix by the bottom chain. The cyclic variant adds a
self-loop around the first top and last bottom component, so arbitrarily
many blocks fit.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .model import REDUCTION_ALPHABET, BitVector, LabeledGraph, Pattern

B, E, ZERO, ONE = "B", "E", "0", "1"


class Variant(str, Enum):
    ACYCLIC = "acyclic"
    CYCLIC = "cyclic"


class ComponentKind(str, Enum):
    W = "W"
    UNIVERSAL = "Universal"


@dataclass(frozen=True)
class GadgetComponent:
    """A B-entry, d layers of 0/1 nodes, and an E-exit.

    Node ids are relative to ``offset``. ``labels`` and ``edges`` describe the
    component in local ids (entry is local 0, exit is the last local id).
    """

    kind: ComponentKind
    layers: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]
    offset: int = 0

    @property
    def entry(self) -> int:
        return self.offset

    @property
    def exit(self) -> int:
        return self.offset + len(self.labels) - 1

    @property
    def size(self) -> int:
        return len(self.labels)

    def at(self, offset: int) -> "GadgetComponent":
        shift = offset - self.offset
        layers = tuple(tuple(v + shift for v in layer) for layer in self.layers)
        return GadgetComponent(self.kind, layers, self.labels, self.edges, offset)

    def global_edges(self) -> list[tuple[int, int]]:
        return [(u + self.offset, v + self.offset) for u, v in self.edges]

    def as_graph(self) -> LabeledGraph:
        return LabeledGraph(self.labels, self.edges, REDUCTION_ALPHABET)


def _component(kind: ComponentKind, layer_tokens: Sequence[Sequence[str]]) -> GadgetComponent:
    labels = [B]
    layers: list[tuple[int, ...]] = []
    for tokens in layer_tokens:
        ids = []
        for tok in tokens:
            ids.append(len(labels))
            labels.append(tok)
        layers.append(tuple(ids))
    labels.append(E)
    exit_id = len(labels) - 1
    edges = [(0, v) for v in layers[0]]
    for prev, nxt in zip(layers, layers[1:]):
        edges.extend((u, v) for u in prev for v in nxt)
    edges.extend((u, exit_id) for u in layers[-1])
    return GadgetComponent(kind, tuple(layers), tuple(labels), tuple(edges))


def build_w_component(x: BitVector) -> GadgetComponent:
    """Component for x: layer h offers 0 always, and 1 only where x[h] == 0."""
    if len(x) < 1:
        raise ValueError("vectors must have dimension d >= 1")
    return _component(ComponentKind.W, [(ZERO, ONE) if b == 0 else (ZERO,) for b in x])


def build_universal_component(d: int) -> GadgetComponent:
    if d < 1:
        raise ValueError("d must be >= 1")
    return _component(ComponentKind.UNIVERSAL, [(ZERO, ONE)] * d)


def build_pattern(Y: Sequence[BitVector], d: int) -> Pattern:
    """``B B P_y1 E B P_y2 E ... B P_yM E E`` with P_y[h] = '1' iff y[h] = 1."""
    if not Y:
        raise ValueError("Y must contain at least one vector")
    tokens = [B]
    for i, y in enumerate(Y):
        if len(y) != d:
            raise ValueError(f"Y[{i}] has length {len(y)}, expected d={d}")
        tokens.append(B)
        tokens.extend(ONE if b else ZERO for b in y)
        tokens.append(E)
    tokens.append(E)
    return Pattern(tuple(tokens))


def pattern_length(M: int, d: int) -> int:
    return M * (d + 2) + 2


@dataclass(frozen=True)
class ReductionGraph:
    graph: LabeledGraph
    start: int
    end: int
    top_chain: tuple[GadgetComponent, ...]
    w_components: tuple[GadgetComponent, ...]
    bottom_chain: tuple[GadgetComponent, ...]
    variant: Variant
    back_edges: tuple[tuple[int, int], ...]

    @property
    def chain_length(self) -> int:
        return len(self.top_chain)


def chain_length(N: int) -> int:
    return max(1, 2 * N - 2)


def size_bound(N: int, d: int) -> int:
    """Upper bound on |V| of an assembled graph."""
    K = chain_length(N)
    return 2 + (2 * K + N) * (2 * d + 2)


def assemble_graph(X: Sequence[BitVector], d: int, variant: Variant | str = Variant.CYCLIC) -> ReductionGraph:
    """Build the reduction graph for X.

    Layout: s = 0, t = 1, then top chain, W components and bottom chain in
    order, each component occupying a contiguous id block. Ids depend only on
    X and d.
    """
    variant = Variant(variant)
    if not X:
        raise ValueError("X must contain at least one vector")
    for j, x in enumerate(X):
        if len(x) != d:
            raise ValueError(f"X[{j}] has length {len(x)}, expected d={d}")
    K = chain_length(len(X))
    universal = build_universal_component(d)

    offset = 2
    placed: list[GadgetComponent] = []

    def place(comp: GadgetComponent) -> GadgetComponent:
        nonlocal offset
        comp = comp.at(offset)
        offset += comp.size
        placed.append(comp)
        return comp

    top = tuple(place(universal) for _ in range(K))
    ws = tuple(place(build_w_component(x)) for x in X)
    bottom = tuple(place(universal) for _ in range(K))

    labels = [B, E]
    edges: list[tuple[int, int]] = []
    for comp in placed:
        labels.extend(comp.labels)
        edges.extend(comp.global_edges())

    s, t = 0, 1
    edges.extend((s, u.entry) for u in top)
    edges.extend((a.exit, b.entry) for a, b in zip(top, top[1:]))
    edges.extend((top[-1].exit, w.entry) for w in ws)
    edges.extend((s, w.entry) for w in ws)
    for w in ws:
        edges.append((w.exit, t))
        edges.append((w.exit, bottom[0].entry))
    edges.extend((a.exit, b.entry) for a, b in zip(bottom, bottom[1:]))
    edges.extend((u.exit, t) for u in bottom)

    back: tuple[tuple[int, int], ...] = ()
    if variant is Variant.CYCLIC:
        back = ((top[0].exit, top[0].entry), (bottom[-1].exit, bottom[-1].entry))
        edges.extend(back)

    graph = LabeledGraph(tuple(labels), tuple(edges), REDUCTION_ALPHABET)
    return ReductionGraph(graph, s, t, top, ws, bottom, variant, back)


def adjacent_label_pairs(g: LabeledGraph, first: str, second: str) -> list[tuple[int, int]]:
    return [(u, v) for u, v in g.edges if g.labels[u] == first and g.labels[v] == second]
