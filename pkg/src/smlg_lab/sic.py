"""Set intersection queries as string matching on a three-layer DAG.

Sets S^1..S^n over [1..u] become source nodes ``s<i>``, sink nodes ``t<i>``
and one ``A`` node per universe element; S^i and S^j intersect iff the
pattern ``s<i> A t<j>`` occurs.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .matcher import match_online
from .model import LabeledGraph, ParseError, _int, _lines

SIC_HEADER = "sic v1"
ELEMENT = "A"


def _universe(sets: Sequence[Iterable[int]]) -> int:
    return max((max(s) for s in sets if s), default=0)


def build_sic_graph(sets: Sequence[Iterable[int]], u: int | None = None) -> LabeledGraph:
    """Sources 0..n-1, elements n..n+u-1, sinks n+u..2n+u-1."""
    sets = [sorted(set(s)) for s in sets]
    if not sets:
        raise ValueError("need at least one set")
    if u is None:
        u = _universe(sets)
    for i, members in enumerate(sets, start=1):
        for v in members:
            if not 1 <= v <= u:
                raise ValueError(f"element {v} of set {i} is outside [1..{u}]")
    n = len(sets)
    labels = [f"s{i}" for i in range(1, n + 1)] + [ELEMENT] * u + [f"t{i}" for i in range(1, n + 1)]
    edges = [(i, n + v - 1) for i, members in enumerate(sets) for v in members]
    edges += [(n + v - 1, n + u + i) for i, members in enumerate(sets) for v in members]
    return LabeledGraph(tuple(labels), tuple(edges))


def sic_set_count(g: LabeledGraph) -> int:
    return sum(1 for label in g.labels if label.startswith("s"))


def sic_query(g: LabeledGraph, i: int, j: int) -> bool:
    """Do S^i and S^j intersect? Indices are 1-based."""
    n = sic_set_count(g)
    for idx in (i, j):
        if not 1 <= idx <= n:
            raise ValueError(f"set index {idx} outside [1..{n}]")
    return match_online(g, (f"s{i}", ELEMENT, f"t{j}"))


def serialize_sets(sets: Sequence[Iterable[int]], u: int) -> str:
    rows = [" ".join(str(v) for v in sorted(set(s))) for s in sets]
    return "\n".join([SIC_HEADER, f"{len(rows)} {u}", *rows]) + "\n"


def parse_sets(text: str) -> tuple[list[set[int]], int]:
    lines = _lines(text)
    if not lines or lines[0].strip() != SIC_HEADER:
        raise ParseError(1, f"expected header {SIC_HEADER!r}")
    if len(lines) < 2 or len(lines[1].split()) != 2:
        raise ParseError(2, "expected '<n> <u>'")
    n, u = (_int(t, 2, "count") for t in lines[1].split())
    body = lines[2:]
    # An empty last set serializes as a trailing blank line that _lines drops.
    if len(body) == n - 1:
        body.append("")
    if len(body) != n:
        raise ParseError(len(lines), f"expected {n} set lines")
    sets = []
    for k, line in enumerate(body):
        members = {_int(t, 3 + k, "element") for t in line.split()}
        for v in members:
            if not 1 <= v <= u:
                raise ParseError(3 + k, f"element {v} outside [1..{u}]")
        sets.append(members)
    return sets, u
