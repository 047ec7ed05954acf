"""Shared data model: labeled graphs, patterns, bit-vector sets and their text formats.

All three text formats are line oriented, LF terminated and base-10::

    smlg-graph v1          smlg-pattern v1       ov v1
    nodes 2                B B 1 0 E             1 1 2
    0 a                                          10
    1 b                                          01
    edges 1
    0 1
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

BitVector = tuple[int, ...]

REDUCTION_ALPHABET = frozenset({"B", "E", "0", "1"})

GRAPH_HEADER = "smlg-graph v1"
PATTERN_HEADER = "smlg-pattern v1"
OV_HEADER = "ov v1"


class ParseError(ValueError):
    def __init__(self, lineno: int, message: str) -> None:
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class GraphValidationError(ValueError):
    pass


class OracleCapExceeded(RuntimeError):
    """A brute-force oracle refused an input beyond its configured caps."""


@dataclass(frozen=True)
class Violation:
    kind: str
    index: int
    detail: str

    def __str__(self) -> str:
        return f"{self.kind} at {self.index}: {self.detail}"


@dataclass(frozen=True)
class LabeledGraph:
    """Directed node-labeled graph; node ``i`` carries ``labels[i]``.

    ``alphabet`` is optional. When given, every label must belong to it.
    Construction does not validate; use :func:`validate_graph` or
    :meth:`checked`.
    """

    labels: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]
    alphabet: frozenset[str] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        if self.alphabet is not None:
            object.__setattr__(self, "alphabet", frozenset(self.alphabet))

    @property
    def num_nodes(self) -> int:
        return len(self.labels)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def successors(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in self.labels]
        for u, v in self.edges:
            out[u].append(v)
        return tuple(tuple(s) for s in out)

    @cached_property
    def predecessors(self) -> tuple[tuple[int, ...], ...]:
        into: list[list[int]] = [[] for _ in self.labels]
        for u, v in self.edges:
            into[v].append(u)
        return tuple(tuple(p) for p in into)

    @cached_property
    def violations(self) -> tuple["Violation", ...]:
        return tuple(validate_graph(self))

    def checked(self) -> "LabeledGraph":
        _require_valid(self)
        return self


@dataclass(frozen=True)
class Pattern:
    tokens: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "tokens", tuple(self.tokens))

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[str]:
        return iter(self.tokens)

    def __getitem__(self, i):
        return self.tokens[i]

    def __str__(self) -> str:
        return " ".join(self.tokens)


@dataclass(frozen=True)
class OvInstance:
    X: tuple[BitVector, ...]
    Y: tuple[BitVector, ...]
    d: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "X", tuple(tuple(int(b) for b in x) for x in self.X))
        object.__setattr__(self, "Y", tuple(tuple(int(b) for b in y) for y in self.Y))
        for name, vecs in (("X", self.X), ("Y", self.Y)):
            for i, v in enumerate(vecs):
                if len(v) != self.d:
                    raise ValueError(f"{name}[{i}] has length {len(v)}, expected d={self.d}")
                if any(b not in (0, 1) for b in v):
                    raise ValueError(f"{name}[{i}] is not a bit vector")

    @property
    def N(self) -> int:
        return len(self.X)

    @property
    def M(self) -> int:
        return len(self.Y)


def validate_graph(g: LabeledGraph) -> list[Violation]:
    """Return every invariant violation of ``g``; an empty list means valid."""
    problems: list[Violation] = []
    n = g.num_nodes
    if g.alphabet is not None:
        for i, label in enumerate(g.labels):
            if label not in g.alphabet:
                problems.append(Violation("label outside alphabet", i, repr(label)))
    for i, label in enumerate(g.labels):
        if not isinstance(label, str) or not label or any(c.isspace() for c in label):
            problems.append(Violation("bad label token", i, repr(label)))
    seen: set[tuple[int, int]] = set()
    for k, (u, v) in enumerate(g.edges):
        if not (0 <= u < n and 0 <= v < n):
            problems.append(Violation("dangling edge endpoint", k, f"({u}, {v}) with {n} nodes"))
            continue
        if (u, v) in seen:
            problems.append(Violation("duplicate edge", k, f"({u}, {v})"))
        seen.add((u, v))
    return problems


def _require_valid(g: LabeledGraph) -> None:
    problems = g.violations
    if problems:
        raise GraphValidationError("; ".join(str(p) for p in problems))


def is_deterministic(g: LabeledGraph) -> bool:
    """True iff no node has two out-neighbours sharing a label."""
    _require_valid(g)
    for succ in g.successors:
        labels = [g.labels[w] for w in succ]
        if len(labels) != len(set(labels)):
            return False
    return True


def max_degree_sum(g: LabeledGraph) -> int:
    """Largest in-degree + out-degree over all nodes (0 for an empty graph)."""
    deg = [0] * g.num_nodes
    for u, v in g.edges:
        deg[u] += 1
        deg[v] += 1
    return max(deg, default=0)


def topological_order(g: LabeledGraph) -> list[int] | None:
    """Kahn's algorithm; returns None when ``g`` has a cycle."""
    indeg = [len(p) for p in g.predecessors]
    queue = [v for v, k in enumerate(indeg) if k == 0]
    order: list[int] = []
    while queue:
        v = queue.pop()
        order.append(v)
        for w in g.successors[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return order if len(order) == g.num_nodes else None


def is_dag(g: LabeledGraph) -> bool:
    return topological_order(g) is not None


# -- serialization ---------------------------------------------------------


def _lines(text: str) -> list[str]:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return lines


def _int(token: str, lineno: int, what: str) -> int:
    try:
        value = int(token, 10)
    except ValueError:
        raise ParseError(lineno, f"bad {what} {token!r}") from None
    if value < 0:
        raise ParseError(lineno, f"negative {what} {value}")
    return value


def _expect_header(lines: list[str], header: str) -> None:
    if not lines or lines[0].strip() != header:
        raise ParseError(1, f"expected header {header!r}")


def serialize_graph(g: LabeledGraph) -> str:
    out = [GRAPH_HEADER, f"nodes {g.num_nodes}"]
    out.extend(f"{i} {label}" for i, label in enumerate(g.labels))
    out.append(f"edges {g.num_edges}")
    out.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"


def _counted(line: str, lineno: int, keyword: str) -> int:
    parts = line.split()
    if len(parts) != 2 or parts[0] != keyword:
        raise ParseError(lineno, f"expected '{keyword} <count>'")
    return _int(parts[1], lineno, "count")


def parse_graph(text: str, alphabet: Iterable[str] | None = None) -> LabeledGraph:
    lines = _lines(text)
    _expect_header(lines, GRAPH_HEADER)
    if len(lines) < 2:
        raise ParseError(2, "missing node count")
    n = _counted(lines[1], 2, "nodes")
    if len(lines) < 3 + n:
        raise ParseError(len(lines) + 1, "truncated node list")
    labels: list[str] = []
    for i in range(n):
        lineno = 3 + i
        parts = lines[2 + i].split()
        if len(parts) != 2:
            raise ParseError(lineno, "expected '<id> <token>'")
        if _int(parts[0], lineno, "node id") != i:
            raise ParseError(lineno, f"node ids must be contiguous, expected {i}")
        labels.append(parts[1])
    pos = 2 + n
    m = _counted(lines[pos], pos + 1, "edges")
    if len(lines) != pos + 1 + m:
        raise ParseError(len(lines), f"expected {m} edge lines")
    edges: list[tuple[int, int]] = []
    for k in range(m):
        lineno = pos + 2 + k
        parts = lines[pos + 1 + k].split()
        if len(parts) != 2:
            raise ParseError(lineno, "expected '<src> <dst>'")
        u, v = (_int(t, lineno, "node id") for t in parts)
        if u >= n or v >= n:
            raise ParseError(lineno, f"node id out of range ({u}, {v})")
        edges.append((u, v))
    g = LabeledGraph(tuple(labels), tuple(edges), frozenset(alphabet) if alphabet else None)
    problems = validate_graph(g)
    if problems:
        first = problems[0]
        on_edge = first.kind in ("dangling edge endpoint", "duplicate edge")
        raise ParseError((pos + 2 if on_edge else 3) + first.index, str(first))
    return g


def serialize_pattern(p: Pattern | Sequence[str]) -> str:
    return f"{PATTERN_HEADER}\n{' '.join(p)}\n"


def parse_pattern(text: str) -> Pattern:
    lines = _lines(text)
    _expect_header(lines, PATTERN_HEADER)
    if len(lines) != 2:
        raise ParseError(min(len(lines), 3), "expected exactly one token line")
    return Pattern(tuple(lines[1].split()))


def _bits(line: str, d: int, lineno: int) -> BitVector:
    s = line.strip()
    if len(s) != d or any(c not in "01" for c in s):
        raise ParseError(lineno, f"expected a {d}-character bit string, got {s!r}")
    return tuple(int(c) for c in s)


def serialize_ov(inst: OvInstance) -> str:
    out = [OV_HEADER, f"{inst.N} {inst.M} {inst.d}"]
    out.extend("".join(map(str, v)) for v in inst.X + inst.Y)
    return "\n".join(out) + "\n"


def parse_ov(text: str) -> OvInstance:
    lines = _lines(text)
    _expect_header(lines, OV_HEADER)
    if len(lines) < 2:
        raise ParseError(2, "missing '<N> <M> <d>' line")
    parts = lines[1].split()
    if len(parts) != 3:
        raise ParseError(2, "expected '<N> <M> <d>'")
    n, m, d = (_int(t, 2, "count") for t in parts)
    if len(lines) != 2 + n + m:
        raise ParseError(len(lines), f"expected {n + m} vector lines, got {len(lines) - 2}")
    vecs = [_bits(lines[2 + i], d, 3 + i) for i in range(n + m)]
    return OvInstance(tuple(vecs[:n]), tuple(vecs[n:]), d)
