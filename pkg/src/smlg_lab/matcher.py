"""String matching in labeled graphs.

A pattern ``P`` occurs in ``G`` when some walk ``v_1 .. v_|P|`` (nodes may
repeat on cyclic graphs) has ``label(v_i) == P[i]``. Occurrences are free
standing: they need not start at a source or end at a sink.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Sequence

from .model import LabeledGraph, OracleCapExceeded, _require_valid

DEFAULT_NODE_CAP = 64
DEFAULT_PATTERN_CAP = 32


@dataclass
class MatchStats:
    """Counters filled in by :func:`match_online` when passed ``stats=``."""

    relaxations: int = 0
    positions: int = 0


def _check_pattern(p: Sequence[str]) -> tuple[str, ...]:
    tokens = tuple(p)
    if not tokens:
        raise ValueError("pattern must contain at least one token")
    return tokens


def _frontiers(g: LabeledGraph, tokens: tuple[str, ...], stats: MatchStats | None, keep: bool):
    # Active nodes are kept both as a list (iteration) and as a dense byte
    # array over node ids (membership), so each step costs O(edges relaxed).
    labels = g.labels
    succ = g.successors
    frontier = [v for v, label in enumerate(labels) if label == tokens[0]]
    history = [frontier] if keep else None
    relaxations = 0
    for i in range(1, len(tokens)):
        if not frontier:
            break
        want = tokens[i]
        mark = bytearray(len(labels))
        nxt: list[int] = []
        for v in frontier:
            out = succ[v]
            relaxations += len(out)
            for w in out:
                if not mark[w] and labels[w] == want:
                    mark[w] = 1
                    nxt.append(w)
        frontier = nxt
        if keep:
            history.append(frontier)
    if stats is not None:
        stats.relaxations += relaxations
        stats.positions += len(tokens)
    return frontier, history


def match_online(g: LabeledGraph, p: Sequence[str], stats: MatchStats | None = None) -> bool:
    """Decide whether ``p`` spells some walk of ``g``.

    Frontier DP over pattern positions; total work is O(|V| + |E|·|P|).
    """
    tokens = _check_pattern(p)
    _require_valid(g)
    # _frontiers stops at the first empty frontier, so a non-empty result
    # is the frontier of the last position.
    frontier, _ = _frontiers(g, tokens, stats, keep=False)
    return bool(frontier)


def find_match_path(g: LabeledGraph, p: Sequence[str]) -> list[int] | None:
    """Return one walk spelling ``p``, or None when there is no occurrence."""
    tokens = _check_pattern(p)
    _require_valid(g)
    _, history = _frontiers(g, tokens, None, keep=True)
    if len(history) < len(tokens) or not history[-1]:
        return None
    pred = g.predecessors
    v = min(history[-1])
    path = [v]
    for i in range(len(tokens) - 2, -1, -1):
        layer = set(history[i])
        v = min(u for u in pred[v] if u in layer)
        path.append(v)
    path.reverse()
    return path


def verify_witness(g: LabeledGraph, p: Sequence[str], path: Sequence[int]) -> bool:
    """Check a witness walk independently of how it was produced."""
    tokens = tuple(p)
    if len(path) != len(tokens) or not tokens:
        return False
    n = g.num_nodes
    if any(not (0 <= v < n) for v in path):
        return False
    if any(g.labels[v] != t for v, t in zip(path, tokens)):
        return False
    edges = set(g.edges)
    return all((path[i], path[i + 1]) in edges for i in range(len(path) - 1))


def match_bruteforce(
    g: LabeledGraph,
    p: Sequence[str],
    node_cap: int = DEFAULT_NODE_CAP,
    pattern_cap: int = DEFAULT_PATTERN_CAP,
) -> bool:
    """Exhaustive depth-first search over label-consistent walks.

    Test oracle only. Memoizes failed (node, position) pairs, which keeps the
    search polynomial without sharing any code with :func:`match_online`.
    """
    tokens = _check_pattern(p)
    if g.num_nodes > node_cap or len(tokens) > pattern_cap:
        raise OracleCapExceeded(
            f"oracle limited to |V| <= {node_cap} and |P| <= {pattern_cap}, "
            f"got |V| = {g.num_nodes}, |P| = {len(tokens)}"
        )
    adjacency: dict[int, list[int]] = {}
    for u, v in g.edges:
        adjacency.setdefault(u, []).append(v)
    dead: set[tuple[int, int]] = set()
    last = len(tokens) - 1

    def extends(v: int, i: int) -> bool:
        if g.labels[v] != tokens[i]:
            return False
        if i == last:
            return True
        if (v, i) in dead:
            return False
        for w in adjacency.get(v, ()):
            if extends(w, i + 1):
                return True
        dead.add((v, i))
        return False

    limit = sys.getrecursionlimit()
    if len(tokens) + 100 > limit:
        sys.setrecursionlimit(len(tokens) + 100)
    try:
        return any(extends(v, 0) for v in range(g.num_nodes))
    finally:
        sys.setrecursionlimit(limit)
