"""Edit distance between a pattern and the best-matching substring of a text."""

from __future__ import annotations

from typing import Sequence

from .model import OracleCapExceeded

TEXT_CAP = 15
PATTERN_CAP = 8


def edit_distance(a: Sequence, b: Sequence) -> int:
    """Levenshtein distance, unit costs."""
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i] + [0] * len(b)
        for j, cb in enumerate(b, start=1):
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb))
        prev = cur
    return prev[-1]


def substring_edit_distance(text: Sequence, pattern: Sequence) -> int:
    """min over substrings S of ``text`` (including the empty one) of d(S, pattern).

    Column-wise DP over the text with a free start anywhere: the pattern-prefix
    row for the empty prefix is zero at every text position.
    """
    if len(pattern) == 0:
        raise ValueError("pattern must be non-empty")
    m = len(pattern)
    # col[i]: best cost of matching pattern[:i] to a substring ending here.
    col = list(range(m + 1))
    best = col[m]
    for c in text:
        nxt = [0] * (m + 1)
        for i in range(1, m + 1):
            nxt[i] = min(col[i] + 1, nxt[i - 1] + 1, col[i - 1] + (pattern[i - 1] != c))
        col = nxt
        best = min(best, col[m])
    return best


def within(text: Sequence, pattern: Sequence, kappa: int) -> bool:
    return substring_edit_distance(text, pattern) <= kappa


def substring_ed_bruteforce(text: Sequence, pattern: Sequence) -> int:
    """Oracle: try every substring of ``text``. Refuses large inputs."""
    if len(text) > TEXT_CAP or len(pattern) > PATTERN_CAP:
        raise OracleCapExceeded(f"oracle limited to |T| <= {TEXT_CAP}, |P| <= {PATTERN_CAP}")
    if len(pattern) == 0:
        raise ValueError("pattern must be non-empty")
    best = edit_distance((), pattern)
    for i in range(len(text)):
        for j in range(i + 1, len(text) + 1):
            best = min(best, edit_distance(text[i:j], pattern))
    return best
