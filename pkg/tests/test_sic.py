import numpy as np
import pytest

from smlg_lab.model import is_dag, is_deterministic
from smlg_lab.sic import build_sic_graph, parse_sets, serialize_sets, sic_query

SETS = [{1, 2}, {3}, {2, 3}]


def test_example_sizes():
    g = build_sic_graph(SETS, 3)
    assert g.num_nodes == 9
    # sum of |S^i| = 5 in each direction
    assert g.num_edges == 10
    assert is_dag(g)


def test_example_queries():
    g = build_sic_graph(SETS, 3)
    assert sic_query(g, 1, 3)
    assert not sic_query(g, 1, 2)
    with pytest.raises(ValueError):
        sic_query(g, 0, 1)
    with pytest.raises(ValueError):
        sic_query(g, 1, 4)


def test_single_empty_set():
    g = build_sic_graph([set()], 0)
    assert g.num_nodes == 2 and g.num_edges == 0
    assert not sic_query(g, 1, 1)


def test_nondeterministic_when_set_has_two_elements():
    assert not is_deterministic(build_sic_graph(SETS, 3))


def test_element_out_of_universe():
    with pytest.raises(ValueError):
        build_sic_graph([{1, 5}], 4)


def test_random_families_agree_with_intersection():
    rng = np.random.default_rng(7)
    for _ in range(200):
        n, u = int(rng.integers(1, 11)), int(rng.integers(1, 13))
        sets = [{int(v) for v in np.nonzero(rng.random(u) < 0.3)[0] + 1} for _ in range(n)]
        g = build_sic_graph(sets, u)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                assert sic_query(g, i, j) == bool(sets[i - 1] & sets[j - 1])


def test_set_file_roundtrip():
    sets = [{1, 2}, set(), {3}, set()]
    assert parse_sets(serialize_sets(sets, 4)) == (sets, 4)
