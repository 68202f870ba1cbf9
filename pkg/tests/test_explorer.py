import json

import pytest

from clusterlab.explorer import (
    ExchangeGraph,
    alternating_cycle,
    canonical_key,
    explore,
    export_dot,
    export_json,
    import_json,
    seeds_equivalent,
)
from clusterlab.laurent import LaurentPoly
from clusterlab.matrix import ExchangeMatrix
from clusterlab.rank2 import rank2_matrix
from clusterlab.seed import Seed, apply_sequence, initial_seed, mutate_seed
from clusterlab.wall import brick_wall_matrix

from cases import cycle_cases

A2 = ExchangeMatrix.from_rows([[0, 1], [-1, 0]])


def test_pentagon():
    g = explore(A2)
    assert g.complete and len(g.seeds) == 5 and len(g.edges) == 5
    assert g.is_regular() and g.is_cycle()
    assert len(g.cluster_variables()) == 5
    assert not g.anomalies


@pytest.mark.parametrize("b,c,h", [(0, 0, 2), (1, 1, 3), (1, 2, 4), (2, 1, 4), (1, 3, 6), (3, 1, 6)])
def test_rank2_cycles(b, c, h):
    g = explore(rank2_matrix(b, c))
    assert g.is_cycle() and len(g.seeds) == h + 2
    assert len(g.cluster_variables()) == h + 2


def test_rank1_is_an_edge():
    g = explore(ExchangeMatrix.from_rows([[0]], [[1], [-1]]))
    assert len(g.seeds) == 2 and len(g.edges) == 1 and g.complete


def test_affine_truncates():
    g = explore(rank2_matrix(2, 2), max_depth=5)
    assert g.status == "truncated" and len(g.seeds) == 11
    assert g.boundary == [v for v in range(11) if g.depth[v] == 5]
    g = explore(rank2_matrix(2, 2), max_vertices=7)
    assert len(g.seeds) == 7 and not g.complete


def test_vertex_limit_validation():
    with pytest.raises(ValueError):
        explore(A2, max_vertices=0)


def test_a3_has_14_vertices():
    g = explore(ExchangeMatrix.from_rows([[0, 1, 0], [-1, 0, 1], [0, -1, 0]]))
    assert g.complete and len(g.seeds) == 14 and len(g.edges) == 21
    assert len(g.cluster_variables()) == 9


def test_b3_and_c3_have_20_vertices():
    for rows in ([[0, 1, 0], [-1, 0, 1], [0, -2, 0]], [[0, 1, 0], [-1, 0, 2], [0, -1, 0]]):
        g = explore(ExchangeMatrix.from_rows(rows))
        assert g.complete and len(g.seeds) == 20


def test_threads_give_identical_graph():
    B = ExchangeMatrix.from_rows([[0, 1, 0], [-1, 0, 1], [0, -1, 0]])
    assert explore(B, threads=4) == explore(B)


def test_canonical_key_is_label_invariant():
    s = apply_sequence(initial_seed(brick_wall_matrix()), [0, 2])
    perm = (2, 0, 1)
    rows = tuple(tuple(s.matrix[perm[a], perm[b]] for b in range(3)) for a in range(3))
    relabeled = Seed(ExchangeMatrix.from_rows(rows), tuple(s.cluster[p] for p in perm), None, s.history, s.names)
    assert canonical_key(relabeled) == canonical_key(s)
    assert canonical_key(relabeled).digest == canonical_key(s).digest
    eq = seeds_equivalent(s, relabeled)
    assert eq.equivalent and eq.condition2 and eq.sigma == perm and not eq.anomaly


def test_same_cluster_different_matrix_is_anomaly():
    s = initial_seed(A2)
    t = Seed(ExchangeMatrix.from_rows([[0, -1], [1, 0]]), s.cluster)
    eq = seeds_equivalent(s, t)
    # clusters agree but exchange data do not
    assert eq.equivalent and eq.condition2 is False and eq.anomaly


def test_edges_carry_exchange_relations():
    g = explore(A2)
    for e in g.edges:
        rec = g.relation(e)
        s = g.seeds[e.source]
        assert rec.lhs_old == s.cluster[e.source_index]
        assert rec.lhs_new == mutate_seed(s, e.source_index).cluster[e.source_index]


def test_vertex_of():
    g = explore(A2)
    s = apply_sequence(initial_seed(A2), [1, 0])
    v = g.vertex_of(s)
    assert v is not None and g.depth[v] == 2


def test_dot_export():
    dot = export_dot(explore(A2))
    assert dot.startswith("graph") and dot.count(" -- ") == 5
    assert "(-1,0) (0,-1)" in dot


def test_json_round_trip():
    g = explore(brick_wall_matrix(), max_depth=3)
    text = export_json(g)
    data = json.loads(text)
    assert data["format"] == "clusterlab-graph-v1"
    assert import_json(text) == g
    assert export_json(import_json(text)) == text


def test_json_rejects_tampering():
    data = json.loads(export_json(explore(A2)))
    data["format"] = "other"
    with pytest.raises(ValueError):
        import_json(json.dumps(data))


def test_brick_wall_truncated_without_anomalies():
    g = explore(brick_wall_matrix(), max_vertices=40)
    assert not g.complete and not g.anomalies and len(g.seeds) == 40


@pytest.mark.parametrize(
    "rows,h",
    [
        ([[0, 0, 1], [0, 0, -1], [-1, 1, 0]], 2),
        ([[0, 1, 1], [-1, 0, 1], [-1, -1, 0]], 3),
        ([[0, 1, 0], [-2, 0, 1], [0, -1, 0]], 4),
    ],
)
def test_alternating_cycle_rank3(rows, h):
    r = alternating_cycle(initial_seed(ExchangeMatrix.from_rows(rows)), 0, 1)
    assert r.ok and r.h == h and len(r.path) == h + 2


def test_alternating_cycle_rejects_large_product():
    s = initial_seed(rank2_matrix(2, 2))
    with pytest.raises(ValueError):
        alternating_cycle(s, 0, 1)
    with pytest.raises(ValueError):
        alternating_cycle(initial_seed(A2), 0, 0)


def test_random_alternating_cycles():
    for s, i, j in cycle_cases(8, rng_seed=7):
        r = alternating_cycle(s, i, j)
        assert r.ok, r
        assert len(r.path) == r.h + 2
