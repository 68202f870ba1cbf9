import random

import pytest

from clusterlab.grassmannian import geometric_rank2_matrix, minor, plucker_points, verify_plucker


def test_geometric_matrix():
    B = geometric_rank2_matrix(1, 1)
    assert B.principal == ((0, -1), (1, 0))
    # u1 = q2 / (q4 q5), u2 = q3 q4 / q1; rows are q1..q5
    assert B.frozen_rows == ((0, -1), (1, 0), (0, 1), (-1, 1), (-1, 0))
    with pytest.raises(ValueError):
        geometric_rank2_matrix(2, 2)


def test_points_give_positive_minors():
    pts = plucker_points(random.Random(1))
    assert all(minor(pts, a, b) > 0 for a in range(1, 6) for b in range(a + 1, 6))


def test_three_term_relation_by_hand():
    pts = [(1, 0), (1, 1), (0, 1), (-1, 2), (-1, 1)]
    P = lambda a, b: minor(pts, a, b)  # noqa: E731
    assert P(1, 3) * P(2, 4) == P(1, 2) * P(3, 4) + P(1, 4) * P(2, 3)


def test_minor_rejects_repeat():
    with pytest.raises(ValueError):
        minor([(1, 0), (0, 1)], 1, 3)


def test_verify_plucker():
    r = verify_plucker(trials=10, rng_seed=4)
    assert r.ok, r.to_dict()
    assert r.relations_checked == 10 * 18
