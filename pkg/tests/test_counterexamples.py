import pytest
from hypothesis import given, strategies as st

from clusterlab.counterexamples import b_family, bias_profile, fuzz_cyclical, is_cyclical
from clusterlab.matrix import ExchangeMatrix, find_skew_symmetrizer, is_sign_skew_symmetric, mutate
from clusterlab.seed import audit_axioms


def test_b_family_entries():
    assert b_family(1, 1, 3).principal == ((0, 2, -2), (-3, 0, 2), (3, -3, 0))
    with pytest.raises(ValueError):
        b_family(1, 1, 2)
    with pytest.raises(ValueError):
        b_family(0, 1, 5)


def test_cyclical():
    assert is_cyclical(b_family(1, 1, 3))
    assert is_cyclical([[0, -1, 1], [1, 0, -1], [-1, 1, 0]])
    assert not is_cyclical([[0, 1, 1], [-1, 0, 1], [-1, -1, 0]])
    with pytest.raises(ValueError):
        is_cyclical([[0, 1], [-1, 0]])


def test_bias_profile_by_hand():
    # c = (|b23 b32|, |b13 b31|, |b12 b21|) = (6, 6, 6), r = |b12 b23 b31| = 12
    p = bias_profile(b_family(1, 1, 3))
    assert p.c == (6, 6, 6) and p.r == 12
    # r > c_i >= r/2 >= c_j >= 6 holds for every i
    assert p.biased == (0, 1, 2)


def test_bias_after_one_step():
    B = mutate(b_family(1, 1, 3), 0)
    assert B.principal == ((0, -2, 2), (3, 0, -4), (-3, 3, 0))
    p = bias_profile(B)
    assert p.c == (12, 6, 6) and p.r == 24 and p.biased == (0,)


@pytest.mark.parametrize("abg", [(1, 1, 3), (1, 3, 1), (2, 2, 1), (1, 1, 4), (3, 1, 1)])
def test_family_not_symmetrizable(abg):
    B = b_family(*abg)
    assert is_sign_skew_symmetric(B) and find_skew_symmetrizer(B) is None


@given(st.sampled_from([(1, 1, 3), (1, 3, 1), (2, 2, 1)]), st.lists(st.integers(0, 2), max_size=10))
def test_orbit_stays_cyclical(abg, ks):
    B = b_family(*abg)
    for k in ks:
        B = mutate(B, k)
        assert is_cyclical(B) and find_skew_symmetrizer(B) is None
        assert bias_profile(B).biased


@given(st.lists(st.integers(0, 2), max_size=6))
def test_family_passes_axiom_audit(ks):
    assert audit_axioms(b_family(2, 2, 1), ks).ok


def test_fuzz_cyclical_report():
    r = fuzz_cyclical(1, 1, 3, trials=50, depth=8, rng_seed=3)
    assert r.ok and r.steps > 0 and r.violations == 0
    d = r.to_dict()
    assert d["ok"] and d["trials"] == 50
    # backtracking steps land on matrices biased in the reversed direction
    assert all(k.startswith("cyclical") for k in r.at_bias_outcomes)


def test_fuzz_cyclical_is_deterministic():
    a = fuzz_cyclical(2, 2, 1, trials=20, rng_seed=5).to_dict()
    assert a == fuzz_cyclical(2, 2, 1, trials=20, rng_seed=5).to_dict()


def test_negative_control_symmetrizable_matrix_is_caught():
    B = ExchangeMatrix.from_rows([[0, 1, -1], [-1, 0, 1], [1, -1, 0]])
    assert is_cyclical(B) and find_skew_symmetrizer(B) == (1, 1, 1)
