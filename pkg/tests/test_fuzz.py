import json
import random

from clusterlab.fuzz import fuzz_laurent, random_sequence, random_skew_symmetrizable, run_trial, trial_streams
from clusterlab.matrix import ExchangeMatrix, find_skew_symmetrizer


def test_generator_respects_limits():
    rng = random.Random(0)
    for _ in range(200):
        B = random_skew_symmetrizable(rng, None, 4, 3, 2)
        assert 1 <= B.n <= 4 and B.f <= 2
        assert all(abs(x) <= 3 for r in B.rows for x in r)
        assert find_skew_symmetrizer(B) is not None


def test_sequences():
    rng = random.Random(1)
    for _ in range(100):
        ks = random_sequence(rng, 3, 10)
        assert 1 <= len(ks) <= 10
        assert all(a != b for a, b in zip(ks, ks[1:]))
    assert set(random_sequence(rng, 1, 5)) == {0}


def test_streams_are_deterministic():
    assert trial_streams(9, 5) == trial_streams(9, 5)
    assert trial_streams(9, 5) != trial_streams(10, 5)


def test_run_trial_clean():
    B = ExchangeMatrix.from_rows([[0, 1, 0], [-1, 0, 1], [0, -1, 0]], [[1, 0, -1]])
    r = run_trial(0, B, [0, 1, 2, 0, 1])
    assert r.steps == 5 and r.violation is None and not r.inconsistent_steps and not r.nonpositive
    assert r.status == "done"


def test_small_fuzz_run(tmp_path):
    rep = fuzz_laurent(trials=20, rng_seed=1, max_rank=3, max_entry=2, max_frozen=1, max_len=5, reproducer_dir=tmp_path)
    assert rep.ok and rep.completed == 20 and rep.positivity_failures == 0
    assert list(tmp_path.iterdir()) == []
    data = rep.to_dict()
    assert data["laurent_violations"] == 0 and len(data["results"]) == 20
    assert [t.index for t in rep.trials] == list(range(20))


def test_threads_match_serial():
    a = fuzz_laurent(trials=10, rng_seed=2, max_rank=3, max_entry=2, max_len=4)
    b = fuzz_laurent(trials=10, rng_seed=2, max_rank=3, max_entry=2, max_len=4, threads=3)
    strip = lambda r: [{k: v for k, v in t.to_dict().items() if k != "seconds"} for t in r.trials]  # noqa: E731
    assert strip(a) == strip(b)


def test_budgeted_run_matches_inline():
    kw = dict(trials=6, rng_seed=3, max_rank=3, max_entry=2, max_len=4)
    a = fuzz_laurent(**kw)
    b = fuzz_laurent(**kw, time_budget=60)
    assert b.completed == 6 and b.ok
    assert [t.steps for t in a.trials] == [t.steps for t in b.trials]


def test_budget_exhaustion_is_reported():
    rep = fuzz_laurent(trials=5, rng_seed=0, time_budget=0)
    assert rep.completed == 0 and rep.unfinished == 5 and not rep.ok
    assert {t.status for t in rep.trials} == {"skipped"}


def test_reproducer_written_on_violation(tmp_path, monkeypatch):
    from clusterlab import fuzz

    monkeypatch.setattr(fuzz, "is_positive", lambda p: False)
    B = ExchangeMatrix.from_rows([[0, 1], [-1, 0]])
    r = run_trial(4, B, [0], tmp_path)
    assert len(r.nonpositive) == 1
    (path,) = tmp_path.iterdir()
    assert path.name == "positivity-4-0.json"
    assert json.loads(path.read_text())["history"] == [0]
