"""Randomized Laurent-phenomenon and positivity checks.

Each trial draws a skew-symmetrizable extended matrix and a mutation
sequence from its own RNG stream (derived from a master seed), mutates the
initial seed along the sequence, and checks at every step that

* the exchange produced a Laurent polynomial (no :class:`LaurentViolation`),
* ``old * new`` equals the expanded right-hand side ``M1 + M2``,
* every expansion has positive coefficients (recorded, never asserted).
"""

from __future__ import annotations

import json
import multiprocessing as mp
import random
import time
from multiprocessing.connection import wait
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .laurent import is_positive
from .matrix import ExchangeMatrix
from .seed import LaurentViolation, exchange_relation, expand_monomial, initial_seed, mutate_seed

__all__ = [
    "random_skew_symmetrizable",
    "random_sequence",
    "trial_streams",
    "TrialResult",
    "FuzzReport",
    "run_trial",
    "fuzz_laurent",
]


def random_skew_symmetrizable(
    rng: random.Random,
    rank: int | None = None,
    max_rank: int = 4,
    max_entry: int = 3,
    max_frozen: int = 2,
) -> ExchangeMatrix:
    """Draw a matrix whose principal part is skew-symmetrizable by construction.

    A symmetrizer ``d`` in {1, 2, 3}^n is drawn first.  Each upper entry
    b_ij is then uniform among the values in [-max_entry, max_entry] that make
    b_ji = -d_i b_ij / d_j an integer of magnitude at most max_entry.
    Frozen rows are uniform in [-max_entry, max_entry].
    """
    n = rank if rank is not None else rng.randint(1, max_rank)
    d = [rng.randint(1, 3) for _ in range(n)]
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            choices = [
                s
                for s in range(-max_entry, max_entry + 1)
                if (s * d[i]) % d[j] == 0 and abs(s * d[i] // d[j]) <= max_entry
            ]
            s = rng.choice(choices)
            rows[i][j] = s
            rows[j][i] = -(s * d[i]) // d[j]
    f = rng.randint(0, max_frozen)
    frozen = [[rng.randint(-max_entry, max_entry) for _ in range(n)] for _ in range(f)]
    return ExchangeMatrix.from_rows(rows, frozen)


def random_sequence(rng: random.Random, n: int, max_len: int = 10) -> list[int]:
    """Uniform length in 1..max_len; no index repeats immediately (when n > 1)."""
    length = rng.randint(1, max_len)
    out: list[int] = []
    for _ in range(length):
        choices = [k for k in range(n) if not out or k != out[-1]] if n > 1 else [0]
        out.append(rng.choice(choices))
    return out


def trial_streams(master_seed: int, trials: int) -> list[int]:
    """Per-trial seeds derived from the master seed."""
    master = random.Random(master_seed)
    return [master.getrandbits(64) for _ in range(trials)]


@dataclass
class TrialResult:
    index: int
    matrix: ExchangeMatrix
    sequence: tuple[int, ...]
    steps: int = 0
    violation: dict | None = None
    inconsistent_steps: list[int] = field(default_factory=list)
    nonpositive: list[dict] = field(default_factory=list)
    max_terms: int = 0
    seconds: float = 0.0
    status: str = "done"

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "status": self.status,
            "matrix": self.matrix.to_dict(),
            "sequence": list(self.sequence),
            "steps": self.steps,
            "violation": self.violation,
            "inconsistent_steps": self.inconsistent_steps,
            "nonpositive": self.nonpositive,
            "max_terms": self.max_terms,
            "seconds": round(self.seconds, 6),
        }


@dataclass
class FuzzReport:
    master_seed: int
    trials: list[TrialResult]
    seconds: float = 0.0

    @property
    def violations(self) -> int:
        return sum(1 for t in self.trials if t.violation is not None)

    @property
    def inconsistencies(self) -> int:
        return sum(len(t.inconsistent_steps) for t in self.trials)

    @property
    def positivity_failures(self) -> int:
        return sum(len(t.nonpositive) for t in self.trials)

    @property
    def steps(self) -> int:
        return sum(t.steps for t in self.trials)

    @property
    def completed(self) -> int:
        return sum(1 for t in self.trials if t.status == "done")

    @property
    def unfinished(self) -> int:
        return len(self.trials) - self.completed

    @property
    def ok(self) -> bool:
        return self.violations == 0 and self.inconsistencies == 0 and self.unfinished == 0

    def summary(self) -> dict:
        return {
            "master_seed": self.master_seed,
            "trials": len(self.trials),
            "completed": self.completed,
            "steps": self.steps,
            "laurent_violations": self.violations,
            "inconsistent_steps": self.inconsistencies,
            "positivity_failures": self.positivity_failures,
            "max_terms": max((t.max_terms for t in self.trials), default=0),
            "seconds": round(self.seconds, 3),
        }

    def to_dict(self) -> dict:
        return {**self.summary(), "results": [t.to_dict() for t in self.trials]}


def run_trial(index: int, B: ExchangeMatrix, ks: Sequence[int], reproducer_dir: Path | None = None) -> TrialResult:
    result = TrialResult(index, B, tuple(ks))
    start = time.perf_counter()
    s = initial_seed(B)
    for step, k in enumerate(ks):
        rec = exchange_relation(s, k)
        try:
            nxt = mutate_seed(s, k)
        except LaurentViolation as exc:
            result.violation = exc.dump
            _write_reproducer(reproducer_dir, f"laurent-{index}-{step}.json", exc.dump)
            break
        new = nxt.cluster[k]
        rhs = expand_monomial(s, rec.m1) + expand_monomial(s, rec.m2)
        if s.cluster[k] * new != rhs:
            result.inconsistent_steps.append(step)
        if not is_positive(new):
            dump = {"matrix": B.to_dict(), "history": list(nxt.history), "expansion": new.to_json()}
            result.nonpositive.append(dump)
            _write_reproducer(reproducer_dir, f"positivity-{index}-{step}.json", dump)
        result.max_terms = max(result.max_terms, len(new))
        result.steps += 1
        s = nxt
    result.seconds = time.perf_counter() - start
    return result


def _write_reproducer(directory: Path | None, name: str, dump: dict) -> None:
    if directory is None:
        return
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    (directory / name).write_text(json.dumps(dump, sort_keys=True, indent=1))


def fuzz_laurent(
    trials: int = 200,
    rng_seed: int = 0,
    rank: int | None = None,
    max_rank: int = 4,
    max_entry: int = 3,
    max_frozen: int = 2,
    max_len: int = 10,
    threads: int = 1,
    reproducer_dir: Path | str | None = None,
    time_budget: float | None = None,
    trial_timeout: float | None = None,
) -> FuzzReport:
    """Run ``trials`` independent trials; results are ordered by trial index.

    With ``time_budget`` (seconds) each trial runs in a forked child process
    and whatever is still running when the budget is spent is killed.  Such
    trials get status "timeout"; trials never started get "skipped".
    ``trial_timeout`` additionally caps each trial (and implies isolation).
    """
    directory = Path(reproducer_dir) if reproducer_dir is not None else None
    jobs = []
    for idx, seed in enumerate(trial_streams(rng_seed, trials)):
        rng = random.Random(seed)
        B = random_skew_symmetrizable(rng, rank, max_rank, max_entry, max_frozen)
        jobs.append((idx, B, random_sequence(rng, B.n, max_len)))
    start = time.perf_counter()
    if time_budget is not None or trial_timeout is not None:
        deadline = start + time_budget if time_budget is not None else float("inf")
        results = _run_budgeted(jobs, directory, max(threads, 1), deadline, trial_timeout)
    elif threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(lambda j: run_trial(*j, directory), jobs))
    else:
        results = [run_trial(*j, directory) for j in jobs]
    return FuzzReport(rng_seed, results, time.perf_counter() - start)


def _child(conn, job, directory) -> None:
    conn.send(run_trial(*job, directory))
    conn.close()


def _run_budgeted(
    jobs: list, directory: Path | None, workers: int, deadline: float, trial_timeout: float | None
) -> list[TrialResult]:
    ctx = mp.get_context("fork")
    results: dict[int, TrialResult] = {}
    active: dict = {}
    pending = list(jobs)
    while pending or active:
        while pending and len(active) < workers and time.perf_counter() < deadline:
            job = pending.pop(0)
            recv, send = ctx.Pipe(duplex=False)
            proc = ctx.Process(target=_child, args=(send, job, directory), daemon=True)
            proc.start()
            send.close()
            active[recv] = (proc, job, time.perf_counter())
        if not active:
            break
        cutoff = {c: min(deadline, began + trial_timeout) if trial_timeout else deadline for c, (_, _, began) in active.items()}
        remaining = min(cutoff.values()) - time.perf_counter()
        ready = wait(list(active), timeout=remaining) if remaining > 0 else []
        for conn in ready:
            proc, job, _ = active.pop(conn)
            try:
                results[job[0]] = conn.recv()
            except EOFError:
                results[job[0]] = TrialResult(job[0], job[1], tuple(job[2]), status="crashed")
            proc.join()
        now = time.perf_counter()
        for conn in [c for c in active if cutoff[c] <= now]:
            proc, job, began = active.pop(conn)
            proc.kill()
            proc.join()
            results[job[0]] = TrialResult(job[0], job[1], tuple(job[2]), seconds=now - began, status="timeout")
    for idx, B, ks in pending:
        results[idx] = TrialResult(idx, B, tuple(ks), status="skipped")
    return [results[j[0]] for j in jobs]
