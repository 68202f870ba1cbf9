"""A rank-3 family of exchange matrices that are not skew-symmetrizable.

B(a, b, g) = [[0, 2a, -2ab], [-bg, 0, 2b], [g, -ag, 0]] with abg >= 3.  Every
matrix in its mutation orbit is cyclical, which is certified step by step
through the biased property below.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .matrix import ExchangeMatrix, find_skew_symmetrizer, mutate

__all__ = ["BiasProfile", "CyclicalReport", "b_family", "is_cyclical", "bias_profile", "fuzz_cyclical"]

_PATTERN = ((0, 1, -1), (-1, 0, 1), (1, -1, 0))


def b_family(alpha: int, beta: int, gamma: int) -> ExchangeMatrix:
    if min(alpha, beta, gamma) < 1:
        raise ValueError("alpha, beta, gamma must be positive")
    if alpha * beta * gamma < 3:
        raise ValueError("alpha * beta * gamma must be at least 3")
    a, b, g = alpha, beta, gamma
    return ExchangeMatrix.from_rows([[0, 2 * a, -2 * a * b], [-b * g, 0, 2 * b], [g, -a * g, 0]])


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def _entries(B) -> tuple[tuple[int, ...], ...]:
    rows = B.principal if isinstance(B, ExchangeMatrix) else tuple(tuple(r) for r in B)
    if len(rows) != 3 or any(len(r) != 3 for r in rows):
        raise ValueError("expected a 3x3 matrix")
    return rows


def is_cyclical(B) -> bool:
    """Off-diagonal signs follow the cyclic pattern or its negative."""
    rows = _entries(B)
    signs = tuple(tuple(_sign(x) for x in r) for r in rows)
    neg = tuple(tuple(-x for x in r) for r in _PATTERN)
    return signs in (_PATTERN, neg)


@dataclass(frozen=True)
class BiasProfile:
    c: tuple[int, int, int]
    r: int
    biased: tuple[int, ...]

    def is_biased(self, i: int) -> bool:
        return i in self.biased


def bias_profile(B) -> BiasProfile:
    """c_1, c_2, c_3, r and the (0-based) indices i with r > c_i >= r/2 >= c_j >= 6."""
    b = _entries(B)
    c = (abs(b[1][2] * b[2][1]), abs(b[0][2] * b[2][0]), abs(b[0][1] * b[1][0]))
    r = abs(b[0][1] * b[1][2] * b[2][0])
    biased = tuple(
        i
        for i in range(3)
        if r > c[i] and 2 * c[i] >= r and all(r >= 2 * c[j] and c[j] >= 6 for j in range(3) if j != i)
    )
    return BiasProfile(c, r, biased)


@dataclass
class CyclicalReport:
    alpha: int
    beta: int
    gamma: int
    trials: int
    depth: int
    rng_seed: int
    steps: int = 0
    non_cyclical: list[dict] = field(default_factory=list)
    transition_failures: list[dict] = field(default_factory=list)
    symmetrizable: list[dict] = field(default_factory=list)
    unbiased: list[dict] = field(default_factory=list)
    at_bias_steps: int = 0
    at_bias_outcomes: dict[str, int] = field(default_factory=dict)
    max_entry_bits: int = 0

    @property
    def violations(self) -> int:
        return len(self.non_cyclical) + len(self.transition_failures) + len(self.symmetrizable)

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "gamma": self.gamma,
            "trials": self.trials,
            "depth": self.depth,
            "rng_seed": self.rng_seed,
            "steps": self.steps,
            "violations": self.violations,
            "non_cyclical": self.non_cyclical,
            "transition_failures": self.transition_failures,
            "symmetrizable": self.symmetrizable,
            "unbiased": self.unbiased,
            "at_bias_steps": self.at_bias_steps,
            "at_bias_outcomes": dict(sorted(self.at_bias_outcomes.items())),
            "max_entry_bits": self.max_entry_bits,
            "ok": self.ok,
        }


def fuzz_cyclical(
    alpha: int, beta: int, gamma: int, trials: int = 500, depth: int = 12, rng_seed: int = 0
) -> CyclicalReport:
    """Random mutation sequences (length uniform in 0..depth, indices uniform).

    After every step: the matrix is cyclical and has no skew-symmetrizer, and
    whenever the previous matrix was i-biased for some i != j, the new one is
    cyclical and j-biased.  Steps whose direction is the only bias index of
    the current matrix are outside that statement; their outcome is tallied
    in ``at_bias_outcomes``.
    """
    B0 = b_family(alpha, beta, gamma)
    rng = random.Random(rng_seed)
    report = CyclicalReport(alpha, beta, gamma, trials, depth, rng_seed)
    for t in range(trials):
        length = rng.randint(0, depth)
        seq = [rng.randrange(3) for _ in range(length)]
        B = B0
        prof = bias_profile(B)
        for step, j in enumerate(seq):
            nxt = mutate(B, j)
            new = bias_profile(nxt)
            where = {"trial": t, "step": step, "sequence": seq[: step + 1]}
            report.steps += 1
            report.max_entry_bits = max(report.max_entry_bits, max(abs(x) for r in nxt.rows for x in r).bit_length())
            cyc = is_cyclical(nxt)
            if not cyc:
                report.non_cyclical.append(where)
            if find_skew_symmetrizer(nxt) is not None:
                report.symmetrizable.append(where)
            if any(i != j for i in prof.biased):
                if not (cyc and new.is_biased(j)):
                    report.transition_failures.append(where)
            elif prof.biased:
                report.at_bias_steps += 1
                tag = ("cyclical" if cyc else "not-cyclical") + ";biased=" + ",".join(str(i + 1) for i in new.biased)
                report.at_bias_outcomes[tag] = report.at_bias_outcomes.get(tag, 0) + 1
            if not new.biased:
                report.unbiased.append(where)
            B, prof = nxt, new
    return report
