"""Plücker-coordinate oracle for the rank-2 pattern of type A2 in geometric form.

The pattern with b = c = 1 over Trop(q1..q5) with r_m = q_{m-2} q_{m+2} is
realized by 2x2 minors of five vectors in the plane: with indices mod 5,

    y_m = P(2m-1, 2m+1),    q_m = P(2m-2, 2m+2),

where P(a, b) = det(v_a, v_b) for a < b.  Vectors are sorted by angle so every
minor is positive, and every exchange relation is a three-term Plücker
relation.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .laurent import LaurentPoly, evaluate
from .matrix import ExchangeMatrix
from .rank2 import coxeter_number, rank2_matrix, tropical_r
from .seed import Seed, exchange_relation, initial_seed, mutate_seed
from .semifield import Tropical, tuple_to_matrix_rows

__all__ = ["geometric_rank2_matrix", "plucker_points", "minor", "PluckerReport", "verify_plucker"]


def geometric_rank2_matrix(b: int, c: int) -> ExchangeMatrix:
    """B(t_1) with frozen rows encoding u_1 = q_2 / r_2 and u_2 = r_1 / q_1.

    Frozen rows correspond to q_1, ..., q_{h+2}; r_m is the tropical monomial
    from :func:`clusterlab.rank2.tropical_r`.
    """
    h = coxeter_number(b, c)
    if h == math.inf:
        raise ValueError("finite type required")
    p = int(h) + 2
    gens = tuple(f"q{i}" for i in range(1, p + 1))
    u1 = Tropical.generator(gens, 1) / tropical_r(b, c, 2)
    u2 = tropical_r(b, c, 1) / Tropical.generator(gens, 0)
    B = rank2_matrix(b, c)
    return ExchangeMatrix.from_rows(B.principal, tuple_to_matrix_rows((u1, u2)))


def plucker_points(rng: random.Random, count: int = 5, bound: int = 30) -> list[tuple[int, int]]:
    """Integer vectors in the upper half-plane with distinct directions, by increasing angle."""
    pts: dict[Fraction, tuple[int, int]] = {}
    while len(pts) < count:
        x, y = rng.randint(-bound, bound), rng.randint(1, bound)
        pts.setdefault(Fraction(x, y), (x, y))
    return [pts[k] for k in sorted(pts, reverse=True)]


def minor(pts: Sequence[tuple[int, int]], a: int, b: int) -> int:
    """P(a, b) with 1-based indices taken mod len(pts) and sorted."""
    n = len(pts)
    a, b = sorted(((a - 1) % n, (b - 1) % n))
    if a == b:
        raise ValueError("minor of a repeated vector")
    (x1, y1), (x2, y2) = pts[a], pts[b]
    return x1 * y2 - x2 * y1


def _y(pts, m: int) -> int:
    return minor(pts, 2 * m - 1, 2 * m + 1)


def _q(pts, m: int) -> int:
    return minor(pts, 2 * m - 2, 2 * m + 2)


@dataclass
class PluckerReport:
    trials: int
    relations_checked: int = 0
    relation_failures: list[dict] = field(default_factory=list)
    expansion_failures: list[dict] = field(default_factory=list)
    period_failures: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.relation_failures or self.expansion_failures or self.period_failures)

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "relations_checked": self.relations_checked,
            "relation_failures": self.relation_failures,
            "expansion_failures": self.expansion_failures,
            "period_failures": self.period_failures,
            "ok": self.ok,
        }


def _walk(lo: int, hi: int) -> list[tuple[Seed, int, tuple[int, int], int]]:
    """Exchanges along the rank-2 path: (seed, direction, labels before, new label)."""
    names = ("y1", "y2") + tuple(f"q{i}" for i in range(1, 6))
    t1 = initial_seed(geometric_rank2_matrix(1, 1), names=names)
    steps = []
    s, labels = t1, [1, 2]
    for m in range(3, hi + 1):
        k = (m - 3) % 2
        steps.append((s, k, tuple(labels), m))
        s = mutate_seed(s, k)
        labels[k] = m
    s, labels = t1, [1, 2]
    for m in range(0, lo - 1, -1):
        k = 1 - (-m) % 2
        steps.append((s, k, tuple(labels), m))
        s = mutate_seed(s, k)
        labels[k] = m
    return steps


def _monomial_value(exps: Sequence[int], coeff, values: Sequence[int]) -> Fraction:
    out = Fraction(coeff)
    for e, v in zip(exps, values):
        out *= Fraction(v) ** e
    return out


def verify_plucker(trials: int = 20, rng_seed: int = 0, lo: int = -6, hi: int = 13) -> PluckerReport:
    """Check every exchange relation of the walk lo..hi at random Plücker points.

    Also checks that each engine expansion of y_m, evaluated at the initial
    Plücker values, is P(2m-1, 2m+1), and that y_{m+5} = y_m as Laurent
    polynomials.
    """
    steps = _walk(lo, hi)
    expansions: dict[int, LaurentPoly] = {}
    for s, k, _, m in steps:
        expansions[m] = mutate_seed(s, k).cluster[k]
    t1 = steps[0][0]
    expansions[1], expansions[2] = t1.cluster
    report = PluckerReport(trials)
    report.period_failures = [m for m in expansions if m + 5 in expansions and expansions[m] != expansions[m + 5]]
    rng = random.Random(rng_seed)
    for t in range(trials):
        pts = plucker_points(rng)
        qs = [_q(pts, i) for i in range(1, 6)]
        for s, k, labels, m in steps:
            rec = exchange_relation(s, k)
            values = [_y(pts, labels[0]), _y(pts, labels[1])] + qs
            lhs = Fraction(_y(pts, labels[k]) * _y(pts, m))
            rhs = _monomial_value(rec.m1.exps, rec.m1.coeff, values) + _monomial_value(rec.m2.exps, rec.m2.coeff, values)
            report.relations_checked += 1
            if lhs != rhs:
                report.relation_failures.append({"trial": t, "m": m, "labels": list(labels), "points": pts})
        point = [_y(pts, 1), _y(pts, 2)] + qs
        for m, poly in sorted(expansions.items()):
            if evaluate(poly, point) != _y(pts, m):
                report.expansion_failures.append({"trial": t, "m": m, "points": pts})
    return report
