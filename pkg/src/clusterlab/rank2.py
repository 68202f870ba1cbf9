"""Rank 2: Weyl group, real roots, denominators, and coefficient periodicity.

Conventions.  The initial matrix is ``B(t_1) = [[0, -b], [c, 0]]`` with
cluster ``(y_1, y_2)``.  Exchanging index 0, 1, 0, ... produces y_3, y_4, ...
and exchanging 1, 0, 1, ... produces y_0, y_{-1}, ....  ``<m>`` is 1 for odd m
and 2 for even m.  Roots and coroots are integer pairs in the basis of simple
(co)roots; matrices act on column vectors.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .laurent import LaurentPoly, denominator_vector
from .matrix import ExchangeMatrix
from .seed import initial_seed, mutate_seed
from .semifield import PositiveRational, SemifieldElem, Tropical

__all__ = [
    "bracket",
    "coxeter_number",
    "simple_reflections",
    "weyl_word_action",
    "rank2_matrix",
    "denominator_sequence",
    "root_formula",
    "positive_roots",
    "engine_sequence",
    "engine_denominators",
    "verify_denominator_theorem",
    "u_sequence",
    "verify_periodicity",
    "c_coefficient",
    "r_from_q",
    "tropical_r",
    "verify_r_from_q",
    "verify_tropical_chains",
]

Root = tuple[int, int]
Mat = tuple[tuple[int, int], tuple[int, int]]

_IDENTITY: Mat = ((1, 0), (0, 1))


def bracket(m: int) -> int:
    return 1 if m % 2 else 2


def _check_bc(b: int, c: int) -> None:
    if b < 0 or c < 0 or (b == 0) != (c == 0):
        raise ValueError(f"b and c must be both positive or both zero, got ({b}, {c})")


def coxeter_number(b: int, c: int) -> float:
    """Order of s1 s2: 2, 3, 4, 6 for bc = 0..3 and infinity beyond."""
    _check_bc(b, c)
    return {0: 2, 1: 3, 2: 4, 3: 6}.get(b * c, math.inf)


def _mul(a: Mat, b: Mat) -> Mat:
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def _apply(m: Mat, v: Root) -> Root:
    return (m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1])


def simple_reflections(b: int, c: int, coroot: bool = False) -> tuple[Mat, Mat]:
    """(s1, s2) on the root lattice, or on the coroot lattice (b and c swap roles)."""
    _check_bc(b, c)
    if coroot:
        b, c = c, b
    return ((-1, b), (0, 1)), ((1, 0), (c, -1))


def weyl_word_action(b: int, c: int, which: int, m: int, coroot: bool = False) -> Mat:
    """Matrix of w_which(m): the alternating product of length m starting with s_which."""
    if which not in (1, 2):
        raise ValueError("which must be 1 or 2")
    if m < 0:
        raise ValueError("word length must be nonnegative")
    s = simple_reflections(b, c, coroot)
    out = _IDENTITY
    idx = which - 1
    for _ in range(m):
        out = _mul(out, s[idx])
        idx ^= 1
    return out


def _simple(i: int) -> Root:
    return (1, 0) if i == 1 else (0, 1)


def rank2_matrix(b: int, c: int) -> ExchangeMatrix:
    _check_bc(b, c)
    return ExchangeMatrix.from_rows([[0, -b], [c, 0]])


def denominator_sequence(b: int, c: int, lo: int, hi: int) -> dict[int, Root]:
    """delta(m) for lo <= m <= hi from the piecewise-linear recurrence."""
    _check_bc(b, c)
    if lo > 1 or hi < 2:
        raise ValueError("range must contain 1 and 2")
    seq: dict[int, Root] = {1: (-1, 0), 2: (0, -1)}

    def step(m: int, mid: Root, other: Root) -> Root:
        k = b if m % 2 else c
        return (k * max(mid[0], 0) - other[0], k * max(mid[1], 0) - other[1])

    for m in range(2, hi):
        seq[m + 1] = step(m, seq[m], seq[m - 1])
    for m in range(1, lo, -1):
        seq[m - 1] = step(m, seq[m], seq[m + 1])
    return {m: seq[m] for m in range(lo, hi + 1)}


def root_formula(b: int, c: int, m: int) -> Root:
    """delta(m) from Weyl words: w1(m-3) alpha_<m-2> for m >= 3, w2(-m) alpha_<2-m> for m <= 0.

    In the finite case the m >= 3 branch is used with m reduced into 1..h+2
    by periodicity.
    """
    h = coxeter_number(b, c)
    if h != math.inf:
        m = (m - 1) % (h + 2) + 1
    if m == 1:
        return (-1, 0)
    if m == 2:
        return (0, -1)
    if m >= 3:
        k = m - 3
        return _apply(weyl_word_action(b, c, 1, k), _simple(bracket(k + 1)))
    k = -m
    return _apply(weyl_word_action(b, c, 2, k), _simple(bracket(k + 2)))


def positive_roots(b: int, c: int, max_roots: int = 64) -> set[Root]:
    """Positive real roots from the Weyl orbit of the simple roots.

    Breadth-first closure under s1 and s2, keeping nonnegative vectors.  In
    the infinite case the search stops after ``max_roots`` roots are found.
    """
    s1, s2 = simple_reflections(b, c)
    seen = {(1, 0), (0, 1), (-1, 0), (0, -1)}
    frontier = [(1, 0), (0, 1)]
    while frontier:
        nxt = []
        for v in frontier:
            for s in (s1, s2):
                w = _apply(s, v)
                if w not in seen:
                    seen.add(w)
                    seen.add((-w[0], -w[1]))
                    nxt.append(w)
        frontier = nxt
        if sum(1 for r in seen if r[0] >= 0 and r[1] >= 0) >= max_roots:
            break
    return {r for r in seen if r[0] >= 0 and r[1] >= 0}


def engine_sequence(b: int, c: int, lo: int, hi: int) -> dict[int, LaurentPoly]:
    """y_m for lo <= m <= hi, expanded by the seed engine with trivial coefficients."""
    if lo > 1 or hi < 2:
        raise ValueError("range must contain 1 and 2")
    s0 = initial_seed(rank2_matrix(b, c), names=("y1", "y2"))
    out = {1: s0.cluster[0], 2: s0.cluster[1]}
    s = s0
    for m in range(3, hi + 1):
        k = (m - 3) % 2
        s = mutate_seed(s, k)
        out[m] = s.cluster[k]
    s = s0
    for m in range(0, lo - 1, -1):
        k = 1 - (-m) % 2
        s = mutate_seed(s, k)
        out[m] = s.cluster[k]
    return {m: out[m] for m in range(lo, hi + 1)}


def engine_denominators(b: int, c: int, lo: int, hi: int) -> dict[int, Root]:
    return {m: denominator_vector(y) for m, y in engine_sequence(b, c, lo, hi).items()}  # type: ignore[misc]


@dataclass
class DenominatorReport:
    b: int
    c: int
    h: float
    rows: list[tuple[int, Root, Root, Root]]
    mismatches: list[int] = field(default_factory=list)
    period_failures: list[int] = field(default_factory=list)
    repeated: list[tuple[int, int]] = field(default_factory=list)
    census_ok: bool | None = None

    @property
    def ok(self) -> bool:
        return not (self.mismatches or self.period_failures or self.repeated) and self.census_ok is not False

    def to_dict(self) -> dict:
        return {
            "b": self.b,
            "c": self.c,
            "h": None if self.h == math.inf else self.h,
            "rows": [
                {"m": m, "recurrence": list(a), "root_formula": list(r), "engine": list(e)} for m, a, r, e in self.rows
            ],
            "mismatches": self.mismatches,
            "period_failures": self.period_failures,
            "repeated": [list(p) for p in self.repeated],
            "census_ok": self.census_ok,
            "ok": self.ok,
        }


def verify_denominator_theorem(b: int, c: int, lo: int = 1, hi: int = 20) -> DenominatorReport:
    """Compare recurrence, Weyl-word formula and engine denominators on lo..hi.

    Finite case: also checks delta(m + h + 2) = delta(m) and that
    delta(3..h+2) is exactly the set of positive roots.  Infinite case:
    checks that all denominators in the window are distinct.
    """
    h = coxeter_number(b, c)
    rec = denominator_sequence(b, c, lo, hi)
    eng = engine_denominators(b, c, lo, hi)
    rows = []
    report = DenominatorReport(b, c, h, rows)
    for m in range(lo, hi + 1):
        formula = root_formula(b, c, m)
        rows.append((m, rec[m], formula, eng[m]))
        if not rec[m] == formula == eng[m]:
            report.mismatches.append(m)
    if h != math.inf:
        p = int(h) + 2
        report.period_failures = [m for m in range(lo, hi + 1 - p) if eng[m] != eng[m + p]]
        if lo <= 3 and hi >= p:
            report.census_ok = {eng[m] for m in range(3, p + 1)} == positive_roots(b, c) and (
                eng[1],
                eng[2],
            ) == ((-1, 0), (0, -1))
    else:
        seen: dict[Root, int] = {}
        for m in range(lo, hi + 1):
            if eng[m] in seen:
                report.repeated.append((seen[eng[m]], m))
            seen[eng[m]] = m
    return report


def u_sequence(u1: SemifieldElem, u2: SemifieldElem, b: int, c: int, length: int) -> list[SemifieldElem]:
    """[u_1, ..., u_length] with u_{m+1} = (1 + u_m)^e / u_{m-1}, e = c for odd m, b for even m.

    The semifield is the one ``u1`` and ``u2`` belong to.
    """
    _check_bc(b, c)
    u1._check(u2)
    seq = [u1, u2]
    one = u1.one()
    for m in range(2, length):
        e = c if m % 2 else b
        seq.append((one + seq[m - 1]) ** e / seq[m - 2])
    return seq[:length]


@dataclass
class PeriodicityReport:
    b: int
    c: int
    trials: int
    period: int | None
    u_failures: int = 0
    engine_ok: bool | None = None
    shortest_u_period: int | None = None

    @property
    def ok(self) -> bool:
        if self.period is None:
            return self.shortest_u_period is None and self.engine_ok is not False
        return self.u_failures == 0 and self.engine_ok is True

    def to_dict(self) -> dict:
        return {
            "b": self.b,
            "c": self.c,
            "trials": self.trials,
            "period": self.period,
            "u_failures": self.u_failures,
            "engine_ok": self.engine_ok,
            "shortest_u_period": self.shortest_u_period,
            "ok": self.ok,
        }


def _random_point(rng: random.Random, bound: int = 1000) -> PositiveRational:
    return PositiveRational(Fraction(rng.randint(1, bound), rng.randint(1, bound)))


def verify_periodicity(b: int, c: int, trials: int = 100, rng_seed: int = 0, window: int = 20) -> PeriodicityReport:
    """Check u_{m+h+2} = u_m at random positive rational points, and y_{m+h+2} = y_m.

    For infinite types, report the shortest period up to ``window`` found at
    any point (expected: none) and check engine distinctness on the window.
    """
    h = coxeter_number(b, c)
    rng = random.Random(rng_seed)
    if h == math.inf:
        report = PeriodicityReport(b, c, trials, None)
        for _ in range(trials):
            u = u_sequence(_random_point(rng), _random_point(rng), b, c, 2 * window + 2)
            for p in range(1, window + 1):
                if all(u[m] == u[m + p] for m in range(0, window)):
                    if report.shortest_u_period is None or p < report.shortest_u_period:
                        report.shortest_u_period = p
                    break
        ys = engine_sequence(b, c, 1, window)
        report.engine_ok = len(set(ys.values())) == len(ys)
        return report
    p = int(h) + 2
    report = PeriodicityReport(b, c, trials, p)
    for _ in range(trials):
        u = u_sequence(_random_point(rng), _random_point(rng), b, c, 2 * p + 2)
        if any(u[m] != u[m + p] for m in range(0, p + 2)):
            report.u_failures += 1
    ys = engine_sequence(b, c, 1, 2 * p + 2)
    report.engine_ok = all(ys[m] == ys[m + p] for m in range(1, p + 3)) and len(
        {ys[m] for m in range(1, p + 1)}
    ) == p
    return report


def c_coefficient(b: int, c: int, i: int, m: int) -> int:
    """Coefficient of the i-th simple coroot in w_i(m) applied to the coroot alpha_<i+m>."""
    v = _apply(weyl_word_action(b, c, i, m, coroot=True), _simple(bracket(i + m)))
    return v[i - 1]


def r_from_q(b: int, c: int, k: int) -> dict[int, int]:
    """Exponents of q_{k+2}, ..., q_{k+h} in r_k (finite case only)."""
    h = coxeter_number(b, c)
    if h == math.inf:
        raise ValueError("r_k is a finite monomial in the q's only in the finite case")
    i = bracket(k + 1)
    out = {}
    for m in range(int(h) - 1):
        e = c_coefficient(b, c, i, m)
        if e:
            out[k + m + 2] = e
    return out


def _q_names(p: int) -> tuple[str, ...]:
    return tuple(f"q{i}" for i in range(1, p + 1))


def _q_index(m: int, p: int) -> int:
    return (m - 1) % p


def tropical_r(b: int, c: int, k: int) -> Tropical:
    """r_k in Trop(q_1, ..., q_{h+2}) with q indices read modulo h + 2."""
    p = int(coxeter_number(b, c)) + 2
    exps = [0] * p
    for idx, e in r_from_q(b, c, k).items():
        exps[_q_index(idx, p)] += e
    return Tropical(tuple(exps), _q_names(p))


def _tropical_q(m: int, p: int) -> Tropical:
    return Tropical.generator(_q_names(p), _q_index(m, p))


def verify_tropical_chains(b: int, c: int, lo: int = -10, hi: int = 20) -> list[int]:
    """Indices m where normalization r_m + q_m = 1 or the chain relation fails.

    Chain relation: q_{m-1} q_{m+1} r_m^e = r_{m-1} r_{m+1}, with e = c for odd
    m and b for even m.
    """
    p = int(coxeter_number(b, c)) + 2
    bad = []
    for m in range(lo, hi + 1):
        q = _tropical_q(m, p)
        r = tropical_r(b, c, m)
        e = c if m % 2 else b
        lhs = _tropical_q(m - 1, p) * _tropical_q(m + 1, p) * r**e
        rhs = tropical_r(b, c, m - 1) * tropical_r(b, c, m + 1)
        if q + r != q.one() or lhs != rhs:
            bad.append(m)
    return bad


def verify_r_from_q(b: int, c: int, trials: int = 100, rng_seed: int = 0) -> int:
    """Number of random points where r_k = prod q^{c(...)} fails for some k in 1..h+2.

    q_m and r_m are normalized from the u-sequence over positive rationals.
    """
    h = coxeter_number(b, c)
    if h == math.inf:
        raise ValueError("finite case only")
    p = int(h) + 2
    rng = random.Random(rng_seed)
    failures = 0
    for _ in range(trials):
        u = u_sequence(_random_point(rng), _random_point(rng), b, c, 3 * p)
        one = u[0].one()

        def q(m: int) -> PositiveRational:
            um = u[m - 1]
            return um / (one + um)

        def r(m: int) -> PositiveRational:
            return one / (one + u[m - 1])

        for k in range(1, p + 1):
            prod = one
            for idx, e in r_from_q(b, c, k).items():
                prod = prod * q(idx) ** e
            if prod != r(k):
                failures += 1
                break
    return failures
