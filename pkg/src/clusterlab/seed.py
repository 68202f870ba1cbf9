"""Seeds, seed mutation with Laurent verification, and axiom auditing.

A :class:`Seed` carries its cluster as Laurent polynomials in the *initial*
cluster.  The ambient ring has one variable per initial cluster variable,
then one per frozen row of the matrix, then one per generator of a tropical
coefficient tuple (if any).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .laurent import LaurentPoly, NotDivisible, exact_div
from .matrix import ExchangeMatrix, is_sign_skew_symmetric, mutate, mutate_rows
from .semifield import (
    MaxPlus,
    PositiveRational,
    SemifieldElem,
    Tropical,
    Trivial,
    mutate_coefficients,
    normalize_pair,
)

__all__ = [
    "LaurentViolation",
    "Monomial",
    "ExchangeRelationRecord",
    "Seed",
    "initial_seed",
    "mutate_seed",
    "apply_sequence",
    "exchange_relation",
    "expand_monomial",
    "audit_axioms",
    "AuditReport",
    "specialize_coefficients",
    "coeffs_to_json",
    "coeffs_from_json",
]


class LaurentViolation(RuntimeError):
    """An exchange produced a non-Laurent quotient.  ``dump`` holds a reproducer."""

    def __init__(self, message: str, dump: dict):
        super().__init__(message)
        self.dump = dump


@dataclass(frozen=True)
class Monomial:
    """Exponents over (cluster positions, frozen generators, coefficient generators)."""

    exps: tuple[int, ...]
    coeff: object = 1

    def contains(self, i: int) -> bool:
        return self.exps[i] != 0

    def coprime_to(self, other: "Monomial") -> bool:
        return not any(a and b for a, b in zip(self.exps, other.exps))

    def format(self, names: Sequence[str]) -> str:
        parts = []
        for e, name in zip(self.exps, names):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        body = "*".join(parts)
        if self.coeff != 1:
            body = f"{self.coeff}*{body}" if body else str(self.coeff)
        return body or "1"


@dataclass(frozen=True)
class ExchangeRelationRecord:
    """``lhs_old * lhs_new = m1 + m2`` for exchanging index ``k`` out of a seed."""

    k: int
    lhs_old: LaurentPoly
    lhs_new: LaurentPoly | None
    m1: Monomial
    m2: Monomial

    def format(self, names: Sequence[str], old: str = "x", new: str = "x'") -> str:
        return f"{old}*{new} = {self.m1.format(names)} + {self.m2.format(names)}"


def _cluster_names(n: int) -> list[str]:
    return [f"x{i + 1}" for i in range(n)]


@dataclass(frozen=True, eq=False)
class Seed:
    matrix: ExchangeMatrix
    cluster: tuple[LaurentPoly, ...]
    coeffs: tuple[SemifieldElem, ...] | None = None
    history: tuple[int, ...] = ()
    names: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        if len(self.cluster) != self.matrix.n:
            raise ValueError("cluster size does not match the matrix rank")
        if self.coeffs is not None and len(self.coeffs) != self.matrix.n:
            raise ValueError("coefficient tuple size does not match the matrix rank")
        if not self.names:
            object.__setattr__(self, "names", tuple(_default_names(self.matrix, self.coeffs)))
        if len(self.names) != self.nvars:
            raise ValueError(f"{len(self.names)} variable names for {self.nvars} ambient variables")

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def ngens(self) -> int:
        if self.coeffs and isinstance(self.coeffs[0], Tropical):
            return len(self.coeffs[0].gens)
        return 0

    @property
    def nvars(self) -> int:
        return self.matrix.n + self.matrix.f + self.ngens

    def __eq__(self, other) -> bool:
        if not isinstance(other, Seed):
            return NotImplemented
        return (
            self.matrix == other.matrix
            and self.cluster == other.cluster
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.matrix, self.cluster, self.coeffs))

    def format(self) -> str:
        lines = [str(self.matrix)]
        for i, x in enumerate(self.cluster):
            lines.append(f"x{i + 1}(t) = {x.format(self.names)}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        out = {
            "matrix": self.matrix.to_dict(),
            "history": list(self.history),
            "cluster": [x.to_json() for x in self.cluster],
            "names": list(self.names),
        }
        if self.coeffs is not None:
            out["coeffs"] = coeffs_to_json(self.coeffs)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: Mapping) -> "Seed":
        matrix = ExchangeMatrix.from_dict(data["matrix"])
        coeffs = coeffs_from_json(data["coeffs"]) if data.get("coeffs") is not None else None
        names = tuple(data.get("names") or _default_names(matrix, coeffs))
        cluster = tuple(LaurentPoly.from_json(len(names), t) for t in data["cluster"])
        return cls(matrix, cluster, coeffs, tuple(data.get("history", ())), names)

    @classmethod
    def from_json(cls, text: str) -> "Seed":
        return cls.from_dict(json.loads(text))


def _default_names(matrix: ExchangeMatrix, coeffs) -> list[str]:
    names = _cluster_names(matrix.n) + [f"p{i + 1}" for i in range(matrix.f)]
    if coeffs and isinstance(coeffs[0], Tropical):
        names += list(coeffs[0].gens)
    return names


def coeffs_to_json(u: Sequence[SemifieldElem]) -> dict:
    first = u[0]
    if isinstance(first, Tropical):
        return {"kind": "tropical", "gens": list(first.gens), "values": [x.as_map() for x in u]}
    if isinstance(first, PositiveRational):
        return {"kind": "positive-rational", "values": [str(x.value) for x in u]}
    if isinstance(first, MaxPlus):
        return {"kind": "max-plus", "values": [x.value for x in u]}
    return {"kind": "trivial", "size": len(u)}


def coeffs_from_json(data: Mapping) -> tuple[SemifieldElem, ...]:
    kind = data["kind"]
    if kind == "tropical":
        gens = tuple(data["gens"])
        return tuple(Tropical.from_map(gens, v) for v in data["values"])
    if kind == "positive-rational":
        return tuple(PositiveRational(Fraction(v)) for v in data["values"])
    if kind == "max-plus":
        return tuple(MaxPlus(int(v)) for v in data["values"])
    if kind == "trivial":
        return tuple(Trivial() for _ in range(int(data["size"])))
    raise ValueError(f"unknown coefficient kind {kind!r}")


def initial_seed(
    B: ExchangeMatrix,
    names: Sequence[str] | None = None,
    coeffs: Sequence[SemifieldElem] | None = None,
) -> Seed:
    """The seed whose i-th cluster variable is the i-th ambient variable."""
    if not is_sign_skew_symmetric(B):
        raise ValueError("principal part is not sign-skew-symmetric")
    if coeffs is not None:
        coeffs = tuple(coeffs)
        if isinstance(coeffs[0], MaxPlus):
            raise TypeError("max-plus coefficients cannot be embedded in exchange relations")
    if names is None:
        names = _default_names(B, coeffs)
    nvars = len(names)
    cluster = tuple(LaurentPoly.variable(nvars, i) for i in range(B.n))
    return Seed(B, cluster, coeffs, (), tuple(names))


def exchange_relation(s: Seed, k: int) -> ExchangeRelationRecord:
    """Monomials of the exchange relation in direction k, read from column k."""
    if not 0 <= k < s.n:
        raise IndexError(f"exchange direction {k} out of range for n={s.n}")
    col = s.matrix.column(k)
    pos = [max(b, 0) for b in col] + [0] * s.ngens
    neg = [max(-b, 0) for b in col] + [0] * s.ngens
    c1: object = 1
    c2: object = 1
    if s.coeffs is not None:
        p, p_ = normalize_pair(s.coeffs[k])
        if isinstance(p, Tropical):
            base = s.n + s.matrix.f
            for g, (a, b) in enumerate(zip(p.exps, p_.exps)):
                pos[base + g] += a
                neg[base + g] += b
        elif isinstance(p, PositiveRational):
            c1, c2 = p.value, p_.value
        elif not isinstance(p, Trivial):
            raise TypeError(f"cannot embed {type(p).__name__} coefficients")
    m1 = Monomial(tuple(pos), c1)
    m2 = Monomial(tuple(neg), c2)
    return ExchangeRelationRecord(k, s.cluster[k], None, m1, m2)


def expand_monomial(s: Seed, m: Monomial) -> LaurentPoly:
    """Expand a monomial in the seed's own cluster variables in the initial cluster."""
    nvars = s.nvars
    n = s.n
    rest = [0] * n + list(m.exps[n:])
    out = LaurentPoly.monomial(nvars, rest, m.coeff)
    for i in range(n):
        e = m.exps[i]
        if e:
            out = out * (s.cluster[i] ** e)
    return out


def _dump(s: Seed, k: int, num: LaurentPoly, den: LaurentPoly) -> dict:
    return {
        "matrix": s.matrix.to_dict(),
        "history": list(s.history),
        "direction": k,
        "numerator": num.to_json(),
        "denominator": den.to_json(),
        "seed": s.to_dict(),
    }


def mutate_seed(s: Seed, k: int) -> Seed:
    """Exchange the k-th cluster variable, verifying the quotient is Laurent."""
    rec = exchange_relation(s, k)
    num = expand_monomial(s, rec.m1) + expand_monomial(s, rec.m2)
    try:
        new = exact_div(num, s.cluster[k])
    except NotDivisible as exc:
        raise LaurentViolation(
            f"exchange in direction {k} after history {list(s.history)} is not Laurent: {exc}",
            _dump(s, k, num, s.cluster[k]),
        ) from exc
    cluster = s.cluster[:k] + (new,) + s.cluster[k + 1 :]
    coeffs = mutate_coefficients(s.coeffs, s.matrix, k) if s.coeffs is not None else None
    return Seed(mutate(s.matrix, k), cluster, coeffs, s.history + (k,), s.names)


def apply_sequence(s: Seed, ks: Sequence[int]) -> Seed:
    for k in ks:
        s = mutate_seed(s, k)
    return s


def specialize_coefficients(s: Seed, assignment: Mapping[str, object]) -> Seed:
    """Substitute positive rationals for every frozen/coefficient generator.

    The result has trivial coefficients: its cluster entries are the
    specialized expansions, and its matrix keeps only the principal part.
    """
    n = s.n
    gens = s.names[n:]
    missing = [g for g in gens if g not in assignment]
    if missing:
        raise ValueError(f"no value assigned to generators {missing}")
    values = {}
    for idx, g in enumerate(gens, start=n):
        v = Fraction(assignment[g])
        if v <= 0:
            raise ValueError(f"generator {g} must specialize to a positive value, got {v}")
        values[idx] = v
    keep = list(range(n))
    cluster = tuple(x.specialize(values, keep) for x in s.cluster)
    matrix = ExchangeMatrix(n, 0, s.matrix.principal)
    return Seed(matrix, cluster, None, s.history, s.names[:n])


# -- axiom audit -------------------------------------------------------------


@dataclass
class AuditReport:
    path: tuple[int, ...]
    vertices: int = 0
    checks: int = 0
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, axiom: str, vertex: int, **detail) -> None:
        self.violations.append({"axiom": axiom, "vertex": vertex, **detail})


def _pos_col(rows: Sequence[Sequence[int]], j: int) -> tuple[int, ...]:
    return tuple(max(r[j], 0) for r in rows)


def audit_axioms(B: ExchangeMatrix, ks: Sequence[int]) -> AuditReport:
    """Check the exchange-pattern axioms around every vertex of a mutation path.

    Monomials are taken from each vertex's own matrix (positive part of the
    column), so the checks exercise matrix mutation rather than restate it.
    Mutation runs on raw rows, so malformed families are reported instead of
    rejected.  Axioms reported: ``exchange_free``, ``no_shared_variable``,
    ``normalized``, ``containment_symmetry``, ``ratio_propagation`` and
    ``coefficient_relation``.
    """
    report = AuditReport(tuple(ks))
    n, f = B.n, B.f
    mats = [B.rows]
    for k in ks:
        if not 0 <= k < n:
            raise IndexError(f"mutation direction {k} out of range for n={n}")
        mats.append(mutate_rows(mats[-1], n, k))
    p = slice(n, n + f)
    for v, Bt in enumerate(mats):
        report.vertices += 1
        nbr = [mutate_rows(Bt, n, i) for i in range(n)]
        M = [_pos_col(Bt, j) for j in range(n)]
        M_nbr = [_pos_col(nbr[j], j) for j in range(n)]
        for j in range(n):
            report.checks += 3
            if M[j][j] or M_nbr[j][j]:
                report.add("exchange_free", v, direction=j)
            if any(M[j][i] and M_nbr[j][i] for i in range(n)):
                report.add("no_shared_variable", v, direction=j)
            if any(M[j][i] and M_nbr[j][i] for i in range(n, n + f)):
                report.add("normalized", v, direction=j)
        for i in range(n):
            M_i_t1 = _pos_col(nbr[i], i)
            for j in range(n):
                if i == j:
                    continue
                report.checks += 3
                # path t1 -i- t2=Bt -j- t3 -i- t4
                if bool(M_i_t1[j]) != bool(M[j][i]):
                    report.add("containment_symmetry", v, i=i, j=j)
                t3 = nbr[j]
                t4 = mutate_rows(t3, n, i)
                M_i_t2, M_i_t3, M_i_t4 = M[i], _pos_col(t3, i), _pos_col(t4, i)
                M_j_t2, M_j_t3 = M[j], _pos_col(t3, j)
                ratio = [a - b for a, b in zip(M_i_t2, M_i_t1)]
                lhs = [a - b for a, b in zip(M_i_t3, M_i_t4)]
                free = [m for m in (M_j_t2, M_j_t3) if not m[i]]
                e = ratio[j]
                if len(free) == 1:
                    sub = [r + e * m for r, m in zip(ratio, free[0])]
                    sub[j] = -e
                elif e == 0:
                    sub = ratio
                else:
                    sub = None
                if sub is None or sub != lhs:
                    report.add("ratio_propagation", v, i=i, j=j)
                b_ji_t2 = Bt[j][i]
                b_ji_t3 = t3[j][i]
                left = [a + c + max(b_ji_t3, 0) * d for a, c, d in zip(M_i_t1[p], M_i_t3[p], M_j_t3[p])]
                right = [a + c + max(b_ji_t2, 0) * d for a, c, d in zip(M_i_t2[p], M_i_t4[p], M_j_t2[p])]
                if left != right:
                    report.add("coefficient_relation", v, i=i, j=j)
    return report
