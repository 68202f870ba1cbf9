"""Extended exchange matrices and their mutations.

An :class:`ExchangeMatrix` is an ``(n + f) x n`` integer matrix.  The top
``n x n`` block is the principal part acting on the exchangeable indices; the
bottom ``f`` rows are frozen and encode coefficients of geometric type.
All indices are 0-based.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

__all__ = [
    "ExchangeMatrix",
    "is_sign_skew_symmetric",
    "find_skew_symmetrizer",
    "mutate",
    "mutate_rows",
    "cartan_counterpart",
    "restrict",
    "direct_product",
]


@dataclass(frozen=True)
class ExchangeMatrix:
    n: int
    f: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("an exchange matrix needs at least one exchangeable index")
        if self.f < 0:
            raise ValueError("frozen row count must be nonnegative")
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        if len(rows) != self.n + self.f:
            raise ValueError(f"expected {self.n + self.f} rows, got {len(rows)}")
        for r in rows:
            if len(r) != self.n:
                raise ValueError(f"every row must have {self.n} entries")
        for i in range(self.n):
            if rows[i][i] != 0:
                raise ValueError(f"principal part has nonzero diagonal entry at {i}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, principal: Sequence[Sequence[int]], frozen: Sequence[Sequence[int]] = ()) -> "ExchangeMatrix":
        principal = [list(r) for r in principal]
        frozen = [list(r) for r in frozen]
        return cls(len(principal), len(frozen), tuple(map(tuple, principal + frozen)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    @property
    def principal(self) -> tuple[tuple[int, ...], ...]:
        return self.rows[: self.n]

    @property
    def frozen_rows(self) -> tuple[tuple[int, ...], ...]:
        return self.rows[self.n :]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def permuted(self, sigma: Sequence[int]) -> "ExchangeMatrix":
        """Relabel exchangeable indices: new entry (a, b) is old (sigma[a], sigma[b]).

        Frozen rows keep their order; only their columns move.
        """
        n = self.n
        rows = [tuple(self.rows[sigma[a]][sigma[b]] for b in range(n)) for a in range(n)]
        rows += [tuple(r[sigma[b]] for b in range(n)) for r in self.frozen_rows]
        return ExchangeMatrix(n, self.f, tuple(rows))

    def to_dict(self) -> dict:
        return {"n": self.n, "frozen": self.f, "rows": [list(r) for r in self.rows]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "ExchangeMatrix":
        return cls(int(data["n"]), int(data.get("frozen", 0)), tuple(tuple(r) for r in data["rows"]))

    @classmethod
    def from_json(cls, text: str) -> "ExchangeMatrix":
        return cls.from_dict(json.loads(text))

    def __str__(self) -> str:
        width = max(len(str(x)) for r in self.rows for x in r)
        lines = []
        for i, r in enumerate(self.rows):
            if i == self.n and self.f:
                lines.append("-" * ((width + 1) * self.n + 1))
            lines.append("[" + " ".join(str(x).rjust(width) for x in r) + "]")
        return "\n".join(lines)


def is_sign_skew_symmetric(B: ExchangeMatrix) -> bool:
    """b_ij and b_ji vanish together or have opposite signs, for all i, j in the principal part."""
    for i in range(B.n):
        for j in range(i, B.n):
            a, b = B.rows[i][j], B.rows[j][i]
            if a == 0 and b == 0:
                continue
            if a * b >= 0:
                return False
    return True


def find_skew_symmetrizer(B: ExchangeMatrix) -> tuple[int, ...] | None:
    """Positive integers d with d_i b_ij = -d_j b_ji, or None if there are none.

    Each connected component of the graph of nonzero entries is solved from a
    root fixed at 1 and then scaled to coprime integers.
    """
    n = B.n
    b = B.rows
    d: list[Fraction | None] = [None] * n
    for root in range(n):
        if d[root] is not None:
            continue
        d[root] = Fraction(1)
        component = [root]
        stack = [root]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j == i or (b[i][j] == 0 and b[j][i] == 0):
                    continue
                if b[i][j] == 0 or b[j][i] == 0:
                    return None
                dj = -d[i] * b[i][j] / b[j][i]
                if dj <= 0:
                    return None
                if d[j] is None:
                    d[j] = dj
                    component.append(j)
                    stack.append(j)
                elif d[j] != dj:
                    return None
        scale = lcm(*(d[i].denominator for i in component))
        ints = [int(d[i] * scale) for i in component]
        g = gcd(*ints)
        for i, v in zip(component, ints):
            d[i] = Fraction(v // g)
    out = tuple(int(x) for x in d)  # type: ignore[arg-type]
    for i in range(n):
        for j in range(n):
            if out[i] * b[i][j] != -out[j] * b[j][i]:
                return None
    return out


def mutate_rows(rows: Sequence[Sequence[int]], n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """Mutation rule on raw rows, without validating the result.

    Used where the input may be deliberately malformed (axiom audits of
    corrupted families); :func:`mutate` is the checked entry point.
    """
    row_k = rows[k]
    out = []
    for i, r in enumerate(rows):
        bik = r[k]
        if i == k:
            out.append(tuple(-x for x in r))
            continue
        new = list(r)
        for j in range(n):
            if j == k:
                new[j] = -bik
            else:
                bkj = row_k[j]
                new[j] = r[j] + (abs(bik) * bkj + bik * abs(bkj)) // 2
        out.append(tuple(new))
    return tuple(out)


def mutate(B: ExchangeMatrix, k: int) -> ExchangeMatrix:
    """Matrix mutation in direction k, applied to every row including frozen ones."""
    if not 0 <= k < B.n:
        raise IndexError(f"mutation direction {k} out of range for n={B.n}")
    return ExchangeMatrix(B.n, B.f, mutate_rows(B.rows, B.n, k))


def cartan_counterpart(B: ExchangeMatrix) -> tuple[tuple[int, ...], ...]:
    """Generalized Cartan matrix with 2 on the diagonal and -|b_ij| elsewhere."""
    if not is_sign_skew_symmetric(B):
        raise ValueError("Cartan counterpart requires a sign-skew-symmetric principal part")
    n = B.n
    return tuple(tuple(2 if i == j else -abs(B.rows[i][j]) for j in range(n)) for i in range(n))


def restrict(B: ExchangeMatrix, J: Iterable[int]) -> ExchangeMatrix:
    """Keep the columns in J; rows outside J become frozen rows.

    Existing frozen rows come first in the new frozen block, followed by the
    demoted rows in increasing index order.
    """
    keep = sorted(set(J))
    if not keep:
        raise ValueError("restriction to an empty index set")
    if keep[0] < 0 or keep[-1] >= B.n:
        raise IndexError("restriction index out of range")
    dropped = [i for i in range(B.n) if i not in keep]
    principal = [[B.rows[i][j] for j in keep] for i in keep]
    frozen = [[r[j] for j in keep] for r in B.frozen_rows]
    frozen += [[B.rows[i][j] for j in keep] for i in dropped]
    return ExchangeMatrix.from_rows(principal, frozen)


def direct_product(B1: ExchangeMatrix, B2: ExchangeMatrix) -> ExchangeMatrix:
    """Block-diagonal assembly of two extended exchange matrices."""
    n1, n2 = B1.n, B2.n
    principal = [list(r) + [0] * n2 for r in B1.principal]
    principal += [[0] * n1 + list(r) for r in B2.principal]
    frozen = [list(r) + [0] * n2 for r in B1.frozen_rows]
    frozen += [[0] * n1 + list(r) for r in B2.frozen_rows]
    return ExchangeMatrix.from_rows(principal, frozen)
