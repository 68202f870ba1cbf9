"""Semifield instances and normalized coefficient dynamics.

Every element supports ``*``, ``/``, integer ``**`` and ``+`` where ``+`` is
the auxiliary addition (written ⊕ in the literature).  Elements of different
instances never mix; doing so raises :class:`SemifieldMismatch`.

Instances:

* :class:`Tropical` -- Laurent monomials in named generators, ⊕ = componentwise min
  of exponent vectors.
* :class:`PositiveRational` -- exact positive fractions, ⊕ = ordinary addition.
* :class:`MaxPlus` -- integers, product = integer addition, ⊕ = max.
* :class:`Trivial` -- the one-element semifield.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .matrix import ExchangeMatrix

__all__ = [
    "SemifieldMismatch",
    "SemifieldElem",
    "Tropical",
    "PositiveRational",
    "MaxPlus",
    "Trivial",
    "oplus",
    "normalize_pair",
    "mutate_coefficients",
    "coefficients_from_matrix",
    "tuple_to_matrix_rows",
    "random_positive_rational",
]


class SemifieldMismatch(TypeError):
    """Operands belong to different semifield instances."""


class SemifieldElem:
    """Common surface; subclasses implement the four operations."""

    __slots__ = ()

    def one(self) -> "SemifieldElem":
        raise NotImplementedError

    def _check(self, other) -> None:
        if type(other) is not type(self):
            raise SemifieldMismatch(f"{type(self).__name__} vs {type(other).__name__}")

    def __pow__(self, e: int) -> "SemifieldElem":
        if e < 0:
            return self.one() / (self ** (-e))
        result = self.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self) -> "SemifieldElem":
        return self.one() / self


@dataclass(frozen=True)
class Tropical(SemifieldElem):
    exps: tuple[int, ...]
    gens: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "exps", tuple(int(e) for e in self.exps))
        object.__setattr__(self, "gens", tuple(self.gens))
        if len(self.exps) != len(self.gens):
            raise ValueError("exponent vector and generator list differ in length")

    @classmethod
    def unit(cls, gens: Sequence[str]) -> "Tropical":
        return cls((0,) * len(gens), tuple(gens))

    @classmethod
    def generator(cls, gens: Sequence[str], which: Union[int, str]) -> "Tropical":
        gens = tuple(gens)
        idx = gens.index(which) if isinstance(which, str) else which
        exps = [0] * len(gens)
        exps[idx] = 1
        return cls(tuple(exps), gens)

    @classmethod
    def from_map(cls, gens: Sequence[str], powers: dict[str, int]) -> "Tropical":
        gens = tuple(gens)
        return cls(tuple(powers.get(g, 0) for g in gens), gens)

    def _check(self, other) -> None:
        super()._check(other)
        if other.gens != self.gens:
            raise SemifieldMismatch(f"tropical generators {self.gens} vs {other.gens}")

    def one(self) -> "Tropical":
        return Tropical.unit(self.gens)

    def __mul__(self, other: "Tropical") -> "Tropical":
        self._check(other)
        return Tropical(tuple(a + b for a, b in zip(self.exps, other.exps)), self.gens)

    def __truediv__(self, other: "Tropical") -> "Tropical":
        self._check(other)
        return Tropical(tuple(a - b for a, b in zip(self.exps, other.exps)), self.gens)

    def __pow__(self, e: int) -> "Tropical":
        return Tropical(tuple(a * e for a in self.exps), self.gens)

    def __add__(self, other: "Tropical") -> "Tropical":
        self._check(other)
        return Tropical(tuple(min(a, b) for a, b in zip(self.exps, other.exps)), self.gens)

    def as_map(self) -> dict[str, int]:
        return {g: e for g, e in zip(self.gens, self.exps) if e}

    def __str__(self) -> str:
        parts = [g if e == 1 else f"{g}^{e}" for g, e in zip(self.gens, self.exps) if e]
        return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class PositiveRational(SemifieldElem):
    value: Fraction

    def __post_init__(self) -> None:
        v = Fraction(self.value)
        if v <= 0:
            raise ValueError(f"positive rational semifield element must be > 0, got {v}")
        object.__setattr__(self, "value", v)

    def one(self) -> "PositiveRational":
        return PositiveRational(Fraction(1))

    def __mul__(self, other: "PositiveRational") -> "PositiveRational":
        self._check(other)
        return PositiveRational(self.value * other.value)

    def __truediv__(self, other: "PositiveRational") -> "PositiveRational":
        self._check(other)
        return PositiveRational(self.value / other.value)

    def __pow__(self, e: int) -> "PositiveRational":
        return PositiveRational(self.value**e)

    def __add__(self, other: "PositiveRational") -> "PositiveRational":
        self._check(other)
        return PositiveRational(self.value + other.value)

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class MaxPlus(SemifieldElem):
    value: int

    def one(self) -> "MaxPlus":
        return MaxPlus(0)

    def __mul__(self, other: "MaxPlus") -> "MaxPlus":
        self._check(other)
        return MaxPlus(self.value + other.value)

    def __truediv__(self, other: "MaxPlus") -> "MaxPlus":
        self._check(other)
        return MaxPlus(self.value - other.value)

    def __pow__(self, e: int) -> "MaxPlus":
        return MaxPlus(self.value * e)

    def __add__(self, other: "MaxPlus") -> "MaxPlus":
        self._check(other)
        return MaxPlus(max(self.value, other.value))

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class Trivial(SemifieldElem):
    def one(self) -> "Trivial":
        return self

    def __mul__(self, other: "Trivial") -> "Trivial":
        self._check(other)
        return self

    __truediv__ = __mul__
    __add__ = __mul__

    def __pow__(self, e: int) -> "Trivial":
        return self

    def __str__(self) -> str:
        return "1"


def oplus(a: SemifieldElem, b: SemifieldElem) -> SemifieldElem:
    return a + b


def normalize_pair(u: SemifieldElem) -> tuple[SemifieldElem, SemifieldElem]:
    """The coefficient pair (p, p') with p/p' = u and p ⊕ p' = 1."""
    s = u.one() + u
    return u / s, u.one() / s


def _check_tuple(u: Sequence[SemifieldElem]) -> None:
    if not u:
        raise ValueError("empty coefficient tuple")
    first = u[0]
    for x in u[1:]:
        first._check(x)


def mutate_coefficients(u: Sequence[SemifieldElem], B: ExchangeMatrix, k: int) -> tuple[SemifieldElem, ...]:
    """Coefficient ratios at the vertex reached by exchanging k.

    ``B`` is the matrix at the current vertex.
    """
    _check_tuple(u)
    if len(u) != B.n:
        raise ValueError(f"coefficient tuple of length {len(u)} for rank {B.n}")
    if not 0 <= k < B.n:
        raise IndexError(f"mutation direction {k} out of range")
    uk = u[k]
    one_plus = uk.one() + uk
    out = []
    for i, ui in enumerate(u):
        if i == k:
            out.append(uk.inverse())
            continue
        bki = B.rows[k][i]
        out.append(ui * uk ** max(bki, 0) * one_plus ** (-bki))
    return tuple(out)


def coefficients_from_matrix(B: ExchangeMatrix, gens: Sequence[str] | None = None) -> tuple[SemifieldElem, ...]:
    """Tropical ratios u_j = prod_i p_i^{c_ij} read off the frozen rows."""
    if B.f == 0:
        return tuple(Trivial() for _ in range(B.n))
    if gens is None:
        gens = tuple(f"p{i + 1}" for i in range(B.f))
    gens = tuple(gens)
    if len(gens) != B.f:
        raise ValueError(f"{len(gens)} generator names for {B.f} frozen rows")
    return tuple(Tropical(tuple(r[j] for r in B.frozen_rows), gens) for j in range(B.n))


def tuple_to_matrix_rows(u: Sequence[Tropical]) -> tuple[tuple[int, ...], ...]:
    """Inverse of :func:`coefficients_from_matrix`: the frozen block as rows."""
    if not u:
        return ()
    g = len(u[0].gens)
    return tuple(tuple(x.exps[i] for x in u) for i in range(g))


def random_positive_rational(rng: random.Random, bound: int = 1000) -> PositiveRational:
    return PositiveRational(Fraction(rng.randint(1, bound), rng.randint(1, bound)))
