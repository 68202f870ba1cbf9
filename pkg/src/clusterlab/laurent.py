"""Sparse multivariate Laurent polynomials with exact integer coefficients.

Terms are stored in a dict keyed by a packed integer encoding of the exponent
vector.  The packing puts the total degree in the top field and the individual
exponents (biased to be nonnegative) below it, variable 0 most significant, so
that ordinary integer comparison of keys is graded-lexicographic order and
multiplying monomials is a single integer addition.
"""

from __future__ import annotations

import heapq
from fractions import Fraction

import gmpy2
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence

__all__ = [
    "LaurentPoly",
    "NotDivisible",
    "exact_div",
    "denominator_vector",
    "evaluate",
    "is_positive",
]

_WIDTH = 32
_BIAS = 1 << (_WIDTH - 1)
_FIELD = (1 << _WIDTH) - 1
_LIMIT = 1 << (_WIDTH - 2)  # per-variable exponent bound kept well inside a field


class NotDivisible(ArithmeticError):
    """Raised when no Laurent polynomial quotient exists."""

    def __init__(self, message: str, num: "LaurentPoly | None" = None, den: "LaurentPoly | None" = None):
        super().__init__(message)
        self.num = num
        self.den = den


class _Layout:
    __slots__ = ("nvars", "shift", "offset", "low_mask", "shifts")

    def __init__(self, nvars: int):
        self.nvars = nvars
        self.shift = _WIDTH * nvars
        self.shifts = tuple(_WIDTH * (nvars - 1 - i) for i in range(nvars))
        self.offset = sum(_BIAS << s for s in self.shifts)
        self.low_mask = (1 << self.shift) - 1

    def pack(self, exps: Sequence[int]) -> int:
        if len(exps) != self.nvars:
            raise ValueError(f"exponent vector of length {len(exps)}, expected {self.nvars}")
        key = sum(exps) << self.shift
        for e, s in zip(exps, self.shifts):
            if not -_LIMIT < e < _LIMIT:
                raise OverflowError(f"exponent {e} out of range")
            key += (e + _BIAS) << s
        return key

    def unpack(self, key: int) -> tuple[int, ...]:
        low = key & self.low_mask
        return tuple(((low >> s) & _FIELD) - _BIAS for s in self.shifts)


_LAYOUTS: dict[int, _Layout] = {}


def _layout(nvars: int) -> _Layout:
    lay = _LAYOUTS.get(nvars)
    if lay is None:
        lay = _LAYOUTS[nvars] = _Layout(nvars)
    return lay


def _normalize_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


class LaurentPoly:
    """An element of Z[x_1^{±1}, ..., x_n^{±1}] (or Q[...] after specialization).

    Instances are immutable.  Use :meth:`from_terms`, :meth:`monomial`,
    :meth:`constant` or :meth:`variable` to build them.
    """

    __slots__ = ("nvars", "_terms", "_hash", "_bounds")

    def __init__(self, nvars: int, packed: Mapping[int, object] | None = None, *, _trusted: bool = False):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        self.nvars = nvars
        if packed is None:
            self._terms: dict[int, object] = {}
        elif _trusted:
            self._terms = packed  # type: ignore[assignment]
        else:
            self._terms = {k: _normalize_coeff(c) for k, c in packed.items() if c != 0}
        self._hash: int | None = None
        self._bounds: tuple[tuple[int, ...], tuple[int, ...]] | None = None

    # -- construction -------------------------------------------------------

    @classmethod
    def from_terms(cls, nvars: int, terms: Mapping[Sequence[int], object] | Iterable[tuple[Sequence[int], object]]) -> "LaurentPoly":
        lay = _layout(nvars)
        items = terms.items() if isinstance(terms, Mapping) else terms
        out: dict[int, object] = {}
        for exps, c in items:
            k = lay.pack(tuple(exps))
            out[k] = out.get(k, 0) + c
        return cls(nvars, out)

    @classmethod
    def monomial(cls, nvars: int, exps: Sequence[int], coeff=1) -> "LaurentPoly":
        return cls.from_terms(nvars, [(exps, coeff)])

    @classmethod
    def constant(cls, nvars: int, c=1) -> "LaurentPoly":
        return cls.from_terms(nvars, [((0,) * nvars, c)])

    @classmethod
    def variable(cls, nvars: int, i: int) -> "LaurentPoly":
        exps = [0] * nvars
        exps[i] = 1
        return cls.monomial(nvars, exps)

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars)

    # -- inspection ---------------------------------------------------------

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def terms(self) -> list[tuple[tuple[int, ...], object]]:
        """Terms in canonical order: descending graded-lexicographic."""
        lay = _layout(self.nvars)
        return [(lay.unpack(k), self._terms[k]) for k in sorted(self._terms, reverse=True)]

    def __iter__(self) -> Iterator[tuple[tuple[int, ...], object]]:
        return iter(self.terms())

    def coefficient(self, exps: Sequence[int]):
        return self._terms.get(_layout(self.nvars).pack(tuple(exps)), 0)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def bounds(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Componentwise (min, max) exponents; zeros for the zero polynomial."""
        if self._bounds is None:
            n = self.nvars
            if not self._terms:
                self._bounds = ((0,) * n, (0,) * n)
            else:
                lay = _layout(n)
                lo = [None] * n
                hi = [None] * n
                for k in self._terms:
                    for i, e in enumerate(lay.unpack(k)):
                        if lo[i] is None or e < lo[i]:
                            lo[i] = e
                        if hi[i] is None or e > hi[i]:
                            hi[i] = e
                self._bounds = (tuple(lo), tuple(hi))  # type: ignore[arg-type]
        return self._bounds

    def sort_key(self) -> tuple:
        """Total order used to sort clusters canonically."""
        return tuple((k, self._terms[k]) for k in sorted(self._terms, reverse=True))

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self == LaurentPoly.constant(self.nvars, other) if other else not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"arity mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Rational)):
            return LaurentPoly.constant(self.nvars, other)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return LaurentPoly(self.nvars, {k: _normalize_coeff(c) for k, c in out.items()}, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {k: -c for k, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        a, b = self._terms, other._terms
        if not a or not b:
            return LaurentPoly(self.nvars)
        _check_sum_bounds(self, other)
        off = _layout(self.nvars).offset
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            ((kb, cb),) = b.items()
            shift = kb - off
            if cb == 1:
                return LaurentPoly(self.nvars, {k + shift: c for k, c in a.items()}, _trusted=True)
            return LaurentPoly(self.nvars, {k + shift: _normalize_coeff(c * cb) for k, c in a.items()}, _trusted=True)
        if _kron_mul_worthwhile(self, other):
            return _kron_mul(self, other)
        out: dict[int, object] = {}
        get = out.get
        b_items = [(kb - off, cb) for kb, cb in b.items()]
        for ka, ca in a.items():
            for kb, cb in b_items:
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        return LaurentPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "LaurentPoly":
        if not isinstance(e, int):
            raise TypeError("exponent must be an integer")
        if e < 0:
            if not self.is_monomial():
                raise NotDivisible("negative power of a non-monomial", self)
            ((k, c),) = self._terms.items()
            exps = _layout(self.nvars).unpack(k)
            inv = Fraction(1, 1) / c
            return LaurentPoly.monomial(self.nvars, [-x for x in exps], inv) ** (-e)
        if e >= 2 and _kron_pow_worthwhile(self, e):
            return _kron_pow(self, e)
        result = LaurentPoly.constant(self.nvars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, other) -> "LaurentPoly":
        return exact_div(self, self._coerce(other))

    # -- substitution -------------------------------------------------------

    def specialize(self, values: Mapping[int, object], keep: Sequence[int] | None = None) -> "LaurentPoly":
        """Substitute numbers for some variables and drop them.

        ``values`` maps variable index to a nonzero rational.  The result lives
        in the variables listed in ``keep`` (default: all not substituted),
        in that order.
        """
        n = self.nvars
        if keep is None:
            keep = [i for i in range(n) if i not in values]
        keep = list(keep)
        if set(keep) & set(values) or len(set(keep) | set(values)) != n:
            raise ValueError("keep and values must partition the variables")
        for v in values.values():
            if v == 0:
                raise ZeroDivisionError("cannot specialize a Laurent variable to zero")
        out: dict[tuple[int, ...], object] = {}
        for exps, c in self.terms():
            for i, v in values.items():
                e = exps[i]
                if e:
                    c = c * (Fraction(v) ** e)
            key = tuple(exps[i] for i in keep)
            out[key] = out.get(key, 0) + c
        return LaurentPoly.from_terms(len(keep), out)

    def embed(self, nvars: int, positions: Sequence[int]) -> "LaurentPoly":
        """Re-home this polynomial into a ring with ``nvars`` variables."""
        if len(positions) != self.nvars:
            raise ValueError("positions must list one target per variable")
        out = []
        for exps, c in self.terms():
            new = [0] * nvars
            for e, p in zip(exps, positions):
                new[p] += e
            out.append((new, c))
        return LaurentPoly.from_terms(nvars, out)

    # -- text / json --------------------------------------------------------

    def format(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = [f"x{i + 1}" for i in range(self.nvars)]
        if not self._terms:
            return "0"
        num_terms = []
        lo, _ = self.bounds()
        shift = [min(e, 0) for e in lo]
        for exps, c in self.terms():
            body = _monomial_text([e - s for e, s in zip(exps, shift)], names)
            num_terms.append((c, body))
        num = _join_terms(num_terms)
        den = _monomial_text([-s for s in shift], names)
        if den == "1":
            return num
        if len(num_terms) > 1:
            num = f"({num})"
        if sum(1 for s in shift if s) > 1 or any(s < -1 for s in shift):
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"LaurentPoly({self.format()!s})"

    def to_json(self) -> list[dict]:
        return [{"coeff": str(c), "exp": list(exps)} for exps, c in self.terms()]

    @classmethod
    def from_json(cls, nvars: int, data: Sequence[Mapping]) -> "LaurentPoly":
        return cls.from_terms(nvars, [(t["exp"], _parse_coeff(t["coeff"])) for t in data])


def _parse_coeff(s):
    if isinstance(s, int):
        return s
    f = Fraction(s)
    return int(f) if f.denominator == 1 else f


def _monomial_text(exps: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for e, name in zip(exps, names):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def _join_terms(terms: list[tuple[object, str]]) -> str:
    out = []
    for idx, (c, body) in enumerate(terms):
        neg = c < 0
        mag = -c if neg else c
        if body == "1":
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        if idx == 0:
            out.append(f"-{text}" if neg else text)
        else:
            out.append(f" - {text}" if neg else f" + {text}")
    return "".join(out)


def _check_sum_bounds(a: LaurentPoly, b: LaurentPoly) -> None:
    (alo, ahi), (blo, bhi) = a.bounds(), b.bounds()
    for x, y in zip(ahi, bhi):
        if x + y >= _LIMIT:
            raise OverflowError("exponent overflow in product")
    for x, y in zip(alo, blo):
        if x + y <= -_LIMIT:
            raise OverflowError("exponent overflow in product")


def _shift_to_polynomial(p: LaurentPoly) -> tuple[LaurentPoly, tuple[int, ...]]:
    lo, _ = p.bounds()
    shift = tuple(-e for e in lo)
    if any(shift):
        p = p * LaurentPoly.monomial(p.nvars, shift)
    return p, lo


def _coeff_quotient(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            return None
        return q
    return _normalize_coeff(Fraction(a) / Fraction(b))


def exact_div(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Return ``q`` with ``q * den == num``, or raise :class:`NotDivisible`.

    Both operands are shifted by monomials to ordinary polynomials not divisible
    by any variable; the quotient of those must then be a polynomial, which is
    found by leading-term elimination in graded-lex order.
    """
    if num.nvars != den.nvars:
        raise ValueError(f"arity mismatch: {num.nvars} vs {den.nvars}")
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    nvars = num.nvars
    if not num:
        return LaurentPoly(nvars)
    if _kron_div_worthwhile(num, den):
        q = _kron_div(num, den)
        if q is not None:
            return q
    lay = _layout(nvars)
    off = lay.offset
    num_p, num_lo = _shift_to_polynomial(num)
    den_p, den_lo = _shift_to_polynomial(den)

    d_items = list(den_p._terms.items())
    lt_d = max(den_p._terms)
    lc_d = den_p._terms[lt_d]
    d_rest = [(k - off, c) for k, c in d_items if k != lt_d]

    rem = dict(num_p._terms)
    heap = [-k for k in rem]
    heapq.heapify(heap)
    quot: dict[int, object] = {}
    while heap:
        k = -heapq.heappop(heap)
        c = rem.pop(k, None)
        if c is None:
            continue
        qk = k - lt_d + off
        if any(e < 0 for e in lay.unpack(qk)) or (qk >> lay.shift) < 0:
            raise NotDivisible("leading term of remainder not divisible", num, den)
        qc = _coeff_quotient(c, lc_d)
        if qc is None:
            raise NotDivisible("coefficient not divisible over the integers", num, den)
        quot[qk] = qc
        for kd, cd in d_rest:
            kk = qk + kd
            old = rem.get(kk)
            if old is None:
                rem[kk] = -qc * cd
                heapq.heappush(heap, -kk)
            else:
                v = old - qc * cd
                if v:
                    rem[kk] = v
                else:
                    del rem[kk]
    q = LaurentPoly(nvars, quot)
    shift = tuple(a - b for a, b in zip(num_lo, den_lo))
    if any(shift):
        q = q * LaurentPoly.monomial(nvars, shift)
    return q


# -- Kronecker substitution --------------------------------------------------
#
# Large products and quotients are computed by evaluating at x_i = X^{stride_i}
# with X = 2^(8 * slot_bytes), which turns a polynomial into one big integer
# whose base-X digits are the coefficients.  GMP then does the arithmetic.
# Digits are read back with a bias so that signed coefficients decode without
# borrows.  A quotient found this way is only returned after the product is
# recomputed and compared, so the sparse algorithm stays the reference route.

_KRON_MIN_TERMS = 12
_KRON_MAX_BYTES = 1 << 28


def _int_coeffs(p: LaurentPoly) -> bool:
    return all(type(c) is int for c in p._terms.values())


def _max_bits(p: LaurentPoly) -> int:
    return max(abs(c).bit_length() for c in p._terms.values())


class _Box:
    """Mixed-radix slot indexing for exponent vectors in lo..lo+dims-1."""

    __slots__ = ("lo", "dims", "strides", "slots")

    def __init__(self, lo: Sequence[int], dims: Sequence[int]):
        self.lo = tuple(lo)
        self.dims = tuple(dims)
        strides = [0] * len(dims)
        acc = 1
        for i in range(len(dims) - 1, -1, -1):
            strides[i] = acc
            acc *= dims[i]
        self.strides = tuple(strides)
        self.slots = acc


def _encode(p: LaurentPoly, box: _Box, sb: int) -> int:
    lay = _layout(p.nvars)
    pos = bytearray(box.slots * sb)
    neg = None
    lo, strides = box.lo, box.strides
    for k, c in p._terms.items():
        idx = 0
        for e, l, st in zip(lay.unpack(k), lo, strides):
            idx += (e - l) * st
        at = idx * sb
        if c > 0:
            pos[at : at + sb] = c.to_bytes(sb, "little")
        else:
            if neg is None:
                neg = bytearray(box.slots * sb)
            neg[at : at + sb] = (-c).to_bytes(sb, "little")
    value = gmpy2.mpz(int.from_bytes(pos, "little"))
    if neg is not None:
        value -= gmpy2.mpz(int.from_bytes(neg, "little"))
    return value


def _decode(value, nvars: int, box: _Box, sb: int) -> dict[int, int] | None:
    """Signed base-X digits back to packed terms; None if the value does not fit."""
    half = 1 << (8 * sb - 1)
    total = box.slots * sb
    bias_pattern = bytes(sb - 1) + b"\x80"
    biased = int(value + gmpy2.mpz(int.from_bytes(bias_pattern * box.slots, "little")))
    if biased < 0 or biased.bit_length() > 8 * total:
        return None
    raw = biased.to_bytes(total, "little")
    lay = _layout(nvars)
    lo, dims = box.lo, box.dims
    out: dict[int, int] = {}
    for idx in range(box.slots):
        chunk = raw[idx * sb : idx * sb + sb]
        if chunk == bias_pattern:
            continue
        c = int.from_bytes(chunk, "little") - half
        exps = [0] * nvars
        rest = idx
        for i in range(nvars - 1, -1, -1):
            rest, r = divmod(rest, dims[i])
            exps[i] = r + lo[i]
        out[lay.pack(exps)] = c
    return out


def _kron_mul_worthwhile(a: LaurentPoly, b: LaurentPoly) -> bool:
    if min(len(a), len(b)) < _KRON_MIN_TERMS or not (_int_coeffs(a) and _int_coeffs(b)):
        return False
    (alo, ahi), (blo, bhi) = a.bounds(), b.bounds()
    slots = 1
    for x0, x1, y0, y1 in zip(alo, ahi, blo, bhi):
        slots *= x1 - x0 + y1 - y0 + 1
    sb = (_max_bits(a) + _max_bits(b) + min(len(a), len(b)).bit_length() + 9) // 8
    return slots * sb <= min(_KRON_MAX_BYTES, 16 * len(a) * len(b))


def _kron_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    (alo, ahi), (blo, bhi) = a.bounds(), b.bounds()
    sb = (_max_bits(a) + _max_bits(b) + min(len(a), len(b)).bit_length() + 9) // 8
    box = _Box(
        [x + y for x, y in zip(alo, blo)],
        [x1 - x0 + y1 - y0 + 1 for x0, x1, y0, y1 in zip(alo, ahi, blo, bhi)],
    )
    va = _encode(a, _Box(alo, box.dims), sb)
    vb = _encode(b, _Box(blo, box.dims), sb)
    terms = _decode(va * vb, a.nvars, box, sb)
    assert terms is not None, "slot width bound violated"
    return LaurentPoly(a.nvars, terms, _trusted=True)


def _pow_slot_bytes(p: LaurentPoly, e: int) -> int:
    # each coefficient of p^e is a sum of at most len(p)^(e-1) products of e coefficients
    return (e * _max_bits(p) + (e - 1) * len(p).bit_length() + 9) // 8


def _kron_pow_worthwhile(p: LaurentPoly, e: int) -> bool:
    if len(p) < _KRON_MIN_TERMS or not _int_coeffs(p):
        return False
    lo, hi = p.bounds()
    slots = 1
    for x0, x1 in zip(lo, hi):
        slots *= e * (x1 - x0) + 1
    return slots * _pow_slot_bytes(p, e) <= min(_KRON_MAX_BYTES, 16 * len(p) ** 2 * (e - 1))


def _kron_pow(p: LaurentPoly, e: int) -> LaurentPoly:
    lo, hi = p.bounds()
    sb = _pow_slot_bytes(p, e)
    box = _Box([e * x for x in lo], [e * (x1 - x0) + 1 for x0, x1 in zip(lo, hi)])
    terms = _decode(_encode(p, _Box(lo, box.dims), sb) ** e, p.nvars, box, sb)
    assert terms is not None, "slot width bound violated"
    return LaurentPoly(p.nvars, terms, _trusted=True)


def _kron_div_worthwhile(num: LaurentPoly, den: LaurentPoly) -> bool:
    if len(den) < _KRON_MIN_TERMS or not (_int_coeffs(num) and _int_coeffs(den)):
        return False
    (nlo, nhi), (dlo, dhi) = num.bounds(), den.bounds()
    slots = 1
    for x0, x1, y0, y1 in zip(nlo, nhi, dlo, dhi):
        if x1 - x0 < y1 - y0:
            return False
        slots *= x1 - x0 + 1
    sb = (_max_bits(num) + 72) // 8
    return slots * sb <= min(_KRON_MAX_BYTES, 4 * len(num) * len(den))


def _kron_div(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly | None:
    """Quotient via big-integer division, verified by multiplying back.

    Returns None when the fast route is inconclusive; the caller then runs
    the sparse algorithm.
    """
    (nlo, nhi), (dlo, dhi) = num.bounds(), den.bounds()
    dims = [x1 - x0 + 1 for x0, x1 in zip(nlo, nhi)]
    sb = (_max_bits(num) + 72) // 8
    vn = _encode(num, _Box(nlo, dims), sb)
    vd = _encode(den, _Box(dlo, dims), sb)
    qv, r = gmpy2.f_divmod(vn, vd)
    if r:
        raise NotDivisible("Kronecker image of the numerator is not a multiple of the denominator's", num, den)
    qlo = [x - y for x, y in zip(nlo, dlo)]
    qdims = [x1 - x0 - (y1 - y0) + 1 for x0, x1, y0, y1 in zip(nlo, nhi, dlo, dhi)]
    terms = _decode(qv, num.nvars, _Box(qlo, dims), sb)
    if terms is None:
        return None
    lay = _layout(num.nvars)
    for k in terms:
        if any(not 0 <= e - l < d for e, l, d in zip(lay.unpack(k), qlo, qdims)):
            return None
    q = LaurentPoly(num.nvars, terms, _trusted=True)
    # q(X) * den(X) = num(X) holds exactly.  If no coefficient of the
    # polynomial product q * den can reach half a slot, evaluation at X is
    # injective on that product's box, so q * den = num as polynomials.
    if _max_bits(q) + _max_bits(den) + min(len(q), len(den)).bit_length() < 8 * sb - 1:
        return q
    if q * den != num:
        return None
    return q


def denominator_vector(p: LaurentPoly, n: int | None = None) -> tuple[int, ...]:
    """Negated minimal exponents of the first ``n`` variables (default: all)."""
    if not p:
        raise ValueError("the zero polynomial has no denominator vector")
    lo, _ = p.bounds()
    if n is None:
        n = p.nvars
    return tuple(-e for e in lo[:n])


def evaluate(p: LaurentPoly, point: Sequence) -> Fraction:
    """Exact value at a point with strictly positive rational coordinates."""
    if len(point) != p.nvars:
        raise ValueError(f"arity mismatch: point has {len(point)} coordinates, expected {p.nvars}")
    pt = [Fraction(v) for v in point]
    if any(v <= 0 for v in pt):
        raise ValueError("evaluation point must be strictly positive")
    cache: list[dict[int, Fraction]] = [{} for _ in pt]
    total = Fraction(0)
    for exps, c in p.terms():
        term = Fraction(c)
        for i, e in enumerate(exps):
            if e:
                v = cache[i].get(e)
                if v is None:
                    v = cache[i][e] = pt[i] ** e
                term *= v
        total += term
    return total


def is_positive(p: LaurentPoly) -> bool:
    """True iff every stored coefficient is positive."""
    return all(c > 0 for c in p._terms.values())
