"""Exact sparse polynomials in x, y, z over the rationals.

This is the computational substrate for the whole package: immutable
:class:`Polynomial` values with exact Fraction coefficients, supporting
ring arithmetic, powers, simultaneous substitution, formal partial
derivatives and evaluation.  No floating point is involved anywhere.

Internally a polynomial is held in common-denominator form
``(den, {packed exponents: int numerator})`` (see ``_kernel_py`` for the
exact contract) so the hot loops run on plain integers; coefficients are
converted to :class:`fractions.Fraction` only at the API boundary.

The degree of the zero polynomial is ``NEG_INF`` (``float("-inf")``), a
distinct sentinel that still compares and adds correctly against ints, so
``deg(p*q) == deg(p) + deg(q)`` holds for every pair.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb as binomial  # noqa: F401  (re-exported: binomial(n, k) == 0 for k > n)
from math import lcm
from typing import Iterable, Mapping, Union

from . import _kernel as K

NEG_INF = float("-inf")

VARIABLES = ("x", "y", "z")

_VAR_KEY = {"x": K.pack(1, 0, 0), "y": K.pack(0, 1, 0), "z": K.pack(0, 0, 1)}
_VAR_SHIFT = {"x": 2 * K.SHIFT, "y": K.SHIFT, "z": 0}

Scalar = Union[int, Fraction]


def _check_exponents(exps) -> tuple[int, int, int]:
    ex, ey, ez = exps
    for e in (ex, ey, ez):
        if not isinstance(e, int) or e < 0:
            raise ValueError(f"exponents must be non-negative integers, got {exps!r}")
        if e > K.MAX_EXP:
            raise OverflowError(f"exponent {e} exceeds supported maximum {K.MAX_EXP}")
    return ex, ey, ez


class Polynomial:
    """Immutable sparse polynomial in x, y, z with exact rational coefficients.

    Construct via :meth:`from_terms`, :meth:`constant`, :meth:`variable`,
    :meth:`monomial`, or from the module constants ``X``, ``Y``, ``Z`` and
    ordinary arithmetic::

        p = (X + Z**4) ** 3 - Fraction(1, 2) * Y

    Equality is exact term-map equality; instances are hashable and safe to
    share between threads.
    """

    __slots__ = ("_den", "_terms")

    def __init__(self, terms: Mapping[tuple[int, int, int], Scalar] | None = None):
        den, raw = 1, {}
        if terms:
            den, raw = _raw_from_terms(terms)
        self._den = den
        self._terms = raw

    @classmethod
    def _raw(cls, den: int, terms: dict) -> "Polynomial":
        """Wrap an already-canonical kernel pair without copying."""
        self = object.__new__(cls)
        self._den = den
        self._terms = terms
        return self

    # --- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls._raw(1, {})

    @classmethod
    def one(cls) -> "Polynomial":
        return cls._raw(1, {0: 1})

    @classmethod
    def constant(cls, value: Scalar) -> "Polynomial":
        value = Fraction(value)
        if value == 0:
            return cls.zero()
        return cls._raw(value.denominator, {0: value.numerator})

    @classmethod
    def variable(cls, name: str) -> "Polynomial":
        if name not in _VAR_KEY:
            raise ValueError(f"unknown variable {name!r}; expected one of {VARIABLES}")
        return cls._raw(1, {_VAR_KEY[name]: 1})

    @classmethod
    def monomial(cls, exponents: tuple[int, int, int], coefficient: Scalar = 1) -> "Polynomial":
        ex, ey, ez = _check_exponents(exponents)
        coefficient = Fraction(coefficient)
        if coefficient == 0:
            return cls.zero()
        return cls._raw(coefficient.denominator, {K.pack(ex, ey, ez): coefficient.numerator})

    @classmethod
    def from_terms(cls, terms: Mapping[tuple[int, int, int], Scalar]) -> "Polynomial":
        return cls._raw(*_raw_from_terms(terms))

    # --- inspection ---------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial (raises otherwise)."""
        if not self._terms:
            return Fraction(0)
        if not self.is_constant:
            raise ValueError(f"{self} is not constant")
        return Fraction(self._terms[0], self._den)

    @property
    def total_degree(self):
        """Max total degree over terms; NEG_INF for the zero polynomial."""
        if not self._terms:
            return NEG_INF
        mask, shift = K.MASK, K.SHIFT
        return max((k >> 2 * shift) + ((k >> shift) & mask) + (k & mask) for k in self._terms)

    def degree_in(self, var: str):
        """Highest exponent of one variable; NEG_INF for the zero polynomial."""
        if not self._terms:
            return NEG_INF
        shift = _VAR_SHIFT[var]
        return max((k >> shift) & K.MASK for k in self._terms)

    def involves(self, var: str) -> bool:
        shift = _VAR_SHIFT[var]
        return any((k >> shift) & K.MASK for k in self._terms)

    def terms(self) -> dict[tuple[int, int, int], Fraction]:
        """Fresh dict of exponent triple -> coefficient (canonical, no zeros)."""
        den = self._den
        return {K.unpack(k): Fraction(v, den) for k, v in self._terms.items()}

    def coefficient(self, exponents: tuple[int, int, int]) -> Fraction:
        """Coefficient of one monomial (0 if absent)."""
        ex, ey, ez = _check_exponents(exponents)
        num = self._terms.get(K.pack(ex, ey, ez))
        return Fraction(num, self._den) if num is not None else Fraction(0)

    @property
    def num_terms(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._den == other._den and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash((self._den, frozenset(self._terms.items())))

    # --- arithmetic ---------------------------------------------------

    def __add__(self, other) -> "Polynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Polynomial._raw(*K.add(self._den, self._terms, other._den, other._terms))

    __radd__ = __add__

    def __sub__(self, other) -> "Polynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Polynomial._raw(*K.sub(self._den, self._terms, other._den, other._terms))

    def __rsub__(self, other) -> "Polynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Polynomial._raw(*K.sub(other._den, other._terms, self._den, self._terms))

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(*K.neg(self._den, self._terms))

    def __pos__(self) -> "Polynomial":
        return self

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return Polynomial._raw(*K.scale(self._den, self._terms, f.numerator, f.denominator))
        if isinstance(other, Polynomial):
            return Polynomial._raw(*K.mul(self._den, self._terms, other._den, other._terms))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            if f == 0:
                raise ZeroDivisionError("division of polynomial by zero")
            return self * Fraction(f.denominator, f.numerator)
        return NotImplemented

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"polynomial exponent must be a non-negative integer, got {n!r}")
        return Polynomial._raw(*K.pow_(self._den, self._terms, n))

    def powers(self, n: int) -> list["Polynomial"]:
        """[p**0, p**1, ..., p**n], computed incrementally."""
        if n < 0:
            raise ValueError("negative power count")
        return [Polynomial._raw(d, t) for d, t in K.powers(self._den, self._terms, n)]

    # --- calculus and substitution -------------------------------------

    def partial(self, var: str) -> "Polynomial":
        """Formal partial derivative with respect to x, y, or z."""
        shift = _VAR_SHIFT[var]
        step = 1 << shift
        out = {}
        for k, v in self._terms.items():
            e = (k >> shift) & K.MASK
            if e:
                out[k - step] = v * e
        return Polynomial._raw(*K.norm(self._den, out))

    def substitute(self, sx: "Polynomial", sy: "Polynomial", sz: "Polynomial") -> "Polynomial":
        """Simultaneously replace x, y, z by sx, sy, sz (exact expansion).

        Powers of the replacements are cached up to the highest exponent
        appearing in self, which keeps repeated high-degree composition
        tractable.
        """
        if not self._terms:
            return Polynomial.zero()
        mask, shift = K.MASK, K.SHIFT
        mx = my = mz = 0
        for k in self._terms:
            e = k >> 2 * shift
            if e > mx:
                mx = e
            e = (k >> shift) & mask
            if e > my:
                my = e
            e = k & mask
            if e > mz:
                mz = e
        px = K.powers(sx._den, sx._terms, mx)
        py = K.powers(sy._den, sy._terms, my)
        pz = K.powers(sz._den, sz._terms, mz)
        acc = (1, {})
        for k, num in self._terms.items():
            part = px[k >> 2 * shift]
            ey = (k >> shift) & mask
            if ey:
                part = K.mul(*part, *py[ey])
            ez = k & mask
            if ez:
                part = K.mul(*part, *pz[ez])
            acc = K.add(*acc, *K.scale(*part, num, 1))
        return Polynomial._raw(*K.scale(*acc, 1, self._den))

    def evaluate(self, point: Iterable[Scalar]) -> Fraction:
        """Exact value at a rational point (px, py, pz)."""
        px, py, pz = (Fraction(v) for v in point)
        mask, shift = K.MASK, K.SHIFT
        cache = ({0: Fraction(1)}, {0: Fraction(1)}, {0: Fraction(1)})
        base = (px, py, pz)
        total = Fraction(0)
        for k, num in self._terms.items():
            term = Fraction(num)
            for i, e in enumerate((k >> 2 * shift, (k >> shift) & mask, k & mask)):
                if e:
                    p = cache[i].get(e)
                    if p is None:
                        p = cache[i][e] = base[i] ** e
                    term *= p
            total += term
        return total / self._den

    # --- rendering ------------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple[int, int, int], Fraction]]:
        """Terms in graded lexicographic order (x > y > z), highest first."""
        den = self._den
        items = [(K.unpack(k), v) for k, v in self._terms.items()]
        items.sort(key=lambda it: (sum(it[0]), it[0]), reverse=True)
        return [(e, Fraction(v, den)) for e, v in items]

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        chunks = []
        for exps, coeff in self.sorted_terms():
            mono = "*".join(
                v if e == 1 else f"{v}^{e}"
                for v, e in zip(VARIABLES, exps)
                if e
            )
            mag = abs(coeff)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not chunks:
                chunks.append(body if coeff > 0 else f"-{body}")
            else:
                chunks.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(chunks)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def _coerce(value) -> "Polynomial":
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, (int, Fraction)):
        return Polynomial.constant(value)
    return NotImplemented


def _raw_from_terms(terms: Mapping[tuple[int, int, int], Scalar]) -> tuple[int, dict]:
    coeffs = {}
    for exps, c in terms.items():
        key = K.pack(*_check_exponents(exps))
        c = Fraction(c)
        if key in coeffs:
            c += coeffs[key]
        coeffs[key] = c
    den = lcm(*(c.denominator for c in coeffs.values())) if coeffs else 1
    raw = {k: c.numerator * (den // c.denominator) for k, c in coeffs.items() if c}
    return K.norm(den, raw)


X = Polynomial.variable("x")
Y = Polynomial.variable("y")
Z = Polynomial.variable("z")
ZERO = Polynomial.zero()
ONE = Polynomial.one()
