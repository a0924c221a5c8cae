"""Polynomial maps of 3-space and tame words.

A :class:`PolyMap` is a triple of polynomials (the images of x, y, z).  A
:class:`TameWord` is an ordered sequence of factors, each either

* :class:`Elementary` -- adds a polynomial in the other two variables to
  one coordinate, e.g. ``E(z, g)`` is ``(x, y, z + g(x, y))``, or
* :class:`Linear` -- an invertible 3x3 rational matrix.

Word convention (fixed throughout the package): the word
``[f1, f2, ..., fn]`` denotes the composition ``fn o ... o f1``; the first
listed factor is applied first.  Under this convention expanding a
concatenation satisfies ``expand(w1 + w2) == compose(expand(w2), expand(w1))``.

Everything here is immutable and pure; expanding independent words in
parallel is safe.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .poly import Polynomial, VARIABLES, X, Y, Z

_IDENTITY_COORDS = {"x": X, "y": Y, "z": Z}


@dataclass(frozen=True)
class PolyMap:
    """A polynomial map F = (F.x, F.y, F.z) of affine 3-space."""

    x: Polynomial
    y: Polynomial
    z: Polynomial

    @classmethod
    def identity(cls) -> "PolyMap":
        return cls(X, Y, Z)

    @property
    def coords(self) -> tuple[Polynomial, Polynomial, Polynomial]:
        return (self.x, self.y, self.z)

    def compose(self, inner: "PolyMap") -> "PolyMap":
        """self o inner: substitute inner's coordinates into self's."""
        return PolyMap(*(c.substitute(inner.x, inner.y, inner.z) for c in self.coords))

    def replace(self, axis: str, poly: Polynomial) -> "PolyMap":
        parts = dict(zip(VARIABLES, self.coords))
        parts[axis] = poly
        return PolyMap(parts["x"], parts["y"], parts["z"])

    def multidegree(self) -> tuple[int, int, int]:
        """(deg F.x, deg F.y, deg F.z); rejects zero coordinates."""
        degs = []
        for name, c in zip(VARIABLES, self.coords):
            if c.is_zero:
                raise ValueError(f"coordinate {name} is the zero polynomial; multidegree undefined")
            degs.append(c.total_degree)
        return tuple(degs)

    def jacobian(self) -> list[list[Polynomial]]:
        return [[c.partial(v) for v in VARIABLES] for c in self.coords]

    def jacobian_det(self) -> Polynomial:
        """Determinant of the matrix of partials, exact."""
        (a, b, c), (d, e, f), (g, h, i) = self.jacobian()
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    def is_identity(self) -> bool:
        return self.x == X and self.y == Y and self.z == Z

    def evaluate(self, point) -> tuple[Fraction, Fraction, Fraction]:
        return tuple(c.evaluate(point) for c in self.coords)

    def __str__(self) -> str:
        return "({}, {}, {})".format(*self.coords)


@dataclass(frozen=True)
class Elementary:
    """One-coordinate shear: axis -> axis + poly(other two variables)."""

    axis: str
    poly: Polynomial

    def __post_init__(self):
        if self.axis not in VARIABLES:
            raise ValueError(f"axis must be one of {VARIABLES}, got {self.axis!r}")
        if self.poly.involves(self.axis):
            raise ValueError(f"factor polynomial uses its own axis {self.axis!r}")

    def expand(self) -> PolyMap:
        return PolyMap.identity().replace(self.axis, _IDENTITY_COORDS[self.axis] + self.poly)

    def inverse(self) -> "Elementary":
        return Elementary(self.axis, -self.poly)

    def determinant(self) -> Fraction:
        return Fraction(1)


@dataclass(frozen=True)
class Linear:
    """Invertible linear map given by a 3x3 rational matrix (row acts on (x,y,z))."""

    rows: tuple[tuple[Fraction, Fraction, Fraction], ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(v) for v in row) for row in self.rows)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("linear factor requires a 3x3 matrix")
        object.__setattr__(self, "rows", rows)
        if self.determinant() == 0:
            raise ValueError("singular linear factor")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "Linear":
        return cls(tuple(tuple(Fraction(v) for v in row) for row in rows))

    @classmethod
    def permutation(cls, order: Sequence[int]) -> "Linear":
        """Map sending coordinate i of the result to input coordinate order[i]."""
        rows = tuple(
            tuple(Fraction(1 if j == src else 0) for j in range(3)) for src in order
        )
        return cls(rows)

    def determinant(self) -> Fraction:
        ((a, b, c), (d, e, f), (g, h, i)) = self.rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    def expand(self) -> PolyMap:
        basis = (X, Y, Z)
        coords = []
        for row in self.rows:
            p = Polynomial.zero()
            for coeff, var in zip(row, basis):
                if coeff:
                    p = p + var * coeff
            coords.append(p)
        return PolyMap(*coords)

    def inverse(self) -> "Linear":
        ((a, b, c), (d, e, f), (g, h, i)) = self.rows
        det = self.determinant()
        adj = (
            (e * i - f * h, c * h - b * i, b * f - c * e),
            (f * g - d * i, a * i - c * g, c * d - a * f),
            (d * h - e * g, b * g - a * h, a * e - b * d),
        )
        return Linear(tuple(tuple(v / det for v in row) for row in adj))


Factor = Union[Elementary, Linear]


@dataclass(frozen=True)
class TameWord:
    """Ordered factor list; the first factor is applied first."""

    factors: tuple[Factor, ...] = ()

    def __init__(self, factors: Iterable[Factor] = ()):
        object.__setattr__(self, "factors", tuple(factors))

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __add__(self, other: "TameWord") -> "TameWord":
        return TameWord(self.factors + other.factors)

    def expand(self) -> PolyMap:
        """Fold the factors into a single polynomial map."""
        acc = PolyMap.identity()
        for f in self.factors:
            if isinstance(f, Elementary):
                # Only one coordinate changes; skip the full 3-substitution.
                shift = f.poly.substitute(acc.x, acc.y, acc.z)
                axis_poly = getattr(acc, f.axis) + shift
                acc = acc.replace(f.axis, axis_poly)
            else:
                acc = f.expand().compose(acc)
        return acc

    def inverse(self) -> "TameWord":
        """The word expanding to the inverse map (reverse and invert factors)."""
        return TameWord(tuple(f.inverse() for f in reversed(self.factors)))

    def linear_determinant(self) -> Fraction:
        """Product of the determinants of the linear factors (1 if none)."""
        det = Fraction(1)
        for f in self.factors:
            det *= f.determinant() if isinstance(f, Linear) else 1
        return det


# Operation-style aliases; the method forms above are what the package uses
# internally, these exist for callers that prefer free functions.

def expand_factor(f: Factor) -> PolyMap:
    return f.expand()


def compose_maps(outer: PolyMap, inner: PolyMap) -> PolyMap:
    return outer.compose(inner)


def expand_word(w: TameWord) -> PolyMap:
    return w.expand()


def invert_word(w: TameWord) -> TameWord:
    return w.inverse()


def multidegree(F: PolyMap) -> tuple[int, int, int]:
    return F.multidegree()


def jacobian_det(F: PolyMap) -> Polynomial:
    return F.jacobian_det()


def maps_equal_probabilistic(F: PolyMap, G: PolyMap, trials: int = 4, seed: int = 0) -> bool:
    """Compare two maps at deterministic pseudo-random rational points.

    Never returns False for equal maps; a True result is only evidence, and
    exact term-map comparison stays the authoritative check.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = random.Random(seed)
    for _ in range(trials):
        point = tuple(Fraction(rng.randint(-999, 999), rng.randint(1, 99)) for _ in range(3))
        if F.evaluate(point) != G.evaluate(point):
            return False
    return True
