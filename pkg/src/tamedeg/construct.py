"""Constructions of tame automorphisms with a prescribed multidegree.

Given a target triple (a, b, c) of coordinate degrees, sorted so that
a <= b <= c, the dispatcher tries in order:

1. ``a <= 2``            -- parity/divisibility always works (small-a plan);
2. ``a | b``             -- divisible plan;
3. ``c = k*a + l*b``     -- semigroup plan (membership in the numerical
   semigroup generated by a and b);
4. ``c >= lcm(a,b) - a`` -- high-range plan: a shifted difference of pure
   powers whose top terms cancel;
5. ``c0 <= c < lcm-a``   -- mid-range plan: the same power difference, with
   rational tuning coefficients on the y-coordinate chosen so the lowest
   mixed terms cancel and the degree drops to exactly c.

Here c0 is the coverage threshold computed by :func:`coverage_threshold`.
If nothing applies the result is Unknown (``None``): no claim of
non-existence is ever made.

Every emitted plan is verified symbolically (multidegree, Jacobian,
inverse-word identity, cancellation) before being returned; a plan that
fails its own verification raises :class:`InternalVerificationError`,
which is a bug signal, never an expected outcome.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd, lcm
from typing import Optional

from .maps import Elementary, Linear, PolyMap, TameWord
from .poly import Polynomial, X, Y, Z, binomial


class Case(str, Enum):
    """Which construction produced a plan."""

    SEMIGROUP = "semigroup"
    DIVISIBLE = "divisible"
    HIGH_RANGE = "high_range"
    HIGH_RANGE_POWER = "high_range_power"
    MID_RANGE = "mid_range"


class InternalVerificationError(Exception):
    """A constructed plan failed its own symbolic verification (a bug)."""

    def __init__(self, plan, report):
        self.plan = plan
        self.report = report
        super().__init__(
            f"plan for {plan.triple} (case {plan.case.value}) failed verification: "
            + "; ".join(report.details)
        )


@dataclass(frozen=True)
class ThresholdInfo:
    """Coverage threshold for a pair (a, b) with b > a > 2, a not dividing b.

    ``slack = min(b-1, (a-1)*(floor(b/a)+1))`` and the constructions cover
    every c >= lcm(a,b) - slack.  When slack == b-1 the threshold lowers
    further to c0 = lcm - b (``refined``), because lcm - b is a multiple of
    b and is realized directly by the semigroup case.
    """

    lcm: int
    slack: int
    c0: int
    refined: bool


@dataclass
class TamePairReport:
    """Result of sweeping every candidate c for a fixed pair (a, b)."""

    a: int
    b: int
    certified: bool
    c0: Optional[int]
    window: tuple[int, int]
    uncovered: tuple[int, ...]
    threshold: Optional[ThresholdInfo]


@dataclass
class ConstructionPlan:
    """A tame word realizing multidegree ``triple``, plus how it was found.

    ``triple`` is the sorted target; ``input_triple``/``permutation`` record
    the order the caller asked for.  ``word_for_input_order`` appends the
    permutation as a linear factor so the expanded coordinates carry the
    requested degrees in the requested positions.
    """

    triple: tuple[int, int, int]
    case: Case
    params: dict
    word: TameWord
    predicted_mdeg: tuple[int, int, int]
    input_triple: tuple[int, int, int]
    permutation: tuple[int, int, int] = (0, 1, 2)
    verification: object = field(default=None, compare=False, repr=False)
    _expanded: object = field(default=None, compare=False, repr=False)

    def expand(self) -> PolyMap:
        if self._expanded is None:
            self._expanded = self.word.expand()
        return self._expanded

    def word_for_input_order(self) -> TameWord:
        """The word composed with the permutation restoring input order."""
        if self.permutation == (0, 1, 2):
            return self.word
        inv = [0, 0, 0]
        for pos, src in enumerate(self.permutation):
            inv[src] = pos
        return self.word + TameWord([Linear.permutation(inv)])


# --- arithmetic helpers -------------------------------------------------


def semigroup_decompose(a: int, b: int, c: int) -> Optional[tuple[int, int]]:
    """Witness (k, l) with k*a + l*b == c and minimal l, or None.

    Brute force over l from 0 to c // b; the first hit has minimal l and k
    is then forced.
    """
    _check_positive(a=a, b=b, c=c)
    for l in range(c // b + 1):
        rest = c - l * b
        if rest % a == 0:
            return rest // a, l
    return None


def sylvester_bound(a: int, b: int) -> int:
    """(a-1)(b-1): every c at or above it lies in the semigroup <a, b>.

    Classical Sylvester/Frobenius bound; requires gcd(a, b) == 1.
    """
    _check_positive(a=a, b=b)
    if gcd(a, b) != 1:
        raise ValueError(f"sylvester_bound requires coprime arguments, gcd({a},{b}) != 1")
    return (a - 1) * (b - 1)


def coverage_threshold(a: int, b: int) -> ThresholdInfo:
    """Smallest c0 such that the range constructions cover every c >= c0."""
    _require_mid_pair(a, b)
    e = lcm(a, b)
    slack = min(b - 1, (a - 1) * (b // a + 1))
    refined = slack == b - 1
    c0 = e - b if refined else e - slack
    return ThresholdInfo(lcm=e, slack=slack, c0=c0, refined=refined)


def cancellation_coefficients(a: int, b: int) -> list[Fraction]:
    """Tuning coefficients u_1..u_{floor(b/a)} for the mid-range plan.

    u_k is the coefficient of x^k z^{b-ka} added to the y-coordinate; they
    are chosen recursively so that in the expanded third coordinate the
    terms x^i z^{lcm - i*a} vanish for 1 <= i <= floor(b/a):

        u_1 = b/a,
        u_i = (b/e) * (C(e/a, i)
              - sum_{j=2..i} C(e/b, j) * [t^i] (u_1 t + ... + u_{i-1} t^{i-1})^j)

    with e = lcm(a, b).  The bracket is a sum over ordered compositions of
    i, matching the multinomial expansion of the j-th power.
    """
    _require_mid_pair(a, b)
    kmax = b // a
    e = lcm(a, b)
    ea, eb = e // a, e // b
    u = [Fraction(b, a)]
    for i in range(2, kmax + 1):
        series = [Fraction(0)] + u  # coefficients of t^0 .. t^(i-1)
        rhs = Fraction(binomial(ea, i))
        power = series
        for j in range(2, i + 1):
            power = _convolve(power, series, i)
            rhs -= binomial(eb, j) * power[i]
        u.append(Fraction(b, e) * rhs)
    return u


def _convolve(p: list[Fraction], q: list[Fraction], limit: int) -> list[Fraction]:
    out = [Fraction(0)] * (limit + 1)
    for i, pi in enumerate(p):
        if pi == 0 or i > limit:
            continue
        for j, qj in enumerate(q):
            if i + j > limit:
                break
            if qj:
                out[i + j] += pi * qj
    return out


# --- word builders ------------------------------------------------------


def semigroup_word(a: int, b: int, k: int, l: int) -> TameWord:
    """Word for the semigroup case: multidegree (a, b, k*a + l*b)."""
    _check_positive(a=a, b=b)
    if k < 0 or l < 0:
        raise ValueError("witness exponents must be non-negative")
    if k == 0 and l == 0:
        raise ValueError("witness (0, 0) would give a constant shift, not degree c")
    return TameWord(
        [
            Elementary("x", Z**a),
            Elementary("y", Z**b),
            Elementary("z", Polynomial.monomial((k, l, 0))),
        ]
    )


def divisible_word(a: int, d: int, c: int) -> TameWord:
    """Word for b = d*a: multidegree (a, d*a, c)."""
    _check_positive(a=a, d=d, c=c)
    return TameWord(
        [
            Elementary("x", Y**a),
            Elementary("z", Y**c),
            Elementary("y", X**d),
        ]
    )


# --- plan builders (sorted triples only) ---------------------------------


def plan_small_a(a: int, b: int, c: int) -> ConstructionPlan:
    """Plan for a <= 2 (always succeeds)."""
    _check_sorted(a, b, c)
    if a > 2:
        raise ValueError("plan_small_a requires a <= 2")
    if a == 2 and b % 2 == 0:
        return _divisible_plan(a, b, c)
    # a == 1, or a == 2 with b odd: c or c-b is a multiple of a.
    witness = semigroup_decompose(a, b, c)
    assert witness is not None
    return _semigroup_plan(a, b, c, witness)


def plan_high_range(a: int, b: int, c: int) -> ConstructionPlan:
    """Plan for c >= lcm(a,b) - a (requires b > a > 2, a not dividing b).

    Writes c = lcm + (k-1)*a + m with 0 <= m < a.  For m > 0 the third
    coordinate gains x^k * (x^(lcm/a) - y^(lcm/b)); after substituting
    x -> x + z^a + z^m and y -> y + z^b the two z^lcm terms cancel and the
    top surviving monomial is (lcm/a) * z^(m + lcm - a), of degree exactly c.
    For m = 0 a single pure power does the job.
    """
    _require_mid_pair(a, b)
    _check_sorted(a, b, c)
    e = lcm(a, b)
    if c < e - a:
        raise ValueError(f"high-range plan requires c >= {e - a}, got {c}")
    k, m = divmod(c - e + a, a)
    if m == 0:
        exponent = e // a + k - 1
        word = TameWord(
            [
                Elementary("x", Z**a),
                Elementary("y", Z**b),
                Elementary("z", Polynomial.monomial((exponent, 0, 0))),
            ]
        )
        return ConstructionPlan(
            triple=(a, b, c),
            case=Case.HIGH_RANGE_POWER,
            params={"lcm": e, "k": k, "exponent": exponent},
            word=word,
            predicted_mdeg=(a, b, c),
            input_triple=(a, b, c),
        )
    shear = Polynomial.monomial((k + e // a, 0, 0)) - Polynomial.monomial((k, e // b, 0))
    word = TameWord(
        [
            Elementary("x", Z**a + Z**m),
            Elementary("y", Z**b),
            Elementary("z", shear),
        ]
    )
    return ConstructionPlan(
        triple=(a, b, c),
        case=Case.HIGH_RANGE,
        params={"lcm": e, "k": k, "m": m},
        word=word,
        predicted_mdeg=(a, b, c),
        input_triple=(a, b, c),
    )


def plan_mid_range(a: int, b: int, c: int) -> ConstructionPlan:
    """Plan for c0 <= c < lcm(a,b) - a with m = b + c - lcm in (0, b).

    The y-coordinate receives z^b + z^m plus the tuned correction
    sum(u_k x^k z^(b - k*a)); the third coordinate is then
    z + (x + z^a)^(lcm/a) - (y-coordinate)^(lcm/b), whose degree collapses
    to exactly c thanks to the cancellation built into the coefficients.
    """
    thr = coverage_threshold(a, b)
    _check_sorted(a, b, c)
    e = thr.lcm
    if not thr.c0 <= c < e - a:
        raise ValueError(
            f"mid-range plan covers {thr.c0} <= c < {e - a} for ({a}, {b}); got c = {c}"
        )
    m = b + c - e
    if m <= 0:
        raise ValueError(
            f"c = {c} gives shift exponent {m} <= 0 (c = lcm - b belongs to the semigroup case)"
        )
    u = cancellation_coefficients(a, b)
    correction = Polynomial.from_terms(
        {(k, 0, b - k * a): coeff for k, coeff in enumerate(u, start=1)}
    )
    g = Z**b + Z**m + correction
    shear = Polynomial.monomial((e // a, 0, 0)) - Polynomial.monomial((0, e // b, 0))
    word = TameWord(
        [
            Elementary("y", g),
            Elementary("x", Z**a),
            Elementary("z", shear),
        ]
    )
    return ConstructionPlan(
        triple=(a, b, c),
        case=Case.MID_RANGE,
        params={"lcm": e, "m": m, "tuning": list(u)},
        word=word,
        predicted_mdeg=(a, b, c),
        input_triple=(a, b, c),
    )


# --- dispatcher ----------------------------------------------------------


def construct(a: int, b: int, c: int, verify: bool = True) -> Optional[ConstructionPlan]:
    """Build a verified plan for multidegree (a, b, c), or None (Unknown).

    Accepts the degrees in any order; the plan is built for the sorted
    triple and records the permutation back to the caller's order.  With
    ``verify=True`` (the default) the plan is symbolically verified before
    being returned and the report is attached to the plan.
    """
    values = (a, b, c)
    _check_positive(a=a, b=b, c=c)
    order = tuple(sorted(range(3), key=lambda j: (values[j], j)))
    sa, sb, sc = (values[j] for j in order)
    plan = _dispatch(sa, sb, sc)
    if plan is None:
        return None
    plan.input_triple = values
    plan.permutation = order
    if verify:
        from .verify import verify_plan

        report = verify_plan(plan)
        plan.verification = report
        if not report.passed:
            raise InternalVerificationError(plan, report)
    return plan


def _dispatch(a: int, b: int, c: int) -> Optional[ConstructionPlan]:
    if a <= 2:
        return plan_small_a(a, b, c)
    if b % a == 0:
        return _divisible_plan(a, b, c)
    witness = semigroup_decompose(a, b, c)
    if witness is not None:
        return _semigroup_plan(a, b, c, witness)
    e = lcm(a, b)
    if c >= e - a:
        return plan_high_range(a, b, c)
    thr = coverage_threshold(a, b)
    if c >= thr.c0:
        return plan_mid_range(a, b, c)
    return None


def _semigroup_plan(a, b, c, witness) -> ConstructionPlan:
    k, l = witness
    if k * a + l * b != c:
        raise ValueError(f"witness ({k}, {l}) does not decompose {c} over ({a}, {b})")
    return ConstructionPlan(
        triple=(a, b, c),
        case=Case.SEMIGROUP,
        params={"k": k, "l": l},
        word=semigroup_word(a, b, k, l),
        predicted_mdeg=(a, b, c),
        input_triple=(a, b, c),
    )


def _divisible_plan(a, b, c) -> ConstructionPlan:
    d = b // a
    return ConstructionPlan(
        triple=(a, b, c),
        case=Case.DIVISIBLE,
        params={"d": d},
        word=divisible_word(a, d, c),
        predicted_mdeg=(a, b, c),
        input_triple=(a, b, c),
    )


def certify_pair(a: int, b: int, probe_limit: int = 10) -> TamePairReport:
    """Check constructive coverage of every c > b for the pair (a, b).

    The range constructions cover all c >= c0, so coverage is decided by
    the finite window b < c < c0; the probe extends the sweep past the
    threshold as a sanity check.  Any c in the window with no construction
    is reported in ``uncovered``.
    """
    _check_positive(a=a, b=b, probe_limit=probe_limit)
    if a >= b:
        raise ValueError("pair certification requires a < b")
    if b % a == 0:
        raise ValueError("pair certification requires a not dividing b")
    if a > 2:
        thr = coverage_threshold(a, b)
        c0 = thr.c0
    else:
        # a == 2 with b odd: every c > b is covered by the small-a plan.
        thr = None
        c0 = b + 1
    hi = max(c0, b + 1) + probe_limit
    uncovered = tuple(c for c in range(b + 1, hi + 1) if construct(a, b, c) is None)
    return TamePairReport(
        a=a,
        b=b,
        certified=not uncovered,
        c0=c0 if thr is not None else None,
        window=(b + 1, hi),
        uncovered=uncovered,
        threshold=thr,
    )


# --- validation helpers ----------------------------------------------------


def _check_positive(**named):
    for name, v in named.items():
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise ValueError(f"{name} must be a positive integer, got {v!r}")


def _check_sorted(a, b, c):
    _check_positive(a=a, b=b, c=c)
    if not a <= b <= c:
        raise ValueError(f"expected a <= b <= c, got ({a}, {b}, {c})")


def _require_mid_pair(a, b):
    _check_positive(a=a, b=b)
    if not b > a > 2:
        raise ValueError(f"requires b > a > 2, got ({a}, {b})")
    if b % a == 0:
        raise ValueError(f"requires a not dividing b, got ({a}, {b})")
