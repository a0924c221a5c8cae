"""Pure-Python arithmetic kernels for sparse three-variable polynomials.

A raw polynomial is a pair ``(den, terms)`` to be read as
``(1/den) * sum(num * monomial for key, num in terms.items())``:

* ``terms`` maps a packed exponent key to a nonzero integer numerator,
* ``den`` is a positive integer common denominator,
* canonical form: ``gcd(den, *terms.values()) == 1``; the zero polynomial
  is ``(1, {})``.

Keeping one shared denominator means the inner loops below only touch
Python ints, never Fraction objects; the Fraction view is reconstructed
lazily at the API layer.

Exponent triples ``(ex, ey, ez)`` pack into a single int as
``(ex << 42) | (ey << 21) | ez``, so multiplying two monomials is one
integer addition.  Each exponent must stay below ``2**21``; ``mul`` checks
operand degrees before combining so an overflow can never corrupt a key
silently.

The compiled twin of this module is ``_speedups.pyx``; both must implement
exactly the same functions with the same semantics.
"""

from math import gcd

SHIFT = 21
MASK = (1 << SHIFT) - 1
MAX_EXP = MASK

KEY_X = 1 << (2 * SHIFT)
KEY_Y = 1 << SHIFT
KEY_Z = 1


def pack(ex, ey, ez):
    """Pack an exponent triple into one dict key."""
    return (ex << (2 * SHIFT)) | (ey << SHIFT) | ez


def unpack(key):
    """Inverse of :func:`pack`."""
    return (key >> (2 * SHIFT), (key >> SHIFT) & MASK, key & MASK)


def norm(den, terms):
    """Reduce to canonical form: strip zeros, divide out the common gcd."""
    if not terms:
        return 1, {}
    if 0 in terms.values():
        terms = {k: v for k, v in terms.items() if v}
        if not terms:
            return 1, {}
    if den == 1:
        return 1, terms
    g = gcd(den, *terms.values())
    if g == 1:
        return den, terms
    return den // g, {k: v // g for k, v in terms.items()}


def add(da, ta, db, tb):
    """Sum of two canonical raw polynomials."""
    if not ta:
        return db, dict(tb)
    if not tb:
        return da, dict(ta)
    if da == db:
        den, fa, fb = da, 1, 1
    else:
        g = gcd(da, db)
        den = da // g * db
        fa = db // g
        fb = da // g
    out = {k: v * fa for k, v in ta.items()} if fa != 1 else dict(ta)
    for k, v in tb.items():
        v *= fb
        cur = out.get(k)
        if cur is None:
            out[k] = v
        else:
            cur += v
            if cur:
                out[k] = cur
            else:
                del out[k]
    return norm(den, out)


def sub(da, ta, db, tb):
    """Difference of two canonical raw polynomials."""
    if not tb:
        return da, dict(ta)
    if da == db:
        den, fa, fb = da, 1, 1
    else:
        g = gcd(da, db)
        den = da // g * db
        fa = db // g
        fb = da // g
    out = {k: v * fa for k, v in ta.items()} if fa != 1 else dict(ta)
    for k, v in tb.items():
        v *= fb
        cur = out.get(k)
        if cur is None:
            out[k] = -v
        else:
            cur -= v
            if cur:
                out[k] = cur
            else:
                del out[k]
    return norm(den, out)


def neg(den, terms):
    """Negation; canonical in, canonical out."""
    return den, {k: -v for k, v in terms.items()}


def scale(den, terms, num, sden):
    """Multiply by the rational num/sden (sden > 0)."""
    if num == 0 or not terms:
        return 1, {}
    if num == 1 and sden == 1:
        return den, dict(terms)
    return norm(den * sden, {k: v * num for k, v in terms.items()})


def _max_exps(terms):
    mx = my = mz = 0
    for k in terms:
        e = k >> (2 * SHIFT)
        if e > mx:
            mx = e
        e = (k >> SHIFT) & MASK
        if e > my:
            my = e
        e = k & MASK
        if e > mz:
            mz = e
    return mx, my, mz


def mul(da, ta, db, tb):
    """Product of two canonical raw polynomials."""
    if not ta or not tb:
        return 1, {}
    ax, ay, az = _max_exps(ta)
    bx, by, bz = _max_exps(tb)
    if ax + bx > MAX_EXP or ay + by > MAX_EXP or az + bz > MAX_EXP:
        raise OverflowError("monomial exponent exceeds packed-key capacity")
    # Single-term operands are common (monomial shifts); keep them O(n).
    if len(ta) == 1:
        ((ka, va),) = ta.items()
        return norm(da * db, {ka + k: va * v for k, v in tb.items()})
    if len(tb) == 1:
        ((kb, vb),) = tb.items()
        return norm(da * db, {k + kb: v * vb for k, v in ta.items()})
    if len(ta) < len(tb):
        ta, tb = tb, ta
    out = {}
    get = out.get
    for kb, vb in tb.items():
        for ka, va in ta.items():
            k = ka + kb
            cur = get(k)
            if cur is None:
                out[k] = va * vb
            else:
                cur += va * vb
                if cur:
                    out[k] = cur
                else:
                    del out[k]
    return norm(da * db, out)


def pow_(den, terms, n):
    """n-th power by square and multiply; pow_(p, 0) is the constant 1."""
    if n < 0:
        raise ValueError("negative exponent")
    if n == 0:
        return 1, {0: 1}
    if not terms:
        return 1, {}
    rd, rt = den, dict(terms)
    n -= 1
    bd, bt = den, terms
    while n:
        if n & 1:
            rd, rt = mul(rd, rt, bd, bt)
        n >>= 1
        if n:
            bd, bt = mul(bd, bt, bd, bt)
    return rd, rt


def powers(den, terms, n):
    """List of raw powers p**0 .. p**n (computed incrementally)."""
    out = [(1, {0: 1})]
    if n == 0:
        return out
    out.append((den, dict(terms)))
    for _ in range(n - 1):
        out.append(mul(*out[-1], den, terms))
    return out
