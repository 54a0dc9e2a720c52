"""Dense univariate polynomials in H with exact rational coefficients.

Polynomials are stored as tuples of Fractions indexed by power, with the
trailing coefficient nonzero; the zero polynomial is the empty tuple.
H is the Euler-type operator d/dx * x, which acts diagonally on monomials,
so evaluation at integers and the substitution H -> H + k do most of the
work in the rewriting engine.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union

Scalar = Union[int, Fraction]
HPoly = tuple  # tuple[Fraction, ...]

ZERO: HPoly = ()
ONE: HPoly = (Fraction(1),)
H: HPoly = (Fraction(0), Fraction(1))


def trim(coeffs: Sequence[Scalar]) -> HPoly:
    """Normalize a coefficient sequence: coerce to Fraction, drop trailing zeros."""
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def degree(p: HPoly) -> int:
    return len(p) - 1


def add(p: HPoly, q: HPoly) -> HPoly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for t, c in enumerate(q):
        out[t] += c
    return trim(out)


def neg(p: HPoly) -> HPoly:
    return tuple(-c for c in p)


def scale(c: Scalar, p: HPoly) -> HPoly:
    if c == 0:
        return ZERO
    c = Fraction(c)
    return tuple(c * a for a in p)


def mul(p: HPoly, q: HPoly) -> HPoly:
    if not p or not q:
        return ZERO
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for s, a in enumerate(p):
        if a:
            for t, b in enumerate(q):
                out[s + t] += a * b
    return trim(out)


def shift(p: HPoly, k: int) -> HPoly:
    """Substitute H -> H + k (Taylor shift by Horner on the linear factor)."""
    if k == 0 or not p:
        return p
    res: list[Fraction] = [p[-1]]
    for t in range(len(p) - 2, -1, -1):
        # res = res*(H+k) + p[t]
        nxt = [Fraction(0)] * (len(res) + 1)
        for u, c in enumerate(res):
            nxt[u] += k * c
            nxt[u + 1] += c
        nxt[0] += p[t]
        res = nxt
    return trim(res)


def evaluate(p: HPoly, v: Scalar) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * v + c
    return acc


def divmod_monic(p: HPoly, m: HPoly) -> tuple[HPoly, HPoly]:
    """Quotient and remainder of p by a monic divisor m."""
    if not m or m[-1] != 1:
        raise ValueError("divisor must be monic")
    rem = list(p)
    dq = len(p) - len(m)
    if dq < 0:
        return ZERO, trim(rem)
    quo = [Fraction(0)] * (dq + 1)
    for t in range(dq, -1, -1):
        c = rem[t + len(m) - 1]
        if c:
            quo[t] = c
            for u, b in enumerate(m):
                rem[t + u] -= c * b
    return trim(quo), trim(rem)


def rising_factorial(i: int) -> HPoly:
    """The monic product H(H+1)...(H+i-1); the empty product for i = 0."""
    out = ONE
    for k in range(i):
        out = mul(out, (Fraction(k), Fraction(1)))
    return out
