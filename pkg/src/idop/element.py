"""Canonical forms and exact arithmetic for rank-1 integro-differential operators.

The algebra acts on K[x] and is generated by d (differentiation), I
(integration with zero constant term) and H = d*x.  Writing v_i for I^i
(i > 0), 1 (i = 0) and d^|i| (i < 0), every operator is a unique finite sum

    sum_i  v_i * b_i(H)   +   sum_{s,t}  c_{st} * e(s,t)

with b_i in Q[H], where e(s,t) = I^s d^t - I^{s+1} d^{t+1} are the
matrix-unit-like elements spanning the unique proper two-sided ideal.
Element1 stores exactly this form: a sparse map degree -> H-polynomial and a
sparse map (s,t) -> coefficient.  Equality of stored forms is equality of
operators.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union

from . import hpoly

Scalar = Union[int, Fraction]

# A basis atom is ("v", i, t) for v_i * H^t, or ("e", s, t) for e(s,t).
Atom = Tuple[str, int, int]

ATOM_ONE: Atom = ("v", 0, 0)

_EUNIT_NAME = re.compile(r"^e\((\d+)\s*,\s*(\d+)\)$")


def graded_atom(i: int, t: int) -> Atom:
    if t < 0:
        raise ValueError(f"H-power must be nonnegative, got {t}")
    return ("v", i, t)


def eunit_atom(s: int, t: int) -> Atom:
    if s < 0 or t < 0:
        raise ValueError(f"e-unit indices must be nonnegative, got ({s},{t})")
    return ("e", s, t)


def atom_sort_key(atom: Atom) -> Tuple[int, int, int]:
    tag, a, b = atom
    return (0 if tag == "v" else 1, a, b)


class Element1:
    """A rank-1 operator in canonical form.  Values are immutable by convention."""

    __slots__ = ("graded", "fpart")

    def __init__(
        self,
        graded: Optional[Mapping[int, Sequence]] = None,
        fpart: Optional[Mapping[Tuple[int, int], Scalar]] = None,
    ):
        g: dict[int, hpoly.HPoly] = {}
        if graded:
            for i, p in graded.items():
                p = hpoly.trim(p)
                if p:
                    g[int(i)] = p
        f: dict[Tuple[int, int], Fraction] = {}
        if fpart:
            for (s, t), c in fpart.items():
                if s < 0 or t < 0:
                    raise ValueError(f"e-unit indices must be nonnegative, got ({s},{t})")
                c = Fraction(c)
                if c:
                    f[(s, t)] = c
        self.graded = g
        self.fpart = f

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "Element1":
        return Element1()

    @staticmethod
    def one() -> "Element1":
        return Element1({0: hpoly.ONE})

    @classmethod
    def from_generator(cls, name: str) -> "Element1":
        """Build a generator: 'x', 'd', 'I', 'H', or 'e(s,t)'."""
        if name == "x":
            return cls({1: hpoly.H})  # x = I*H
        if name == "d":
            return cls({-1: hpoly.ONE})
        if name == "I":
            return cls({1: hpoly.ONE})
        if name == "H":
            return cls({0: hpoly.H})
        m = _EUNIT_NAME.match(name)
        if m:
            return cls(fpart={(int(m.group(1)), int(m.group(2))): 1})
        raise ValueError(f"unknown generator {name!r}")

    # -- basic structure ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.graded and not self.fpart

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element1):
            return NotImplemented
        return self.graded == other.graded and self.fpart == other.fpart

    __hash__ = None  # mutable dict fields; canonical equality only

    def atoms(self) -> Iterator[Tuple[Atom, Fraction]]:
        """Expand the canonical form over basis atoms (nonzero coefficients only)."""
        for i, p in self.graded.items():
            for t, c in enumerate(p):
                if c:
                    yield ("v", i, t), c
        for (s, t), c in self.fpart.items():
            yield ("e", s, t), c

    def support_vector(self) -> dict[Atom, Fraction]:
        return dict(self.atoms())

    # -- linear operations -------------------------------------------------

    def __add__(self, other: "Element1") -> "Element1":
        if not isinstance(other, Element1):
            return NotImplemented
        g = dict(self.graded)
        for i, p in other.graded.items():
            q = hpoly.add(g.get(i, hpoly.ZERO), p)
            if q:
                g[i] = q
            else:
                g.pop(i, None)
        f = dict(self.fpart)
        for k, c in other.fpart.items():
            d = f.get(k, Fraction(0)) + c
            if d:
                f[k] = d
            else:
                f.pop(k, None)
        out = Element1.__new__(Element1)
        out.graded, out.fpart = g, f
        return out

    def scale(self, c: Scalar) -> "Element1":
        c = Fraction(c)
        if not c:
            return Element1()
        out = Element1.__new__(Element1)
        out.graded = {i: hpoly.scale(c, p) for i, p in self.graded.items()}
        out.fpart = {k: c * v for k, v in self.fpart.items()}
        return out

    def __rmul__(self, c: Scalar) -> "Element1":
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __neg__(self) -> "Element1":
        return self.scale(-1)

    def __sub__(self, other: "Element1") -> "Element1":
        return self + (-other)

    # -- multiplication ----------------------------------------------------

    def __mul__(self, other: "Element1") -> "Element1":
        """Product in canonical form, component-wise over the graded/e split.

        Uses p(H) v_j = v_j p(H+j), the e-unit calculus, and the telescoped
        expansion of I^a d^m; see atom_mul for the underlying atom rules.
        """
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Element1):
            return NotImplemented
        g: dict[int, dict[int, Fraction]] = {}
        f: dict[Tuple[int, int], Fraction] = {}

        def add_poly(deg: int, p: hpoly.HPoly) -> None:
            acc = g.setdefault(deg, {})
            for t, c in enumerate(p):
                if c:
                    acc[t] = acc.get(t, Fraction(0)) + c

        def add_e(key: Tuple[int, int], c: Fraction) -> None:
            if c:
                f[key] = f.get(key, Fraction(0)) + c

        for i, p in self.graded.items():
            for j, q in other.graded.items():
                r = hpoly.mul(hpoly.shift(p, j), q)  # v_i p(H) v_j q(H) = v_i v_j p(H+j) q(H)
                add_poly(i + j, r)
                if i > 0 and j < 0:
                    # I^a d^m = v_{a-m} - sum of e-units along the diagonal
                    a, m = i, -j
                    ks, ts = max(a - m, 0), max(m - a, 0)
                    for u in range(min(a, m)):
                        add_e((u + ks, u + ts), -hpoly.evaluate(r, u + ts + 1))
            for (u, v), c in other.fpart.items():
                if u + i >= 0:  # v_i e(u,v) = e(u+i,v), killed when d-power exceeds u
                    add_e((u + i, v), c * hpoly.evaluate(p, u + 1))
        for (u, v), c in self.fpart.items():
            for j, q in other.graded.items():
                vv = v - j  # e(u,v) I = e(u,v-1); e(u,v) d = e(u,v+1)
                if vv >= 0:
                    add_e((u, vv), c * hpoly.evaluate(q, vv + 1))
            for (w, z), dcoef in other.fpart.items():
                if v == w:
                    add_e((u, z), c * dcoef)

        out = Element1.__new__(Element1)
        out.graded = {}
        for deg, acc in g.items():
            if acc:
                p = hpoly.trim([acc.get(t, 0) for t in range(max(acc) + 1)])
                if p:
                    out.graded[deg] = p
        out.fpart = {k: c for k, c in f.items() if c}
        return out

    def power(self, k: int) -> "Element1":
        if k < 0:
            raise ValueError("negative powers are not defined in the operator algebra")
        out = Element1.one()
        for _ in range(k):
            out = out * self
        return out

    # -- structural queries --------------------------------------------------

    def fdegree(self) -> int:
        """Size of the smallest square e-index block containing the e-part; -1 if none."""
        if not self.fpart:
            return -1
        return max(max(s, t) for s, t in self.fpart)

    def grade_component(self, i: int) -> "Element1":
        """The degree-i component: v_i b_i(H) plus all e(s,t) with s - t = i."""
        g = {i: self.graded[i]} if i in self.graded else None
        f = {k: c for k, c in self.fpart.items() if k[0] - k[1] == i}
        return Element1(g, f)

    def grades(self) -> set[int]:
        out = set(self.graded)
        out.update(s - t for s, t in self.fpart)
        return out

    def transpose(self) -> "Element1":
        """Matrix transpose in the divided-power basis: d <-> I, H fixed, e(s,t) -> e(t,s).

        An involutive anti-automorphism: v_i b(H) -> b(H) v_{-i} = v_{-i} b(H-i).
        """
        g = {-i: hpoly.shift(p, -i) for i, p in self.graded.items()}
        f = {(t, s): c for (s, t), c in self.fpart.items()}
        out = Element1.__new__(Element1)
        out.graded, out.fpart = g, f
        return out

    # -- the polynomial representation ---------------------------------------

    def apply(self, p: Mapping[int, Scalar]) -> dict[int, Fraction]:
        """Act on a polynomial given as a sparse map exponent -> coefficient."""
        out: dict[int, Fraction] = {}
        for atom, c in self.atoms():
            for s, cp in p.items():
                res = atom_apply_power(atom, s)
                if res is not None:
                    coeff, r = res
                    val = out.get(r, Fraction(0)) + c * Fraction(cp) * coeff
                    if val:
                        out[r] = val
                    else:
                        out.pop(r, None)
        return out

    # -- quotient by the e-span ----------------------------------------------

    def project_b1(self) -> "B1Element":
        """Image in the skew Laurent algebra Q[H][d, d^-1]; the e-span is the kernel."""
        terms: dict[Tuple[int, int], Fraction] = {}
        for i, p in self.graded.items():
            # v_i b(H) maps to d^{-i} b(H) = b(H-i) d^{-i}
            q = hpoly.shift(p, -i)
            for t, c in enumerate(q):
                if c:
                    terms[(-i, t)] = terms.get((-i, t), Fraction(0)) + c
        return B1Element(terms)

    # -- printing --------------------------------------------------------------

    def __str__(self) -> str:
        terms: list[Tuple[Fraction, str]] = []
        for i in sorted(self.graded):
            p = self.graded[i]
            for t, c in enumerate(p):
                if c:
                    terms.append((c, _graded_atom_str(i, t)))
        for (s, t) in sorted(self.fpart):
            terms.append((self.fpart[(s, t)], f"e({s},{t})"))
        return format_terms(terms)

    __repr__ = __str__


def _graded_atom_str(i: int, t: int, suffix: str = "") -> str:
    parts = []
    if i > 0:
        parts.append(f"I{suffix}" if i == 1 else f"I{suffix}^{i}")
    elif i < 0:
        parts.append(f"d{suffix}" if i == -1 else f"d{suffix}^{-i}")
    if t > 0:
        parts.append(f"H{suffix}" if t == 1 else f"H{suffix}^{t}")
    return "*".join(parts)


def format_terms(terms: list[Tuple[Fraction, str]]) -> str:
    """Render a list of (coefficient, atom string) pairs; empty atom means a scalar."""
    if not terms:
        return "0"
    pieces: list[str] = []
    for idx, (c, a) in enumerate(terms):
        mag = abs(c)
        if not a:
            body = str(mag)
        elif mag == 1:
            body = a
        else:
            body = f"{mag}*{a}"
        if idx == 0:
            pieces.append(f"-{body}" if c < 0 else body)
        else:
            pieces.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(pieces)


def from_atoms(pairs: Iterable[Tuple[Atom, Scalar]]) -> Element1:
    """Reassemble an Element1 from (atom, coefficient) pairs, merging duplicates."""
    g: dict[int, dict[int, Fraction]] = {}
    f: dict[Tuple[int, int], Fraction] = {}
    for (tag, a, b), c in pairs:
        c = Fraction(c)
        if tag == "v":
            acc = g.setdefault(a, {})
            acc[b] = acc.get(b, Fraction(0)) + c
        else:
            f[(a, b)] = f.get((a, b), Fraction(0)) + c
    graded = {
        i: [acc.get(t, 0) for t in range(max(acc) + 1)] for i, acc in g.items() if acc
    }
    return Element1(graded, f)


def atom_mul(left: Atom, right: Atom) -> Element1:
    """Product of two basis atoms, written back in canonical form.

    The complete rule table:
      p(H) v_j       = v_j p(H+j)
      d^m I^a        = v_{a-m}
      I^a d^m        = v_{a-m} - sum_{u < min(a,m)} e(u+max(a-m,0), u+max(m-a,0))
      p(H) e(s,t)    = p(s+1) e(s,t)        e(s,t) p(H) = p(t+1) e(s,t)
      I e(s,t)       = e(s+1,t)             d e(s,t)    = e(s-1,t)   (0 if s = 0)
      e(s,t) I       = e(s,t-1) (0 if t=0)  e(s,t) d    = e(s,t+1)
      e(s,t) e(u,v)  = [t == u] e(s,v)
    """
    ltag, la, lb = left
    rtag, ra, rb = right
    if ltag == "v" and rtag == "v":
        i, s, j, t = la, lb, ra, rb
        # v_i H^s v_j H^t = v_i v_j (H+j)^s H^t
        r = hpoly.shift(tuple(Fraction(0) for _ in range(s)) + (Fraction(1),), j)
        r = hpoly.mul(r, tuple(Fraction(0) for _ in range(t)) + (Fraction(1),))
        g = {i + j: r}
        f: dict[Tuple[int, int], Fraction] = {}
        if i > 0 and j < 0:
            a, m = i, -j
            ks, ts = max(a - m, 0), max(m - a, 0)
            for u in range(min(a, m)):
                c = hpoly.evaluate(r, u + ts + 1)
                if c:
                    f[(u + ks, u + ts)] = -c
        return Element1(g, f)
    if ltag == "v":
        i, s, u, v = la, lb, ra, rb
        if u + i < 0:
            return Element1()
        return Element1(fpart={(u + i, v): Fraction(u + 1) ** s})
    if rtag == "v":
        u, v, j, t = la, lb, ra, rb
        vv = v - j
        if vv < 0:
            return Element1()
        return Element1(fpart={(u, vv): Fraction(vv + 1) ** t})
    u, v, w, z = la, lb, ra, rb
    if v != w:
        return Element1()
    return Element1(fpart={(u, z): 1})


def atom_apply_power(atom: Atom, s: int) -> Optional[Tuple[Fraction, int]]:
    """Action of a basis atom on the monomial x^s: the resulting (coefficient, exponent).

    H x^s = (s+1) x^s, d x^s = s x^{s-1}, I x^s = x^{s+1}/(s+1), and
    e(u,v) x^s = [v == s] (s!/u!) x^u.
    """
    tag, a, b = atom
    if tag == "v":
        i, t = a, b
        c = Fraction(s + 1) ** t
        if i >= 0:
            return (c * Fraction(math.factorial(s), math.factorial(s + i)), s + i)
        m = -i
        if s < m:
            return None
        return (c * Fraction(math.factorial(s), math.factorial(s - m)), s - m)
    u, v = a, b
    if s != v:
        return None
    return (Fraction(math.factorial(v), math.factorial(u)), u)


class B1Element:
    """A skew Laurent polynomial: sparse map (k, t) -> coefficient of H^t d^k.

    Multiplication twists by d^k p(H) = p(H+k) d^k; d^-1 denotes the inverse
    of d, which exists in the quotient because I d = 1 - e(0,0) dies there.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Tuple[int, int], Scalar]] = None):
        out: dict[Tuple[int, int], Fraction] = {}
        if terms:
            for (k, t), c in terms.items():
                c = Fraction(c)
                if c:
                    out[(int(k), int(t))] = c
        self.terms = out

    @staticmethod
    def zero() -> "B1Element":
        return B1Element()

    @staticmethod
    def one() -> "B1Element":
        return B1Element({(0, 0): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, B1Element):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __add__(self, other: "B1Element") -> "B1Element":
        out = dict(self.terms)
        for k, c in other.terms.items():
            d = out.get(k, Fraction(0)) + c
            if d:
                out[k] = d
            else:
                out.pop(k, None)
        res = B1Element.__new__(B1Element)
        res.terms = out
        return res

    def scale(self, c: Scalar) -> "B1Element":
        c = Fraction(c)
        res = B1Element.__new__(B1Element)
        res.terms = {k: c * v for k, v in self.terms.items()} if c else {}
        return res

    def __rmul__(self, c: Scalar) -> "B1Element":
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __neg__(self) -> "B1Element":
        return self.scale(-1)

    def __sub__(self, other: "B1Element") -> "B1Element":
        return self + (-other)

    def __mul__(self, other: "B1Element") -> "B1Element":
        if not isinstance(other, B1Element):
            return NotImplemented
        out: dict[Tuple[int, int], Fraction] = {}
        for (k, t), c in self.terms.items():
            for (l, u), d in other.terms.items():
                # H^t d^k H^u d^l = H^t (H+k)^u d^{k+l}
                p = hpoly.mul(
                    tuple(Fraction(0) for _ in range(t)) + (Fraction(1),),
                    hpoly.shift(tuple(Fraction(0) for _ in range(u)) + (Fraction(1),), k),
                )
                for m, a in enumerate(p):
                    if a:
                        key = (k + l, m)
                        val = out.get(key, Fraction(0)) + c * d * a
                        if val:
                            out[key] = val
                        else:
                            out.pop(key, None)
        res = B1Element.__new__(B1Element)
        res.terms = out
        return res

    def __str__(self) -> str:
        terms: list[Tuple[Fraction, str]] = []
        for (k, t) in sorted(self.terms):
            parts = []
            if t > 0:
                parts.append("H" if t == 1 else f"H^{t}")
            if k != 0:
                parts.append("d" if k == 1 else f"d^{k}")
            terms.append((self.terms[(k, t)], "*".join(parts)))
        return format_terms(terms)

    __repr__ = __str__


def b1_mul(u: B1Element, v: B1Element) -> B1Element:
    return u * v
