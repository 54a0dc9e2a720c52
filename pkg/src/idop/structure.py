"""Structural decompositions and the exact dimension engine.

The rank-1 algebra splits as a direct sum of three subspaces:

  A — the span of x^i d^j (the differential-operator subalgebra),
  F — the span of the e-units,
  L — the span of I^s H^t with 0 <= t < s.

In canonical coordinates, a degree-i component I^i b(H) with i > 0 belongs to
A exactly when b is divisible by the monic product H(H+1)...(H+i-1), because
x^i = I^i H(H+1)...(H+i-1); the division remainder is the L-component.
Nonpositive degrees lie entirely in A and the e-part is F.  Tensor factors are
classified independently, which yields the socle level (number of L-labelled
factors) and the census of realized label tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence, Tuple

from . import hpoly
from .element import Atom, Element1
from .oracle import RowReducer
from .tensor import ElementN

MAX_FILTRATION_INDEX = 16

Label = str  # "A", "F" or "L"
CensusLabel = Tuple[Label, ...]


@dataclass
class SplitTriple:
    a_part: Element1
    f_part: Element1
    l_part: Element1

    def total(self) -> Element1:
        return self.a_part + self.f_part + self.l_part


def split(a: Element1) -> SplitTriple:
    """Decompose into differential-operator, e-span and complement components."""
    a_graded: dict[int, hpoly.HPoly] = {}
    l_graded: dict[int, hpoly.HPoly] = {}
    for i, b in a.graded.items():
        if i <= 0:
            a_graded[i] = b
            continue
        q, r = hpoly.divmod_monic(b, hpoly.rising_factorial(i))
        if q:
            a_graded[i] = hpoly.mul(hpoly.rising_factorial(i), q)
        if r:
            l_graded[i] = r
    return SplitTriple(
        a_part=Element1(a_graded),
        f_part=Element1(fpart=a.fpart),
        l_part=Element1(l_graded),
    )


def in_a_span(e: Element1) -> bool:
    """Membership in the span of x^i d^j, checked on canonical support."""
    if e.fpart:
        return False
    for i, b in e.graded.items():
        if i > 0:
            _, r = hpoly.divmod_monic(b, hpoly.rising_factorial(i))
            if r:
                return False
    return True


def in_f_span(e: Element1) -> bool:
    return not e.graded


def in_l_span(e: Element1) -> bool:
    if e.fpart:
        return False
    return all(i > 0 and hpoly.degree(b) < i for i, b in e.graded.items())


def _atom_label_parts(atom: Atom) -> list[Tuple[Label, Atom, Fraction]]:
    """Classify a single basis atom, expanding across the three subspaces."""
    tag, a, b = atom
    if tag == "e":
        return [("F", atom, Fraction(1))]
    i, t = a, b
    if i <= 0:
        return [("A", atom, Fraction(1))]
    mono = tuple(Fraction(0) for _ in range(t)) + (Fraction(1),)
    q, r = hpoly.divmod_monic(mono, hpoly.rising_factorial(i))
    out: list[Tuple[Label, Atom, Fraction]] = []
    if q:
        prod_poly = hpoly.mul(hpoly.rising_factorial(i), q)
        out.extend(("A", ("v", i, m), c) for m, c in enumerate(prod_poly) if c)
    out.extend(("L", ("v", i, m), c) for m, c in enumerate(r) if c)
    return out


def _label_components(a: ElementN) -> dict[CensusLabel, dict[Tuple[Atom, ...], Fraction]]:
    comps: dict[CensusLabel, dict[Tuple[Atom, ...], Fraction]] = {}
    for key, c in a.terms.items():
        factor_parts = [_atom_label_parts(atom) for atom in key]
        for combo in product(*factor_parts):
            labels = tuple(lbl for lbl, _, _ in combo)
            atoms = tuple(at for _, at, _ in combo)
            coeff = c
            for _, _, cc in combo:
                coeff *= cc
            acc = comps.setdefault(labels, {})
            d = acc.get(atoms, Fraction(0)) + coeff
            if d:
                acc[atoms] = d
            else:
                acc.pop(atoms, None)
    return {labels: acc for labels, acc in comps.items() if acc}


def census(a: ElementN) -> set[CensusLabel]:
    """The set of label tuples with a nonzero component in the factor-wise
    A/F/L decomposition; always a subset of {A,F,L}^n."""
    return set(_label_components(a))


def socle_level(a: ElementN) -> int:
    """The number of L-labelled factors needed to cover the support, in 0..n."""
    if a.is_zero():
        raise ValueError("the socle level of the zero element is undefined")
    return max(sum(1 for lbl in labels if lbl == "L") for labels in _label_components(a))


def socle_member(a: ElementN, m: int) -> bool:
    if a.is_zero():
        return True
    return socle_level(a) <= m


def q_dims(i_max: int) -> list[int]:
    """Dimensions of the nested L-spans {I^j H^t : 1 <= j <= i+1, 0 <= t < j},
    computed by enumeration and exact rank."""
    red = RowReducer()
    dims = []
    for i in range(i_max + 1):
        j = i + 1
        for t in range(j):
            red.add(Element1({j: [0] * t + [1]}).support_vector())
        dims.append(red.rank)
    return dims


def kernel_witness_check(i: int, j: int, k: int, jprime: int) -> Tuple[bool, bool]:
    """Right multiplication of e(i,j)(x)e(k,*) by H_1 - H_2 in rank 2:
    the first flag is whether e(i,j)(x)e(k,j) annihilates it, the second whether
    e(i,j)(x)e(k,j') does not (expected for j != j')."""
    h_diff = ElementN(
        2,
        {
            (("v", 0, 1), ("v", 0, 0)): 1,
            (("v", 0, 0), ("v", 0, 1)): -1,
        },
    )
    same = ElementN(2, {(("e", i, j), ("e", k, j)): 1})
    other = ElementN(2, {(("e", i, j), ("e", k, jprime)): 1})
    return ((same * h_diff).is_zero(), not (other * h_diff).is_zero())


def bimodule_filtration_dims(generators: Sequence[Element1], i_max: int) -> list[int]:
    """Dimensions of V_i = span{x^a d^b g x^c d^d : g in generators, a+b+c+d <= i}.

    Every spanning product is expanded to canonical form and the dimension is
    an exact rational rank over the union of support atoms.  The result is
    nondecreasing and independent of generator order.
    """
    if not generators:
        raise ValueError("at least one generator is required")
    if any(g.is_zero() for g in generators):
        raise ValueError("generators must be nonzero")
    if i_max < 0:
        raise ValueError(f"i_max must be nonnegative, got {i_max}")
    if i_max > MAX_FILTRATION_INDEX:
        raise ValueError(
            f"i_max={i_max} exceeds the desk-scale budget ({MAX_FILTRATION_INDEX})"
        )
    x = Element1.from_generator("x")
    d = Element1.from_generator("d")
    xpow = [Element1.one()]
    dpow = [Element1.one()]
    for _ in range(i_max):
        xpow.append(xpow[-1] * x)
        dpow.append(dpow[-1] * d)
    words: dict[Tuple[int, int], Element1] = {}
    for a in range(i_max + 1):
        for b in range(i_max + 1 - a):
            words[(a, b)] = xpow[a] * dpow[b]
    left_g: dict[Tuple[int, int, int], Element1] = {}
    red = RowReducer()
    dims = []
    for i in range(i_max + 1):
        for a in range(i + 1):
            for b in range(i + 1 - a):
                for gi, g in enumerate(generators):
                    key = (a, b, gi)
                    if key not in left_g:
                        left_g[key] = words[(a, b)] * g
                    lg = left_g[key]
                    rest = i - a - b
                    for c in range(rest + 1):
                        dd = rest - c
                        red.add((lg * words[(c, dd)]).support_vector())
        dims.append(red.rank)
    return dims


@dataclass
class MultiplicityReport:
    """Growth-degree fit from finite differences of a dimension sequence.

    `second_difference` is the stabilized second difference; for quadratic
    growth dim ~ (e/2) i^2 it equals the multiplicity e.
    """

    degree: int
    second_difference: int
    stable_from: int


STABLE_WINDOW = 4  # consecutive equal differences required to accept a degree


def _diff(seq: Sequence[int]) -> list[int]:
    return [seq[k + 1] - seq[k] for k in range(len(seq) - 1)]


def _stable_tail(seq: Sequence[int]) -> Optional[int]:
    """Start index of the maximal constant suffix, if it has length >= STABLE_WINDOW."""
    if len(seq) < STABLE_WINDOW:
        return None
    idx = len(seq) - 1
    while idx > 0 and seq[idx - 1] == seq[-1]:
        idx -= 1
    if len(seq) - idx >= STABLE_WINDOW:
        return idx
    return None


def multiplicity_report(dims: Sequence[int]) -> Optional[MultiplicityReport]:
    """Detect polynomial growth degree; None when nothing stabilizes in range."""
    seq = list(dims)
    for deg in range(len(seq)):
        start = _stable_tail(seq)
        if start is not None:
            second = list(dims)
            for _ in range(2):
                second = _diff(second)
            return MultiplicityReport(
                degree=deg,
                second_difference=second[-1] if second else 0,
                stable_from=start,
            )
        seq = _diff(seq)
    return None
