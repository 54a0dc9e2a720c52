"""The machine-checkable verification suites behind `idop verify`.

Each suite returns a list of Check records; a suite passes when every check
does.  All randomized checks draw from an explicitly seeded generator, so runs
are reproducible byte for byte.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .element import Element1
from .oracle import (
    consistent,
    elementary_matrix,
    to_matrix,
    to_matrix_monomial,
)
from .sampling import (
    random_element1,
    random_element_n,
    random_nonzero_element_n,
    random_weyl_word,
)
from .structure import (
    bimodule_filtration_dims,
    census,
    in_a_span,
    in_f_span,
    in_l_span,
    kernel_witness_check,
    multiplicity_report,
    q_dims,
    socle_level,
    split,
)
from .tensor import lift, project_bn

ORACLE_WINDOW = 24

# Regression anchor: dimensions of the two-sided filtration generated by
# {1, I}, frozen from a first brute-force run of bimodule_filtration_dims.
# The second difference stabilizes at 3, the multiplicity of the full algebra
# as a bimodule over its differential-operator subalgebra.
FILTRATION_DIMS_ONE_I = [2, 7, 15, 26, 40, 57, 77, 100, 126, 155, 187, 222, 260, 301, 345]


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


def _check(checks: list[Check], name: str, ok: bool, detail: str = "") -> None:
    checks.append(Check(name, bool(ok), "" if ok else detail))


def relations_suite(seed: int = 0, samples: Optional[int] = None) -> list[Check]:
    """Defining relations, the e-unit calculus and the multiplication table."""
    checks: list[Check] = []
    one = Element1.one()
    d = Element1.from_generator("d")
    I = Element1.from_generator("I")
    H = Element1.from_generator("H")
    x = Element1.from_generator("x")
    e00 = Element1(fpart={(0, 0): 1})

    _check(checks, "d*I = 1", d * I == one)
    _check(checks, "H*I - I*H = I", H * I - I * H == I)
    _check(checks, "H*d - d*H = -d", H * d - d * H == -d)
    p = one - I * d
    _check(checks, "H*(1-I*d) = 1-I*d", H * p == p)
    _check(checks, "(1-I*d)*H = 1-I*d", p * H == p)
    _check(checks, "I*d = 1 - e(0,0)", I * d == one - e00)
    _check(checks, "x = I*H", x == I * H)
    _check(checks, "x^2 = I^2*H*(H+1)", x * x == I.power(2) * (H * H + H))

    em = lambda s, t: Element1(fpart={(s, t): 1})
    ok = all(
        em(i, j) * em(k, l) == (em(i, l) if j == k else Element1.zero())
        for i in range(4)
        for j in range(4)
        for k in range(4)
        for l in range(4)
    )
    _check(checks, "e(i,j)*e(k,l) = [j=k] e(i,l) for i,j,k,l < 4", ok)
    ok = all(
        I.power(i) * d.power(j) - I.power(i + 1) * d.power(j + 1) == em(i, j)
        for i in range(4)
        for j in range(4)
    )
    _check(checks, "I^i*d^j - I^(i+1)*d^(j+1) = e(i,j) for i,j < 4", ok)

    _check(checks, "I*H = (H-1)*I", I * H == (H - one) * I)
    _check(checks, "H*d = d*(H-1)", H * d == d * (H - one))
    ok = all(I * em(i, j) == em(i + 1, j) for i in range(4) for j in range(4))
    _check(checks, "I*e(i,j) = e(i+1,j)", ok)
    ok = all(
        em(i, j) * I == (em(i, j - 1) if j > 0 else Element1.zero())
        for i in range(4)
        for j in range(4)
    )
    _check(checks, "e(i,j)*I = e(i,j-1)", ok)
    ok = all(
        d * em(i, j) == (em(i - 1, j) if i > 0 else Element1.zero())
        for i in range(4)
        for j in range(4)
    )
    _check(checks, "d*e(i,j) = e(i-1,j)", ok)
    ok = all(em(i, j) * d == em(i, j + 1) for i in range(4) for j in range(4))
    _check(checks, "e(i,j)*d = e(i,j+1)", ok)
    ok = all(
        H * em(i, i) == (i + 1) * em(i, i) and em(i, i) * H == (i + 1) * em(i, i)
        for i in range(5)
    )
    _check(checks, "H*e(i,i) = e(i,i)*H = (i+1)*e(i,i)", ok)
    return checks


def oracle_suite(seed: int = 0, samples: Optional[int] = None) -> list[Check]:
    """Random products against truncated matrices, and the e-unit scalar law."""
    checks: list[Check] = []
    rng = random.Random(seed)
    count = 500 if samples is None else samples
    bad = None
    for k in range(count):
        a = random_element1(rng)
        b = random_element1(rng)
        if not consistent(a, b, ORACLE_WINDOW):
            bad = (k, a, b)
            break
    _check(
        checks,
        f"{count} random products match the matrix oracle at N={ORACLE_WINDOW}",
        bad is None,
        f"pair #{bad[0]}: a={bad[1]}, b={bad[2]}" if bad else "",
    )

    N = 10
    ok = True
    for i in range(9):
        for j in range(9):
            lhs = to_matrix_monomial(Element1(fpart={(i, j): 1}), N)
            rhs = elementary_matrix(i, j, N).scale(
                Fraction(_factorial(j), _factorial(i))
            )
            if lhs != rhs:
                ok = False
    _check(checks, "e(i,j) = (j!/i!) E(i,j) in the monomial basis for i,j <= 8", ok)
    return checks


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def dims_suite(seed: int = 0, samples: Optional[int] = None) -> list[Check]:
    """Exact dimension counts with known closed forms."""
    checks: list[Check] = []
    got = q_dims(12)
    want = [(i + 1) * (i + 2) // 2 for i in range(13)]
    _check(checks, "q_dims(12) = (i+1)(i+2)/2", got == want, f"got {got}")

    e00 = Element1(fpart={(0, 0): 1})
    got = bimodule_filtration_dims([e00], 10)
    want = [(i + 1) * (i + 2) // 2 for i in range(11)]
    _check(checks, "filtration dims of {e(0,0)} = (i+1)(i+2)/2", got == want, f"got {got}")
    rep = multiplicity_report(got)
    _check(
        checks,
        "e(0,0) bimodule has growth degree 2 and multiplicity 1",
        rep is not None and rep.degree == 2 and rep.second_difference == 1,
        f"got {rep}",
    )
    return checks


def holonomy_suite(seed: int = 0, samples: Optional[int] = None) -> list[Check]:
    """Quadratic growth with second difference exactly 3 for the {1, I} filtration."""
    checks: list[Check] = []
    i_max = len(FILTRATION_DIMS_ONE_I) - 1
    dims = bimodule_filtration_dims([Element1.one(), Element1.from_generator("I")], i_max)
    _check(
        checks,
        f"filtration dims of {{1, I}} up to {i_max} match the frozen table",
        dims == FILTRATION_DIMS_ONE_I,
        f"got {dims}",
    )
    rep = multiplicity_report(dims)
    stable = rep is not None and rep.degree == 2 and rep.second_difference == 3
    window = 0
    if rep is not None:
        window = len(dims) - 2 - rep.stable_from
    _check(
        checks,
        "second difference stabilizes at 3 over >= 4 indices (degree 2)",
        stable and window >= 4,
        f"got {rep}",
    )
    return checks


def socle_suite(seed: int = 0, samples: Optional[int] = None) -> list[Check]:
    """Socle levels, the census bound, and the split round-trip."""
    checks: list[Check] = []
    rng = random.Random(seed)
    I1 = Element1.from_generator("I")
    x1 = Element1.from_generator("x")
    e00 = Element1(fpart={(0, 0): 1})

    II = lift(1, I1, 2) * lift(2, I1, 2)
    _check(checks, "socle_level(I(x)I) = 2", socle_level(II) == 2)
    oneI = lift(2, I1, 2)
    _check(checks, "socle_level(1(x)I) = 1", socle_level(oneI) == 1)
    ex = lift(1, e00, 2) * lift(2, x1, 2)
    _check(checks, "socle_level(e(0,0)(x)x) = 0", socle_level(ex) == 0)

    count = 1000 if samples is None else samples
    bad = None
    for k in range(count):
        u = random_weyl_word(rng, 2)
        a = random_nonzero_element_n(rng, 2)
        v = random_weyl_word(rng, 2)
        prod = u * a * v
        if prod.is_zero():
            continue
        if socle_level(prod) > socle_level(a):
            bad = (k, u, a, v)
            break
    _check(
        checks,
        f"socle level never increases under {count} random two-sided Weyl products",
        bad is None,
        f"triple #{bad[0]}" if bad else "",
    )

    rep = Element1.one() + e00 + I1
    nine = lift(1, rep, 2) * lift(2, rep, 2)
    c = census(nine)
    _check(
        checks,
        "a 9-term element realizes all 3^2 census labels",
        len(c) == 9 and c == {(p, q) for p in "AFL" for q in "AFL"},
        f"got {sorted(c)}",
    )
    bad = None
    for k in range(200 if samples is None else samples):
        a = random_element_n(rng, 2)
        if not census(a) <= {(p, q) for p in "AFL" for q in "AFL"}:
            bad = k
            break
    _check(checks, "census is always a subset of {A,F,L}^n", bad is None)

    count = 500 if samples is None else samples
    bad = None
    for k in range(count):
        a = random_element1(rng)
        parts = split(a)
        if parts.total() != a:
            bad = (k, "re-sum", a)
            break
        if not (in_a_span(parts.a_part) and in_f_span(parts.f_part) and in_l_span(parts.l_part)):
            bad = (k, "span", a)
            break
        if to_matrix(a, ORACLE_WINDOW) != (
            to_matrix(parts.a_part, ORACLE_WINDOW)
            + to_matrix(parts.f_part, ORACLE_WINDOW)
            + to_matrix(parts.l_part, ORACLE_WINDOW)
        ):
            bad = (k, "oracle", a)
            break
        if k % 2 == 1:
            if not consistent(parts.total(), prev_total, ORACLE_WINDOW):
                bad = (k, "product", a)
                break
        prev_total = parts.total()
    _check(
        checks,
        f"{count} random splits re-sum, stay in span, and agree with the oracle",
        bad is None,
        f"sample #{bad[0]} failed the {bad[1]} check: {bad[2]}" if bad else "",
    )
    return checks


def kernel_suite(seed: int = 0, samples: Optional[int] = None) -> list[Check]:
    """The right-multiplication kernel witness and the quotient homomorphisms."""
    checks: list[Check] = []
    rng = random.Random(seed)

    ok = all(kernel_witness_check(i, j, k, j)[0] for i in range(7) for j in range(7) for k in range(7))
    _check(checks, "e(i,j)(x)e(k,j) kills H_1 - H_2 for i,j,k <= 6", ok)
    ok = all(
        kernel_witness_check(i, j, i, jp)[1]
        for i in range(7)
        for j in range(7)
        for jp in range(7)
        if j != jp
    )
    ok = ok and all(
        kernel_witness_check(0, j, k, jp)[1]
        for j in range(7)
        for k in range(7)
        for jp in range(7)
        if j != jp
    )
    _check(checks, "e(i,j)(x)e(k,j') survives H_1 - H_2 for j != j' <= 6", ok)

    count = 200 if samples is None else samples
    bad = None
    for k in range(count):
        a = random_element1(rng)
        b = random_element1(rng)
        if (a * b).project_b1() != a.project_b1() * b.project_b1():
            bad = (k, 1)
            break
        an = random_element_n(rng, 2)
        bn = random_element_n(rng, 2)
        if project_bn(an * bn) != project_bn(an) * project_bn(bn):
            bad = (k, 2)
            break
    _check(
        checks,
        f"quotient maps are multiplicative on {count} random pairs (ranks 1 and 2)",
        bad is None,
        f"pair #{bad[0]} at rank {bad[1]}" if bad else "",
    )

    bad = None
    for k in range(count):
        a = random_element1(rng)
        if a.project_b1().is_zero() != (not a.graded):
            bad = k
            break
    _check(checks, "kernel of the rank-1 quotient is exactly the e-span", bad is None)
    h_diff = lift(1, Element1.from_generator("H"), 2) - lift(2, Element1.from_generator("H"), 2)
    _check(checks, "H_1 - H_2 survives the rank-2 quotient", not project_bn(h_diff).is_zero())
    return checks


SUITES: dict[str, Callable[..., list[Check]]] = {
    "relations": relations_suite,
    "oracle": oracle_suite,
    "dims": dims_suite,
    "socle": socle_suite,
    "kernel": kernel_suite,
    "holonomy": holonomy_suite,
}


def run_suites(names: list[str], seed: int = 0, samples: Optional[int] = None) -> list[tuple[str, Check]]:
    out = []
    for name in names:
        for check in SUITES[name](seed=seed, samples=samples):
            out.append((name, check))
    return out
