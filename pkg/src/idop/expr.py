"""Surface syntax: the expression grammar, polynomial parser and JSON encoders.

Grammar (whitespace insensitive):

    expr : ('+'|'-')? term (('+'|'-') term)*
    term : pow ('*' pow)*
    pow  : atom ('^' nat)?
    atom : 'x' idx? | 'd' idx? | 'I' idx? | 'H' idx? | 'e(' nat ',' nat ')' idx?
         | rational | '(' expr ')'
    idx  : '_'? positive-integer   (underscore required for e-units)

Juxtaposition is not multiplication; products need an explicit '*'.  The
factor index defaults to 1 when the rank is 1 and is required otherwise.
Polynomials for the `apply` command use the variables x1..xn (bare `x` is
accepted at rank 1) with the same '+', '-', '*', '^' operators.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Tuple

from .element import Element1
from .tensor import BnElement, ElementN, lift, to_element1
from .oracle import TruncMatrix


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


# -- tokenizer ---------------------------------------------------------------

_GEN_NAMES = "xdIHe"


class _Token:
    __slots__ = ("kind", "value", "index", "pos")

    def __init__(self, kind: str, value=None, index: Optional[int] = None, pos: int = 0):
        self.kind = kind
        self.value = value
        self.index = index
        self.pos = pos


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*^(),/":
            tokens.append(_Token(ch, pos=i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("num", int(text[i:j]), pos=i))
            i = j
            continue
        if ch in _GEN_NAMES:
            pos = i
            i += 1
            index = None
            if ch != "e":
                j = i
                if j < n and text[j] == "_":
                    j += 1
                k = j
                while k < n and text[k].isdigit():
                    k += 1
                if k > j:
                    index = int(text[j:k])
                    i = k
            tokens.append(_Token("gen", ch, index=index, pos=pos))
            continue
        if ch == "_":
            j = i + 1
            k = j
            while k < n and text[k].isdigit():
                k += 1
            if k == j:
                raise ExprSyntaxError("expected digits after '_'", i)
            tokens.append(_Token("index", int(text[j:k]), pos=i))
            i = k
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("end", pos=n))
    return tokens


# -- parse trees ---------------------------------------------------------------

# Nodes: ("num", Fraction), ("gen", name, index, pos), ("eunit", s, t, index, pos),
#        ("neg", x), ("add", l, r), ("sub", l, r), ("mul", l, r), ("pow", base, k)
Node = tuple


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def next(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ExprSyntaxError(f"expected {kind!r}, found {tok.kind!r}", tok.pos)
        return self.next()

    def parse(self) -> Node:
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ExprSyntaxError(f"unexpected {tok.kind!r}", tok.pos)
        return node

    def expr(self) -> Node:
        negate = False
        if self.peek().kind in "+-":
            negate = self.next().kind == "-"
        node = self.term()
        if negate:
            node = ("neg", node)
        while self.peek().kind in "+-":
            op = self.next().kind
            rhs = self.term()
            node = ("add" if op == "+" else "sub", node, rhs)
        return node

    def term(self) -> Node:
        node = self.pow()
        while self.peek().kind == "*":
            self.next()
            node = ("mul", node, self.pow())
        return node

    def pow(self) -> Node:
        node = self.atom()
        if self.peek().kind == "^":
            self.next()
            tok = self.expect("num")
            node = ("pow", node, tok.value)
        return node

    def atom(self) -> Node:
        tok = self.peek()
        if tok.kind == "num":
            self.next()
            value = Fraction(tok.value)
            if self.peek().kind == "/":
                self.next()
                den = self.expect("num")
                if den.value == 0:
                    raise ExprSyntaxError("zero denominator", den.pos)
                value /= den.value
            return ("num", value)
        if tok.kind == "(":
            self.next()
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind == "gen":
            self.next()
            if tok.value == "e":
                self.expect("(")
                s = self.expect("num").value
                self.expect(",")
                t = self.expect("num").value
                self.expect(")")
                index = None
                if self.peek().kind == "index":
                    index = self.next().value
                return ("eunit", s, t, index, tok.pos)
            return ("gen", tok.value, tok.index, tok.pos)
        raise ExprSyntaxError(f"unexpected {tok.kind!r}", tok.pos)


def _resolve_index(index: Optional[int], n: int, pos: int) -> int:
    if index is None:
        if n == 1:
            return 1
        raise ExprSyntaxError(f"factor index required at rank {n}", pos)
    if not 1 <= index <= n:
        raise ExprSyntaxError(f"factor index {index} out of range 1..{n}", pos)
    return index


def _eval_element(node: Node, n: int) -> ElementN:
    kind = node[0]
    if kind == "num":
        return ElementN.one(n).scale(node[1])
    if kind == "gen":
        _, name, index, pos = node
        return lift(_resolve_index(index, n, pos), Element1.from_generator(name), n)
    if kind == "eunit":
        _, s, t, index, pos = node
        return lift(_resolve_index(index, n, pos), Element1(fpart={(s, t): 1}), n)
    if kind == "neg":
        return -_eval_element(node[1], n)
    if kind == "add":
        return _eval_element(node[1], n) + _eval_element(node[2], n)
    if kind == "sub":
        return _eval_element(node[1], n) - _eval_element(node[2], n)
    if kind == "mul":
        return _eval_element(node[1], n) * _eval_element(node[2], n)
    if kind == "pow":
        return _eval_element(node[1], n).power(node[2])
    raise AssertionError(f"unhandled node {kind}")


def parse_element(text: str, n: int = 1) -> ElementN:
    """Parse an operator expression at the given tensor rank."""
    return _eval_element(_Parser(_tokenize(text)).parse(), n)


def _eval_poly(node: Node, n: int) -> dict[tuple, Fraction]:
    kind = node[0]
    if kind == "num":
        return {(0,) * n: node[1]} if node[1] else {}
    if kind == "gen":
        _, name, index, pos = node
        if name != "x":
            raise ExprSyntaxError(f"only x variables are allowed in polynomials, found {name!r}", pos)
        k = _resolve_index(index, n, pos)
        exps = tuple(1 if f == k else 0 for f in range(1, n + 1))
        return {exps: Fraction(1)}
    if kind == "eunit":
        raise ExprSyntaxError("e-units are not allowed in polynomials", node[4])
    if kind == "neg":
        return {k: -c for k, c in _eval_poly(node[1], n).items()}
    if kind in ("add", "sub"):
        out = dict(_eval_poly(node[1], n))
        sign = 1 if kind == "add" else -1
        for k, c in _eval_poly(node[2], n).items():
            d = out.get(k, Fraction(0)) + sign * c
            if d:
                out[k] = d
            else:
                out.pop(k, None)
        return out
    if kind == "mul":
        lhs = _eval_poly(node[1], n)
        rhs = _eval_poly(node[2], n)
        out: dict[tuple, Fraction] = {}
        for k1, c1 in lhs.items():
            for k2, c2 in rhs.items():
                key = tuple(a + b for a, b in zip(k1, k2))
                d = out.get(key, Fraction(0)) + c1 * c2
                if d:
                    out[key] = d
                else:
                    out.pop(key, None)
        return out
    if kind == "pow":
        base = _eval_poly(node[1], n)
        out = {(0,) * n: Fraction(1)}
        for _ in range(node[2]):
            nxt: dict[tuple, Fraction] = {}
            for k1, c1 in out.items():
                for k2, c2 in base.items():
                    key = tuple(a + b for a, b in zip(k1, k2))
                    d = nxt.get(key, Fraction(0)) + c1 * c2
                    if d:
                        nxt[key] = d
                    else:
                        nxt.pop(key, None)
            out = nxt
        return out
    raise AssertionError(f"unhandled node {kind}")


def parse_poly(text: str, n: int = 1) -> dict[tuple, Fraction]:
    """Parse a polynomial in x1..xn as a sparse exponent-vector map."""
    return _eval_poly(_Parser(_tokenize(text)).parse(), n)


def format_poly(p: dict, n: int) -> str:
    from .element import format_terms

    terms: list[Tuple[Fraction, str]] = []
    for exps in sorted(p, key=lambda k: (sum(k), k)):
        parts = []
        for f, s in enumerate(exps, start=1):
            if s == 0:
                continue
            var = "x" if n == 1 else f"x{f}"
            parts.append(var if s == 1 else f"{var}^{s}")
        terms.append((Fraction(p[exps]), "*".join(parts)))
    return format_terms(terms)


# -- JSON encoders -------------------------------------------------------------


def _frac_str(c: Fraction) -> str:
    return str(c)


def element1_to_json(e: Element1) -> dict:
    return {
        "rank": 1,
        "graded": [[i, [_frac_str(c) for c in e.graded[i]]] for i in sorted(e.graded)],
        "fpart": [[s, t, _frac_str(e.fpart[(s, t)])] for s, t in sorted(e.fpart)],
    }


def elementn_to_json(a: ElementN) -> dict:
    if a.n == 1:
        return element1_to_json(to_element1(a))
    from .element import atom_sort_key

    graded = []
    fpart = []
    for key in sorted(a.terms, key=lambda k: tuple(atom_sort_key(at) for at in k)):
        entry = [[list(atom) for atom in key], _frac_str(a.terms[key])]
        if any(atom[0] == "e" for atom in key):
            fpart.append(entry)
        else:
            graded.append(entry)
    return {"rank": a.n, "graded": graded, "fpart": fpart}


def poly_to_json(p: dict, n: int) -> dict:
    return {
        "rank": n,
        "terms": [[list(k), _frac_str(Fraction(p[k]))] for k in sorted(p, key=lambda k: (sum(k), k))],
    }


def bn_to_json(b: BnElement) -> dict:
    return {
        "rank": b.n,
        "terms": [[[list(pair) for pair in key], _frac_str(b.terms[key])] for key in sorted(b.terms)],
    }


def matrix_to_json(m: TruncMatrix) -> dict:
    return {
        "size": m.size,
        "rank": m.rank,
        "rows": [[_frac_str(c) for c in row] for row in m.entries],
    }
