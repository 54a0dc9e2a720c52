"""Command-line front end: normalization, actions, decompositions, the matrix
oracle, the dimension engine and the verification suites.

Exit codes: 0 on success, 1 on syntax or usage errors, 2 when a verification
suite reports a failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .expr import (
    ExprSyntaxError,
    bn_to_json,
    element1_to_json,
    elementn_to_json,
    format_poly,
    matrix_to_json,
    parse_element,
    parse_poly,
    poly_to_json,
)
from .oracle import to_matrix, to_matrix_n
from .structure import (
    bimodule_filtration_dims,
    census,
    multiplicity_report,
    socle_level,
    split,
)
from .tensor import apply_n, project_bn, to_element1
from .verify import SUITES, run_suites


class _CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's default 2
        raise _CliError(message)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=1, help="tensor rank (default 1)")
    common.add_argument(
        "--format", choices=("text", "json"), default="text", help="output encoding"
    )
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")

    parser = _Parser(prog="idop", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("norm", parents=[common], help="print the canonical form")
    p.add_argument("expr")
    p = sub.add_parser("apply", parents=[common], help="act on a polynomial in x1..xn")
    p.add_argument("expr")
    p.add_argument("poly")
    p = sub.add_parser("split", parents=[common], help="print the A/F/L decomposition (rank 1)")
    p.add_argument("expr")
    p = sub.add_parser("socle", parents=[common], help="print socle level and census")
    p.add_argument("expr")
    p = sub.add_parser("fdeg", parents=[common], help="print the F-degree (rank 1)")
    p.add_argument("expr")
    p = sub.add_parser("quot", parents=[common], help="print the image in the skew Laurent quotient")
    p.add_argument("expr")
    p = sub.add_parser("matrix", parents=[common], help="print the truncated matrix")
    p.add_argument("expr")
    p.add_argument("--size", type=int, default=8, help="truncation size N (default 8)")
    p = sub.add_parser("dims", parents=[common], help="two-sided filtration dimensions (rank 1)")
    p.add_argument("--gen", required=True, help="comma-separated generator expressions")
    p.add_argument("--max", dest="i_max", type=int, required=True, help="largest filtration index")
    p = sub.add_parser("verify", parents=[common], help="run the verification suites")
    p.add_argument(
        "--suite",
        default="all",
        choices=sorted(SUITES) + ["all"],
        help="which suite to run (default all)",
    )
    p.add_argument("--samples", type=int, default=None, help="override randomized sample counts")
    return parser


def _split_top_level(text: str) -> list[str]:
    """Split on commas that are not nested inside parentheses."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return [p for p in parts if p.strip()]


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _require_rank1(args) -> None:
    if args.n != 1:
        raise _CliError(f"this command requires rank 1, got --n {args.n}")


def _cmd_norm(args) -> int:
    e = parse_element(args.expr, args.n)
    _emit(args, elementn_to_json(e), str(e))
    return 0


def _cmd_apply(args) -> int:
    e = parse_element(args.expr, args.n)
    p = parse_poly(args.poly, args.n)
    q = apply_n(e, p)
    _emit(args, poly_to_json(q, args.n), format_poly(q, args.n))
    return 0


def _cmd_split(args) -> int:
    _require_rank1(args)
    parts = split(to_element1(parse_element(args.expr, 1)))
    payload = {
        "a_part": element1_to_json(parts.a_part),
        "f_part": element1_to_json(parts.f_part),
        "l_part": element1_to_json(parts.l_part),
    }
    text = f"A: {parts.a_part}\nF: {parts.f_part}\nL: {parts.l_part}"
    _emit(args, payload, text)
    return 0


def _cmd_socle(args) -> int:
    e = parse_element(args.expr, args.n)
    if e.is_zero():
        raise _CliError("the socle level of the zero element is undefined")
    level = socle_level(e)
    labels = sorted(census(e))
    payload = {"level": level, "census": [list(l) for l in labels]}
    text = f"level: {level}\ncensus: " + " ".join("(" + ",".join(l) + ")" for l in labels)
    _emit(args, payload, text)
    return 0


def _cmd_fdeg(args) -> int:
    _require_rank1(args)
    e = to_element1(parse_element(args.expr, 1))
    _emit(args, {"fdegree": e.fdegree()}, str(e.fdegree()))
    return 0


def _cmd_quot(args) -> int:
    e = parse_element(args.expr, args.n)
    b = project_bn(e)
    _emit(args, bn_to_json(b), str(b))
    return 0


def _cmd_matrix(args) -> int:
    if args.size < 1:
        raise _CliError(f"--size must be positive, got {args.size}")
    e = parse_element(args.expr, args.n)
    if args.n == 1:
        mat = to_matrix(to_element1(e), args.size)
    else:
        mat = to_matrix_n(e, args.size)
    _emit(args, matrix_to_json(mat), repr(mat))
    return 0


def _cmd_dims(args) -> int:
    _require_rank1(args)
    gens = [to_element1(parse_element(g, 1)) for g in _split_top_level(args.gen)]
    dims = bimodule_filtration_dims(gens, args.i_max)
    rep = multiplicity_report(dims)
    payload = {
        "dims": dims,
        "report": None
        if rep is None
        else {
            "degree": rep.degree,
            "second_difference": rep.second_difference,
            "stable_from": rep.stable_from,
        },
    }
    lines = ["dims: " + " ".join(str(v) for v in dims)]
    if rep is None:
        lines.append("report: inconclusive")
    else:
        lines.append(
            f"report: degree={rep.degree} second_difference={rep.second_difference}"
            f" stable_from={rep.stable_from}"
        )
    _emit(args, payload, "\n".join(lines))
    return 0


def _cmd_verify(args) -> int:
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    results = run_suites(names, seed=args.seed, samples=args.samples)
    passed = sum(1 for _, c in results if c.ok)
    if args.format == "json":
        payload = {
            "suites": names,
            "checks": [
                {"suite": s, "name": c.name, "ok": c.ok, "detail": c.detail}
                for s, c in results
            ],
            "passed": passed,
            "total": len(results),
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for s, c in results:
            line = f"{'PASS' if c.ok else 'FAIL'} {s}: {c.name}"
            if not c.ok and c.detail:
                line += f" -- {c.detail}"
            print(line)
        print(f"{passed}/{len(results)} checks passed")
    return 0 if passed == len(results) else 2


_COMMANDS = {
    "norm": _cmd_norm,
    "apply": _cmd_apply,
    "split": _cmd_split,
    "socle": _cmd_socle,
    "fdeg": _cmd_fdeg,
    "quot": _cmd_quot,
    "matrix": _cmd_matrix,
    "dims": _cmd_dims,
    "verify": _cmd_verify,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ExprSyntaxError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # argparse --help and friends
        code = exc.code
        return 0 if code in (0, None) else 1


if __name__ == "__main__":
    sys.exit(main())
