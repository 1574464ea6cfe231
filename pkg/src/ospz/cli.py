"""Command-line interface.

Exit codes: 0 success / all checks pass, 1 verification failure,
2 usage or expression-parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from .coeffs import PoleEvaluationError
from .projector import diamond, phi
from .text import ExprSyntaxError, parse_element, render
from .uea import UeaElement, theta
from .zalgebra import ZElement, tilde_to_z, z_multiply, z_theta
from . import rep as repmod
from . import verify as verifymod


def _use_color() -> bool:
    env = os.environ.get("OSPZ_COLOR")
    if env is not None:
        return env != "0"
    return sys.stdout.isatty()


def _mark(ok: bool) -> str:
    word = "PASS" if ok else "FAIL"
    if _use_color():
        code = "32" if ok else "31"
        return f"\x1b[{code}m{word}\x1b[0m"
    return word


def _parse_or_exit(text: str, algebra: str):
    try:
        return parse_element(text, algebra)
    except ExprSyntaxError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        raise SystemExit(2)


def _emit(element, fmt: str) -> None:
    print(render(element, fmt))


def cmd_normalize(args) -> int:
    _emit(_parse_or_exit(args.expr, args.algebra), args.format)
    return 0


def cmd_diamond(args) -> int:
    left = _parse_or_exit(args.left, "u")
    right = _parse_or_exit(args.right, "u")
    try:
        _emit(diamond(left, right), args.format)
    except PoleEvaluationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def cmd_zmul(args) -> int:
    left = _parse_or_exit(args.left, "z")
    right = _parse_or_exit(args.right, "z")
    _emit(z_multiply(left, right), args.format)
    return 0


def cmd_theta(args) -> int:
    element = _parse_or_exit(args.expr, args.algebra)
    image = theta(element) if args.algebra == "u" else z_theta(element)
    _emit(image, args.format)
    return 0


def cmd_project(args) -> int:
    element = _parse_or_exit(args.expr, "u")
    reduced = element.mod_ii()
    if not reduced.is_pure_tilde():
        print(
            "error: element does not reduce to the anti-diagonal subspace; "
            "only such elements have an image in the reduction algebra",
            file=sys.stderr,
        )
        return 2
    _emit(tilde_to_z(reduced), args.format)
    return 0


def cmd_phi_table(args) -> int:
    for n in range(args.n + 1):
        print(f"phi_{n} = {phi(n)}")
    return 0


def cmd_rep_primitives(args) -> int:
    from fractions import Fraction

    irrep = repmod.IrrepData.from_highest_weight(args.lam)
    module = repmod.TensorModule(repmod.PolyModule(args.trunc), irrep)
    # Weights run from the lowest tensor weight up to the largest value
    # whose weight space still fits inside the polynomial truncation.
    mu = Fraction(1, 2) - args.lam
    top = Fraction(1, 2) + args.trunc - args.lam
    weights = []
    while mu <= top:
        weights.append(mu)
        mu += 1
    vectors = module.primitive_vectors(weights)
    for v in vectors:
        print(v)
    print(f"{len(vectors)} primitive vector(s) in weight window [{weights[0]}, {top}]")
    return 0


def cmd_rep_rho(args) -> int:
    report = verifymod.verify_rep(args.trunc)
    if args.format == "json":
        print(json.dumps(report["rho"], indent=2, sort_keys=True))
    else:
        for token, matrix in report["rho"].items():
            rows = ", ".join("[" + ", ".join(row) + "]" for row in matrix)
            if args.format == "latex":
                body = r" \\ ".join(" & ".join(row) for row in matrix)
                print(f"\\rho({token}) = \\begin{{bmatrix}} {body} \\end{{bmatrix}}")
            else:
                print(f"rho({token}) = [{rows}]")
    return 0 if report["passed"] else 1


def cmd_verify(args) -> int:
    random.seed(args.seed)
    if args.suite == "projector":
        report = verifymod.verify_projector(args.n)
    else:
        report = verifymod.run_suite(
            args.suite, max_exp=args.max_exp, trunc=args.trunc
        )
    for check in report["checks"]:
        print(f"[{_mark(check['pass'])}] {check['name']}")
    total = len(report["checks"])
    good = sum(1 for c in report["checks"] if c["pass"])
    print(f"{report['suite']}: {good}/{total} checks passed")
    if args.json_out:
        with open(args.json_out, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0 if report["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ospz",
        description=(
            "Exact symbolic computation in the diagonal reduction algebra "
            "of osp(1|2)"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument(
            "--format", choices=("text", "latex", "json"), default="text"
        )

    p = sub.add_parser("normalize", help="normal-order an expression")
    p.add_argument("expr")
    p.add_argument("--algebra", choices=("u", "z"), default="u")
    add_format(p)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("diamond", help="diamond product of two U-elements")
    p.add_argument("left")
    p.add_argument("right")
    add_format(p)
    p.set_defaults(func=cmd_diamond)

    p = sub.add_parser("zmul", help="product in the reduction algebra")
    p.add_argument("left")
    p.add_argument("right")
    add_format(p)
    p.set_defaults(func=cmd_zmul)

    p = sub.add_parser("theta", help="apply the Chevalley anti-involution")
    p.add_argument("expr")
    p.add_argument("--algebra", choices=("u", "z"), default="u")
    add_format(p)
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser(
        "project", help="image of an anti-diagonal U-element in the reduction algebra"
    )
    p.add_argument("expr")
    add_format(p)
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("phi-table", help="print the projector coefficients")
    p.add_argument("--n", type=int, default=4)
    p.set_defaults(func=cmd_phi_table)

    p = sub.add_parser("rep", help="module computations")
    rep_sub = p.add_subparsers(dest="rep_command", required=True)
    q = rep_sub.add_parser("primitives", help="basis of the primitive subspace")
    q.add_argument("--lam", "--lambda", dest="lam", type=int, default=1)
    q.add_argument("--trunc", type=int, default=6)
    q.set_defaults(func=cmd_rep_primitives)
    q = rep_sub.add_parser("rho", help="matrices of the reduction-algebra action")
    q.add_argument("--trunc", type=int, default=6)
    add_format(q)
    q.set_defaults(func=cmd_rep_rho)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=verifymod.SUITES)
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--max-exp", type=int, default=1)
    p.add_argument("--trunc", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json-out", default=None)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
