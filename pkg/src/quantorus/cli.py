"""Command-line front end.

Exit codes: 0 success (all checks passed), 1 a verification failed,
2 parse or usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .algebra import AlgebraElement
from .axioms import MUTATIONS, check_h1, check_h2, check_h3_weak, check_h4, \
    check_no_strong_antipode
from .bimodules import DeltaVector, EpsilonVector, SVector, antipode, delta_left_act, s_left_act
from .errors import ParseError, QuantorusError
from .modules import ModuleClass, decompose, is_isomorphic
from .parser import format_element, parse_any, parse_element, parse_scalar
from .tensor_ring import ClassSum, oracle_matches, tensor_closed_form, tensor_oracle

GOLDEN_FRACTION = (math.sqrt(5.0) - 1.0) / 2.0


def _class_obj(cls: ModuleClass, mult: int) -> dict:
    return {
        "mult": mult,
        "p": cls.p,
        "q": cls.q,
        "alpha": {
            "tau": str(cls.alpha.tau),
            "lam": str(cls.alpha.lam),
            "alphas": {str(k): str(v) for k, v in cls.alpha.alphas},
        },
    }


def _class_sum_json(cs: ClassSum) -> str:
    return json.dumps([_class_obj(cls, mult) for cls, mult in cs.items()], sort_keys=True)


def _normalize_class(cls: ModuleClass) -> ModuleClass:
    """Canonical representative where safe: full reduction for simple
    classes, sign normalisation only otherwise."""
    if cls.is_simple():
        return cls.canonical()
    if cls.p < 0 or (cls.p == 0 and cls.q < 0):
        return ModuleClass(-cls.alpha, -cls.p, -cls.q)
    return cls


def _parse_algebra(text: str) -> AlgebraElement:
    value = parse_element(text)
    if not isinstance(value, AlgebraElement):
        raise ParseError("expected an algebra element", 0)
    return value


def _parse_class(text: str) -> ModuleClass:
    value = parse_element(text)
    if not isinstance(value, ModuleClass):
        raise ParseError("expected a module class T( ... ; p, q )", 0)
    return value


def _cmd_mul(args) -> int:
    a = _parse_algebra(args.left)
    b = _parse_algebra(args.right)
    print(format_element(a * b))
    return 0


def _cmd_star(args) -> int:
    print(format_element(_parse_algebra(args.element).star()))
    return 0


def _cmd_antipode(args) -> int:
    print(format_element(antipode(_parse_algebra(args.element))))
    return 0


def _cmd_act(args) -> int:
    kind_x, x = parse_any(args.left)
    kind_y, y = parse_any(args.right)
    if kind_x == "tensor" and kind_y == "element" and isinstance(y, DeltaVector):
        print(format_element(delta_left_act(x, y)))
        return 0
    if kind_x == "tensor" and kind_y == "element" and isinstance(y, SVector):
        print(format_element(s_left_act(x, y)))
        return 0
    if kind_x == "element" and isinstance(x, (DeltaVector, EpsilonVector)) \
            and kind_y == "element" and isinstance(y, AlgebraElement):
        print(format_element(x.act(y)))
        return 0
    raise ParseError("act expects (tensor, d/s vector) or (d/eps vector, algebra element)", 0)


def _cmd_tensor(args) -> int:
    c1 = _normalize_class(_parse_class(args.left))
    c2 = _normalize_class(_parse_class(args.right))
    result = tensor_closed_form(c1, c2)
    print(_class_sum_json(result))
    if args.oracle is not None:
        fp = tensor_oracle(c1, c2, args.oracle)
        match = oracle_matches(result, fp)
        print(f"oracle-match: {'true' if match else 'false'}")
        return 0 if match else 1
    return 0


def _cmd_decompose(args) -> int:
    cls = _parse_class(args.cls)
    acc: dict[ModuleClass, int] = {}
    for summand in decompose(cls):
        acc[summand] = acc.get(summand, 0) + 1
    print(json.dumps([_class_obj(c, m) for c, m in sorted(
        acc.items(), key=lambda t: (t[0].p, t[0].q, str(t[0].alpha)))], sort_keys=True))
    return 0


def _cmd_iso(args) -> int:
    c1 = _parse_class(args.left)
    c2 = _parse_class(args.right)
    print("true" if is_isomorphic(c1, c2) else "false")
    return 0


_CHECKS = {
    "h1": lambda t, w, s: check_h1(t, w, s),
    "h2": lambda t, w, s: check_h2(t, w, s),
    "h3w": lambda t, w, s: check_h3_weak(t, w, s),
    "h4": lambda t, w, s: check_h4(window=max(w, 8)),
    "noanti": lambda t, w, s: check_no_strong_antipode(max(w, 8)),
}


def _cmd_verify(args) -> int:
    names = list(_CHECKS) if args.which == "all" else [args.which]
    table = MUTATIONS if args.mutate else _CHECKS
    reports = [table[name](args.trials, args.window, args.seed) for name in names]
    if len(reports) == 1:
        print(reports[0].to_json())
    else:
        print(json.dumps([r.to_obj() for r in reports], sort_keys=True))
    return 0 if all(r.passed for r in reports) else 1


def _cmd_eval(args) -> int:
    lam = 2.0 * math.pi * args.lambda_frac
    alphas = {}
    for item in args.alpha or []:
        key, _, value = item.partition("=")
        alphas[int(key)] = float(value)

    def cstr(z: complex) -> str:
        return f"{z.real:.12g}{z.imag:+.12g}j"

    try:
        kind, value = parse_any(args.expr)
    except ParseError:
        kind, value = "scalar", parse_scalar(args.expr)
    if kind == "scalar":
        print(cstr(value.evaluate(lam=lam, alphas=alphas)))
        return 0
    if kind == "element" and not isinstance(value, ModuleClass):
        if not value.terms:
            print("0")
            return 0
        for key in sorted(value.terms):
            z = value.terms[key].evaluate(lam=lam, alphas=alphas)
            print(f"{key}\t{cstr(z)}")
        return 0
    raise ParseError("eval expects a scalar or an element", 0)


def _cmd_report(args) -> int:
    from .report import write_report

    paths = write_report(args.out, trials=args.trials, window=args.window, seed=args.seed)
    for path in paths:
        print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quantorus",
        description="Exact computations in the finite-Fourier rotation algebra, "
                    "its coproduct/counit/antipode carriers and its module tensor ring.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mul", help="product of two algebra elements")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=_cmd_mul)

    p = sub.add_parser("star", help="star involution of an algebra element")
    p.add_argument("element")
    p.set_defaults(func=_cmd_star)

    p = sub.add_parser("antipode", help="antipode of an algebra element")
    p.add_argument("element")
    p.set_defaults(func=_cmd_antipode)

    p = sub.add_parser("act", help="bimodule action: 'x (x) y' on d/s, or d/eps by an element")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=_cmd_act)

    p = sub.add_parser("tensor", help="tensor product of two module classes")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--oracle", type=int, default=None, metavar="W",
                   help="cross-check against the truncation oracle at window W")
    p.set_defaults(func=_cmd_tensor)

    p = sub.add_parser("decompose", help="split a module class into simple classes")
    p.add_argument("cls")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("iso", help="isomorphism test for two simple classes")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=_cmd_iso)

    p = sub.add_parser("verify", help="run the axiom verification suites")
    p.add_argument("which", choices=["h1", "h2", "h3w", "h4", "noanti", "all"])
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--window", type=int, default=6)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--mutate", action="store_true",
                   help="run the deliberately broken variants (they must fail)")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("eval", help="numeric evaluation of a scalar or element")
    p.add_argument("expr")
    p.add_argument("--lambda-frac", type=float, default=GOLDEN_FRACTION,
                   dest="lambda_frac", metavar="X",
                   help="bind the rotation angle to 2*pi*X (default: golden ratio conjugate)")
    p.add_argument("--alpha", action="append", metavar="K=V",
                   help="bind symbol A<K> to the real value V (repeatable)")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("report", help="write CSV summaries and figures of the verification suites")
    p.add_argument("--out", default="quantorus-report")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--window", type=int, default=6)
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return 2
    except QuantorusError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
