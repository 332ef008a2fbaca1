"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 arithmetic exception (non-square, exceptional point).
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import kummer2, verify
from .edwards import EdwardsCurve
from .errors import DivisionByZero, ExceptionalPoint, NonSquare, NotOnCurve
from .field import PrimeField
from .kummer1 import K1Point
from .ladder import scalar_mul_ladder
from .projective import normalize, to_hex

DEFAULT_PRIME = 2**61 - 1

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_ARITH = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _curve(args) -> EdwardsCurve:
    try:
        p = int(args.p, 0)
        if args.d is None:
            return EdwardsCurve.with_nonsquare_d(p)
        return EdwardsCurve(PrimeField(p), PrimeField(p, check=False).parse(args.d).value)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _norm(vec) -> str:
    return to_hex(normalize(vec))


def _emit(args, text: str, record: dict) -> None:
    if args.format == "records":
        print(json.dumps(record, sort_keys=True, separators=(",", ":")))
    else:
        print(text)


def cmd_mul(args) -> int:
    curve = _curve(args)
    try:
        n = int(args.n, 0)
        y = K1Point.parse(curve.field, args.y)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if n < 1:
        raise UsageError("--n must be at least 1")
    out = _norm(scalar_mul_ladder(n, y, curve).coords)
    _emit(args, out, {"p": curve.p, "d": curve.d.hex(), "n": n, "y": _norm(y.coords), "result": out})
    return EXIT_OK


def cmd_project(args) -> int:
    curve = _curve(args)
    try:
        P = curve.parse_point(args.P)
        Q = curve.parse_point(args.Q)
    except (ValueError, NotOnCurve) as exc:
        raise UsageError(str(exc)) from exc
    k = kummer2.project_k2(P, Q)
    if args.model == "p7":
        out = _norm(kummer2.p3p1_to_p7(k).T)
    elif args.model == "triple":
        t = kummer2.p3p1_to_triple(k)
        out = f"{_norm(t.x.coords)};{_norm(t.y.coords)};{_norm(t.z)}"
    else:
        out = f"{_norm(k.U)};{_norm(k.Z)}"
    _emit(args, out, {"P": P.to_hex(), "Q": Q.to_hex(), "model": args.model, "result": out})
    return EXIT_OK


def cmd_verify(args) -> int:
    curve = _curve(args)
    reports = [
        verify.run_identity_suite(curve, args.samples, args.seed, exhaustive=args.exhaustive)
    ]
    if args.exhaustive and curve.p <= verify.EXHAUSTIVE_PRIME_LIMIT:
        reports.append(verify.scan_exceptional(curve))
    for r in reports:
        if args.format == "records":
            print(r.to_record())
        else:
            print(r.summary())
    ok = all(r.passed for r in reports)
    if args.format != "records":
        print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


_COLUMNS = ("mul", "sqr", "add_sub", "mul_by_d", "inv")


def cmd_bench(args) -> int:
    curve = _curve(args)
    rng = random.Random(args.seed)
    k = kummer2.random_k2_point(curve, rng)
    rows = []
    for section in ("sigma", "iota", "rho", "tau", "phi0", "phi1"):
        rows.append((section, verify.count_ops(section, curve, k)))
    for bit in (0, 1):
        rows.append((f"ladder_step[{bit}]", verify.count_ops("ladder_step", curve, k, bit=bit)))
    y = kummer2.p3p1_to_triple(k).x
    for _ in range(args.samples):
        n = rng.randrange(1 << (args.bits - 1), 1 << args.bits)
        c = verify.count_ops("ladder", curve, y, n=n)
        rows.append((f"ladder(n={n:#x})", c))
        per_bit = {col: getattr(c, col) / args.bits for col in _COLUMNS}
        rows.append((f"  per bit ({args.bits} bits)", per_bit))

    if args.format == "records":
        for name, c in rows:
            vals = c if isinstance(c, dict) else c.as_dict()
            print(json.dumps({"section": name, **vals}, sort_keys=True, separators=(",", ":")))
        return EXIT_OK
    width = max(len(name) for name, _ in rows) + 2
    print("section".ljust(width) + "".join(col.rjust(10) for col in _COLUMNS))
    for name, c in rows:
        vals = c if isinstance(c, dict) else c.as_dict()
        cells = "".join(
            (f"{vals[col]:.2f}" if isinstance(vals[col], float) else str(vals[col])).rjust(10)
            for col in _COLUMNS
        )
        print(name.ljust(width) + cells)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="splitkummer",
        description="Arithmetic on the split Kummer surface of an Edwards curve.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", default=str(DEFAULT_PRIME), help="field prime, decimal or 0x-hex")
    common.add_argument(
        "--d", default=None, help="Edwards parameter as a hex field element (default: smallest non-square)"
    )
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("text", "records"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mul", parents=[common], help="y-only scalar multiple via the K2 ladder")
    p.add_argument("--n", required=True, help="scalar n >= 1, decimal or 0x-hex")
    p.add_argument("--y", required=True, help="Kummer-line point x0:x1 in hex")
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("project", parents=[common], help="image of (P, Q) on K2")
    p.add_argument("P", help="Edwards point X0:X1:X2:X3 in hex")
    p.add_argument("Q", help="Edwards point X0:X1:X2:X3 in hex")
    p.add_argument("--model", choices=("p3p1", "triple", "p7"), default="p3p1")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("verify", parents=[common], help="run the identity suite against the oracle")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--exhaustive", action="store_true", help="visit all of E(F_p)^2 (small p)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", parents=[common], help="field-operation counts per map and ladder bit")
    p.add_argument("--bits", type=int, default=64, help="bit length of the random scalars")
    p.add_argument("--samples", type=int, default=3, help="number of random scalars")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NonSquare, ExceptionalPoint, DivisionByZero) as exc:
        print(f"{parser.prog} {args.command}: arithmetic error: {exc}", file=sys.stderr)
        return EXIT_ARITH


if __name__ == "__main__":
    sys.exit(main())
