"""Command-line front end.

Commands: eval, preimage, classify, density-witness, sample, hypo, cantor,
verify.  Exact kinds read and print the rational/surd literal syntaxes and
never go through floating point; only the two sine-based sample kinds are
floating-point, and exist purely to emit plot data.

Exit codes: 0 success, 1 property failure, 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from fractions import Fraction

from . import cantor, projections, qspan, ternary, verify
from .exactcore import format_rational, parse_rational
from .surds import QuadraticSurd, parse_surd, format_surd

EXACT_FNS = ("p", "q", "h", "hs", "cf", "recip")
QUASI_FNS = {"quasi:sin+x/2": 1, "quasi:sin-x/2": -1}


def quasi_value(fn: str, x: float) -> float:
    """The two sine-based sample kinds (floating point, plot data only)."""
    return math.sin(x) + QUASI_FNS[fn] * x / 2.0


def _parse_decimal(text: str) -> Fraction:
    # sample bounds also accept plain decimal notation
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a number: {text!r}") from exc


def _parse_pair(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected `l,r`, got {text!r}")
    return parse_rational(parts[0]), parse_rational(parts[1])


def _parse_rect(text: str) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 4:
        raise ValueError(f"expected `x1,x2,y1,y2`, got {text!r}")
    return tuple(parse_rational(p) for p in parts)  # type: ignore[return-value]


def _reciprocal(x: Fraction) -> Fraction:
    return 1 / x if x > 0 else Fraction(0)


def _load_map(token: str) -> qspan.AdditiveMap:
    return qspan.load_map(token.split(":", 1)[1])


def _cmd_eval(args) -> int:
    fn = args.fn
    if fn in ("p", "q"):
        x = parse_surd(args.x)
        value = projections.PROJECTIONS[fn](x)
        print(format_surd(value))
        return 0
    if fn in ("h", "hs"):
        x = parse_rational(args.x)
        value = ternary.evaluate(x) if fn == "h" else ternary.evaluate_signed(x)
        print(format_rational(value))
        if args.show_digits:
            audit = ternary.digit_audit(x)
            print(f"expansion: {audit['expansion']}")
            print(f"two_positions: {audit['two_positions']}")
            print(f"block_digits: {audit['block_digits'] or '-'}")
            print(f"tail_digits: {audit['tail_digits'] or '-'}")
        return 0
    if fn == "cf":
        x = parse_rational(args.x)
        value, upto = cantor.evaluate(x, args.max_index)
        print(format_rational(value))
        print(f"verified_up_to: {upto}")
        return 0
    if fn == "recip":
        print(format_rational(_reciprocal(parse_rational(args.x))))
        return 0
    if fn.startswith("map:"):
        f = _load_map(fn)
        x = qspan.parse_coords(args.x, f.basis)
        print(qspan.format_element(qspan.apply_map(f, x)))
        return 0
    raise ValueError(f"unknown function: {fn!r}")


def _cmd_preimage(args) -> int:
    y = parse_rational(args.y)
    l, r = _parse_pair(args.interval)
    if args.fn in ("h", "hs"):
        signed = args.fn == "hs"
        x = ternary.preimage(y, l, r, signed=signed)
        print(format_rational(x))
        value = ternary.evaluate_signed(x) if signed else ternary.evaluate(x)
        ok = value == y and l < x < r
        print(f"{args.fn}({format_rational(x)}) = {format_rational(value)}: "
              f"{'OK' if ok else 'FAIL'}")
        return 0 if ok else 1
    if args.fn == "cf":
        x, idx = cantor.preimage(y, l, r)
        print(format_rational(x))
        print(f"index: {idx}")
        value, at = cantor.evaluate(x, idx + 1)
        ok = value == y and at == idx and l < x < r
        print(f"cf({format_rational(x)}) = {format_rational(value)}: "
              f"{'OK' if ok else 'FAIL'}")
        return 0 if ok else 1
    raise ValueError(f"preimage supports h, hs, cf; got {args.fn!r}")


def _cmd_classify(args) -> int:
    if args.fn in ("p", "q"):
        cls = projections.classify_shift(args.fn, parse_surd(args.shift))
        inc = format_surd(cls.increment)
    elif args.fn.startswith("map:"):
        f = _load_map(args.fn)
        t = qspan.parse_coords(args.shift, f.basis)
        cls = qspan.classify_shift(f, t)
        inc = qspan.format_element(cls.increment)
    else:
        raise ValueError(f"classify supports p, q, map:<file>; got {args.fn!r}")
    if cls.kind is projections.ShiftKind.PERIOD:
        print("period")
    else:
        print(f"quasiperiod increment={inc} direction={cls.direction.value}")
    return 0


def _cmd_density_witness(args) -> int:
    x1, x2, y1, y2 = _parse_rect(args.rect)
    w = projections.density_witness(args.fn, x1, x2, y1, y2)
    print(format_surd(w))
    value = projections.PROJECTIONS[args.fn](w)
    print(f"{args.fn}(x) = {format_surd(value)}: OK")
    return 0


def _sample_rows(args):
    fn = args.fn
    if fn in QUASI_FNS:
        sign = QUASI_FNS[fn]
        start, stop, step = float(args.start), float(args.stop), float(args.step)
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [
            (x, math.sin(x) + sign * x / 2.0)
            for x in (start + i * step for i in range(count))
        ]
    start, stop, step = (
        _parse_decimal(args.start),
        _parse_decimal(args.stop),
        _parse_decimal(args.step),
    )
    if fn in ("p", "q"):
        point = lambda x: projections.PROJECTIONS[fn](QuadraticSurd(x, 0))
        fmt = format_surd
    elif fn == "h":
        point, fmt = ternary.evaluate, format_rational
    elif fn == "hs":
        point, fmt = ternary.evaluate_signed, format_rational
    elif fn == "recip":
        point, fmt = _reciprocal, format_rational
    elif fn == "cf":
        point = lambda x: cantor.evaluate(x, args.max_index)[0]
        fmt = format_rational
    else:
        raise ValueError(f"unknown sample function: {fn!r}")
    rows = []
    x = start
    while x <= stop:
        rows.append((format_rational(x), fmt(point(x))))
        x += step
    return rows


def _cmd_sample(args) -> int:
    start, stop = _parse_decimal(args.start), _parse_decimal(args.stop)
    if start >= stop or _parse_decimal(args.step) <= 0:
        raise ValueError("need start < stop and positive step")
    rows = _sample_rows(args)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        if args.format == "csv":
            writer = csv.writer(fh)
            writer.writerow(["x", args.fn])
            writer.writerows(rows)
        else:
            json.dump({"fn": args.fn, "rows": [list(r) for r in rows]}, fh)
            fh.write("\n")
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def _cmd_hypo(args) -> int:
    x = parse_rational(args.x)
    y = parse_rational(args.y)
    fn = args.fn
    if fn == "recip":
        value = _reciprocal(x)
    elif fn == "h":
        value = ternary.evaluate(x)
    elif fn == "hs":
        value = ternary.evaluate_signed(x)
    elif fn == "cf":
        value = cantor.evaluate(x, args.max_index)[0]
    elif fn in ("p", "q"):
        surd_value = projections.PROJECTIONS[fn](QuadraticSurd(x, 0))
        value = surd_value.a  # rational inputs stay rational under both
    else:
        raise ValueError(f"hypograph needs an exactly evaluable function, got {fn!r}")
    print("true" if y <= value else "false")
    return 0


def _cmd_cantor(args) -> int:
    cantor.ensure_placed(args.max_index)
    for i in range(args.max_index):
        rec = cantor.placement_record(i)
        print(
            json.dumps(
                {
                    "index": rec["index"],
                    "a": str(rec["a"]),
                    "b": str(rec["b"]),
                    "c": str(rec["c"]),
                    "d": str(rec["d"]),
                    "depth": rec["depth"],
                },
                sort_keys=True,
            )
        )
    return 0


def _cmd_verify(args) -> int:
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    worst = 0
    for name in names:
        report = verify.run_suite(name, args.trials, args.seed)
        print(verify.report_json(report))
        print(f"{name}: {report.wall_ms:.1f} ms", file=sys.stderr)
        if not report.passed:
            worst = 1
    return worst


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wildfuncs",
        description="Exact evaluation, classification and witness construction "
        "for pathological real functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a function exactly")
    p_eval.add_argument("--fn", required=True)
    p_eval.add_argument("--x", required=True)
    p_eval.add_argument("--max-index", type=int, default=32)
    p_eval.add_argument("--show-digits", action="store_true")
    p_eval.set_defaults(run=_cmd_eval)

    p_pre = sub.add_parser("preimage", help="in-interval preimage of a target")
    p_pre.add_argument("--fn", required=True)
    p_pre.add_argument("--y", required=True)
    p_pre.add_argument("--interval", required=True, metavar="l,r")
    p_pre.set_defaults(run=_cmd_preimage)

    p_cls = sub.add_parser("classify", help="period/quasiperiod of a shift")
    p_cls.add_argument("--fn", required=True)
    p_cls.add_argument("--shift", required=True)
    p_cls.set_defaults(run=_cmd_classify)

    p_dw = sub.add_parser("density-witness", help="graph point in a rectangle")
    p_dw.add_argument("--fn", required=True, choices=("p", "q"))
    p_dw.add_argument("--rect", required=True, metavar="x1,x2,y1,y2")
    p_dw.set_defaults(run=_cmd_density_witness)

    p_smp = sub.add_parser("sample", help="emit plot data")
    p_smp.add_argument("--fn", required=True)
    p_smp.add_argument("--from", dest="start", required=True)
    p_smp.add_argument("--to", dest="stop", required=True)
    p_smp.add_argument("--step", required=True)
    p_smp.add_argument("--out", required=True)
    p_smp.add_argument("--format", choices=("csv", "json"), default="csv")
    p_smp.add_argument("--max-index", type=int, default=32)
    p_smp.set_defaults(run=_cmd_sample)

    p_hyp = sub.add_parser("hypo", help="hypograph membership y <= f(x)")
    p_hyp.add_argument("--fn", required=True)
    p_hyp.add_argument("--x", required=True)
    p_hyp.add_argument("--y", required=True)
    p_hyp.add_argument("--max-index", type=int, default=32)
    p_hyp.set_defaults(run=_cmd_hypo)

    p_can = sub.add_parser("cantor", help="placement audit dump (JSON lines)")
    p_can.add_argument("--max-index", type=int, required=True)
    p_can.set_defaults(run=_cmd_cantor)

    p_ver = sub.add_parser("verify", help="run a seeded property suite")
    p_ver.add_argument("--suite", required=True)
    p_ver.add_argument("--trials", type=int, default=200)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.set_defaults(run=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.run(args)
    except (ValueError, ZeroDivisionError, OSError, qspan.UndecidedComparisonError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def console_entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
