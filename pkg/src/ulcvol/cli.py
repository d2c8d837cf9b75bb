"""Command-line interface.

Exit status: 0 when the checked property holds, 1 on a violation or failed
cross-check (a witness file is written), 2 on malformed input or usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import counterexample, geomcore, liggett, seqcore, shephard
from .formats import dump_body, dump_seq, load_body, load_seq
from .geomcore import VerificationError
from .seqcore import rat

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _rational_list(text: str):
    return [rat(x) for x in text.split(",") if x.strip()]


def _fmt(seq) -> str:
    return "(" + ", ".join(str(x) for x in seq) + ")"


def _report_line(label: str, rep) -> str:
    if rep.holds:
        return f"{label}: holds"
    return f"{label}: violated at index {rep.index}: lhs {rep.lhs} < rhs {rep.rhs}"


def _witness(args, name: str, payload: dict) -> None:
    path = liggett.write_witness(Path(args.witness_dir) / f"witness-{name}.json", payload)
    print(f"witness written to {path}")


def _finish(args, code: int, summary: dict) -> int:
    if args.machine:
        print(json.dumps({"exit": code, **summary}, sort_keys=True))
    return code


# ---------------------------------------------------------------- subcommands


def cmd_check(args) -> int:
    a = load_seq(args.seqfile)
    if args.signed:
        rep, label = seqcore.newton_check(a, args.order), f"Newton({args.order})"
    else:
        rep, label = seqcore.is_ulc(a, args.order), f"ULC({args.order})"
    print(f"sequence {_fmt(a)}")
    print(_report_line(label, rep))
    code = EXIT_OK if rep.holds else EXIT_VIOLATION
    if not rep.holds:
        _witness(args, "check", {
            "command": "check", "order": args.order, "signed": args.signed,
            "sequence": [str(x) for x in a], "report": rep.to_json(),
        })
    return _finish(args, code, {"report": rep.to_json()})


def cmd_convolve(args) -> int:
    c = seqcore.convolve(load_seq(args.a), load_seq(args.b))
    text = dump_seq(c)
    if args.output:
        Path(args.output).write_text(text + "\n", encoding="utf-8")
        print(f"wrote {args.output}")
    else:
        print(text)
    return _finish(args, EXIT_OK, {"convolution": [str(x) for x in c]})


def cmd_realize(args) -> int:
    a = load_seq(args.seqfile)
    try:
        r = shephard.realize(a)
    except VerificationError as exc:
        print(f"verification failed: {exc}")
        _witness(args, "realize", {"command": "realize", "sequence": [str(x) for x in a]})
        return _finish(args, EXIT_VIOLATION, {})
    print(f"n = {r.n}")
    print(f"lambda = {_fmt(r.lam)}")
    print(f"proportionality = {r.proportionality}")
    print("verified: proportionality * Vol(tP + Q) reproduces the sequence")
    if args.output:
        out = Path(args.output)
        out.mkdir(parents=True, exist_ok=True)
        p, q = r.bodies
        (out / "P.json").write_text(dump_body(p) + "\n", encoding="utf-8")
        (out / "Q.json").write_text(dump_body(q) + "\n", encoding="utf-8")
        (out / "sequence.json").write_text(dump_seq(a) + "\n", encoding="utf-8")
        (out / "realization.json").write_text(
            json.dumps(r.to_json(), indent=2) + "\n", encoding="utf-8"
        )
        print(f"wrote realization to {out}")
    return _finish(args, EXIT_OK, {"realization": r.to_json()})


def cmd_volpoly(args) -> int:
    vp = geomcore.volume_poly(load_body(args.p), load_body(args.q))
    print(f"Vol_{vp.dim}(tP + Q) coefficients: {_fmt(vp.coeffs)}")
    return _finish(args, EXIT_OK, {"dim": vp.dim, "coeffs": [str(x) for x in vp.coeffs]})


def cmd_theorem(args) -> int:
    a, b = load_seq(args.a), load_seq(args.b)
    v = liggett.theorem_check(a, args.la, b, args.lb, geometric=args.geometric)
    print(f"a = {_fmt(a)}  ULC({args.la})")
    print(f"b = {_fmt(b)}  ULC({args.lb})")
    print(f"a * b = {_fmt(v.c)}")
    print(_report_line(f"ULC({args.la + args.lb})", v.ulc_report))
    if v.geometric_checked:
        print(f"geometric route: {'match' if v.geometric_match else 'MISMATCH'}")
    code = EXIT_OK if v.ok else EXIT_VIOLATION
    if not v.ok:
        _witness(args, "theorem", v.to_json())
    return _finish(args, code, v.to_json())


def cmd_fuzz(args) -> int:
    s = liggett.fuzz(
        args.trials, args.max_order, args.seed,
        geometric_every=args.geometric_every, jobs=args.jobs,
        witness_dir=args.witness_dir,
    )
    print(f"trials: {s.trials}")
    print(f"geometric checks: {s.geometric_checks}")
    print(f"violations: {len(s.violations)}")
    for path in s.witness_files:
        print(f"witness written to {path}")
    print(f"elapsed: {s.elapsed:.2f}s", file=sys.stderr)
    return _finish(args, EXIT_OK if not s.violations else EXIT_VIOLATION, s.to_json())


def cmd_counterexample(args) -> int:
    if args.scan is not None:
        points = counterexample.limit_scan(_rational_list(args.scan))
    else:
        if args.a is None or args.b is None:
            raise ValueError("give both --a and --b, or --scan")
        points = [counterexample.family_point(args.a, args.b)]
    print(f"{'a':>12} {'b':>8} {'ratio c5^2/(c4 c6)':>24} {'threshold':>10}  newton4(seq)  newton8(conv)")
    for pt in points:
        conv = "holds" if pt.conv_report.holds else f"fails at {pt.conv_report.index}"
        print(f"{str(pt.a):>12} {str(pt.b):>8} {str(pt.ratio):>24} {str(pt.threshold):>10}  "
              f"{'holds' if pt.input_report.holds else 'fails':<12}  {conv}")
    for pt in points:
        if pt.violated:
            print(f"a={pt.a}, b={pt.b}: ratio {pt.ratio} < {pt.threshold}, "
                  f"order-8 Newton inequality fails at index 5")
    violated = any(pt.violated for pt in points)
    records = [pt.to_json() for pt in points]
    if args.json:
        for rec in records:
            print(json.dumps(rec, sort_keys=True))
    if violated:
        _witness(args, "counterexample", {"command": "counterexample", "points": records})
    return _finish(args, EXIT_VIOLATION if violated else EXIT_OK,
                   {"violated": violated, "points": len(points)})


# ---------------------------------------------------------------- wiring


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--machine", action="store_true",
                        help="print a final JSON summary line")
    common.add_argument("--witness-dir", default=".",
                        help="directory for witness files on violations (default: .)")

    parser = _Parser(prog="ulcvol", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[common], help="check ULC(d) or Newton(d)")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--signed", action="store_true", help="allow signed entries (Newton check)")
    p.add_argument("seqfile")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("convolve", parents=[common], help="convolve two sequences")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_convolve)

    p = sub.add_parser("realize", parents=[common], help="realize a positive ULC sequence")
    p.add_argument("seqfile")
    p.add_argument("-o", "--output", help="directory for P.json, Q.json, realization.json")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("volpoly", parents=[common], help="coefficients of Vol(tP + Q)")
    p.add_argument("p")
    p.add_argument("q")
    p.set_defaults(func=cmd_volpoly)

    p = sub.add_parser("theorem", parents=[common], help="check the convolution theorem")
    p.add_argument("a")
    p.add_argument("--la", type=int, required=True)
    p.add_argument("b")
    p.add_argument("--lb", type=int, required=True)
    p.add_argument("--geometric", action="store_true")
    p.set_defaults(func=cmd_theorem)

    p = sub.add_parser("fuzz", parents=[common], help="random theorem checks")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-order", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--geometric-every", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("counterexample", parents=[common], help="signed Newton counterexample")
    p.add_argument("--a", type=rat)
    p.add_argument("--b", type=rat)
    p.add_argument("--scan", help="comma-separated eps values in (0, 1/2]")
    p.add_argument("--json", action="store_true", help="also print one JSON record per point")
    p.set_defaults(func=cmd_counterexample)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except VerificationError as exc:
        print(f"verification failed: {exc}")
        _witness(args, args.command, {"command": args.command, "argv": list(argv or sys.argv[1:]),
                                      "error": str(exc)})
        return _finish(args, EXIT_VIOLATION, {"error": str(exc)})
    except (ValueError, TypeError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
