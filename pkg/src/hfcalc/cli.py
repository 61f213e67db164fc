"""Command-line front end.

Every subcommand prints a short table (suppressed by ``--quiet``) and can write
a deterministic JSON report with ``--json PATH``.  Exit codes: 0 success,
1 bad input, 2 internal inconsistency.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__, _kernels, fixtures
from .errors import HFCalcError, InputError
from .knot import KnotComplex, genus, graded_ranks, hat_complex, parse_validate
from .complexes import homology


class Inputs:
    """Loaded complexes together with the digests that go into the report."""

    def __init__(self):
        self.records: list[dict] = []

    def load(self, source: str) -> KnotComplex:
        path = Path(source)
        if path.is_file():
            text = path.read_text(encoding="utf-8")
            label = str(path)
        elif source in fixtures.NAMES:
            text = fixtures.text(source)
            label = f"fixture:{source}"
        else:
            raise InputError(f"no such file or bundled fixture: {source}")
        self.records.append({"input": label, "sha256": hashlib.sha256(text.encode("utf-8")).hexdigest()})
        return parse_validate(text)


def _window(args, k: KnotComplex):
    if args.window is None:
        return None
    if args.window < 0:
        raise InputError("--window must be nonnegative")
    return range(-args.window, args.window + 1)


def _package(args, k):
    from .package import build_package

    return build_package(k, window=_window(args, k))


def _slope(text: str) -> tuple[int, int]:
    try:
        frac = text.split("/")
        if len(frac) == 1:
            return int(frac[0]), 1
        if len(frac) == 2:
            return int(frac[0]), int(frac[1])
    except ValueError:
        pass
    raise InputError(f"slope must look like p/q, got {text!r}")


def _int_arg(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise InputError(f"{what} must be an integer, got {text!r}") from None


def _ranks_line(ranks: dict[int, int]) -> str:
    return " ".join(f"{s}:{r}" for s, r in sorted(ranks.items()))


# --------------------------------------------------------------------------
# subcommands: each returns (results, human lines)
# --------------------------------------------------------------------------


def cmd_validate(args, inputs):
    results, lines = [], []
    for source in args.files:
        k = inputs.load(source)
        results.append({"knot": k.name, "generators": k.size, "arrows": len(k.arrows), "genus": genus(k)})
        lines.append(f"{k.name}: valid, {k.size} generators, {len(k.arrows)} arrows, genus {genus(k)}")
    return {"complexes": results}, lines


def cmd_hfk(args, inputs):
    k = inputs.load(args.file)
    ranks = graded_ranks(k)
    hat = homology(hat_complex(k).complex).rank
    return (
        {"knot": k.name, "ranks": {str(s): r for s, r in ranks.items()}, "hat_rank": hat},
        [_ranks_line(ranks), f"rank H(B) = {hat}"],
    )


def cmd_package(args, inputs):
    from .package import package_to_json

    k = inputs.load(args.file)
    pkg = _package(args, k)
    data = package_to_json(pkg)
    h = pkg.h_numbers()
    lines = [
        f"{k.name}: h_inf={h['h_inf']} h_one={h['h_one']} h_zero={h['h_zero']}",
        f"H_one by level:  {_ranks_line(pkg.per_level('one'))}",
        f"H_zero by level: {_ranks_line(pkg.per_level('zero'))}",
        f"relations hold: {data['relations']['relations_hold']}",
    ]
    return data, lines


def cmd_surgery(args, inputs):
    from .surgery import rational_surgery_rank

    k = inputs.load(args.file)
    p, q = _slope(args.slope)
    rank = rational_surgery_rank(_package(args, k), p, q)
    return (
        {"knot": k.name, "formula": "rational", "slope": f"{p}/{q}", "total": rank},
        [f"{k.name} {Fraction(p, q) if q else p}-surgery: rank {rank}"],
    )


def cmd_os_cone(args, inputs):
    from .surgery import os_cone_diagram

    k = inputs.load(args.file)
    d = os_cone_diagram(k)
    rank = d.rank()
    return (
        {
            "knot": k.name,
            "formula": "cone",
            "ranks": {str(s): r for s, r in d.a_ranks.items()},
            "map_ranks": d.map_ranks(),
            "total": rank,
        },
        [f"A_s ranks: {_ranks_line(d.a_ranks)}", f"+1 surgery rank: {rank}"],
    )


def cmd_large(args, inputs):
    from .surgery import large_surgery_table

    k = inputs.load(args.file)
    table = large_surgery_table(k, _int_arg(args.n, "n"))
    return (
        {"knot": k.name, "formula": "large", "n": table.n, "ranks": {str(s): r for s, r in table.ranks.items()},
         "total": table.total},
        [f"classes: {_ranks_line(table.ranks)}", f"total: {table.total}"],
    )


def cmd_dual_knot(args, inputs):
    from .surgery import dual_knot_advisory, dual_knot_hfk

    k = inputs.load(args.file)
    n = _int_arg(args.n, "n")
    ranks = dual_knot_hfk(k, n)
    nonzero = {s: r for s, r in ranks.items() if r}
    advisory = dual_knot_advisory(n)
    lines = [f"nonzero levels: {_ranks_line(nonzero) or '(none)'}", f"total: {sum(ranks.values())}"]
    if advisory:
        lines.append(f"note: {advisory}")
    return (
        {"knot": k.name, "formula": "dual-knot", "n": n, "ranks": {str(s): r for s, r in ranks.items()},
         "total": sum(ranks.values()), "advisory": advisory},
        lines,
    )


def cmd_splice(args, inputs):
    from .splice import build_cube, splice_report

    k1, k2 = inputs.load(args.first), inputs.load(args.second)
    report = splice_report(build_cube(_package(args, k1), _package(args, k2)))
    lines = [
        "vertex dims: " + " ".join(f"{v}={d}" for v, d in report["dims"].items()),
        f"rank D1 = {report['rank_d1']}, rank D2 = {report['rank_d2']}",
        f"homology rank = {report['rank']}, euler characteristic = {report['euler']}",
    ]
    return report, lines


def cmd_verify(args, inputs):
    from .verifier import verify_report

    k = inputs.load(args.file)
    report = verify_report(k, _package(args, k))
    hyp = report["hypotheses"]
    lines = [
        f"tau: {report['tau']}",
        f"normal form stage: {report['normal_form']['stage']}"
        + (f" (obstruction: {report['normal_form']['obstruction']})" if report["normal_form"]["obstruction"] else ""),
        "failed predicates: " + (", ".join(hyp["failed"]) or "none"),
        f"counterexample candidate: {hyp['counterexample_candidate']}",
    ]
    if report["formula"]["critical"]:
        raise HFCalcError(f"CRITICAL: rank formula mismatch despite the normal form: {report['formula']['samples']}")
    return report, lines


def cmd_crosscheck(args, inputs):
    from .surgery import cross_validate

    k = inputs.load(args.file)
    report = cross_validate(k, _package(args, k))
    lines = [
        f"rational 1/1 = {report['rational_1_1']}, cone = {report['os_cone']}",
        "large: " + " ".join(f"n={n}:{v}" for n, v in report["large"].items()),
    ]
    return report, lines


def cmd_selftest(args, inputs):
    from .acceptance import Context, RANDOM_SEED, run_all

    seed = RANDOM_SEED if args.seed is None else args.seed
    results = run_all(Context(seed=seed))
    data = {
        "seed": seed,
        "criteria": [{"number": r.number, "title": r.title, "passed": r.passed, "detail": r.detail} for r in results],
        "passed": all(r.passed for r in results),
    }
    lines = [r.line() for r in results]
    failed = [r for r in results if not r.passed]
    if failed:
        data["first_failure"] = failed[0].number
    return data, lines


COMMANDS = {
    "validate": cmd_validate,
    "hfk": cmd_hfk,
    "package": cmd_package,
    "surgery": cmd_surgery,
    "os-cone": cmd_os_cone,
    "large": cmd_large,
    "dual-knot": cmd_dual_knot,
    "splice": cmd_splice,
    "verify": cmd_verify,
    "crosscheck": cmd_crosscheck,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="write the JSON report here")
    common.add_argument("--seed", type=int, help="seed for randomly generated complexes")
    common.add_argument("--window", type=int, help="compute the package on levels -W..W")
    common.add_argument("--quiet", action="store_true", help="suppress the human-readable table")

    parser = argparse.ArgumentParser(prog="hfcalc", description="Knot Floer surgery and splicing calculator")
    parser.add_argument("--version", action="version", version=f"hfcalc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, *positional):
        p = sub.add_parser(name, parents=[common], help=help_text)
        for arg, kwargs in positional:
            p.add_argument(arg, **kwargs)
        return p

    file_arg = ("file", {"help": "a .kc file or a bundled fixture name"})
    add("validate", "check complexes", ("files", {"nargs": "+", "help": ".kc files or fixture names"}))
    add("hfk", "graded ranks of the complex", file_arg)
    add("package", "dual-knot groups and maps", file_arg)
    add("surgery", "rank after p/q surgery", file_arg, ("slope", {"help": "p/q with p >= 0, q >= 1"}))
    add("os-cone", "rank after +1 surgery from the cone diagram", file_arg)
    add("large", "large integral surgery table", file_arg, ("n", {"help": "surgery coefficient, n > 2g"}))
    add("dual-knot", "ranks of the dual knot after n surgery", file_arg, ("n", {"help": "integer coefficient"}))
    add("splice", "rank of the splice of two complements", ("first", {}), ("second", {}))
    add("verify", "normal forms, tau and predicates", file_arg)
    add("crosscheck", "compare the three surgery routes", file_arg)
    add("selftest", "run every acceptance criterion")
    return parser


def _versions() -> dict:
    return {"hfcalc": __version__, "numpy": np.__version__, "backend": _kernels.BACKEND}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    inputs = Inputs()
    try:
        results, lines = COMMANDS[args.command](args, inputs)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except HFCalcError as exc:
        print(f"inconsistency: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    report = {"command": args.command, "inputs": inputs.records, "results": results, "versions": _versions()}
    if args.json:
        Path(args.json).write_text(json.dumps(report, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    if not args.quiet:
        for line in lines:
            print(line)
    if args.command == "selftest" and not results["passed"]:
        first = results["first_failure"]
        print(f"selftest failed at criterion {first}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
