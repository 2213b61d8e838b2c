"""``trivol`` command line: volume, breakdown, verify, sweep, selftest.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from fractions import Fraction
from typing import Any, Callable, Sequence

from . import formula
from .boxdom import (
    BoxDomain3,
    DomainError,
    Interval,
    domain_from_obj,
    domain_to_obj,
    fmt_scalar,
    loads_json,
    normalize,
    parse_pair,
    ratios,
    to_scalar,
)
from .formula import VolumeReport, hull_volume_any
from .mixedvol import ZValueReport
from .oracle import oracle_volume_montecarlo, oracle_volume_quadrature

SCHEMA_VERSION = "1"
FLOAT_RTOL = 1e-9
CSV_HEADER = [
    "r1", "r2", "r3", "l1", "l2", "l3",
    "case", "qqr_case", "qrr_case", "volq_case",
    "volume_rat", "volume_f64",
]  # fmt: skip

_NEGATIVE_VALUE = re.compile(r"^-[0-9.]")


class UsageError(Exception):
    pass


def f64(x) -> str:
    return format(float(x), ".17g")


def _exact_or_float(x) -> str:
    return fmt_scalar(x) if isinstance(x, Fraction) else f64(x)


# --- input ------------------------------------------------------------------


def _read_domain(args: argparse.Namespace) -> BoxDomain3:
    given = [a for a in ("bounds", "cl", "domain") if getattr(args, a) is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --bounds, --cl, --domain")
    if args.bounds is not None:
        return BoxDomain3.from_bounds(parse_pair(p) for p in args.bounds)
    if args.cl is not None:
        return BoxDomain3(tuple(Interval(*parse_pair(p)) for p in args.cl))
    try:
        text = sys.stdin.read() if args.domain == "-" else open(args.domain, encoding="utf-8").read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.domain}: {exc.strerror}") from exc
    return domain_from_obj(loads_json(text))


def _mode(args: argparse.Namespace) -> str:
    if getattr(args, "float", False):
        return "float"
    mode = os.environ.get("TRIVOL_MODE", "rational")
    if mode not in ("rational", "float"):
        raise UsageError(f"TRIVOL_MODE must be 'rational' or 'float', got {mode!r}")
    return mode


# --- envelopes --------------------------------------------------------------


def _base_envelope(command: str, mode: str, rep: VolumeReport) -> dict[str, Any]:
    norm = rep.normalization
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "mode": mode,
        "input": {"raw": domain_to_obj(rep.raw), "canonical": domain_to_obj(rep.canonical)},
        "normalization": {"signs": list(norm.signs), "permutation": list(norm.permutation)},
        "ratios": [fmt_scalar(r) for r in ratios(rep.canonical)],
        "case": rep.case,
        "subcases": dict(zip(("qqr", "qrr", "volq"), rep.subcases)),
        "volume": fmt_scalar(rep.volume),
        "volume_f64": f64(rep.volume),
    }


def _z_obj(z: ZValueReport) -> dict[str, Any]:
    return {
        "sign": z.sign,
        "entries": [
            {
                "normal": e.normal,
                "value": fmt_scalar(e.value),
                "vertex": e.chosen_vertex,
                "predicted_vertex": e.predicted_vertex,
                "branch": e.branch,
            }
            for e in z.entries
        ],
    }


def breakdown_envelope(rep: VolumeReport, mode: str, command: str = "breakdown") -> dict[str, Any]:
    env = _base_envelope(command, mode, rep)
    for key, val in (
        ("vol_q", rep.vol_q),
        ("vol_r", rep.vol_r),
        ("v_qqr", rep.qqr.value),
        ("v_qrr", rep.qrr.value),
        ("closed_form", rep.closed_form),
        ("assembled", rep.assembled),
    ):
        env[key] = fmt_scalar(val)
        env[key + "_f64"] = f64(val)
    env["z_qqr"] = _z_obj(rep.qqr.z)
    env["z_qrr"] = _z_obj(rep.qrr.z)
    return env


def verify_envelope(
    rep: VolumeReport, mode: str, mc_samples: int, seed: int
) -> tuple[dict[str, Any], bool]:
    exact = mode == "rational"
    closed = rep.closed_form
    quad = oracle_volume_quadrature(rep.raw, exact=exact)
    if exact:
        diff = quad - closed
        rel = abs(diff) / closed
        ok = diff == 0
    else:
        diff = quad - float(closed)
        rel = abs(diff) / float(closed)
        ok = rel <= FLOAT_RTOL
    env = _base_envelope("verify", mode, rep)
    check: dict[str, Any] = {
        "closed_form": fmt_scalar(closed),
        "quadrature": _exact_or_float(quad),
        "quadrature_f64": f64(quad),
        "abs_diff": _exact_or_float(abs(diff)),
        "rel_diff": _exact_or_float(rel),
        "tolerance": "exact" if exact else repr(FLOAT_RTOL),
        "match": ok,
    }
    if mc_samples > 0:
        mc = oracle_volume_montecarlo(rep.raw, mc_samples, seed)
        check["montecarlo"] = {
            "estimate": f64(mc.estimate),
            "std_error": f64(mc.std_error),
            "samples": mc.samples,
            "seed": mc.seed,
            "hits": mc.hits,
            "box_volume": f64(mc.box_volume),
            "within_4se": abs(mc.estimate - float(closed)) <= 4 * mc.std_error,
        }
    env["verify"] = check
    return env, ok


def _emit(env: dict[str, Any], compact: bool, out=None) -> None:
    out = out or sys.stdout
    if compact:
        out.write(json.dumps(env, separators=(",", ":")) + "\n")
    else:
        out.write(json.dumps(env, indent=2) + "\n")


# --- commands ---------------------------------------------------------------


def cmd_volume(args: argparse.Namespace) -> int:
    rep = hull_volume_any(_read_domain(args))
    _emit(_base_envelope("volume", _mode(args), rep), args.json)
    return 0


def cmd_breakdown(args: argparse.Namespace) -> int:
    rep = hull_volume_any(_read_domain(args))
    _emit(breakdown_envelope(rep, _mode(args)), args.json)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    if args.mc_samples < 0:
        raise UsageError("--mc-samples must be >= 0")
    if not 0 <= args.seed < 1 << 64:
        raise UsageError("--seed must fit in 64 unsigned bits")
    rep = hull_volume_any(_read_domain(args))
    env, ok = verify_envelope(rep, _mode(args), args.mc_samples, args.seed)
    _emit(env, args.json)
    return 0 if ok else 1


def parse_range(text: str) -> list[Fraction]:
    """``start:stop:step`` (inclusive stop) or a single value."""
    parts = text.split(":")
    if len(parts) == 1:
        return [to_scalar(parts[0])]
    if len(parts) != 3:
        raise UsageError(f"range must be start:stop:step, got {text!r}")
    start, stop, step = (to_scalar(p) for p in parts)
    if step <= 0 or start > stop:
        raise UsageError(f"range needs step > 0 and start <= stop, got {text!r}")
    out = []
    x = start
    while x <= stop:
        out.append(x)
        x += step
    return out


def sweep_domains(args: argparse.Namespace) -> list[BoxDomain3]:
    if args.domains is not None:
        try:
            with open(args.domains, encoding="utf-8") as fh:
                objs = loads_json(fh.read())
        except OSError as exc:
            raise UsageError(f"cannot read {args.domains}: {exc.strerror}") from exc
        if not isinstance(objs, list):
            raise UsageError("--domains file must hold a JSON list of domain objects")
        return [domain_from_obj(o) for o in objs]
    halves = [to_scalar(x) for x in args.l.split(",")]
    if len(halves) != 3:
        raise UsageError("--l needs three half-lengths")
    grids = [parse_range(args.r1), parse_range(args.r2), parse_range(args.r3)]
    out = []
    for a in grids[0]:
        for b in grids[1]:
            for c in grids[2]:
                out.append(BoxDomain3.from_centers([a * halves[0], b * halves[1], c * halves[2]], halves))
    return out


def sweep_rows(domains: Sequence[BoxDomain3]) -> list[list[str]]:
    rows = []
    for dom in domains:
        rep = hull_volume_any(dom)
        rows.append(
            [fmt_scalar(r) for r in ratios(rep.canonical)]
            + [fmt_scalar(x) for x in rep.canonical.l]
            + [str(rep.case), *(str(s) for s in rep.subcases), fmt_scalar(rep.volume), f64(rep.volume)]
        )
    return rows


def cmd_sweep(args: argparse.Namespace) -> int:
    rows = sweep_rows(sweep_domains(args))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    writer.writerows(rows)
    if args.out in (None, "-"):
        sys.stdout.write(buf.getvalue())
        return 0
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    except OSError as exc:
        raise UsageError(f"cannot write {args.out}: {exc.strerror}") from exc
    return 0


# one canonical domain per case, given as raw mixed-sign boxes
SELFTEST_CASES = {
    1: ([2, -3, 4], [1, 1, 1]),
    2: ([5, 1, -2], [2, 3, 1]),
    3: (["-1/2", "1/2", 2], [1, 1, 1]),
    4: ([0, "-1/2", "9/4"], [2, 1, 3]),
    5: (["1/2", "-3/4", "5/4"], [1, "3/2", "5/2"]),
    6: ([0, "1/4", "-1/2"], [1, 1, 1]),
}


def selftest_checks() -> list[tuple[str, Callable[[], bool]]]:
    def golden() -> bool:
        rep = hull_volume_any(BoxDomain3.from_bounds([[3, 7], [-2, 4], [-3, -1]]))
        return rep.volume == 960 and rep.case == 2 and rep.normalization.permutation == (3, 1, 2)

    def symmetric() -> bool:
        return hull_volume_any(BoxDomain3.from_bounds([[-1, 1]] * 3)).volume == Fraction(32, 3)

    def nonneg_agreement() -> bool:
        doms = [
            BoxDomain3.from_centers([2, 3, 4], [1, 1, 1]),
            BoxDomain3.from_centers([1, 1, 1], [1, 1, 1]),
            BoxDomain3.from_centers(["7/2", 5, 9], ["1/2", 2, 3]),
        ]
        canon = [normalize(d)[0] for d in doms]
        return all(formula.hull_volume(d) == formula.hull_volume_nonneg(d) for d in canon)

    def per_case(case: int) -> Callable[[], bool]:
        def check() -> bool:
            dom = BoxDomain3.from_centers(*SELFTEST_CASES[case])
            rep = hull_volume_any(dom)
            return (
                rep.case == case
                and rep.closed_form == rep.assembled
                and rep.closed_form == oracle_volume_quadrature(dom)
            )

        return check

    checks = [("golden-960", golden), ("symmetric-box", symmetric), ("nonneg-agreement", nonneg_agreement)]
    checks += [(f"case{k}-oracle", per_case(k)) for k in range(1, 7)]
    return checks


def cmd_selftest(args: argparse.Namespace) -> int:
    for name, check in selftest_checks():
        try:
            ok = check()
        except Exception as exc:  # a crash inside a check is a failed check
            print(f"FAIL {name}: {type(exc).__name__}: {exc}")
            return 1
        if not ok:
            print(f"FAIL {name}")
            return 1
        print(f"ok   {name}")
    print("selftest passed")
    return 0


# --- argument parsing -------------------------------------------------------


def _domain_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--bounds", nargs=3, metavar="LO,HI", help="three lo,hi pairs")
    p.add_argument("--cl", nargs=3, metavar="C,L", help="three center,half-length pairs")
    p.add_argument("--domain", metavar="PATH", help="JSON domain file ('-' for stdin)")
    p.add_argument("--json", action="store_true", help="compact single-line JSON")
    p.add_argument("--float", action="store_true", help="floating mode for oracle computations")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trivol",
        description="Exact 4D volume of the convex hull of f = x1*x2*x3 over a box.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("volume", help="closed-form volume and case")
    _domain_args(p)
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("breakdown", help="volumes, mixed volumes, z-values, assembly")
    _domain_args(p)
    p.set_defaults(func=cmd_breakdown)

    p = sub.add_parser("verify", help="check the closed form against the oracles")
    _domain_args(p)
    p.add_argument("--mc-samples", type=int, default=0, metavar="N")
    p.add_argument("--seed", type=int, default=0, metavar="S")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="CSV of cases and volumes over a ratio grid")
    p.add_argument("--r1", default="0", help="start:stop:step or a single value")
    p.add_argument("--r2", default="0")
    p.add_argument("--r3", default="0")
    p.add_argument("--l", default="1,1,1", metavar="L1,L2,L3", help="fixed half-lengths")
    p.add_argument("--domains", metavar="PATH", help="JSON list of domains instead of a grid")
    p.add_argument("--out", metavar="PATH", help="CSV output path (default stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("selftest", help="run the embedded golden checks")
    p.set_defaults(func=cmd_selftest)
    return parser


def _protect_negative_pairs(argv: Sequence[str]) -> list[str]:
    # argparse reads "-2,4" or "-1:1:1/2" as an option; a leading space keeps it a value
    return [" " + a if _NEGATIVE_VALUE.match(a) else a for a in argv]


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_protect_negative_pairs(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (DomainError, UsageError, formula.PreconditionError) as exc:
        print(f"trivol: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
