"""Command-line interface.

    fourvertex analyze CURVE [--center x,y,z] [--samples N] [--config path]
                             [--seed N] [--out path] [--format json|csv]
    fourvertex trace CURVE [same flags]
    fourvertex zoo list
    fourvertex zoo emit NAME [--out path]

``CURVE`` is a curve spec JSON file or ``zoo:NAME``. Exit codes for
``analyze``: 0 theorem verified, 2 hypotheses fail, 3 inconclusive or
degenerate, 1 usage or input error.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from typing import List, Optional

import numpy as np

from .config import RunConfig, load_config
from .errors import ConfigurationError, FourVertexError
from .specio import dumps_curve, load_curve
from .verifier import (
    HYPOTHESES_FAIL,
    INCONCLUSIVE,
    THEOREM_VERIFIED,
    report_to_dict,
    trace_table,
    verify_theorem,
)
from .zoo import get_entry, zoo_names

EXIT_CODES = {THEOREM_VERIFIED: 0, HYPOTHESES_FAIL: 2, INCONCLUSIVE: 3}
EXIT_USAGE = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which would collide with hypotheses-fail
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def parse_center(text: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError(f"--center expects x,y,z, got {text!r}")
    try:
        c = np.array([float(p) for p in parts])
    except ValueError:
        raise UsageError(f"--center expects three numbers, got {text!r}") from None
    if not np.all(np.isfinite(c)):
        raise UsageError(f"--center must be finite, got {text!r}")
    return c


def resolve_curve(arg: str):
    if arg.startswith("zoo:"):
        return get_entry(arg[4:]).spec
    return load_curve(arg)


def resolve_config(args) -> RunConfig:
    config = load_config(args.config) if args.config else RunConfig()
    changes = {}
    if args.samples is not None:
        changes["n_samples"] = args.samples
    if args.seed is not None:
        changes["perturbation"] = {"seed": args.seed}
    try:
        return config.updated(**changes) if changes else config
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(str(exc)) from None


def _fmt(x) -> str:
    return "" if not np.isfinite(x) else repr(float(x))


def trace_csv(t, kappa, tau, kbar) -> str:
    buf = io.StringIO()
    buf.write("t,kappa,tau,kbar\n")
    for row in zip(t, kappa, tau, kbar):
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    return buf.getvalue()


def report_json(report) -> str:
    return json.dumps(report_to_dict(report), indent=2, sort_keys=True, allow_nan=False) + "\n"


def _write(text: str, out: Optional[str], stdout):
    if out is None or out == "-":
        stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def summary_line(report) -> str:
    d = report_to_dict(report)["summary"]
    c = ",".join(repr(float(v)) for v in report.center_used)
    return (f"verdict={report.verdict} genuine_inflections={d['genuine_inflections']} "
            f"torsion_sign_changes={d['torsion_sign_changes']} "
            f"intervals_with_sign_change={d['intervals_with_sign_change']}/{d['intervals']} "
            f"center_used={c} perturbation_attempts={report.perturbation_attempts}")


def cmd_analyze(args, stdout, stderr) -> int:
    center = parse_center(args.center)
    config = resolve_config(args)
    spec = resolve_curve(args.curve)
    if args.format == "csv":
        _write(trace_csv(*trace_table(spec, center, config.n_samples, config.tolerances)), args.out, stdout)
        return 0
    report = verify_theorem(spec, center, config)
    text = report_json(report)
    # keep stdout parseable when the report itself goes there
    summary_to = stderr if args.out in (None, "-") else stdout
    _write(text, args.out, stdout)
    summary_to.write(summary_line(report) + "\n")
    return EXIT_CODES[report.verdict]


def cmd_trace(args, stdout, stderr) -> int:
    center = parse_center(args.center)
    config = resolve_config(args)
    spec = resolve_curve(args.curve)
    cols = trace_table(spec, center, config.n_samples, config.tolerances)
    if args.format == "json":
        names = ("t", "kappa", "tau", "kbar")
        doc = {k: [None if not np.isfinite(v) else float(v) for v in c] for k, c in zip(names, cols)}
        text = json.dumps(doc, sort_keys=True) + "\n"
    else:
        text = trace_csv(*cols)
    _write(text, args.out, stdout)
    return 0


def cmd_zoo(args, stdout, stderr) -> int:
    if args.action == "list":
        for name in zoo_names():
            e = get_entry(name)
            stdout.write(f"{name}\t{e.description}\texpected={e.expects('verdict')}\n")
        return 0
    if not args.name:
        raise UsageError("zoo emit needs a NAME")
    _write(dumps_curve(get_entry(args.name).spec), args.out, stdout)
    return 0


def _common(p):
    p.add_argument("curve", help="curve spec JSON path or zoo:NAME")
    p.add_argument("--center", default="0,0,0", help="projection center x,y,z (default 0,0,0)")
    p.add_argument("--samples", type=int, help="override n_samples")
    p.add_argument("--config", help="run config JSON")
    p.add_argument("--seed", type=int, help="override the perturbation seed")
    p.add_argument("--out", help="output path (default: standard output)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fourvertex", description="Torsion sign changes of closed space curves.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    pa = sub.add_parser("analyze", help="run the full verification pipeline")
    _common(pa)
    pa.add_argument("--format", choices=("json", "csv"), default="json",
                    help="json report (default) or csv trace")
    pt = sub.add_parser("trace", help="write t, kappa, tau, kbar samples")
    _common(pt)
    pt.add_argument("--format", choices=("json", "csv"), default="csv")
    pz = sub.add_parser("zoo", help="list or emit example curves")
    pz.add_argument("action", choices=("list", "emit"))
    pz.add_argument("name", nargs="?")
    pz.add_argument("--out")
    return parser


COMMANDS = {"analyze": cmd_analyze, "trace": cmd_trace, "zoo": cmd_zoo}


def main(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, stdout, stderr)
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except (FourVertexError, OSError) as exc:
        stderr.write(f"fourvertex: error: {exc}\n")
        return EXIT_USAGE


def entry_point():  # pragma: no cover
    sys.exit(main())
