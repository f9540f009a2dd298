"""Command-line front end.

Four subcommands: ``analyze`` classifies a correlation table from JSON,
``decompose`` finds a minimal-communication mixture for it, ``sweep``
writes the angle-sweep CSV, and ``demo`` prints named example tables
with their reports.

Exit codes are a stable contract for scripting: 0 success, 1 usage
error, 2 input validation failure, 3 computation/domain failure.  All
numeric output is rendered at 12 significant digits and is deterministic
for a fixed invocation.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import quantum
from .correlation import (
    Correlation,
    catalog,
    from_json_dict,
    pr_box,
    to_json_dict,
)
from .errors import NoCrossoverError, SignalBoxError
from .signaling import cloning_violation, randomness_report, unbalanced_pr
from .simulate import (
    classify,
    decomposition_json_dict,
    lp_min_cost,
    report_json_dict,
    tsirelson_signal_box,
)

DEMO_NAMES = ("pr-box", "d01", "tsirelson", "tsirelson-signal", "sigma", "qp")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse normally exits 2 on bad usage; the contract wants 1."""

    def error(self, message):
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="signalbox",
        description="Classify two-setting correlation tables by their signal deficit.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    analyze = commands.add_parser(
        "analyze", help="classify a correlation table from JSON"
    )
    analyze.add_argument("input", nargs="?", help="correlation JSON file")
    analyze.add_argument("--in", dest="input_path", help="correlation JSON file")
    analyze.add_argument("--out", dest="output_path", help="write the report here")
    analyze.add_argument(
        "--measure",
        choices=("mutual_info", "delta"),
        default="mutual_info",
        help="signal measure the verdict uses",
    )

    decompose = commands.add_parser(
        "decompose", help="minimal-communication mixture over the strategy catalog"
    )
    decompose.add_argument("input", nargs="?", help="correlation JSON file")
    decompose.add_argument("--in", dest="input_path", help="correlation JSON file")
    decompose.add_argument("--out", dest="output_path", help="write the weights here")
    decompose.add_argument(
        "--tol",
        type=float,
        default=1e-9,
        help="largest acceptable reconstruction residual",
    )

    sweep = commands.add_parser("sweep", help="angle sweep as CSV")
    sweep.add_argument("--theta-min", type=float, default=0.9)
    sweep.add_argument("--theta-max", type=float, default=1.2)
    sweep.add_argument("--steps", type=int, default=61)
    sweep.add_argument("--out", dest="output_path", help="write the CSV here")

    demo = commands.add_parser("demo", help="print a named example table")
    demo.add_argument("name", choices=DEMO_NAMES)
    demo.add_argument(
        "--p",
        type=float,
        default=0.25,
        help="mixing weight for the qp demo",
    )
    demo.add_argument("--out", dest="output_path", help="write the demo output here")
    return parser


def _emit(text: str, output_path) -> int:
    if output_path is None:
        sys.stdout.write(text)
        return 0
    try:
        with open(output_path, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as exc:
        print(f"signalbox: cannot write {output_path}: {exc}", file=sys.stderr)
        return 2
    return 0


def _load_table(args) -> Correlation:
    """Read the input correlation, raising _UsageError/SignalBoxError."""
    positional = getattr(args, "input", None)
    flagged = getattr(args, "input_path", None)
    if positional and flagged:
        raise _UsageError("give the input file either positionally or via --in, not both")
    path = positional or flagged
    if path is None:
        payload = json.load(sys.stdin)
        return from_json_dict(payload)
    try:
        with open(path, "r", encoding="utf-8") as handle:
            payload = json.load(handle)
    except OSError as exc:
        raise SignalBoxError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SignalBoxError(f"{path}: invalid JSON: {exc}") from exc
    return from_json_dict(payload)


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def cmd_analyze(args) -> int:
    try:
        table = _load_table(args)
    except json.JSONDecodeError as exc:
        print(f"signalbox: invalid JSON on stdin: {exc}", file=sys.stderr)
        return 2
    except SignalBoxError as exc:
        print(f"signalbox: invalid input: {exc}", file=sys.stderr)
        return 2
    try:
        report = classify(table, measure=args.measure)
    except SignalBoxError as exc:
        print(f"signalbox: {exc}", file=sys.stderr)
        return 3
    return _emit(_json_text(report_json_dict(report)), args.output_path)


def cmd_decompose(args) -> int:
    try:
        table = _load_table(args)
    except json.JSONDecodeError as exc:
        print(f"signalbox: invalid JSON on stdin: {exc}", file=sys.stderr)
        return 2
    except SignalBoxError as exc:
        print(f"signalbox: invalid input: {exc}", file=sys.stderr)
        return 2
    try:
        decomposition = lp_min_cost(table)
        if decomposition.residual > args.tol:
            print(
                f"signalbox: reconstruction residual {decomposition.residual} "
                f"exceeds --tol {args.tol}",
                file=sys.stderr,
            )
            return 3
    except SignalBoxError as exc:
        print(f"signalbox: {exc}", file=sys.stderr)
        return 3
    return _emit(_json_text(decomposition_json_dict(decomposition)), args.output_path)


def cmd_sweep(args) -> int:
    if args.steps < 2:
        print("signalbox: sweep needs --steps of at least 2", file=sys.stderr)
        return 1
    if not args.theta_max > args.theta_min:
        print(
            "signalbox: sweep needs --theta-min strictly below --theta-max",
            file=sys.stderr,
        )
        return 1
    try:
        rows = quantum.theta_sweep(args.theta_min, args.theta_max, args.steps)
        text = quantum.sweep_csv(rows)
        try:
            crossover = quantum.find_crossover(args.theta_min, args.theta_max)
            text += "# crossover=%.12g\n" % crossover
        except NoCrossoverError:
            pass
    except SignalBoxError as exc:
        print(f"signalbox: {exc}", file=sys.stderr)
        return 3
    return _emit(text, args.output_path)


def _demo_payload(name: str, p: float) -> dict:
    if name == "pr-box":
        table = pr_box()
        return {"table": to_json_dict(table), "report": report_json_dict(classify(table))}
    if name == "d01":
        table = catalog("signal_0_anb").as_correlation()
        return {"table": to_json_dict(table), "report": report_json_dict(classify(table))}
    if name == "tsirelson":
        table = quantum.tsirelson_box()
        return {"table": to_json_dict(table), "report": report_json_dict(classify(table))}
    if name == "tsirelson-signal":
        table = tsirelson_signal_box()
        return {"table": to_json_dict(table), "report": report_json_dict(classify(table))}
    if name == "sigma":
        state, a0, a1, b0, b1 = quantum.sigma_settings()
        table = quantum.sequential_correlation(state, a0, a1, b0, b1)
        report = classify(table)
        rho0 = quantum.post_measurement_state(state, a0)
        rho1 = quantum.post_measurement_state(state, a1)
        chi = quantum.holevo(report.alpha_star, rho0, rho1)
        return {
            "table": to_json_dict(table),
            "report": report_json_dict(report),
            "mu": float(f"{report.signal_mutual_info:.12g}"),
            "alpha_star": float(f"{report.alpha_star:.12g}"),
            "s": float(f"{report.strength:.12g}"),
            "tau": float(f"{quantum.trace_distance(rho0, rho1):.12g}"),
            "chi": float(f"{chi:.12g}"),
            "bound": float(f"{quantum.signal_corrected_bound():.12g}"),
        }
    if name == "qp":
        table = unbalanced_pr(p)
        trade = randomness_report(p)
        payload = {
            "table": to_json_dict(table),
            "report": report_json_dict(classify(table, measure="delta")),
            "p": float(f"{trade.p:.12g}"),
            "s": float(f"{trade.strength:.12g}"),
            "intrinsic": float(f"{trade.intrinsic:.12g}"),
            "tradeoff": float(f"{trade.tradeoff:.12g}"),
        }
        if p <= 0.5:
            payload["cloning_violation"] = float(f"{cloning_violation(p):.12g}")
        return payload
    raise _UsageError(f"unknown demo {name!r}")


def cmd_demo(args) -> int:
    try:
        payload = _demo_payload(args.name, args.p)
    except SignalBoxError as exc:
        print(f"signalbox: {exc}", file=sys.stderr)
        return 3
    return _emit(_json_text(payload), args.output_path)


_DISPATCH = {
    "analyze": cmd_analyze,
    "decompose": cmd_decompose,
    "sweep": cmd_sweep,
    "demo": cmd_demo,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _DISPATCH[args.command](args)
    except _UsageError as exc:
        print(f"signalbox: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
