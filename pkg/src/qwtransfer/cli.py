"""Command-line front end.

Exit codes: 0 success, 1 runtime failure (unwritable output, failed
``--verify`` check), 2 argument errors.
"""

import argparse
import io
import json
import sys
from dataclasses import dataclass
from typing import Optional

from qwtransfer.experiment import FAMILIES, REPRESENTATIONS, invariant_checks, make_model, run_transfer, sweep

CSV_HEADER = "t,fidelity_full,fidelity_reduced,fidelity_analytic"
SWEEP_HEADER = "N,predicted_T,peak_step,peak_fidelity"


@dataclass
class RunConfig:
    family: str
    N: Optional[int]
    sender: int = 1
    receiver: int = 2
    steps: Optional[int] = None
    representations: tuple = REPRESENTATIONS
    format: str = "csv"
    out: str = "-"
    seed: int = 0
    verify: bool = False
    sweep: Optional[tuple] = None

    def model(self, n=None):
        return make_model(self.family, self.N if n is None else n, self.sender, self.receiver)


def _int_list(text):
    try:
        values = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _repr_list(text):
    names = tuple(x.strip() for x in text.split(",") if x.strip())
    bad = [x for x in names if x not in REPRESENTATIONS]
    if bad or not names:
        raise argparse.ArgumentTypeError(f"invalid representation(s) {bad or text!r}; choose from {','.join(REPRESENTATIONS)}")
    return tuple(r for r in REPRESENTATIONS if r in names)


def build_parser():
    p = argparse.ArgumentParser(
        prog="qwtransfer",
        description="State transfer between two marked vertices by quantum-walk search dynamics.",
    )
    p.add_argument("--model", required=True, choices=sorted(FAMILIES), help="graph family")
    p.add_argument("--n", type=int, help="number of vertices (outer vertices for the star)")
    p.add_argument("--sender", type=int, default=1)
    p.add_argument("--receiver", type=int, default=2)
    p.add_argument("--steps", type=int, help="number of steps (default: 3x predicted transfer time)")
    p.add_argument("--repr", type=_repr_list, default=REPRESENTATIONS, help="comma list of full,reduced,analytic")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default="-", help='output path, "-" for stdout')
    p.add_argument("--seed", type=int, default=0, help="seed for the random states used by --verify")
    p.add_argument("--verify", action="store_true", help="run the invariant suite and print PASS/FAIL per check")
    p.add_argument("--sweep", type=_int_list, help="comma list of N; emits one peak summary row per N")
    return p


def parse_args(argv=None):
    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.sweep is None and ns.n is None:
        parser.error("--n is required unless --sweep is given")
    if ns.verify and ns.n is None:
        parser.error("--verify needs --n")
    if ns.steps is not None and ns.steps < 0:
        parser.error(f"--steps must be non-negative, got {ns.steps}")
    config = RunConfig(
        family=ns.model,
        N=ns.n,
        sender=ns.sender,
        receiver=ns.receiver,
        steps=ns.steps,
        representations=ns.repr,
        format=ns.format,
        out=ns.out,
        seed=ns.seed,
        verify=ns.verify,
        sweep=ns.sweep,
    )
    for n in config.sweep or (config.N,):
        try:
            config.model(n)
        except (ValueError, TypeError) as exc:
            parser.error(f"--n {n}: {exc}")
    if config.sweep and any(b <= a for a, b in zip(config.sweep, config.sweep[1:])):
        parser.error(f"--sweep values must be strictly increasing, got {','.join(map(str, config.sweep))}")
    return config


def _fmt(value):
    return "" if value is None else f"{value:.12f}"


def emit_report(report, config):
    """Serialise a TransferReport as CSV rows or a JSON summary."""
    if config.format == "json":
        return json.dumps(report.to_dict(), indent=2) + "\n"
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for row in report.series:
        buf.write(f"{row.t},{_fmt(row.fidelity_full)},{_fmt(row.fidelity_reduced)},{_fmt(row.fidelity_analytic)}\n")
    return buf.getvalue()


def emit_sweep(report, config):
    if config.format == "json":
        return json.dumps(report.to_dict(), indent=2) + "\n"
    lines = [SWEEP_HEADER] + [f"{r.N},{r.predicted_T},{r.peak_step},{_fmt(r.peak_fidelity)}" for r in report.rows]
    return "\n".join(lines) + "\n"


def emit_checks(checks, model):
    lines = [f"# {model.family} N={model.N} s={model.s} r={model.r}"]
    for c in checks:
        lines.append(f"{'PASS' if c.passed else 'FAIL'}  {c.name}: {c.value:.3e} (tol {c.tolerance:.1e})")
    return "\n".join(lines) + "\n"


def _write(text, path):
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def main(argv=None):
    config = parse_args(argv)
    status = 0
    if config.verify:
        model = config.model()
        checks = invariant_checks(model, seed=config.seed)
        text = emit_checks(checks, model)
        status = 0 if all(c.passed for c in checks) else 1
    elif config.sweep:
        text = emit_sweep(sweep(config.family, config.sweep, (config.sender, config.receiver)), config)
    else:
        report = run_transfer(config.model(), config.steps, config.representations)
        text = emit_report(report, config)
    try:
        _write(text, config.out)
    except OSError as exc:
        print(f"qwtransfer: cannot write {config.out}: {exc}", file=sys.stderr)
        return 1
    return status


if __name__ == "__main__":
    sys.exit(main())
