"""Command-line front end emitting plot-ready CSV tables.

Subcommands: `bounds` tabulates the closed-form DoF bounds next to the
digitized comparison curves, `simulate` sweeps mean rate per user over an
SNR grid, and `outage` sweeps the outage rate over a feedback-quality
grid. dB ranges accept the inclusive form a:b:step; lists are
comma-separated. Floats are printed with 9 significant digits and rows in
a fixed deterministic order, so identical invocations produce identical
bytes.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from . import bounds as bnd
from .sim import SCHEME_ORDER, SimConfig, run_sweep

__all__ = ["OutputTable", "format_float", "main"]


def format_float(x: float) -> str:
    return f"{x:.9g}"


@dataclass
class OutputTable:
    """A header plus pre-formatted string rows, one CSV table."""

    header: Tuple[str, ...]
    rows: List[Tuple[str, ...]]

    def to_csv(self) -> str:
        lines = [",".join(self.header)]
        lines.extend(",".join(row) for row in self.rows)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str) -> "OutputTable":
        lines = [ln for ln in text.split("\n") if ln != ""]
        header = tuple(lines[0].split(","))
        rows = [tuple(ln.split(",")) for ln in lines[1:]]
        return cls(header=header, rows=rows)


def _parse_float_list(text: str, flag: str) -> Tuple[float, ...]:
    try:
        values = tuple(float(tok) for tok in text.split(",") if tok != "")
    except ValueError as exc:
        raise ValueError(f"{flag}: not a comma-separated number list: {text!r}") from exc
    if not values:
        raise ValueError(f"{flag}: empty list")
    return values


def _parse_db_grid(text: str, flag: str) -> Tuple[float, ...]:
    """Either 'a:b:step' (inclusive) or a comma list of dB values."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"{flag}: ranges take the form a:b:step, got {text!r}")
        a, b, step = (float(p) for p in parts)
        if step <= 0 or b < a:
            raise ValueError(f"{flag}: need b >= a and step > 0 in {text!r}")
        n = int(round((b - a) / step))
        grid = tuple(a + k * step for k in range(n + 1))
        if grid[-1] > b + 1e-9:
            grid = grid[:-1]
        return grid
    return _parse_float_list(text, flag)


def cmd_bounds(kmin: int, kmax: int, epsilon: float) -> OutputTable:
    """DoF-per-user table over K = kmin..kmax.

    Digitized reference columns carry values only for K in 2..10; other
    rows leave those cells empty (the column layout never changes).
    """
    if kmin < 1 or kmax < kmin:
        raise ValueError("need 1 <= kmin <= kmax")
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError("epsilon must lie in [0, 1]")
    header = ("K", "thm1_inner", "thm1_outer", "tdma", "ghasemi_inner", "ghasemi_outer", "abdoli_inner")
    ref = bnd.REFERENCE_CURVES
    rows = []
    for K in range(kmin, kmax + 1):
        def ref_cell(name: str) -> str:
            return format_float(ref.dof(name, K)) if ref.has(name, K) else ""

        rows.append(
            (
                str(K),
                format_float(bnd.inner_bound(K, epsilon)),
                format_float(bnd.outer_bound(K)),
                format_float(bnd.tdma_dof(K)),
                ref_cell("ghasemi_inner"),
                ref_cell("ghasemi_outer"),
                ref_cell("abdoli_siso_inner"),
            )
        )
    return OutputTable(header=header, rows=rows)


def _sweep_tables(config: SimConfig) -> List[OutputTable]:
    records, slopes = run_sweep(config)
    main_table = OutputTable(
        header=("scheme", "K", "epsilon", "snr_db", "trials", "mean_rate", "outage10", "std_err"),
        rows=[
            (
                r.scheme,
                str(r.K),
                format_float(r.epsilon),
                format_float(r.snr_db),
                str(r.trials),
                format_float(r.mean_rate_per_user),
                format_float(r.outage10_rate),
                format_float(r.std_error),
            )
            for r in records
        ],
    )
    tables = [main_table]
    if slopes is not None:
        tables.append(
            OutputTable(
                header=("scheme", "K", "epsilon", "snr_lo_db", "snr_hi_db", "dof"),
                rows=[
                    (
                        s.scheme,
                        str(s.K),
                        format_float(s.epsilon),
                        format_float(s.snr_lo_db),
                        format_float(s.snr_hi_db),
                        format_float(s.dof),
                    )
                    for s in slopes
                ],
            )
        )
    return tables


def cmd_simulate(config: SimConfig) -> List[OutputTable]:
    """Rate sweep; with compute_dof a slope table is appended."""
    return _sweep_tables(config)


def cmd_outage(config: SimConfig) -> List[OutputTable]:
    """Outage sweep over the epsilon grid at fixed SNRs."""
    records, _ = run_sweep(config)
    return [
        OutputTable(
            header=("scheme", "K", "epsilon", "snr_db", "outage10"),
            rows=[
                (
                    r.scheme,
                    str(r.K),
                    format_float(r.epsilon),
                    format_float(r.snr_db),
                    format_float(r.outage10_rate),
                )
                for r in records
            ],
        )
    ]


def render(tables: Sequence[OutputTable]) -> str:
    return "\n".join(t.to_csv() for t in tables)


def _emit(doc: str, output: Optional[str]) -> None:
    if output is None or output == "-":
        sys.stdout.write(doc)
    else:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(doc)


def _add_sim_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("-k", "--users", type=int, default=3, help="number of user pairs K (default 3)")
    p.add_argument("-m", "--antennas", type=int, default=None, help="transmit antennas M (default K)")
    p.add_argument("--snr-db", default="5:40:5", help="dB grid, a:b:step or comma list (default 5:40:5)")
    p.add_argument("--epsilon", default="1", help="comma list of feedback qualities in [0,1] (default 1)")
    p.add_argument("--trials", type=int, default=2000, help="realizations per grid cell (default 2000)")
    p.add_argument("--seed", type=int, default=1, help="master seed (default 1)")
    p.add_argument("--schemes", default="ria,tdma", help="subset of ria,tdma (default both)")
    p.add_argument("--percentile", type=float, default=10.0, help="outage percentile (default 10)")
    p.add_argument(
        "--tdma-power",
        choices=("total", "per-antenna"),
        default="total",
        help="baseline normalization: total power P split over antennas, or P per antenna",
    )
    p.add_argument("-o", "--output", default=None, help="output file ('-' or omitted for stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ria-sim",
        description="Retrospective interference alignment simulator for the K-user MISO interference channel",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_bounds = sub.add_parser("bounds", help="closed-form DoF bounds and reference curves")
    p_bounds.add_argument("--kmin", type=int, default=2)
    p_bounds.add_argument("--kmax", type=int, default=10)
    p_bounds.add_argument("--epsilon", type=float, default=1.0, help="feedback quality for the inner bound")
    p_bounds.add_argument("-o", "--output", default=None)

    p_sim = sub.add_parser("simulate", help="mean rate per user over an SNR grid")
    _add_sim_flags(p_sim)
    p_sim.add_argument("--dof", action="store_true", help="append an empirical DoF slope table")
    p_sim.add_argument(
        "--dof-anchors",
        default="40,60",
        help="lo,hi anchor SNRs in dB for the slope estimate (default 40,60)",
    )

    p_out = sub.add_parser("outage", help="outage rate over a feedback-quality grid")
    _add_sim_flags(p_out)
    return parser


def _config_from_args(args: argparse.Namespace) -> SimConfig:
    requested = tuple(s for s in str(args.schemes).split(",") if s != "")
    unknown = [s for s in requested if s not in SCHEME_ORDER]
    if unknown or not requested:
        raise ValueError(f"--schemes: need a non-empty subset of {','.join(SCHEME_ORDER)}")
    cfg = SimConfig(
        K=args.users,
        M=args.antennas,
        snr_db=_parse_db_grid(args.snr_db, "--snr-db"),
        epsilon=_parse_float_list(args.epsilon, "--epsilon"),
        trials=args.trials,
        seed=args.seed,
        schemes=tuple(s for s in SCHEME_ORDER if s in requested),
        percentile=args.percentile,
        tdma_power=args.tdma_power,
    )
    if getattr(args, "dof", False):
        anchors = _parse_float_list(args.dof_anchors, "--dof-anchors")
        if len(anchors) != 2:
            raise ValueError("--dof-anchors takes exactly two dB values")
        cfg.compute_dof = True
        cfg.dof_anchors = (anchors[0], anchors[1])
    cfg.validate()
    return cfg


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "bounds":
            tables = [cmd_bounds(args.kmin, args.kmax, args.epsilon)]
        elif args.command == "simulate":
            tables = cmd_simulate(_config_from_args(args))
        else:
            tables = cmd_outage(_config_from_args(args))
    except ValueError as exc:
        parser.error(str(exc))
    try:
        _emit(render(tables), args.output)
    except OSError as exc:
        print(f"ria-sim: cannot write output: {exc}", file=sys.stderr)
        return 1
    return 0
