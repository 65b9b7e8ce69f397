"""Command-line sweeps over the library: tables behind the phase diagram and spin results.

Each subcommand expands its flags into a grid of independent points, maps
them over a thread pool, sorts the rows on their echoed inputs and writes CSV
or JSON-lines. Floats are rounded to 12 significant digits and printed in
their shortest round-trip form, so identical flags give identical data
columns; ``version`` and ``elapsed_ms`` are metadata.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import __version__, chain, gaussian, macrobound, spin
from .errors import ThermoboundError

THREADS_ENV = "THERMOBOUND_THREADS"
META_COLUMNS = ("version", "elapsed_ms")


class UsageError(ValueError):
    pass


class GridPointError(RuntimeError):
    def __init__(self, point: dict, cause: Exception):
        desc = ", ".join(f"{k}={v}" for k, v in point.items())
        super().__init__(f"numeric failure at {desc}: {type(cause).__name__}: {cause}")
        self.point = point


@dataclass
class SweepSpec:
    ns: list[int] = field(default_factory=list)
    cs: list[float] = field(default_factory=list)
    Ts: list[float] = field(default_factory=list)
    partitions: list[str] = field(default_factory=lambda: ["even-odd"])
    m: int = 10
    s: int = 3
    tol: float = 1e-6
    B: float = 1.9
    boundary: str = "open"
    fmt: str = "csv"
    out: str | None = None
    threads: int = 1

    def validate(self) -> None:
        if any(n < 1 for n in self.ns):
            raise UsageError("--n values must be positive")
        if any(T < 0 for T in self.Ts):
            raise UsageError("--T values must be >= 0")
        if any(not 0 <= c < 0.5 for c in self.cs):
            raise UsageError("--c values must lie in [0, 0.5)")
        if not self.tol > 0:
            raise UsageError("--tol must be positive")
        if self.m < 1 or not 2 <= self.s <= 6:
            raise UsageError("--m must be >= 1 and --s in [2, 6]")
        if self.threads < 1:
            raise UsageError("--threads must be >= 1")
        if self.fmt not in ("csv", "jsonl"):
            raise UsageError("--format must be csv or jsonl")
        for p in self.partitions:
            parse_partition(p, None)


# --- parsing -----------------------------------------------------------------

def parse_list(text: str, cast: Callable) -> list:
    try:
        return [cast(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot parse list {text!r}: {exc}") from None


def parse_range(text: str) -> list[float]:
    """``start:stop:step`` with ``stop`` included (up to rounding)."""
    try:
        start, stop, step = (float(x) for x in text.split(":"))
    except ValueError:
        raise UsageError(f"range must be start:stop:step, got {text!r}") from None
    if not step > 0 or stop < start:
        raise UsageError(f"empty or invalid range {text!r}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 12) for i in range(count)]


def parse_partition(label: str, n: int | None):
    if label in ("even-odd", "half-half"):
        return label
    if label.startswith("custom:"):
        part = gaussian.Partition.from_string(label[len("custom:"):])
        if n is not None and part.n != n:
            raise UsageError(f"partition {label} has {part.n} sites but n={n}")
        return part
    raise UsageError(f"unknown partition {label!r}")


def oscillator_partition(label: str, n: int) -> gaussian.Partition:
    p = parse_partition(label, n)
    if p == "even-odd":
        return gaussian.even_odd_partition(n)
    if p == "half-half":
        return gaussian.half_half_partition(n)
    return p


def _fits(label: str, n: int) -> bool:
    return not label.startswith("custom:") or len(label) - len("custom:") == n


def custom_sizes(spec: SweepSpec) -> list[int]:
    if spec.ns:
        return spec.ns
    sizes = {len(p) - len("custom:") for p in spec.partitions if p.startswith("custom:")}
    if not sizes:
        raise UsageError("--n is required")
    return sorted(sizes)


# --- execution ---------------------------------------------------------------

def run_grid(points: Sequence[dict], task: Callable[[dict], dict], threads: int) -> list[dict]:
    def timed(point):
        t0 = time.perf_counter()
        try:
            row = task(point)
        except (ThermoboundError, ArithmeticError, ValueError) as exc:
            raise GridPointError(point, exc) from exc
        row = {**point, **row}
        row["version"] = __version__
        row["elapsed_ms"] = round((time.perf_counter() - t0) * 1e3, 3)
        return row

    if threads > 1 and len(points) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(timed, points))
    else:
        rows = [timed(p) for p in points]
    keys = list(points[0]) if points else []
    rows.sort(key=lambda r: tuple(_sort_key(r[k]) for k in keys))
    return rows


def _sort_key(v):
    return (0, v, "") if isinstance(v, (int, float)) else (1, 0, str(v))


def cmd_logneg(spec: SweepSpec) -> list[dict]:
    points = [
        {"n": n, "c": c, "T": T, "partition": p}
        for n, c, T, p in itertools.product(custom_sizes(spec), spec.cs, spec.Ts, spec.partitions)
        if _fits(p, n)
    ]

    def task(pt):
        model = gaussian.HarmonicModel.chain(pt["n"], pt["c"])
        q = gaussian.q_spectrum(model, pt["T"], oscillator_partition(pt["partition"], pt["n"]))
        en = float(np.sum(np.log2(np.maximum(1.0, q))))
        return {"log_negativity": en, "ppt": bool(q[-1] <= 1.0 + gaussian.PPT_TOL)}

    return run_grid(points, task, spec.threads)


def cmd_threshold(spec: SweepSpec) -> list[dict]:
    points = [
        {"n": n, "c": c, "partition": p, "tol": spec.tol}
        for n, c, p in itertools.product(custom_sizes(spec), spec.cs, spec.partitions)
        if _fits(p, n)
    ]

    def task(pt):
        model = gaussian.HarmonicModel.chain(pt["n"], pt["c"])
        part = oscillator_partition(pt["partition"], pt["n"])
        t = gaussian.threshold_temperature(model, part, tol=pt["tol"])
        eo = chain.t_eo_threshold(pt["c"]) if pt["partition"] == "even-odd" else None
        return {"threshold": t, "t_eo_analytic": eo}

    return run_grid(points, task, spec.threads)


def cmd_phase_diagram(spec: SweepSpec) -> list[dict]:
    ns = spec.ns or [512]
    if any(not 0 < c < 0.5 for c in spec.cs):
        raise UsageError("phase-diagram needs every c in (0, 0.5)")
    points = [{"c": c, "n": n, "m": spec.m, "s": spec.s, "tol": spec.tol}
              for c, n in itertools.product(spec.cs, ns)]
    params = macrobound.NormBoundParams(spec.m, spec.s)

    def task(pt):
        c, n = pt["c"], pt["n"]
        model = gaussian.HarmonicModel.chain(n, c)
        t_eo = chain.t_eo_threshold(c)
        t_eo_num = gaussian.threshold_temperature(model, gaussian.even_odd_partition(n), tol=pt["tol"])
        t_hh = gaussian.threshold_temperature(model, gaussian.half_half_partition(n), tol=pt["tol"])
        t_mb = macrobound.hh_macro_bound_curve(c, params, tol=pt["tol"])
        return {
            "t_eo": t_eo, "t_eo_numeric": t_eo_num, "t_hh": t_hh, "t_macro_bound": t_mb,
            "window": t_eo - t_hh, "ordered": bool(t_hh <= t_mb <= t_eo),
        }

    return run_grid(points, task, spec.threads)


def cmd_macro_bound(spec: SweepSpec) -> list[dict]:
    params = macrobound.NormBoundParams(spec.m, spec.s)
    if spec.Ts:
        points = [{"c": c, "T": T, "m": spec.m, "s": spec.s}
                  for c, T in itertools.product(spec.cs, spec.Ts)]

        def task(pt):
            kp = macrobound.k_bound(params, "+", pt["c"], pt["T"])
            km = macrobound.k_bound(params, "-", pt["c"], pt["T"])
            lhs = macrobound.certificate_lhs(pt["c"], pt["T"], params)
            return {"k_plus": kp, "k_minus": km, "lhs": lhs, "certified": lhs < 1.0}
    else:
        if any(not 0 < c < 0.5 for c in spec.cs):
            raise UsageError("the bound curve needs every c in (0, 0.5)")
        points = [{"c": c, "m": spec.m, "s": spec.s, "tol": spec.tol} for c in spec.cs]

        def task(pt):
            return {"t_macro_bound": macrobound.hh_macro_bound_curve(pt["c"], params, tol=pt["tol"])}

    return run_grid(points, task, spec.threads)


def cmd_spin(spec: SweepSpec) -> list[dict]:
    points = [
        {"n": n, "B": spec.B, "T": T, "boundary": spec.boundary, "partition": p}
        for n, T, p in itertools.product(spec.ns, spec.Ts, spec.partitions)
        if _fits(p, n)
    ]
    cache: dict = {}

    def task(pt):
        key = (pt["n"], pt["T"])
        if key not in cache:
            model = spin.SpinChainModel(pt["n"], pt["B"], pt["boundary"] == "periodic")
            cache[key] = spin.thermal_state_blocked(model, pt["T"])
        part = parse_partition(pt["partition"], pt["n"])
        value = spin.negativity(cache[key], spin.partition_subset(pt["n"], part))
        return {"negativity": value, "ppt": value <= spin.PPT_TOL}

    return run_grid(points, task, spec.threads)


COMMANDS = {
    "logneg": cmd_logneg,
    "threshold": cmd_threshold,
    "phase-diagram": cmd_phase_diagram,
    "macro-bound": cmd_macro_bound,
    "spin": cmd_spin,
}


# --- output ------------------------------------------------------------------

def format_value(v):
    if isinstance(v, np.generic):
        v = v.item()
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    if isinstance(v, float):
        if not math.isfinite(v):
            return repr(v)
        return repr(float(f"{v:.12g}"))
    return str(v)


def _json_value(v):
    if isinstance(v, np.generic):
        v = v.item()
    if isinstance(v, float):
        return float(f"{v:.12g}") if math.isfinite(v) else None
    return v


def write_rows(rows: list[dict], fmt: str, stream) -> None:
    if fmt == "jsonl":
        for row in rows:
            stream.write(json.dumps({k: _json_value(v) for k, v in row.items()}) + "\n")
        return
    if not rows:
        return
    writer = csv.writer(stream, lineterminator="\n")
    header = list(rows[0])
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(row[k]) for k in header])


# --- argparse ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thermobound",
        description="Negativity, PPT thresholds and bound-entanglement certificates "
                    "for harmonic and XX spin chains.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--n", help="comma-separated sizes")
        p.add_argument("--c", help="comma-separated couplings")
        p.add_argument("--c-range", help="start:stop:step (inclusive)")
        p.add_argument("--T", help="comma-separated temperatures")
        p.add_argument("--T-range", help="start:stop:step (inclusive)")
        p.add_argument("--partition", default="even-odd",
                       help="comma-separated: even-odd, half-half, custom:<+- string>")
        p.add_argument("--m", type=int, default=10)
        p.add_argument("--s", type=int, default=3)
        p.add_argument("--tol", type=float, default=1e-6)
        p.add_argument("--B", type=float, default=1.9, help="field for the spin chain")
        p.add_argument("--boundary", choices=("open", "periodic"), default="open")
        p.add_argument("--format", choices=("csv", "jsonl"), default="csv")
        p.add_argument("--out", help="output file (default stdout)")
        p.add_argument("--threads", type=int, default=None,
                       help=f"worker threads (default ${THREADS_ENV} or 1)")
    return parser


def spec_from_args(args: argparse.Namespace) -> SweepSpec:
    threads = args.threads
    if threads is None:
        env = os.environ.get(THREADS_ENV, "1")
        try:
            threads = int(env)
        except ValueError:
            raise UsageError(f"{THREADS_ENV}={env!r} is not an integer") from None
    cs = parse_list(args.c, float) if args.c else []
    if args.c_range:
        cs += parse_range(args.c_range)
    Ts = parse_list(args.T, float) if args.T else []
    if args.T_range:
        Ts += parse_range(args.T_range)
    spec = SweepSpec(
        ns=parse_list(args.n, int) if args.n else [],
        cs=sorted(set(cs)),
        Ts=sorted(set(Ts)),
        partitions=parse_list(args.partition, str),
        m=args.m, s=args.s, tol=args.tol, B=args.B, boundary=args.boundary,
        fmt=args.format, out=args.out, threads=threads,
    )
    spec.validate()
    needs = {
        "logneg": ("cs", "Ts"), "threshold": ("cs",), "phase-diagram": ("cs",),
        "macro-bound": ("cs",), "spin": ("ns", "Ts"),
    }[args.command]
    for attr in needs:
        if not getattr(spec, attr):
            flag = {"cs": "--c/--c-range", "Ts": "--T/--T-range", "ns": "--n"}[attr]
            raise UsageError(f"{args.command} requires {flag}")
    if spec.ns:
        for p in spec.partitions:
            if not any(_fits(p, n) for n in spec.ns):
                raise UsageError(f"partition {p} matches none of --n {spec.ns}")
    if args.command == "spin" and any(not 2 <= n <= spin.MAX_SITES for n in spec.ns):
        raise UsageError(f"spin chain sizes must lie in [2, {spin.MAX_SITES}]")
    return spec


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        spec = spec_from_args(args)
        rows = COMMANDS[args.command](spec)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except GridPointError as exc:
        print(f"{parser.prog}: {exc}", file=sys.stderr)
        return 1
    except ThermoboundError as exc:
        print(f"{parser.prog}: {exc}", file=sys.stderr)
        return 1
    if spec.out:
        with open(spec.out, "w", newline="") as fh:
            write_rows(rows, spec.fmt, fh)
    else:
        write_rows(rows, spec.fmt, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
