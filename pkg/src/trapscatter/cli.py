"""Command-line front end: parameter sweeps and figure-reproduction datasets.

Subcommands
-----------
spectrum    rates vs detuning for one case
scaling     rates vs trap ratio at fixed detuning (free + anti)
heating     normalized heating vs trap ratio (mode a) or vs time (mode b)
population  Fock populations vs n, or momentum density vs k
figure N    preset dataset reproducing one of the reference figures

Datasets are CSV with '#'-prefixed header lines carrying the fully resolved
parameter set (re-running a header's parameters reproduces the file
bit-identically) or JSON records with the same fields.  Exit codes:
0 success, 2 bad arguments, 3 numerical nonconvergence.
"""

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__, anti_trapped, equal_trap, free_excited, propagator
from .errors import TrapScatterError
from .numerics import BACKEND, fit_loglog_slope
from .params import ANTI, CASES, EQUAL, FREE, Params

_FMT = "%.12e"


@dataclass(frozen=True)
class Range:
    start: float
    stop: float
    count: int
    scale: str = "linear"  # or "log"

    def values(self) -> np.ndarray:
        if self.count == 1:
            return np.array([self.start])
        if self.scale == "log":
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)

    def __str__(self):
        base = f"{self.start:g}:{self.stop:g}:{self.count}"
        return base + (":log" if self.scale == "log" else "")


def parse_range(text: str) -> Range:
    """'start:stop:count[:log]' or a bare number (count 1)."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            v = float(parts[0])
            return Range(v, v, 1)
        if len(parts) in (3, 4):
            scale = "linear"
            if len(parts) == 4:
                if parts[3] != "log":
                    raise ValueError
                scale = "log"
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
            if count < 1:
                raise ValueError
            if count > 1 and not start < stop:
                raise ValueError
            if scale == "log" and (start <= 0 or stop <= 0):
                raise ValueError
            return Range(start, stop, count, scale)
        raise ValueError
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"bad range {text!r}; expected start:stop:count[:log] or a number"
        ) from None


def _header_lines(header: dict) -> list[str]:
    lines = ["# trapscatter dataset", f"# version: {__version__}",
             f"# backend: {BACKEND}"]
    lines += [f"# {k}: {v}" for k, v in header.items()]
    return lines


def write_dataset(stream, header: dict, columns: list[str], rows,
                  footer: dict | None = None, fmt: str = "csv"):
    if fmt == "json":
        doc = {
            "dataset": "trapscatter",
            "version": __version__,
            "backend": BACKEND,
            "header": {k: str(v) for k, v in header.items()},
            "columns": columns,
            "rows": [[float(v) if isinstance(v, (int, float, np.floating)) else v
                      for v in row] for row in rows],
        }
        if footer:
            doc["footer"] = {k: str(v) for k, v in footer.items()}
        json.dump(doc, stream, indent=1)
        stream.write("\n")
        return
    for line in _header_lines(header):
        stream.write(line + "\n")
    stream.write("# columns: " + ",".join(columns) + "\n")
    for row in rows:
        cells = []
        for v in row:
            if isinstance(v, str):
                cells.append(v)
            elif isinstance(v, (int, np.integer)):
                cells.append(str(int(v)))
            else:
                cells.append(_FMT % v)
        stream.write(",".join(cells) + "\n")
    for k, v in (footer or {}).items():
        stream.write(f"# {k}: {v}\n")


def _open_output(path):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w"), True


def _params(case, trap_ratio, detuning, drive, eta, inv_ratio):
    return Params(trap_ratio=trap_ratio, detuning=detuning, drive=drive,
                  eta=eta, case=case,
                  inv_ratio=inv_ratio if case == ANTI else None)


# ----------------------------------------------------------------- workers

def _spectrum_point(args):
    case, w, d, drive, eta, inv, t, fock_max, tol = args
    p = _params(case, w, d, drive, eta, inv)
    if case == EQUAL:
        total = equal_trap.total_rate(p, fock_max)
        elastic = equal_trap.elastic_rate(p, fock_max)
    elif case == FREE:
        total = free_excited.total_rate(p, tol=tol)
        elastic = free_excited.elastic_rate(p, tol=tol)
    else:
        if math.isclose(inv, w, rel_tol=1e-12):
            rr = anti_trapped.steady_rates(p, t=t)
            total, elastic = rr.total, rr.elastic
        else:
            st = propagator.steady_state_k(p, t_final=t)
            total = st.norm_sq() / drive**2
            elastic = vacuum_population(st) / drive**2
    return d, total, elastic


def vacuum_population(state) -> float:
    """|<motional vacuum | state>|^2 from a momentum-space amplitude."""
    phi0 = np.pi**-0.25 * np.exp(-0.5 * state.grid**2)
    a0 = np.sum(state.weights * phi0 * state.amps)
    return float(abs(a0) ** 2)


def _scaling_point(args):
    w, drive, t, tol = args
    pf = _params(FREE, w, 0.0, drive, 0.0, None)
    pa = _params(ANTI, w, 0.0, drive, 0.0, w)
    rr = anti_trapped.steady_rates(pa, t=t)
    return (w, free_excited.total_rate(pf, tol=tol),
            free_excited.elastic_rate(pf, tol=tol), rr.total, rr.elastic)


def _heating_a_point(args):
    w, drive = args
    pf = _params(FREE, w, 0.0, drive, 0.0, None)
    hf = free_excited.heating_rate(pf)
    ha = float("nan")
    if w < 0.475:
        pa = _params(ANTI, w, 0.0, drive, 0.0, w)
        t_plateau = max(13.0, 3.0 / max(w, 1e-3))
        series = anti_trapped.heating_series(pa, np.array([t_plateau]))
        ha = float(series.rate[-1])
    return w, hf, ha


def _map(worker, items, workers):
    if workers <= 1 or len(items) <= 1:
        return [worker(it) for it in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(worker, items))  # ordered, regardless of completion


# ---------------------------------------------------------------- commands

def cmd_spectrum(args) -> int:
    ds = args.detuning.values()
    items = [(args.case, args.trap_ratio, float(d), args.drive, args.eta,
              args.inv_ratio if args.case == ANTI else None, args.time,
              args.fock_max, args.tol) for d in ds]
    rows = _map(_spectrum_point, items, args.workers)
    header = {
        "command": "spectrum", "case": args.case, "trap_ratio": args.trap_ratio,
        "inv_ratio": args.inv_ratio if args.case == ANTI else "",
        "eta": args.eta, "drive": args.drive, "steady_time": args.time,
        "detuning": args.detuning, "tol": args.tol,
    }
    stream, close = _open_output(args.output)
    try:
        write_dataset(stream, header, ["detuning", "total", "elastic"], rows,
                      fmt=args.format)
    finally:
        if close:
            stream.close()
    return 0


def cmd_scaling(args) -> int:
    ws = args.trap_ratio.values()
    items = [(float(w), args.drive, args.time, args.tol) for w in ws]
    rows = _map(_scaling_point, items, args.workers)
    rows.sort(key=lambda r: r[0])
    footer = {}
    big = [r for r in rows if r[0] >= args.fit_from]
    if len(big) >= 4:
        xs = [r[0] for r in big]
        names = ["total_free", "elastic_free", "total_anti", "elastic_anti"]
        for i, name in enumerate(names, start=1):
            slope, err = fit_loglog_slope(xs, [r[i] for r in big])
            footer[f"fit_slope_{name}"] = f"{slope:.6f} +- {err:.6f}"
        footer["fit_window"] = f"trap_ratio >= {args.fit_from:g}"
    header = {
        "command": "scaling", "detuning": 0.0, "drive": args.drive,
        "eta": 0.0, "steady_time": args.time, "trap_ratio": args.trap_ratio,
        "tol": args.tol,
    }
    stream, close = _open_output(args.output)
    try:
        write_dataset(stream, header,
                      ["trap_ratio", "total_free", "elastic_free",
                       "total_anti", "elastic_anti"],
                      rows, footer=footer, fmt=args.format)
    finally:
        if close:
            stream.close()
    return 0


def cmd_heating(args) -> int:
    stream, close = _open_output(args.output)
    try:
        if args.mode == "a":
            ws = args.trap_ratio.values()
            rows = _map(_heating_a_point, [(float(w), args.drive) for w in ws],
                        args.workers)
            header = {"command": "heating", "mode": "a", "detuning": 0.0,
                      "drive": args.drive, "eta": 0.0,
                      "trap_ratio": args.trap_ratio}
            write_dataset(stream, header,
                          ["trap_ratio", "heating_free", "heating_anti"],
                          rows, fmt=args.format)
            return 0
        # mode b: time series at fixed trap ratio
        w = args.trap_ratio.values()
        if w.size != 1:
            print("heating mode b needs a single --trap-ratio", file=sys.stderr)
            return 2
        w = float(w[0])
        if w < 0.5:
            print(f"warning: trap_ratio={w} < 0.5 has a plateau, no exponential "
                  "growth; emitting the plateau series", file=sys.stderr)
        ts = args.time_range.values()
        p = _params(ANTI, w, 0.0, args.drive, 0.0, w)
        series = anti_trapped.heating_series(p, ts)
        rows = [(w, t, r) for t, r in zip(series.times, series.rate)]
        footer = {}
        if series.fitted_exponent is not None:
            footer["fitted_exponent"] = f"{series.fitted_exponent:.6f}"
            footer["fit_window"] = f"time >= {max(5.0, 2.0 / w):g}"
        if not series.converged:
            footer["converged"] = "false"
        header = {"command": "heating", "mode": "b", "detuning": 0.0,
                  "drive": args.drive, "eta": 0.0, "trap_ratio": w,
                  "time": args.time_range}
        write_dataset(stream, header, ["trap_ratio", "time", "rate"], rows,
                      footer=footer, fmt=args.format)
        return 0
    finally:
        if close:
            stream.close()


def cmd_population(args) -> int:
    p = _params(args.case, args.trap_ratio, args.detuning.values()[0],
                args.drive, args.eta,
                args.inv_ratio if args.case == ANTI else None)
    stream, close = _open_output(args.output)
    try:
        if args.representation == "fock":
            if args.case != ANTI:
                print("fock populations are reported for the anti-trapped case",
                      file=sys.stderr)
                return 2
            n_top = args.fock_max or 2000
            t = max(args.time, (math.log(2.0 * n_top) + 12.0) / (2.0 * p.trap_ratio))
            state = anti_trapped.amplitudes_t(p, t, n_max=2 * n_top, tol=1.0)
            pops = state.populations()[::2] / p.drive**2
            rows = []
            for n in range(n_top + 1):
                tail = (anti_trapped.tail_population(p, n) / p.drive**2
                        if n >= 20 else float("nan"))
                rows.append((n, float(pops[n]), tail))
            header = {"command": "population", "representation": "fock",
                      "case": args.case, "trap_ratio": p.trap_ratio,
                      "inv_ratio": p.inv_ratio, "detuning": p.detuning,
                      "drive": p.drive, "eta": p.eta, "steady_time": t}
            write_dataset(stream, header, ["n", "population", "analytic_tail"],
                          rows, fmt=args.format)
            return 0
        # momentum representation
        if args.case == EQUAL:
            grid = np.linspace(-args.k_max, args.k_max, args.k_points)
            pops = equal_trap.excited_populations(p)
            phi0 = np.pi**-0.25 * np.exp(-0.5 * grid**2)
            dens = float(pops.sum()) / p.drive**2 * phi0**2
        else:
            st = propagator.steady_state_k(p, t_final=args.time,
                                           k_max=args.k_max,
                                           n_points=args.k_points)
            grid = st.grid
            dens = np.abs(st.amps) ** 2 / p.drive**2
        rows = list(zip(grid, dens))
        header = {"command": "population", "representation": "momentum",
                  "case": args.case, "trap_ratio": p.trap_ratio,
                  "inv_ratio": p.inv_ratio if p.case == ANTI else "",
                  "detuning": p.detuning, "drive": p.drive, "eta": p.eta,
                  "steady_time": args.time}
        write_dataset(stream, header, ["k", "density"], rows, fmt=args.format)
        return 0
    finally:
        if close:
            stream.close()


# ----------------------------------------------------------------- figures

def _figure_rows_2(drive, tol, workers):
    rows = []
    for w in (0.1, 1.0, 2.0, 5.0):
        ds = np.linspace(-4.0, 4.0, 81)
        items = [(FREE, w, float(d), drive, 0.0, None, 13.0, None, tol) for d in ds]
        for d, tot, ela in _map(_spectrum_point, items, workers):
            rows.append((w, d, tot, ela))
    return ["trap_ratio", "detuning", "total", "elastic"], rows, {}


def _figure_rows_4(drive, tol, workers):
    ws = np.geomspace(10.0, 300.0, 25)
    rows = _map(_scaling_point, [(float(w), drive, 13.0, tol) for w in ws], workers)
    footer = {}
    big = [r for r in rows if r[0] >= 30.0]
    names = ["total_free", "elastic_free", "total_anti", "elastic_anti"]
    for i, name in enumerate(names, start=1):
        slope, err = fit_loglog_slope([r[0] for r in big], [r[i] for r in big])
        footer[f"fit_slope_{name}"] = f"{slope:.6f} +- {err:.6f}"
    footer["fit_window"] = "trap_ratio >= 30"
    return (["trap_ratio", "total_free", "elastic_free", "total_anti",
             "elastic_anti"], rows, footer)


def _figure_rows_5(drive, tol, workers):
    rows = []
    n_top = 2000
    for w in (0.3, 0.5, 1.0):
        p = _params(ANTI, w, 0.0, drive, 0.0, w)
        t = max(13.0, (math.log(2.0 * n_top) + 12.0) / (2.0 * w))
        state = anti_trapped.amplitudes_t(p, t, n_max=2 * n_top, tol=1.0)
        pops = state.populations()[::2] / drive**2
        for n in range(1, n_top + 1):
            tail = (anti_trapped.tail_population(p, n) / drive**2
                    if n >= 20 else float("nan"))
            rows.append((w, n, float(pops[n]), tail))
    return ["trap_ratio", "n", "population", "analytic_tail"], rows, {}


def _figure_rows_6(drive, tol, workers):
    ws_free = np.geomspace(0.01, 20.0, 28)
    ws_anti = np.geomspace(0.01, 0.45, 20)
    ws = np.unique(np.concatenate([ws_free, ws_anti]))
    rows = _map(_heating_a_point, [(float(w), drive) for w in ws], workers)
    return ["trap_ratio", "heating_free", "heating_anti"], rows, {}


def _figure_rows_7(drive, tol, workers):
    rows = []
    footer = {}
    ts = np.linspace(1.0, 12.0, 45)
    for w in (0.6, 0.8):
        p = _params(ANTI, w, 0.0, drive, 0.0, w)
        series = anti_trapped.heating_series(p, ts)
        rows += [(w, t, r) for t, r in zip(series.times, series.rate)]
        footer[f"fitted_exponent_w{w:g}"] = f"{series.fitted_exponent:.6f}"
    footer["fit_window"] = "time >= 5"
    return ["trap_ratio", "time", "rate"], rows, footer


def _figure_rows_8(drive, tol, workers):
    rows = []
    w = 2.0
    grid = np.linspace(-8.0, 8.0, 481)
    for d in (0.0, 1.0):
        pops = equal_trap.excited_populations(
            _params(EQUAL, w, d, drive, 0.0, None))
        phi0 = np.pi**-0.25 * np.exp(-0.5 * grid**2)
        dens = float(pops.sum()) / drive**2 * phi0**2
        rows += [("equal", 0.0, d, k, v) for k, v in zip(grid, dens)]
        st = propagator.steady_state_k(_params(FREE, w, d, drive, 0.0, None),
                                       k_max=8.0, n_points=481)
        rows += [("free", 0.0, d, k, v) for k, v in
                 zip(st.grid, np.abs(st.amps) ** 2 / drive**2)]
        st = propagator.steady_state_k(_params(ANTI, w, d, drive, 0.0, 1.0),
                                       k_max=8.0, n_points=481)
        rows += [("anti", 1.0, d, k, v) for k, v in
                 zip(st.grid, np.abs(st.amps) ** 2 / drive**2)]
    return ["case", "inv_ratio", "detuning", "k", "density"], rows, {}


def _figure_rows_9(drive, tol, workers):
    rows = []
    w = 2.0
    ds = np.linspace(-4.0, 4.0, 33)
    for inv in (0.01, 1.0, 2.0, 3.0, 4.0):
        p = _params(ANTI, w, 0.0, drive, 0.0, inv)
        spec = propagator.spectrum(p, ds, k_max=20.0, n_points=1201)
        rows += [(inv, d, v) for d, v in zip(ds, spec)]
    return ["inv_ratio", "detuning", "total"], rows, {}


_FIGURES = {2: _figure_rows_2, 4: _figure_rows_4, 5: _figure_rows_5,
            6: _figure_rows_6, 7: _figure_rows_7, 8: _figure_rows_8,
            9: _figure_rows_9}


def cmd_figure(args) -> int:
    import os

    builder = _FIGURES[args.figure_id]
    columns, rows, footer = builder(args.drive, args.tol, args.workers)
    os.makedirs(args.output, exist_ok=True)
    path = os.path.join(args.output, f"figure{args.figure_id}.csv")
    header = {"command": "figure", "figure_id": args.figure_id,
              "drive": args.drive, "tol": args.tol}
    with open(path, "w") as fh:
        write_dataset(fh, header, columns, rows, footer=footer, fmt="csv")
    print(path)
    return 0


# -------------------------------------------------------------------- main

def _add_common(sub, case=True, detuning=True):
    sub.add_argument("--trap-ratio", type=parse_range, default=Range(1.0, 1.0, 1),
                     help="trap frequency / linewidth (range allowed)")
    if case:
        sub.add_argument("--case", choices=CASES, default=FREE)
        sub.add_argument("--inv-ratio", type=float, default=None,
                         help="inverted frequency / linewidth (anti case)")
    if detuning:
        sub.add_argument("--detuning", type=parse_range, default=Range(0.0, 0.0, 1))
    sub.add_argument("--eta", type=float, default=0.0)
    sub.add_argument("--drive", type=float, default=0.01)
    sub.add_argument("--time", type=float, default=13.0,
                     help="steady-state evaluation time (1/linewidth)")
    sub.add_argument("--fock-max", type=int, default=None)
    sub.add_argument("--tol", type=float, default=1e-8)
    sub.add_argument("--output", default=None, help="output path (default stdout)")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--workers", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="trapscatter", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sp = ap.add_subparsers(dest="command", required=True)

    s = sp.add_parser("spectrum", help="rates vs detuning")
    _add_common(s)
    s.set_defaults(fn=cmd_spectrum, trap_ratio=Range(1.0, 1.0, 1))

    s = sp.add_parser("scaling", help="rates vs trap ratio at resonance")
    _add_common(s, case=False, detuning=False)
    s.add_argument("--fit-from", type=float, default=30.0)
    s.set_defaults(fn=cmd_scaling)

    s = sp.add_parser("heating", help="normalized heating sweeps")
    _add_common(s, case=False, detuning=False)
    s.add_argument("--mode", choices=("a", "b"), default="a",
                   help="a: vs trap ratio; b: time series at one trap ratio")
    s.add_argument("--time-range", type=parse_range, default=Range(1.0, 12.0, 45))
    s.set_defaults(fn=cmd_heating)

    s = sp.add_parser("population", help="Fock populations or momentum density")
    _add_common(s)
    s.add_argument("--representation", choices=("fock", "momentum"), default=None)
    s.add_argument("--k-max", type=float, default=8.0)
    s.add_argument("--k-points", type=int, default=481)
    s.set_defaults(fn=cmd_population)

    s = sp.add_parser("figure", help="preset figure datasets")
    s.add_argument("figure_id", type=int, choices=sorted(_FIGURES))
    s.add_argument("--drive", type=float, default=0.01)
    s.add_argument("--tol", type=float, default=1e-8)
    s.add_argument("--output", default="data")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(fn=cmd_figure)
    return ap


def _resolve_case_params(args):
    tr = args.trap_ratio.values()
    if getattr(args, "case", None) == ANTI and args.inv_ratio is None:
        args.inv_ratio = float(tr[0])


_VALUE_FLAGS = ("--detuning", "--trap-ratio", "--time-range", "--inv-ratio",
                "--eta", "--drive", "--time", "--tol")


def _inline_negative_values(argv):
    """Join '--flag -4:4:161' into '--flag=-4:4:161' so argparse accepts it."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if (tok in _VALUE_FLAGS and i + 1 < len(argv)
                and argv[i + 1].startswith("-") and len(argv[i + 1]) > 1
                and (argv[i + 1][1].isdigit() or argv[i + 1][1] == ".")):
            out.append(tok + "=" + argv[i + 1])
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    ap = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = ap.parse_args(_inline_negative_values(list(argv)))
    if hasattr(args, "trap_ratio") and not isinstance(args.trap_ratio, Range):
        args.trap_ratio = parse_range(str(args.trap_ratio))
    if hasattr(args, "case"):
        _resolve_case_params(args)
        if args.case == ANTI and getattr(args, "inv_ratio", None) is not None:
            if args.inv_ratio <= 0:
                print("--inv-ratio must be positive", file=sys.stderr)
                return 2
    if getattr(args, "command", None) in ("spectrum", "population"):
        if args.trap_ratio.count != 1:
            print(f"{args.command} needs a single --trap-ratio", file=sys.stderr)
            return 2
        args.trap_ratio = float(args.trap_ratio.values()[0])
    try:
        return args.fn(args)
    except TrapScatterError as exc:
        print(f"numerical nonconvergence: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"invalid arguments: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
