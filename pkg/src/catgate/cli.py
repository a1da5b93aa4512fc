"""Command-line front end: writes sweep data as CSV with a JSON manifest.

Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 reference
table mismatch (``table1`` only).

Parameters may come from flags or from a ``key=value`` file passed with
``--config``; flags win.
"""
import argparse
import csv
import json
import sys
import time
from datetime import datetime, timezone
from math import sqrt
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import (
    REFERENCE_TABLE,
    cat_fidelity,
    fidelity,
    fidelity_map,
    find_optimal_gamma,
    infidelity_slice,
    infidelity_vs_squeezing,
    probability_curve,
    refine_reference_cell,
    squeezing_db,
    wigner,
)
from .errors import CatGateError, ParameterRangeError
from .gate import FockGateConfig, GateTemplate, fock_output_wf, output_wf_closed
from .semiclassical import map_fock, perfect_cat_from_semiclassics, ym_for_half_spacing
from .states import perfect_cat_wf

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_MISMATCH = 0, 1, 2, 3
TABLE_F_TOL = 0.002

DEFAULTS = {
    "rho": 0.5,
    "tau": None,
    "s": 0.2,
    "gamma": None,
    "ym": None,
    "delta_q": 2.87,
    "n": 5,
    "grid_points": 4096,
    "out": ".",
    "gamma_min": 0.05,
    "gamma_max": 0.35,
    "ym_min": 0.0,
    "ym_max": 6.0,
    "resolution": None,
    "s_min": 0.02,
    "s_max": 1.0,
    "p_max": None,
    "metric": "probability",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def read_config(path):
    """Parse a ``key=value`` file; blank lines and ``#`` comments are skipped."""
    params = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = (t.strip() for t in line.split("=", 1))
        params[key.replace("-", "_")] = value
    return params


def _coerce(key, value):
    if value is None:
        return None
    if key in ("grid_points", "n", "resolution"):
        return int(value)
    if key in ("out", "metric"):
        return str(value)
    if key == "gamma" and isinstance(value, str):
        return [float(v) for v in value.replace(",", " ").split()]
    return value if isinstance(value, list) else float(value)


def resolve(args):
    """Merge defaults, config file and flags into one parameter dict."""
    params = dict(DEFAULTS)
    if args.config:
        for key, value in read_config(args.config).items():
            if key not in DEFAULTS:
                raise UsageError(f"unknown config key {key!r}")
            params[key] = value
    for key in DEFAULTS:
        flag = getattr(args, key, None)
        if flag is not None:
            params[key] = flag
    try:
        params = {k: _coerce(k, v) for k, v in params.items()}
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rho = params["rho"]
    if not 0 < rho < 1:
        raise UsageError(f"rho must lie in (0, 1), got {rho}")
    if params["tau"] is None:
        params["tau"] = sqrt(1.0 - rho * rho)
    elif abs(rho * rho + params["tau"] ** 2 - 1.0) > 1e-12:
        raise UsageError(f"rho^2 + tau^2 must equal 1 (got {rho ** 2 + params['tau'] ** 2:.15g})")
    return params


def _template(params):
    try:
        return GateTemplate(params["rho"], params["tau"], params["s"])
    except ParameterRangeError as exc:
        raise UsageError(str(exc)) from exc


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.10g}"
    return str(v)


def write_csv(path, header, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])


def manifest_path(output):
    return output.with_name(output.stem + ".manifest.json")


def write_manifest(output, command, params, started):
    """Structured run record written next to ``output``."""
    manifest = {
        "command": command,
        "parameters": dict(params),
        "output": str(output),
        "version": __version__,
        "started": datetime.fromtimestamp(started, timezone.utc).isoformat(),
        "duration_s": round(time.time() - started, 3),
    }
    manifest_path(output).write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _wigner_rows(w):
    for i, x in enumerate(w.x_axis):
        for j, p in enumerate(w.p_axis):
            yield x, p, w.values[i, j]


def cmd_table1(params, out):
    rows = []
    worst = 0.0
    for rho, cells in REFERENCE_TABLE:
        t = GateTemplate.from_rho(rho, params["s"])
        for g_ref, y_ref, f_ref in cells:
            try:
                g, y, f = refine_reference_cell(t, g_ref, params["delta_q"],
                                                num_points=params["grid_points"])
            except CatGateError as exc:
                raise CatGateError(f"cell rho={rho:.4f}, gamma={g_ref}: {exc}") from exc
            rows.append((t.rho, t.tau, g_ref, g, y_ref, y, f_ref, f, f - f_ref))
            worst = max(worst, abs(f - f_ref))
            print(f"rho={t.rho:.4f} tau={t.tau:.4f} gamma={g:.5f} y_m={y:.3f} "
                  f"F={f:.4f} (reference {f_ref:.4f})")
    path = out / "table1.csv"
    write_csv(path, ["rho", "tau", "gamma_ref", "gamma", "y_m_ref", "y_m", "F_ref", "F", "dF"],
              rows)
    return [path], EXIT_MISMATCH if worst > TABLE_F_TOL else EXIT_OK


def cmd_fidelity_map(params, out):
    t = _template(params)
    res = params["resolution"] or 61
    m = fidelity_map(t, (params["gamma_min"], params["gamma_max"]),
                     (params["ym_min"], params["ym_max"]), (res, res), params["grid_points"])
    g, y = m.axes["gamma"], m.axes["y_m"]
    rows = ((g[i], y[j], m.values[i, j]) for i in range(g.size) for j in range(y.size))
    path = out / "fidelity_map.csv"
    write_csv(path, ["gamma", "y_m", "fidelity"], rows)
    return [path], EXIT_OK


def cmd_infidelity_slice(params, out):
    t = _template(params)
    sl = infidelity_slice(t, params["delta_q"], (params["gamma_min"], params["gamma_max"]),
                          params["resolution"] or 601, params["grid_points"])
    path = out / "infidelity_slice.csv"
    write_csv(path, ["gamma", "y_m", "infidelity"],
              zip(sl.axes["gamma"], sl.meta["y_m"], sl.values))
    minima = find_optimal_gamma(sl)
    mpath = out / "infidelity_minima.csv"
    write_csv(mpath, ["gamma", "y_m", "infidelity"],
              ((g, ym_for_half_spacing(g, t.rho, t.tau, params["delta_q"]), v) for g, v in minima))
    for g, v in minima:
        print(f"minimum: gamma={g:.5f} infidelity={v:.5f}")
    return [path, mpath], EXIT_OK


def cmd_prob_curve(params, out):
    t = _template(params)
    gammas = params["gamma"] or [0.115, 0.202, 0.289]
    s_range = (params["s_min"], params["s_max"])
    if params["metric"] == "infidelity":
        r = infidelity_vs_squeezing(t, gammas, params["delta_q"], s_range,
                                    params["resolution"] or 99, params["grid_points"])
        header = ["gamma", "s", "squeezing_db", "infidelity"]
        path = out / "infidelity_vs_s.csv"
    elif params["metric"] == "probability":
        pairs = [(g, params["ym"] if params["ym"] is not None
                  else ym_for_half_spacing(g, t.rho, t.tau, params["delta_q"])) for g in gammas]
        r = probability_curve(t, pairs, s_range, params["resolution"] or 197,
                              params["grid_points"])
        header = ["gamma", "s", "squeezing_db", "probability_density"]
        path = out / "prob_curve.csv"
    else:
        raise UsageError(f"unknown metric {params['metric']!r}")
    ss = r.axes["s"]
    rows = [(g, s, squeezing_db(s), r.values[k, i])
            for k, g in enumerate(gammas) for i, s in enumerate(ss)]
    write_csv(path, header, rows)
    return [path], EXIT_OK


def cmd_wigner(params, out):
    t = _template(params)
    gamma = (params["gamma"] or [0.289])[0]
    y = params["ym"]
    if y is None:
        y = ym_for_half_spacing(gamma, t.rho, t.tau, params["delta_q"])
    cfg = t.config(gamma, y)
    state = output_wf_closed(cfg)
    w = wigner(state.wavefunction, p_max=params["p_max"])
    f = cat_fidelity(cfg, delta_q=params["delta_q"], grid=state.wavefunction.grid)
    print(f"gamma={gamma} y_m={y:.4f} P={state.prob_density:.6g} F={f:.4f} "
          f"min W={w.values.min():.4f}")
    path = out / "wigner.csv"
    write_csv(path, ["x", "p", "W"], _wigner_rows(w))
    return [path], EXIT_OK


def cmd_fock_compare(params, out):
    y = params["ym"] if params["ym"] is not None else 0.0
    cfg = FockGateConfig(params["rho"], params["tau"], params["n"], y)
    pair = map_fock(cfg)
    state = fock_output_wf(cfg, grid=None)
    spec = perfect_cat_from_semiclassics(cfg)
    f = fidelity(perfect_cat_wf(spec, state.wavefunction.grid), state.wavefunction)
    print(f"n={cfg.n} y_m={y} delta_q={pair.half_spacing:.4f} P={state.prob_density:.6g} F={f:.4f}")
    path = out / "fock_compare.csv"
    write_csv(path, ["n", "rho", "tau", "y_m", "delta_q", "prob_density", "fidelity"],
              [(cfg.n, cfg.rho, cfg.tau, y, pair.half_spacing, state.prob_density, f)])
    w = wigner(state.wavefunction, p_max=params["p_max"])
    wpath = out / "fock_wigner.csv"
    write_csv(wpath, ["x", "p", "W"], _wigner_rows(w))
    return [path, wpath], EXIT_OK


COMMANDS = {
    "table1": cmd_table1,
    "fidelity-map": cmd_fidelity_map,
    "infidelity-slice": cmd_infidelity_slice,
    "prob-curve": cmd_prob_curve,
    "wigner": cmd_wigner,
    "fock-compare": cmd_fock_compare,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value parameter file (flags override it)")
    common.add_argument("--rho", type=float, help="beamsplitter reflection (default 0.5)")
    common.add_argument("--tau", type=float, help="transmission (default sqrt(1-rho^2))")
    common.add_argument("--s", type=float, help="resource squeezing factor (default 0.2)")
    common.add_argument("--gamma", type=float, nargs="+", help="cubic nonlinearity value(s)")
    common.add_argument("--ym", type=float, help="homodyne outcome")
    common.add_argument("--delta-q", dest="delta_q", type=float, help="half-spacing (default 2.87)")
    common.add_argument("--n", type=int, help="photon number of the Fock resource (default 5)")
    common.add_argument("--grid-points", dest="grid_points", type=int, help="grid size (4096)")
    common.add_argument("--out", help="output directory (default .)")
    common.add_argument("--gamma-min", dest="gamma_min", type=float)
    common.add_argument("--gamma-max", dest="gamma_max", type=float)
    common.add_argument("--ym-min", dest="ym_min", type=float)
    common.add_argument("--ym-max", dest="ym_max", type=float)
    common.add_argument("--s-min", dest="s_min", type=float)
    common.add_argument("--s-max", dest="s_max", type=float)
    common.add_argument("--resolution", type=int, help="points per sweep axis")
    common.add_argument("--p-max", dest="p_max", type=float, help="Wigner momentum cut")
    common.add_argument("--metric", choices=["probability", "infidelity"])

    parser = _Parser(prog="catgate", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.time()
    try:
        params = resolve(args)
        out = Path(params["out"])
        outputs, status = COMMANDS[args.command](params, out)
    except UsageError as exc:
        print(f"catgate {args.command}: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CatGateError as exc:
        print(f"catgate {args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    for path in outputs:
        write_manifest(path, args.command, params, started)
    if status == EXIT_MISMATCH:
        print(f"catgate table1: fidelity deviates from reference by more than {TABLE_F_TOL}",
              file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
