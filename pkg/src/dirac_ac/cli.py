"""Command-line entry point.

Exit codes: 0 success, 1 numeric or gate failure, 2 usage or validation error.
Settings resolve as built-in defaults < ``--config`` file < command-line flags.
"""

from __future__ import annotations

import argparse
import contextlib
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import oracle
from ._pool import ordered_map
from .currents import CurrentError, level_current, total_current
from .io import ConfigError, dumps_json, format_float, parse_config, write_csv
from .model import Background, BackgroundError, BackgroundKind, PhysicalParams, QuantumNumbers, parse_spin
from .spectrum import energy_level, enumerate_levels, quantization_beta
from .spinor import MIN_RESIDUAL_POINTS, SpinorError, build_spinor, dirac_residual, normalize, residual_gate

EXIT_OK, EXIT_NUMERIC, EXIT_USAGE = 0, 1, 2

LEVEL_COLUMNS = ["n", "l", "s", "k", "eta", "chi", "mu_lambda", "zeta", "beta", "energy"]
SWEEP_VARIABLES = ("mu_lambda", "eta", "chi", "k")


class UsageError(ValueError):
    pass


def _int(text) -> int:
    value = float(text)
    if value != int(value):
        raise ValueError(f"expected an integer, got {text!r}")
    return int(value)


def _spins(text) -> tuple[int, ...]:
    if str(text).strip().lower() == "both":
        return (1, -1)
    return (parse_spin(text),)


# key -> (converter, default); keys are shared by flags and config files
SETTINGS = {
    "background": (str, "minkowski"),
    "eta": (float, None),
    "chi": (float, 0.0),
    "mass": (float, 1.0),
    "omega": (float, 1.0),
    "mu_lambda": (float, 0.0),
    "k": (float, 0.0),
    "n_max": (_int, 0),
    "l_min": (_int, None),
    "l_max": (_int, None),
    "l": (_int, None),
    "spin": (_spins, "both"),
    "format": (str, "csv"),
    "out": (str, None),
    "points": (_int, None),
    "rho_max": (float, None),
    # subcommand options
    "n": (_int, 0),
    "count": (_int, 4),
    "lattice": (str, "default"),
    "var": (str, None),
    "start": (float, None),
    "stop": (float, None),
    "steps": (_int, None),
    "t": (float, 0.0),
    "phi": (float, 0.0),
    "z": (float, 0.0),
}


@dataclass(frozen=True)
class RunConfig:
    background: Background
    params: PhysicalParams
    n_max: int
    l_values: tuple[int, ...]
    spins: tuple[int, ...]
    fmt: str
    out: str | None
    points: int | None
    rho_max: float | None
    extra: dict

    def grid_for(self, m_omega: float) -> oracle.RadialGrid:
        points = self.points or oracle.DEFAULT_POINTS
        if self.rho_max is not None:
            return oracle.RadialGrid(self.rho_max, points)
        return oracle.RadialGrid.default(m_omega, points)


def resolve_config(args: argparse.Namespace) -> RunConfig:
    raw: dict = {}
    if getattr(args, "config", None):
        try:
            raw.update(parse_config(args.config))
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from None
    for key in SETTINGS:
        value = getattr(args, key, None)
        if value is not None:
            raw[key] = value
    unknown = sorted(set(raw) - set(SETTINGS))
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(unknown)}")

    values = {}
    for key, (convert, default) in SETTINGS.items():
        if key in raw:
            try:
                values[key] = convert(raw[key])
            except ValueError as exc:
                raise UsageError(f"invalid value for {key}: {exc}") from None
        else:
            values[key] = convert(default) if key == "spin" else default

    kind = BackgroundKind.parse(values["background"])
    eta = values["eta"] if values["eta"] is not None else 1.0
    background = Background(kind, eta, values["chi"])
    params = PhysicalParams(values["mass"], values["omega"], values["mu_lambda"], values["k"])

    if values["l"] is not None:
        l_min = l_max = values["l"]
    else:
        l_min = values["l_min"] if values["l_min"] is not None else 0
        l_max = values["l_max"] if values["l_max"] is not None else l_min
    if l_max < l_min:
        raise UsageError("empty l window: l_max < l_min")
    if values["n_max"] < 0:
        raise UsageError("n_max must be >= 0")
    if values["format"] not in ("csv", "json"):
        raise UsageError("format must be csv or json")
    extra = {k: values[k] for k in ("n", "count", "lattice", "var", "start", "stop", "steps", "t", "phi", "z")}
    return RunConfig(
        background,
        params,
        values["n_max"],
        tuple(range(l_min, l_max + 1)),
        values["spin"],
        values["format"],
        values["out"],
        values["points"],
        values["rho_max"],
        extra,
    )


@contextlib.contextmanager
def _output(path: str | None):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _emit(rows, columns, cfg: RunConfig, json_obj=None):
    with _output(cfg.out) as fh:
        if cfg.fmt == "json":
            fh.write(dumps_json(json_obj if json_obj is not None else rows))
        else:
            write_csv(rows, columns, fh)


def _log(message: str) -> None:
    print(message, file=sys.stderr)


# --- subcommands -----------------------------------------------------------


def cmd_spectrum(cfg: RunConfig) -> int:
    table = enumerate_levels(cfg.background, cfg.params, cfg.n_max, cfg.l_values, cfg.spins)
    _emit(table.rows(), LEVEL_COLUMNS, cfg)
    return EXIT_OK


def _corrupt_beta(j, zeta_over_eta, m_omega):
    # deliberately wrong bracket: |zeta|/eta in place of |zeta|/(2 eta)
    return 4.0 * m_omega * (j + abs(zeta_over_eta) + 0.5)


def _spectrum_beta(j, zeta_over_eta, m_omega):
    return quantization_beta(j, zeta_over_eta, 1.0, m_omega, 1.0)


def cmd_validate(cfg: RunConfig) -> int:
    count = cfg.extra["count"]
    if count < 1:
        raise UsageError("count must be >= 1")
    formula = _corrupt_beta if cfg.extra.get("corrupt_bracket") else _spectrum_beta
    lattice = cfg.extra["lattice"]
    if lattice == "default":
        tasks = [(z, mw) for z in oracle.DEFAULT_LATTICE_ZETA for mw in oracle.DEFAULT_LATTICE_M_OMEGA]
    elif lattice == "window":
        table = enumerate_levels(cfg.background, cfg.params, cfg.n_max, cfg.l_values, cfg.spins)
        zetas = sorted({abs(lv.zeta) / cfg.background.eta for lv in table})
        tasks = [(z, cfg.params.m_omega) for z in zetas]
        count = max(count, cfg.n_max + 1)
    else:
        raise UsageError("lattice must be 'default' or 'window'")

    def run(task):
        z, mw = task
        return oracle.validate_point(z, mw, count, cfg.grid_for(mw), formula)

    points = [pt for block in ordered_map(run, tasks) for pt in block]
    failures = [pt for pt in points if not pt.passed]
    worst = max(points, key=lambda pt: pt.rel_error)
    report = {
        "kernel": oracle.KERNEL,
        "passed": not failures,
        "max_rel_error": worst.rel_error,
        "points": [pt.to_dict() for pt in points],
    }
    with _output(cfg.out) as fh:
        fh.write(dumps_json(report))
    _log(f"validate: {len(points)} points, max rel err {worst.rel_error:.3e}")
    if failures:
        first = failures[0]
        _log(
            f"validate: FAIL at zeta/eta={format_float(first.zeta_over_eta)} "
            f"m_omega={format_float(first.m_omega)} j={first.j}: "
            f"rel err {first.rel_error:.3e} > gate {first.gate:.0e}"
        )
        return EXIT_NUMERIC
    return EXIT_OK


def _sweep_values(cfg: RunConfig) -> np.ndarray:
    var, start, stop, steps = (cfg.extra[k] for k in ("var", "start", "stop", "steps"))
    if var not in SWEEP_VARIABLES:
        raise UsageError(f"--var must be one of {', '.join(SWEEP_VARIABLES)}")
    if start is None or stop is None or steps is None:
        raise UsageError("sweep needs --start, --stop and --steps")
    if steps < 2:
        raise UsageError("steps must be >= 2")
    values = np.linspace(start, stop, steps)
    kind = cfg.background.kind
    if var == "eta":
        if kind is BackgroundKind.MINKOWSKI:
            raise UsageError("eta sweep needs a string or dislocation background")
        if np.any(values <= 0.0) or np.any(values > 1.0):
            raise UsageError("eta out of range (0, 1] in sweep")
    if var == "chi" and kind is not BackgroundKind.COSMIC_DISLOCATION:
        raise UsageError("chi sweep needs a dislocation background")
    return values


def _swept(cfg: RunConfig, var: str, value: float) -> tuple[Background, PhysicalParams]:
    bg, params = cfg.background, cfg.params
    if var == "eta":
        bg = Background(bg.kind, value, bg.chi)
    elif var == "chi":
        bg = Background(bg.kind, bg.eta, value)
    else:
        params = params.replace(**{var: value})
    return bg, params


def cmd_sweep(cfg: RunConfig) -> int:
    values = _sweep_values(cfg)
    var = cfg.extra["var"]
    qns = [QuantumNumbers(n, l, s) for n in range(cfg.n_max + 1) for l in cfg.l_values for s in cfg.spins]

    def run(value):
        bg, params = _swept(cfg, var, float(value))
        rows = []
        for qn in qns:
            level = energy_level(bg, params, qn)
            try:
                current = level_current(bg, params, qn)
            except CurrentError:
                current = None
            rows.append(
                {
                    var: float(value),
                    "n": qn.n,
                    "l": qn.l,
                    "s": qn.s,
                    "zeta": level.zeta,
                    "energy": level.energy,
                    "current": current,
                }
            )
        return rows

    rows = [row for block in ordered_map(run, values) for row in block]
    _emit(rows, [var, "n", "l", "s", "zeta", "energy", "current"], cfg)
    return EXIT_OK


def cmd_spinor(cfg: RunConfig) -> int:
    if len(cfg.l_values) != 1 or len(cfg.spins) != 1:
        raise UsageError("spinor needs a single --l and --spin +1 or -1")
    qn = QuantumNumbers(cfg.extra["n"], cfg.l_values[0], cfg.spins[0])
    grid = cfg.grid_for(cfg.params.m_omega)
    if grid.points < MIN_RESIDUAL_POINTS:
        raise UsageError(f"spinor needs at least {MIN_RESIDUAL_POINTS} grid points")
    gauge = (cfg.extra["t"], cfg.extra["phi"], cfg.extra["z"])
    field = normalize(build_spinor(cfg.background, cfg.params, qn, grid, gauge))
    residual = dirac_residual(field, cfg.background, cfg.params)
    gate = residual_gate(field)
    header = dict(field.header(), residual=residual, gate=gate)
    rows = field.rows()
    columns = ["rho"] + [f"{part}{c}" for c in range(1, 5) for part in ("re", "im")]
    if cfg.fmt == "json":
        _emit(rows, columns, cfg, {"header": header, "rows": rows})
    else:
        _emit(rows, columns, cfg)
        if cfg.out not in (None, "-"):
            Path(str(cfg.out) + ".json").write_text(dumps_json(header), encoding="utf-8")
    ok = residual < gate
    _log(f"spinor: residual {residual:.3e} gate {gate:.0e} {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_NUMERIC


def cmd_current(cfg: RunConfig) -> int:
    qns = [QuantumNumbers(n, l, s) for n in range(cfg.n_max + 1) for l in cfg.l_values for s in cfg.spins]
    report = total_current(cfg.background, cfg.params, qns)
    data = report.to_dict()
    _emit(data["levels"], ["n", "l", "s", "zeta", "energy", "contribution"], cfg, data)
    _log(f"current: total {format_float(report.total)} over {len(report.levels)} levels, {len(report.excluded)} excluded")
    return EXIT_OK


COMMANDS = {
    "spectrum": cmd_spectrum,
    "validate": cmd_validate,
    "sweep": cmd_sweep,
    "spinor": cmd_spinor,
    "current": cmd_current,
}


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    g = shared.add_argument_group("model")
    g.add_argument("--config", metavar="PATH", help="key = value file; flags override it")
    g.add_argument("--background", choices=["minkowski", "string", "dislocation"])
    g.add_argument("--eta", metavar="R")
    g.add_argument("--chi", metavar="R")
    g.add_argument("--mass", metavar="R")
    g.add_argument("--omega", metavar="R")
    g.add_argument("--mu-lambda", dest="mu_lambda", metavar="R")
    g.add_argument("--k", metavar="R")
    w = shared.add_argument_group("level window")
    w.add_argument("--n-max", dest="n_max", metavar="I")
    w.add_argument("--l-min", dest="l_min", metavar="I")
    w.add_argument("--l-max", dest="l_max", metavar="I")
    w.add_argument("--l", metavar="I", help="single orbital number (sets l-min = l-max)")
    w.add_argument("--spin", metavar="{+1|-1|both}")
    o = shared.add_argument_group("output and grid")
    o.add_argument("--format", choices=["csv", "json"])
    o.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    o.add_argument("--points", metavar="I", help="radial grid interior nodes")
    o.add_argument("--rho-max", dest="rho_max", metavar="R", help="radial grid extent")

    parser = argparse.ArgumentParser(
        prog="dirac-ac",
        description="Dirac oscillator with Aharonov-Casher coupling in flat, cosmic-string and dislocation backgrounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", parents=[shared], help="closed-form level table")

    p = sub.add_parser("validate", parents=[shared], help="finite-difference oracle vs quantization condition")
    p.add_argument("--count", metavar="I", help="eigenvalues per lattice point (default 4)")
    p.add_argument("--lattice", choices=["default", "window"])
    p.add_argument("--corrupt-bracket", action="store_true", help=argparse.SUPPRESS)

    p = sub.add_parser("sweep", parents=[shared], help="levels and currents along one parameter")
    p.add_argument("--var", choices=SWEEP_VARIABLES)
    p.add_argument("--start", metavar="R")
    p.add_argument("--stop", metavar="R")
    p.add_argument("--steps", metavar="I")

    p = sub.add_parser("spinor", parents=[shared], help="normalized spinor samples and residual")
    p.add_argument("--n", metavar="I", help="radial quantum number (default 0)")
    p.add_argument("--t", metavar="R")
    p.add_argument("--phi", metavar="R")
    p.add_argument("--z", metavar="R")

    sub.add_parser("current", parents=[shared], help="persistent spin currents over the window")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = resolve_config(args)
        cfg.extra["corrupt_bracket"] = bool(getattr(args, "corrupt_bracket", False))
        return COMMANDS[args.command](cfg)
    except (UsageError, ConfigError, BackgroundError) as exc:
        _log(f"error: {exc}")
        return EXIT_USAGE
    except (oracle.OracleError, SpinorError, ArithmeticError) as exc:
        _log(f"numeric failure: {exc}")
        return EXIT_NUMERIC
    except ValueError as exc:
        _log(f"error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
