"""Command line entry point: ``sshq <command> --config <path> [--set key=value ...]``.

Config files are ``key = value`` lines; ``#`` starts a comment. Phases and
other angles accept a ``pi`` suffix (``0.75pi``). Every key has a default,
so an empty file reproduces the paper's pumped quench run.
"""

from __future__ import annotations

import argparse
import math
import re
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np

from . import eigensolver, entanglement
from .dynamics import PumpConfig, ProtocolConfig, RunContext, INITIAL_CONDITIONS, run_protocol
from .io import render_heatmap, write_csv
from .model import LatticeParams, QuenchSchedule, hopping_amplitudes
from .observables import site_populations

COMMANDS = ("spectrum", "hoppings", "evolve", "eigenstate", "sd", "sd-dynamics", "sweep")


class ConfigError(ValueError):
    pass


def _parse_float(text: str) -> float:
    t = text.strip().replace("π", "pi")
    m = re.fullmatch(r"(.*?)\*?\s*pi", t)
    if m:
        head = m.group(1).strip()
        return (float(head) if head not in ("", "+") else 1.0) * math.pi
    return float(t)


def _parse_list(text: str) -> tuple[float, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(_parse_float(v) for v in text.split(","))


def _fmt(v) -> str:
    if isinstance(v, tuple):
        return ",".join(repr(x) for x in v)
    return repr(v) if isinstance(v, float) else str(v)


@dataclass(frozen=True)
class RunConfig:
    command: str
    n_cells: int = 20
    epsilon: float = 1.0
    gamma: float = 0.0025
    v0: float = 0.125
    mu_k2: float = 0.25
    alpha_t: float = 0.75 * math.pi
    alpha_g: float = 0.5 * math.pi
    t_a: float = 10.0
    t_b: float = 30.0
    t_end: float = 40.0
    dt: float = 1.0 / 256
    sample_stride: float = 1.0 / 16
    pump_fa: float = 0.01
    pump_fb: float = 0.01
    pump_omega: float = 1.0
    pump_phi0: float = 0.0
    init: str = "vacuum"
    solver: str = "modal"
    out_dir: str = "out"
    alpha: float = 0.5 * math.pi
    alpha_min: float = 0.0
    alpha_max: float = math.pi
    alpha_points: int = 201
    sweep_gammas: tuple = (0.0, 0.0005, 0.0025, 0.005, 0.0075)
    sweep_alphas: tuple = ()

    def lattice(self, gamma: float | None = None) -> LatticeParams:
        return LatticeParams(self.n_cells, self.epsilon, self.gamma if gamma is None else gamma,
                             self.v0, self.mu_k2)

    def pump(self) -> PumpConfig:
        return PumpConfig(self.pump_fa, self.pump_fb, self.pump_omega, self.pump_omega,
                          self.pump_phi0, self.pump_phi0)

    def schedule(self) -> QuenchSchedule:
        return QuenchSchedule(self.alpha_t, self.alpha_g, self.alpha_t, self.t_a, self.t_b)

    def protocol(self, gamma: float | None = None, schedule: QuenchSchedule | None = None) -> ProtocolConfig:
        ctx = RunContext(self.lattice(gamma), schedule or self.schedule(), self.pump())
        return ProtocolConfig(ctx, self.init, self.t_end, self.dt, self.sample_stride, self.solver)

    def alpha_grid(self) -> np.ndarray:
        return np.linspace(self.alpha_min, self.alpha_max, self.alpha_points)


# config key -> (field name, parser)
_KEYS = {
    "n_cells": ("n_cells", int),
    "epsilon": ("epsilon", _parse_float),
    "gamma": ("gamma", _parse_float),
    "v0": ("v0", _parse_float),
    "mu_k2": ("mu_k2", _parse_float),
    "alpha_t": ("alpha_t", _parse_float),
    "alpha_g": ("alpha_g", _parse_float),
    "t_a": ("t_a", _parse_float),
    "t_b": ("t_b", _parse_float),
    "t_end": ("t_end", _parse_float),
    "dt": ("dt", _parse_float),
    "sample_stride": ("sample_stride", _parse_float),
    "pump.fa": ("pump_fa", _parse_float),
    "pump.fb": ("pump_fb", _parse_float),
    "pump.omega": ("pump_omega", _parse_float),
    "pump.phi0": ("pump_phi0", _parse_float),
    "init": ("init", str),
    "solver": ("solver", str),
    "out_dir": ("out_dir", str),
    "alpha": ("alpha", _parse_float),
    "alpha_min": ("alpha_min", _parse_float),
    "alpha_max": ("alpha_max", _parse_float),
    "alpha_points": ("alpha_points", int),
    "sweep.gammas": ("sweep_gammas", _parse_list),
    "sweep.alphas": ("sweep_alphas", _parse_list),
}
_FIELD_TO_KEY = {f: k for k, (f, _) in _KEYS.items()}


def _parse_line(raw: str, where: str) -> tuple[str, object]:
    if "=" not in raw:
        raise ConfigError(f"{where}: expected key=value, got {raw.strip()!r}")
    key, value = (s.strip() for s in raw.split("=", 1))
    if key not in _KEYS:
        raise ConfigError(f"{where}: unknown key {key!r}")
    name, conv = _KEYS[key]
    try:
        parsed = conv(value)
    except ValueError:
        raise ConfigError(f"{where}: cannot parse value {value!r} for {key!r}") from None
    return name, parsed


def _validate(cfg: RunConfig) -> RunConfig:
    if cfg.init not in INITIAL_CONDITIONS:
        raise ConfigError(f"init must be one of {INITIAL_CONDITIONS}, got {cfg.init!r}")
    if cfg.solver not in ("modal", "rk4"):
        raise ConfigError(f"solver must be 'modal' or 'rk4', got {cfg.solver!r}")
    return cfg


def parse_config(text: str, command: str | None = None, overrides=()) -> RunConfig:
    """Resolve a config document plus ``key=value`` overrides into a :class:`RunConfig`.

    A ``command = ...`` line in the document is honoured when ``command`` is
    not given explicitly.
    """
    values: dict[str, object] = {}
    file_command = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if line.split("=", 1)[0].strip() == "command":
            file_command = line.split("=", 1)[1].strip() if "=" in line else ""
            continue
        name, value = _parse_line(line, f"line {lineno}")
        values[name] = value
    for k, item in enumerate(overrides, start=1):
        name, value = _parse_line(item, f"--set #{k}")
        values[name] = value
    command = command or file_command
    if not command:
        raise ConfigError("missing required command")
    if command not in COMMANDS:
        raise ConfigError(f"unknown command {command!r}; expected one of {COMMANDS}")
    return _validate(RunConfig(command=command, **values))


def serialize_config(cfg: RunConfig) -> str:
    lines = [f"command = {cfg.command}"]
    for f in fields(cfg):
        if f.name == "command":
            continue
        lines.append(f"{_FIELD_TO_KEY[f.name]} = {_fmt(getattr(cfg, f.name))}")
    return "\n".join(lines) + "\n"


def _out(cfg: RunConfig) -> Path:
    return Path(cfg.out_dir)


def _site_header(m: int) -> list[str]:
    return [f"site_{n}" for n in range(1, m + 1)]


def write_evolution(traj, out: Path) -> dict[str, Path]:
    field = site_populations(traj)
    m = field.n_sites
    paths = {
        "occupations": write_csv(out / "occupations.csv", ["time", *_site_header(m)],
                                 np.column_stack([field.times, field.site_pop])),
        "totals": write_csv(out / "totals.csv", ["time", "P_tot"],
                            np.column_stack([field.times, field.total])),
        "heatmap": render_heatmap(field, out / "heatmap.pgm"),
    }
    return paths


def cmd_evolve(cfg: RunConfig) -> dict[str, Path]:
    return write_evolution(run_protocol(cfg.protocol()), _out(cfg))


def cmd_spectrum(cfg: RunConfig) -> dict[str, Path]:
    table = eigensolver.spectrum_sweep(cfg.alpha_grid(), cfg.lattice(0.0))
    table[:, 0] /= math.pi
    m = table.shape[1] - 1
    header = ["alpha_over_pi", *[f"E_{k}" for k in range(1, m + 1)]]
    return {"spectrum": write_csv(_out(cfg) / "spectrum.csv", header, table)}


def cmd_hoppings(cfg: RunConfig) -> dict[str, Path]:
    params = cfg.lattice(0.0)
    rows = []
    for a in cfg.alpha_grid():
        h = hopping_amplitudes(float(a), params)
        rows.append([a / math.pi, h.j1, h.j2, h.omega_vib, h.delta1, h.delta2])
    header = ["alpha_over_pi", "J1", "J2", "omega", "Delta1", "Delta2"]
    return {"hoppings": write_csv(_out(cfg) / "hoppings.csv", header, rows)}


def cmd_eigenstate(cfg: RunConfig) -> dict[str, Path]:
    params = cfg.lattice(0.0)
    d = eigensolver.decompose(cfg.alpha, params)
    m = d.size
    out = _out(cfg)
    sites = np.arange(1, m + 1)
    n = params.n_cells
    plus = eigensolver.superpose_states(d, n, n + 1, +1)
    minus = eigensolver.superpose_states(d, n, n + 1, -1)
    return {
        "eigenvalues": write_csv(out / "eigenvalues.csv", ["state", "energy"],
                                 np.column_stack([sites, d.values])),
        "eigenvectors": write_csv(out / "eigenvectors.csv", ["site", *[f"psi_{k}" for k in sites]],
                                  np.column_stack([sites, d.vectors])),
        "superpositions": write_csv(out / "superpositions.csv",
                                    ["site", f"psi_{n}_plus_psi_{n + 1}", f"psi_{n}_minus_psi_{n + 1}"],
                                    np.column_stack([sites, plus, minus])),
    }


def cmd_sd(cfg: RunConfig) -> dict[str, Path]:
    table = entanglement.sd_sweep(cfg.lattice(0.0), cfg.alpha_grid())
    rows = np.column_stack([table[:, 0] / math.pi, table[:, 1], table[:, 1] / math.log(2)])
    return {"sd": write_csv(_out(cfg) / "sd.csv", ["alpha_over_pi", "S_D", "S_D_over_ln2"], rows)}


def cmd_sd_dynamics(cfg: RunConfig) -> dict[str, Path]:
    # time grid in units of 2*pi/J, like the unpumped dynamics
    n = round(cfg.t_end / cfg.sample_stride)
    t = np.arange(n + 1) * cfg.sample_stride
    table = entanglement.sd_dynamics(cfg.lattice(0.0), t * 2 * math.pi, cfg.alpha_t, cfg.alpha_g)
    rows = np.column_stack([t, table[:, 1], table[:, 1] / math.log(2)])
    return {"sd_dynamics": write_csv(_out(cfg) / "sd_dynamics.csv",
                                     ["Jt_over_2pi", "S_D", "S_D_over_ln2"], rows)}


def cmd_sweep(cfg: RunConfig) -> dict[str, Path]:
    """One totals CSV per damping rate (and per fixed phase when ``sweep.alphas`` is set)."""
    out = _out(cfg)
    paths = {}
    alphas = cfg.sweep_alphas or (None,)
    for g in cfg.sweep_gammas:
        for a in alphas:
            sched = None if a is None else QuenchSchedule.constant(a)
            tag = f"gamma_{g:g}" if a is None else f"gamma_{g:g}_alpha_{a / math.pi:g}pi"
            field = site_populations(run_protocol(cfg.protocol(g, sched)))
            paths[tag] = write_csv(out / tag / "totals.csv", ["time", "P_tot"],
                                   np.column_stack([field.times, field.total]))
    return paths


HANDLERS = {
    "spectrum": cmd_spectrum,
    "hoppings": cmd_hoppings,
    "evolve": cmd_evolve,
    "eigenstate": cmd_eigenstate,
    "sd": cmd_sd,
    "sd-dynamics": cmd_sd_dynamics,
    "sweep": cmd_sweep,
}


def run(cfg: RunConfig) -> dict[str, Path]:
    return HANDLERS[cfg.command](cfg)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="sshq", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", type=Path, help="key=value config file")
    parser.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE")
    args = parser.parse_args(argv)
    text = ""
    if args.config is not None:
        try:
            text = args.config.read_text(encoding="utf-8")
        except OSError as exc:
            print(f"sshq: cannot read {args.config}: {exc.strerror}", file=sys.stderr)
            return 2
    try:
        cfg = parse_config(text, args.command, args.overrides)
        paths = run(cfg)
    except ConfigError as exc:
        print(f"sshq: config error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"sshq: {exc}", file=sys.stderr)
        return 1
    for name, path in paths.items():
        print(f"{name}: {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
