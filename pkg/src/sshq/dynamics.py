"""Driven, damped amplitude dynamics under a piecewise-constant lattice phase.

Two solvers share one contract:

* :func:`rk4_evolve` integrates the site equations with classic fixed-step RK4;
* :func:`modal_evolve` solves each constant-phase interval exactly in the
  eigenbasis of the Hermitian part, with the sinusoidal drive handled by
  its closed-form particular solution.

Times passed in and out are in units of the drive period ``T_p = 2*pi/omega_p``
(``2*pi/J`` for unpumped runs, numerically the same when both are 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np

from .eigensolver import eig_selfadjoint
from .model import (PAPER_SCHEDULE, LatticeParams, QuenchSchedule, hermitian_part,
                    hopping_amplitudes, schedule_alpha)

__all__ = [
    "PumpConfig",
    "StateVector",
    "Trajectory",
    "RunContext",
    "ProtocolConfig",
    "INITIAL_CONDITIONS",
    "drive_vector",
    "rhs",
    "rk4_evolve",
    "modal_evolve",
    "initial_state",
    "run_protocol",
]

INITIAL_CONDITIONS = ("vacuum", "both_edges", "first_edge", "last_edge")
SECULAR_TOL = 1e-12


@dataclass(frozen=True)
class PumpConfig:
    f_a: float = 0.01
    f_b: float = 0.01
    omega_pa: float = 1.0
    omega_pb: float = 1.0
    phi_0a: float = 0.0
    phi_0b: float = 0.0

    def __post_init__(self):
        if self.f_a < 0 or self.f_b < 0:
            raise ValueError("pump amplitudes must be >= 0")

    @classmethod
    def off(cls) -> "PumpConfig":
        return cls(0.0, 0.0)

    @property
    def active(self) -> bool:
        return self.f_a != 0 or self.f_b != 0

    def terms(self, n_sites: int) -> list[tuple[int, complex, float]]:
        """(site, complex amplitude, frequency) for every nonzero drive."""
        out = []
        if self.f_a:
            out.append((0, self.f_a * np.exp(1j * self.phi_0a), self.omega_pa))
        if self.f_b:
            out.append((n_sites - 1, self.f_b * np.exp(1j * self.phi_0b), self.omega_pb))
        return out


@dataclass(frozen=True)
class StateVector:
    amps: np.ndarray
    time: float


@dataclass(frozen=True)
class RunContext:
    params: LatticeParams = field(default_factory=lambda: LatticeParams(gamma=0.0025))
    schedule: QuenchSchedule = PAPER_SCHEDULE
    pump: PumpConfig = field(default_factory=PumpConfig)

    @property
    def time_unit(self) -> float:
        """Physical length of one reporting time unit."""
        return 2.0 * math.pi / self.pump.omega_pa if self.pump.active else 2.0 * math.pi


@dataclass(frozen=True)
class Trajectory:
    """Sampled history; ``states[k]`` is the amplitude vector at ``times[k]`` (units of T_p)."""

    times: np.ndarray
    states: np.ndarray
    context: RunContext
    solver: str = ""

    def __len__(self):
        return self.times.shape[0]

    def state(self, k: int) -> StateVector:
        return StateVector(self.states[k], float(self.times[k]))

    def index_of(self, t: float) -> int:
        k = int(np.argmin(np.abs(self.times - t)))
        if abs(self.times[k] - t) > 1e-9:
            raise KeyError(f"t={t} is not a sample time")
        return k


def drive_vector(t: float, pump: PumpConfig, n_cells: int) -> np.ndarray:
    """Pump phasors at physical time ``t``: only the two end sites are driven."""
    m = 2 * n_cells
    f = np.zeros(m, dtype=complex)
    for site, amp, omega in pump.terms(m):
        f[site] += amp * np.exp(-1j * omega * t)
    return f


@lru_cache(maxsize=256)
def _hoppings(alpha, params):
    return hopping_amplitudes(alpha, params)


def rhs(t: float, x: np.ndarray, ctx: RunContext, alpha: float | None = None) -> np.ndarray:
    """Time derivative of the amplitudes at physical time ``t``.

    Written out from the per-cell equations for A_l and B_l with
    A_0 = B_0 = A_{N+1} = B_{N+1} = 0. ``alpha`` overrides the schedule
    lookup, which integrators need at interval boundaries.
    """
    p = ctx.params
    if alpha is None:
        alpha = schedule_alpha(t / ctx.time_unit, ctx.schedule)
    hop = _hoppings(alpha, p)
    a, b = x[0::2], x[1::2]
    onsite = p.epsilon - 1j * p.gamma
    da = hop.j1 * b + onsite * a
    da[1:] += hop.j2 * b[:-1]
    db = hop.j1 * a + onsite * b
    db[:-1] += hop.j2 * a[1:]
    out = np.empty_like(x, dtype=complex)
    out[0::2] = da
    out[1::2] = db
    out += drive_vector(t, ctx.pump, p.n_cells)
    return -1j * out


def _steps(length: float, step: float, what: str) -> int:
    n = round(length / step)
    if abs(n * step - length) > 1e-9 * max(1.0, abs(length)):
        raise ValueError(f"{what}: step {step} does not divide interval length {length}")
    return n


def _sample_times(t_end: float, stride: float, ctx: RunContext) -> np.ndarray:
    n = _steps(t_end, stride, "sample stride")
    for ts in (ctx.schedule.t_a, ctx.schedule.t_b):
        if ts < t_end:
            _steps(ts, stride, "sample stride vs switch time")
    return np.arange(n + 1) * stride


def _as_amps(x0, m: int) -> np.ndarray:
    amps = np.asarray(x0.amps if isinstance(x0, StateVector) else x0, dtype=complex).copy()
    if amps.shape != (m,):
        raise ValueError(f"initial state must have length {m}, got {amps.shape}")
    return amps


def rk4_evolve(x0, t_end: float, dt: float, ctx: RunContext,
               stride: float = 1.0 / 16) -> Trajectory:
    """Fixed-step RK4 from t=0 to ``t_end`` (all in units of T_p).

    ``dt`` must tile every constant-phase interval exactly, so no step ever
    straddles a switch; ``stride`` must be a multiple of ``dt``.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    m = ctx.params.n_sites
    x = _as_amps(x0, m)
    times = _sample_times(t_end, stride, ctx)
    every = _steps(stride, dt, "sample stride vs dt")
    unit = ctx.time_unit
    h = dt * unit
    out = np.empty((times.shape[0], m), dtype=complex)
    out[0] = x
    k_out = 1
    step = 0
    for lo, hi, alpha in ctx.schedule.intervals(t_end):
        n = _steps(hi - lo, dt, f"dt vs interval [{lo}, {hi}]")
        n0 = round(lo / dt)
        for i in range(n):
            t = (n0 + i) * h
            k1 = rhs(t, x, ctx, alpha)
            k2 = rhs(t + 0.5 * h, x + 0.5 * h * k1, ctx, alpha)
            k3 = rhs(t + 0.5 * h, x + 0.5 * h * k2, ctx, alpha)
            k4 = rhs(t + h, x + h * k3, ctx, alpha)
            x = x + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
            step += 1
            if step % every == 0:
                out[k_out] = x
                k_out += 1
    return Trajectory(times, out, ctx, "rk4")


def _phi1(z: np.ndarray) -> np.ndarray:
    """(exp(z) - 1)/z, equal to 1 at z = 0."""
    z = np.asarray(z, dtype=complex)
    safe = np.where(z == 0, 1.0, z)
    return np.where(z == 0, 1.0, np.expm1(safe) / safe)


def _modal_advance(c0, tau, t0, v, lam, gamma, drives):
    mu = lam - 1j * gamma
    decay = np.exp(-1j * mu * tau)
    c = decay * c0
    for site, amp, w in drives:
        g = v[site, :] * amp
        z = -1j * (w - mu) * tau
        if gamma == 0:
            z = np.where(np.abs(lam - w) < SECULAR_TOL, 0.0, z)
        c = c - 1j * g * np.exp(-1j * w * t0) * tau * decay * _phi1(z)
    return c


def modal_evolve(x0, t_end: float, ctx: RunContext, stride: float = 1.0 / 16) -> Trajectory:
    """Exact piecewise solution in the eigenbasis of the Hermitian part.

    Each mode obeys ``dc/dt = -i(lam - i*gamma) c - i g exp(-i w t)``, solved
    from the interval start ``t0`` as
    ``c(t) = e^{-i mu tau} [c(t0) - i g e^{-i w t0} tau phi1(-i(w - mu) tau)]``
    with ``phi1(z) = (e^z - 1)/z``. This reduces to the particular coefficient
    ``-g/(lam - w - i gamma)`` off resonance and to the secular growth
    ``-i g tau`` on an undamped resonance.
    """
    p = ctx.params
    m = p.n_sites
    x = _as_amps(x0, m)
    times = _sample_times(t_end, stride, ctx)
    unit = ctx.time_unit
    drives = ctx.pump.terms(m)
    out = np.empty((times.shape[0], m), dtype=complex)
    out[0] = x
    for lo, hi, alpha in ctx.schedule.intervals(t_end):
        decomp = eig_selfadjoint(hermitian_part(alpha, p))
        v, lam = decomp.vectors, decomp.values
        c0 = v.T @ x
        t0 = lo * unit
        sel = np.nonzero((times > lo + 1e-12) & (times <= hi + 1e-12))[0]
        for k in sel:
            out[k] = v @ _modal_advance(c0, times[k] * unit - t0, t0, v, lam, p.gamma, drives)
        x = v @ _modal_advance(c0, hi * unit - t0, t0, v, lam, p.gamma, drives)
    return Trajectory(times, out, ctx, "modal")


def initial_state(tag: str, n_cells: int) -> np.ndarray:
    """Amplitudes for one of :data:`INITIAL_CONDITIONS` (edge excitations have amplitude 1)."""
    if tag not in INITIAL_CONDITIONS:
        raise ValueError(f"unknown initial condition {tag!r}; expected one of {INITIAL_CONDITIONS}")
    x = np.zeros(2 * n_cells, dtype=complex)
    if tag in ("both_edges", "first_edge"):
        x[0] = 1.0
    if tag in ("both_edges", "last_edge"):
        x[-1] = 1.0
    return x


@dataclass(frozen=True)
class ProtocolConfig:
    """Everything needed to reproduce one run."""

    context: RunContext = field(default_factory=RunContext)
    init: str = "vacuum"
    t_end: float = 40.0
    dt: float = 1.0 / 256
    sample_stride: float = 1.0 / 16
    solver: str = "modal"

    def with_(self, **changes) -> "ProtocolConfig":
        return replace(self, **changes)


def run_protocol(config: ProtocolConfig) -> Trajectory:
    ctx = config.context
    x0 = initial_state(config.init, ctx.params.n_cells)
    if config.solver == "modal":
        return modal_evolve(x0, config.t_end, ctx, config.sample_stride)
    if config.solver == "rk4":
        return rk4_evolve(x0, config.t_end, config.dt, ctx, config.sample_stride)
    raise ValueError(f"unknown solver {config.solver!r}; expected 'modal' or 'rk4'")
