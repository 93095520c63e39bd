"""Static lattice parameters, optical-lattice hopping amplitudes and the SSH matrix."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

__all__ = [
    "EnergyUnit",
    "LatticeParams",
    "HoppingSet",
    "QuenchSchedule",
    "hopping_amplitudes",
    "build_hamiltonian",
    "hermitian_part",
    "schedule_alpha",
    "PAPER_SCHEDULE",
    "TRIVIAL_QUENCH_SCHEDULE",
]


class EnergyUnit(str, Enum):
    """Label for the energy unit; numerics do not depend on it."""

    PUMP_FREQUENCY = "pump-frequency"
    BARE_J = "bare-J"


@dataclass(frozen=True)
class LatticeParams:
    """Static description of the chain.

    Only the ratio ``mu/k**2`` enters the hopping formulas, so that is all
    that is stored.
    """

    n_cells: int = 20
    epsilon: float = 1.0
    gamma: float = 0.0
    v0: float = 0.125
    mu_k2: float = 0.25
    energy_unit_label: EnergyUnit = EnergyUnit.PUMP_FREQUENCY

    def __post_init__(self):
        if int(self.n_cells) != self.n_cells or self.n_cells < 1:
            raise ValueError(f"n_cells must be a positive integer, got {self.n_cells!r}")
        if not self.gamma >= 0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma!r}")
        if not self.v0 > 0:
            raise ValueError(f"v0 must be > 0, got {self.v0!r}")
        if not self.mu_k2 > 0:
            raise ValueError(f"mu_k2 must be > 0, got {self.mu_k2!r}")

    @property
    def n_sites(self) -> int:
        return 2 * self.n_cells

    def with_gamma(self, gamma: float) -> "LatticeParams":
        return LatticeParams(self.n_cells, self.epsilon, gamma, self.v0, self.mu_k2,
                             self.energy_unit_label)


@dataclass(frozen=True)
class HoppingSet:
    j1: float
    j2: float
    omega_vib: float
    delta1: float
    delta2: float


@dataclass(frozen=True)
class QuenchSchedule:
    """Piecewise-constant lattice phase: initial on [0, t_a], mid on (t_a, t_b], final after.

    Switch times are in units of the drive period (or 2*pi/J without a pump).
    """

    alpha_initial: float = 0.75 * math.pi
    alpha_mid: float = 0.5 * math.pi
    alpha_final: float = 0.75 * math.pi
    t_a: float = 10.0
    t_b: float = 30.0

    def __post_init__(self):
        if not 0 <= self.t_a <= self.t_b:
            raise ValueError(f"need 0 <= t_a <= t_b, got t_a={self.t_a}, t_b={self.t_b}")

    @classmethod
    def constant(cls, alpha: float) -> "QuenchSchedule":
        """No quench: the same phase on every interval."""
        return cls(alpha, alpha, alpha)

    def intervals(self, t_end: float) -> list[tuple[float, float, float]]:
        """(start, stop, alpha) for each non-empty interval up to ``t_end``."""
        bounds = [(0.0, self.t_a, self.alpha_initial),
                  (self.t_a, self.t_b, self.alpha_mid),
                  (self.t_b, math.inf, self.alpha_final)]
        out = []
        for lo, hi, alpha in bounds:
            hi = min(hi, t_end)
            if hi > lo:
                out.append((lo, hi, alpha))
        return out


PAPER_SCHEDULE = QuenchSchedule()
TRIVIAL_QUENCH_SCHEDULE = QuenchSchedule(0.75 * math.pi, 0.25 * math.pi, 0.75 * math.pi)


def _delta1(alpha: float, params: LatticeParams) -> float:
    c = math.cos(alpha)
    arg = min(1.0, max(-1.0, c / 2.0))
    return math.acos(arg) * (8.0 * params.v0 * params.mu_k2 * (4.0 - c * c)) ** 0.25


def hopping_amplitudes(alpha: float, params: LatticeParams) -> HoppingSet:
    """Intra- and inter-cell hoppings from the harmonic-well overlap formulas.

    Parameters
    ----------
    alpha : float
        Relative laser phase in radians, within [0, pi].
    params : LatticeParams
        Supplies ``v0`` and ``mu_k2``.
    """
    if not 0.0 <= alpha <= math.pi:
        raise ValueError(f"alpha must lie in [0, pi], got {alpha!r}")
    c = math.cos(alpha)
    omega = math.sqrt(8.0 * params.v0 / params.mu_k2 * (4.0 - c * c))
    d1 = _delta1(alpha, params)
    d2 = _delta1(math.pi - alpha, params)

    def amp(d):
        return 0.5 * omega * math.exp(-d * d) * (d * d + 0.5)

    return HoppingSet(amp(d1), amp(d2), omega, d1, d2)


def build_hamiltonian(hoppings: HoppingSet, params: LatticeParams) -> np.ndarray:
    """Dense open-chain matrix in the order (1,A),(1,B),...,(N,B).

    Diagonal is ``epsilon - i*gamma``; bonds alternate j1, j2, ..., j1.
    """
    m = params.n_sites
    bonds = np.where(np.arange(m - 1) % 2 == 0, hoppings.j1, hoppings.j2)
    h = np.zeros((m, m), dtype=complex)
    h[np.arange(m), np.arange(m)] = params.epsilon - 1j * params.gamma
    h[np.arange(m - 1), np.arange(1, m)] = bonds
    h[np.arange(1, m), np.arange(m - 1)] = bonds
    return h


def hermitian_part(alpha: float, params: LatticeParams) -> np.ndarray:
    """Real symmetric matrix at phase ``alpha`` with the damping stripped."""
    h = build_hamiltonian(hopping_amplitudes(alpha, params), params)
    return h.real.copy()


def schedule_alpha(t: float, schedule: QuenchSchedule) -> float:
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t!r}")
    if t <= schedule.t_a:
        return schedule.alpha_initial
    if t <= schedule.t_b:
        return schedule.alpha_mid
    return schedule.alpha_final
