"""Occupation observables derived from sampled trajectories.

Site numbers in user-facing output are 1-based; odd sites form sublattice A
and even sites sublattice B.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import StateVector, Trajectory

__all__ = [
    "OccupationField",
    "site_populations",
    "sublattice_populations",
    "edge_weight",
    "mirror_asymmetry",
    "time_average",
    "plateau",
]


@dataclass(frozen=True)
class OccupationField:
    times: np.ndarray
    site_pop: np.ndarray
    total: np.ndarray

    @property
    def n_sites(self) -> int:
        return self.site_pop.shape[1]

    def window(self, t_lo: float, t_hi: float) -> "OccupationField":
        sel = (self.times >= t_lo - 1e-12) & (self.times <= t_hi + 1e-12)
        return OccupationField(self.times[sel], self.site_pop[sel], self.total[sel])


def site_populations(traj: Trajectory) -> OccupationField:
    if len(traj) == 0:
        raise ValueError("empty trajectory")
    pop = np.abs(traj.states) ** 2
    return OccupationField(np.asarray(traj.times), pop, pop.sum(axis=1))


def sublattice_populations(field: OccupationField) -> tuple[np.ndarray, np.ndarray]:
    """(odd-site, even-site) columns; odd means site 1, 3, ... in 1-based numbering."""
    return field.site_pop[:, 0::2], field.site_pop[:, 1::2]


def edge_weight(state) -> float:
    """Share of the total occupation sitting on the two end sites."""
    x = state.amps if isinstance(state, StateVector) else np.asarray(state)
    p = np.abs(x) ** 2
    total = p.sum()
    if total == 0:
        return 0.0
    return float((p[0] + p[-1]) / total)


def mirror_asymmetry(field: OccupationField) -> float:
    """Largest |P(n) - P(2N + 1 - n)| over all samples and sites."""
    p = field.site_pop
    if p.size == 0:
        return 0.0
    return float(np.max(np.abs(p - p[:, ::-1])))


def time_average(times: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Trapezoid-rule mean along the first axis."""
    times = np.asarray(times)
    if times.shape[0] < 2:
        return np.asarray(values)[0]
    return np.trapezoid(values, times, axis=0) / (times[-1] - times[0])


def plateau(field: OccupationField, last: float = 5.0) -> float:
    """Mean total population over the final ``last`` time units."""
    w = field.window(field.times[-1] - last, field.times[-1])
    return float(time_average(w.times, w.total))
