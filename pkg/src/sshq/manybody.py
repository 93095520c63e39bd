"""Brute-force many-body reference for small chains.

Builds a quadratic Hamiltonian in the fixed-particle-number occupation basis,
and computes reduced density matrices by an explicit fermionic partial trace.
Meant as an independent check of the correlation-matrix route; everything
here scales as 2**M, so keep M below ~12.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np
from scipy.linalg import expm

__all__ = ["FockSector", "ground_state", "evolve", "reduced_density_matrix", "von_neumann"]


class FockSector:
    """Occupation basis with ``n_particles`` fermions on ``n_sites`` modes."""

    def __init__(self, n_sites: int, n_particles: int):
        self.n_sites = n_sites
        self.n_particles = n_particles
        self.states = [sum(1 << i for i in occ) for occ in combinations(range(n_sites), n_particles)]
        self.index = {s: k for k, s in enumerate(self.states)}

    @property
    def dim(self) -> int:
        return len(self.states)

    def hamiltonian(self, h: np.ndarray) -> np.ndarray:
        """Matrix of ``sum_ij h[i, j] c_i^dagger c_j`` in this sector."""
        h = np.asarray(h)
        mat = np.zeros((self.dim, self.dim), dtype=complex)
        m = self.n_sites
        for col, s in enumerate(self.states):
            for j in range(m):
                if not s >> j & 1:
                    continue
                for i in range(m):
                    if h[i, j] == 0:
                        continue
                    if i == j:
                        mat[col, col] += h[i, i]
                        continue
                    if s >> i & 1:
                        continue
                    # c_i^dagger c_j with the Jordan-Wigner string between i and j
                    lo, hi = min(i, j), max(i, j)
                    between = bin(s >> (lo + 1) & ((1 << (hi - lo - 1)) - 1)).count("1")
                    t = (s & ~(1 << j)) | (1 << i)
                    mat[self.index[t], col] += h[i, j] * (-1) ** between
        return mat


def ground_state(sector: FockSector, h: np.ndarray) -> tuple[float, np.ndarray]:
    w, v = np.linalg.eigh(sector.hamiltonian(h))
    if sector.dim > 1 and w[1] - w[0] < 1e-9:
        raise ValueError("many-body ground state is degenerate")
    return float(w[0]), v[:, 0]


def evolve(sector: FockSector, h: np.ndarray, psi: np.ndarray, t: float) -> np.ndarray:
    return expm(-1j * t * sector.hamiltonian(h)) @ psi


def _reorder_sign(occupied: list[int], rank: dict[int, int]) -> int:
    keys = [rank[o] for o in occupied]
    inversions = sum(1 for a in range(len(keys)) for b in range(a + 1, len(keys)) if keys[a] > keys[b])
    return -1 if inversions % 2 else 1


def reduced_density_matrix(sector: FockSector, psi: np.ndarray, sites) -> np.ndarray:
    """Fermionic reduced state of ``sites``.

    The modes are first reordered so that ``sites`` come first (picking up
    the permutation sign of the occupied creation operators); tracing out the
    trailing modes is then an ordinary partial trace.
    """
    sites = list(sites)
    rest = [s for s in range(sector.n_sites) if s not in sites]
    order = sites + rest
    rank = {s: k for k, s in enumerate(order)}
    k = len(sites)
    amp = np.zeros((2 ** k, 2 ** (sector.n_sites - k)), dtype=complex)
    for s, a in zip(sector.states, psi):
        occ = [i for i in range(sector.n_sites) if s >> i & 1]
        sign = _reorder_sign(occ, rank)
        left = sum(1 << p for p, site in enumerate(sites) if s >> site & 1)
        right = sum(1 << p for p, site in enumerate(rest) if s >> site & 1)
        amp[left, right] += sign * a
    return amp @ amp.conj().T


def von_neumann(rho: np.ndarray) -> float:
    w = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
    w = w[w > 1e-14]
    return float(-np.sum(w * np.log(w)))
