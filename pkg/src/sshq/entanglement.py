"""Free-fermion correlation matrices and entanglement entropies.

For a Slater determinant every reduced density matrix is Gaussian, so the
entropy of a block follows from the eigenvalues of the correlation matrix
restricted to that block.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .eigensolver import decompose, eig_selfadjoint
from .model import LatticeParams, hermitian_part

__all__ = [
    "CorrelationMatrix",
    "Partition",
    "ground_state_correlation",
    "correlation_from_orbitals",
    "restrict_correlation",
    "entropy_from_correlation",
    "binary_entropy",
    "disconnected_entropy",
    "disconnected_entropy_from_correlation",
    "evolve_correlation",
    "sd_dynamics",
    "sd_sweep",
]

CLAMP_TOL = 1e-9


@dataclass(frozen=True)
class CorrelationMatrix:
    """``entries[m, n] = <c_m^dagger c_n>`` over the chain sites in ``sites`` (0-based)."""

    entries: np.ndarray
    sites: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.sites)

    def trace(self) -> float:
        return float(np.trace(self.entries).real)


@dataclass(frozen=True)
class Partition:
    """Four contiguous blocks laid out A, B, D, C from left to right.

    ``A`` and ``C`` sit at the two ends of the chain, so AB is a connected
    region while BC is disconnected.
    """

    a: tuple[int, ...]
    b: tuple[int, ...]
    d: tuple[int, ...]
    c: tuple[int, ...]

    @classmethod
    def even(cls, n_sites: int) -> "Partition":
        if n_sites % 4:
            raise ValueError(f"equal four-way split needs 4 | n_sites, got {n_sites}")
        q = n_sites // 4
        return cls.from_sizes((q, q, q, q))

    @classmethod
    def from_sizes(cls, sizes) -> "Partition":
        if len(sizes) != 4 or any(int(s) < 1 for s in sizes):
            raise ValueError(f"need four positive block sizes, got {sizes!r}")
        edges = np.cumsum([0, *sizes])
        blocks = [tuple(range(edges[i], edges[i + 1])) for i in range(4)]
        return cls(*blocks)

    @property
    def n_sites(self) -> int:
        return len(self.a) + len(self.b) + len(self.d) + len(self.c)


def correlation_from_orbitals(orbitals: np.ndarray) -> CorrelationMatrix:
    """Correlation matrix of the Slater determinant of the given columns."""
    phi = np.asarray(orbitals)
    c = phi.conj() @ phi.T
    return CorrelationMatrix(c, tuple(range(phi.shape[0])))


def ground_state_correlation(params: LatticeParams, alpha: float,
                             n_particles: int | None = None) -> CorrelationMatrix:
    """Half-filled (by default) ground state of the damping-free chain.

    An exactly degenerate pair at the Fermi level is resolved by occupying
    the mirror-symmetric member, which the eigensolver orders first.
    """
    if params.gamma != 0:
        raise ValueError("ground-state correlations are defined for gamma = 0 only")
    n = params.n_cells if n_particles is None else n_particles
    decomp = decompose(alpha, params)
    return correlation_from_orbitals(decomp.vectors[:, :n])


def restrict_correlation(corr: CorrelationMatrix, sites) -> CorrelationMatrix:
    """Principal submatrix on ``sites`` (positions in ``corr.sites``' chain indexing)."""
    sites = tuple(int(s) for s in sites)
    lookup = {s: k for k, s in enumerate(corr.sites)}
    try:
        idx = [lookup[s] for s in sites]
    except KeyError as exc:
        raise IndexError(f"site {exc.args[0]} not in correlation matrix") from None
    return CorrelationMatrix(corr.entries[np.ix_(idx, idx)], sites)


def binary_entropy(zeta: np.ndarray) -> float:
    z = np.asarray(zeta, dtype=float)
    bad = (z < -CLAMP_TOL) | (z > 1 + CLAMP_TOL)
    if np.any(bad):
        raise ValueError(f"correlation eigenvalues outside [0, 1]: {z[bad]}")
    z = np.clip(z, 0.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        s = -(np.where(z > 0, z * np.log(z), 0.0) + np.where(z < 1, (1 - z) * np.log1p(-z), 0.0))
    return float(np.sum(s))


def entropy_from_correlation(corr: CorrelationMatrix) -> float:
    """Von Neumann entropy (natural log) of the block described by ``corr``."""
    if corr.size == 0:
        return 0.0
    h = np.asarray(corr.entries)
    zeta = np.linalg.eigvalsh(0.5 * (h + h.conj().T))
    return binary_entropy(zeta)


def disconnected_entropy_from_correlation(corr: CorrelationMatrix, partition: Partition) -> float:
    """``S_AB + S_BC - S_ABC - S_B`` for a full-chain correlation matrix."""
    def s(sites):
        return entropy_from_correlation(restrict_correlation(corr, sites))

    a, b, c = partition.a, partition.b, partition.c
    return s(a + b) + s(b + c) - s(a + b + c) - s(b)


def disconnected_entropy(params: LatticeParams, alpha: float,
                         partition: Partition | None = None) -> float:
    if partition is None:
        partition = Partition.even(params.n_sites)
    return disconnected_entropy_from_correlation(ground_state_correlation(params, alpha), partition)


def sd_sweep(params: LatticeParams, alphas, partition: Partition | None = None) -> np.ndarray:
    """Rows of ``(alpha, S^D)``."""
    return np.array([[a, disconnected_entropy(params, float(a), partition)]
                     for a in np.asarray(alphas, dtype=float)])


def _propagator(alpha_post: float, params: LatticeParams, t: float) -> np.ndarray:
    decomp = eig_selfadjoint(hermitian_part(alpha_post, params))
    v = decomp.vectors
    return (v * np.exp(-1j * decomp.values * t)) @ v.T


def evolve_correlation(c0: CorrelationMatrix, alpha_post: float, t: float,
                       params: LatticeParams, pumped: bool = False) -> CorrelationMatrix:
    """Heisenberg-picture evolution of a full-chain correlation matrix.

    With ``U = exp(-i h t)``, ``c_n(t) = sum_k U[n, k] c_k`` and therefore
    ``C(t) = conj(U) C0 U^T``.
    """
    if params.gamma != 0:
        raise ValueError("correlation evolution requires gamma = 0")
    if pumped:
        raise ValueError("correlation evolution requires an unpumped chain")
    if c0.sites != tuple(range(params.n_sites)):
        raise ValueError("evolve_correlation needs the full-chain correlation matrix")
    u = _propagator(alpha_post, params, t)
    return CorrelationMatrix(u.conj() @ c0.entries @ u.T, c0.sites)


def sd_dynamics(params: LatticeParams, t_grid, alpha_pre: float = 0.75 * math.pi,
                alpha_post: float = 0.5 * math.pi,
                partition: Partition | None = None) -> np.ndarray:
    """Rows of ``(t, S^D(t))`` after a sudden switch from ``alpha_pre`` to ``alpha_post`` at t=0.

    ``t`` is in physical time units (energy unit set to 1).
    """
    if partition is None:
        partition = Partition.even(params.n_sites)
    c0 = ground_state_correlation(params, alpha_pre)
    decomp = eig_selfadjoint(hermitian_part(alpha_post, params))
    v, e = decomp.vectors, decomp.values
    # C0 in the post-quench eigenbasis; each time step is then a phase twist
    c0_modal = v.T @ c0.entries @ v
    rows = []
    for t in np.asarray(t_grid, dtype=float):
        ph = np.exp(1j * e * t)
        ct = v @ (ph[:, None] * c0_modal * ph.conj()[None, :]) @ v.T
        rows.append([t, disconnected_entropy_from_correlation(CorrelationMatrix(ct, c0.sites), partition)])
    return np.array(rows)
