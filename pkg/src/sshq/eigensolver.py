"""Dense symmetric eigendecomposition and spectrum / edge-state analyses.

Damping only shifts every level by ``-i*gamma``, so all spectral work here is
done on the real symmetric part of the Hamiltonian.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .model import LatticeParams, hermitian_part

__all__ = [
    "EigenDecomposition",
    "Parity",
    "EdgeStateReport",
    "NoMidgapPair",
    "eig_selfadjoint",
    "decompose",
    "spectrum_sweep",
    "bulk_gap",
    "classify_edge_states",
    "superpose_states",
    "mirror_parity",
]

SYMMETRY_TOL = 1e-12
# levels closer than this are treated as one degenerate cluster
DEGENERACY_TOL = 1e-8


@dataclass(frozen=True)
class EigenDecomposition:
    values: np.ndarray
    vectors: np.ndarray
    alpha: float = float("nan")

    @property
    def size(self) -> int:
        return self.values.shape[0]


class Parity(str, Enum):
    SYMMETRIC = "symmetric"
    ANTISYMMETRIC = "antisymmetric"


@dataclass(frozen=True)
class EdgeStateReport:
    midgap_indices: tuple[int, int]
    splitting: float
    edge_weight: float
    parity: tuple[Parity, Parity]
    has_midgap_pair: bool = True


class NoMidgapPair(Exception):
    """Raised on request when the two states nearest epsilon are not edge-bound."""


def _fix_phase(vectors: np.ndarray) -> np.ndarray:
    idx = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[idx, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def _mirror(v: np.ndarray) -> np.ndarray:
    return v[::-1]


def _resolve_degenerate(values: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """Rotate each near-degenerate cluster into mirror-parity eigenstates.

    Within a cluster, symmetric combinations come first. The mirror operator
    commutes with the open SSH chain of even length, so this picks a unique
    basis where the eigensolver's choice would be arbitrary.
    """
    m = values.shape[0]
    vectors = vectors.copy()
    i = 0
    while i < m:
        j = i + 1
        while j < m and values[j] - values[j - 1] < DEGENERACY_TOL:
            j += 1
        if j - i > 1:
            block = vectors[:, i:j]
            p = block.T @ block[::-1, :]
            p = 0.5 * (p + p.T)
            w, u = np.linalg.eigh(p)
            # eigh is ascending: put +1 (symmetric) states first
            u = u[:, ::-1]
            vectors[:, i:j] = block @ u
        i = j
    return vectors


def eig_selfadjoint(matrix, alpha: float = float("nan")) -> EigenDecomposition:
    """Eigen-decompose a real symmetric matrix.

    Eigenvalues come back ascending and each eigenvector is scaled so that
    its largest-magnitude entry is positive. Near-degenerate levels are
    rotated into mirror-parity states (symmetric first).

    Raises
    ------
    ValueError
        If the matrix is not square, not real, or not symmetric to 1e-12.
    """
    a = np.asarray(matrix)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if np.iscomplexobj(a):
        if np.max(np.abs(a.imag), initial=0.0) > SYMMETRY_TOL:
            raise ValueError("matrix has a nonzero imaginary part")
        a = a.real
    a = a.astype(float)
    if np.max(np.abs(a - a.T), initial=0.0) > SYMMETRY_TOL:
        raise ValueError("matrix is not symmetric")
    values, vectors = np.linalg.eigh(a)
    vectors = _resolve_degenerate(values, vectors)
    vectors = _fix_phase(vectors)
    return EigenDecomposition(values, vectors, alpha)


def decompose(alpha: float, params: LatticeParams) -> EigenDecomposition:
    """Decomposition of the damping-free chain at phase ``alpha``."""
    return eig_selfadjoint(hermitian_part(alpha, params), alpha)


def spectrum_sweep(alphas, params: LatticeParams) -> np.ndarray:
    """Rows of ``(alpha, E_1, ..., E_M)``; damping is forced to zero."""
    params = params.with_gamma(0.0)
    rows = []
    for alpha in np.asarray(alphas, dtype=float):
        rows.append(np.concatenate([[alpha], decompose(float(alpha), params).values]))
    return np.array(rows)


def bulk_gap(values: np.ndarray, epsilon: float, midgap: bool = False) -> float:
    """Width of the band gap around ``epsilon``.

    With ``midgap=True`` the two levels nearest epsilon are excluded first,
    giving the gap between the bulk bands around an in-gap edge pair.
    """
    vals = np.sort(np.asarray(values))
    if midgap:
        near = np.argsort(np.abs(vals - epsilon))[:2]
        vals = np.delete(vals, near)
    below = vals[vals <= epsilon]
    above = vals[vals > epsilon]
    if below.size == 0 or above.size == 0:
        return float("nan")
    return float(above.min() - below.max())


def mirror_parity(v: np.ndarray) -> Parity:
    return Parity.SYMMETRIC if float(v @ _mirror(v)) >= 0 else Parity.ANTISYMMETRIC


def classify_edge_states(decomp: EigenDecomposition, epsilon: float = 1.0,
                         strict: bool = False) -> EdgeStateReport:
    """Report the two states nearest ``epsilon``.

    ``edge_weight`` is the mean over the pair of each state's weight on the
    two end sites. When it falls below 0.5 the report is flagged with
    ``has_midgap_pair=False`` (or :class:`NoMidgapPair` is raised when
    ``strict``).
    """
    order = np.argsort(np.abs(decomp.values - epsilon), kind="stable")[:2]
    i, j = sorted(int(k) for k in order)
    vi, vj = decomp.vectors[:, i], decomp.vectors[:, j]
    weight = 0.5 * sum(v[0] ** 2 + v[-1] ** 2 for v in (vi, vj))
    ok = weight >= 0.5
    if strict and not ok:
        raise NoMidgapPair(f"end-site weight {weight:.3g} < 0.5 at alpha={decomp.alpha}")
    return EdgeStateReport(
        midgap_indices=(i, j),
        splitting=float(abs(decomp.values[j] - decomp.values[i])),
        edge_weight=float(weight),
        parity=(mirror_parity(vi), mirror_parity(vj)),
        has_midgap_pair=bool(ok),
    )


def superpose_states(decomp: EigenDecomposition, i: int, j: int, sign: int = 1) -> np.ndarray:
    """``(psi_i + sign*psi_j)/sqrt(2)`` using 1-based state numbers.

    State 20 is the highest filled and 21 the lowest empty level of the
    40-site chain at half filling.
    """
    m = decomp.size
    for k in (i, j):
        if not 1 <= k <= m:
            raise IndexError(f"state number {k} out of range 1..{m}")
    if i == j:
        raise ValueError("i and j must differ")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    v = (decomp.vectors[:, i - 1] + sign * decomp.vectors[:, j - 1]) / np.sqrt(2.0)
    return v / np.linalg.norm(v)
