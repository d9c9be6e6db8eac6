"""Design matrices on arbitrary grids, naive Gram products, and spectra.

The eigensolver here is a cyclic Jacobi iteration with a deterministic
round-robin rotation order. It is the single spectral oracle used throughout
the package; results are independent of thread count and BLAS build.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .basis import Grid

__all__ = [
    "Basis",
    "DesignMatrix",
    "SpectralReport",
    "design_matrix",
    "gram_naive",
    "jacobi_eigenvalues",
    "dominant_eigenvalue",
    "spectral_report",
    "lebesgue_constant",
]


class Basis(str, Enum):
    CHEBYSHEV = "chebyshev"
    LEGENDRE = "legendre"


@dataclass(frozen=True)
class DesignMatrix:
    """Dense (N+1) x (M+1) matrix of basis polynomials at grid points."""

    entries: np.ndarray
    basis: Basis
    grid: Grid

    @property
    def degree(self) -> int:
        return self.entries.shape[1] - 1


@dataclass(frozen=True)
class SpectralReport:
    sigma_max: float
    sigma_min: float
    cond2: float


def design_matrix(grid: Grid, degree: int, basis: Basis,
                  max_degree_factor: float = 10.0) -> DesignMatrix:
    """Fill the design matrix column-by-column with the three-term recurrence.

    The guard degree <= max_degree_factor * sqrt(grid size) rejects degrees for
    which the columns are so far from independence that the result is useless.
    """
    basis = Basis(basis)
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    guard = max_degree_factor * math.sqrt(grid.points.size)
    if degree > guard:
        raise ValueError(
            f"degree {degree} exceeds the misuse guard "
            f"{max_degree_factor}*sqrt(grid size) = {guard:.1f}"
        )
    x = grid.points
    v = np.empty((x.size, degree + 1))
    v[:, 0] = 1.0
    if degree >= 1:
        v[:, 1] = x
    if basis == Basis.CHEBYSHEV:
        for k in range(2, degree + 1):
            v[:, k] = 2.0 * x * v[:, k - 1] - v[:, k - 2]
    else:
        for k in range(2, degree + 1):
            v[:, k] = ((2 * k - 1) * x * v[:, k - 1] - (k - 1) * v[:, k - 2]) / k
    return DesignMatrix(v, basis, grid)


def gram_naive(v: DesignMatrix) -> np.ndarray:
    """Exact normal-equation matrix V^T V, one pairwise-summed dot per entry.

    Each entry is reduced with numpy's pairwise summation over a contiguous
    product vector, which keeps this path trustworthy as an oracle up to
    N ~ 1e6. The upper triangle is computed and mirrored, so the result is
    symmetric to the bit.
    """
    e = v.entries
    cols = e.shape[1]
    g = np.empty((cols, cols))
    for m in range(cols):
        col_m = e[:, m]
        for n in range(m, cols):
            s = float(np.sum(col_m * e[:, n]))
            g[m, n] = s
            g[n, m] = s
    return g


@lru_cache(maxsize=64)
def _round_robin_rounds(n: int):
    """Partition all index pairs of {0..n-1} into rounds of disjoint pairs."""
    m = n + (n & 1)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            if a < n and b < n:
                ps.append(min(a, b))
                qs.append(max(a, b))
        rounds.append((np.array(ps), np.array(qs)))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def _apply_rotations(a: np.ndarray, p: np.ndarray, q: np.ndarray) -> None:
    """Annihilate the disjoint entry set {(p_i, q_i)} with simultaneous
    Jacobi rotations (exact because the index pairs are disjoint)."""
    apq = a[p, q]
    app = a[p, p]
    aqq = a[q, q]
    nonzero = np.abs(apq) > 0.0
    safe = np.where(nonzero, apq, 1.0)
    tau = (aqq - app) / (2.0 * safe)
    t = np.sign(tau) / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
    t = np.where(tau == 0.0, 1.0, t)
    t = np.where(nonzero, t, 0.0)
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c

    rows_p = a[p, :].copy()
    rows_q = a[q, :].copy()
    a[p, :] = c[:, None] * rows_p - s[:, None] * rows_q
    a[q, :] = s[:, None] * rows_p + c[:, None] * rows_q
    cols_p = a[:, p].copy()
    cols_q = a[:, q].copy()
    a[:, p] = cols_p * c - cols_q * s
    a[:, q] = cols_p * s + cols_q * c
    a[p, q] = 0.0
    a[q, p] = 0.0


def jacobi_eigenvalues(a, rel_tol: float = 1e-13, max_sweeps: int = 100) -> np.ndarray:
    """All eigenvalues of a symmetric matrix, ascending, by cyclic Jacobi.

    Sweeps a fixed round-robin ordering of index pairs until the off-diagonal
    Frobenius norm falls below rel_tol times the matrix Frobenius norm. Small
    eigenvalues of positive definite matrices are resolved with high relative
    accuracy, which the conditioning checks rely on.
    """
    a = np.array(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    n = a.shape[0]
    if n == 1:
        return a[0, :1].copy()
    a = 0.5 * (a + a.T)
    fro = float(np.linalg.norm(a))
    if fro == 0.0:
        return np.zeros(n)
    rounds = _round_robin_rounds(n)
    scratch = np.empty_like(a)
    for _ in range(max_sweeps):
        # Off-diagonal norm summed directly: the difference fro^2 - sum(diag^2)
        # would drown the 1e-13 threshold in cancellation noise.
        np.copyto(scratch, a)
        np.fill_diagonal(scratch, 0.0)
        off_sq = float(np.sum(scratch * scratch))
        if off_sq <= (rel_tol * fro) ** 2:
            break
        for p, q in rounds:
            _apply_rotations(a, p, q)
    else:
        raise RuntimeError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
    return np.sort(np.diagonal(a).copy())


def dominant_eigenvalue(a: np.ndarray, rel_tol: float = 1e-13,
                        max_iter: int = 100000) -> float:
    """Largest eigenvalue of a symmetric matrix with nonnegative entries.

    Deterministic power iteration from the all-ones direction. For matrices
    with nonnegative entries the dominant eigenvector is itself nonnegative,
    so the start vector cannot be deficient. Used where only the top of the
    spectrum is needed and a full Jacobi pass would be wasteful.
    """
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    v = np.full(n, 1.0 / math.sqrt(n))
    theta = 0.0
    for _ in range(max_iter):
        w = a @ v
        theta = float(v @ w)
        resid = float(np.linalg.norm(w - theta * v))
        norm = float(np.linalg.norm(w))
        if norm == 0.0:
            return 0.0
        v = w / norm
        if resid <= rel_tol * max(abs(theta), 1e-300):
            return theta
    raise RuntimeError(f"power iteration did not converge in {max_iter} steps")


def spectral_report(g: np.ndarray) -> SpectralReport:
    """Singular-value summary of the design matrix whose Gram is g.

    sigma_max/min are the square roots of the extreme eigenvalues of g
    (clamped at zero); cond2 is their ratio, infinite when sigma_min is 0.
    """
    g = np.asarray(g, dtype=float)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise ValueError("expected a square Gram matrix")
    scale = float(np.max(np.abs(g)))
    if scale > 0 and float(np.max(np.abs(g - g.T))) > 1e-12 * scale:
        raise ValueError("Gram matrix is not symmetric to 1e-12 relative")
    lam = jacobi_eigenvalues(g)
    lam_max = max(float(lam[-1]), 0.0)
    lam_min = max(float(lam[0]), 0.0)
    sigma_max = math.sqrt(lam_max)
    sigma_min = math.sqrt(lam_min)
    cond2 = sigma_max / sigma_min if sigma_min > 0 else math.inf
    return SpectralReport(sigma_max, sigma_min, cond2)


def lebesgue_constant(grid: Grid, probe_count: int | None = None) -> float:
    """Probe-based lower bound on the Lebesgue constant of a node set.

    Evaluates sum_j |l_j(x)| over equispaced probes of [-1, 1], with each
    Lagrange basis polynomial computed by its direct product formula. Dense
    probing (no derivative-based maximization) slightly undershoots the true
    supremum, which callers account for.
    """
    nodes = grid.points
    n1 = nodes.size
    if np.unique(nodes).size != n1:
        raise ValueError("duplicate grid points")
    if probe_count is None:
        probe_count = max(10 * n1, 2000) + 1
    if probe_count < 10 * n1:
        raise ValueError(f"probe_count must be at least 10*(N+1) = {10 * n1}")
    probes = np.linspace(-1.0, 1.0, probe_count)
    diffs = probes[:, None] - nodes[None, :]
    total = np.zeros(probe_count)
    for j in range(n1):
        mask = np.arange(n1) != j
        numer = np.prod(diffs[:, mask], axis=1)
        denom = float(np.prod(nodes[j] - nodes[mask]))
        total += np.abs(numer / denom)
    return float(np.max(total))
