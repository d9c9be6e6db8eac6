"""Fast assembly of the equispaced Chebyshev normal equations.

On the equispaced grid, each Gram entry sum_k T_m(x_k) T_n(x_k) is a
trapezium-rule approximation of the analytic integral of T_m T_n, so the
entry equals the integral plus an endpoint term plus a correction series with
weighted-Bernoulli coefficients. The correction products depend only on
(m-n)^2 and (m+n)^2 (a Toeplitz-plus-Hankel structure), so the whole
(M+1) x (M+1) matrix assembles in O(M^2) work, independent of N.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .basis import Grid

__all__ = [
    "BernoulliWeights",
    "GramMethod",
    "GramSystem",
    "trapezium_error_matrix",
    "gram_fast",
    "rhs",
]

# B_{s+1}/(s+1)! for odd s; even-order corrections vanish identically.
_EXACT_WEIGHTS = {
    1: 1.0 / 12.0,
    3: -1.0 / 720.0,
    5: 1.0 / 30240.0,
    7: -1.0 / 1209600.0,
    9: 1.0 / 47900160.0,
}


class GramMethod(str, Enum):
    NAIVE = "naive"
    FAST = "fast"


@dataclass(frozen=True)
class BernoulliWeights:
    """Weighted Bernoulli numbers B_{s+1}/(s+1)! for the correction series.

    Exact values are tabulated for odd s <= 9. Beyond the table a six-term
    asymptotic form is used, which sidesteps overflow in B_{s+1} and (s+1)!
    for large s. The correction series is truncated at truncation_s; the
    default of 10 keeps every tabulated term and drops terms that are far
    below double-precision resolution whenever M <= sqrt(N)/2.
    """

    truncation_s: int = 10
    exact_table: dict = field(default_factory=lambda: dict(_EXACT_WEIGHTS))

    def asymptotic(self, s: int) -> float:
        """Six-term asymptotic value of B_{s+1}/(s+1)! for odd s."""
        if s % 2 == 0:
            raise ValueError("asymptotic form applies to odd s only")
        tail = sum(i ** -(s + 1) for i in range(1, 7))
        return (-1) ** ((s + 3) // 2) * 2.0 / (2.0 * math.pi) ** (s + 1) * tail

    def weight(self, s: int) -> float:
        if s < 1 or s % 2 == 0:
            raise ValueError("correction weights exist for odd s >= 1")
        if s in self.exact_table:
            return self.exact_table[s]
        return self.asymptotic(s)

    def orders(self, s_max: int) -> list[int]:
        """Odd correction orders s <= min(s_max, truncation_s)."""
        return list(range(1, min(s_max, self.truncation_s) + 1, 2))


@dataclass(frozen=True)
class GramSystem:
    """Normal-equation matrix with its provenance and diagnostics."""

    matrix: np.ndarray
    method: GramMethod
    m_degree: int
    n_samples: int
    correction_terms: np.ndarray | None = None
    subsampled_warning: bool = False


def trapezium_error_matrix(m_degree: int, n_samples: int,
                           weights: BernoulliWeights | None = None) -> np.ndarray:
    """Correction matrix for the trapezium-rule identity on the equispaced grid.

    Entry (m, n) is (2/N) * sum over odd s <= min(m+n-1, truncation_s) of

        [ prod_{j<s} ((m-n)^2 - j^2)/(N(j+1/2))
          + prod_{j<s} ((m+n)^2 - j^2)/(N(j+1/2)) ] * B_{s+1}/(s+1)!

    and exactly 0 when m+n is odd or m+n <= 1. The two products are shared
    across entries through tables keyed by (m-n)^2 and (m+n)^2, so total work
    is O(M^2) and table memory O(M * truncation_s).
    """
    if m_degree < 1:
        raise ValueError("correction matrix needs degree M >= 1")
    if n_samples < 1:
        raise ValueError("sample count N must be positive")
    if weights is None:
        weights = BernoulliWeights()
    if n_samples < 4 * m_degree * m_degree:
        warnings.warn(
            f"N={n_samples} < 4*M^2={4 * m_degree * m_degree}: the truncated "
            "correction series is only guaranteed accurate for M <= sqrt(N)/2",
            stacklevel=2,
        )

    n = float(n_samples)
    s_list = weights.orders(2 * m_degree - 1)
    # Product tables over the distinct squared values: diff_sq for |m-n|,
    # sum_sq for m+n. Built by a two-factor recurrence from one odd order
    # to the next.
    diff_sq = np.arange(m_degree + 1, dtype=float) ** 2
    sum_sq = np.arange(2 * m_degree + 1, dtype=float) ** 2
    prod_diff, prod_sum = [], []
    cur_d = diff_sq / (0.5 * n)
    cur_s = sum_sq / (0.5 * n)
    prev_s = 1
    for s in s_list:
        if s > prev_s:
            for j in range(prev_s, s):
                cur_d = cur_d * ((diff_sq - j * j) / (n * (j + 0.5)))
                cur_s = cur_s * ((sum_sq - j * j) / (n * (j + 0.5)))
        prod_diff.append(cur_d.copy())
        prod_sum.append(cur_s.copy())
        prev_s = s

    idx = np.arange(m_degree + 1)
    d_idx = np.abs(idx[:, None] - idx[None, :])
    t_idx = idx[:, None] + idx[None, :]
    err = np.zeros((m_degree + 1, m_degree + 1))
    for k, s in enumerate(s_list):
        active = t_idx >= s + 1
        term = (prod_diff[k][d_idx] + prod_sum[k][t_idx]) * weights.weight(s)
        err += np.where(active, term, 0.0)
    err *= 2.0 / n
    err[(t_idx % 2) == 1] = 0.0
    err[t_idx <= 1] = 0.0
    return err


def gram_fast(m_degree: int, n_samples: int,
              weights: BernoulliWeights | None = None) -> GramSystem:
    """Equispaced Chebyshev Gram matrix in O(M^2), independent of N.

    For m+n even the entry is N/(2(1-(m+n)^2)) + N/(2(1-(m-n)^2)) + 1 plus
    N/2 times the correction matrix; entries with m+n odd vanish by the
    antisymmetry of the grid. The (0,0) entry needs no special handling: the
    two analytic terms contribute N/2 each, giving N+1 exactly.
    """
    if m_degree < 0:
        raise ValueError("degree must be nonnegative")
    if n_samples < 1:
        raise ValueError("sample count N must be positive")
    n = float(n_samples)
    if m_degree == 0:
        return GramSystem(np.array([[n + 1.0]]), GramMethod.FAST, 0, n_samples,
                          correction_terms=np.zeros((1, 1)))

    idx = np.arange(m_degree + 1, dtype=float)
    t = idx[:, None] + idx[None, :]
    d = idx[:, None] - idx[None, :]
    odd = (t.astype(int) % 2) == 1
    with np.errstate(divide="ignore"):
        analytic = n / (2.0 * (1.0 - t * t)) + n / (2.0 * (1.0 - d * d)) + 1.0
    err = trapezium_error_matrix(m_degree, n_samples, weights)
    g = analytic + 0.5 * n * err
    g[odd] = 0.0
    subsampled = n_samples < 4 * m_degree * m_degree
    return GramSystem(g, GramMethod.FAST, m_degree, n_samples,
                      correction_terms=err, subsampled_warning=subsampled)


def rhs(grid: Grid, samples, m_degree: int, chunk: int = 65536) -> np.ndarray:
    """Right-hand side T_M(x)^T y by streaming the Chebyshev recurrence.

    Runs the three-term recurrence over grid chunks, accumulating one
    pairwise-summed dot product per degree, so the cost is O(MN) time with
    O(M + chunk) extra space and a fixed summation order.
    """
    y = np.asarray(samples, dtype=float)
    x = grid.points
    if y.shape != x.shape:
        raise ValueError(
            f"got {y.size} samples for a grid of {x.size} points"
        )
    if m_degree < 0:
        raise ValueError("degree must be nonnegative")
    b = np.zeros(m_degree + 1)
    for lo in range(0, x.size, chunk):
        xc = x[lo:lo + chunk]
        yc = y[lo:lo + chunk]
        b[0] += float(np.sum(yc))
        if m_degree == 0:
            continue
        t_prev = np.ones_like(xc)
        t_cur = xc
        b[1] += float(np.sum(xc * yc))
        for k in range(2, m_degree + 1):
            t_prev, t_cur = t_cur, 2.0 * xc * t_cur - t_prev
            b[k] += float(np.sum(t_cur * yc))
    return b
