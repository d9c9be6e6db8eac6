"""Chebyshev and Legendre polynomial evaluation and standard grids on [-1, 1].

All evaluation routines use three-term recurrences in 64-bit floating point so
that a single code path serves both fitting on [-1, 1] and evaluation beyond
the interval (where first-kind Chebyshev polynomials grow but remain exact
degree-k polynomials).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "GridKind",
    "Grid",
    "ChebyshevSeries",
    "LegendreSeries",
    "SampleSet",
    "cheb_eval",
    "legendre_eval",
    "clenshaw_eval",
    "make_grid",
]


class GridKind(str, Enum):
    EQUISPACED = "equispaced"
    CHEBYSHEV_FIRST_KIND = "chebyshev-first-kind"
    ARBITRARY = "arbitrary"


def _freeze(a) -> np.ndarray:
    out = np.array(a, dtype=float)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class Grid:
    """Ordered abscissae in [-1, 1]; immutable and safe to share."""

    points: np.ndarray
    kind: GridKind = GridKind.ARBITRARY

    def __post_init__(self):
        object.__setattr__(self, "points", _freeze(self.points))
        pts = self.points
        if pts.ndim != 1 or pts.size == 0:
            raise ValueError("grid needs a 1-d, non-empty point vector")
        if np.any(np.diff(pts) <= 0):
            raise ValueError("grid points must be strictly increasing")

    @property
    def n(self) -> int:
        """Number of points minus one (N for an N+1-point grid)."""
        return self.points.size - 1

    def __len__(self) -> int:
        return self.points.size


@dataclass(frozen=True)
class ChebyshevSeries:
    """Coefficients c_0..c_M of sum_k c_k T_k(x); degree M = len - 1."""

    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _freeze(self.coeffs))
        if self.coeffs.ndim != 1 or self.coeffs.size == 0:
            raise ValueError("series needs at least one coefficient")

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, x):
        return clenshaw_eval(self, x)


@dataclass(frozen=True)
class LegendreSeries:
    """Coefficients c_0..c_M of sum_k c_k P_k(x)."""

    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _freeze(self.coeffs))
        if self.coeffs.ndim != 1 or self.coeffs.size == 0:
            raise ValueError("series needs at least one coefficient")

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, x):
        c = self.coeffs
        x = np.asarray(x, dtype=float)
        acc = np.full_like(x, c[0], dtype=float)
        if c.size == 1:
            return acc if acc.ndim else float(acc)
        p_prev = np.ones_like(x)
        p_cur = x.astype(float)
        acc = acc + c[1] * p_cur
        for k in range(1, c.size - 1):
            p_next = ((2 * k + 1) * x * p_cur - k * p_prev) / (k + 1)
            acc = acc + c[k + 1] * p_next
            p_prev, p_cur = p_cur, p_next
        return acc if acc.ndim else float(acc)


@dataclass(frozen=True)
class SampleSet:
    """Equispaced samples f(x_k) + perturbation, with an optional known level."""

    grid: Grid
    values: np.ndarray
    declared_eps: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "values", _freeze(self.values))
        if self.values.shape != self.grid.points.shape:
            raise ValueError(
                f"got {self.values.size} values for a grid of "
                f"{self.grid.points.size} points"
            )
        if not np.all(np.isfinite(self.values)):
            raise ValueError("sample values must be finite")

    @property
    def n(self) -> int:
        return self.grid.n


def cheb_eval(k: int, x):
    """Evaluate the degree-k Chebyshev polynomial T_k(x).

    Uses T_{k+1} = 2x T_k - T_{k-1}, which is an exact polynomial identity,
    so the same recurrence is valid for |x| > 1 (where T_k grows like
    (|x| + sqrt(x^2-1))^k).
    """
    if k < 0:
        raise ValueError("degree k must be nonnegative")
    x = np.asarray(x, dtype=float)
    t_prev = np.ones_like(x)
    if k == 0:
        return t_prev if t_prev.ndim else float(t_prev)
    t_cur = x.astype(float)
    for _ in range(k - 1):
        t_prev, t_cur = t_cur, 2.0 * x * t_cur - t_prev
    return t_cur if t_cur.ndim else float(t_cur)


def legendre_eval(k: int, x):
    """Evaluate the degree-k Legendre polynomial P_k(x) by Bonnet recurrence."""
    if k < 0:
        raise ValueError("degree k must be nonnegative")
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if k == 0:
        return p_prev if p_prev.ndim else float(p_prev)
    p_cur = x.astype(float)
    for j in range(1, k):
        p_prev, p_cur = p_cur, ((2 * j + 1) * x * p_cur - j * p_prev) / (j + 1)
    return p_cur if p_cur.ndim else float(p_cur)


def clenshaw_eval(series, x):
    """Evaluate a Chebyshev series by Clenshaw's backward recurrence.

    Accepts a ChebyshevSeries or a bare coefficient vector. Backward error is
    of order (M+1) * eps * sum|c_k| * max|T_k(x)|.
    """
    c = series.coeffs if isinstance(series, ChebyshevSeries) else np.asarray(series, dtype=float)
    if c.ndim != 1 or c.size == 0:
        raise ValueError("series needs at least one coefficient")
    x = np.asarray(x, dtype=float)
    b_cur = np.zeros_like(x)
    b_next = np.zeros_like(x)
    two_x = 2.0 * x
    for ck in c[:0:-1]:
        b_cur, b_next = two_x * b_cur - b_next + ck, b_cur
    out = x * b_cur - b_next + c[0]
    return out if out.ndim else float(out)


def make_grid(kind: GridKind, n: int) -> Grid:
    """Build the (n+1)-point standard grid of the given kind.

    Equispaced grids are x_k = 2k/n - 1 (endpoints exactly +-1, so n >= 1 is
    required). Chebyshev first-kind points cos((k+1/2)pi/(n+1)) come out
    descending and are sorted ascending here.
    """
    kind = GridKind(kind)
    if kind == GridKind.EQUISPACED:
        if n < 1:
            raise ValueError("an equispaced grid needs n >= 1")
        pts = 2.0 * np.arange(n + 1) / n - 1.0
        return Grid(pts, kind)
    if kind == GridKind.CHEBYSHEV_FIRST_KIND:
        if n < 0:
            raise ValueError("n must be nonnegative")
        k = np.arange(n + 1)
        pts = np.cos((k + 0.5) * math.pi / (n + 1))
        return Grid(pts[::-1], kind)
    raise ValueError("make_grid builds equispaced or chebyshev-first-kind grids")
