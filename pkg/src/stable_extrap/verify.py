"""Numerical certification of the package's conditioning guarantees.

Every check builds the relevant matrix, measures its spectrum with the
package's own eigensolver, and records an inequality as a CheckResult with
the measured slack. Checks are independent and deterministic; a suite is
just a named list of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .basis import GridKind, make_grid
from .solver import basis_change_matrix
from .vandermonde import (
    Basis,
    design_matrix,
    dominant_eigenvalue,
    gram_naive,
    jacobi_eigenvalues,
    lebesgue_constant,
    spectral_report,
)

__all__ = [
    "CheckResult",
    "gerschgorin_interval",
    "parity_matrix",
    "dc_matrix",
    "fc_matrix",
    "check_legendre_singular_bounds",
    "check_cheb_singular_bounds",
    "check_legendre_gram_condition",
    "check_cheb_gram_condition",
    "check_dplusc",
    "check_fplusc",
    "check_s_norm",
    "check_interpolation_sandwich",
    "run_suite",
    "SUITE_NAMES",
]

_JACOBI_SIZE_LIMIT = 150


@dataclass(frozen=True)
class CheckResult:
    """One verified inequality lhs <= rhs with its measured slack."""

    name: str
    params: dict = field(default_factory=dict)
    lhs: float = 0.0
    rhs: float = 0.0
    passed: bool = False
    slack: float = 0.0
    note: str = ""


def _result(name: str, params: dict, lhs: float, rhs: float, note: str = "") -> CheckResult:
    return CheckResult(name=name, params=dict(params), lhs=float(lhs),
                       rhs=float(rhs), passed=bool(lhs <= rhs),
                       slack=float(rhs - lhs), note=note)


def gerschgorin_interval(a: np.ndarray, similarity=None) -> tuple[float, float]:
    """Real interval containing the spectrum, from Gerschgorin disks.

    An optional positive diagonal similarity P conjugates the matrix to
    P A P^-1 first, which can shrink the disk radii dramatically without
    moving the eigenvalues.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    if similarity is not None:
        p = np.asarray(similarity, dtype=float)
        if p.shape != (a.shape[0],) or np.any(p <= 0):
            raise ValueError("similarity must be a positive diagonal vector")
        a = a * (p[:, None] / p[None, :])
    centers = np.diagonal(a)
    radii = np.sum(np.abs(a), axis=1) - np.abs(centers)
    return float(np.min(centers - radii)), float(np.max(centers + radii))


def parity_matrix(m_degree: int) -> np.ndarray:
    """Matrix with 1 where m+n is even, 0 otherwise (endpoint correction)."""
    idx = np.arange(m_degree + 1)
    return ((idx[:, None] + idx[None, :]) % 2 == 0).astype(float)


def dc_matrix(m_degree: int, n_samples: int) -> np.ndarray:
    """diag(N/(2m+1)) plus the parity matrix."""
    d = np.diag(n_samples / (2.0 * np.arange(m_degree + 1) + 1.0))
    return d + parity_matrix(m_degree)


def fc_matrix(m_degree: int, n_samples: int) -> np.ndarray:
    """Analytic Chebyshev product integrals (times N/2) plus the parity matrix.

    Odd m+n entries are zero: the integrand is odd, and the would-be singular
    1/(1-(m-n)^2) factors occur only at odd parity, so the parity split keeps
    every stored entry finite.
    """
    idx = np.arange(m_degree + 1, dtype=float)
    t = idx[:, None] + idx[None, :]
    d = idx[:, None] - idx[None, :]
    odd = (t.astype(int) % 2) == 1
    with np.errstate(divide="ignore"):
        f = 0.5 * n_samples * (1.0 / (1.0 - t * t) + 1.0 / (1.0 - d * d))
    f[odd] = 0.0
    return f + parity_matrix(m_degree)


def _design_spectrum(m_degree: int, n_samples: int, basis: Basis) -> np.ndarray:
    grid = make_grid(GridKind.EQUISPACED, n_samples)
    v = design_matrix(grid, m_degree, basis)
    return jacobi_eigenvalues(gram_naive(v))


def _require_half_sqrt(m_degree: int, n_samples: int) -> None:
    if m_degree > 0.5 * math.sqrt(n_samples):
        raise ValueError(
            f"check requires M <= sqrt(N)/2 (got M={m_degree}, N={n_samples})"
        )


def check_legendre_singular_bounds(m_degree: int, n_samples: int) -> tuple[CheckResult, ...]:
    """Extreme squared singular values of the equispaced Legendre design
    matrix against their guaranteed envelope (tight and simplified forms)."""
    _require_half_sqrt(m_degree, n_samples)
    lam = _design_spectrum(m_degree, n_samples, Basis.LEGENDRE)
    sigma1_sq = float(lam[-1])
    sigma_min_sq = float(lam[0])
    params = {"M": m_degree, "N": n_samples}

    upper_tight = 0.5 * (2 * n_samples + m_degree + 3) + 27.0 * math.sqrt(n_samples) / (32.0 * math.pi)
    upper_simple = 2.0 * n_samples
    lower_tight = ((n_samples - 0.5 * m_degree ** 2) / (2 * m_degree + 1)
                   - 27.0 * math.sqrt(n_samples) / (32.0 * math.pi))
    lower_simple = 2.0 * n_samples / (5.0 * (2 * m_degree + 1))

    note = ""
    if m_degree == 0:
        note = "constant column over N+1 nodes gives sigma1^2 = N+1 exactly"
    return (
        _result("legendre-sigma-max-sq", params, sigma1_sq,
                min(upper_tight, upper_simple), note),
        _result("legendre-sigma-min-sq", params,
                max(lower_tight, lower_simple), sigma_min_sq),
    )


def check_cheb_singular_bounds(m_degree: int, n_samples: int) -> tuple[CheckResult, ...]:
    """Extreme squared singular values of the equispaced Chebyshev design
    matrix: sigma1^2 <= 3N and sigma_min^2 >= sigma_min(Legendre)^2 / 25."""
    _require_half_sqrt(m_degree, n_samples)
    lam_t = _design_spectrum(m_degree, n_samples, Basis.CHEBYSHEV)
    lam_p = _design_spectrum(m_degree, n_samples, Basis.LEGENDRE)
    params = {"M": m_degree, "N": n_samples}
    return (
        _result("chebyshev-sigma-max-sq", params, float(lam_t[-1]), 3.0 * n_samples),
        _result("chebyshev-sigma-min-sq", params, float(lam_p[0]) / 25.0,
                float(lam_t[0])),
    )


def check_legendre_gram_condition(m_degree: int, n_samples: int) -> tuple[CheckResult, ...]:
    """kappa_2 of the Legendre normal-equation matrix against 5(2M+1)."""
    _require_half_sqrt(m_degree, n_samples)
    lam = _design_spectrum(m_degree, n_samples, Basis.LEGENDRE)
    kappa = float(lam[-1]) / float(lam[0])
    return (_result("legendre-gram-condition", {"M": m_degree, "N": n_samples},
                    kappa, 5.0 * (2 * m_degree + 1)),)


def check_cheb_gram_condition(m_degree: int, n_samples: int) -> tuple[CheckResult, ...]:
    """kappa_2 of the Chebyshev normal-equation matrix against 187.5(2M+1)."""
    _require_half_sqrt(m_degree, n_samples)
    lam = _design_spectrum(m_degree, n_samples, Basis.CHEBYSHEV)
    kappa = float(lam[-1]) / float(lam[0])
    return (_result("chebyshev-gram-condition", {"M": m_degree, "N": n_samples},
                    kappa, 187.5 * (2 * m_degree + 1)),)


def check_dplusc(m_degree: int, n_samples: int) -> tuple[CheckResult, ...]:
    """Eigenvalue envelope of D+C: lambda_max <= (2N+M+3)/2 and
    lambda_min >= (N - M^2/2)/(2M+1)."""
    if m_degree > n_samples:
        raise ValueError("requires M <= N")
    lam = jacobi_eigenvalues(dc_matrix(m_degree, n_samples))
    params = {"M": m_degree, "N": n_samples}
    return (
        _result("dplusc-lambda-max", params, float(lam[-1]),
                0.5 * (2 * n_samples + m_degree + 3)),
        _result("dplusc-lambda-min", params,
                (n_samples - 0.5 * m_degree ** 2) / (2 * m_degree + 1),
                float(lam[0])),
    )


def check_fplusc(m_degree: int, n_samples: int) -> tuple[CheckResult, ...]:
    """Eigenvalue cap of F+C: lambda_max <= (4N+M+1)/2."""
    if m_degree > n_samples:
        raise ValueError("requires M <= N")
    lam = jacobi_eigenvalues(fc_matrix(m_degree, n_samples))
    return (_result("fplusc-lambda-max", {"M": m_degree, "N": n_samples},
                    float(lam[-1]), 0.5 * (4 * n_samples + m_degree + 1)),)


def _lambda_max(a: np.ndarray) -> float:
    if a.shape[0] <= _JACOBI_SIZE_LIMIT:
        return float(jacobi_eigenvalues(a)[-1])
    return dominant_eigenvalue(a)


def check_s_norm(m_degree: int) -> tuple[CheckResult, ...]:
    """Basis-change norm chain ||S||_2 <= 2 lambda_max(S+) <= 5.

    S and its symmetric part have nonnegative entries, so the numerical-range
    argument bounds ||S||_2 through the symmetric-part spectrum.
    """
    s = basis_change_matrix(m_degree).entries
    norm_sq = _lambda_max(s.T @ s)
    norm2 = math.sqrt(max(norm_sq, 0.0))
    lam_plus = _lambda_max(0.5 * (s + s.T))
    params = {"M": m_degree}
    return (
        _result("s-norm-le-5", params, norm2, 5.0),
        _result("s-norm-le-numerical-range", params, norm2, 2.0 * lam_plus),
        _result("s-numerical-range-le-5", params, 2.0 * lam_plus, 5.0),
    )


def check_interpolation_sandwich(n_samples: int, probe_count: int | None = None,
                                 probe_slack: float = 0.01) -> tuple[CheckResult, ...]:
    """Lebesgue constant sandwich for the square equispaced system:
    Lambda_N <= kappa_2 <= sqrt(2) (N+1) Lambda_N.

    The probed Lambda undershoots the true supremum, so the left comparison
    carries the documented probe slack. The stated lower inequality is known
    to fail in measurement (already at Chebyshev points, where kappa_2 is
    sqrt(2) while Lambda grows logarithmically); the check records it as
    stated, alongside the provable weak form Lambda/(N+1) <= kappa_2.
    """
    params = {"N": n_samples}
    if n_samples == 0:
        return (
            _result("sandwich-lower", params, 1.0, 1.0 + probe_slack,
                    "single node: Lambda = kappa = 1"),
            _result("sandwich-lower-weak", params, 1.0, 1.0),
            _result("sandwich-upper", params, 1.0, math.sqrt(2.0)),
        )
    grid = make_grid(GridKind.EQUISPACED, n_samples)
    v = design_matrix(grid, n_samples, Basis.CHEBYSHEV)
    kappa = spectral_report(gram_naive(v)).cond2
    if probe_count is None:
        probe_count = 500 * (n_samples + 1) + 1
    lam = lebesgue_constant(grid, probe_count)
    return (
        _result("sandwich-lower", params, lam, (1.0 + probe_slack) * kappa,
                f"{probe_slack:.0%} probe slack applied"),
        _result("sandwich-lower-weak", params, lam / (n_samples + 1), kappa,
                "weak form Lambda/(N+1) <= kappa_2, provable from the "
                "inverse-norm argument"),
        _result("sandwich-upper", params, kappa,
                math.sqrt(2.0) * (n_samples + 1) * lam),
    )


def _suite_singular_values(n_list=(64, 256, 1024, 4096)):
    out = []
    for n in n_list:
        m = int(math.floor(0.5 * math.sqrt(n)))
        out += list(check_legendre_singular_bounds(m, n))
        out += list(check_cheb_singular_bounds(m, n))
    return out


def _suite_conditioning(pairs=((5, 100), (10, 400), (16, 1024), (25, 2500))):
    out = []
    for m, n in pairs:
        out += list(check_cheb_gram_condition(m, n))
        out += list(check_legendre_gram_condition(m, n))
    return out


def _suite_gerschgorin(m_degree=30, n_samples=3600):
    return list(check_dplusc(m_degree, n_samples)) + list(check_fplusc(m_degree, n_samples))


def _suite_s_norm(m_list=(10, 100, 1000)):
    out = []
    for m in m_list:
        out += list(check_s_norm(m))
    return out


def _suite_sandwich(n_list=(4, 8, 12, 16, 20)):
    out = []
    for n in n_list:
        out += list(check_interpolation_sandwich(n))
    return out


SUITE_NAMES = ("singular-values", "conditioning", "gerschgorin", "s-norm",
               "sandwich", "all")


def run_suite(name: str, m_degree: int | None = None,
              n_samples: int | None = None) -> list[CheckResult]:
    """Run a named suite of checks, sorted by (name, params) for stable output.

    The gerschgorin suite honors M/N overrides; singular-value and sandwich
    suites honor an N override; s-norm honors an M override.
    """
    if name == "singular-values":
        results = _suite_singular_values((n_samples,) if n_samples else (64, 256, 1024, 4096))
    elif name == "conditioning":
        results = _suite_conditioning()
    elif name == "gerschgorin":
        results = _suite_gerschgorin(m_degree or 30, n_samples or 3600)
    elif name == "s-norm":
        results = _suite_s_norm((m_degree,) if m_degree else (10, 100, 1000))
    elif name == "sandwich":
        results = _suite_sandwich((n_samples,) if n_samples is not None else (4, 8, 12, 16, 20))
    elif name == "all":
        results = (_suite_singular_values() + _suite_conditioning()
                   + _suite_gerschgorin() + _suite_s_norm() + _suite_sandwich())
    else:
        raise ValueError(f"unknown suite {name!r}; known: {', '.join(SUITE_NAMES[:-1])}, all")
    return sorted(results, key=lambda c: (c.name, sorted(c.params.items())))
