"""Fredholm determinants by Gauss-Legendre Nystrom quadrature.

det(I - K) is approximated by det(I - A) with A_ij = sqrt(w_i) K(x_i, x_j)
sqrt(w_j) on an m-point rule; convergence is certified by node doubling.
Provides the Tracy-Widom (beta = 2) distribution, finite-N gap
probabilities of the rescaled Laguerre kernel, and the limiting laws for
the extreme eigenvalues and the condition number.
"""

import math
from dataclasses import dataclass

import numpy as np

from critlue import kernel as kn
from critlue import specfun as sf

AIRY_TAIL_LENGTH = 12.0     # super-exponential decay window for (s, inf)
DIAGONAL_FLOOR = 1e-16      # finite-N truncation threshold


class NonConvergenceError(ArithmeticError):
    """Node doubling failed to stabilize the determinant."""


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    interval: tuple

    def __post_init__(self):
        if np.any(np.diff(self.nodes) <= 0):
            raise ValueError("nodes must be strictly increasing")
        if np.any(self.weights <= 0):
            raise ValueError("weights must be positive")


@dataclass(frozen=True)
class DeterminantResult:
    value: float
    node_count: int
    convergence_estimate: float


def gauss_legendre_rule(a, b, m):
    """Gauss-Legendre rule mapped to (a, b); weights sum to b - a."""
    x, w = np.polynomial.legendre.leggauss(int(m))
    half = 0.5 * (b - a)
    return QuadratureRule(nodes=a + half * (x + 1.0), weights=half * w,
                          interval=(a, b))


def _nystrom_det(matrix_builder, a, b, m):
    rule = gauss_legendre_rule(a, b, m)
    K = matrix_builder(rule.nodes)
    rw = np.sqrt(rule.weights)
    A = rw[:, None] * K * rw[None, :]
    sign, logdet = np.linalg.slogdet(np.eye(m) - A)
    return float(sign * np.exp(logdet))


def fredholm_det(kernel=None, interval=(0.0, 1.0), nodes=60, matrix_builder=None,
                 max_nodes=960, tol=1e-6):
    """det(I - K) on the interval, with node-doubling certification.

    kernel is a symmetric scalar evaluator K(x, y); a vectorized
    matrix_builder(xs) -> K matrix may be supplied instead for speed.
    Raises NonConvergenceError if doubling fails to stabilize within tol.
    """
    a, b = interval
    if b <= a:
        return DeterminantResult(value=1.0, node_count=0, convergence_estimate=0.0)
    if matrix_builder is None:
        if kernel is None:
            raise ValueError("either kernel or matrix_builder is required")

        def matrix_builder(xs):
            return np.array([[kernel(x, y) for y in xs] for x in xs])

    m = int(nodes)
    prev = _nystrom_det(matrix_builder, a, b, max(m // 2, 4))
    while True:
        val = _nystrom_det(matrix_builder, a, b, m)
        est = abs(val - prev)
        if est <= tol:
            return DeterminantResult(value=val, node_count=m, convergence_estimate=est)
        if 2 * m > max_nodes:
            raise NonConvergenceError(
                f"determinant not converged: estimate {est:.3e} at {m} nodes")
        prev = val
        m *= 2


def _airy_matrix(xs):
    ai = np.array([sf.airy_ai(x).real for x in xs])
    dai = np.array([sf.airy_ai_prime(x).real for x in xs])
    dx = xs[:, None] - xs[None, :]
    num = ai[:, None] * dai[None, :] - ai[None, :] * dai[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        K = num / dx
    diag = dai * dai - xs * ai * ai
    np.fill_diagonal(K, diag)
    return K


def tw2_cdf(s, nodes=60, tol=1e-8):
    """Tracy-Widom (beta = 2) distribution F2(s) = det(I - K_Airy on (s, inf))."""
    s = float(s)
    if s < -10.0:
        raise ValueError("tw2_cdf supported for s >= -10")
    res = fredholm_det(matrix_builder=_airy_matrix,
                       interval=(s, s + AIRY_TAIL_LENGTH), nodes=nodes, tol=tol)
    return min(max(res.value, 0.0), 1.0)


def tw2_interpolator(lo=-8.0, hi=6.0, step=0.05, nodes=60):
    """Monotone interpolant of F2 on a grid, for fast repeated evaluation."""
    from scipy.interpolate import PchipInterpolator

    xs = np.arange(lo, hi + step / 2, step)
    ys = np.array([tw2_cdf(x, nodes=nodes) for x in xs])
    ys = np.maximum.accumulate(ys)
    interp = PchipInterpolator(xs, ys)

    def f2(t):
        t = np.asarray(t, dtype=float)
        return np.clip(interp(np.clip(t, lo, hi)), 0.0, 1.0)

    return f2


def tw2_quantile(q, tol=1e-10):
    """Inverse of F2 by bisection."""
    if not 0.0 < q < 1.0:
        raise ValueError("quantile level must be in (0, 1)")
    lo, hi = -9.0, 6.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if tw2_cdf(mid) < q:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _finite_n_builder(params):
    def build(xs):
        return kn.kernel_KN_grid(xs, xs, params)

    return build


def _right_truncation(params, start):
    """Smallest point beyond start where the kernel diagonal is negligible."""
    t = max(start, 1.0)
    while t < 6.0:
        t += 0.25
        if kn.kernel_KN(t, t, params) < DIAGONAL_FLOOR:
            return t
    return 6.0


def gap_probability_finite(params, interval, nodes=60, tol=1e-8):
    """P(no eigenvalues of A/nu in the interval) = det(I - K_N restricted)."""
    a, b = interval
    a = max(a, 0.0)
    if math.isinf(b):
        b = _right_truncation(params, a)
    if b <= a:
        return 1.0
    res = fredholm_det(matrix_builder=_finite_n_builder(params),
                       interval=(a, b), nodes=nodes, tol=tol)
    return res.value


def cdf_lambda_min(t, params, nodes=60):
    """P(lambda_min / nu >= t) = det(I - K_N on (0, t))."""
    if t <= 0.0:
        return 1.0
    return gap_probability_finite(params, (0.0, t), nodes=nodes)


def cdf_lambda_max(t, params, nodes=60):
    """P(lambda_max / nu <= t) = det(I - K_N on (t, inf))."""
    return gap_probability_finite(params, (t, math.inf), nodes=nodes)


def edelman_cdf(t):
    """Limit law of kappa / N^2 for the square (n = N) ensemble: e^{-4/t}."""
    if t <= 0.0:
        raise ValueError("the condition-number limit law requires t > 0")
    return math.exp(-4.0 / t)


def standardize(t, which, params):
    """Map a raw statistic to the Tracy-Widom argument of its limit theorem."""
    c, alpha, nu = params.c, params.alpha, params.nu
    if which == "small":
        return (c - t) / (c * alpha ** (-2.0 / 3.0) * 2.0 ** (2.0 / 3.0))
    if which == "large":
        return (t - nu) / (nu ** (1.0 / 3.0) * 2.0 ** (2.0 / 3.0))
    if which == "cond":
        return (t - nu / c) / (nu / c * (2.0 / alpha) ** (2.0 / 3.0))
    raise ValueError("which must be 'small', 'large' or 'cond'")


def limiting_cdfs(t, which, params, nodes=60):
    """Value of the limit law at the raw statistic t.

    'small' gives F2 at the standardized smallest-eigenvalue argument (the
    limit of P(lambda_min >= t)), 'large' the largest-eigenvalue law
    P(lambda_max <= t), 'cond' the condition-number law P(kappa <= t).
    """
    return tw2_cdf(standardize(t, which, params), nodes=nodes)
