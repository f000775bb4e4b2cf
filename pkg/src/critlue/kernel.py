"""Finite-N Laguerre correlation kernel and its edge rescalings.

The kernel is evaluated in nu-rescaled coordinates throughout (eigenvalue
lambda of the sample covariance matrix corresponds to x = lambda/nu), which
is the normalization in which the equilibrium density occupies [0, 1] and
gap probabilities read det(I - K_N).  Wavefunctions are evaluated by the
weighted three-term recurrence (compiled when available) with a running
exponent to avoid overflow at large degree and order.
"""

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from critlue import backend
from critlue import rh_scalar as rs
from critlue import specfun as sf
from critlue.rh_scalar import Side

_NEAR_DIAGONAL = 1e-6


@dataclass(frozen=True)
class Wavefunction:
    """Weighted Laguerre wavefunction psi_j of one degree."""

    degree: int
    alpha: float
    nu: float

    def __call__(self, x):
        """Evaluate at physical argument(s) x >= 0."""
        return laguerre_wavefunction(self.degree, self.alpha, x)


class Edge(enum.Enum):
    NONE = "none"
    HARD = "hard"
    SOFT = "soft"


@dataclass
class KernelGrid:
    edge: Edge
    points: list
    values: np.ndarray
    limit_values: np.ndarray


def laguerre_wavefunction(j, alpha, x):
    """psi_j(x) = sqrt(j!/Gamma(j+a+1)) e^(-x/2) x^(a/2) L_j^(a)(x), x >= 0."""
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(arr < 0):
        raise ValueError("laguerre_wavefunction requires x >= 0")
    _, p, _, _, ls = backend.laguerre_pair(float(alpha), int(j), arr,
                                           math.lgamma(alpha + 1.0))
    vals = np.asarray(p) * np.exp(np.asarray(ls))
    return vals[0] if np.isscalar(x) or np.asarray(x).ndim == 0 else vals


def monic_rescaled_laguerre(n_deg, x, params):
    """log|pi_n(x)| and sign for the monic polynomials of the weight
    x^alpha e^(-nu x); the recurrence oracle for the RH solution entry."""
    nu, alpha = params.nu, params.alpha
    p_prev, p = 0.0, 1.0
    log_scale = 0.0
    for j in range(n_deg):
        a_j = (2.0 * j + alpha + 1.0) / nu
        b_j = j * (j + alpha) / nu**2
        p_next = (x - a_j) * p - b_j * p_prev
        p_prev, p = p, p_next
        m = max(abs(p_prev), abs(p))
        if m > 1e40 or (0.0 < m < 1e-40):
            p_prev /= m
            p /= m
            log_scale += math.log(m)
    if p == 0.0:
        return -math.inf, 1.0
    return log_scale + math.log(abs(p)), math.copysign(1.0, p)


def _psi_pair(params, lam):
    """(psi_{N-1}, psi_N, psi'_{N-1}, psi'_N) at physical points lam."""
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    pm1, p, dm1, dp, ls = backend.laguerre_pair(
        float(params.alpha), int(params.N), lam, math.lgamma(params.alpha + 1.0))
    scale = np.exp(np.asarray(ls))
    return (np.asarray(pm1) * scale, np.asarray(p) * scale,
            np.asarray(dm1) * scale, np.asarray(dp) * scale)


def kernel_KN(x, y, params):
    """Correlation kernel K_N(x, y) in nu-rescaled coordinates.

    Christoffel-Darboux form; the diagonal is the analytic limit and points
    closer than 1e-6 use the midpoint diagonal value to avoid cancellation.
    """
    if x <= 0 or y <= 0:
        raise ValueError("kernel_KN requires positive rescaled coordinates")
    nu = params.nu
    b_n = -math.sqrt(params.N * (params.N + params.alpha))
    if abs(x - y) < _NEAR_DIAGONAL:
        m = 0.5 * (x + y)
        pm1, p, dm1, dp = _psi_pair(params, nu * m)
        return float(nu * b_n * (dp[0] * pm1[0] - dm1[0] * p[0]))
    pm1, p, _, _ = _psi_pair(params, np.array([nu * x, nu * y]))
    num = p[0] * pm1[1] - pm1[0] * p[1]
    return float(b_n * num / (x - y))


def kernel_KN_grid(xs, ys, params):
    """K_N on a product grid; one recurrence pass over all points."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    nu = params.nu
    b_n = -math.sqrt(params.N * (params.N + params.alpha))
    pts = np.concatenate([xs, ys])
    pm1, p, dm1, dp = _psi_pair(params, nu * pts)
    n = len(xs)
    out = np.empty((n, len(ys)))
    for i in range(n):
        for j in range(len(ys)):
            if abs(xs[i] - ys[j]) < _NEAR_DIAGONAL:
                m = nu * 0.5 * (xs[i] + ys[j])
                a1, a2, d1, d2 = _psi_pair(params, m)
                out[i, j] = nu * b_n * (d2[0] * a1[0] - d1[0] * a2[0])
            else:
                num = p[i] * pm1[n + j] - pm1[i] * p[n + j]
                out[i, j] = b_n * num / (xs[i] - ys[j])
    return out


def airy_kernel(x, y):
    """Airy kernel (Ai(x)Ai'(y) - Ai(y)Ai'(x)) / (x - y)."""
    x, y = float(x), float(y)
    if abs(x - y) < _NEAR_DIAGONAL:
        m = 0.5 * (x + y)
        ai = sf.airy_ai(m).real
        dai = sf.airy_ai_prime(m).real
        return dai * dai - m * ai * ai
    aix, aiy = sf.airy_ai(x).real, sf.airy_ai(y).real
    dx, dy = sf.airy_ai_prime(x).real, sf.airy_ai_prime(y).real
    return (aix * dy - aiy * dx) / (x - y)


# ---------------------------------------------------------------------------
# edge rescalings


def hard_coordinate(u, params):
    """Map the hard-edge variable u to the rescaled spectral variable."""
    c, alpha = params.c, params.alpha
    return (c * c / alpha**2) * (1.0 + u * (2.0 / alpha) ** (2.0 / 3.0))


def hard_jacobian(params):
    c, alpha = params.c, params.alpha
    return (c * c / alpha**2) * (2.0 / alpha) ** (2.0 / 3.0)


def soft_coordinate(u, params):
    """Map the soft-edge variable u to the rescaled spectral variable."""
    return 1.0 + u / (2.0 ** (2.0 / 3.0) * params.M ** (2.0 / 3.0))


def soft_jacobian(params):
    return 1.0 / (2.0 ** (2.0 / 3.0) * params.M ** (2.0 / 3.0))


def hard_rescaled_kernel(u, v, params):
    """Kernel at hard-edge coordinates: K_N(x(u), x(v)) dx/dv."""
    x, y = hard_coordinate(u, params), hard_coordinate(v, params)
    if x <= 0 or y <= 0:
        raise ValueError("hard-edge point maps to a nonpositive coordinate")
    return kernel_KN(x, y, params) * hard_jacobian(params)


def hard_limit_kernel(u, v):
    """Hard-edge limit (Ai(-v)Ai'(-u) - Ai'(-v)Ai(-u)) / (u - v)."""
    u, v = float(u), float(v)
    if abs(u - v) < _NEAR_DIAGONAL:
        m = 0.5 * (u + v)
        ai = sf.airy_ai(-m).real
        dai = sf.airy_ai_prime(-m).real
        return dai * dai + m * ai * ai
    aiu, aiv = sf.airy_ai(-u).real, sf.airy_ai(-v).real
    du, dv = sf.airy_ai_prime(-u).real, sf.airy_ai_prime(-v).real
    return (aiv * du - dv * aiu) / (u - v)


def soft_rescaled_kernel(u, v, params):
    """Kernel at soft-edge coordinates: K_N(x(u), x(v)) dx/dv."""
    x, y = soft_coordinate(u, params), soft_coordinate(v, params)
    if x <= 0 or y <= 0:
        raise ValueError("soft-edge point maps to a nonpositive coordinate")
    return kernel_KN(x, y, params) * soft_jacobian(params)


# ---------------------------------------------------------------------------
# kernel factor evaluators


def hard_edge_factors(z, params):
    """Row V(z) and column W(z) of the hard-edge kernel factorization.

    z in (0, 1) is the rescaled coordinate; the Bessel argument
    -i M phi+(z) is real positive.  V W = 0 pointwise by the rank
    structure.  Returns (V as shape-(2,), W as shape-(2,)) complex arrays.
    """
    z = float(z)
    if not 0.0 < z < 1.0:
        raise ValueError("hard-edge factors defined for 0 < z < 1")
    M, alpha = params.M, params.alpha
    phi = rs.phi_right(z, Side.ABOVE)
    u = (-1j * M * phi).real
    j = sf.bessel_j(alpha, u)
    jp = sf.bessel_j_prime(alpha, u)
    phase = cmath.exp((params.N + 0.5) * 1j * math.pi) * math.sqrt(M)
    V = phase * np.array([-math.pi * phi * jp, j], dtype=complex)
    W = phase * np.array([j, math.pi * phi * jp], dtype=complex)
    return V, W


def soft_edge_factors(z, params):
    """Row Vbar(z) and column Wbar(z) near z = 1 (Airy factorization)."""
    z = float(z)
    M = params.M
    xi = M ** (2.0 / 3.0) * rs.f_left(z).real
    ai = sf.airy_ai(xi).real
    dai = sf.airy_ai_prime(xi).real
    V = 2j * math.pi * np.array([-dai * M ** (-1.0 / 6.0), ai * M ** (1.0 / 6.0)],
                                dtype=complex)
    W = np.array([M ** (1.0 / 6.0) * ai, M ** (-1.0 / 6.0) * dai], dtype=complex)
    return V, W


def soft_edge_factors_tail(z, params):
    """Factors for z >= 1 + delta where the kernel is exponentially small.

    The single nonzero entry is e^{tau(z)} with
    tau = -2Nz + N(2 log 2 + 1) - sqrt(z(z-1)) - (alpha/2) phi_left(z).
    """
    z = float(z)
    if z <= 1.0:
        raise ValueError("tail factors defined for z > 1")
    N, alpha = params.N, params.alpha
    tau = (-2.0 * N * z + N * rs.TWO_LOG2_PLUS_1
           - rs.sqrt_z_zm1(z).real - 0.5 * alpha * rs.phi_left(z).real)
    e = math.exp(tau)
    V = np.array([0.0, e], dtype=complex)
    W = np.array([e, 0.0], dtype=complex)
    return V, W


# ---------------------------------------------------------------------------
# grids for export


def build_kernel_grid(edge, us, vs, params):
    """Evaluate the rescaled kernel and its limit on a product grid."""
    edge = Edge(edge)
    pts, vals, lims = [], [], []
    if edge is Edge.HARD:
        xs = [hard_coordinate(u, params) for u in us]
        ys = [hard_coordinate(v, params) for v in vs]
        jac = hard_jacobian(params)
        grid = kernel_KN_grid(xs, ys, params) * jac
        for i, u in enumerate(us):
            for j, v in enumerate(vs):
                pts.append((u, v))
                vals.append(grid[i, j])
                lims.append(hard_limit_kernel(u, v))
    elif edge is Edge.SOFT:
        xs = [soft_coordinate(u, params) for u in us]
        ys = [soft_coordinate(v, params) for v in vs]
        jac = soft_jacobian(params)
        grid = kernel_KN_grid(xs, ys, params) * jac
        for i, u in enumerate(us):
            for j, v in enumerate(vs):
                pts.append((u, v))
                vals.append(grid[i, j])
                lims.append(airy_kernel(u, v))
    else:
        grid = kernel_KN_grid(us, vs, params)
        for i, u in enumerate(us):
            for j, v in enumerate(vs):
                pts.append((u, v))
                vals.append(grid[i, j])
                lims.append(float("nan"))
    return KernelGrid(edge=edge, points=pts,
                      values=np.asarray(vals), limit_values=np.asarray(lims))
