"""Scalar analytic building blocks of the Riemann-Hilbert analysis.

Branch-aware powers and logarithms, the Marchenko-Pastur equilibrium
measure and its log transform g, the phase functions phi (cut on [0,inf))
and phi_left (cut on (-inf,1]), the Szego-type function h with the diagonal
matrix D, and the conformal maps used to center the Airy and Bessel
parametrices at z = 1 and z = 0.

Every multivalued function takes an explicit boundary-side flag instead of
relying on the sign of a floating-point zero.
"""

import cmath
import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

TWO_LOG2_PLUS_1 = 2.0 * math.log(2.0) + 1.0
DELTA_DEFAULT = 0.25            # local-disk radius, < 1/2
_TAYLOR_RADIUS = 1e-3           # conformal maps switch to series inside this


class Side(enum.Enum):
    """Boundary side for evaluation on a branch cut."""

    ABOVE = "from-above"
    BELOW = "from-below"
    OFF = "off-cut"


@dataclass(frozen=True)
class BranchedValue:
    value: complex
    side: Side


@dataclass(frozen=True)
class ScalingParams:
    """The tuple (N, c, alpha, nu, M, ell_N) entering every formula."""

    N: int
    c: float
    alpha: int
    nu: float
    M: float
    ell_N: float

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be a positive integer")
        if abs(self.nu - (4 * self.N + 2 * self.alpha + 2)) > 1e-9:
            raise ValueError("nu must equal 4N + 2 alpha + 2")
        if abs(self.M - (self.N + 0.5 * (self.alpha + 1))) > 1e-9:
            raise ValueError("M must equal N + (alpha + 1)/2")

    @classmethod
    def critical(cls, N, c=1.0, alpha=None):
        """Parameters under the critical rule alpha = floor(sqrt(4cN))."""
        if alpha is None:
            alpha = int(math.floor(math.sqrt(4.0 * c * N)))
        return cls(N=N, c=c, alpha=alpha,
                   nu=4 * N + 2 * alpha + 2,
                   M=N + 0.5 * (alpha + 1),
                   ell_N=2 * N * TWO_LOG2_PLUS_1)


def _on_cut_err(name):
    raise ValueError(f"{name}: point lies on the branch cut; a side flag is required")


def log_right(z, side=Side.OFF):
    """Logarithm cut along [0, inf): real limit from above for z > 1."""
    z = complex(z)
    if z == 0:
        raise ValueError("log_right: z = 0 rejected")
    if z.imag == 0.0 and z.real > 0.0:
        if side is Side.ABOVE:
            return BranchedValue(complex(math.log(z.real), 0.0), side)
        if side is Side.BELOW:
            return BranchedValue(complex(math.log(z.real), 2.0 * math.pi), side)
        _on_cut_err("log_right")
    w = cmath.log(complex(z.real, z.imag))
    if z.imag < 0.0:
        w += 2j * math.pi
    elif z.imag == 0.0:
        w = complex(w.real, math.pi)  # negative real axis, off this cut
    return BranchedValue(w, Side.OFF)


def log_left(z, side=Side.OFF):
    """Principal logarithm (cut along (-inf, 0])."""
    z = complex(z)
    if z == 0:
        raise ValueError("log_left: z = 0 rejected")
    if z.imag == 0.0 and z.real < 0.0:
        if side is Side.ABOVE:
            return BranchedValue(complex(math.log(-z.real), math.pi), side)
        if side is Side.BELOW:
            return BranchedValue(complex(math.log(-z.real), -math.pi), side)
        _on_cut_err("log_left")
    if z.imag == 0.0:
        return BranchedValue(complex(math.log(z.real), 0.0), Side.OFF)
    return BranchedValue(cmath.log(complex(z.real, z.imag)), Side.OFF)


def root_right(gamma, z, side=Side.OFF):
    """Power z^gamma with the log_right branch; positive above (0, inf)."""
    lg = log_right(z, side)
    return BranchedValue(cmath.exp(gamma * lg.value), lg.side)


def root_left(gamma, z, side=Side.OFF):
    """Principal power z^gamma."""
    lg = log_left(z, side)
    return BranchedValue(cmath.exp(gamma * lg.value), lg.side)


def sqrt_z_zm1(z, side=Side.OFF):
    """sqrt(z(z-1)) with branch cut on [0, 1]; behaves like z at infinity.

    Negative for z < 0, positive for z > 1, +i sqrt(x(1-x)) on the upper
    side of (0, 1).
    """
    z = complex(z)
    if z.imag == 0.0 and 0.0 <= z.real <= 1.0:
        x = z.real
        if x == 0.0 or x == 1.0:
            return complex(0.0, 0.0)
        if side is Side.ABOVE:
            return 1j * math.sqrt(x * (1.0 - x))
        if side is Side.BELOW:
            return -1j * math.sqrt(x * (1.0 - x))
        _on_cut_err("sqrt_z_zm1")
    return z * cmath.exp(0.5 * cmath.log((z - 1.0) / z))


def psi_right(z, side=Side.OFF):
    """psi(z) = z^(1/2) + (z-1)^(1/2) with both cuts along [0, inf)."""
    a = root_right(0.5, z, side).value
    zm = complex(z) - 1.0
    if zm.imag == 0.0 and zm.real >= 0.0:
        b = root_right(0.5, zm, side).value if zm != 0 else 0.0
    else:
        b = root_right(0.5, zm).value
    return a + b


def psi_left(z, side=Side.OFF):
    """psi(z) = z^(1/2) + (z-1)^(1/2) with principal branches."""
    zc = complex(z)
    if zc.imag == 0.0 and zc.real <= 0.0:
        a = root_left(0.5, zc, side).value if zc != 0 else 0.0
    else:
        a = root_left(0.5, zc).value
    zm = zc - 1.0
    if zm.imag == 0.0 and zm.real <= 0.0:
        b = root_left(0.5, zm, side).value if zm != 0 else 0.0
    else:
        b = root_left(0.5, zm).value
    return a + b


def _plog(w):
    """Principal log normalizing a -0.0 imaginary part to +0.0."""
    w = complex(w)
    if w.imag == 0.0:
        w = complex(w.real, 0.0)
    return cmath.log(w)


def phi_right(z, side=Side.OFF):
    """Indefinite integral of the equilibrium measure, cut along [0, inf).

    Closed form 2 sqrt(z(z-1)) - 2 log psi(z) + i pi; vanishes at 0+ and
    equals 2i(sqrt(x(1-x)) + arcsin sqrt(x)) on the upper side of (0,1).
    """
    r = sqrt_z_zm1(z, side)
    p = psi_right(z, side)
    return 2.0 * r - 2.0 * _plog(p) + 1j * math.pi


def phi_left(z, side=Side.OFF):
    """Companion phase cut along (-inf, 1]; real positive for z > 1."""
    r = sqrt_z_zm1(z, side)
    p = psi_left(z, side)
    return 2.0 * r - 2.0 * _plog(p)


def g_fn(z, side=Side.OFF):
    """Log transform of the equilibrium measure, via g = -phi + 2z - (2 log 2 + 1) + i pi."""
    val = -phi_right(z, side) + 2.0 * complex(z) - TWO_LOG2_PLUS_1 + 1j * math.pi
    return BranchedValue(val, side if _is_on_pos_axis(z) else Side.OFF)


def _is_on_pos_axis(z):
    z = complex(z)
    return z.imag == 0.0 and z.real > 0.0


def equilibrium_density(s):
    """Marchenko-Pastur density (2/pi) sqrt((1-s)/s) on (0, 1]."""
    if not 0.0 < s <= 1.0:
        raise ValueError("equilibrium_density defined on (0, 1]")
    return (2.0 / math.pi) * math.sqrt((1.0 - s) / s)


def w_hat(z, alpha):
    """Weight exponent (2 alpha + 2) z - alpha log z (principal log).

    For integer alpha the exponentials e^{w_hat} are branch-insensitive.
    """
    z = complex(z)
    return (2.0 * alpha + 2.0) * z - alpha * _plog(z)


def w_check(z, alpha, side=Side.OFF):
    """Weight exponent with the log_right branch and the (alpha+1) pi i shift."""
    return ((2.0 * alpha + 2.0) * complex(z)
            - alpha * log_right(z, side).value + (alpha + 1) * 1j * math.pi)


def h_fn(z, alpha, side=Side.OFF):
    """Exponent of the Szego-type diagonal solution D(z) = e^{h sigma_3}.

    Analytic on C \\ [0, 1]; h+ + h- = w_hat on (0, 1), and
    h(inf) = alpha log 2 + (alpha + 1)/2.
    """
    z = complex(z)
    return (-0.5 * alpha * log_right(z, side).value + (alpha + 1.0) * z
            + 0.5 * alpha * 1j * math.pi - 0.5 * alpha * phi_right(z, side)
            - sqrt_z_zm1(z, side))


def hhat_fn(z, alpha, side=Side.OFF):
    """Equivalent form of h built from the principal-branch quantities."""
    z = complex(z)
    if z.imag == 0.0 and z.real > 0.0:
        lg = log_left(z).value
    else:
        lg = log_left(z, side).value
    return (-0.5 * alpha * lg + (alpha + 1.0) * z
            - 0.5 * alpha * phi_left(z, side) - sqrt_z_zm1(z, side))


def h_infinity(alpha):
    """Limit of h at infinity."""
    return alpha * math.log(2.0) + 0.5 * (alpha + 1.0)


def D_matrix(z, alpha, side=Side.OFF):
    """Diagonal matrix diag(e^h, e^-h) as a 2x2 array."""
    h = h_fn(z, alpha, side)
    return np.array([[cmath.exp(h), 0.0], [0.0, cmath.exp(-h)]], dtype=complex)


def D_infinity(alpha):
    """D at infinity: diag(e^q, e^-q) with q = alpha log 2 + (alpha+1)/2."""
    q = h_infinity(alpha)
    return np.array([[math.exp(q), 0.0], [0.0, math.exp(-q)]], dtype=complex)


def _taylor_coeffs(fun, center, radius=0.1, n_terms=6, nodes=256):
    """Taylor coefficients about center from Cauchy integrals on a circle."""
    ang = (np.arange(nodes) + 0.5) * (2.0 * math.pi / nodes)
    w = center + radius * np.exp(1j * ang)
    fw = np.array([fun(wi) for wi in w])
    coeffs = []
    for k in range(n_terms):
        integrand = fw * np.exp(-1j * ang * k)
        coeffs.append(integrand.mean() / radius**k)
    return coeffs


def _f_left_closed(z):
    """f_left away from z = 1: (z-1) times the principal cube root of
    ((3/2) phi_left)^2 / (z-1)^3, which stays near 4 on the disk."""
    z = complex(z)
    side = Side.ABOVE if (z.imag == 0.0 and z.real <= 1.0) else Side.OFF
    q = 1.5 * phi_left(z, side)
    ratio = q * q / (z - 1.0) ** 3
    return (z - 1.0) * cmath.exp(cmath.log(ratio) / 3.0)


def _f_right_closed(z):
    """f_right away from z = 0: phi(z)^2 / 4 (side-independent)."""
    z = complex(z)
    side = Side.ABOVE if (z.imag == 0.0 and z.real >= 0.0) else Side.OFF
    p = phi_right(z, side)
    return 0.25 * p * p


@lru_cache(maxsize=1)
def _f_left_taylor():
    return _taylor_coeffs(_f_left_closed, 1.0)


@lru_cache(maxsize=1)
def _f_right_taylor():
    return _taylor_coeffs(_f_right_closed, 0.0)


def f_left(z):
    """Conformal map centered at z = 1; f(1) = 0, f'(1) = 2^(2/3), upper
    half-plane to upper half-plane.  Valid on |z - 1| < 1/2."""
    z = complex(z)
    if abs(z - 1.0) >= 0.5:
        raise ValueError("f_left valid on |z - 1| < 1/2")
    if abs(z - 1.0) <= _TAYLOR_RADIUS:
        coeffs = _f_left_taylor()
        out = sum(c * (z - 1.0) ** k for k, c in enumerate(coeffs))
    else:
        out = _f_left_closed(z)
    if z.imag == 0.0:
        out = complex(out.real, 0.0)  # real on reals
    return out


def f_right(z):
    """Conformal map centered at z = 0; f(0) = 0, f'(0) = -4, upper
    half-plane to lower half-plane.  Valid on |z| < 1/2."""
    z = complex(z)
    if abs(z) >= 0.5:
        raise ValueError("f_right valid on |z| < 1/2")
    if abs(z) <= _TAYLOR_RADIUS:
        coeffs = _f_right_taylor()
        out = sum(c * z**k for k, c in enumerate(coeffs))
    else:
        out = _f_right_closed(z)
    if z.imag == 0.0:
        out = complex(out.real, 0.0)  # real on reals
    return out
