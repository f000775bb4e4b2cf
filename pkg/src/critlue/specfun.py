"""Special functions for the parametrices and kernel limits.

Airy Ai/Ai' on the complex plane (Maclaurin series inside |xi| <= 7,
asymptotic expansion beyond, connection-formula rotation outside the valid
sector), Bessel J of real order with a large-order uniform Airy-type branch,
and modified Bessel/Hankel functions of complex argument at moderate order.
"""

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special as _sp

UNIFORM_ORDER_SWITCH = 30.0  # bessel_j switches to the uniform expansion
ASYMP_MAX_TERMS = 40

_AI0 = 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)
_DAI0 = -(3.0 ** (-1.0 / 3.0)) / math.gamma(1.0 / 3.0)
_TWO_THIRDS_PI = 2.0 * math.pi / 3.0


class UnsupportedRangeError(ValueError):
    """Argument or order outside the supported evaluation envelope."""


def _airy_series(xi):
    """Maclaurin evaluation of (Ai, Ai'); reliable for |xi| <= ~8."""
    z3 = xi * xi * xi
    f = 1.0 + 0.0j   # sum of the (1/3)-type series
    fp = 0.0j        # its derivative
    g = xi           # (2/3)-type series, starts at xi
    gp = 1.0 + 0.0j
    tf = 1.0 + 0.0j
    tg = xi
    k = 0
    while True:
        tf = tf * z3 / ((3 * k + 2) * (3 * k + 3))
        tg = tg * z3 / ((3 * k + 3) * (3 * k + 4))
        k += 1
        f += tf
        g += tg
        if xi != 0:
            fp += tf * (3 * k) / xi
        gp += tg * (3 * k + 1) / xi if xi != 0 else 0.0
        if abs(tf) < 1e-18 * (abs(f) + 1e-300) and abs(tg) < 1e-18 * (abs(g) + 1e-300):
            break
        if k > 120:
            break
    ai = _AI0 * f + _DAI0 * g
    dai = _AI0 * fp + _DAI0 * gp
    return ai, dai


def _airy_asymptotic(xi, scaled=False):
    """Poincare expansion of (Ai, Ai') for |arg xi| <= 2pi/3, |xi| > ~6.

    Terms are accumulated until they stop decreasing (or drop below 1e-17
    relative), so accuracy is limited only by the optimal truncation.  With
    scaled=True the factor e^{-zeta} is dropped.
    """
    zeta = (2.0 / 3.0) * xi * cmath.sqrt(xi)
    su = 1.0 + 0.0j
    sv = 1.0 + 0.0j
    u = 1.0
    tu_prev = 1.0
    sign = 1.0
    for k in range(1, ASYMP_MAX_TERMS):
        u = u * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / (216.0 * k * (2 * k - 1))
        v = u * (6 * k + 1) / (1.0 - 6 * k)
        sign = -sign
        tu = u / abs(zeta) ** k
        if tu > tu_prev:
            break
        tu_prev = tu
        su += sign * u / zeta**k
        sv += sign * v / zeta**k
        if tu < 1e-17:
            break
    root4 = cmath.exp(0.25 * cmath.log(xi))
    pref = 1.0 / (2.0 * math.sqrt(math.pi))
    if scaled:
        e = 1.0
    else:
        if zeta.real < -700.0:
            raise OverflowError("airy_ai overflow: Re((2/3) xi^(3/2)) very negative on the growing branch")
        e = cmath.exp(-zeta)
    ai = pref / root4 * e * su
    dai = -pref * root4 * e * sv
    return ai, dai


_OMEGA = cmath.exp(2j * math.pi / 3.0)

# Between the series and asymptotic regimes neither method reaches full
# double accuracy (series cancellation vs. truncation floor ~ e^(-2|zeta|)),
# so that band is evaluated in extended precision.
_ASYMP_RADIUS = 8.3


def _airy_mpmath(xi):
    import mpmath as mp

    with mp.workdps(30):
        ai = complex(mp.airyai(xi))
        dai = complex(mp.airyai(xi, 1))
    return ai, dai


@lru_cache(maxsize=4)
def _genlaguerre_rule(order_shift):
    from scipy.special import roots_genlaguerre

    x, w = roots_genlaguerre(48, order_shift)
    return x, w


def _airy_bessel_integral(x):
    """(Ai, Ai') for real x in the intermediate band via the K_nu integral
    representation K_nu(z) = sqrt(pi/(2z)) e^-z / Gamma(nu+1/2)
    * int_0^inf e^-u u^(nu-1/2) (1 + u/(2z))^(nu-1/2) du,
    with Ai = sqrt(x/3)/pi K_{1/3}((2/3)x^{3/2}) and
    Ai' = -x/(pi sqrt(3)) K_{2/3}."""
    z = (2.0 / 3.0) * x ** 1.5
    out = []
    for nu in (1.0 / 3.0, 2.0 / 3.0):
        u, w = _genlaguerre_rule(nu - 0.5)
        integral = float(np.sum(w * (1.0 + u / (2.0 * z)) ** (nu - 0.5)))
        out.append(math.sqrt(math.pi / (2.0 * z)) * math.exp(-z)
                   * integral / math.gamma(nu + 0.5))
    k13, k23 = out
    ai = math.sqrt(x / 3.0) / math.pi * k13
    dai = -x / (math.pi * math.sqrt(3.0)) * k23
    return complex(ai), complex(dai)


def _airy_pair(xi, scaled=False):
    xi = complex(xi)
    r = abs(xi)
    if r <= _ASYMP_RADIUS:
        # series cancellation loses ~ e^(|zeta| + Re zeta) relative digits
        zeta = (2.0 / 3.0) * xi * cmath.sqrt(xi)
        if abs(zeta) + zeta.real <= 8.0:
            ai, dai = _airy_series(xi)
        elif xi.imag == 0.0 and xi.real > 0.0:
            ai, dai = _airy_bessel_integral(xi.real)
        else:
            ai, dai = _airy_mpmath(xi)
        if scaled:
            e = cmath.exp(zeta)
            return ai * e, dai * e
        return ai, dai
    if abs(cmath.phase(xi)) <= _TWO_THIRDS_PI:
        return _airy_asymptotic(xi, scaled=scaled)
    # rotate into the valid sector: Ai(xi) = -w Ai(w xi) - w^2 Ai(w^2 xi)
    a1, d1 = _airy_asymptotic(_OMEGA * xi)
    a2, d2 = _airy_asymptotic(_OMEGA**2 * xi)
    ai = -_OMEGA * a1 - _OMEGA**2 * a2
    dai = -(_OMEGA**2) * d1 - _OMEGA * d2
    if scaled:
        e = cmath.exp((2.0 / 3.0) * xi * cmath.sqrt(xi))
        return ai * e, dai * e
    return ai, dai


def airy_ai(xi):
    """Airy function Ai at a complex point."""
    return _airy_pair(xi)[0]


def airy_ai_prime(xi):
    """Derivative Ai' at a complex point."""
    return _airy_pair(xi)[1]


def airy_ai_scaled(xi):
    """Ai(xi) * exp((2/3) xi^(3/2)), principal power; bounded on |arg xi| <= 2pi/3."""
    return _airy_pair(xi, scaled=True)[0]


def airy_ai_prime_scaled(xi):
    """Ai'(xi) * exp((2/3) xi^(3/2)), principal power."""
    return _airy_pair(xi, scaled=True)[1]


def _bessel_j_series(alpha, x):
    """Ascending series for J_alpha and J_alpha'; for x <= ~12."""
    q = 0.25 * x * x
    term = 1.0
    s = 1.0
    sp = 0.0  # sum for the derivative of the bracket * (2k) / x
    k = 0
    while True:
        k += 1
        term *= -q / (k * (k + alpha))
        s += term
        sp += term * 2 * k / x
        if abs(term) < 1e-18 * abs(s) or k > 200:
            break
    lead = math.exp(alpha * math.log(0.5 * x) - math.lgamma(alpha + 1.0))
    j = lead * s
    jp = lead * (sp + s * alpha / x)
    return j, jp


def _bessel_j_miller(alpha, x):
    """Backward (Miller) recurrence for J_alpha, J_alpha'; real order alpha >= 0.

    Normalized with the Neumann-series identity
    (x/2)^mu = sum_k (mu+2k) Gamma(mu+k)/k! J_{mu+2k}(x), mu = frac(alpha).
    """
    mu = alpha - math.floor(alpha)
    n_down = int(alpha - mu)
    top = int(max(alpha, x)) + 20 + int(3.0 * max(alpha, x) ** (1.0 / 3.0))
    # orders mu + j for j = top+1 down to 0
    jj = [0.0] * (top + 2)
    jj[top + 1] = 0.0
    jj[top] = 1e-280
    for j in range(top, 0, -1):
        nu = mu + j
        jj[j - 1] = (2.0 * nu / x) * jj[j] - jj[j + 1]
        if abs(jj[j - 1]) > 1e250:
            for i in range(j - 1, top + 2):
                jj[i] *= 1e-250
    # normalization sum over even offsets
    if mu == 0.0:
        s = jj[0]
        for k in range(1, (top // 2) + 1):
            s += 2.0 * jj[2 * k]
        target = 1.0
    else:
        # (x/2)^mu = sum_k (mu+2k) Gamma(mu+k)/k! J_{mu+2k}; divide through
        # by Gamma(mu) to keep the weights of moderate size
        s = 0.0
        lg_mu = math.lgamma(mu)
        for k in range(0, (top // 2) + 1):
            w = math.exp(math.lgamma(mu + k) - math.lgamma(k + 1.0) - lg_mu) * (mu + 2 * k)
            s += w * jj[2 * k]
        target = math.exp(mu * math.log(0.5 * x) - lg_mu)
    scale = target / s
    j_a = jj[n_down] * scale
    j_a1 = jj[n_down + 1] * scale
    jp = -j_a1 + (alpha / x) * j_a
    return j_a, jp


@dataclass(frozen=True)
class UniformBesselFrame:
    """Turning-point variables of the large-order Bessel expansion.

    t is the scaled argument x/alpha, zeta the Airy variable with
    (2/3) zeta^(3/2) = integral_t^1 sqrt(1-s^2)/s ds for t <= 1 (negative
    branch for t > 1), and prefactor = (4 zeta / (1-t^2))^(1/4).
    """

    t: float
    zeta: float
    prefactor: float

    @classmethod
    def from_t(cls, t):
        if t <= 0:
            raise ValueError("t must be positive")
        zeta = bessel_uniform_zeta(t)
        if abs(t - 1.0) < 1e-6:
            pref = 2.0 ** (1.0 / 3.0) * (1.0 + 0.2 * (1.0 - t))
        else:
            pref = (4.0 * zeta / (1.0 - t * t)) ** 0.25
        return cls(t=t, zeta=zeta, prefactor=pref)


def bessel_uniform_zeta(t):
    """Airy variable zeta(t) of the uniform Bessel expansion; sign(zeta)=sign(1-t)."""
    if t <= 0:
        raise ValueError("t must be positive")
    if abs(t - 1.0) < 1e-3:
        u = 1.0 - t
        # zeta = 2^(1/3) u (1 + 3u/10 + 32 u^2/175 + ...)
        return 2.0 ** (1.0 / 3.0) * u * (1.0 + 0.3 * u + (32.0 / 175.0) * u * u)
    if t < 1.0:
        r = math.sqrt(1.0 - t * t)
        val = math.log((1.0 + r) / t) - r
        return (1.5 * val) ** (2.0 / 3.0)
    r = math.sqrt(t * t - 1.0)
    val = r - math.acos(1.0 / t)
    return -((1.5 * val) ** (2.0 / 3.0))


def _bessel_j_uniform(alpha, x, correction=True):
    """Uniform large-order evaluation of J_alpha(x), J_alpha'(x) via the
    Airy-type expansion in t = x/alpha.

    correction=True adds the first Airy' correction term B0(zeta)/alpha^(4/3)
    for J itself, shrinking the leading-order O(alpha^(-4/3)) budget to
    O(alpha^(-2)); J' is kept at its leading term (O(alpha^(-2/3)) budget).
    """
    t = x / alpha
    frame = UniformBesselFrame.from_t(t)
    az = alpha ** (2.0 / 3.0) * frame.zeta
    ai, dai = _airy_pair(az)
    ai = ai.real
    dai = dai.real
    j = frame.prefactor * alpha ** (-1.0 / 3.0) * ai
    jp = -(2.0 / t) / frame.prefactor * alpha ** (-2.0 / 3.0) * dai
    if correction:
        j += frame.prefactor * alpha ** (-5.0 / 3.0) * dai * _uniform_b0(t, frame.zeta)
    return j, jp


_B0_TURNING = 2.0 ** (1.0 / 3.0) / 70.0


def _uniform_b0(t, zeta):
    """First correction coefficient B0(zeta) of the uniform expansion.

    The two closed-form pieces cancel to fourth order at the turning point,
    so a short Taylor patch is used for |t - 1| < 5e-3 (B0(0) = 2^(1/3)/70).
    """
    if abs(t - 1.0) < 5e-3:
        return _B0_TURNING - 0.0111993 * (t - 1.0)
    if t < 1.0:
        w = 1.0 - t * t
        return (-5.0 / (48.0 * zeta * zeta)
                + (5.0 / (24.0 * w ** 1.5) - 1.0 / (8.0 * math.sqrt(w))) / math.sqrt(zeta))
    w = t * t - 1.0
    return (-5.0 / (48.0 * zeta * zeta)
            + (5.0 / (24.0 * w ** 1.5) + 1.0 / (8.0 * math.sqrt(w))) / math.sqrt(-zeta))


def bessel_j(alpha, x, _force_branch=None):
    """Bessel J_alpha(x) for real order alpha >= 0 and x > 0."""
    return _bessel_j_pair(alpha, x, _force_branch)[0]


def bessel_j_prime(alpha, x, _force_branch=None):
    """Derivative of J_alpha at real x > 0."""
    return _bessel_j_pair(alpha, x, _force_branch)[1]


def _bessel_j_pair(alpha, x, force=None):
    if x < 0:
        raise ValueError("bessel_j requires x >= 0")
    if alpha < 0:
        raise ValueError("bessel_j requires alpha >= 0")
    if x == 0:
        return (1.0, 0.0) if alpha == 0 else (0.0, 0.0)
    branch = force
    if branch is None:
        branch = "uniform" if alpha > UNIFORM_ORDER_SWITCH else "recurrence"
    if branch == "uniform":
        return _bessel_j_uniform(alpha, x)
    if x <= 12.0:
        return _bessel_j_series(alpha, x)
    return _bessel_j_miller(alpha, x)


@dataclass(frozen=True)
class ModifiedBesselSet:
    """I, K and Hankel H1/H2 values with derivatives at one point."""

    i: complex
    k: complex
    h1: complex
    h2: complex
    i_prime: complex
    k_prime: complex
    h1_prime: complex
    h2_prime: complex


def bessel_modified(alpha, xi):
    """Modified Bessel I_a, K_a and Hankel H1_a, H2_a with derivatives.

    Complex xi != 0, moderate order (envelope alpha <= 10, |xi| <= 50,
    which covers every parametrix jump check).  The Hankel values are
    produced from K by the quarter-turn rotation identities.
    """
    xi = complex(xi)
    if xi == 0:
        raise UnsupportedRangeError("xi must be nonzero")
    if alpha > 10.0:
        raise UnsupportedRangeError("order outside supported envelope (alpha <= 10)")
    if abs(xi) > 50.0 and not (xi.imag == 0.0 and xi.real > 0.0):
        raise UnsupportedRangeError("complex argument outside supported envelope (|xi| <= 50)")
    i0 = complex(_sp.iv(alpha, xi))
    k0 = complex(_sp.kv(alpha, xi))
    ip = 0.5 * (complex(_sp.iv(alpha - 1.0, xi)) + complex(_sp.iv(alpha + 1.0, xi)))
    kp = -0.5 * (complex(_sp.kv(alpha - 1.0, xi)) + complex(_sp.kv(alpha + 1.0, xi)))
    rot = cmath.exp(-0.5j * math.pi * alpha)
    zm = xi * cmath.exp(-0.5j * math.pi)
    zp = xi * cmath.exp(0.5j * math.pi)
    h1 = (2.0 / (math.pi * 1j)) * rot * complex(_sp.kv(alpha, zm))
    h1p = -(2.0 / math.pi) * rot * _kv_prime(alpha, zm)
    h2 = -(2.0 / (math.pi * 1j)) / rot * complex(_sp.kv(alpha, zp))
    h2p = -(2.0 / math.pi) / rot * _kv_prime(alpha, zp)
    return ModifiedBesselSet(i=i0, k=k0, h1=h1, h2=h2,
                             i_prime=ip, k_prime=kp, h1_prime=h1p, h2_prime=h2p)


def _kv_prime(alpha, z):
    return -0.5 * (complex(_sp.kv(alpha - 1.0, z)) + complex(_sp.kv(alpha + 1.0, z)))


def bessel_eta(z):
    """Exponent eta(z) = sqrt(1+z^2) + log(z / (1 + sqrt(1+z^2))).

    Branch cut of the square root on [-i, i]; evaluated with principal
    branches, valid for Re z > 0.
    """
    z = complex(z)
    r = cmath.sqrt(1.0 + z * z)
    return r + cmath.log(z / (1.0 + r))
