"""Matrix-valued Riemann-Hilbert objects.

The global solution pieces (the skew-jump solution N, the outer solution
S_inf), the auxiliary circle-jump solution A_inf built from contour
integrals, the Airy and Bessel parametrices with their analytic prefactors,
exact matching-error matrices, and the leading-order assembly of the
orthogonal-polynomial solution Y on (0, inf).

Boundary values on cuts follow the side conventions of rh_scalar; unless a
side is passed, real points on (0, 1) are evaluated from above, matching
the Y_+ boundary-value convention.
"""

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import special as _sp

from critlue import rh_scalar as rs
from critlue import specfun as sf
from critlue.rh_scalar import ScalingParams, Side

SIGMA3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
OMEGA = cmath.exp(2j * math.pi / 3.0)
_TWO_PI = 2.0 * math.pi

# constant matrices of the matching algebra
_C_AIRY = np.array([[OMEGA ** -0.25, OMEGA**0.5],
                    [-(OMEGA ** -0.25), OMEGA**0.5]], dtype=complex)
_C_BESSEL = np.array([[0.5, 0.5j], [1j, 1.0]], dtype=complex)


class ContourTag(enum.Enum):
    GAMMA_UP = "gamma-up"
    GAMMA_DOWN = "gamma-down"
    CUT_01 = "cut-01"
    CUT_1INF = "cut-1inf"
    CIRCLE_0 = "circle-0"
    CIRCLE_1 = "circle-1"
    SIGMA_AI = "sigma-ai"
    SIGMA_BES = "sigma-bes"


@dataclass(frozen=True)
class JumpResidual:
    location: complex
    contour_tag: ContourTag
    residual: float


def mat2c(a11, a12, a21, a22):
    return np.array([[a11, a12], [a21, a22]], dtype=complex)


def opnorm(m):
    return float(np.linalg.norm(m, 2))


def _exp_sigma3(w):
    return np.array([[cmath.exp(w), 0.0], [0.0, cmath.exp(-w)]], dtype=complex)


def _default_side(z, side):
    # real positive points default to the Y_+ (upper) boundary convention
    z = complex(z)
    if side is Side.OFF and z.imag == 0.0 and z.real >= 0.0:
        return Side.ABOVE
    return side


# ---------------------------------------------------------------------------
# global pieces


def script_N(z, side=Side.OFF):
    """Solution of the skew-jump problem on (0,1): N+ = N- [[0,1],[-1,0]],
    N(inf) = I.  Built from v(z) = ((z-1)/z)^(1/4)."""
    z = complex(z)
    if z == 0.0 or z == 1.0:
        raise ValueError("script_N: branch points 0 and 1 rejected")
    side = _default_side(z, side)
    if z.imag == 0.0 and 0.0 < z.real < 1.0:
        x = z.real
        mag = ((1.0 - x) / x) ** 0.25
        v = mag * cmath.exp(1j * math.pi / 4.0)
        if side is Side.BELOW:
            v = mag * cmath.exp(-1j * math.pi / 4.0)
    else:
        v = cmath.exp(0.25 * cmath.log((z - 1.0) / z))
    iv = 1.0 / v
    return 0.5 * mat2c(v + iv, -1j * (v - iv), 1j * (v - iv), v + iv)


def s_infinity(z, params, side=Side.OFF):
    """Outer solution S_inf = D_inf^-1 N(z) D(z); -> I at infinity."""
    side = _default_side(z, side)
    alpha = params.alpha
    h = rs.h_fn(z, alpha, side)
    q = rs.h_infinity(alpha)
    return _exp_sigma3(-q) @ script_N(z, side) @ _exp_sigma3(h)


# ---------------------------------------------------------------------------
# the circle-jump solution A_inf


def _circle_nodes(delta, nodes):
    ang = (np.arange(nodes) + 0.5) * (_TWO_PI / nodes)
    return delta * np.exp(1j * ang), ang


def _ell_exponent(c, delta=0.25, nodes=256):
    """Real exponent E(c) with ell(c) = i e^{E(c)}; E = -c J - 2 log 2."""
    for n in (nodes, 2 * nodes, 4 * nodes):
        s, _ = _circle_nodes(delta, n)
        vals = np.array([2.0 / rs.phi_right(si) / rs.sqrt_z_zm1(si) for si in s])
        integral = np.sum(vals * s) * (_TWO_PI / n) * 1j  # ds = i s d(theta)
        j_term = (integral / (1j * math.pi)).real
        e_val = -c * j_term - 2.0 * math.log(2.0)
        if n > nodes:
            if abs(e_val - prev) <= 1e-10 * max(1.0, abs(e_val)):
                return e_val
        prev = e_val
    raise ArithmeticError("ell_of_c: contour quadrature did not converge")


def ell_of_c(c, delta=0.25, nodes=256):
    """Constant ell(c) of the circle-jump problem; purely imaginary, i/4 at c=0."""
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie in (0, 1)")
    if nodes < 64:
        raise ValueError("need at least 64 quadrature nodes")
    return 1j * math.exp(_ell_exponent(c, delta, nodes))


def _g_exponent(z, c, e_val, delta, nodes, side=Side.OFF):
    """G(z;c) = -(c/(pi i)) oint R(z)/(phi(s) R(s) (s-z)) ds + E/2 + log(Q)/2,
    with R = sqrt(z(z-1)) and Q = 2 + (2z-1)/R; f1 = e^G."""
    z = complex(z)
    R = rs.sqrt_z_zm1(z, side)
    s, _ = _circle_nodes(delta, nodes)
    dens = np.array([1.0 / (rs.phi_right(si) * rs.sqrt_z_zm1(si) * (si - z)) for si in s])
    integral = np.sum(dens * s) * (_TWO_PI / nodes) * 1j
    cauchy = -(c / (1j * math.pi)) * R * integral
    Q = 2.0 + (2.0 * z - 1.0) / R
    return cauchy + 0.5 * e_val + 0.5 * cmath.log(Q), R


def a_infinity(z, c, delta=0.25, nodes=256, side=Side.OFF, _continued_from_inside=False):
    """Auxiliary solution A_inf(z) of the circle-jump problem at radius delta.

    det = 1, -> I at infinity, analytic across (0,1); rejects z within 1e-6
    of the circle |z| = delta where the contour quadrature degrades.  With
    _continued_from_inside=True the analytic continuation of the inside
    piece is evaluated at an outside point (used for jump checks).
    """
    z = complex(z)
    side = _default_side(z, side)
    if abs(abs(z) - delta) < 1e-6:
        raise ValueError("a_infinity: z too close to the jump circle")
    e_c = _ell_exponent(c, delta, nodes)
    e_mc = _ell_exponent(-c, delta, nodes)
    g_f, R = _g_exponent(z, c, e_c, delta, nodes, side)
    g_h, _ = _g_exponent(z, -c, e_mc, delta, nodes, side)
    if _continued_from_inside:
        # Plemelj: the inside piece continues across the circle with
        # G_in = G_out - 2c/phi (and +2c/phi for the h-row problem)
        p = rs.phi_right(z, side)
        g_f = g_f - 2.0 * c / p
        g_h = g_h + 2.0 * c / p
    ell_c = 1j * math.exp(e_c)
    ell_mc = 1j * math.exp(e_mc)
    f1 = cmath.exp(g_f)
    f2 = ell_c * cmath.exp(-g_f) / R
    h2 = cmath.exp(g_h)
    h1 = -ell_mc * cmath.exp(-g_h) / R
    B = mat2c(f1, f2, h1, h2)
    n_inv = np.linalg.inv(script_N(z, side))
    return B @ n_inv


def a_infinity_jump(z, c, side=Side.OFF):
    """Jump matrix of A_inf on the circle: N e^{-2c/phi sigma3} N^{-1}."""
    side = _default_side(z, side)
    n = script_N(z, side)
    return n @ _exp_sigma3(-2.0 * c / rs.phi_right(z, side)) @ np.linalg.inv(n)


# ---------------------------------------------------------------------------
# parametrices


def _airy_sector(xi):
    th = cmath.phase(complex(xi))
    if 0.0 < th < 2.0 * math.pi / 3.0:
        return "I"
    if 2.0 * math.pi / 3.0 < th < math.pi:
        return "II"
    if -math.pi < th < -2.0 * math.pi / 3.0:
        return "III"
    if -2.0 * math.pi / 3.0 < th < 0.0:
        return "IV"
    raise ValueError("p_airy: xi on a contour ray; pass the sector explicitly")


def p_airy(xi, sector=None):
    """Airy parametrix; sector in {I, II, III, IV} per the standard division
    (rays at arg 0, 2pi/3, pi, -2pi/3).  det = omega^(1/4) / (2 pi)."""
    xi = complex(xi)
    if sector is None:
        sector = _airy_sector(xi)
    w = OMEGA
    ai, dai = sf.airy_ai, sf.airy_ai_prime
    if sector == "I":
        B = mat2c(ai(xi), ai(w**2 * xi), dai(xi), w**2 * dai(w**2 * xi))
    elif sector == "IV":
        B = mat2c(ai(xi), -(w**2) * ai(w * xi), dai(xi), -dai(w * xi))
    elif sector == "II":
        B = mat2c(-w * ai(w * xi), ai(w**2 * xi), -(w**2) * dai(w * xi), w**2 * dai(w**2 * xi))
    elif sector == "III":
        B = mat2c(-(w**2) * ai(w**2 * xi), -(w**2) * ai(w * xi), -w * dai(w**2 * xi), -dai(w * xi))
    else:
        raise ValueError(f"unknown Airy sector {sector!r}")
    return B @ _exp_sigma3(-0.25 * cmath.log(w))


def _bessel_sector(xi):
    th = cmath.phase(complex(xi))
    if abs(th) < 2.0 * math.pi / 3.0:
        return "I"
    if 2.0 * math.pi / 3.0 < th < math.pi:
        return "II"
    if -math.pi < th < -2.0 * math.pi / 3.0:
        return "III"
    raise ValueError("p_bessel: xi on a contour ray; pass the sector explicitly")


def p_bessel(xi, alpha, sector=None):
    """Bessel parametrix at moderate order (envelope of specfun applies).

    Sector I covers |arg xi| < 2pi/3; II and III the obtuse sectors flanking
    the negative axis (rays at 2pi/3, pi, -2pi/3)."""
    xi = complex(xi)
    if sector is None:
        sector = _bessel_sector(xi)
    if sector == "I":
        rt = cmath.sqrt(xi)
        mb = sf.bessel_modified(alpha, 2.0 * rt)
        return mat2c(mb.i, (1j / math.pi) * mb.k,
                     2j * math.pi * rt * mb.i_prime, -2.0 * rt * mb.k_prime)
    if xi.imag == 0.0 and xi.real < 0.0:
        # on the negative axis xi^(1/2) takes its boundary value: +i sqrt|xi|
        # seen from sector II, -i sqrt|xi| seen from sector III
        rt = 1j * math.sqrt(-xi.real) if sector == "II" else -1j * math.sqrt(-xi.real)
        mrt = complex(math.sqrt(-xi.real))
    else:
        rt = cmath.sqrt(xi)   # principal, continuous inside each open sector
        mrt = cmath.sqrt(-xi)
    mb = sf.bessel_modified(alpha, 2.0 * mrt)
    if sector == "II":
        B = mat2c(0.5 * mb.h1, 0.5 * mb.h2,
                  math.pi * rt * mb.h1_prime, math.pi * rt * mb.h2_prime)
        return B @ _exp_sigma3(0.5 * alpha * math.pi * 1j)
    if sector == "III":
        B = mat2c(0.5 * mb.h2, -0.5 * mb.h1,
                  -math.pi * rt * mb.h2_prime, math.pi * rt * mb.h1_prime)
        return B @ _exp_sigma3(-0.5 * alpha * math.pi * 1j)
    raise ValueError(f"unknown Bessel sector {sector!r}")


# ---------------------------------------------------------------------------
# local solutions and matching


def _pow_sigma3(w, p, side=Side.ABOVE):
    """diag(w^p, w^-p), principal off the negative axis, side-resolved on it."""
    w = complex(w)
    if w.imag == 0.0 and w.real < 0.0:
        sgn = 1.0 if side is not Side.BELOW else -1.0
        lg = math.log(-w.real) + sgn * 1j * math.pi
    else:
        lg = cmath.log(w)
    return _exp_sigma3(p * lg)


def _flip(side):
    if side is Side.ABOVE:
        return Side.BELOW
    if side is Side.BELOW:
        return Side.ABOVE
    return side


def m_airy(z, params, side=Side.OFF):
    """Analytic prefactor of the local solution at z = 1."""
    side = _default_side(z, side)
    alpha = params.alpha
    xi = params.M ** (2.0 / 3.0) * rs.f_left(z)
    psi = rs.psi_left(z, side)
    pref = (2.0 * math.sqrt(math.pi)) * _exp_sigma3(-rs.h_infinity(alpha))
    return (pref @ script_N(z, side) @ _pow_sigma3(psi, -1.0, side)
            @ np.linalg.inv(_C_AIRY) @ _pow_sigma3(xi, 0.25, side))


def s_local_left(z, params, side=Side.OFF):
    """Local solution S_left = M_Ai P_Ai(M^(2/3) f_left) e^{w_hat/2 sigma3} e^{N phi_left sigma3}."""
    side = _default_side(z, side)
    z = complex(z)
    xi = params.M ** (2.0 / 3.0) * rs.f_left(z)
    if z.imag == 0.0:
        sector = "II" if z.real < 1.0 else "I"
        if side is Side.BELOW:
            sector = "III" if z.real < 1.0 else "IV"
        P = p_airy(xi, sector)
    else:
        P = p_airy(xi)
    wexp = 0.5 * rs.w_hat(z, params.alpha) + params.N * rs.phi_left(z, side)
    return m_airy(z, params, side) @ P @ _exp_sigma3(wexp)


def m_bessel(z, params, side=Side.OFF):
    """Analytic prefactor of the local solution at z = 0."""
    side = _default_side(z, side)
    alpha = params.alpha
    xi = params.M**2 * rs.f_right(z)
    psi = rs.psi_right(z, side)
    pref = _exp_sigma3(-rs.h_infinity(alpha))
    # f_right flips half-planes, so the xi-power side is the flip of z's
    return (pref @ script_N(z, side) @ _pow_sigma3(psi, -1.0, side)
            @ np.linalg.inv(_C_BESSEL) @ _pow_sigma3(xi, 0.25, _flip(side))
            @ _exp_sigma3(0.5 * math.log(math.pi)))


def s_local_right(z, params, side=Side.OFF):
    """Local solution S_right near z = 0.

    For complex z the modified-Bessel envelope restricts the order; for real
    z in (0, delta) the Bessel arguments are real and any order is allowed
    (the boundary value from the requested side of the cut is returned).
    """
    side = _default_side(z, side)
    z = complex(z)
    xi = params.M**2 * rs.f_right(z)
    if z.imag == 0.0 and z.real > 0.0:
        P = _p_bessel_neg_axis(xi, params.alpha, side)
    else:
        P = p_bessel(xi, params.alpha)
    wexp = 0.5 * rs.w_check(z, params.alpha, side) + params.N * rs.phi_right(z, side)
    return m_bessel(z, params, side) @ P @ _exp_sigma3(wexp)


def _p_bessel_neg_axis(xi, alpha, side):
    """Bessel parametrix on the negative axis (xi < 0) by boundary values.

    The upper side of the z-cut maps to the lower side of the xi-ray (the
    conformal map flips half-planes), i.e. sector III for side ABOVE.
    Arguments are real, so large orders are fine (scipy Hankel functions).
    """
    xi = complex(xi).real
    if xi >= 0.0:
        raise ValueError("expected a negative parametrix argument")
    u = 2.0 * math.sqrt(-xi)
    h1 = complex(_sp.hankel1(alpha, u))
    h2 = complex(_sp.hankel2(alpha, u))
    h1p = complex(_sp.h1vp(alpha, u))
    h2p = complex(_sp.h2vp(alpha, u))
    rt = -0.5j * u if side is Side.ABOVE else 0.5j * u  # xi^(1/2) boundary value
    if side is Side.ABOVE:
        B = mat2c(0.5 * h2, -0.5 * h1, -math.pi * rt * h2p, math.pi * rt * h1p)
        return B @ _exp_sigma3(-0.5 * alpha * math.pi * 1j)
    B = mat2c(0.5 * h1, 0.5 * h2, math.pi * rt * h1p, math.pi * rt * h2p)
    return B @ _exp_sigma3(0.5 * alpha * math.pi * 1j)


def e_airy_exact(xi):
    """Exact E_Ai(xi) = 2 sqrt(pi) xi^{sigma3/4} P_Ai(xi) e^{(2/3) xi^{3/2} sigma3}.

    Tends to the constant matrix C_AIRY; the deviation is the matching error."""
    xi = complex(xi)
    zeta = (2.0 / 3.0) * xi * cmath.sqrt(xi)
    return (2.0 * math.sqrt(math.pi)
            * _pow_sigma3(xi, 0.25) @ p_airy(xi) @ _exp_sigma3(zeta))


def matching_residual_airy(params, delta=0.25, n_points=16):
    """max over the circle |z-1| = delta of ||E_check_Ai(z) - I||.

    Uses the conjugation-free form E_check = N psi^{-s3} C^{-1} E_Ai psi^{s3} N^{-1},
    exactly equal to D_inf S_left S_inf^{-1} D_inf^{-1}."""
    worst = 0.0
    cinv = np.linalg.inv(_C_AIRY)
    for k in range(n_points):
        th = (k + 0.5) * _TWO_PI / n_points
        z = 1.0 + delta * cmath.exp(1j * th)
        xi = params.M ** (2.0 / 3.0) * rs.f_left(z)
        n = script_N(z)
        psi = _pow_sigma3(rs.psi_left(z), 1.0)
        echeck = n @ np.linalg.inv(psi) @ cinv @ e_airy_exact(xi) @ psi @ np.linalg.inv(n)
        worst = max(worst, opnorm(echeck - np.eye(2)))
    return worst


def e_bessel_exact(z, params, c):
    """Exact E_Bes at xi = f_right(z), via exponentially scaled I/K Bessel
    functions so that large M never overflows.  Valid for |arg f_right| < 2pi/3."""
    M, alpha = params.M, params.alpha
    xi = rs.f_right(z)
    if abs(cmath.phase(xi)) >= 2.0 * math.pi / 3.0:
        raise ValueError("e_bessel_exact: argument outside sector I")
    s = cmath.sqrt(xi)
    w = 2.0 * M * s
    scale = cmath.exp(abs(w.real) - w)  # ive carries e^{-|Re w|}
    i0 = complex(_sp.ive(alpha, w)) * scale
    i1 = 0.5 * (complex(_sp.ive(alpha - 1.0, w)) + complex(_sp.ive(alpha + 1.0, w))) * scale
    k0 = complex(_sp.kve(alpha, w))   # K e^{+w}
    k1 = -0.5 * (complex(_sp.kve(alpha - 1.0, w)) + complex(_sp.kve(alpha + 1.0, w)))
    ec = cmath.exp(c / s)
    rtm = cmath.sqrt(math.pi * M)
    x4 = cmath.exp(0.25 * cmath.log(xi))
    # E = (pi M)^{s3/2} xi^{s3/4} P e^{c/s sigma3} e^{-w sigma3/... } recombined
    e11 = rtm * x4 * i0 * ec
    e12 = rtm * x4 * (1j / math.pi) * k0 / ec
    e21 = (1.0 / rtm) / x4 * 2j * math.pi * M * s * i1 * ec
    e22 = (1.0 / rtm) / x4 * (-2.0 * M * s) * k1 / ec
    return mat2c(e11, e12, e21, e22)


def matching_residual_bessel(params, c=None, delta=0.25, n_points=16):
    """max over (a sector-I arc of) |z| = delta of ||E_check_Bes(z) - I||.

    c defaults to alpha^2 / (4M), the value for which the second-order
    Bessel exponent is matched exactly at finite size."""
    if c is None:
        c = params.alpha**2 / (4.0 * params.M)
    worst = 0.0
    cinv = np.linalg.inv(_C_BESSEL)
    for k in range(n_points):
        # arg f_right(z) ~ pi + arg z: stay in sector I of the xi plane
        th = math.pi + (k + 0.5 - n_points / 2) * (1.1 / n_points)
        z = delta * cmath.exp(1j * th)
        n = script_N(z)
        psi = _pow_sigma3(rs.psi_right(z), 1.0)
        echeck = (n @ np.linalg.inv(psi) @ cinv @ e_bessel_exact(z, params, c)
                  @ psi @ np.linalg.inv(n))
        worst = max(worst, opnorm(echeck - np.eye(2)))
    return worst


# ---------------------------------------------------------------------------
# leading-order Y on (0, infinity)


def y_plus_asymptotic(x, region, params, delta=0.25, c=None, nodes=256):
    """Leading-order boundary value Y_+(x), x > 0, with the small-norm error
    matrix set to the identity.

    Regions: 'a' for (0, delta], 'b' for (delta, 1], 'c' for (1, 1+delta],
    'd' for (1+delta, inf).  Returns the 2x2 matrix; entries can be huge for
    large N (the e^{N g} factor is applied directly)."""
    x = float(x)
    if x <= 0.0:
        raise ValueError("y_plus_asymptotic: x must be positive")
    _check_region(x, region, delta)
    if c is None:
        c = params.alpha**2 / (4.0 * params.M)
    N, alpha = params.N, params.alpha
    half_ell = 0.5 * params.ell_N
    a_mat = a_infinity(x, c, delta=delta, nodes=nodes, side=Side.ABOVE,
                       _continued_from_inside=(abs(x) < delta))
    dinf = _exp_sigma3(rs.h_infinity(alpha))
    dinf_inv = _exp_sigma3(-rs.h_infinity(alpha))
    g = rs.g_fn(x, Side.ABOVE).value

    if region == "a":
        core = s_local_right(x, params, Side.ABOVE)
        lens = _lens_factor(x, params)
    elif region == "b":
        if x >= 1.0 - delta:
            core = s_local_left(x, params, Side.ABOVE)
        else:
            core = s_infinity(x, params, Side.ABOVE)
        lens = _lens_factor(x, params)
    elif region == "c":
        core = s_local_left(x, params, Side.ABOVE)
        lens = np.eye(2, dtype=complex)
    elif region == "d":
        core = s_infinity(x, params, Side.ABOVE)
        lens = np.eye(2, dtype=complex)
    else:
        raise ValueError("region must be one of 'a', 'b', 'c', 'd'")

    out = (_exp_sigma3(-half_ell) @ dinf_inv @ a_mat @ dinf @ core @ lens
           @ _exp_sigma3(N * g + half_ell))
    return out


def _check_region(x, region, delta):
    ok = {"a": 0.0 < x <= delta,
          "b": delta < x <= 1.0,
          "c": 1.0 < x <= 1.0 + delta,
          "d": x > 1.0 + delta}.get(region)
    if ok is None:
        raise ValueError("region must be one of 'a', 'b', 'c', 'd'")
    if not ok:
        raise ValueError(f"x = {x} is not inside region {region!r}")


def _lens_factor(x, params):
    """Lens-unfolding factor [[1,0],[e^{2N phi+ + w_hat}, 1]] on (0,1)."""
    w = 2.0 * params.N * rs.phi_right(x, Side.ABOVE) + rs.w_hat(x, params.alpha)
    return mat2c(1.0, 0.0, cmath.exp(w), 1.0)


# ---------------------------------------------------------------------------
# jump-residual verification harness


def _pair_residual(plus, minus, jump):
    return opnorm(plus - minus @ jump)


def verify_script_n(n_points=16):
    """Jump of N across (0,1) plus the normalization at infinity."""
    out = []
    J = mat2c(0.0, 1.0, -1.0, 0.0)
    for k in range(n_points):
        x = (k + 0.5) / n_points
        r = _pair_residual(script_N(x, Side.ABOVE), script_N(x, Side.BELOW), J)
        out.append(JumpResidual(complex(x), ContourTag.CUT_01, r))
    return out


def verify_s_infinity(params, n_points=16):
    out = []
    for k in range(n_points):
        x = (k + 0.5) / n_points
        J = mat2c(0.0, cmath.exp(-rs.w_hat(x, params.alpha)),
                  -cmath.exp(rs.w_hat(x, params.alpha)), 0.0)
        r = _pair_residual(s_infinity(x, params, Side.ABOVE),
                           s_infinity(x, params, Side.BELOW), J)
        out.append(JumpResidual(complex(x), ContourTag.CUT_01, r))
    return out


def verify_a_infinity(c, delta=0.25, nodes=512, n_points=16, offset=0.05):
    """Circle-jump residual of A_inf via the continued inside piece."""
    out = []
    for k in range(n_points):
        th = (k + 0.5) * _TWO_PI / n_points
        z = delta * (1.0 + offset) * cmath.exp(1j * th)
        plus = a_infinity(z, c, delta, nodes, _continued_from_inside=True)
        minus = a_infinity(z, c, delta, nodes)
        r = _pair_residual(plus, minus, a_infinity_jump(z, c))
        out.append(JumpResidual(z, ContourTag.CIRCLE_0, r))
    return out


_AIRY_RAYS = (
    (0.0, "I", "IV", mat2c(1, 1, 0, 1)),
    (2.0 * math.pi / 3.0, "I", "II", mat2c(1, 0, 1, 1)),
    (math.pi, "II", "III", mat2c(0, 1, -1, 0)),
    (-2.0 * math.pi / 3.0, "III", "IV", mat2c(1, 0, 1, 1)),
)


def _ray_point(r, ang):
    xi = r * cmath.exp(1j * ang)
    if abs(xi.imag) < 1e-14 * r:
        xi = complex(xi.real, 0.0)
    return xi


def verify_p_airy(n_points=16, r_max=4.6):
    # radii capped so that the growing entries stay ~ e^(2/3 r^1.5) <~ 1e3
    # and the absolute residual tolerance stays meaningful
    out = []
    for ang, plus_sec, minus_sec, J in _AIRY_RAYS:
        for k in range(n_points):
            r = 0.25 + (r_max - 0.25) * (k + 0.5) / n_points
            xi = _ray_point(r, ang)
            res = _pair_residual(p_airy(xi, plus_sec), p_airy(xi, minus_sec), J)
            out.append(JumpResidual(xi, ContourTag.SIGMA_AI, res))
    return out


def _bessel_rays(alpha):
    ea = cmath.exp(1j * math.pi * alpha)
    return (
        (2.0 * math.pi / 3.0, "I", "II", mat2c(1, 0, ea, 1)),
        (math.pi, "II", "III", mat2c(0, 1, -1, 0)),
        (-2.0 * math.pi / 3.0, "III", "I", mat2c(1, 0, 1.0 / ea, 1)),
    )


def verify_p_bessel(alpha, n_points=16, r_max=6.0):
    out = []
    for ang, plus_sec, minus_sec, J in _bessel_rays(alpha):
        for k in range(n_points):
            r = 0.2 + (r_max - 0.2) * (k + 0.5) / n_points
            xi = _ray_point(r, ang)
            res = _pair_residual(p_bessel(xi, alpha, plus_sec),
                                 p_bessel(xi, alpha, minus_sec), J)
            out.append(JumpResidual(xi, ContourTag.SIGMA_BES, res))
    return out


def verify_s_local_left(params, delta=0.25, n_points=16):
    """Jump of S_left on (1, 1+delta): upper-triangular with e^{-2N phi_left - w_hat}."""
    out = []
    for k in range(n_points):
        x = 1.0 + delta * (k + 0.5) / n_points
        J = mat2c(1.0, cmath.exp(-2.0 * params.N * rs.phi_left(x) - rs.w_hat(x, params.alpha)),
                  0.0, 1.0)
        r = _pair_residual(s_local_left(x, params, Side.ABOVE),
                           s_local_left(x, params, Side.BELOW), J)
        out.append(JumpResidual(complex(x), ContourTag.CUT_1INF, r))
    return out
