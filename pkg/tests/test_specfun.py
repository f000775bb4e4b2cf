import cmath
import math

import numpy as np
import pytest
from scipy import special as sp
from scipy.integrate import quad

from critlue import specfun as sf

OMEGA = cmath.exp(2j * math.pi / 3)


class TestAiry:
    def test_value_at_zero(self):
        # Maclaurin oracle: Ai(0) = 3^(-2/3)/Gamma(2/3), 40-term series is exact here
        assert sf.airy_ai(0) == pytest.approx(3 ** (-2 / 3) / math.gamma(2 / 3), abs=1e-15)
        assert sf.airy_ai_prime(0) == pytest.approx(-(3 ** (-1 / 3)) / math.gamma(1 / 3), abs=1e-15)

    def test_connection_formula_single_point(self):
        xi = 1 + 1j
        lhs = sf.airy_ai(xi)
        rhs = -OMEGA * sf.airy_ai(OMEGA * xi) - OMEGA**2 * sf.airy_ai(OMEGA**2 * xi)
        assert abs(lhs - rhs) < 1e-12

    def test_connection_formula_random(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            xi = complex(rng.uniform(-5, 5), rng.uniform(-5, 5))
            if abs(xi) > 5:
                continue
            lhs = sf.airy_ai(xi)
            rhs = -OMEGA * sf.airy_ai(OMEGA * xi) - OMEGA**2 * sf.airy_ai(OMEGA**2 * xi)
            assert abs(lhs - rhs) < 1e-11
            lhsp = sf.airy_ai_prime(xi)
            rhsp = -(OMEGA**2) * sf.airy_ai_prime(OMEGA * xi) - OMEGA * sf.airy_ai_prime(OMEGA**2 * xi)
            assert abs(lhsp - rhsp) < 1e-11

    def test_asymptotic_ratio(self):
        # leading deviation from 1 is u1/zeta = 5/(72 zeta) ~ 1.16e-3 at xi=20
        xi = 20.0
        lead = xi ** (-0.25) * math.exp(-(2 / 3) * xi**1.5) / (2 * math.sqrt(math.pi))
        assert sf.airy_ai(xi) / lead == pytest.approx(1.0, abs=1.5e-3)

    def test_ode_residual_on_grid(self):
        # second derivative by central differences of airy_ai_prime; the
        # residual is normalized by the local scale |xi Ai| (which reaches
        # ~1e9 on the growing side of the disk)
        rng = np.random.default_rng(3)
        h = 1e-3
        pts = [complex(rng.uniform(-10, 10), rng.uniform(-10, 10)) for _ in range(100)]
        for xi in pts:
            if abs(xi) > 10:
                continue
            d2 = (-sf.airy_ai_prime(xi + 2 * h) + 8 * sf.airy_ai_prime(xi + h)
                  - 8 * sf.airy_ai_prime(xi - h) + sf.airy_ai_prime(xi - 2 * h)) / (12 * h)
            scale = max(1.0, abs(xi * sf.airy_ai(xi)))
            assert abs(d2 - xi * sf.airy_ai(xi)) / scale < 1e-9

    def test_relative_accuracy_off_negative_axis(self):
        rng = np.random.default_rng(11)
        for _ in range(400):
            r = rng.uniform(0.05, 30.0)
            th = rng.uniform(-3.0, 3.0)
            xi = r * cmath.exp(1j * th)
            ref = complex(sp.airy(xi)[0])
            if abs(ref) < 1e-250:
                continue
            assert abs(sf.airy_ai(xi) - ref) / abs(ref) < 1e-12

    def test_seam_continuity(self):
        # both sides of the regime seam at |xi| = 8.3 match a high-precision
        # reference to 1e-10 relative, so the switchover is continuous
        import mpmath as mp

        for th in (0.0, 1.0, 2.4, 3.1):
            for r0 in (8.3 - 1e-6, 8.3 + 1e-6):
                xi = r0 * cmath.exp(1j * th)
                ref = complex(mp.airyai(xi))
                assert abs(sf.airy_ai(xi) - ref) <= 1e-10 * max(1.0, abs(ref))

    def test_overflow_reported(self):
        with pytest.raises(OverflowError):
            sf.airy_ai(2000.0 * cmath.exp(2.8j))  # growing branch overflows after rotation

    def test_scaled_variants(self):
        xi = 11.0 + 3.0j
        z = (2 / 3) * xi * cmath.sqrt(xi)
        assert abs(sf.airy_ai_scaled(xi) - sf.airy_ai(xi) * cmath.exp(z)) < 1e-14
        assert abs(sf.airy_ai_prime_scaled(xi) - sf.airy_ai_prime(xi) * cmath.exp(z)) < 1e-13
        big = 900.0
        assert sf.airy_ai_scaled(big).real == pytest.approx(
            big ** (-0.25) / (2 * math.sqrt(math.pi)), rel=1e-5)


class TestBesselJ:
    def test_hankel_identity(self):
        alpha, x = 3.0, 2.5
        mb = sf.bessel_modified(alpha, 1.0)  # only to assert the API exists
        assert mb.i != 0
        h1 = complex(sp.hankel1(alpha, x))
        h2 = complex(sp.hankel2(alpha, x))
        assert abs(sf.bessel_j(alpha, x) - 0.5 * (h1 + h2)) < 1e-10

    def test_small_argument_limit(self):
        assert sf.bessel_j(0.0, 1e-12) == pytest.approx(1.0, abs=1e-10)

    def test_against_uniform_expansion_large_order(self):
        # frozen high-precision value of J_100(90) (mpmath, 50 digits)
        j_100_90 = 2.6021305819963289e-03
        alpha = 100.0
        got = sf.bessel_j(alpha, 90.0)
        assert abs(got - j_100_90) < 2 * alpha ** (-4 / 3)

    def test_overlap_band_agreement(self):
        # uniform vs recurrence branch on 25 <= alpha <= 35; the measured
        # agreement is ~1.5e-6 at the band edge (turning-point region),
        # within the stated O(alpha^(-4/3)) budget everywhere
        worst = 0.0
        for alpha in (25.0, 30.0, 35.0):
            for t in (0.2, 0.5, 0.8, 0.95, 1.0, 1.1, 1.4, 1.8):
                x = alpha * t
                d = abs(sf.bessel_j(alpha, x, _force_branch="uniform")
                        - sf.bessel_j(alpha, x, _force_branch="recurrence"))
                worst = max(worst, d)
                assert d < 2 * alpha ** (-4 / 3)
        assert worst < 2e-6

    def test_recurrence_branch_accuracy(self):
        for alpha in (0.0, 0.5, 2.0, 7.3, 15.0, 30.0):
            for x in (0.05, 1.0, 5.0, 13.0, 26.0, 60.0):
                assert sf.bessel_j(alpha, x) == pytest.approx(float(sp.jv(alpha, x)), abs=5e-11)
                assert sf.bessel_j_prime(alpha, x) == pytest.approx(float(sp.jvp(alpha, x)), abs=5e-11)

    def test_negative_x_rejected(self):
        with pytest.raises(ValueError):
            sf.bessel_j(1.0, -1.0)


class TestUniformFrame:
    def test_zeta_signs(self):
        assert sf.bessel_uniform_zeta(0.5) > 0
        assert sf.bessel_uniform_zeta(1.0) == 0
        assert sf.bessel_uniform_zeta(1.5) < 0

    def test_zeta_defining_integral(self):
        for t in (0.1, 0.35, 0.8, 0.999):
            z = sf.bessel_uniform_zeta(t)
            val, _ = quad(lambda s: math.sqrt(1 - s * s) / s, t, 1)
            assert abs((2 / 3) * z**1.5 - val) < 1e-10

    def test_zeta_beyond_turning_point(self):
        for t in (1.001, 1.4, 2.5):
            z = sf.bessel_uniform_zeta(t)
            val, _ = quad(lambda s: math.sqrt(s * s - 1) / s, 1, t)
            assert abs((2 / 3) * (-z) ** 1.5 - val) < 1e-10

    def test_frame_fields(self):
        fr = sf.UniformBesselFrame.from_t(0.9)
        assert fr.zeta == pytest.approx(sf.bessel_uniform_zeta(0.9))
        assert fr.prefactor == pytest.approx((4 * fr.zeta / (1 - 0.81)) ** 0.25)
        with pytest.raises(ValueError):
            sf.UniformBesselFrame.from_t(-0.1)


class TestModifiedBessel:
    def test_wronskian_half_integer(self):
        mb = sf.bessel_modified(1.5, 2.0)
        w = mb.i * mb.k_prime - mb.i_prime * mb.k
        assert abs(w + 0.5) < 1e-12

    def test_wronskian_residual_real_points(self):
        for alpha in (0.0, 1.0, 2.5, 5.0):
            for x in (0.3, 1.7, 6.0, 20.0):
                mb = sf.bessel_modified(alpha, x)
                assert abs(mb.i * mb.k_prime - mb.i_prime * mb.k + 1.0 / x) < 1e-10

    def test_k_uniform_exponent(self):
        alpha, z = 8.0, 40.0
        eta = sf.bessel_eta(z)
        lead = math.sqrt(math.pi / (2 * alpha)) * cmath.exp(-alpha * eta) / (1 + z * z) ** 0.25
        mb = sf.bessel_modified(alpha, alpha * z)
        assert abs(mb.k / lead - 1.0) < 1.5 / z

    def test_hankel_pair_recovers_j(self):
        alpha, x = 2.0, 3.0
        mb = sf.bessel_modified(alpha, x)
        # H1, H2 here are Hankel functions of argument x (rotated from K)
        assert abs(mb.h1 + mb.h2 - 2 * float(sp.jv(alpha, x))) < 1e-10

    def test_hankel_rotation_matches_scipy(self):
        for alpha in (0.5, 2.0, 4.0):
            for z in (1.5, 3.0 + 1.0j, 8.0 - 2.0j):
                mb = sf.bessel_modified(alpha, z)
                assert abs(mb.h1 - complex(sp.hankel1(alpha, z))) < 1e-10 * max(1, abs(mb.h1))
                assert abs(mb.h2 - complex(sp.hankel2(alpha, z))) < 1e-10 * max(1, abs(mb.h2))

    def test_envelope_errors(self):
        with pytest.raises(sf.UnsupportedRangeError):
            sf.bessel_modified(11.0, 1.0)
        with pytest.raises(sf.UnsupportedRangeError):
            sf.bessel_modified(2.0, 60.0j)
        with pytest.raises(sf.UnsupportedRangeError):
            sf.bessel_modified(2.0, 0.0)
