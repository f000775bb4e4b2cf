import math

import numpy as np
import pytest

from critlue import ensembles as en
from critlue import fredholm as fr


def jacobi_eigenvalues(H, max_sweeps=60, tol=1e-14):
    """Independent eigensolver oracle: real-symmetric Jacobi sweeps applied
    to the 2n x 2n real embedding of a complex Hermitian matrix."""
    n = H.shape[0]
    A = np.block([[H.real, -H.imag], [H.imag, H.real]])
    m = 2 * n
    for _ in range(max_sweeps):
        off = math.sqrt(np.sum(np.tril(A, -1) ** 2))
        if off < tol:
            break
        for p in range(m - 1):
            for q in range(p + 1, m):
                if abs(A[p, q]) < 1e-300:
                    continue
                theta = 0.5 * math.atan2(2.0 * A[p, q], A[q, q] - A[p, p])
                c, s = math.cos(theta), math.sin(theta)
                rot = np.eye(m)
                rot[p, p] = rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                A = rot.T @ A @ rot
    return np.sort(np.diag(A))[::2]  # embedding doubles every eigenvalue


class TestSpec:
    def test_critical_rule(self):
        spec = en.EnsembleSpec(N=100, scaling_rule="critical", c=1.0)
        assert spec.resolved_n() == 120

    def test_square_and_double(self):
        assert en.EnsembleSpec(N=64, scaling_rule="square").resolved_n() == 64
        assert en.EnsembleSpec(N=64, scaling_rule="double").resolved_n() == 128

    def test_custom_requires_n(self):
        with pytest.raises(ValueError):
            en.EnsembleSpec(N=10, scaling_rule="custom")
        assert en.EnsembleSpec(N=10, n=15, scaling_rule="custom").resolved_n() == 15

    def test_n_ge_n_required(self):
        with pytest.raises(ValueError):
            en.EnsembleSpec(N=10, n=5, scaling_rule="custom")


class TestSampling:
    def test_bitwise_reproducibility(self):
        spec = en.EnsembleSpec(N=20, scaling_rule="critical", seed=42)
        a = en.sample_matrix(spec, 11)
        b = en.sample_matrix(spec, 11)
        assert np.array_equal(a, b)
        assert not np.array_equal(a, en.sample_matrix(spec, 12))

    def test_entry_moments_complex(self):
        spec = en.EnsembleSpec(N=1000, n=1000, scaling_rule="custom", seed=1)
        X = en.sample_matrix(spec, 0)
        assert abs(X.real.mean()) < 3e-3          # 3 sigma for 1e6 draws
        assert np.mean(np.abs(X) ** 2) == pytest.approx(1.0, abs=5e-3)

    def test_bernoulli_entries(self):
        spec = en.EnsembleSpec(N=500, n=500, scaling_rule="custom", seed=2,
                               matrix_dist="bernoulli-pm1")
        X = en.sample_matrix(spec, 0)
        assert set(np.unique(X)) == {-1.0, 1.0}
        assert abs(X.mean()) < 3.0 / math.sqrt(X.size)

    def test_rhs_uniform(self):
        spec = en.EnsembleSpec(N=4000, n=4100, scaling_rule="custom", seed=3)
        b = en.sample_rhs(spec, 5)
        assert b.min() >= -1.0 and b.max() <= 1.0
        assert abs(b.mean()) < 3.0 / math.sqrt(3.0 * len(b))
        assert np.array_equal(b, en.sample_rhs(spec, 5))

    def test_exponential_scalar_case(self):
        # N = n = 1: the eigenvalue |X11|^2 is exponential with mean 1
        spec = en.EnsembleSpec(N=1, n=1, scaling_rule="custom", seed=9)
        vals = np.array([abs(en.sample_matrix(spec, k)[0, 0]) ** 2
                         for k in range(100_000)])
        assert vals.mean() == pytest.approx(1.0, abs=0.01)


class TestSingularValues:
    def test_identity_padded(self):
        X = np.hstack([np.eye(5), np.zeros((5, 3))]).astype(complex)
        assert np.allclose(en.singular_values(X), 1.0)

    def test_diagonal_padded(self):
        X = np.hstack([np.diag([3.0, 2.0, 1.0]), np.zeros((3, 4))])
        assert np.allclose(en.singular_values(X), [1.0, 2.0, 3.0])

    def test_against_jacobi_oracle(self):
        rng = np.random.default_rng(4)
        X = (rng.standard_normal((8, 10)) + 1j * rng.standard_normal((8, 10))) / np.sqrt(2)
        sv = en.singular_values(X)
        eigs = jacobi_eigenvalues(X @ X.conj().T)
        assert np.max(np.abs(sv**2 - eigs) / eigs) < 1e-10

    def test_tall_rejected(self):
        with pytest.raises(ValueError):
            en.singular_values(np.zeros((5, 3)))


class TestSpectralSummary:
    def test_kappa_at_least_one(self):
        spec = en.EnsembleSpec(N=12, scaling_rule="critical", seed=5)
        for k in range(20):
            s = en.spectral_summary(spec, k)
            assert s.kappa >= 1.0
            assert s.lambda_min > 0.0

    def test_eigenvalue_sum_is_frobenius(self):
        spec = en.EnsembleSpec(N=30, scaling_rule="critical", seed=6)
        X = en.sample_matrix(spec, 0)
        s = en.spectral_summary(spec, 0)
        assert s.eigenvalues.sum() == pytest.approx(
            np.linalg.norm(X, "fro") ** 2, rel=1e-8)

    def test_batch_thread_independence(self):
        spec = en.EnsembleSpec(N=16, scaling_rule="critical", seed=7)
        seq = en.batch_spectral(spec, 24, threads=1)
        par = en.batch_spectral(spec, 24, threads=3)
        for a, b in zip(seq, par):
            assert a.lambda_min == b.lambda_min
            assert a.lambda_max == b.lambda_max

    def test_sorted_eigenvalues(self):
        spec = en.EnsembleSpec(N=10, scaling_rule="critical", seed=8)
        s = en.spectral_summary(spec, 0)
        assert np.all(np.diff(s.eigenvalues) >= 0)


class TestAgainstLimitLaw:
    def test_lambda_max_median_vs_finite_n_determinant(self):
        # the sampler's standardized median agrees with the median of the
        # finite-N determinant law (a fully independent route through the
        # kernel recurrence); both carry the same O(N^(-1/3)) offset from
        # the Tracy-Widom median at this size
        from critlue.rh_scalar import ScalingParams

        spec = en.EnsembleSpec(N=100, scaling_rule="critical", c=1.0, seed=10)
        p = ScalingParams.critical(100, c=1.0)
        nu = p.nu
        out = en.batch_spectral(spec, 2000, threads=4)
        stats = np.array([(s.lambda_max - nu) / (2 ** (2 / 3) * nu ** (1 / 3))
                          for s in out])
        emp_med = float(np.median(stats))
        lo, hi = 0.9, 1.1
        for _ in range(35):
            mid = 0.5 * (lo + hi)
            if fr.cdf_lambda_max(mid, p) < 0.5:
                lo = mid
            else:
                hi = mid
        det_med = (0.5 * (lo + hi) * nu - nu) / (2 ** (2 / 3) * nu ** (1 / 3))
        assert abs(emp_med - det_med) < 0.08      # two-sigma MC band
        assert abs(emp_med - fr.tw2_quantile(0.5, tol=1e-6)) < 0.35
