"""Conjugate gradient halting-time experiments.

Runs CG on (X X*) x = b with x0 = b, recording the residual history and
the first iteration T at which ||r_k|| <= eps.  The matrix is applied as
two rectangular products, the hot loop lives in the compiled backend when
available, and per-sample runs are independent, so batches parallelize
over the sample index without affecting results.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from critlue import backend, ensembles

DEFAULT_EPS = 1e-14
ITERATION_CAP_FACTOR = 10


@dataclass(frozen=True)
class HaltingRecord:
    T: int
    residual_norms: np.ndarray = field(repr=False)
    kappa: float
    kaniel_ok: bool
    cap_hit: bool = False
    breakdown_iter: int = -1
    sample_index: int = -1


@dataclass(frozen=True)
class MomentSummary:
    mean: float
    variance: float
    skewness: float
    kurtosis: float
    sample_count: int

    @classmethod
    def from_sample(cls, values):
        """Sample moments: unbiased variance; skewness and kurtosis from
        1/M-normalized central moments (kurtosis is not excess)."""
        v = np.asarray(values, dtype=float)
        m = v.size
        if m < 2:
            raise ValueError("need at least two samples")
        mean = float(v.mean())
        d = v - mean
        var = float(np.sum(d * d) / (m - 1))
        m2 = float(np.mean(d * d))
        if m2 == 0.0:
            raise ValueError("zero variance: all halting times identical")
        m3 = float(np.mean(d**3))
        m4 = float(np.mean(d**4))
        return cls(mean=mean, variance=var, skewness=m3 / m2**1.5,
                   kurtosis=m4 / (m2 * m2), sample_count=m)


def kaniel_bound_ok(residuals, kappa):
    """Check ||r_k|| <= 2 (1 + 2/sqrt(kappa))^(-2k) ||r_0|| for every k.

    The inequality is an exact-arithmetic statement; in floating point the
    residual history can sit above it mid-run, so the flag is reported, not
    asserted (the halting-time consequence is checked by kaniel_t_cap).
    """
    r0 = residuals[0]
    q = 1.0 + 2.0 / math.sqrt(kappa)
    for k in range(1, len(residuals)):
        if residuals[k] > 2.0 * q ** (-2.0 * k) * r0 * (1.0 + 1e-12):
            return False
    return True


def kaniel_t_cap(r0, kappa, eps):
    """Halting-time cap implied by the residual bound:
    T <= (log r0 - log eps + log 2) / (2 log(1 + 2/sqrt(kappa)))."""
    return 0.5 * (math.log(r0) - math.log(eps) + math.log(2.0)) \
        / math.log1p(2.0 / math.sqrt(kappa))


def cg_halting(X, b, eps=DEFAULT_EPS, max_iter=None, kappa=None, sample_index=-1,
               apply="gram"):
    """One CG run; T is the first k with ||r_k|| <= eps (capped at 10 N).

    apply="gram" forms A = X X* once and applies it per iteration, matching
    the arithmetic the published halting-time tables were generated with;
    apply="factored" uses the two rectangular products X (X* v) instead
    (cheaper at large n, different round-off path in the floor-dominated
    ill-conditioned regime).
    """
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    N = X.shape[0]
    if max_iter is None:
        max_iter = ITERATION_CAP_FACTOR * N
    bc = np.ascontiguousarray(b, dtype=np.complex128)
    if apply == "gram":
        A = np.asfortranarray(X @ X.conj().T, dtype=np.complex128)
        T, res, _, breakdown = backend.cg_halt_gram(A, bc, float(eps), int(max_iter))
    elif apply == "factored":
        Xc = np.asfortranarray(X, dtype=np.complex128)
        T, res, _, breakdown = backend.cg_halt(Xc, bc, float(eps), int(max_iter))
    else:
        raise ValueError("apply must be 'gram' or 'factored'")
    cap_hit = T < 0
    if cap_hit:
        T = max_iter
    if kappa is None:
        sv = ensembles.singular_values(X)
        kappa = float((sv[-1] / sv[0]) ** 2)
    return HaltingRecord(T=int(T), residual_norms=np.asarray(res), kappa=kappa,
                         kaniel_ok=kaniel_bound_ok(res, kappa), cap_hit=cap_hit,
                         breakdown_iter=int(breakdown), sample_index=sample_index)


def residuals_monotone(record, slack=1e-2):
    """Monotone decrease of the residual history, with relative round-off slack."""
    r = record.residual_norms
    return bool(np.all(r[1:] <= r[:-1] * (1.0 + slack)))


def fluctuations(halting_times):
    """Centered and normalized fluctuations tau with the moment summary.

    tau has sample mean 0 and unbiased sample variance 1 by construction.
    """
    ts = np.asarray(halting_times, dtype=float)
    summary = MomentSummary.from_sample(ts)
    tau = (ts - summary.mean) / math.sqrt(summary.variance)
    return summary, tau


def _one_sample(spec, k, eps, max_iter):
    X = ensembles.sample_matrix(spec, k)
    b = ensembles.sample_rhs(spec, k)
    return cg_halting(X, b, eps=eps, max_iter=max_iter, sample_index=k)


def halting_experiment(spec, count, eps=DEFAULT_EPS, threads=1, max_iter=None):
    """count independent CG runs on fresh ensemble draws, ordered by index."""
    if count < 1:
        raise ValueError("count must be positive")
    with ensembles.single_threaded_blas():
        if threads and threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as ex:
                recs = list(ex.map(lambda k: _one_sample(spec, k, eps, max_iter),
                                   range(count)))
        else:
            recs = [_one_sample(spec, k, eps, max_iter) for k in range(count)]
    return recs
