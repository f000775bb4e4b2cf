"""Pure-numpy fallback for the compiled kernels in _kernels.pyx.

Same call signatures and semantics; used automatically when the extension
is not built (see critlue.backend).
"""

import numpy as np


def cg_halt(X, b, eps, max_iter):
    """Run CG on (X X^*) x = b with x0 = b until ||r_k|| <= eps.

    Returns (T, residual_norms, x, breakdown_iter); T = -1 when max_iter is
    exhausted, breakdown_iter = -1 unless <p, Ap> lost positivity first.
    """
    Xc = X.conj().T
    x = b.astype(np.complex128, copy=True)
    r = b - X @ (Xc @ x)
    p = r.copy()
    rr = float(np.vdot(r, r).real)
    res = [np.sqrt(rr)]
    if res[0] <= eps:
        return 0, np.asarray(res), x, -1
    for k in range(1, max_iter + 1):
        ap = X @ (Xc @ p)
        pap = float(np.vdot(p, ap).real)
        if pap <= 0.0:
            return k - 1, np.asarray(res), x, k
        a = rr / pap
        x += a * p
        r -= a * ap
        rr_new = float(np.vdot(r, r).real)
        res.append(np.sqrt(rr_new))
        if res[-1] <= eps:
            return k, np.asarray(res), x, -1
        p = r + (rr_new / rr) * p
        rr = rr_new
    return -1, np.asarray(res), x, -1


def cg_halt_gram(A, b, eps, max_iter):
    """cg_halt applying a formed Hermitian matrix A directly."""
    x = b.astype(np.complex128, copy=True)
    r = b - A @ x
    p = r.copy()
    rr = float(np.vdot(r, r).real)
    res = [np.sqrt(rr)]
    if res[0] <= eps:
        return 0, np.asarray(res), x, -1
    for k in range(1, max_iter + 1):
        ap = A @ p
        pap = float(np.vdot(p, ap).real)
        if pap <= 0.0:
            return k - 1, np.asarray(res), x, k
        a = rr / pap
        x += a * p
        r -= a * ap
        rr_new = float(np.vdot(r, r).real)
        res.append(np.sqrt(rr_new))
        if res[-1] <= eps:
            return k, np.asarray(res), x, -1
        p = r + (rr_new / rr) * p
        rr = rr_new
    return -1, np.asarray(res), x, -1


def laguerre_pair(alpha, n_deg, lam, lgam_a1):
    """Weighted orthonormal Laguerre wavefunctions of degree n_deg-1, n_deg.

    Vectorized over the points lam; see the compiled version for the
    scaling convention (returned values are psi * exp(-logscale)).
    """
    lam = np.asarray(lam, dtype=np.float64)
    pos = lam > 0.0
    x = np.where(pos, lam, 1.0)
    ls = np.where(pos, 0.5 * alpha * np.log(x) - 0.5 * x - 0.5 * lgam_a1, -1e308)
    p0 = np.zeros_like(x)
    p1 = np.ones_like(x)
    d0 = np.zeros_like(x)
    d1 = alpha / (2.0 * x) - 0.5
    bj = 0.0
    for j in range(n_deg):
        # sign convention of L_j^(a): leading coefficient (-1)^j / j!
        aj = 2.0 * j + alpha + 1.0
        bj1 = np.sqrt((j + 1.0) * (j + 1.0 + alpha))
        pn = ((aj - x) * p1 - bj * p0) / bj1
        dn = (-p1 + (aj - x) * d1 - bj * d0) / bj1
        p0, p1 = p1, pn
        d0, d1 = d1, dn
        bj = bj1
        if j % 50 == 49:
            s = np.maximum(np.abs(p0), np.abs(p1))
            fix = (s > 1e-280) & ((s > 1e40) | (s < 1e-40))
            s = np.where(fix, s, 1.0)
            p0, p1, d0, d1 = p0 / s, p1 / s, d0 / s, d1 / s
            ls = ls + np.log(s)
    zero = np.zeros_like(x)
    return (np.where(pos, p0, zero), np.where(pos, p1, zero),
            np.where(pos, d0, zero), np.where(pos, d1, zero), ls)
