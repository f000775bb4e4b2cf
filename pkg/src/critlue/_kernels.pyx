# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: the conjugate-gradient halting loop and the
weighted Laguerre wavefunction recurrence.

Pure-python equivalents with identical signatures live in _kernels_py.py;
critlue.backend picks one at import time.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, log, sqrt
from scipy.linalg.cython_blas cimport zaxpy, zdotc, zgemv

cnp.import_array()


def cg_halt(cnp.ndarray[cnp.complex128_t, ndim=2] X,
            cnp.ndarray[cnp.complex128_t, ndim=1] b,
            double eps, int max_iter):
    """Run CG on (X X^*) x = b with x0 = b until ||r_k|| <= eps.

    X must be Fortran-ordered N x n.  Returns (T, residual_norms, x,
    breakdown_iter) where T = -1 if the tolerance was never reached within
    max_iter and breakdown_iter = -1 unless <p, Ap> lost positivity first.
    """
    cdef int N = X.shape[0]
    cdef int n = X.shape[1]
    if not X.flags.f_contiguous:
        raise ValueError("X must be Fortran-ordered")
    if b.shape[0] != N:
        raise ValueError("b length mismatch")

    cdef cnp.ndarray[cnp.complex128_t, ndim=1] r = np.empty(N, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] p = np.empty(N, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] x = np.empty(N, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] ap = np.empty(N, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] w = np.empty(n, dtype=np.complex128)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] res = np.empty(max_iter + 1, dtype=np.float64)

    cdef double complex *xp = <double complex *> cnp.PyArray_DATA(X)
    cdef double complex *bp = <double complex *> cnp.PyArray_DATA(b)
    cdef double complex *rp = <double complex *> cnp.PyArray_DATA(r)
    cdef double complex *pp = <double complex *> cnp.PyArray_DATA(p)
    cdef double complex *sp = <double complex *> cnp.PyArray_DATA(x)
    cdef double complex *app = <double complex *> cnp.PyArray_DATA(ap)
    cdef double complex *wp = <double complex *> cnp.PyArray_DATA(w)
    cdef double *resp = <double *> cnp.PyArray_DATA(res)

    cdef int one = 1, k, i, T = -1, breakdown = -1
    cdef double complex zone = 1.0, zzero = 0.0, za
    cdef double rr, rr_new, pap, a, beta
    cdef char tc = b'C', tn = b'N'

    with nogil:
        # x0 = b, r0 = b - A b, p0 = r0
        zgemv(&tc, &N, &n, &zone, xp, &N, bp, &one, &zzero, wp, &one)
        zgemv(&tn, &N, &n, &zone, xp, &N, wp, &one, &zzero, rp, &one)
        rr = 0.0
        for i in range(N):
            sp[i] = bp[i]
            rp[i] = bp[i] - rp[i]
            pp[i] = rp[i]
            rr += rp[i].real * rp[i].real + rp[i].imag * rp[i].imag
        resp[0] = sqrt(rr)
        if resp[0] <= eps:
            T = 0
        else:
            for k in range(1, max_iter + 1):
                zgemv(&tc, &N, &n, &zone, xp, &N, pp, &one, &zzero, wp, &one)
                zgemv(&tn, &N, &n, &zone, xp, &N, wp, &one, &zzero, app, &one)
                pap = zdotc(&N, pp, &one, app, &one).real
                if pap <= 0.0:
                    breakdown = k
                    T = k - 1
                    break
                a = rr / pap
                za = a
                zaxpy(&N, &za, pp, &one, sp, &one)
                za = -a
                zaxpy(&N, &za, app, &one, rp, &one)
                rr_new = 0.0
                for i in range(N):
                    rr_new += rp[i].real * rp[i].real + rp[i].imag * rp[i].imag
                resp[k] = sqrt(rr_new)
                if resp[k] <= eps:
                    T = k
                    break
                beta = rr_new / rr
                rr = rr_new
                for i in range(N):
                    pp[i] = rp[i] + beta * pp[i]
            else:
                T = -1
                k = max_iter

    if breakdown > 0:
        return T, res[:breakdown].copy(), x, breakdown
    cdef int count = (T if T >= 0 else max_iter) + 1
    return T, res[:count].copy(), x, -1


def cg_halt_gram(cnp.ndarray[cnp.complex128_t, ndim=2] A,
                 cnp.ndarray[cnp.complex128_t, ndim=1] b,
                 double eps, int max_iter):
    """cg_halt applying a formed Hermitian matrix A directly (one gemv per
    iteration).  A must be Fortran-ordered N x N."""
    cdef int N = A.shape[0]
    if A.shape[1] != N or not A.flags.f_contiguous:
        raise ValueError("A must be a Fortran-ordered square matrix")
    if b.shape[0] != N:
        raise ValueError("b length mismatch")

    cdef cnp.ndarray[cnp.complex128_t, ndim=1] r = np.empty(N, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] p = np.empty(N, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] x = np.empty(N, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] ap = np.empty(N, dtype=np.complex128)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] res = np.empty(max_iter + 1, dtype=np.float64)

    cdef double complex *mp = <double complex *> cnp.PyArray_DATA(A)
    cdef double complex *bp = <double complex *> cnp.PyArray_DATA(b)
    cdef double complex *rp = <double complex *> cnp.PyArray_DATA(r)
    cdef double complex *pp = <double complex *> cnp.PyArray_DATA(p)
    cdef double complex *sp = <double complex *> cnp.PyArray_DATA(x)
    cdef double complex *app = <double complex *> cnp.PyArray_DATA(ap)
    cdef double *resp = <double *> cnp.PyArray_DATA(res)

    cdef int one = 1, k, i, T = -1, breakdown = -1
    cdef double complex zone = 1.0, zzero = 0.0, za
    cdef double rr, rr_new, pap, a, beta
    cdef char tn = b'N'

    with nogil:
        zgemv(&tn, &N, &N, &zone, mp, &N, bp, &one, &zzero, rp, &one)
        rr = 0.0
        for i in range(N):
            sp[i] = bp[i]
            rp[i] = bp[i] - rp[i]
            pp[i] = rp[i]
            rr += rp[i].real * rp[i].real + rp[i].imag * rp[i].imag
        resp[0] = sqrt(rr)
        if resp[0] <= eps:
            T = 0
        else:
            for k in range(1, max_iter + 1):
                zgemv(&tn, &N, &N, &zone, mp, &N, pp, &one, &zzero, app, &one)
                pap = zdotc(&N, pp, &one, app, &one).real
                if pap <= 0.0:
                    breakdown = k
                    T = k - 1
                    break
                a = rr / pap
                za = a
                zaxpy(&N, &za, pp, &one, sp, &one)
                za = -a
                zaxpy(&N, &za, app, &one, rp, &one)
                rr_new = 0.0
                for i in range(N):
                    rr_new += rp[i].real * rp[i].real + rp[i].imag * rp[i].imag
                resp[k] = sqrt(rr_new)
                if resp[k] <= eps:
                    T = k
                    break
                beta = rr_new / rr
                rr = rr_new
                for i in range(N):
                    pp[i] = rp[i] + beta * pp[i]
            else:
                T = -1

    if breakdown > 0:
        return T, res[:breakdown].copy(), x, breakdown
    cdef int count = (T if T >= 0 else max_iter) + 1
    return T, res[:count].copy(), x, -1


def laguerre_pair(double alpha, int n_deg, cnp.ndarray[cnp.float64_t, ndim=1] lam,
                  double lgam_a1):
    """Weighted orthonormal Laguerre wavefunctions of degree n_deg-1 and n_deg.

    Evaluates psi_j(lam) = sqrt(j!/Gamma(j+a+1)) e^(-lam/2) lam^(a/2) L_j^(a)(lam)
    and the lam-derivatives by the three-term recurrence, carrying the
    exponential weight inside and renormalizing every 50 steps.  lgam_a1 is
    log Gamma(alpha + 1).  Returns (psi_{n-1}, psi_n, dpsi_{n-1}, dpsi_n,
    logscale) with the true values equal to psi * exp(logscale) per point.
    """
    cdef int m = lam.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] p0 = np.empty(m), p1 = np.empty(m)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] d0 = np.empty(m), d1 = np.empty(m)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ls = np.empty(m)
    cdef double x, aj, bj, bj1, pn, dn, s
    cdef int i, j

    for i in range(m):
        x = lam[i]
        if x <= 0.0:
            p0[i] = 0.0
            p1[i] = 0.0
            d0[i] = 0.0
            d1[i] = 0.0
            ls[i] = -1e308
            continue
        # log of psi_0 carried in ls; start the recurrence at unit scale
        ls[i] = 0.5 * alpha * log(x) - 0.5 * x - 0.5 * lgam_a1
        p0[i] = 0.0
        p1[i] = 1.0
        d0[i] = 0.0
        d1[i] = alpha / (2.0 * x) - 0.5
        bj = 0.0
        for j in range(n_deg):
            # sign convention of L_j^(a): leading coefficient (-1)^j / j!
            aj = 2.0 * j + alpha + 1.0
            bj1 = sqrt((j + 1.0) * (j + 1.0 + alpha))
            pn = ((aj - x) * p1[i] - bj * p0[i]) / bj1
            dn = (-p1[i] + (aj - x) * d1[i] - bj * d0[i]) / bj1
            p0[i] = p1[i]
            p1[i] = pn
            d0[i] = d1[i]
            d1[i] = dn
            bj = bj1
            if j % 50 == 49:
                s = fabs(p1[i])
                if fabs(p0[i]) > s:
                    s = fabs(p0[i])
                if s > 1e-280 and (s > 1e40 or s < 1e-40):
                    p0[i] /= s
                    p1[i] /= s
                    d0[i] /= s
                    d1[i] /= s
                    ls[i] += log(s)
    return p0, p1, d0, d1, ls
