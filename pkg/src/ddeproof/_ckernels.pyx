# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled interval kernels; same operation order as ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport nextafter, INFINITY

cnp.import_array()


cdef inline double _dn(double x) nogil:
    return nextafter(x, -INFINITY)


cdef inline double _up(double x) nogil:
    return nextafter(x, INFINITY)


cdef inline void _mul_lo_hi(double alo, double ahi, double blo, double bhi,
                            double* lo, double* hi) nogil:
    cdef double p1 = alo * blo
    cdef double p2 = alo * bhi
    cdef double p3 = ahi * blo
    cdef double p4 = ahi * bhi
    cdef double mn = p1, mx = p1
    cdef bint uf
    if p2 < mn: mn = p2
    if p3 < mn: mn = p3
    if p4 < mn: mn = p4
    if p2 > mx: mx = p2
    if p3 > mx: mx = p3
    if p4 > mx: mx = p4
    uf = ((p1 == 0.0 and alo != 0.0 and blo != 0.0)
          or (p2 == 0.0 and alo != 0.0 and bhi != 0.0)
          or (p3 == 0.0 and ahi != 0.0 and blo != 0.0)
          or (p4 == 0.0 and ahi != 0.0 and bhi != 0.0))
    if mn != 0.0 or uf:
        mn = _dn(mn)
    if mx != 0.0 or uf:
        mx = _up(mx)
    lo[0] = mn
    hi[0] = mx


def conv_rect(x, y):
    cdef double[:, ::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef double[:, ::1] yv = np.ascontiguousarray(y, dtype=np.float64)
    cdef Py_ssize_t lx = xv.shape[1] - 1
    cdef Py_ssize_t ly = yv.shape[1] - 1
    cdef Py_ssize_t lr = lx + ly
    out = np.zeros((4, lr + 1), dtype=np.float64)
    cdef double[:, ::1] ov = out
    cdef Py_ssize_t n, k, m, kmin, kmax
    cdef double rlo, rhi, ilo, ihi
    cdef double arl, arh, ail, aih, brl, brh, bil, bih
    cdef double p_lo, p_hi, q_lo, q_hi, s_lo, s_hi, t_lo, t_hi
    with nogil:
        for n in range(lr + 1):
            rlo = 0.0
            rhi = 0.0
            ilo = 0.0
            ihi = 0.0
            kmin = -lx if -lx > n - ly else n - ly
            kmax = lx if lx < n + ly else n + ly
            for k in range(kmin, kmax + 1):
                if k >= 0:
                    arl = xv[0, k]; arh = xv[1, k]; ail = xv[2, k]; aih = xv[3, k]
                else:
                    arl = xv[0, -k]; arh = xv[1, -k]; ail = -xv[3, -k]; aih = -xv[2, -k]
                m = n - k
                if m >= 0:
                    brl = yv[0, m]; brh = yv[1, m]; bil = yv[2, m]; bih = yv[3, m]
                else:
                    brl = yv[0, -m]; brh = yv[1, -m]; bil = -yv[3, -m]; bih = -yv[2, -m]
                if arl == 0.0 and arh == 0.0 and ail == 0.0 and aih == 0.0:
                    continue
                if brl == 0.0 and brh == 0.0 and bil == 0.0 and bih == 0.0:
                    continue
                _mul_lo_hi(arl, arh, brl, brh, &p_lo, &p_hi)
                _mul_lo_hi(ail, aih, bil, bih, &q_lo, &q_hi)
                _mul_lo_hi(arl, arh, bil, bih, &s_lo, &s_hi)
                _mul_lo_hi(ail, aih, brl, brh, &t_lo, &t_hi)
                if p_lo != 0.0:
                    rlo = _dn(rlo + p_lo)
                if q_hi != 0.0:
                    rlo = _dn(rlo - q_hi)
                if p_hi != 0.0:
                    rhi = _up(rhi + p_hi)
                if q_lo != 0.0:
                    rhi = _up(rhi - q_lo)
                if s_lo != 0.0:
                    ilo = _dn(ilo + s_lo)
                if t_lo != 0.0:
                    ilo = _dn(ilo + t_lo)
                if s_hi != 0.0:
                    ihi = _up(ihi + s_hi)
                if t_hi != 0.0:
                    ihi = _up(ihi + t_hi)
            ov[0, n] = rlo
            ov[1, n] = rhi
            ov[2, n] = ilo
            ov[3, n] = ihi
    return out


def decay_sums(rows, supports, n_values):
    cdef double[:, ::1] rv = np.ascontiguousarray(rows, dtype=np.float64)
    cdef long[::1] sv = np.ascontiguousarray(supports, dtype=np.int64)
    cdef long[::1] nv = np.ascontiguousarray(n_values, dtype=np.int64)
    cdef Py_ssize_t R = rv.shape[0]
    cdef Py_ssize_t nn = nv.shape[0]
    out = np.zeros((R, nn), dtype=np.float64)
    cdef double[:, ::1] ov = out
    cdef Py_ssize_t r, i
    cdef long j, m, n, d, aj
    cdef double acc, v, w
    with nogil:
        for r in range(R):
            m = sv[r]
            for i in range(nn):
                n = nv[i]
                acc = 0.0
                for j in range(-m, m + 1):
                    aj = j if j >= 0 else -j
                    v = rv[r, aj]
                    if v == 0.0:
                        continue
                    d = n - j
                    if d < 0:
                        d = -d
                    w = <double>((d + 1) * (d + 1))
                    acc = _up(acc + _up(v / w))
                ov[r, i] = acc
    return out


def uniform_sums(rows, supports, long N):
    cdef double[:, ::1] rv = np.ascontiguousarray(rows, dtype=np.float64)
    cdef long[::1] sv = np.ascontiguousarray(supports, dtype=np.int64)
    cdef Py_ssize_t R = rv.shape[0]
    out = np.zeros(R, dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t r
    cdef long j, m, aj
    cdef double acc, v, w
    cdef double num = <double>((N + 1) * (N + 1))
    for r in range(R):
        if sv[r] >= N:
            raise ValueError("support reaches the cutoff")
    with nogil:
        for r in range(R):
            m = sv[r]
            acc = 0.0
            for j in range(-m, m + 1):
                aj = j if j >= 0 else -j
                v = rv[r, aj]
                if v == 0.0:
                    continue
                if j <= 0:
                    w = 1.0
                else:
                    w = _up(num / <double>((N + 1 - j) * (N + 1 - j)))
                acc = _up(acc + _up(v * w))
            ov[r] = acc
    return out


def weighted_sums(coef, sums):
    cdef double[:, ::1] av = np.ascontiguousarray(coef, dtype=np.float64)
    cdef double[:, ::1] sv = np.ascontiguousarray(sums, dtype=np.float64)
    cdef Py_ssize_t P = av.shape[0]
    cdef Py_ssize_t Kk = av.shape[1]
    cdef Py_ssize_t N = sv.shape[1]
    out = np.zeros((P, N), dtype=np.float64)
    cdef double[:, ::1] ov = out
    cdef Py_ssize_t i, n, k
    cdef double acc, a, s
    with nogil:
        for i in range(P):
            for n in range(N):
                acc = 0.0
                for k in range(Kk):
                    a = av[i, k]
                    s = sv[k, n]
                    if a == 0.0 or s == 0.0:
                        continue
                    acc = _up(acc + _up(a * s))
                ov[i, n] = acc
    return out
