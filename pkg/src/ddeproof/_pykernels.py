"""Pure-Python reference implementation of the hot interval kernels.

The compiled module ``_ckernels`` implements exactly the same operation
sequence, so both backends produce bit-identical results. Rounding is
outward by one ulp after every native operation (simple next-float
stepping); terms that are exactly zero are skipped so exact zeros survive.
"""

import math

import numpy as np

_nextafter = math.nextafter
_INF = math.inf


def _dn(x):
    return _nextafter(x, -_INF)


def _up(x):
    return _nextafter(x, _INF)


def _mul_lo_hi(alo, ahi, blo, bhi):
    p1 = alo * blo
    p2 = alo * bhi
    p3 = ahi * blo
    p4 = ahi * bhi
    lo = min(p1, p2, p3, p4)
    hi = max(p1, p2, p3, p4)
    # a zero product of nonzero factors is an underflow, not an exact zero
    uf = ((p1 == 0.0 and alo != 0.0 and blo != 0.0)
          or (p2 == 0.0 and alo != 0.0 and bhi != 0.0)
          or (p3 == 0.0 and ahi != 0.0 and blo != 0.0)
          or (p4 == 0.0 and ahi != 0.0 and bhi != 0.0))
    if lo != 0.0 or uf:
        lo = _dn(lo)
    if hi != 0.0 or uf:
        hi = _up(hi)
    return lo, hi


def conv_rect(x, y):
    """Interval convolution of two conjugate-symmetric sequences.

    ``x`` and ``y`` are float arrays of shape (4, l+1) holding the rows
    re.lo, re.hi, im.lo, im.hi for indices n = 0..l. Negative indices are
    the conjugates. Returns the same layout for n = 0..lx+ly.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    lx = x.shape[1] - 1
    ly = y.shape[1] - 1
    lr = lx + ly
    out = np.zeros((4, lr + 1), dtype=np.float64)
    xl = x.tolist()
    yl = y.tolist()
    res = [[0.0] * (lr + 1) for _ in range(4)]
    for n in range(lr + 1):
        rlo = rhi = ilo = ihi = 0.0
        kmin = max(-lx, n - ly)
        kmax = min(lx, n + ly)
        for k in range(kmin, kmax + 1):
            if k >= 0:
                arl, arh, ail, aih = xl[0][k], xl[1][k], xl[2][k], xl[3][k]
            else:
                arl, arh, ail, aih = xl[0][-k], xl[1][-k], -xl[3][-k], -xl[2][-k]
            m = n - k
            if m >= 0:
                brl, brh, bil, bih = yl[0][m], yl[1][m], yl[2][m], yl[3][m]
            else:
                brl, brh, bil, bih = yl[0][-m], yl[1][-m], -yl[3][-m], -yl[2][-m]
            a_zero = arl == 0.0 and arh == 0.0 and ail == 0.0 and aih == 0.0
            b_zero = brl == 0.0 and brh == 0.0 and bil == 0.0 and bih == 0.0
            if a_zero or b_zero:
                continue
            # re = ar*br - ai*bi ; im = ar*bi + ai*br
            p_lo, p_hi = _mul_lo_hi(arl, arh, brl, brh)
            q_lo, q_hi = _mul_lo_hi(ail, aih, bil, bih)
            s_lo, s_hi = _mul_lo_hi(arl, arh, bil, bih)
            t_lo, t_hi = _mul_lo_hi(ail, aih, brl, brh)
            # adding an exact zero is exact, so it is not rounded
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
        res[0][n] = rlo
        res[1][n] = rhi
        res[2][n] = ilo
        res[3][n] = ihi
    out[:, :] = res
    return out


def decay_sums(rows, supports, n_values):
    """Upper bounds of sum_{j=-m}^{m} rows[r, |j|] / (|n-j|+1)^2.

    ``rows`` holds nonnegative upper magnitudes (shape (R, L)); row r is
    supported on |j| <= supports[r]. Returns shape (R, len(n_values)).
    """
    rows = np.asarray(rows, dtype=np.float64)
    supports = [int(s) for s in supports]
    n_values = [int(n) for n in n_values]
    out = np.zeros((rows.shape[0], len(n_values)), dtype=np.float64)
    for r in range(rows.shape[0]):
        row = rows[r].tolist()
        m = supports[r]
        for i, n in enumerate(n_values):
            acc = 0.0
            for j in range(-m, m + 1):
                v = row[j if j >= 0 else -j]
                if v == 0.0:
                    continue
                d = n - j
                if d < 0:
                    d = -d
                w = float((d + 1) * (d + 1))
                acc = _up(acc + _up(v / w))
            out[r, i] = acc
    return out


def uniform_weights(N, m):
    """Upper bounds of max(1, (N+1)^2/(N+1-j)^2) for j = -m..m (N > m)."""
    num = float((N + 1) * (N + 1))
    w = []
    for j in range(-m, m + 1):
        if j <= 0:
            w.append(1.0)
        else:
            w.append(_up(num / float((N + 1 - j) * (N + 1 - j))))
    return w


def uniform_sums(rows, supports, N):
    """Upper bounds of sum_j rows[r, |j|] * max(1, (N+1)^2/(N+1-j)^2)."""
    rows = np.asarray(rows, dtype=np.float64)
    out = np.zeros(rows.shape[0], dtype=np.float64)
    for r in range(rows.shape[0]):
        row = rows[r].tolist()
        m = int(supports[r])
        if m >= N:
            raise ValueError("support reaches the cutoff")
        w = uniform_weights(N, m)
        acc = 0.0
        for j in range(-m, m + 1):
            v = row[j if j >= 0 else -j]
            if v == 0.0:
                continue
            acc = _up(acc + _up(v * w[j + m]))
        out[r] = acc
    return out


def weighted_sums(coef, sums):
    """Upper bounds of coef @ sums for nonnegative float matrices."""
    coef = np.asarray(coef, dtype=np.float64)
    sums = np.asarray(sums, dtype=np.float64)
    P, Kk = coef.shape
    N = sums.shape[1]
    out = np.zeros((P, N), dtype=np.float64)
    cl = coef.tolist()
    st = sums.T.tolist()
    for i in range(P):
        a = cl[i]
        for n in range(N):
            s = st[n]
            acc = 0.0
            for k in range(Kk):
                if a[k] == 0.0 or s[k] == 0.0:
                    continue
                acc = _up(acc + _up(a[k] * s[k]))
            out[i, n] = acc
    return out
