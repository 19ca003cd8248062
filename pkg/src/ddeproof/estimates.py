"""Rigorous bounds for the nonlinear terms and the tau-perturbation.

All "bound" functions return an Interval whose ``hi`` is the rigorous upper
bound; ``lo`` carries no meaning beyond lo <= hi. The constant C = 10
(decay exponent 2) is used throughout.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

import numpy as np

from . import kernels
from .fourier import SymmetricSequence, conv_bound_constant, convolve
from .interval import (
    ComplexRect,
    Interval,
    cabs_upper,
    cos,
    inv_factorial,
    pow_int,
    sin,
    sqrt,
    unit_circle,
)

__all__ = [
    "TauWindow",
    "GammaTable",
    "PowerTable",
    "f_n",
    "L_n",
    "delta_f_bound",
    "r_n_bound",
    "build_gamma",
    "mixed_power_bound",
    "mixed_power_bounds",
    "tail_bound",
    "high_n_uniform_bound",
    "grouped_center_residual",
    "gamma_sum_bound",
    "gamma_sum_bounds",
]

C_DECAY = conv_bound_constant(2)
_SINE_DEGREES = ((3, -1), (5, 1), (7, -1))


def _iv(x) -> Interval:
    return x if isinstance(x, Interval) else Interval(x)


class TauWindow:
    """Window [tau_hat - delta, tau_hat + delta] around the candidate period.

    ``tau0`` is the expansion point of the linearization; it defaults to
    tau_hat and must lie inside the window.
    """

    __slots__ = ("tau_hat", "delta", "tau0", "window", "span")

    def __init__(self, tau_hat, delta, tau0=None, strict=True):
        self.tau_hat = _iv(tau_hat)
        self.delta = _iv(delta)
        if self.delta.lo < 0.0:
            raise ValueError("delta must be nonnegative")
        self.tau0 = self.tau_hat if tau0 is None else _iv(tau0)
        self.window = self.tau_hat + Interval(-self.delta.hi, self.delta.hi)
        if strict and not self.window.contains(self.tau0):
            raise ValueError("tau0 must lie inside the tau window")
        # Taylor bounds need sup|tau| over every segment [tau0, tau]
        self.span = self.window.hull(self.tau0)

    def tau0_inside(self) -> bool:
        """tau0 strictly between the two window edges."""
        return self.lower.hi < self.tau0.lo and self.tau0.hi < self.upper.lo

    @property
    def lower(self) -> Interval:
        """Enclosure of the left edge tau_hat - delta."""
        return self.tau_hat - self.delta

    @property
    def upper(self) -> Interval:
        return self.tau_hat + self.delta

    def deviation(self) -> Interval:
        """Upper bound of |tau - tau0| over the window (as a point interval)."""
        a = (Interval(self.window.hi) - self.tau0).hi
        b = (self.tau0 - Interval(self.window.lo)).hi
        return Interval(max(a, b, 0.0))


def f_n(n: int, tau) -> ComplexRect:
    """Enclosure of i n tau e^{i n tau}."""
    tau = _iv(tau)
    if n == 0:
        return ComplexRect(0.0, 0.0)
    nt = tau * n
    # i*nt*(cos + i sin) = -nt sin + i nt cos
    return ComplexRect(-(nt * sin(nt)), nt * cos(nt))


def L_n(n: int, tau, tau0, form: str = "printed") -> ComplexRect:
    """Linear part of f_n around tau0.

    ``printed``: (i n - n^2) e^{i n tau0} (tau - tau0).
    ``exact``:   (i n - n^2 tau0) e^{i n tau0} (tau - tau0), the true derivative.
    """
    tau = _iv(tau)
    tau0 = _iv(tau0)
    return L_direction(n, tau0, form) * (tau - tau0)


def L_direction(n: int, tau0, form: str = "printed") -> ComplexRect:
    """The complex factor multiplying (tau - tau0) in L_n."""
    tau0 = _iv(tau0)
    if form == "printed":
        re = Interval(-(n * n))
    elif form == "exact":
        re = -(tau0 * (n * n))
    else:
        raise ValueError(f"unknown linearization form {form!r}")
    return ComplexRect(re, Interval(n)) * unit_circle(tau0 * n)


def delta_f_bound(n: int, w: TauWindow) -> Interval:
    """Upper bound of |f_n(tau) - f_n(tau0)|: (n + n^2 sup|tau|) sup|tau - tau0|."""
    if n == 0:
        return Interval(0.0)
    n = abs(n)
    tbar = Interval(w.span.mag())
    return (Interval(n) + tbar * (n * n)) * w.deviation()


def r_n_bound(n: int, w: TauWindow, form: str = "exact") -> Interval:
    """Upper bound of |f_n(tau) - f_n(tau0) - L_n(tau)| over the window.

    Taylor remainder (dev^2/2) sup|2n^2 + i n^3 tau|. With ``form="printed"``
    the linear defect n^2 |tau0 - 1| dev of the printed L_n is added; pass
    the same form as used for L_n.
    """
    if n == 0:
        return Interval(0.0)
    n = abs(n)
    dev = w.deviation()
    tbar = Interval(w.span.mag())
    f2 = sqrt(Interval(4 * n**4) + (tbar * n**3).sqr())
    out = f2 * dev.sqr() / 2
    if form == "printed":
        out = out + abs(w.tau0 - 1) * (n * n) * dev
    elif form != "exact":
        raise ValueError(f"unknown linearization form {form!r}")
    return Interval(out.hi)


class PowerTable:
    """Convolution powers c^{*k}, k = 0..kmax, with cached magnitude rows."""

    def __init__(self, c: SymmetricSequence, kmax: int):
        self.c = c
        self.l = c.l
        self.kmax = kmax
        powers = [SymmetricSequence.delta()]
        for _ in range(kmax):
            powers.append(convolve(powers[-1], c))
        self.powers = powers
        width = kmax * self.l + 1
        rows = np.zeros((kmax + 1, width))
        for k, pk in enumerate(powers):
            a = pk.abs_upper()
            rows[k, : len(a)] = a
        self.abs_rows = rows
        self.supports = np.array([k * self.l for k in range(kmax + 1)], dtype=np.int64)
        self._decay = {}

    def power(self, k: int) -> SymmetricSequence:
        if k > self.kmax:
            raise ValueError(f"power {k} exceeds table size {self.kmax}")
        return self.powers[k]

    def decay_sums(self, n_values, kmax=None) -> np.ndarray:
        """Upper bounds S[k, i] = sum_j |c^{*k}_j| / (|n_i - j|+1)^2."""
        kmax = self.kmax if kmax is None else kmax
        key = (tuple(int(n) for n in n_values), kmax)
        if key not in self._decay:
            self._decay[key] = kernels.decay_sums(
                self.abs_rows[: kmax + 1], self.supports[: kmax + 1], list(key[0])
            )
        return self._decay[key]

    def uniform_sums(self, N: int, kmax: int) -> np.ndarray:
        return kernels.uniform_sums(self.abs_rows[: kmax + 1], self.supports[: kmax + 1], N)


class GammaTable:
    """Regrouped degree-3/5/7 coefficients gamma_{p,j}, p = 1..7."""

    def __init__(self, rows: dict, l: int):
        self.rows = rows  # p -> SymmetricSequence indexed by j >= 0
        self.l = l

    def get(self, p: int, j: int) -> ComplexRect:
        if p not in self.rows:
            return ComplexRect(0.0, 0.0)
        return self.rows[p][j]

    def support(self, p: int) -> int:
        return self.rows[p].l if p in self.rows else 0

    def abs_matrix(self):
        width = max(r.l for r in self.rows.values()) + 1
        mat = np.zeros((7, width))
        sup = np.zeros(7, dtype=np.int64)
        for p in range(1, 8):
            a = self.rows[p].abs_upper()
            mat[p - 1, : len(a)] = a
            sup[p - 1] = self.rows[p].l
        return mat, sup


def _as_table(c, kmax: int) -> PowerTable:
    if isinstance(c, PowerTable):
        if c.kmax < kmax:
            raise ValueError("power table too small")
        return c
    return PowerTable(c, kmax)


def build_gamma(c, K) -> GammaTable:
    K = _iv(K)
    table = _as_table(c, 6)
    l = table.l
    rows = {}
    for p in range(1, 8):
        acc = SymmetricSequence.zeros(6 * l)
        for d, sign in _SINE_DEGREES:
            if p > d:
                continue
            coef = K * inv_factorial(d) * comb(d, p) * sign
            acc = acc + table.power(d - p).scale(coef)
        # trim to the true support (d - p) * l for the largest d
        sup = (7 - p) * l
        rows[p] = SymmetricSequence(acc.coeffs()[: sup + 1])
    return GammaTable(rows, l)


def _mixed_coefficients(beta: Interval, p: int, K: Interval) -> np.ndarray:
    """Upper bounds of K/p! binom(p,k) C^{p-k-1} beta^{p-k}, k = 0..p-1."""
    return _mixed_coefficients_cached(beta.lo, beta.hi, p, K.lo, K.hi)


@lru_cache(maxsize=256)
def _mixed_coefficients_cached(blo, bhi, p, klo, khi) -> np.ndarray:
    beta, K = Interval(blo, bhi), Interval(klo, khi)
    base = K * inv_factorial(p)
    out = np.zeros(p)
    for k in range(p):
        e = p - k
        v = base * comb(p, k) * pow_int(C_DECAY, e - 1) * pow_int(beta, e)
        out[k] = v.hi
    out.flags.writeable = False
    return out


def mixed_power_bounds(c, beta, p: int, n_values, K) -> np.ndarray:
    """Vectorized mixed_power_bound: upper bounds for each n in n_values."""
    if p <= 1:
        raise ValueError("lemma hypothesis p>1 violated")
    beta, K = _iv(beta), _iv(K)
    if beta.lo < 0.0:
        raise ValueError("beta must be nonnegative")
    table = _as_table(c, p)
    n_values = [int(n) for n in n_values]
    coef = np.zeros((1, table.kmax + 1))
    coef[0, :p] = _mixed_coefficients(beta, p, K)
    S = table.decay_sums(n_values)
    ball = kernels.weighted_sums(coef, S)[0]
    kp = K * inv_factorial(p)
    pk = table.power(p)
    out = np.empty(len(n_values))
    for i, n in enumerate(n_values):
        center = (kp * cabs_upper(pk[n])).hi
        out[i] = (Interval(center) + Interval(ball[i])).hi
    return out


def mixed_power_bound(c, beta, p: int, n: int, K) -> Interval:
    """Bound on |(K/p!)((c+x)^{*p})_n| over x in X_beta."""
    return Interval(mixed_power_bounds(c, beta, p, [n], K)[0])


def tail_bound(beta, N: int, K) -> Interval:
    """Weighted bound of the sine-series tail from degree N on, for x in X_beta.

    Returns K (C beta)^{N-1} beta / (N! (1 - (C beta/N)^2)); multiplying by
    1/(|n|+1)^2 gives the coefficient bound.
    """
    beta, K = _iv(beta), _iv(K)
    if N < 1 or N % 2 == 0:
        raise ValueError("N must be a positive odd integer")
    if beta.lo < 0.0:
        raise ValueError("beta must be nonnegative")
    cb = C_DECAY * beta
    if cb.lo > N:
        raise ValueError("geometric series divergent: 10*beta > N")
    if beta.hi == 0.0:
        return Interval(0.0)
    ratio = (cb / N).sqr()
    denom = 1 - ratio
    if denom.lo <= 0.0:
        return Interval(0.0, float("inf"))
    val = K * pow_int(cb, N - 1) * inv_factorial(N) * beta / denom
    return Interval(val.lo, val.hi)


def high_n_uniform_bound(c, beta, p: int, N: int, K) -> Interval:
    """Weighted bound (times (n+1)^2) of |(K/p!)((c+x)^{*p})_n|, valid for all n > N."""
    if p <= 1:
        raise ValueError("lemma hypothesis p>1 violated")
    l = c.l if not isinstance(c, PowerTable) else c.l
    if N <= p * l:
        raise ValueError(f"lemma hypothesis N > pl violated (N={N}, p={p}, l={l})")
    beta, K = _iv(beta), _iv(K)
    table = _as_table(c, p - 1)
    U = table.uniform_sums(N, p - 1)
    coef = np.zeros((1, p))
    base = K * inv_factorial(p)
    cb = C_DECAY * beta
    for k in range(p):
        coef[0, k] = (base * comb(p, k) * pow_int(cb, p - k - 1) * beta).hi
    val = kernels.weighted_sums(coef, U.reshape(-1, 1))[0, 0]
    return Interval(val)


def grouped_center_residual(c, n: int, tau0, K) -> ComplexRect:
    """(f_n(tau0)+K) c_n - K/3! (c^{*3})_n + K/5! (c^{*5})_n - K/7! (c^{*7})_n."""
    K = _iv(K)
    table = _as_table(c, 7)
    cc = table.power(1)
    out = (f_n(n, tau0) + K) * cc[n]
    for d, sign in _SINE_DEGREES:
        out = out + table.power(d)[n] * (K * inv_factorial(d) * sign)
    return out


def _gamma_weights(beta: Interval) -> np.ndarray:
    # |x^{*p}_m| <= beta (C beta)^{p-1} / (|m|+1)^2
    cb = C_DECAY * beta
    return np.array([(beta * pow_int(cb, p - 1)).hi for p in range(1, 8)])


def gamma_sum_bounds(gamma: GammaTable, beta, n_values) -> np.ndarray:
    """Upper bounds of sum_{p,j} |gamma_{p,j}| beta (C beta)^{p-1}/(|n-j|+1)^2."""
    beta = _iv(beta)
    mat, sup = gamma.abs_matrix()
    S = kernels.decay_sums(mat, sup, [int(n) for n in n_values])
    coef = _gamma_weights(beta).reshape(1, -1)
    return kernels.weighted_sums(coef, S)[0]


def gamma_sum_bound(gamma: GammaTable, beta, n: int, exclude=()) -> Interval:
    """Same sum at a single n, skipping the (p, j) pairs in ``exclude``."""
    beta = _iv(beta)
    excl = set(exclude)
    weights = _gamma_weights(beta)
    acc = Interval(0.0)
    for p in range(1, 8):
        m = gamma.support(p)
        wp = Interval(weights[p - 1])
        for j in range(-m, m + 1):
            if (p, j) in excl:
                continue
            g = cabs_upper(gamma.get(p, j)).hi
            if g == 0.0:
                continue
            acc = acc + Interval(g) * wp / ((abs(n - j) + 1) ** 2)
    return Interval(acc.hi)
