"""Independent oracles shared by the unit tests and the acceptance run.

Everything here avoids the package's own arithmetic: exact rationals
(fractions), mpmath at high precision, or plain numpy sampling.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

import mpmath
import numpy as np

from ddeproof import estimates, fourier
from ddeproof.interval import ComplexRect, Interval, cos, exp, sin, sinh, sqrt

CENTER_C = {
    1: ("-0.1521000000", "-0.1163508047"),
    3: ("0.0001123121", "-0.0002746107"),
    5: ("-0.0000008173", "-0.0000001014"),
}
K_BUNDLED = 1.6
BETA2 = 2.438e-7


def center_complex(l=5):
    c = np.zeros(l + 1, dtype=complex)
    for n, (re, im) in CENTER_C.items():
        if n <= l:
            c[n] = complex(float(re), float(im))
    return c


def center_sequence():
    return fourier.SymmetricSequence.from_decimal(CENTER_C, 5)


# ---------------------------------------------------------------- intervals


def _rand_float(rng: random.Random) -> float:
    r = rng.random()
    if r < 0.05:
        e = rng.uniform(-320, -280)
    elif r < 0.10:
        e = rng.uniform(280, 307)
    elif r < 0.15:
        return float(rng.randint(-1000, 1000))
    else:
        e = rng.uniform(-30, 30)
    v = 10.0**e
    return v if rng.random() < 0.5 else -v


def _rand_interval(rng: random.Random) -> Interval:
    a = _rand_float(rng)
    if rng.random() < 0.3:
        return Interval(a)
    b = a + _rand_float(rng) * rng.random()
    if math.isinf(b) or math.isnan(b):
        b = a
    return Interval(min(a, b), max(a, b))


def _member(rng: random.Random, x: Interval) -> Fraction:
    r = rng.random()
    if r < 0.2:
        return Fraction(x.lo)
    if r < 0.4:
        return Fraction(x.hi)
    u = Fraction(rng.randint(0, 2**20), 2**20)
    return Fraction(x.lo) + u * (Fraction(x.hi) - Fraction(x.lo))


def fuzz_arithmetic(n_cases: int, seed: int = 1) -> dict:
    """Exact-rational containment check of +, -, *, / on random operands."""
    rng = random.Random(seed)
    bad = {"+": 0, "-": 0, "*": 0, "/": 0, "sqrt": 0}
    for _ in range(n_cases):
        a, b = _rand_interval(rng), _rand_interval(rng)
        x, y = _member(rng, a), _member(rng, b)
        if not (a + b).contains(x + y):
            bad["+"] += 1
        if not (a - b).contains(x - y):
            bad["-"] += 1
        if not (a * b).contains(x * y):
            bad["*"] += 1
        if not b.contains(0.0):
            if not (a / b).contains(x / y):
                bad["/"] += 1
        m = abs(a)
        s = sqrt(m)
        z = _member(rng, m)
        # lo^2 <= z <= hi^2 decides containment of sqrt(z) exactly
        if not (Fraction(s.lo) ** 2 <= z and (math.isinf(s.hi) or z <= Fraction(s.hi) ** 2)):
            bad["sqrt"] += 1
    return bad


def fuzz_elementary(n_cases: int, seed: int = 2) -> dict:
    """mpmath (60 digits) containment check of sin, cos, exp, sinh."""
    rng = random.Random(seed)
    mpmath.mp.dps = 60
    bad = {"sin": 0, "cos": 0, "exp": 0, "sinh": 0}
    for _ in range(n_cases):
        scale = 10.0 ** rng.uniform(-8, 2.5)
        a = rng.uniform(-1, 1) * scale
        w = 0.0 if rng.random() < 0.3 else rng.random() * scale * rng.choice([1e-9, 1e-3, 1.0])
        x = Interval(a, a + w)
        p = mpmath.mpf(x.lo) + mpmath.mpf(rng.random()) * (mpmath.mpf(x.hi) - mpmath.mpf(x.lo))
        for name, f, g in (("sin", sin, mpmath.sin), ("cos", cos, mpmath.cos)):
            r = f(x)
            v = g(p)
            if not (mpmath.mpf(r.lo) <= v <= mpmath.mpf(r.hi)):
                bad[name] += 1
        if abs(a) < 300:
            for name, f, g in (("exp", exp, mpmath.exp), ("sinh", sinh, mpmath.sinh)):
                r = f(x)
                v = g(p)
                if not (mpmath.mpf(r.lo) <= v and (math.isinf(r.hi) or v <= mpmath.mpf(r.hi))):
                    bad[name] += 1
    return bad


# ---------------------------------------------------------------- convolution


def _exact_conv(xs, ys, n):
    """Exact (x*y)_n for rational complex pairs indexed n >= 0 (conj symmetric)."""
    lx, ly = len(xs) - 1, len(ys) - 1

    def get(v, l, k):
        if abs(k) > l:
            return (Fraction(0), Fraction(0))
        re, im = v[abs(k)]
        return (re, im) if k >= 0 else (re, -im)

    sr = si = Fraction(0)
    for k in range(-lx, lx + 1):
        a = get(xs, lx, k)
        b = get(ys, ly, n - k)
        sr += a[0] * b[0] - a[1] * b[1]
        si += a[0] * b[1] + a[1] * b[0]
    return sr, si


def convolution_bruteforce(n_cases: int, seed: int = 3) -> int:
    """Random length <= 5 interval sequences; exact convolution of member points."""
    rng = random.Random(seed)
    violations = 0
    for _ in range(n_cases):
        seqs, pts = [], []
        for _ in range(2):
            l = rng.randint(0, 4)
            coeffs, members = [], []
            for n in range(l + 1):
                re = Interval(*sorted((rng.uniform(-1, 1), rng.uniform(-1, 1))))
                im = Interval(0.0) if n == 0 else Interval(*sorted((rng.uniform(-1, 1), rng.uniform(-1, 1))))
                if rng.random() < 0.4:
                    re = Interval(re.lo)
                    im = Interval(im.lo)
                coeffs.append(ComplexRect(re, im))
                members.append((_member(rng, re), _member(rng, im)))
            seqs.append(fourier.SymmetricSequence(coeffs))
            pts.append(members)
        out = fourier.convolve(*seqs)
        for n in range(out.l + 1):
            er, ei = _exact_conv(pts[0], pts[1], n)
            z = out[n]
            if not (z.re.contains(er) and z.im.contains(ei)):
                violations += 1
    return violations


def _full(c):
    return np.concatenate([np.conj(c[:0:-1]), c])


def _sample_envelope(rng: np.random.Generator, beta: float, length: int, extreme: bool):
    n = np.arange(length + 1)
    if extreme:
        u = np.ones(length + 1, dtype=complex)
    else:
        u = np.sqrt(rng.random(length + 1)) * np.exp(2j * np.pi * rng.random(length + 1))
    x = beta / (n + 1.0) ** 2 * u
    x[0] = x[0].real
    return x


def szac_sampling(n_samples: int, seed: int = 4, beta=(0.5, 0.5), length: int = 200, n_check: int = 50) -> int:
    """|(x*y)_n| (n+1)^2 <= C beta1 beta2 for x, y inside the envelopes."""
    rng = np.random.default_rng(seed)
    bound = float(fourier.envelope_conv(fourier.DecayEnvelope(beta[0]), fourier.DecayEnvelope(beta[1])).beta.hi)
    violations = 0
    for s in range(n_samples):
        x = _sample_envelope(rng, beta[0], length, s == 0)
        y = _sample_envelope(rng, beta[1], length, s == 0)
        z = np.convolve(_full(x), _full(y))
        mid = (len(z) - 1) // 2
        n = np.arange(n_check + 1)
        vals = np.abs(z[mid : mid + n_check + 1]) * (n + 1.0) ** 2
        if np.any(vals > bound * (1 + 1e-12)):
            violations += 1
    return violations


def srodek_sampling(n_samples: int, seed: int = 5, p: int = 3, n_values=(0, 1, 3, 7, 12), beta=BETA2,
                    length: int = 60) -> int:
    """|(K/p!)((c+x)^{*p})_n| against mixed_power_bound, x sampled in X_beta."""
    rng = np.random.default_rng(seed)
    c = center_complex(5)
    seq = center_sequence()
    bounds = {n: estimates.mixed_power_bound(seq, Interval(beta), p, n, Interval.from_decimal("1.6")).hi
              for n in n_values}
    violations = 0
    fac = K_BUNDLED / math.factorial(p)
    for s in range(n_samples):
        x = _sample_envelope(rng, beta, length, s == 0)
        y = x.copy()
        y[: len(c)] += c
        f = _full(y)
        z = f
        for _ in range(p - 1):
            z = np.convolve(z, f)
        mid = (len(z) - 1) // 2
        for n in n_values:
            if fac * abs(z[mid + n]) > bounds[n] * (1 + 1e-9):
                violations += 1
    return violations


def ogon_sampling(n_samples: int, seed: int = 6, beta: float = 0.3, N: int = 5, length: int = 40,
                  grid: int = 4096, n_check: int = 30) -> int:
    """Sine-series tail from degree N, computed through the function values."""
    rng = np.random.default_rng(seed)
    bound = estimates.tail_bound(Interval(beta), N, Interval.from_decimal("1.6")).hi
    violations = 0
    t = 2 * np.pi * np.arange(grid) / grid
    n = np.arange(length + 1)
    modes = np.exp(1j * np.outer(t, n[1:]))
    for s in range(n_samples):
        x = _sample_envelope(rng, beta, length, s == 0)
        vals = x[0].real + 2 * np.real(modes @ x[1:])
        poly = np.zeros_like(vals)
        for k in range((N - 1) // 2):
            poly += (-1) ** k * vals ** (2 * k + 1) / math.factorial(2 * k + 1)
        g = K_BUNDLED * (np.sin(vals) - poly)
        coef = np.fft.fft(g) / grid
        m = np.arange(n_check + 1)
        if np.any(np.abs(coef[: n_check + 1]) * (m + 1.0) ** 2 > bound * (1 + 1e-9) + 1e-13):
            violations += 1
    return violations


def wysoko_sampling(n_samples: int, seed: int = 7, p: int = 3, N: int = 20, beta: float = 0.02,
                    length: int = 120, n_check: int = 60) -> int:
    """(n+1)^2 |(K/p!)((c+x)^{*p})_n| for n > N against high_n_uniform_bound."""
    rng = np.random.default_rng(seed)
    c = center_complex(5)
    seq = center_sequence()
    bound = estimates.high_n_uniform_bound(seq, Interval(beta), p, N, Interval.from_decimal("1.6")).hi
    fac = K_BUNDLED / math.factorial(p)
    violations = 0
    for s in range(n_samples):
        x = _sample_envelope(rng, beta, length, s == 0)
        y = x.copy()
        y[: len(c)] += c
        f = _full(y)
        z = f
        for _ in range(p - 1):
            z = np.convolve(z, f)
        mid = (len(z) - 1) // 2
        n = np.arange(N + 1, N + 1 + n_check)
        vals = fac * np.abs(z[mid + n]) * (n + 1.0) ** 2
        if np.any(vals > bound * (1 + 1e-9)):
            violations += 1
    return violations


def bundled_config_path():
    from ddeproof.config import default_config_path

    return default_config_path()
