"""Conjugate-symmetric Fourier sequences, decay envelopes and convolution.

A sequence stores only the coefficients with n >= 0; c_{-n} is conj(c_n).
Convolution is the direct double sum in interval arithmetic.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import kernels
from .interval import ComplexRect, Interval, cos, sin

__all__ = [
    "SymmetricSequence",
    "DecayEnvelope",
    "BallSequence",
    "convolve",
    "conv_power",
    "conv_bound_constant",
    "envelope_conv",
    "envelope_power",
    "evaluate",
    "envelope_hull",
]


class SymmetricSequence:
    """Finite sequence c_{-l..l} with c_{-n} = conj(c_n) and real c_0."""

    __slots__ = ("_data",)

    def __init__(self, coeffs):
        coeffs = [c if isinstance(c, ComplexRect) else ComplexRect.from_complex(complex(c)) for c in coeffs]
        if not coeffs:
            raise ValueError("a sequence needs at least c_0")
        if not coeffs[0].im.contains(0.0):
            raise ValueError("c_0 must be real (its imaginary part must contain 0)")
        data = np.empty((4, len(coeffs)), dtype=np.float64)
        for n, c in enumerate(coeffs):
            data[:, n] = (c.re.lo, c.re.hi, c.im.lo, c.im.hi)
        self._data = data

    @classmethod
    def _from_array(cls, data: np.ndarray) -> SymmetricSequence:
        obj = cls.__new__(cls)
        obj._data = data
        return obj

    @classmethod
    def zeros(cls, l: int) -> SymmetricSequence:
        return cls._from_array(np.zeros((4, l + 1)))

    @classmethod
    def delta(cls) -> SymmetricSequence:
        """The convolution identity (c_0 = 1, l = 0)."""
        return cls._from_array(np.array([[1.0], [1.0], [0.0], [0.0]]))

    @classmethod
    def from_complex(cls, values) -> SymmetricSequence:
        """Point enclosure of float coefficients c_0..c_l (c_0's imag part is dropped)."""
        values = [complex(v) for v in values]
        values[0] = complex(values[0].real, 0.0)
        return cls([ComplexRect.from_complex(v) for v in values])

    @classmethod
    def from_decimal(cls, pairs: dict, l: int | None = None) -> SymmetricSequence:
        """Build from {n: (re_str, im_str)}; missing n up to l are zero."""
        if l is None:
            l = max(pairs) if pairs else 0
        coeffs = []
        for n in range(l + 1):
            if n in pairs:
                re, im = pairs[n]
                coeffs.append(ComplexRect.from_decimal(re, im))
            else:
                coeffs.append(ComplexRect(0.0, 0.0))
        return cls(coeffs)

    @property
    def l(self) -> int:
        return self._data.shape[1] - 1

    @property
    def array(self) -> np.ndarray:
        """Read-only (4, l+1) view: rows re.lo, re.hi, im.lo, im.hi."""
        v = self._data.view()
        v.flags.writeable = False
        return v

    def __len__(self) -> int:
        return self.l + 1

    def __getitem__(self, n: int) -> ComplexRect:
        m = abs(n)
        if m > self.l:
            return ComplexRect(0.0, 0.0)
        rl, rh, il, ih = self._data[:, m]
        z = ComplexRect(Interval(rl, rh), Interval(il, ih))
        return z if n >= 0 else z.conj()

    def coeffs(self) -> list[ComplexRect]:
        return [self[n] for n in range(self.l + 1)]

    def __repr__(self) -> str:
        return f"SymmetricSequence(l={self.l})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymmetricSequence):
            return NotImplemented
        return self._data.shape == other._data.shape and bool((self._data == other._data).all())

    def abs_upper(self) -> np.ndarray:
        """Upper bounds of |c_n| for n = 0..l."""
        from .interval import cabs_upper

        return np.array([cabs_upper(self[n]).hi for n in range(self.l + 1)])

    def contains(self, other) -> bool:
        """True if every coefficient of ``other`` lies in the enclosures."""
        if isinstance(other, SymmetricSequence):
            other = other.coeffs()
        other = list(other)
        for n in range(max(self.l + 1, len(other))):
            z = other[n] if n < len(other) else 0j
            if not self[n].contains(z):
                return False
        return True

    def __add__(self, other: SymmetricSequence) -> SymmetricSequence:
        l = max(self.l, other.l)
        return SymmetricSequence([self[n] + other[n] for n in range(l + 1)])

    def scale(self, s) -> SymmetricSequence:
        return SymmetricSequence([self[n] * s for n in range(self.l + 1)])

    def to_complex(self) -> np.ndarray:
        """Midpoints as a numpy complex vector (non-rigorous)."""
        d = self._data
        return 0.5 * (d[0] + d[1]) + 0.5j * (d[2] + d[3])


class DecayEnvelope:
    """The set X_beta: |x_n| <= beta / (|n|+1)**alpha."""

    __slots__ = ("beta", "alpha")

    def __init__(self, beta, alpha=2):
        beta = beta if isinstance(beta, Interval) else Interval(beta)
        if beta.lo < 0.0:
            raise ValueError("envelope radius must be nonnegative")
        self.beta = beta
        self.alpha = Fraction(alpha)

    def __repr__(self) -> str:
        return f"DecayEnvelope({self.beta!r}, alpha={self.alpha})"

    def bound(self, n: int) -> Interval:
        """Enclosure of beta/(|n|+1)**alpha (integer alpha only)."""
        if self.alpha.denominator != 1:
            raise ValueError("bound() needs an integer exponent")
        return self.beta / Interval((abs(n) + 1) ** int(self.alpha))


class BallSequence:
    """center + X_radius."""

    __slots__ = ("center", "radius")

    def __init__(self, center: SymmetricSequence, radius: DecayEnvelope):
        self.center = center
        self.radius = radius


def convolve(x: SymmetricSequence, y: SymmetricSequence) -> SymmetricSequence:
    out = kernels.conv_rect(x._data, y._data)
    # (x*y)_0 is real for conjugate-symmetric inputs
    out[2, 0] = 0.0
    out[3, 0] = 0.0
    return SymmetricSequence._from_array(out)


def conv_power(x: SymmetricSequence, p: int) -> SymmetricSequence:
    if p < 0:
        raise ValueError("convolution power needs p >= 0")
    result = SymmetricSequence.delta()
    for _ in range(p):
        result = convolve(result, x)
    return result


def conv_bound_constant(alpha) -> Interval:
    """C = 2(2 alpha + 1)/(alpha - 1), the constant of the product bound."""
    a = Fraction(alpha)
    if a < 2:
        raise ValueError("lemma hypothesis violated: alpha >= 2 required")
    return Interval.from_fraction(2 * (2 * a + 1) / (a - 1))


def envelope_conv(e1: DecayEnvelope, e2: DecayEnvelope) -> DecayEnvelope:
    if e1.alpha != e2.alpha:
        raise ValueError("envelopes have different decay exponents")
    c = conv_bound_constant(e1.alpha)
    return DecayEnvelope(c * e1.beta * e2.beta, e1.alpha)


def envelope_power(e: DecayEnvelope, k: int) -> DecayEnvelope:
    """Envelope of x^{*k} for x in e: (C^{k-1} beta^k, alpha)."""
    if k < 1:
        raise ValueError("envelope_power needs k >= 1")
    out = e
    for _ in range(k - 1):
        out = envelope_conv(out, e)
    return out


def evaluate(c: SymmetricSequence, t) -> Interval:
    """Enclosure of c_0 + sum_{n>=1} 2 Re(c_n e^{int})."""
    t = t if isinstance(t, Interval) else Interval(t)
    acc = c[0].re
    for n in range(1, c.l + 1):
        z = c[n]
        if z.is_zero():
            continue
        nt = t * n
        acc = acc + (z.re * cos(nt) - z.im * sin(nt)) * 2
    return acc


def envelope_hull(b: BallSequence) -> DecayEnvelope:
    """Smallest (beta, 2) envelope containing center + X_radius."""
    if b.radius.alpha != 2:
        raise ValueError("envelope_hull is defined for alpha = 2")
    from .interval import cabs_upper

    best = 0.0
    for n in range(b.center.l + 1):
        w = cabs_upper(b.center[n]) * Interval((n + 1) ** 2)
        best = max(best, w.hi)
    beta = Interval(best) + b.radius.beta
    return DecayEnvelope(Interval(beta.hi), 2)
