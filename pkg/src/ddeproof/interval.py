"""Rigorous interval arithmetic over IEEE doubles.

Outward rounding is done in software: every native operation is followed by
an error-free transformation (TwoSum, Dekker's TwoProduct) that tells which
way the round-to-nearest result went, and the endpoint is stepped to the
neighbouring float only when needed. No global rounding mode is touched, so
everything here is thread-safe and results are reproducible bit for bit.

Endpoints may be infinite (``lo = -inf`` or ``hi = +inf``) but never NaN.
"""

from __future__ import annotations

import math
from decimal import Decimal
from fractions import Fraction

__all__ = [
    "Interval",
    "ComplexRect",
    "PI",
    "HALF_PI",
    "TWO_PI",
    "add",
    "sub",
    "mul",
    "div",
    "sqrt",
    "sin",
    "cos",
    "exp",
    "sinh",
    "pow_int",
    "inv_factorial",
    "unit_circle",
    "cabs_upper",
    "cabs_lower",
    "cabs",
]

_INF = math.inf
_MAXF = 1.7976931348623157e308
_nextafter = math.nextafter

# Dekker splitting is exact only away from overflow/underflow.
_SPLIT = 134217729.0
_SAFE_HI = 1e290
_SAFE_LO = 1e-280


def _down(x: float) -> float:
    return _nextafter(x, -_INF)


def _up(x: float) -> float:
    return _nextafter(x, _INF)


def _add_rd(a: float, b: float) -> float:
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    # err is NaN on overflow; stepping is then still a valid bound
    return s if err >= 0.0 else _down(s)


def _add_ru(a: float, b: float) -> float:
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s if err <= 0.0 else _up(s)


def _two_prod_err(a: float, b: float, p: float) -> float:
    c = _SPLIT * a
    ah = c - (c - a)
    al = a - ah
    c = _SPLIT * b
    bh = c - (c - b)
    bl = b - bh
    return ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _safe(a: float, b: float, p: float) -> bool:
    ap = abs(p)
    return _SAFE_LO < ap < _SAFE_HI and abs(a) < _SAFE_HI and abs(b) < _SAFE_HI


def _mul_rd(a: float, b: float) -> float:
    if a == 0.0 or b == 0.0:
        return 0.0
    p = a * b
    if math.isinf(p):
        if math.isinf(a) or math.isinf(b):
            return p
        return p if p < 0.0 else _MAXF
    if _safe(a, b, p):
        return p if _two_prod_err(a, b, p) >= 0.0 else _down(p)
    if p == 0.0 and (a > 0.0) == (b > 0.0):
        return 0.0  # underflowed positive product
    return _down(p)


def _mul_ru(a: float, b: float) -> float:
    if a == 0.0 or b == 0.0:
        return 0.0
    p = a * b
    if math.isinf(p):
        if math.isinf(a) or math.isinf(b):
            return p
        return p if p > 0.0 else -_MAXF
    if _safe(a, b, p):
        return p if _two_prod_err(a, b, p) <= 0.0 else _up(p)
    if p == 0.0 and (a > 0.0) != (b > 0.0):
        return 0.0  # underflowed negative product
    return _up(p)


def _div_sign(a: float, b: float, q: float) -> int:
    """Sign of a/b - q, or 2 when it cannot be decided exactly."""
    if not _safe(q, b, q * b) or abs(a) < _SAFE_LO:
        return 2
    p = q * b
    e = _two_prod_err(q, b, p)
    d = a - p  # exact (Sterbenz)
    if d > e:
        s = 1
    elif d < e:
        s = -1
    else:
        return 0
    return s if b > 0.0 else -s


def _div_rd(a: float, b: float) -> float:
    if a == 0.0:
        return 0.0
    q = a / b
    if math.isinf(q) or math.isinf(a) or math.isinf(b):
        if math.isinf(q) and not math.isinf(a):
            return q if q < 0.0 else _MAXF
        return q
    s = _div_sign(a, b, q)
    return q if s in (0, 1) else _down(q)


def _div_ru(a: float, b: float) -> float:
    if a == 0.0:
        return 0.0
    q = a / b
    if math.isinf(q) or math.isinf(a) or math.isinf(b):
        if math.isinf(q) and not math.isinf(a):
            return q if q > 0.0 else -_MAXF
        return q
    s = _div_sign(a, b, q)
    return q if s in (0, -1) else _up(q)


def _sqrt_rd(x: float) -> float:
    if x == 0.0 or math.isinf(x):
        return x
    s = math.sqrt(x)
    if not _safe(s, s, x):
        return _down(s)
    p = s * s
    e = _two_prod_err(s, s, p)
    d = x - p
    return s if d >= e else _down(s)


def _sqrt_ru(x: float) -> float:
    if x == 0.0 or math.isinf(x):
        return x
    s = math.sqrt(x)
    if not _safe(s, s, x):
        return _up(s)
    p = s * s
    e = _two_prod_err(s, s, p)
    d = x - p
    return s if d <= e else _up(s)


def _fraction_bounds(q: Fraction) -> tuple[float, float]:
    f = float(q)
    fq = Fraction(f)
    if fq == q:
        return f, f
    if fq < q:
        return f, _up(f)
    return _down(f), f


class Interval:
    """Closed real interval ``[lo, hi]`` with outward-rounded operations.

    Instances are immutable by convention. Plain ints and floats mix in as
    point intervals (ints beyond 2**53 are enclosed, not rounded).
    """

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        if hi is None:
            hi = lo
        if isinstance(lo, int) and abs(lo) > 2**53:
            lo = _fraction_bounds(Fraction(lo))[0]
        if isinstance(hi, int) and abs(hi) > 2**53:
            hi = _fraction_bounds(Fraction(hi))[1]
        lo = float(lo)
        hi = float(hi)
        if math.isnan(lo) or math.isnan(hi):
            raise ValueError("interval endpoint is NaN")
        if lo > hi:
            raise ValueError(f"invalid interval: lo={lo!r} > hi={hi!r}")
        if lo == _INF or hi == -_INF:
            raise ValueError("empty interval at infinity")
        self.lo = lo
        self.hi = hi

    # construction -------------------------------------------------------

    @classmethod
    def from_fraction(cls, q: Fraction) -> Interval:
        lo, hi = _fraction_bounds(Fraction(q))
        return cls(lo, hi)

    @classmethod
    def from_decimal(cls, text) -> Interval:
        """Tightest enclosure of an exact decimal literal (str or Decimal)."""
        if isinstance(text, float):
            raise TypeError("pass decimal strings, not floats")
        return cls.from_fraction(Fraction(Decimal(str(text).strip())))

    @classmethod
    def hull_of(cls, *items) -> Interval:
        ivs = [_coerce(x) for x in items]
        return cls(min(i.lo for i in ivs), max(i.hi for i in ivs))

    # queries ------------------------------------------------------------

    def __repr__(self) -> str:
        return f"Interval({self.lo!r}, {self.hi!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Interval):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    def __reduce__(self):
        return (Interval, (self.lo, self.hi))

    def contains(self, x) -> bool:
        """Exact membership test for floats, ints, Fractions or intervals."""
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        if isinstance(x, (Fraction, Decimal)):
            x = Fraction(x)
            lo_ok = self.lo == -_INF or Fraction(self.lo) <= x
            hi_ok = self.hi == _INF or x <= Fraction(self.hi)
            return lo_ok and hi_ok
        return self.lo <= x <= self.hi

    __contains__ = contains

    def intersects(self, other) -> bool:
        other = _coerce(other)
        return self.lo <= other.hi and other.lo <= self.hi

    def hull(self, other) -> Interval:
        other = _coerce(other)
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    @property
    def width(self) -> float:
        return _add_ru(self.hi, -self.lo)

    @property
    def mid(self) -> float:
        if math.isinf(self.lo) or math.isinf(self.hi):
            return 0.0 if self.lo == -self.hi else (self.lo if math.isinf(self.hi) else self.hi)
        return self.lo * 0.5 + self.hi * 0.5

    def mag(self) -> float:
        """max |x| over the interval."""
        return max(abs(self.lo), abs(self.hi))

    def mig(self) -> float:
        """min |x| over the interval (0 if it contains 0)."""
        if self.lo <= 0.0 <= self.hi:
            return 0.0
        return min(abs(self.lo), abs(self.hi))

    def is_point(self) -> bool:
        return self.lo == self.hi

    # arithmetic ---------------------------------------------------------

    def __neg__(self) -> Interval:
        return Interval(-self.hi, -self.lo)

    def __pos__(self) -> Interval:
        return self

    def __abs__(self) -> Interval:
        return Interval(self.mig(), self.mag())

    def __add__(self, other) -> Interval:
        other = _coerce(other)
        return Interval(_add_rd(self.lo, other.lo), _add_ru(self.hi, other.hi))

    __radd__ = __add__

    def __sub__(self, other) -> Interval:
        other = _coerce(other)
        return Interval(_add_rd(self.lo, -other.hi), _add_ru(self.hi, -other.lo))

    def __rsub__(self, other) -> Interval:
        return _coerce(other) - self

    def __mul__(self, other) -> Interval:
        other = _coerce(other)
        return _imul(self.lo, self.hi, other.lo, other.hi)

    __rmul__ = __mul__

    def __truediv__(self, other) -> Interval:
        other = _coerce(other)
        if other.lo <= 0.0 <= other.hi:
            raise ZeroDivisionError("division by zero-containing interval")
        a, b = self, other
        if b.lo > 0.0:
            if a.lo >= 0.0:
                return Interval(_div_rd(a.lo, b.hi), _div_ru(a.hi, b.lo))
            if a.hi <= 0.0:
                return Interval(_div_rd(a.lo, b.lo), _div_ru(a.hi, b.hi))
            return Interval(_div_rd(a.lo, b.lo), _div_ru(a.hi, b.lo))
        if a.lo >= 0.0:
            return Interval(_div_rd(a.hi, b.hi), _div_ru(a.lo, b.lo))
        if a.hi <= 0.0:
            return Interval(_div_rd(a.hi, b.lo), _div_ru(a.lo, b.hi))
        return Interval(_div_rd(a.hi, b.hi), _div_ru(a.lo, b.hi))

    def __rtruediv__(self, other) -> Interval:
        return _coerce(other) / self

    def __pow__(self, k: int) -> Interval:
        return pow_int(self, k)

    def sqr(self) -> Interval:
        m, M = self.mig(), self.mag()
        return Interval(_mul_rd(m, m), _mul_ru(M, M))


def _imul(alo: float, ahi: float, blo: float, bhi: float) -> Interval:
    if alo >= 0.0:
        if blo >= 0.0:
            return Interval(_mul_rd(alo, blo), _mul_ru(ahi, bhi))
        if bhi <= 0.0:
            return Interval(_mul_rd(ahi, blo), _mul_ru(alo, bhi))
        return Interval(_mul_rd(ahi, blo), _mul_ru(ahi, bhi))
    if ahi <= 0.0:
        if blo >= 0.0:
            return Interval(_mul_rd(alo, bhi), _mul_ru(ahi, blo))
        if bhi <= 0.0:
            return Interval(_mul_rd(ahi, bhi), _mul_ru(alo, blo))
        return Interval(_mul_rd(alo, bhi), _mul_ru(alo, blo))
    if blo >= 0.0:
        return Interval(_mul_rd(alo, bhi), _mul_ru(ahi, bhi))
    if bhi <= 0.0:
        return Interval(_mul_rd(ahi, blo), _mul_ru(alo, blo))
    return Interval(
        min(_mul_rd(alo, bhi), _mul_rd(ahi, blo)),
        max(_mul_ru(alo, blo), _mul_ru(ahi, bhi)),
    )


def _coerce(x) -> Interval:
    if isinstance(x, Interval):
        return x
    if isinstance(x, (int, float)):
        return Interval(x)
    if isinstance(x, Fraction):
        return Interval.from_fraction(x)
    if isinstance(x, (str, Decimal)):
        return Interval.from_decimal(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Interval")


def add(a, b) -> Interval:
    return _coerce(a) + b


def sub(a, b) -> Interval:
    return _coerce(a) - b


def mul(a, b) -> Interval:
    return _coerce(a) * b


def div(a, b) -> Interval:
    return _coerce(a) / b


def sqrt(a) -> Interval:
    a = _coerce(a)
    if a.lo < 0.0:
        raise ValueError("sqrt of negative-containing interval")
    return Interval(_sqrt_rd(a.lo), _sqrt_ru(a.hi))


def _pow_mag(x: float, k: int, mul) -> float:
    # square-and-multiply for x >= 0; mul rounds every step the same way
    out = 1.0
    while k:
        if k & 1:
            out = mul(out, x)
        k >>= 1
        if k:
            x = mul(x, x)
    return out


def pow_int(a, k: int) -> Interval:
    """Tight enclosure of a**k for integer k >= 0."""
    a = _coerce(a)
    if k < 0:
        raise ValueError("pow_int needs k >= 0")
    if k == 0:
        return Interval(1.0)
    if k % 2 == 0:
        return Interval(_pow_mag(a.mig(), k, _mul_rd), _pow_mag(a.mag(), k, _mul_ru))
    # odd powers are monotone
    if a.lo >= 0.0:
        lo = _pow_mag(a.lo, k, _mul_rd)
    else:
        lo = -_pow_mag(-a.lo, k, _mul_ru)
    if a.hi >= 0.0:
        hi = _pow_mag(a.hi, k, _mul_ru)
    else:
        hi = -_pow_mag(-a.hi, k, _mul_rd)
    return Interval(lo, hi)


_INV_FACT_CACHE: list[Interval] = [Interval(1.0)]


def inv_factorial(k: int) -> Interval:
    """Enclosure of 1/k!, by repeated division (never forms k! in floats)."""
    if k < 0:
        raise ValueError("inv_factorial needs k >= 0")
    while len(_INV_FACT_CACHE) <= k:
        n = len(_INV_FACT_CACHE)
        _INV_FACT_CACHE.append(_INV_FACT_CACHE[-1] / n)
    return _INV_FACT_CACHE[k]


PI = Interval.from_decimal("3.14159265358979323846264338327950288419716939937510")
HALF_PI = Interval(PI.lo * 0.5, PI.hi * 0.5)
TWO_PI = Interval(PI.lo * 2.0, PI.hi * 2.0)

_TAYLOR_TERMS = 14


def _sin_series(r: Interval) -> Interval:
    # valid for |r| <= 1; remainder bounded by the first omitted term
    r2 = r.sqr()
    acc = Interval(0.0)
    for i in range(_TAYLOR_TERMS, -1, -1):
        term = inv_factorial(2 * i + 1)
        acc = (term if i % 2 == 0 else -term) + acc * r2
    acc = acc * r
    rem = pow_int(Interval(r.mag()), 2 * _TAYLOR_TERMS + 3) * inv_factorial(2 * _TAYLOR_TERMS + 3)
    return acc + Interval(-rem.hi, rem.hi)


def _cos_series(r: Interval) -> Interval:
    r2 = r.sqr()
    acc = Interval(0.0)
    for i in range(_TAYLOR_TERMS, -1, -1):
        term = inv_factorial(2 * i)
        acc = (term if i % 2 == 0 else -term) + acc * r2
    rem = pow_int(Interval(r.mag()), 2 * _TAYLOR_TERMS + 2) * inv_factorial(2 * _TAYLOR_TERMS + 2)
    return acc + Interval(-rem.hi, rem.hi)


def _sin_point(x: float, quarter_shift: int = 0) -> Interval:
    """Enclosure of sin(x + quarter_shift * pi/2) for a float x."""
    if math.isinf(x):
        return Interval(-1.0, 1.0)
    k = round(x / (math.pi / 2))
    r = Interval(x) - HALF_PI * k
    q = (k + quarter_shift) % 4
    if q == 0:
        v = _sin_series(r)
    elif q == 1:
        v = _cos_series(r)
    elif q == 2:
        v = -_sin_series(r)
    else:
        v = -_cos_series(r)
    return Interval(max(v.lo, -1.0), min(v.hi, 1.0))


def _periodic_range(a: Interval, quarter_shift: int) -> Interval:
    # range of sin(x + shift*pi/2) over a
    if a.width >= TWO_PI.lo or math.isinf(a.lo) or math.isinf(a.hi):
        return Interval(-1.0, 1.0)
    ea = _sin_point(a.lo, quarter_shift)
    eb = _sin_point(a.hi, quarter_shift)
    lo = min(ea.lo, eb.lo)
    hi = max(ea.hi, eb.hi)
    # extrema of the shifted sine at x = (1 - shift)*pi/2 + m*pi
    base = 1 - quarter_shift
    m0 = math.floor(a.lo / math.pi) - 2
    m1 = math.ceil(a.hi / math.pi) + 2
    for m in range(m0, m1 + 1):
        crit = HALF_PI * (base + 2 * m)
        if crit.hi >= a.lo and crit.lo <= a.hi:
            # the value there is sin((1 + 2m) pi/2) = (-1)^m
            if m % 2 == 0:
                hi = 1.0
            else:
                lo = -1.0
    return Interval(max(lo, -1.0), min(hi, 1.0))


def sin(a) -> Interval:
    return _periodic_range(_coerce(a), 0)


def cos(a) -> Interval:
    return _periodic_range(_coerce(a), 1)


def _exp_small(y: Interval) -> Interval:
    # |y| <= 0.5; remainder <= 2 |y|^(N+1)/(N+1)!
    n = 24
    acc = Interval(0.0)
    for i in range(n, -1, -1):
        acc = inv_factorial(i) + acc * y
    rem = pow_int(Interval(y.mag()), n + 1) * inv_factorial(n + 1) * 2
    return acc + Interval(-rem.hi, rem.hi)


def _exp_point(x: float) -> Interval:
    if x == -_INF:
        return Interval(0.0)
    if x == _INF:
        return Interval(_MAXF, _INF)
    s = 0
    while abs(x) / 2.0**s > 0.5:
        s += 1
    v = _exp_small(Interval(x / 2.0**s))
    for _ in range(s):
        v = v.sqr()
    return Interval(max(v.lo, 0.0), v.hi)


def exp(a) -> Interval:
    a = _coerce(a)
    return Interval(_exp_point(a.lo).lo, _exp_point(a.hi).hi)


def _sinh_point(x: float) -> Interval:
    if abs(x) <= 1.0:
        r = Interval(x)
        r2 = r.sqr()
        acc = Interval(0.0)
        for i in range(_TAYLOR_TERMS, -1, -1):
            acc = inv_factorial(2 * i + 1) + acc * r2
        acc = acc * r
        # cosh(1) < 2 bounds the Lagrange remainder factor
        rem = pow_int(Interval(abs(x)), 2 * _TAYLOR_TERMS + 3) * inv_factorial(2 * _TAYLOR_TERMS + 3) * 2
        return acc + Interval(-rem.hi, rem.hi)
    return (_exp_point(x) - _exp_point(-x)) / 2


def sinh(a) -> Interval:
    a = _coerce(a)
    return Interval(_sinh_point(a.lo).lo, _sinh_point(a.hi).hi)


class ComplexRect:
    """Axis-aligned rectangle ``re x im`` in the complex plane."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0.0):
        self.re = _coerce(re)
        self.im = _coerce(im)

    @classmethod
    def from_decimal(cls, re: str, im: str = "0") -> ComplexRect:
        return cls(Interval.from_decimal(re), Interval.from_decimal(im))

    @classmethod
    def from_complex(cls, z: complex) -> ComplexRect:
        return cls(Interval(z.real), Interval(z.imag))

    def __repr__(self) -> str:
        return f"ComplexRect({self.re!r}, {self.im!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComplexRect):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __reduce__(self):
        return (ComplexRect, (self.re, self.im))

    def is_zero(self) -> bool:
        return self.re.lo == self.re.hi == 0.0 and self.im.lo == self.im.hi == 0.0

    def contains(self, z) -> bool:
        if isinstance(z, ComplexRect):
            return self.re.contains(z.re) and self.im.contains(z.im)
        z = complex(z)
        return self.re.contains(z.real) and self.im.contains(z.imag)

    __contains__ = contains

    def intersects(self, other: ComplexRect) -> bool:
        return self.re.intersects(other.re) and self.im.intersects(other.im)

    def hull(self, other: ComplexRect) -> ComplexRect:
        return ComplexRect(self.re.hull(other.re), self.im.hull(other.im))

    def conj(self) -> ComplexRect:
        return ComplexRect(self.re, -self.im)

    def __neg__(self) -> ComplexRect:
        return ComplexRect(-self.re, -self.im)

    def __add__(self, other) -> ComplexRect:
        other = _coerce_c(other)
        return ComplexRect(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other) -> ComplexRect:
        other = _coerce_c(other)
        return ComplexRect(self.re - other.re, self.im - other.im)

    def __rsub__(self, other) -> ComplexRect:
        return _coerce_c(other) - self

    def __mul__(self, other) -> ComplexRect:
        if isinstance(other, (Interval, int, float, Fraction)):
            s = _coerce(other)
            return ComplexRect(self.re * s, self.im * s)
        other = _coerce_c(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        return ComplexRect(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other) -> ComplexRect:
        if isinstance(other, ComplexRect):
            den = other.re.sqr() + other.im.sqr()
            num = self * other.conj()
            return ComplexRect(num.re / den, num.im / den)
        s = _coerce(other)
        return ComplexRect(self.re / s, self.im / s)


def _coerce_c(x) -> ComplexRect:
    if isinstance(x, ComplexRect):
        return x
    if isinstance(x, complex):
        return ComplexRect.from_complex(x)
    return ComplexRect(_coerce(x), Interval(0.0))


def unit_circle(theta) -> ComplexRect:
    """Enclosure of exp(i*theta)."""
    theta = _coerce(theta)
    return ComplexRect(cos(theta), sin(theta))


def cabs_upper(z: ComplexRect) -> Interval:
    """Enclosure of sup |z| over the rectangle (use ``.hi``)."""
    a = Interval(z.re.mag())
    b = Interval(z.im.mag())
    return sqrt(a.sqr() + b.sqr())


def cabs_lower(z: ComplexRect) -> Interval:
    """Enclosure of inf |z| over the rectangle (use ``.lo``)."""
    a = Interval(z.re.mig())
    b = Interval(z.im.mig())
    return sqrt(a.sqr() + b.sqr())


def cabs(z: ComplexRect) -> Interval:
    """Interval containing |w| for every w in the rectangle."""
    return Interval(cabs_lower(z).lo, cabs_upper(z).hi)
