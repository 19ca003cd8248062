"""Non-rigorous numerics producing the center (tau, c) for the verifier.

simulate -> extract_orbit -> normalize_phase -> newton_refine. Plain floats
throughout; nothing here is part of the trusted base of a certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

__all__ = [
    "Trajectory",
    "GalerkinPoint",
    "RefinementError",
    "NoOscillationError",
    "simulate",
    "extract_orbit",
    "normalize_phase",
    "galerkin_F",
    "newton_refine",
    "find_candidate",
    "PHASE_IM",
]

PHASE_IM = -0.1163508047  # Im c_1 of the bundled center


class RefinementError(RuntimeError):
    def __init__(self, msg, residual=None):
        super().__init__(msg if residual is None else f"{msg} (last residual {residual:.3e})")
        self.residual = residual


class NoOscillationError(RuntimeError):
    pass


@dataclass
class Trajectory:
    """Grid solution on [-1, t_end]; ``dx`` holds x' at the grid points."""

    t: np.ndarray
    x: np.ndarray
    dx: np.ndarray
    dt: float
    K: float

    def __post_init__(self):
        m = round(1.0 / self.dt)
        if abs(m * self.dt - 1.0) > 1e-12:
            raise ValueError("dt must divide the delay exactly")

    def interpolate(self, times) -> np.ndarray:
        """Cubic Hermite dense output."""
        times = np.asarray(times, dtype=float)
        u = (times - self.t[0]) / self.dt
        i = np.clip(np.floor(u).astype(int), 0, len(self.t) - 2)
        s = u - i
        x0, x1 = self.x[i], self.x[i + 1]
        d0, d1 = self.dx[i] * self.dt, self.dx[i + 1] * self.dt
        h00 = 2 * s**3 - 3 * s**2 + 1
        h10 = s**3 - 2 * s**2 + s
        h01 = -2 * s**3 + 3 * s**2
        h11 = s**3 - s**2
        return h00 * x0 + h10 * d0 + h01 * x1 + h11 * d1

    def to_csv(self) -> str:
        rows = ["t,x"] + [f"{a:.10f},{b:.17g}" for a, b in zip(self.t, self.x)]
        return "\n".join(rows) + "\n"


@dataclass
class GalerkinPoint:
    tau: float
    c: np.ndarray  # complex c_0..c_l, c_0 real
    residual: float = float("nan")
    iterations: int = 0

    @property
    def l(self) -> int:
        return len(self.c) - 1


def simulate(K: float, history=0.0, t_end: float = 400.0, dt: float = 1.0 / 256) -> Trajectory:
    """Method of steps for x'(t) = -K sin(x(t-1)).

    The right-hand side does not involve x(t), so a classical RK4 step is
    Simpson's rule on the delayed values; the delayed midpoint comes from
    the cubic Hermite interpolant of the stored solution.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    m = round(1.0 / dt)
    if abs(m * dt - 1.0) > 1e-12:
        raise ValueError("1/dt must be an integer")
    steps = int(math.ceil(t_end / dt - 1e-9))
    x = np.empty(m + 1 + steps)
    dx = np.empty_like(x)
    th = np.linspace(-1.0, 0.0, m + 1)
    if callable(history):
        x[: m + 1] = [history(s) for s in th]
        h = 1e-6
        dx[: m + 1] = [(history(s + h) - history(s - h)) / (2 * h) for s in th]
    else:
        x[: m + 1] = float(history)
        dx[: m + 1] = 0.0
    # x' jumps at t = 0; the cell [0, dt] needs the right derivative there,
    # otherwise the delayed midpoints on [1, 1 + dt] cost an O(dt^2) error
    d_right0 = -K * math.sin(x[0])
    done = 0
    while done < steps:
        i0 = m + done  # index of the last known point
        nb = min(m, steps - done)
        a = x[i0 - m : i0 - m + nb]
        b = x[i0 - m + 1 : i0 - m + nb + 1]
        da = dx[i0 - m : i0 - m + nb].copy()
        if i0 == 2 * m:
            da[0] = d_right0
        db = dx[i0 - m + 1 : i0 - m + nb + 1]
        mid = 0.5 * (a + b) + dt * (da - db) / 8.0
        g0 = -K * np.sin(a)
        gm = -K * np.sin(mid)
        g1 = -K * np.sin(b)
        inc = dt / 6.0 * (g0 + 4.0 * gm + g1)
        x[i0 + 1 : i0 + 1 + nb] = x[i0] + np.cumsum(inc)
        dx[i0 + 1 : i0 + 1 + nb] = g1
        if not np.all(np.isfinite(x[i0 + 1 : i0 + 1 + nb])):
            raise RuntimeError("blow-up")
        done += nb
    t = (np.arange(len(x)) - m) * dt
    return Trajectory(t, x, dx, dt, K)


def _upward_crossings(traj: Trajectory, level: float, start: int) -> list:
    y = traj.x[start:] - level
    idx = np.nonzero((y[:-1] < 0.0) & (y[1:] >= 0.0))[0] + start
    out = []
    for i in idx:
        f = lambda s: float(traj.interpolate(s)) - level
        a, b = traj.t[i], traj.t[i + 1]
        fa, fb = f(a), f(b)
        if fa == 0.0:
            out.append(a)
        elif fa * fb > 0:
            # interpolant disagrees with the grid sign change; fall back to linear
            out.append(a + (b - a) * (-y[i - start]) / (y[i + 1 - start] - y[i - start]))
        else:
            out.append(brentq(f, a, b, xtol=1e-15, rtol=1e-15))
    return out


def extract_orbit(traj: Trajectory, l: int, samples: int = 512) -> GalerkinPoint:
    """Period and Fourier coefficients of the (assumed converged) tail.

    Uses the last 25% of the trajectory. tau = 2 pi / T and
    c_n = (1/T) int_0^T x(t) e^{-2 pi i n t/T} dt by the trapezoid rule.
    """
    if l < 1:
        raise ValueError("l must be at least 1")
    n_pts = len(traj.t)
    start = int(n_pts * 0.75)
    seg = traj.x[start:]
    amp = 0.5 * (seg.max() - seg.min())
    if amp < 1e-6:
        raise NoOscillationError("no oscillation detected")
    level = float(seg.mean())
    cr = _upward_crossings(traj, level, start)
    if len(cr) < 3:
        raise NoOscillationError("no oscillation detected")
    T = (cr[-1] - cr[0]) / (len(cr) - 1)
    t0 = cr[-1] - T
    ts = t0 + T * np.arange(samples) / samples
    xs = traj.interpolate(ts)
    coef = np.fft.fft(xs) / samples
    c = coef[: l + 1].copy()
    c[0] = c[0].real
    return GalerkinPoint(2 * math.pi / T, c)


def normalize_phase(point: GalerkinPoint, phase_im: float = PHASE_IM) -> GalerkinPoint:
    """Time-shift so that Im c_1 = phase_im and Re c_1 < 0."""
    c = np.asarray(point.c, dtype=complex)
    r = abs(c[1])
    if r < abs(phase_im):
        raise ValueError(f"|c_1| = {r:.3e} is smaller than |phase_im|; cannot normalize")
    target = complex(-math.sqrt(r * r - phase_im * phase_im), phase_im)
    phi = math.atan2(target.imag, target.real) - math.atan2(c[1].imag, c[1].real)
    n = np.arange(len(c))
    out = c * np.exp(1j * n * phi)
    out[0] = out[0].real
    out[1] = complex(target.real, phase_im)
    return GalerkinPoint(point.tau, out, point.residual, point.iterations)


def _full(c: np.ndarray) -> np.ndarray:
    """c_0..c_l -> c_{-l}..c_l."""
    return np.concatenate([np.conj(c[:0:-1]), c])


def galerkin_F(point: GalerkinPoint, K: float, taylor_terms: int = 8) -> np.ndarray:
    """P_l F(tau, Q_l c): i n tau e^{i n tau} c_n + K sum_k (-1)^k/(2k+1)! (c^{*(2k+1)})_n."""
    if taylor_terms < 4:
        raise ValueError("taylor_terms must be at least 4")
    c = np.asarray(point.c, dtype=complex)
    l = len(c) - 1
    tau = point.tau
    n = np.arange(l + 1)
    lin = 1j * n * tau * np.exp(1j * n * tau) * c
    full = _full(c)
    sq = np.convolve(full, full)
    power = full.copy()
    acc = np.zeros(l + 1, dtype=complex)
    for k in range(taylor_terms + 1):
        mid = (len(power) - 1) // 2
        acc += (-1) ** k / math.factorial(2 * k + 1) * power[mid : mid + l + 1]
        if k < taylor_terms:
            power = np.convolve(power, sq)
    out = lin + K * acc
    out[0] = out[0].real
    return out


def _pack(tau: float, c: np.ndarray) -> np.ndarray:
    u = [tau, c[0].real, c[1].real]
    for z in c[2:]:
        u += [z.real, z.imag]
    return np.array(u)


def _unpack(u: np.ndarray, im1: float, l: int):
    c = np.zeros(l + 1, dtype=complex)
    c[0] = u[1]
    c[1] = complex(u[2], im1)
    for j in range(2, l + 1):
        c[j] = complex(u[2 * j - 1], u[2 * j])
    return u[0], c


def _equations(F: np.ndarray) -> np.ndarray:
    e = [F[0].real]
    for z in F[1:]:
        e += [z.real, z.imag]
    return np.array(e)


def newton_refine(start: GalerkinPoint, K: float, l: int | None = None, tol: float = 1e-13,
                  max_iter: int = 50, taylor_terms: int = 8, step: float = 1e-7) -> GalerkinPoint:
    """Newton iteration on the 2l+1 real equations with Im c_1 frozen."""
    c = np.asarray(start.c, dtype=complex)
    if l is None:
        l = len(c) - 1
    if l < 1:
        raise ValueError("l must be at least 1")
    c = np.concatenate([c, np.zeros(max(0, l + 1 - len(c)), dtype=complex)])[: l + 1]
    c[0] = c[0].real
    im1 = c[1].imag
    u = _pack(start.tau, c)

    def residual(v):
        tau, cc = _unpack(v, im1, l)
        return _equations(galerkin_F(GalerkinPoint(tau, cc), K, taylor_terms))

    r = residual(u)
    it = 0
    while np.max(np.abs(r)) > tol:
        if it >= max_iter:
            raise RefinementError("Newton iteration did not converge", float(np.max(np.abs(r))))
        J = np.empty((len(u), len(u)))
        for j in range(len(u)):
            v = u.copy()
            v[j] += step
            J[:, j] = (residual(v) - r) / step
        try:
            du = np.linalg.solve(J, -r)
        except np.linalg.LinAlgError:
            raise RefinementError("singular Jacobian", float(np.max(np.abs(r)))) from None
        if not np.all(np.isfinite(du)):
            raise RefinementError("singular Jacobian", float(np.max(np.abs(r))))
        u = u + du
        r = residual(u)
        it += 1
    tau, cc = _unpack(u, im1, l)
    return GalerkinPoint(tau, cc, float(np.max(np.abs(r))), it)


def find_candidate(K: float, l: int = 5, phase_im: float = PHASE_IM, t_end: float = 400.0,
                   dt: float = 1.0 / 256, history=0.5, tol: float = 1e-13) -> GalerkinPoint:
    """The whole pipeline: simulate, extract, normalize, refine."""
    traj = simulate(K, history, t_end, dt)
    raw = extract_orbit(traj, l)
    start = normalize_phase(raw, phase_im)
    return newton_refine(start, K, l, tol=tol)
