"""Boundary-exclusion checks for the two homotopies and the proof certificate.

The proof set is [tau_lo, tau_hi] x (c_hat + X3), X3 being the ball of
radius beta2 (decay exponent 2) with x_1 real. For every boundary face the
code checks that the homotopy cannot vanish there; together with the linear
degree condition this yields a zero of the Galerkin-free problem.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .estimates import (
    C_DECAY,
    L_direction,
    PowerTable,
    TauWindow,
    build_gamma,
    delta_f_bound,
    f_n,
    gamma_sum_bound,
    gamma_sum_bounds,
    grouped_center_residual,
    high_n_uniform_bound,
    mixed_power_bounds,
    r_n_bound,
    tail_bound,
)
from .fourier import BallSequence, DecayEnvelope, SymmetricSequence, envelope_hull
from .interval import ComplexRect, Interval, cabs_lower, cabs_upper

__all__ = [
    "ConfigError",
    "ProofConfig",
    "ProofContext",
    "InequalityRecord",
    "ProofCertificate",
    "lhs_generic",
    "rhs_generic",
    "check_generic_n",
    "check_uniform_high_n",
    "check_tau_boundary",
    "check_x1_boundary",
    "check_degree",
    "check_HL_boundary",
    "check_envelope_containment",
    "verify_all",
]


class ConfigError(ValueError):
    """A configuration violates a lemma hypothesis or is malformed."""


def _fmt(x: float) -> str:
    return "%.16e" % x


def _iv(x) -> Interval:
    if isinstance(x, Interval):
        return x
    if isinstance(x, str):
        return Interval.from_decimal(x)
    return Interval(x)


@dataclass
class ProofConfig:
    K: Interval
    tau_hat: Interval
    delta_tau: Interval
    beta1: Interval
    beta2: Interval
    c_hat: SymmetricSequence
    tau0: Interval | None = None
    n_cutoff: int = 225
    k_mid_max: int = 22
    tail_N: int = 47
    linearization: str = "exact"
    source: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("K", "tau_hat", "delta_tau", "beta1", "beta2"):
            setattr(self, name, _iv(getattr(self, name)))
        if self.tau0 is None:
            self.tau0 = self.tau_hat
        self.tau0 = _iv(self.tau0)

    @property
    def n_max_direct(self) -> int:
        return self.n_cutoff - 1

    def uniform_k_max(self) -> int:
        """Largest k such that degree 2k+1 may go through the high-n lemma."""
        N = self.n_max_direct
        l = self.c_hat.l
        k = self.k_mid_max
        while k >= 1 and N <= (2 * k + 1) * l:
            k -= 1
        return k

    def validate(self) -> None:
        """Raise ConfigError naming the first violated hypothesis."""
        if self.linearization not in ("exact", "printed"):
            raise ConfigError(f"linearization must be 'exact' or 'printed', got {self.linearization!r}")
        if self.K.lo <= 0.0:
            raise ConfigError("K must be positive")
        for name in ("delta_tau", "beta1", "beta2"):
            if getattr(self, name).lo < 0.0:
                raise ConfigError(f"{name} must be nonnegative")
        if self.tau_hat.lo <= 0.0:
            raise ConfigError("tau_hat must be positive")
        if self.k_mid_max < 3:
            raise ConfigError("k_mid_max must be at least 3 (degrees up to 7 are explicit)")
        if self.tail_N % 2 == 0 or self.tail_N != 2 * self.k_mid_max + 3:
            raise ConfigError("tail_N must be odd and equal to 2*k_mid_max + 3")
        if (C_DECAY * self.beta1).hi > self.tail_N:
            raise ConfigError("lemma hypothesis 10*beta1 <= tail_N violated")
        if self.n_cutoff <= 7 * self.c_hat.l + 1:
            raise ConfigError("lemma hypothesis n_cutoff - 1 > 7*l violated")
        ku = self.uniform_k_max()
        if ku < 3:
            raise ConfigError("lemma hypothesis N > pl leaves too few degrees for the high-n check")
        if (C_DECAY * self.beta1).hi > 2 * ku + 3:
            raise ConfigError("lemma hypothesis 10*beta1 <= N violated for the high-n tail")

    def echo(self) -> dict:
        if self.source:
            return dict(self.source)
        out = {}
        for name in ("K", "tau_hat", "tau0", "delta_tau", "beta1", "beta2"):
            v = getattr(self, name)
            out[name] = [_fmt(v.lo), _fmt(v.hi)]
        out["c_hat"] = [
            [n, [_fmt(z.re.lo), _fmt(z.re.hi)], [_fmt(z.im.lo), _fmt(z.im.hi)]]
            for n, z in enumerate(self.c_hat.coeffs())
        ]
        out.update(n_cutoff=self.n_cutoff, k_mid_max=self.k_mid_max, tail_N=self.tail_N,
                   linearization=self.linearization)
        return out


@dataclass
class InequalityRecord:
    case_id: str
    lhs_lower: float
    rhs_upper: float
    margin: float
    verified: bool
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "case_id": self.case_id,
            "lhs_lower": _fmt(self.lhs_lower),
            "rhs_upper": _fmt(self.rhs_upper),
            "margin": _fmt(self.margin),
            "verified": self.verified,
            "details": {k: self.details[k] for k in sorted(self.details)},
        }

    @classmethod
    def from_json(cls, d: dict) -> InequalityRecord:
        return cls(d["case_id"], float(d["lhs_lower"]), float(d["rhs_upper"]),
                   float(d["margin"]), bool(d["verified"]), dict(d.get("details", {})))


def _record(case_id, lhs: float, rhs: float, details=None, verified=None) -> InequalityRecord:
    # the only sound reading of "LHS > RHS" on enclosures
    ok = lhs > rhs if verified is None else verified
    margin = (Interval(lhs) - Interval(rhs)).lo if rhs != float("inf") else -float("inf")
    return InequalityRecord(case_id, lhs, rhs, margin, bool(ok), details or {})


@dataclass
class ProofCertificate:
    config: dict
    records: list
    auxiliary: list
    all_verified: bool
    notes: list

    def to_json(self) -> str:
        doc = {
            "config": self.config,
            "all_verified": self.all_verified,
            "record_count": len(self.records),
            "records": [r.to_json() for r in self.records],
            "auxiliary": [r.to_json() for r in self.auxiliary],
            "notes": list(self.notes),
        }
        return json.dumps(doc, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> ProofCertificate:
        d = json.loads(text)
        return cls(
            d.get("config", {}),
            [InequalityRecord.from_json(r) for r in d.get("records", [])],
            [InequalityRecord.from_json(r) for r in d.get("auxiliary", [])],
            bool(d.get("all_verified", False)),
            list(d.get("notes", [])),
        )

    def to_csv(self) -> str:
        lines = ["n,lhs,rhs,margin,verified"]
        for r in self.records + self.auxiliary:
            key = r.case_id
            if key.startswith("generic_n("):
                key = key[len("generic_n("):-1]
            lines.append(f"{key},{_fmt(r.lhs_lower)},{_fmt(r.rhs_upper)},{_fmt(r.margin)},{str(r.verified).lower()}")
        return "\n".join(lines) + "\n"

    def record(self, case_id: str) -> InequalityRecord:
        for r in self.records + self.auxiliary:
            if r.case_id == case_id:
                return r
        raise KeyError(case_id)


class ProofContext:
    """Everything the checks share, computed once per configuration."""

    def __init__(self, cfg: ProofConfig):
        cfg.validate()
        self.cfg = cfg
        self.window = TauWindow(cfg.tau_hat, cfg.delta_tau, cfg.tau0, strict=False)
        self.k_mid = cfg.k_mid_max
        self.table = PowerTable(cfg.c_hat, 2 * self.k_mid + 1)
        self.gamma = build_gamma(self.table, cfg.K)
        self.tail_generic = tail_bound(cfg.beta1, cfg.tail_N, cfg.K)
        self.k_uniform = cfg.uniform_k_max()
        self.tail_uniform_N = 2 * self.k_uniform + 3
        self._n1 = None

    # n = 1 ingredients -------------------------------------------------

    def n1_parts(self) -> dict:
        if self._n1 is not None:
            return self._n1
        cfg, w = self.cfg, self.window
        c1 = cfg.c_hat[1]
        a = f_n(1, w.tau0) + cfg.K + self.gamma.get(1, 0) + self.gamma.get(1, 2)
        direction = L_direction(1, w.tau0, cfg.linearization) * c1
        x1_bound = cfg.beta2 / 4
        res = cabs_upper(grouped_center_residual(self.table, 1, w.tau0, cfg.K))
        gam = gamma_sum_bound(self.gamma, cfg.beta2, 1, exclude=[(1, 0), (1, 2)])
        mixed = self._mixed_sum([1])[0]
        tail = self.tail_generic / 4
        rem = r_n_bound(1, w, cfg.linearization) * cabs_upper(c1)
        dfx = delta_f_bound(1, w) * x1_bound
        lam = res + gam + Interval(mixed) + tail + rem + dfx
        self._n1 = {
            "a": a,
            "direction": direction,
            "x1_bound": x1_bound,
            "lambda": Interval(lam.hi),
            "parts": {
                "center_residual": res.hi,
                "gamma_sum_excl": gam.hi,
                "mixed_k4_22": mixed,
                "tail": tail.hi,
                "taylor_remainder": rem.hi,
                "delta_f_x1": dfx.hi,
            },
        }
        return self._n1

    def _mixed_sum(self, n_values) -> list:
        total = [Interval(0.0) for _ in n_values]
        for k in range(4, self.k_mid + 1):
            b = mixed_power_bounds(self.table, self.cfg.beta2, 2 * k + 1, n_values, self.cfg.K)
            total = [t + Interval(v) for t, v in zip(total, b)]
        return [t.hi for t in total]


_CTX_CACHE: dict = {}


def _context(cfg_or_ctx) -> ProofContext:
    if isinstance(cfg_or_ctx, ProofContext):
        return cfg_or_ctx
    key = id(cfg_or_ctx)
    ctx = _CTX_CACHE.get(key)
    if ctx is None or ctx.cfg is not cfg_or_ctx:
        ctx = ProofContext(cfg_or_ctx)
        _CTX_CACHE.clear()
        _CTX_CACHE[key] = ctx
    return ctx


def lhs_generic(n: int, cfg) -> Interval:
    """Lower bound of ||f_n(tau)| - K| beta2/(n+1)^2 over the window."""
    if n < 0 or n == 1:
        raise ValueError("lhs_generic needs n >= 0, n != 1")
    ctx = _context(cfg)
    c = ctx.cfg
    t = ctx.window.window * n - c.K
    val = Interval(t.mig()) * c.beta2 / ((n + 1) ** 2)
    return Interval(val.lo)


def _rhs_parts(n: int, ctx: ProofContext) -> dict:
    c = ctx.cfg
    cn = c.c_hat[n]
    if cn.is_zero():
        df = 0.0
    else:
        df = (delta_f_bound(n, ctx.window) * cabs_upper(cn)).hi
    res = cabs_upper(grouped_center_residual(ctx.table, n, ctx.window.tau0, c.K)).hi
    gam = gamma_sum_bounds(ctx.gamma, c.beta2, [n])[0]
    mixed = ctx._mixed_sum([n])[0]
    tail = (ctx.tail_generic / ((n + 1) ** 2)).hi
    return {"delta_f": df, "center_residual": res, "gamma_sum": gam, "mixed_k4_22": mixed, "tail": tail}


def rhs_generic(n: int, cfg) -> Interval:
    """Upper bound of the nonlinear part of H_n over the boundary face."""
    if n < 0 or n == 1:
        raise ValueError("rhs_generic needs n >= 0, n != 1")
    ctx = _context(cfg)
    if n >= ctx.cfg.n_cutoff:
        raise ValueError("n beyond the cutoff is covered by the uniform check")
    parts = _rhs_parts(n, ctx)
    total = Interval(0.0)
    for v in parts.values():
        total = total + Interval(v)
    return Interval(total.hi)


def check_generic_n(n: int, cfg) -> InequalityRecord:
    ctx = _context(cfg)
    lhs = lhs_generic(n, ctx).lo
    parts = _rhs_parts(n, ctx)
    total = Interval(0.0)
    for v in parts.values():
        total = total + Interval(v)
    details = {k: _fmt(v) for k, v in parts.items()}
    return _record(f"generic_n({n})", lhs, total.hi, details)


def check_uniform_high_n(cfg) -> InequalityRecord:
    """One weighted inequality covering every n >= n_cutoff."""
    ctx = _context(cfg)
    c = ctx.cfg
    N = c.n_max_direct
    lhs = (Interval(ctx.window.window.lo) * c.n_cutoff - c.K)
    lhs = (Interval(max(lhs.lo, 0.0)) * c.beta2).lo
    total = Interval(0.0)
    for k in range(1, ctx.k_uniform + 1):
        total = total + high_n_uniform_bound(ctx.table, c.beta2, 2 * k + 1, N, c.K)
    tail = tail_bound(c.beta1, ctx.tail_uniform_N, c.K)
    rhs = (total + tail).hi
    details = {
        "high_n_lemma_degrees": f"3..{2 * ctx.k_uniform + 1}",
        "tail_from_degree": str(ctx.tail_uniform_N),
        "powers_sum": _fmt(total.hi),
        "tail": _fmt(tail.hi),
    }
    return _record("uniform_high_n", lhs, rhs, details)


def _edge(ctx: ProofContext, sign: int) -> Interval:
    return ctx.window.upper if sign > 0 else ctx.window.lower


def check_tau_boundary(sign: int, cfg) -> InequalityRecord:
    """At tau = tau_hat +- delta: |L_tau| > |L_x| + |N|."""
    ctx = _context(cfg)
    p = ctx.n1_parts()
    tau = _edge(ctx, sign)
    # the two tau faces must lie on opposite sides of tau0, otherwise the
    # linear part does not change sign across the box
    offset = (tau - ctx.window.tau0) * sign
    lhs = (cabs_lower(p["direction"]) * Interval(max(offset.lo, 0.0))).lo
    Lx = cabs_upper(p["a"]) * p["x1_bound"]
    rhs = (Lx + p["lambda"]).hi
    details = {"L_x": _fmt(Lx.hi), "lambda": _fmt(p["lambda"].hi)}
    details.update({k: _fmt(v) for k, v in p["parts"].items()})
    return _record(f"tau_boundary({'+' if sign > 0 else '-'}1)", lhs, rhs, details)


def check_x1_boundary(sign: int, cfg) -> InequalityRecord:
    """At x_1 = +-beta2/4: the direction of L_tau avoids L_x + box(lambda).

    L_tau = (tau - tau0) w sweeps a line through the origin, so it can only
    cancel L_x + h N if that rectangle meets the line. Both sets are compared
    through tan(arg z) = Im z / Re z, which needs Re z bounded away from 0.
    """
    ctx = _context(cfg)
    p = ctx.n1_parts()
    lam = p["lambda"].hi
    x1 = p["x1_bound"] * sign
    rect = p["a"] * x1 + ComplexRect(Interval(-lam, lam), Interval(-lam, lam))
    w = p["direction"]
    case = f"x1_boundary({'+' if sign > 0 else '-'}1)"
    details = {"lambda": _fmt(lam)}
    if rect.re.contains(0.0) or w.re.contains(0.0):
        details["error"] = "argument comparison ill-posed"
        return _record(case, 0.0, 0.0, details, verified=False)
    t_rect = rect.im / rect.re
    t_dir = w.im / w.re
    details.update(tan_L_tau=f"[{_fmt(t_dir.lo)}, {_fmt(t_dir.hi)}]",
                   tan_L_x_plus_N=f"[{_fmt(t_rect.lo)}, {_fmt(t_rect.hi)}]")
    # record the gap between the two tan ranges as lhs/rhs
    if t_dir.hi < t_rect.lo:
        lhs, rhs = t_rect.lo, t_dir.hi
    elif t_rect.hi < t_dir.lo:
        lhs, rhs = t_dir.lo, t_rect.hi
    else:
        lhs, rhs = max(t_dir.lo, t_rect.lo), min(t_dir.hi, t_rect.hi)
        return _record(case, lhs, rhs, details, verified=False)
    return _record(case, lhs, rhs, details)


def check_degree(cfg) -> InequalityRecord:
    """Nonsingularity of the linear map whose degree is +-1."""
    ctx = _context(cfg)
    c = ctx.cfg
    tau0 = ctx.window.tau0
    worst = c.K.lo
    worst_n = 0
    for n in range(2, c.n_cutoff):
        m = cabs_lower(f_n(n, tau0) + c.K).lo
        if m < worst:
            worst, worst_n = m, n
    beyond = (tau0 * c.n_cutoff - c.K).lo
    p = ctx.n1_parts()
    a, w = p["a"], p["direction"]
    det = w.re * a.im - w.im * a.re
    lhs = det.mig()
    inside = ctx.window.tau0_inside()
    ok = lhs > 0.0 and worst > 0.0 and beyond > 0.0 and inside
    details = {
        "tau0_inside_window": str(inside).lower(),
        "det": f"[{_fmt(det.lo)}, {_fmt(det.hi)}]",
        "min_diag": _fmt(worst),
        "min_diag_n": str(worst_n),
        "beyond_cutoff": _fmt(beyond),
    }
    return _record("degree", lhs, 0.0, details, verified=ok)


def check_HL_boundary(cfg, generic_records=None, uniform=None) -> InequalityRecord:
    """Second homotopy: only the diagonal terms |f_n(sigma)+K| matter for n != +-1."""
    ctx = _context(cfg)
    c = ctx.cfg
    if generic_records is None:
        lows = [lhs_generic(n, ctx).lo for n in _generic_ns(c)]
    else:
        lows = [r.lhs_lower for r in generic_records]
    if uniform is None:
        uniform = check_uniform_high_n(ctx)
    m = min(lows + [uniform.lhs_lower])
    details = {
        "n1_reduces_to": "tau_boundary(-1),tau_boundary(+1),x1_boundary(-1),x1_boundary(+1)",
        "n0": _fmt(c.K.lo),
    }
    return _record("HL_boundary", m, 0.0, details)


def check_envelope_containment(cfg) -> InequalityRecord:
    """c_hat + X_beta2 must sit inside X_beta1 for the tail bounds to apply."""
    ctx = _context(cfg)
    c = ctx.cfg
    hull = envelope_hull(BallSequence(c.c_hat, DecayEnvelope(c.beta2, 2))).beta
    return _record("envelope_containment", c.beta1.lo, hull.hi)


def _generic_ns(cfg: ProofConfig) -> list:
    return [0] + list(range(2, cfg.n_cutoff))


_WORKER_CTX = None


def _worker_init(cfg):
    global _WORKER_CTX
    _WORKER_CTX = ProofContext(cfg)


def _worker_run(ns):
    return [check_generic_n(n, _WORKER_CTX) for n in ns]


NOTES = [
    "Linear part of f_1 uses the configured linearization form; the printed form "
    "(i n - n^2) is not the derivative and its defect is added to the remainder.",
    "The Taylor remainder of f_1 keeps the (tau - tau0)^2 factor.",
    "n >= n_cutoff: degrees 3..2k+1 use the high-n lemma while N > p*l; the "
    "remaining degrees go to the sine-series tail bound.",
]


def verify_all(cfg: ProofConfig, workers: int = 1) -> ProofCertificate:
    """Run every boundary check; raises ConfigError before any work on bad input."""
    ctx = ProofContext(cfg)
    ns = _generic_ns(cfg)
    if workers and workers > 1:
        chunks = [ns[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers, initializer=_worker_init, initargs=(cfg,)) as ex:
            parts = list(ex.map(_worker_run, chunks))
        by_n = {}
        for chunk, recs in zip(chunks, parts):
            for n, r in zip(chunk, recs):
                by_n[n] = r
        generic = [by_n[n] for n in ns]
    else:
        generic = [check_generic_n(n, ctx) for n in ns]
    uniform = check_uniform_high_n(ctx)
    records = list(generic)
    records.append(uniform)
    records += [check_tau_boundary(-1, ctx), check_tau_boundary(1, ctx)]
    records += [check_x1_boundary(-1, ctx), check_x1_boundary(1, ctx)]
    records.append(check_degree(ctx))
    auxiliary = [check_HL_boundary(ctx, generic, uniform), check_envelope_containment(ctx)]
    ok = all(r.verified for r in records) and all(r.verified for r in auxiliary)
    notes = list(NOTES)
    notes.append(f"linearization={cfg.linearization}")
    return ProofCertificate(cfg.echo(), records, auxiliary, ok, notes)


def default_workers() -> int:
    return max(1, min(8, os.cpu_count() or 1))
