import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

import oracles
from ddeproof import estimates
from ddeproof.estimates import (
    C_DECAY,
    TauWindow,
    L_direction,
    L_n,
    build_gamma,
    delta_f_bound,
    f_n,
    grouped_center_residual,
    high_n_uniform_bound,
    mixed_power_bound,
    r_n_bound,
    tail_bound,
)
from ddeproof.fourier import SymmetricSequence
from ddeproof.interval import HALF_PI, ComplexRect, Interval, cabs_lower, cabs_upper

K = Interval.from_decimal("1.6")
BETA2 = Interval.from_decimal("0.0000002438")
BETA1 = Interval.from_decimal("0.766763")
TAU_HAT = Interval.from_decimal("1.570796")
DTAU = Interval.from_decimal("0.000001")
mpmath.mp.dps = 50


@pytest.fixture(scope="module")
def c_hat():
    return oracles.center_sequence()


# exact rational convolution powers of the center


def _exact_center():
    return {n: (Fraction(re), Fraction(im)) for n, (re, im) in oracles.CENTER_C.items()}


def _exact_power(k):
    """c^{*k} as {n: (re, im)} over all n, exact rationals."""
    c = _exact_center()
    full = {}
    for n, (re, im) in c.items():
        full[n] = (re, im)
        full[-n] = (re, -im)
    out = {0: (Fraction(1), Fraction(0))}
    for _ in range(k):
        nxt = {}
        for a, (ar, ai) in out.items():
            for b, (br, bi) in full.items():
                r, i = nxt.get(a + b, (Fraction(0), Fraction(0)))
                nxt[a + b] = (r + ar * br - ai * bi, i + ar * bi + ai * br)
        out = nxt
    return out


def _mpc(pair):
    re, im = pair
    return mpmath.mpc(mpmath.mpf(re.numerator) / re.denominator, mpmath.mpf(im.numerator) / im.denominator)


def _contains(z: ComplexRect, exact) -> bool:
    return z.re.contains(exact[0]) and z.im.contains(exact[1])


class TestTauTerms:
    def test_f0_is_zero(self):
        assert f_n(0, Interval(1.3, 1.9)).contains(0j)

    def test_f3_modulus(self):
        tau = Interval(1.5707, 1.5709)
        z = f_n(3, tau)
        for t in (1.5707, 1.5708, 1.5709):
            assert cabs_upper(z).hi >= 3 * t >= cabs_lower(z).lo

    def test_f1_at_half_pi(self):
        z = f_n(1, HALF_PI)
        assert z.contains(complex(-float(mpmath.pi / 2), 0.0)) or z.re.contains(-math.pi / 2)
        assert mpmath.mpf(z.re.lo) <= -mpmath.pi / 2 <= mpmath.mpf(z.re.hi)
        assert z.im.contains(0.0) and z.im.width < 1e-14

    def test_L_vanishes_at_tau0(self):
        assert L_n(3, TAU_HAT, TAU_HAT).contains(0j)

    def test_L1_magnitude_printed(self, c_hat):
        z = L_n(1, TAU_HAT + DTAU, TAU_HAT, form="printed") * c_hat[1]
        re, im = (mpmath.mpf(v) for v in oracles.CENTER_C[1])
        target = mpmath.sqrt(2) * mpmath.mpf("1e-6") * mpmath.sqrt(re**2 + im**2)
        assert abs(float(target) - 2.708e-7) < 1e-10
        assert mpmath.mpf(cabs_lower(z).lo) <= target <= mpmath.mpf(cabs_upper(z).hi)

    def test_L2_magnitude_printed(self):
        z = L_n(2, TAU_HAT + DTAU, TAU_HAT, form="printed")
        target = mpmath.sqrt(20) * mpmath.mpf("1e-6")
        assert mpmath.mpf(cabs_lower(z).lo) <= target * (1 + 1e-9)
        assert target * (1 - 1e-9) <= mpmath.mpf(cabs_upper(z).hi)

    def test_exact_direction_is_derivative(self):
        # d/dtau (i n tau e^{i n tau}) = (i n - n^2 tau) e^{i n tau}
        t0 = mpmath.mpf("1.3")
        for n in (1, 2, 5):
            d = mpmath.diff(lambda t: 1j * n * t * mpmath.exp(1j * n * t), t0)
            w = L_direction(n, Interval.from_decimal("1.3"), form="exact")
            assert w.re.lo - 1e-12 <= float(d.real) <= w.re.hi + 1e-12
            assert w.im.lo - 1e-12 <= float(d.imag) <= w.im.hi + 1e-12
        with pytest.raises(ValueError):
            L_direction(1, 1.0, form="other")

    def test_delta_f_examples(self):
        w = TauWindow(TAU_HAT, DTAU)
        assert delta_f_bound(0, w) == Interval(0)
        assert abs(delta_f_bound(1, w).hi - 2.5708e-6) < 1e-9
        assert abs(delta_f_bound(5, w).hi - 4.427e-5) < 1e-8

    def test_r_bound_examples(self):
        assert r_n_bound(1, TauWindow(Interval(1.5), Interval(0))).hi == 0.0
        # a decimal tau_hat keeps its one-ulp enclosure width as deviation
        assert r_n_bound(1, TauWindow(TAU_HAT, Interval(0))).hi < 1e-30
        r = r_n_bound(1, TauWindow(TAU_HAT, DTAU)).hi
        ref = mpmath.mpf("1e-12") / 2 * mpmath.sqrt(4 + mpmath.mpf("1.570797") ** 2)
        assert abs(float(ref) - 1.272e-12) < 1e-15
        assert mpmath.mpf(r) >= ref and r <= float(ref) * (1 + 1e-9)

    @pytest.mark.parametrize("form", ["exact", "printed"])
    def test_decomposition_sampling(self, form):
        """f_1(tau) - f_1(tau0) - L_1(tau) at 100 sampled tau, high precision."""
        w = TauWindow(TAU_HAT, DTAU)
        r = mpmath.mpf(r_n_bound(1, w, form=form).hi)
        t0 = mpmath.mpf("1.570796")
        dirn = (1j - (t0 if form == "exact" else 1)) * mpmath.exp(1j * t0)
        f = lambda t: 1j * t * mpmath.exp(1j * t)
        worst = 0
        for s in np.linspace(-1, 1, 100):
            t = t0 + mpmath.mpf(float(s)) * mpmath.mpf("1e-6")
            worst = max(worst, abs(f(t) - f(t0) - dirn * (t - t0)))
        assert worst <= r

    def test_printed_defect_is_needed(self):
        # with the printed L_1 the decomposition error is first order in dtau
        w = TauWindow(TAU_HAT, DTAU)
        assert r_n_bound(1, w, form="exact").hi < 1e-11
        assert r_n_bound(1, w, form="printed").hi > 5e-7

    def test_window_requires_tau0_inside(self):
        with pytest.raises(ValueError):
            TauWindow(TAU_HAT, Interval(0), tau0=HALF_PI)
        w = TauWindow(TAU_HAT, Interval(0), tau0=HALF_PI, strict=False)
        assert not w.tau0_inside()
        assert TauWindow(TAU_HAT, DTAU, tau0=HALF_PI).tau0_inside()


class TestGamma:
    def test_gamma_7(self, c_hat):
        g = build_gamma(c_hat, K)
        target = -Fraction(16, 10) / math.factorial(7)
        assert g.get(7, 0).re.contains(target)
        assert abs(float(target) + 3.1746e-4) < 1e-8
        for j in range(1, 6):
            assert g.get(7, j).is_zero() or g.get(7, j).contains(0j)
        assert g.support(7) == 0

    def test_gamma_exact_oracle(self, c_hat):
        g = build_gamma(c_hat, K)
        Kq = Fraction(16, 10)
        powers = {k: _exact_power(k) for k in range(0, 7)}
        for p in range(1, 8):
            for j in range(-6 * 5, 6 * 5 + 1):
                re = im = Fraction(0)
                for d, sign in ((3, -1), (5, 1), (7, -1)):
                    if p > d:
                        continue
                    pr, pi_ = powers[d - p].get(j, (0, 0))
                    f = sign * Kq * math.comb(d, p) / math.factorial(d)
                    re += f * pr
                    im += f * pi_
                assert _contains(g.get(p, j), (re, im)), (p, j)

    def test_gamma_conjugate_symmetry(self, c_hat):
        g = build_gamma(c_hat, K)
        for p in range(1, 8):
            for j in range(0, g.support(p) + 1):
                a, b = g.get(p, j), g.get(p, -j)
                assert a.re == b.re and a.im == -b.im

    def test_gamma_10_matches_direct(self, c_hat):
        from ddeproof.fourier import conv_power
        from ddeproof.interval import inv_factorial

        g = build_gamma(c_hat, K)
        direct = (conv_power(c_hat, 2)[0] * (K * inv_factorial(2)) * -1
                  + conv_power(c_hat, 4)[0] * (K * inv_factorial(4))
                  - conv_power(c_hat, 6)[0] * (K * inv_factorial(6)))
        z = g.get(1, 0)
        assert not (z.re.hi < direct.re.lo or direct.re.hi < z.re.lo)


class TestBounds:
    def test_mixed_zero_center(self):
        zero = SymmetricSequence.zeros(5)
        beta = Interval(0.01)
        for p, n in ((3, 0), (5, 4), (7, 11)):
            b = mixed_power_bound(zero, beta, p, n, K).hi
            env = float(Fraction(16, 10) / math.factorial(p) * 10 ** (p - 1) * Fraction(0.01) ** p / (n + 1) ** 2)
            assert b >= env and b <= env * (1 + 1e-12)

    def test_mixed_zero_ball(self, c_hat):
        exact = _exact_power(3)
        for n in (1, 3, 7):
            re, im = exact.get(n, (0, 0))
            mag = Fraction(16, 10) / 6 * Fraction(math.sqrt(float(re * re + im * im)))
            b = mixed_power_bound(c_hat, Interval(0), 3, n, K).hi
            assert b >= float(mag) * (1 - 1e-15) and b <= float(mag) * (1 + 1e-12) + 1e-300

    def test_mixed_hypothesis(self, c_hat):
        with pytest.raises(ValueError, match="lemma hypothesis p>1"):
            mixed_power_bound(c_hat, BETA2, 1, 0, K)

    def test_mixed_sampling_small(self):
        assert oracles.srodek_sampling(300, seed=31, n_values=(1,)) == 0

    def test_tail_examples(self):
        assert tail_bound(Interval(0), 47, K).hi == 0.0
        t = tail_bound(BETA1, 47, K)
        cb = mpmath.mpf(10) * mpmath.mpf("0.766763")
        formula = mpmath.mpf("1.6") * cb**46 / mpmath.factorial(47) * mpmath.mpf("0.766763") / (1 - (cb / 47) ** 2)
        assert mpmath.mpf(t.lo) <= formula <= mpmath.mpf(t.hi)
        partial = sum(mpmath.mpf("1.6") / mpmath.factorial(2 * k + 1) * cb ** (2 * k) * mpmath.mpf("0.766763")
                      for k in range(23, 61))
        assert partial <= mpmath.mpf(t.hi)
        assert 1e-19 < t.hi < 1e-15
        assert math.isfinite(tail_bound(Interval(0.9), 9, K).hi) or tail_bound(Interval(0.9), 9, K).hi == math.inf

    def test_tail_errors(self):
        with pytest.raises(ValueError):
            tail_bound(BETA1, 46, K)
        with pytest.raises(ValueError, match="geometric series divergent"):
            tail_bound(Interval(1.0), 9, K)

    def test_tail_monotone(self):
        vals = [tail_bound(Interval(b), 47, K).hi for b in (0.1, 0.5, 0.766763, 2.0)]
        assert vals == sorted(vals)
        vals = [tail_bound(BETA1, N, K).hi for N in (11, 21, 31, 47)]
        assert vals == sorted(vals, reverse=True)

    def test_tail_sampling_small(self):
        assert oracles.ogon_sampling(100, seed=32) == 0

    def test_high_n_zero_center(self):
        zero = SymmetricSequence.zeros(5)
        b = high_n_uniform_bound(zero, Interval(0.01), 3, 40, K).hi
        env = float(Fraction(16, 10) / 6 * Fraction(1, 10) ** 2 * Fraction(0.01))
        assert env <= b <= env * (1 + 1e-12)

    def test_high_n_zero_beta(self, c_hat):
        assert high_n_uniform_bound(c_hat, Interval(0), 3, 224, K).hi == 0.0

    def test_high_n_dominates_mixed(self, c_hat):
        u = high_n_uniform_bound(c_hat, BETA2, 3, 224, K).hi
        for n in (225, 300, 1000):
            assert (n + 1) ** 2 * mixed_power_bound(c_hat, BETA2, 3, n, K).hi <= u * (1 + 1e-12)

    def test_high_n_hypothesis(self, c_hat):
        with pytest.raises(ValueError, match="lemma hypothesis N > pl"):
            high_n_uniform_bound(c_hat, BETA2, 45, 224, K)

    def test_high_n_sampling_small(self):
        assert oracles.wysoko_sampling(100, seed=33) == 0


class TestResidual:
    def test_zero_center(self):
        zero = SymmetricSequence.zeros(5)
        assert grouped_center_residual(zero, 3, HALF_PI, K).contains(0j)

    def _oracle(self, n):
        """mpmath evaluation from exact convolution powers at tau0 = pi/2."""
        c = _exact_center()
        t0 = mpmath.pi / 2
        z = (1j * n * t0 * mpmath.exp(1j * n * t0) + mpmath.mpf("1.6")) * _mpc(c.get(n, (Fraction(0), Fraction(0))))
        for d, sign in ((3, -1), (5, 1), (7, -1)):
            pair = _exact_power(d).get(n, (Fraction(0), Fraction(0)))
            z += sign * mpmath.mpf("1.6") / mpmath.factorial(d) * _mpc(pair)
        return z

    def test_n7_matches_footnote(self, c_hat):
        z = grouped_center_residual(c_hat, 7, HALF_PI, K)
        ref = self._oracle(7)
        assert mpmath.mpf(cabs_lower(z).lo) <= abs(ref) <= mpmath.mpf(cabs_upper(z).hi)
        assert abs(float(abs(ref)) - 0.3411e-7) < 0.1 * 0.3411e-7

    def test_n2_is_zero_by_computation(self, c_hat):
        z = grouped_center_residual(c_hat, 2, HALF_PI, K)
        assert z.contains(0j)
        assert self._oracle(2) == 0
        assert cabs_upper(z).hi < 1e-20

    def test_n1_and_n3(self, c_hat):
        for n in (1, 3, 5):
            z = grouped_center_residual(c_hat, n, HALF_PI, K)
            ref = self._oracle(n)
            assert z.re.lo <= float(ref.real) + 1e-18 and float(ref.real) - 1e-18 <= z.re.hi
            assert mpmath.mpf(cabs_lower(z).lo) <= abs(ref) <= mpmath.mpf(cabs_upper(z).hi)


def test_constant_is_ten():
    assert C_DECAY == Interval(10)
    assert estimates.gamma_sum_bound(build_gamma(oracles.center_sequence(), K), BETA2, 0).hi > 0
