import warnings

import mpmath
import numpy as np
import pytest
import sympy as sp

from translogistic.errors import BranchWarning
from translogistic.omega import (
    omega_e0,
    omega_e0_prime,
    omega_e1,
    omega_e1_prime,
    omega_o0,
    omega_o0_prime,
    omega_o1,
    omega_o1_prime,
    omegas,
    omegas_from_log,
)
from translogistic.static import leading_coeffs

T = sp.Symbol("t")
W = 1 + 9 * T**2
SYM = {
    "o0": T / sp.sqrt(W),
    "e0": -sp.Rational(3, 2) * T**2 / W,
    "o1": -T * (45 * T**2 - 33 * sp.log(W)) / (24 * W ** sp.Rational(3, 2)),
    "e1": T**2 * (14 + 36 * T**2 - 33 * sp.log(W)) / (8 * W**2),
}

rng = np.random.default_rng(20240611)
SAMPLES = rng.uniform(-0.8, 0.8, 20) + 1j * rng.uniform(-0.25, 0.25, 20)


def mp_omegas(tau):
    with mpmath.workdps(40):
        t = mpmath.mpc(tau)
        w = 1 + 9 * t**2
        s = mpmath.sqrt(w)
        lw = mpmath.log(w)
        return [complex(v) for v in (
            t / s,
            -mpmath.mpf(3) / 2 * t**2 / w,
            -t * (45 * t**2 - 33 * lw) / (24 * w * s),
            t**2 * (14 + 36 * t**2 - 33 * lw) / (8 * w**2),
        )]


def test_zero():
    assert omegas(0.0) == (0, 0, 0, 0)


@pytest.mark.filterwarnings("ignore::translogistic.errors.BranchWarning")
@pytest.mark.parametrize("tau", [0.1, 1.0, 10j, 0.3 - 0.2j, -2.0])
def test_values_against_extended_precision(tau):
    np.testing.assert_allclose(omegas(tau), mp_omegas(tau), rtol=1e-13, atol=1e-15)


@pytest.mark.filterwarnings("ignore::translogistic.errors.BranchWarning")
@pytest.mark.parametrize("tau", [0.1, 1.0, 10j])
def test_leading_odd_ode(tau):
    o = omega_o0(tau)
    assert abs(tau * omega_o0_prime(tau) - o + 9 * o**3) < 1e-12


def test_first_order_system_on_samples():
    o0, e0, o1, e1 = omegas(SAMPLES)
    t = SAMPLES
    w = 1 + 9 * t * t
    np.testing.assert_allclose(e0, -1.5 * o0**2, atol=1e-12)
    np.testing.assert_allclose(t * omega_o0_prime(t), o0 - 9 * o0**3, atol=1e-12)
    # first-order relations
    np.testing.assert_allclose(e1, t * t * (14 - 9 * t * t) / (8 * w * w) - 3 * o0 * o1, atol=1e-12)
    np.testing.assert_allclose(
        t * omega_o1_prime(t),
        (1 - 18 * t * t) / w * o1 + 3 * t**3 * (28 - 45 * t * t) / (4 * w**2.5),
        atol=1e-12,
    )


@pytest.mark.parametrize("name, prime", [("o0", omega_o0_prime), ("e0", omega_e0_prime),
                                         ("o1", omega_o1_prime), ("e1", omega_e1_prime)])
def test_derivatives_against_symbolic(name, prime):
    d = sp.lambdify(T, sp.diff(SYM[name], T), "numpy")
    np.testing.assert_allclose(prime(SAMPLES), d(SAMPLES.astype(complex)), rtol=1e-12, atol=1e-14)


def test_taylor_coefficients_match_leading_coeffs():
    odd = sp.Poly(sp.series(SYM["o0"], T, 0, 20).removeO(), T)
    even = sp.Poly(sp.series(SYM["e0"], T, 0, 20).removeO(), T)
    for m in range(0, 5):
        c = odd.coeff_monomial(T ** (2 * m + 1))
        assert sp.Rational(c) == sp.Rational(leading_coeffs(m, "odd").numerator, leading_coeffs(m, "odd").denominator)
    for m in range(1, 5):
        c = even.coeff_monomial(T ** (2 * m))
        lc = leading_coeffs(m, "even")
        assert sp.Rational(c) == sp.Rational(lc.numerator, lc.denominator)


def test_real_axis_limits():
    o0, e0, o1, e1 = omegas(1e8)
    assert o0 == pytest.approx(1 / 3, rel=1e-12)
    assert e0 == pytest.approx(-1 / 6, rel=1e-12)


@pytest.mark.parametrize("log_mag", [25.0, 60.0, 400.0, 2000.0])
@pytest.mark.parametrize("phase", [0.0, np.pi, 0.3])
def test_log_path_matches_extended_precision(log_mag, phase):
    lt = log_mag + 1j * phase
    got = omegas_from_log(lt)
    with mpmath.workdps(60):
        t = mpmath.exp(mpmath.mpc(lt))
        w = 1 + 9 * t**2
        s = mpmath.sqrt(w)
        lw = mpmath.log(w)
        ref = [t / s, -1.5 * t**2 / w, -t * (45 * t**2 - 33 * lw) / (24 * w * s),
               t**2 * (14 + 36 * t**2 - 33 * lw) / (8 * w**2)]
    np.testing.assert_allclose(got, [complex(v) for v in ref], rtol=1e-12, atol=1e-14)
    assert all(np.isfinite(v) for v in got)


def test_log_path_is_continuous_at_switch():
    a = omegas_from_log(np.array([19.999999, 20.000001]) + 1j * np.pi)
    for v in a:
        assert abs(v[0] - v[1]) < 1e-8


def test_individual_functions():
    t = 0.4 + 0.1j
    vals = mp_omegas(t)
    for f, v in zip((omega_o0, omega_e0, omega_o1, omega_e1), vals):
        assert f(t) == pytest.approx(v, rel=1e-13)


def test_branch_cut_warning():
    # 1 + 9 tau^2 on the negative real axis
    with pytest.warns(BranchWarning):
        omegas(1j * 0.5)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        omegas(0.5)
