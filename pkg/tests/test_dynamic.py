import math
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from scipy.integrate import quad
from scipy.optimize import brentq

from translogistic.errors import InsufficientOrderError, OrderBudgetError, PoleError, ResonanceError, SingularError
from translogistic.dynamic import (
    action_A,
    action_A_prime,
    b_dynamic,
    b_dynamic_prime,
    find_z0,
    log_overline_tau0,
    onset_index,
    overline_sigma0,
    overline_tau0,
    r0_series,
    r00,
    r10,
    r10_prime,
    r_app_dynamic,
    rm0_table,
    sigma0_dynamic,
)
from translogistic.maps import DynamicMapConfig, iterate_dynamic
from translogistic.static import r2_app, rbar_recursion, residual_2per

from conftest import EPS_POLE

X = sp.Symbol("x")
E = sp.Symbol("e")
R01 = -1 / ((X + 2) * (X + 3) ** 2)
R02 = (X**2 + X - 4) / ((X + 2) ** 3 * (X + 3) ** 3)
R03 = -(X**4 - 2 * X**3 - 28 * X**2 - 33 * X + 24) / ((X + 2) ** 5 * (X + 3) ** 4)
CLOSED = [(X + 2) / (X + 3), R01, R02, R03]
POINTS = [0.0, 0.3, 1.0, 2.5, 7.0]


def _weight_integrand(s, part):
    v = -1j * math.pi - 0.5 * complex(np.log(complex(1.0 - s * (4.0 + s), 1e-300)))
    return v.real if part == 0 else v.imag


def _b_quadrature(z):
    pts = [EPS_POLE] if z > EPS_POLE else None
    re = quad(_weight_integrand, 0.0, z, args=(0,), points=pts, limit=200, epsabs=1e-13, epsrel=1e-13)[0]
    im = quad(_weight_integrand, 0.0, z, args=(1,), points=pts, limit=200, epsabs=1e-13, epsrel=1e-13)[0]
    return complex(re, im)


class TestNonperiodicSeries:
    def test_closed_forms_solve_the_map(self):
        # the truncated series must satisfy R(x + e) = (3 + x) R (1 - R) through e^3
        R = sum(E**k * c for k, c in enumerate(CLOSED))
        shifted = R.subs(X, X + E)
        defect = sp.series(shifted - (3 + X) * R * (1 - R), E, 0, 4).removeO()
        assert sp.simplify(defect) == 0

    @pytest.mark.parametrize("x", POINTS)
    def test_jets_match_closed_forms(self, x):
        coeffs = r0_series(x, 3)
        for k in range(1, 4):
            jet = coeffs.r0[k]
            for d in range(3):
                ref = float(sp.diff(CLOSED[k], X, d).subs(X, x))
                got = jet.derivatives()[d]
                assert abs(got - ref) <= 1e-12 * max(1.0, abs(ref))

    def test_leading_coefficient(self):
        c = r0_series(1.0, 0)
        assert c.r0[0].derivatives()[0] == pytest.approx(r00(1.0))
        assert c.K == 0

    def test_jet_budget(self):
        c = r0_series(0.5, 4, reserve=1)
        assert c.r0[4].order == 1
        with pytest.raises(OrderBudgetError):
            c.r0[4].derivative(2)

    def test_higher_coefficient_against_sympy(self):
        # R04 from the same recurrence carried out symbolically
        rs = list(CLOSED)
        k = 4
        acc = sum(sp.diff(rs[k - n], X, n) / sp.factorial(n) for n in range(1, k + 1))
        acc += (3 + X) * sum(rs[n] * rs[k - n] for n in range(1, k))
        r04 = sp.simplify(-acc / (2 + X))
        got = r0_series(0.7, 4).r0[4].derivatives()[0]
        assert got == pytest.approx(float(r04.subs(X, 0.7)), rel=1e-12)

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            r0_series(-2.5, 2)
        with pytest.raises(ValueError):
            r0_series(0.0, -1)


class TestExponentialSector:
    @pytest.mark.parametrize("x", [0.1, 0.5, 1.0, 3.0])
    def test_r10_equation(self, x):
        rhs = -(2 / (x + 2) - 2 / (x + 3) + 0.5) * r10(x)
        assert (x + 1) * r10_prime(x) == pytest.approx(rhs, rel=1e-14)

    def test_r10_prime_against_difference(self):
        h = 1e-6
        for x in (0.2, 1.7):
            fd = (r10(x + h) - r10(x - h)) / (2 * h)
            assert r10_prime(x) == pytest.approx(fd, rel=1e-8)

    def test_r10_normalized(self):
        assert r10(0.0) == 1.0

    def test_rm0_scales_static_table(self):
        # the recurrence is homogeneous: Rm0 = Rbar_m (R10/x)^m with eps -> x
        x, m_max = 1.0, 12
        rm = rm0_table(x, m_max)
        rb = rbar_recursion(x, m_max)
        c = r10(x) / x
        for m in range(1, m_max + 1):
            assert rm[m] == pytest.approx(rb[m] * c**m, rel=1e-12)

    def test_rm0_resonance(self):
        with pytest.raises(ResonanceError):
            rm0_table(0.0, 4)
        with pytest.raises(ValueError):
            rm0_table(1.0, 1)

    def test_action_derivative(self):
        h = 1e-6
        for x in (0.3, 2.0):
            fd = (action_A(x + h) - action_A(x - h)) / (2 * h)
            assert abs(fd - action_A_prime(x)) < 1e-8
            assert np.exp(-action_A_prime(x)) == pytest.approx(-(1 + x), rel=1e-14)


class TestTransseriesParameter:
    @pytest.mark.parametrize("x", np.linspace(0.05, 3.0, 12))
    def test_xsigma_identity(self, x):
        assert x * overline_sigma0(x) == pytest.approx(r10(x), rel=1e-14, abs=1e-14)

    def test_sigma0_from_first_coefficient(self):
        assert sigma0_dynamic() == (Fraction(1, 18),)
        assert -float(R01.subs(X, 0)) == pytest.approx(1 / 18, rel=1e-15)
        with pytest.raises(InsufficientOrderError):
            sigma0_dynamic(1)

    def test_singular_at_origin(self):
        with pytest.raises(SingularError):
            overline_sigma0(0.0)

    def test_tau_display_formula(self):
        eps = 0.01
        n = np.arange(5, 205, 10)
        x = eps * n
        tau = overline_tau0(x, eps).value
        a = 1j * np.pi * x + x - (x + 1) * np.log(x + 1)
        display = eps * (x + 2) ** 2 * np.exp(-a / eps) / (24 * np.sqrt(x) * (x + 1) ** 1.5 * (x + 3))
        np.testing.assert_allclose(tau, display, rtol=1e-12)

    def test_tau_overflow(self):
        t = overline_tau0(np.array([5.0]), 1e-3)
        with pytest.raises(OverflowError):
            t.value
        assert np.isfinite(log_overline_tau0(5.0, 1e-3)).all()


class TestApproximation:
    def test_origin(self):
        assert r_app_dynamic(0.0, 0.01) == pytest.approx(2 / 3)

    def test_tracks_orbit(self):
        eps = 1e-3
        n = np.arange(301)
        exact = iterate_dynamic(DynamicMapConfig(eps), 300).values
        err = np.abs(exact - r_app_dynamic(eps * n, eps))
        assert err[:100].max() < 1e-4
        assert err.max() < 1e-2
        assert err[250:].max() < 2e-3


def _omega0_in_y(y, x):
    # static resummed form with eps -> x, n-lattice in y, parameter sigmabar0(x)
    return r2_app(y, x, sigma0=overline_sigma0(x))


class TestTranslationForm:
    def test_static_map_form(self):
        # Omega0(y + x) = (3 + x) Omega0(y) (1 - Omega0(y)) up to the truncation order
        xs = (0.08, 0.04, 0.02, 0.01)
        res = [residual_2per(x, 400, approx=_omega0_in_y) for x in xs]
        orders = [math.log2(a / b) for a, b in zip(res, res[1:])]
        assert min(orders) >= 1.0
        assert res[-1] < 1e-7

    def test_parameter_matches_dynamic_tau(self):
        # taubar0 of the translation form is sigmabar0 sqrt(x) times the dynamic tau0
        x, eps = 0.4, 0.01
        t = overline_tau0(x, eps)
        tau0 = float(sigma0_dynamic()[0]) * eps * np.exp(-action_A(x) / eps)
        assert t.value == pytest.approx(overline_sigma0(x) * math.sqrt(x) * tau0, rel=1e-12)


class TestDynamicWeight:
    @pytest.mark.parametrize("z", [0.1, 0.2, 0.3, 0.8, 1.5, 3.0])
    def test_against_quadrature(self, z):
        assert abs(b_dynamic(z) - _b_quadrature(z)) < 1e-9

    @pytest.mark.parametrize("z", [0.1, 0.5, 2.0])
    def test_derivative(self, z):
        h = 1e-6
        fd = (b_dynamic(z + h) - b_dynamic(z - h)) / (2 * h)
        assert abs(fd - b_dynamic_prime(z)) < 1e-7

    def test_imaginary_slope(self):
        assert b_dynamic_prime(0.1).imag == pytest.approx(-math.pi)
        assert b_dynamic_prime(0.5).imag == pytest.approx(-1.5 * math.pi)

    def test_real_part_continuous_at_branch_point(self):
        h = 1e-9
        lo, hi = b_dynamic(EPS_POLE - h), b_dynamic(EPS_POLE + h)
        assert abs(lo.real - hi.real) < 1e-7

    def test_domain(self):
        assert b_dynamic(0.0) == 0
        with pytest.raises(PoleError):
            b_dynamic(EPS_POLE)
        with pytest.raises(ValueError):
            b_dynamic(-0.1)

    def test_z0(self):
        oracle = brentq(lambda z: _b_quadrature(z).real, 0.5, 1.5, xtol=1e-12)
        assert find_z0() == pytest.approx(oracle, abs=1e-8)
        assert find_z0() == pytest.approx(0.99505389177972, abs=1e-11)

    def test_onset(self):
        assert onset_index(0.012**2) == 3455
