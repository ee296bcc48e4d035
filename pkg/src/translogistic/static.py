"""2-periodic resummed transseries of the static logistic map.

The orbit of ``y(n+1) = (3 + eps) y(n)(1 - y(n))`` started at ``y(0) = 2/3``
is written as a sum over exponential orders ``m`` of ``tau0^m`` times
coefficients ``Rbar_m(eps)``.  Summing each power of ``eps`` over all ``m``
gives the closed-form Omega functions, and ``r2_app`` truncates that
resummation after the ``eps^2`` term.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import math

import numpy as np
import sympy as sp

from .errors import ConsistencyError, InsufficientOrderError, ResonanceError
from .omega import omegas_from_log

__all__ = [
    "EPS",
    "RbarTable",
    "Sigma0Series",
    "Tau0Static",
    "beta",
    "rbar_recursion",
    "rbar_exact",
    "rbar_coefficient",
    "leading_coeffs",
    "solve_sigma0",
    "tau0_static",
    "log_tau0_static",
    "r2_app",
    "partial_transseries",
    "residual_2per",
    "real_part_checked",
    "IMAG_TOL",
]

EPS = sp.Symbol("eps")
IMAG_TOL = 1e-10
_LATTICE_TOL = 1e-9


def real_part_checked(z, tol=IMAG_TOL):
    """Return ``z.real`` after checking that the imaginary part is negligible."""
    z = np.asarray(z)
    if np.iscomplexobj(z):
        bad = np.abs(z.imag)
        if np.any(bad > tol):
            raise ConsistencyError(
                f"imaginary residue {float(np.max(bad)):.3e} exceeds {tol:.1e}"
            )
        z = z.real
    return float(z) if z.ndim == 0 else z


def lattice_index(x, eps):
    """Step counts ``x/eps``, snapped to integers when within rounding error."""
    t = np.asarray(x, dtype=float) / eps
    k = np.rint(t)
    return np.where(np.abs(t - k) <= _LATTICE_TOL * np.maximum(1.0, np.abs(t)), k, t)


def beta(m):
    """Leading power of ``Rbar_m``: ``(m+1)/2`` for odd m, ``(m+2)/2`` for even m."""
    if m < 1:
        raise ValueError("m must be positive")
    return (m + 1) // 2 if m % 2 else (m + 2) // 2


@dataclass(frozen=True)
class RbarTable:
    """Numerical values of ``Rbar_1(eps) .. Rbar_M(eps)``.

    Attributes
    ----------
    eps : float
    values : ndarray
        ``values[m - 1] = Rbar_m(eps)``.
    betas : tuple of int
        Leading powers of eps.
    """

    eps: float
    values: np.ndarray
    betas: tuple

    def __getitem__(self, m):
        return float(self.values[m - 1])

    @property
    def m_max(self):
        return len(self.values)


def rbar_recursion(eps, m_max):
    """Solve ``[(-1)^m (1+eps)^m + (1+eps)] Rbar_m = -(3+eps) sum_j Rbar_j Rbar_{m-j}``.

    Parameters
    ----------
    eps : float
        Map parameter offset.
    m_max : int
        Highest exponential order.

    Returns
    -------
    RbarTable
        Starting from the normalization ``Rbar_1 = eps``.

    Raises
    ------
    ResonanceError
        If the bracket on the left vanishes for some m.
    """
    if m_max < 1:
        raise ValueError("m_max must be at least 1")
    r = np.zeros(m_max + 1)
    r[1] = eps
    for m in range(2, m_max + 1):
        bracket = (-1.0) ** m * (1.0 + eps) ** m + (1.0 + eps)
        if bracket == 0.0:
            raise ResonanceError(m, eps)
        r[m] = -(3.0 + eps) * np.dot(r[1:m], r[m - 1 : 0 : -1]) / bracket
    return RbarTable(float(eps), r[1:].copy(), tuple(beta(m) for m in range(1, m_max + 1)))


@lru_cache(maxsize=None)
def rbar_exact(m):
    """``Rbar_m`` as a reduced rational function of the symbol `EPS`."""
    if m < 1:
        raise ValueError("m must be positive")
    if m == 1:
        return EPS
    rhs = sum(rbar_exact(j) * rbar_exact(m - j) for j in range(1, m))
    bracket = (-1) ** m * (1 + EPS) ** m + (1 + EPS)
    return sp.factor(sp.cancel(-(3 + EPS) * rhs / bracket))


@lru_cache(maxsize=None)
def rbar_coefficient(m, k):
    """Exact ``Rbar_{m,k}``, the eps^k coefficient of ``Rbar_m / eps^beta_m``."""
    expr = sp.cancel(rbar_exact(m) / EPS ** beta(m))
    if k == 0:
        val = expr.subs(EPS, 0)
    else:
        val = sp.diff(expr, EPS, k).subs(EPS, 0) / sp.factorial(k)
    return Fraction(int(sp.numer(val)), int(sp.denom(val)))


def leading_coeffs(m, family="odd"):
    """Leading coefficient ``Rbar_{2m+1,0}`` (odd family) or ``Rbar_{2m,0}`` (even).

    Parameters
    ----------
    m : int
        Family index, ``m >= 0`` for odd and ``m >= 1`` for even.
    family : {"odd", "even"}

    Returns
    -------
    Fraction
        ``(-9)^m (2m)! / (4^m (m!)^2)`` or ``(-9)^m / 6``.
    """
    if family == "odd":
        if m < 0:
            raise ValueError("m must be non-negative")
        return Fraction((-9) ** m * math.factorial(2 * m), 4**m * math.factorial(m) ** 2)
    if family == "even":
        if m < 1:
            raise ValueError("even family starts at m = 1")
        return Fraction((-9) ** m, 6)
    raise ValueError(f"unknown family {family!r}")


@dataclass(frozen=True)
class Sigma0Series:
    """Exact coefficients of ``sigma0(eps) = sum_j eps^j sigma0_j``."""

    coefficients: tuple

    def __call__(self, eps):
        return sum(float(c) * eps**j for j, c in enumerate(self.coefficients))

    def __getitem__(self, j):
        return self.coefficients[j]

    def __len__(self):
        return len(self.coefficients)


# Omega data exist for k <= 1, which fixes sigma0 through eps^2
_SIGMA0_MAX_ORDER = 2


@lru_cache(maxsize=None)
def solve_sigma0(order=2):
    """Power-series solution of the initial condition ``R(0) = 2/3``.

    At ``x = 0`` the resummed form is a power series in eps once
    ``tau0 = sigma0 sqrt(eps)`` is inserted.  The coefficient of
    ``eps^(j+1)`` depends on ``sigma0_j`` linearly with unit slope, so the
    coefficients follow one at a time.

    Parameters
    ----------
    order : int, optional
        Highest j, at most 2.

    Returns
    -------
    Sigma0Series

    Raises
    ------
    InsufficientOrderError
        If `order` exceeds what the implemented Omega corrections determine.
    """
    if order > _SIGMA0_MAX_ORDER:
        raise InsufficientOrderError(
            f"sigma0 is determined only through order {_SIGMA0_MAX_ORDER}, requested {order}"
        )
    if order < 0:
        raise ValueError("order must be non-negative")
    top = order + 1  # highest power of eps matched
    s = sp.symbols(f"s0:{order + 1}")
    sigma = sum(s[j] * EPS**j for j in range(order + 1))
    total = (2 + EPS) / (3 + EPS)
    m = 1
    while beta(m) <= top:
        for k in range(0, 2):
            if beta(m) + k <= top:
                total += sigma**m * rbar_coefficient(m, k) * EPS ** (beta(m) + k)
        m += 1
    poly = sp.Poly(sp.series(total, EPS, 0, top + 1).removeO(), EPS)
    sol = {}
    for j in range(order + 1):
        eq = poly.coeff_monomial(EPS ** (j + 1)).subs(sol)
        sol[s[j]] = sp.solve(eq, s[j])[0]
    return Sigma0Series(tuple(Fraction(int(sp.numer(sol[c])), int(sp.denom(sol[c]))) for c in s))


@dataclass(frozen=True)
class Tau0Static:
    """``tau0(x) = sigma0 sqrt(eps) exp(-pi i x/eps + x log(1+eps)/eps)``."""

    sigma0: complex
    eps: float

    def log_value(self, x):
        return log_tau0_static(x, self.eps, self.sigma0)

    def value(self, x):
        return np.exp(self.log_value(x))


def log_tau0_static(x, eps, sigma0):
    """Logarithm of ``tau0``, stable for large ``x/eps``.

    On the lattice ``x = eps n`` the phase is reduced exactly modulo 2 pi.
    """
    t = lattice_index(x, eps)
    phase = -np.pi * np.mod(t, 2.0)
    base = np.log(complex(sigma0) * math.sqrt(eps))
    return base + t * math.log1p(eps) + 1j * phase


def tau0_static(x, eps, sigma0):
    """Value of ``tau0`` at `x` (may overflow for large ``x/eps``)."""
    return np.exp(log_tau0_static(x, eps, sigma0))


def _resummed(log_tau, eps, r0):
    o0, e0, o1, e1 = omegas_from_log(log_tau)
    h = math.sqrt(eps)
    return r0 + h * o0 + eps * e0 + eps * h * o1 + eps * eps * e1


def r2_app(x, eps, sigma0=None):
    """2-periodic transasymptotic approximation of the static orbit.

    Parameters
    ----------
    x : float or array_like
        Scaled time ``eps n``.
    eps : float
        Map parameter offset, ``0 < eps < sqrt(6) - 2`` for 2-periodic
        behaviour.
    sigma0 : float, optional
        Transseries parameter; defaults to the initial-condition series
        truncated after ``eps^2``.

    Returns
    -------
    float or ndarray
        ``(2+eps)/(3+eps) + eps^{1/2} Omega_o0 + eps Omega_e0
        + eps^{3/2} Omega_o1 + eps^2 Omega_e1`` evaluated at ``tau0(x)``.

    Raises
    ------
    ConsistencyError
        If the result is not real at the lattice points.
    """
    if sigma0 is None:
        sigma0 = solve_sigma0(2)(eps)
    lt = log_tau0_static(x, eps, sigma0)
    return real_part_checked(_resummed(lt, eps, (2.0 + eps) / (3.0 + eps)))


def partial_transseries(x, eps, m_max, sigma0=None):
    """Unresummed sum ``R0 + sum_{m <= m_max} (tau0/sqrt(eps))^m Rbar_m(eps)``."""
    if sigma0 is None:
        sigma0 = solve_sigma0(2)(eps)
    table = rbar_recursion(eps, m_max)
    z = tau0_static(x, eps, sigma0) / math.sqrt(eps)
    acc = np.zeros_like(z) + (2.0 + eps) / (3.0 + eps)
    zm = np.ones_like(z)
    for m in range(1, m_max + 1):
        zm = zm * z
        acc = acc + zm * table[m]
    return real_part_checked(acc)


def residual_2per(eps, n_max, approx=None):
    """Largest one-step defect of an approximation along the lattice.

    Parameters
    ----------
    eps : float
    n_max : int
        Defects ``|R(x+eps) - (3+eps) R(x)(1 - R(x))|`` are taken for
        ``n = 0 .. n_max``.
    approx : callable, optional
        ``approx(x, eps)``; defaults to `r2_app`.

    Returns
    -------
    float
    """
    if approx is None:
        approx = r2_app
    x = eps * np.arange(n_max + 2)
    r = np.asarray(approx(x, eps), dtype=float)
    defect = r[1:] - (3.0 + eps) * r[:-1] * (1.0 - r[:-1])
    return float(np.max(np.abs(defect)))
