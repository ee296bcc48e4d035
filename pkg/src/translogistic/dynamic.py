"""Transasymptotic approximation of the slowly varying logistic map.

For ``y(n+1) = (3 + eps n) y(n)(1 - y(n))`` the slow variable is
``x = eps n``.  The non-periodic manifold is a power series in eps whose
coefficients ``R0k(x)`` follow from a recurrence involving their own
derivatives, evaluated here with jets.  The transition to 2-periodic
behaviour reuses the static Omega functions with the argument
``taubar0`` and powers of ``x`` in place of powers of eps.
"""
from dataclasses import dataclass
from fractions import Fraction
import math

import numpy as np
from scipy.optimize import bisect

from .errors import InsufficientOrderError, PoleError, ResonanceError, SingularError
from .jets import Jet
from .omega import omegas_from_log
from .period4 import EPS_POLE, upper_log
from .static import lattice_index, real_part_checked

__all__ = [
    "DynCoeffs",
    "OverlineTau",
    "action_A",
    "action_A_prime",
    "r00",
    "r0_series",
    "r10",
    "r10_prime",
    "rm0_table",
    "overline_sigma0",
    "sigma0_dynamic",
    "overline_tau0",
    "log_overline_tau0",
    "r_app_dynamic",
    "b_dynamic",
    "b_dynamic_prime",
    "find_z0",
    "onset_index",
]

_RESERVE = 2


def action_A(x):
    """Action ``A(x) = pi i x + x - (x+1) log(x+1)``."""
    x = np.asarray(x, dtype=float)
    out = np.asarray(1j * np.pi * x + x - (x + 1.0) * np.log1p(x))
    return complex(out) if out.ndim == 0 else out


def action_A_prime(x):
    """``A'(x) = pi i - log(1+x)``, so ``exp(-A'(x)) = -(1+x)``."""
    x = np.asarray(x, dtype=float)
    out = np.asarray(1j * np.pi - np.log1p(x))
    return complex(out) if out.ndim == 0 else out


def r00(x):
    """Leading non-periodic coefficient ``(2+x)/(3+x)``."""
    return (2.0 + x) / (3.0 + x)


@dataclass(frozen=True)
class DynCoeffs:
    """Coefficient data at a point ``x``.

    Attributes
    ----------
    x : float
    r0 : tuple of Jet
        ``r0[k]`` is the jet of ``R0k`` at `x`; its order shrinks with k.
    r10 : float
        ``R10(x)``.
    rm0 : ndarray
        ``rm0[m] = Rm0(x)`` for ``m = 0 .. M`` (empty when not requested).
    """

    x: float
    r0: tuple
    r10: float
    rm0: np.ndarray

    @property
    def K(self):
        return len(self.r0) - 1


def r0_series(x, K, reserve=_RESERVE, m_max=None):
    """Coefficients ``R00 .. R0K`` of the non-periodic manifold as jets.

    ``R0k = -[sum_{n=1..k} R0_{k-n}^{(n)}/n! + (3+x) sum_{n=1..k-1} R0n R0_{k-n}]/(2+x)``.
    Each derivative consumes one jet order, so ``R00`` is seeded with order
    ``K + reserve`` and ``R0K`` comes out with order `reserve`.

    Parameters
    ----------
    x : float
        Evaluation point, ``x > -2``.
    K : int
        Highest coefficient index.
    reserve : int, optional
        Derivative orders kept on the last jet.
    m_max : int, optional
        Also tabulate ``Rm0(x)`` up to this m.

    Returns
    -------
    DynCoeffs
    """
    if x <= -2.0:
        raise ValueError("r0_series needs x > -2")
    if K < 0:
        raise ValueError("K must be non-negative")
    order = K + reserve
    X = Jet.variable(x, order)
    jets = [(2.0 + X) / (3.0 + X)]
    inv = 1.0 / (2.0 + X)
    for k in range(1, K + 1):
        acc = None
        for n in range(1, k + 1):
            term = jets[k - n].derivative(n) * (1.0 / math.factorial(n))
            acc = term if acc is None else acc + term
        for n in range(1, k):
            acc = acc + (3.0 + X) * jets[n] * jets[k - n]
        jets.append(-(acc * inv))
    rm0 = rm0_table(x, m_max) if m_max else np.empty(0)
    return DynCoeffs(float(x), tuple(jets), r10(x) if x > -1.0 else math.nan, rm0)


def r10(x):
    """``R10(x) = 3 (x+2)^2 / (4 (x+1)^{3/2} (x+3))``, normalized to ``R10(0) = 1``."""
    x = np.asarray(x, dtype=float)
    out = 3.0 * (x + 2.0) ** 2 / (4.0 * (x + 1.0) ** 1.5 * (x + 3.0))
    return float(out) if out.ndim == 0 else out


def r10_prime(x):
    """Analytic derivative of `r10`."""
    x = np.asarray(x, dtype=float)
    logd = 2.0 / (x + 2.0) - 1.5 / (x + 1.0) - 1.0 / (x + 3.0)
    out = r10(x) * logd
    return float(out) if out.ndim == 0 else out


def rm0_table(x, m_max):
    """``Rm0(x)`` for ``m = 0 .. m_max`` from the leading-order recurrence.

    ``[(-1)^m (1+x)^m + (1+x)] Rm0 = -(3+x) sum_{n=1..m-1} Rn0 R_{m-n}0``.

    Raises
    ------
    ResonanceError
        If the bracket vanishes (odd m at ``x = 0``).
    """
    if m_max < 2:
        raise ValueError("m_max must be at least 2")
    r = np.zeros(m_max + 1)
    r[0] = r00(x)
    r[1] = r10(x)
    for m in range(2, m_max + 1):
        bracket = (-1.0) ** m * (1.0 + x) ** m + (1.0 + x)
        if bracket == 0.0:
            raise ResonanceError(m, x)
        r[m] = -(3.0 + x) * np.dot(r[1:m], r[m - 1 : 0 : -1]) / bracket
    return r


def overline_sigma0(x):
    """``sigmabar0(x) = R10(x)/x``.

    Raises
    ------
    SingularError
        At ``x = 0``.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x == 0.0):
        raise SingularError("sigmabar0 has a 1/x singularity at x = 0")
    out = 3.0 * (x + 2.0) ** 2 / (4.0 * x * (x + 1.0) ** 1.5 * (x + 3.0))
    return float(out) if out.ndim == 0 else out


def sigma0_dynamic(order=0):
    """Series of the dynamic transseries parameter; only ``1/18`` is known.

    Raises
    ------
    InsufficientOrderError
        For `order` above 0.
    """
    if order > 0:
        raise InsufficientOrderError("only the leading term 1/18 of sigma0 is available")
    return (Fraction(1, 18),)


def log_overline_tau0(x, eps, sigma0=None):
    """``log taubar0`` with the phase reduced exactly on the lattice."""
    if sigma0 is None:
        sigma0 = float(sigma0_dynamic(0)[0])
    x = np.asarray(x, dtype=float)
    t = lattice_index(x, eps)
    re_a = x - (x + 1.0) * np.log1p(x)
    mag = np.log(overline_sigma0(x) * np.sqrt(x) * sigma0 * eps) - re_a / eps
    return mag - 1j * np.pi * np.mod(t, 2.0)


@dataclass(frozen=True)
class OverlineTau:
    """``taubar0`` carried as log-magnitude plus phase.

    Attributes
    ----------
    sigma0 : float
    overline_sigma0 : float or ndarray
    log_value : complex or ndarray
    """

    sigma0: float
    overline_sigma0: object
    log_value: object

    @property
    def value(self):
        """Linear value; raises OverflowError when not representable."""
        lv = np.asarray(self.log_value)
        if np.any(lv.real > 709.0):
            raise OverflowError("taubar0 exceeds the floating-point range; use log_value")
        out = np.exp(lv)
        return complex(out) if out.ndim == 0 else out


def overline_tau0(x, eps, sigma0=None):
    """``taubar0 = sigmabar0(x) sqrt(x) sigma0 eps exp(-A(x)/eps)``.

    Parameters
    ----------
    x : float or array_like
        Slow time, ``x > 0``.
    eps : float
        Rate of parameter change.
    sigma0 : float, optional
        Defaults to ``1/18``.

    Returns
    -------
    OverlineTau
    """
    if sigma0 is None:
        sigma0 = float(sigma0_dynamic(0)[0])
    return OverlineTau(sigma0, overline_sigma0(x), log_overline_tau0(x, eps, sigma0))


def r_app_dynamic(x, eps):
    """Transasymptotic approximation of the slowly varying orbit.

    ``(2+x)/(3+x) + x^{1/2} Omega_o0 + x Omega_e0 + x^{3/2} Omega_o1
    + x^2 Omega_e1`` at ``taubar0``; ``x = 0`` returns 2/3.

    Parameters
    ----------
    x : float or array_like
        Slow time ``eps n``.
    eps : float

    Returns
    -------
    float or ndarray
    """
    x = np.asarray(x, dtype=float)
    out = np.full(x.shape, 2.0 / 3.0, dtype=complex)
    pos = x > 0.0
    if np.any(pos):
        xp = x[pos]
        o0, e0, o1, e1 = omegas_from_log(log_overline_tau0(xp, eps))
        h = np.sqrt(xp)
        out[pos] = r00(xp) + h * o0 + xp * e0 + xp * h * o1 + xp * xp * e1
    return real_part_checked(out)


_R_MINUS = EPS_POLE  # sqrt(5) - 2
_R_PLUS = math.sqrt(5.0) + 2.0


def b_dynamic(z):
    """Weight of the 4-periodic contribution in the slowly varying map.

    ``B(z)`` is the integral from 0 to z of ``-pi i - 1/2 log(1 - s(4+s))``
    with the logarithm continued through the upper half plane::

        B = -pi i z + z - (z/2) log(1 - z(4+z))
            + (r-/2) log((r- - z)/r-) - (r+/2) log((r+ + z)/r+)

    where ``r-+ = sqrt(5) -+ 2``.

    Raises
    ------
    PoleError
        At the branch point ``z = sqrt(5) - 2``.
    """
    z = np.asarray(z, dtype=float)
    if np.any(z < 0.0) or np.any(z >= _R_PLUS):
        raise ValueError("b_dynamic needs 0 <= z < sqrt(5) + 2")
    if np.any(z == _R_MINUS):
        raise PoleError("B(z) has a branch point at z = sqrt(5) - 2")
    with np.errstate(divide="ignore", invalid="ignore"):
        lg = np.where(z == 0.0, 0.0, z * upper_log(1.0 - z * (4.0 + z)))
    out = (
        -1j * np.pi * z
        + z
        - 0.5 * lg
        + 0.5 * _R_MINUS * upper_log((_R_MINUS - z) / _R_MINUS)
        - 0.5 * _R_PLUS * np.log((_R_PLUS + z) / _R_PLUS)
    )
    out = np.asarray(out)
    return complex(out) if out.ndim == 0 else out


def b_dynamic_prime(z):
    """``B'(z) = -pi i - 1/2 log(1 - z(4+z))`` on the upper-side branch."""
    z = np.asarray(z, dtype=float)
    out = np.asarray(-1j * np.pi - 0.5 * upper_log(1.0 - z * (4.0 + z)))
    return complex(out) if out.ndim == 0 else out


def find_z0(xtol=1e-12):
    """Root of ``Re B`` beyond ``sqrt(5) - 2``, found by bisection on ``(sqrt5 - 2, 2)``."""
    lo = _R_MINUS * (1.0 + 1e-12)
    hi = 2.0
    fn = lambda z: b_dynamic(z).real  # noqa: E731
    if fn(lo) * fn(hi) >= 0.0:
        raise ArithmeticError("Re B does not change sign on (sqrt(5) - 2, 2)")
    return float(bisect(fn, lo, hi, xtol=xtol))


def onset_index(eps, z0=None):
    """Step at which 4-periodic behaviour appears, ``round(z0 / (2 eps))``."""
    if z0 is None:
        z0 = find_z0()
    return int(round(z0 / (2.0 * eps)))
