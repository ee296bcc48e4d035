"""4-periodic resummed correction to the static logistic map.

Beyond ``eps0 = sqrt(6) - 2`` the 2-cycle loses stability and a 4-periodic
exponential ``tau1`` takes over.  With ``eta = (eps - eps0)/sqrt(6)`` the
correction is ``sqrt(eta)(Theta1 + Theta3) + eta (Theta2 + Theta4)`` with
closed-form Theta functions whose constants depend on the parity
``alpha = (-1)^n``.
"""
from dataclasses import dataclass
from functools import lru_cache
import math
import warnings

import mpmath
import numpy as np

from .errors import BranchWarning, InsufficientOrderError, PoleError, RegimeError
from .static import lattice_index, r2_app, real_part_checked

__all__ = [
    "EPS0",
    "EPS_POLE",
    "EtaParam",
    "ThetaConstants",
    "SurdForm",
    "Tau1Static",
    "upper_log",
    "f4",
    "g4",
    "b_weight",
    "tau1_static",
    "log_tau1_lattice",
    "theta_constants",
    "theta_leading",
    "theta_leading_from_log",
    "theta_prime",
    "SIGMA1_0",
    "SIGMA1_1",
    "SIGMA1_1_ALT",
    "solve_sigma1",
    "sigma1_oracle",
    "lower_branch",
    "r4_app",
]

EPS0 = math.sqrt(6.0) - 2.0
EPS_POLE = math.sqrt(5.0) - 2.0
_LOG_SWITCH = 23.0


def upper_log(w):
    """Logarithm with negative reals mapped to ``log|w| + i pi``.

    Real input never produces ``-i pi``, whatever the sign of a zero
    imaginary part.
    """
    w = np.asarray(w)
    if not np.iscomplexobj(w):
        with np.errstate(divide="ignore"):
            out = np.log(np.abs(w)) + 1j * np.pi * (w < 0)
        return complex(out) if out.ndim == 0 else out
    on_cut = (w.imag == 0) & (w.real < 0)
    with np.errstate(divide="ignore"):
        out = np.where(on_cut, np.log(np.abs(w.real)) + 1j * np.pi, np.log(w))
    return complex(out) if out.ndim == 0 else out


def _upper_sqrt(w):
    return np.exp(0.5 * upper_log(w))


@dataclass(frozen=True)
class EtaParam:
    """Distance ``eta = (eps - eps0)/sqrt(6)`` past the 2-to-4 bifurcation."""

    eps: float

    @property
    def eps0(self):
        return EPS0

    @property
    def eta(self):
        return (self.eps - EPS0) / math.sqrt(6.0)

    @classmethod
    def from_eta(cls, eta):
        return cls(EPS0 + math.sqrt(6.0) * eta)


def f4(eps):
    """Slope ``f(eps) = -1/2 log(1 - eps(4+eps)) - pi i`` of the 4-periodic weight.

    The logarithm is continued from ``eps = 0`` through the upper half plane,
    so ``Im f = -pi`` below ``sqrt(5) - 2`` and ``-3 pi/2`` above.

    Raises
    ------
    PoleError
        At ``eps = sqrt(5) - 2``, where ``1 - eps(4+eps)`` vanishes to
        rounding.
    """
    m = 1.0 - np.asarray(eps, dtype=float) * (4.0 + np.asarray(eps, dtype=float))
    if np.any(np.abs(m) < 1e-14):
        raise PoleError("f4 is singular at eps = sqrt(5) - 2")
    return -0.5 * upper_log(m) - 1j * np.pi


def _alpha(x, eps):
    return np.where(np.cos(np.pi * np.asarray(x, dtype=float) / eps) >= 0.0, 1.0, -1.0)


def g4(x, eps):
    """Parity-dependent part ``g(x, eps)`` of the weight; zero on the lattice."""
    x = np.asarray(x, dtype=float)
    q = eps * (4.0 + eps)
    rq = math.sqrt(q)
    lg = upper_log((1.0 - rq) / (1.0 + rq))
    t = x / eps
    saw = 0.5 * t - 0.5 * np.floor(t + 0.5)
    return _alpha(x, eps) * saw * lg


def b_weight(x, eps):
    """Weight ``B(x, eps) = f(eps) x - eps g(x, eps)``."""
    return f4(eps) * np.asarray(x, dtype=float) - eps * g4(x, eps)


@dataclass(frozen=True)
class Tau1Static:
    """``tau1(x) = sigma1 sqrt(eps) exp(-B(x, eps)/eps)``."""

    sigma1: complex
    eps: float

    def value(self, x):
        return tau1_static(x, self.eps, self.sigma1)

    def alpha(self, x):
        return _alpha(x, self.eps)


def tau1_static(x, eps, sigma1):
    """General (off-lattice) 4-periodic exponential."""
    return sigma1 * math.sqrt(eps) * np.exp(-b_weight(x, eps) / eps)


_QUARTER_TURNS = np.array([1.0, -1j, -1.0, 1j])


def log_tau1_lattice(n, eps, sigma1):
    """``log tau1`` at ``x = eps n`` with the phase ``(-i)^n`` kept exact."""
    n = np.asarray(n)
    c = eps * (4.0 + eps) - 1.0
    mag = math.log(abs(sigma1) * math.sqrt(eps)) + 0.5 * n * math.log(abs(c))
    phase = -0.5 * np.pi * np.mod(n, 4)
    if np.sign(sigma1) < 0:
        phase = phase + np.pi
    if c < 0:
        phase = phase + 0.5 * np.pi * n
    return mag + 1j * phase


@dataclass(frozen=True)
class ThetaConstants:
    """Constants ``a`` and ``b`` of the Theta system for parity `alpha`."""

    alpha: int
    a: float
    b: float


@lru_cache(maxsize=None)
def theta_constants(alpha):
    """``a = (2 + 2 sqrt6 - 3 alpha (sqrt2 + 2 sqrt3))/2`` and
    ``b = 5 (14 + 4 sqrt6 - alpha (7 sqrt2 + 4 sqrt3))/6``."""
    if alpha not in (1, -1):
        raise ValueError("alpha must be +1 or -1")
    r2, r3, r6 = math.sqrt(2.0), math.sqrt(3.0), math.sqrt(6.0)
    a = 0.5 * (2.0 + 2.0 * r6 - 3.0 * alpha * (r2 + 2.0 * r3))
    b = (5.0 / 6.0) * (14.0 + 4.0 * r6 - alpha * (7.0 * r2 + 4.0 * r3))
    return ThetaConstants(alpha, a, b)


def _theta_direct(tau, c):
    t2 = tau * tau
    w = c.b * c.b * t2 * t2
    d = 1.0 - w
    if np.any(np.abs(d) < 1e-8):
        warnings.warn("b^2 tau^4 is close to the branch point 1", BranchWarning, stacklevel=3)
    sd = _upper_sqrt(d)
    s2 = _upper_sqrt(2.0 * d)
    root = np.sqrt(1.0 + sd)
    th1 = c.alpha * tau * root / s2
    th2 = -c.a * t2 / d
    th3 = -c.alpha * c.b * tau * t2 / (s2 * root)
    th4 = c.a * c.b * t2 * t2 / d
    return th1, th2, th3, th4


def _theta_asymptotic(lt, c):
    # leading behaviour for b^2 tau^4 >> 1; corrections are O(1/(b tau^2))
    lmw = math.log(c.b * c.b) + 4.0 * lt + 1j * np.pi
    lmw = lmw.real + 1j * (np.pi - np.mod(np.pi - lmw.imag, 2.0 * np.pi))
    th1 = c.alpha / math.sqrt(2.0) * np.exp(lt - 0.25 * lmw)
    th3 = -c.alpha * c.b / math.sqrt(2.0) * np.exp(3.0 * lt - 0.75 * lmw)
    th2 = c.a / (c.b * c.b) * np.exp(-2.0 * lt)
    th4 = np.full(np.shape(lt), -c.a / c.b, dtype=complex)
    return th1, th2, th3, th4


def theta_leading(tau1, consts):
    """Leading Theta functions.

    Parameters
    ----------
    tau1 : complex or array_like
        Value of the 4-periodic exponential.
    consts : ThetaConstants

    Returns
    -------
    tuple
        ``(Theta1, Theta2, Theta3, Theta4)`` with ``D = 1 - b^2 tau^4``::

            Theta1 =  alpha tau sqrt(1 + sqrt D) / sqrt(2 D)
            Theta2 = -a tau^2 / D
            Theta3 = -alpha b tau^3 / (sqrt(2 D) sqrt(1 + sqrt D))
            Theta4 =  a b tau^4 / D

        For negative real ``D`` the square roots are taken on the upper
        side of the cut.
    """
    t = np.asarray(tau1, dtype=complex)
    out = _theta_direct(t, consts)
    return tuple(complex(v) for v in out) if t.ndim == 0 else out


def theta_leading_from_log(log_tau1, alpha):
    """Theta functions from ``log tau1`` with per-point parity `alpha`."""
    lt = np.atleast_1d(np.asarray(log_tau1, dtype=complex))
    alpha = np.broadcast_to(np.asarray(alpha), lt.shape)
    out = [np.zeros(lt.shape, dtype=complex) for _ in range(4)]
    for sgn in (1, -1):
        c = theta_constants(sgn)
        sel = alpha == sgn
        big = sel & (lt.real > _LOG_SWITCH)
        small = sel & ~big
        if np.any(small):
            for o, v in zip(out, _theta_direct(np.exp(lt[small]), c)):
                o[small] = v
        if np.any(big):
            for o, v in zip(out, _theta_asymptotic(lt[big], c)):
                o[big] = v
    return tuple(out)


def theta_prime(tau1, consts):
    """Analytic derivatives of the four Theta functions."""
    tau = np.asarray(tau1, dtype=complex)
    a, b, al = consts.a, consts.b, consts.alpha
    d = 1.0 - b * b * tau**4
    dd = -4.0 * b * b * tau**3
    sd = _upper_sqrt(d)
    s2 = _upper_sqrt(2.0 * d)
    root = np.sqrt(1.0 + sd)
    dsd = dd / (2.0 * sd)
    ds2 = dd / s2
    droot = dsd / (2.0 * root)
    th1p = al * (root / s2 + tau * droot / s2 - tau * root * ds2 / s2**2)
    th2p = -a * (2.0 * tau / d - tau**2 * dd / d**2)
    den = s2 * root
    dden = ds2 * root + s2 * droot
    th3p = -al * b * (3.0 * tau**2 / den - tau**3 * dden / den**2)
    th4p = a * b * (4.0 * tau**3 / d - tau**4 * dd / d**2)
    return th1p, th2p, th3p, th4p


@dataclass(frozen=True)
class SurdForm:
    """Exact number ``(c1 + c2 sqrt2 + c3 sqrt3 + c6 sqrt6) / den``."""

    c1: int
    c2: int
    c3: int
    c6: int
    den: int

    def __float__(self):
        return float(self.mpf())

    def mpf(self, dps=40):
        with mpmath.workdps(dps):
            s2, s3, s6 = mpmath.sqrt(2), mpmath.sqrt(3), mpmath.sqrt(6)
            return (self.c1 + self.c2 * s2 + self.c3 * s3 + self.c6 * s6) / mpmath.mpf(self.den)

    def __str__(self):
        parts = []
        for c, r in ((self.c1, ""), (self.c2, "√2"), (self.c3, "√3"), (self.c6, "√6")):
            if c:
                parts.append(f"{'-' if c < 0 else '+'} {abs(c)}{r}")
        body = " ".join(parts)
        body = body[2:] if body.startswith("+ ") else "-" + body[2:]
        return f"({body})/{self.den}"


# leading and eta-order coefficients of sigma1
SIGMA1_0 = SurdForm(-12, -3, 16, 7, 50)
SIGMA1_1 = SurdForm(399, 297, -709, -189, 500)
# variant with the sqrt6 term replaced by a sqrt2 term; rejected by the oracle
SIGMA1_1_ALT = SurdForm(399, 297 - 189, -709, 0, 500)


def solve_sigma1(order=1):
    """Coefficients of ``sigma1(eta) = sigma1_0 + eta sigma1_1``.

    Raises
    ------
    InsufficientOrderError
        For `order` above 1.
    """
    if order > 1:
        raise InsufficientOrderError("sigma1 is available only through order 1")
    if order < 0:
        raise ValueError("order must be non-negative")
    return tuple(float(c) for c in (SIGMA1_0, SIGMA1_1)[: order + 1])


def lower_branch(eps):
    """Lower 2-cycle value ``(4 + eps - sqrt(eps(4+eps)))/(2(3+eps))``."""
    return (4.0 + eps - math.sqrt(eps * (4.0 + eps))) / (2.0 * (3.0 + eps))


def _ic_defect(sigma, eta):
    """Initial-condition defect at n = 0 in extended precision."""
    r6 = mpmath.sqrt(6)
    eps0 = r6 - 2
    eps = eps0 + r6 * eta

    def lower(e):
        return (4 + e - mpmath.sqrt(e * (4 + e))) / (2 * (3 + e))

    r2, r3 = mpmath.sqrt(2), mpmath.sqrt(3)
    a = (2 + 2 * r6 - 3 * (r2 + 2 * r3)) / 2
    b = mpmath.mpf(5) / 6 * (14 + 4 * r6 - (7 * r2 + 4 * r3))
    tau = sigma * mpmath.sqrt(eta)
    d = 1 - b**2 * tau**4
    root = mpmath.sqrt(1 + mpmath.sqrt(d))
    th1 = tau * root / mpmath.sqrt(2 * d)
    th2 = -a * tau**2 / d
    th3 = -b * tau**3 / (mpmath.sqrt(2 * d) * root)
    th4 = a * b * tau**4 / d
    s = mpmath.sqrt(eta) * (th1 + th3) + eta * (th2 + th4)
    return (lower(eps) + s - lower(eps0)) / eta


def sigma1_oracle(dps=50, h=None):
    """Numerical sigma1 coefficients from the initial-condition matching.

    The lower 2-cycle branch plus the 4-periodic correction at ``n = 0``
    (parity ``+1``, ``tau1(0) = sigma1 sqrt(eta)``) must equal the
    bifurcation value ``lower_branch(eps0)``.  This is solved for ``sigma1``
    at two tiny ``eta`` in extended precision and extrapolated to
    ``eta = 0``.

    Returns
    -------
    tuple of float
        ``(sigma1_0, sigma1_1)``.
    """
    with mpmath.workdps(dps):
        if h is None:
            h = mpmath.mpf(10) ** (-(dps // 3))
        guess = mpmath.mpf("0.57")
        s1 = mpmath.findroot(lambda s: _ic_defect(s, h), guess)
        s2 = mpmath.findroot(lambda s: _ic_defect(s, 2 * h), s1)
        return float(2 * s1 - s2), float((s2 - s1) / h)


def r4_app(x, eps):
    """4-periodic transasymptotic approximation on the lattice ``x = eps n``.

    Parameters
    ----------
    x : float or array_like
        Scaled time; must be a multiple of `eps`.
    eps : float
        Map parameter offset, above ``sqrt(6) - 2``.

    Returns
    -------
    float or ndarray
        ``r2_app(x) + sqrt(eta)(Theta1 + Theta3) + eta (Theta2 + Theta4)``
        with ``tau1 = sigma1 sqrt(eps) exp(-f(eps) x / eps)``.

    Raises
    ------
    RegimeError
        If ``eps <= sqrt(6) - 2``; use `r2_app` there.
    """
    eta = EtaParam(eps).eta
    if eta <= 0.0:
        raise RegimeError("r4_app needs eps > sqrt(6) - 2; use r2_app below the threshold")
    n = lattice_index(x, eps)
    if np.any(n != np.rint(n)):
        raise ValueError("r4_app is defined on the lattice x = eps n only")
    n = np.rint(n).astype(np.int64)
    s0, s1 = solve_sigma1(1)
    sigma1 = s0 + s1 * eta
    lt = log_tau1_lattice(n, eps, sigma1)
    alpha = np.where(n % 2 == 0, 1, -1)
    th1, th2, th3, th4 = theta_leading_from_log(lt, alpha)
    corr = math.sqrt(eta) * (th1 + th3) + eta * (th2 + th4)
    corr = real_part_checked(corr)
    out = r2_app(x, eps) + corr
    return float(out[0]) if np.ndim(x) == 0 else out
