"""Closed-form resummed functions Omega of the 2-periodic transseries.

``Omega_o0`` and ``Omega_e0`` are the leading odd and even resummations and
``Omega_o1``, ``Omega_e1`` the first corrections.  All four saturate as
``|tau| -> inf``, but ``tau`` itself grows geometrically along an orbit, so
every function also accepts ``log(tau)`` and switches to a reciprocal form
once ``|tau|`` is large.
"""
import warnings

import numpy as np

from .errors import BranchWarning

__all__ = [
    "omega_o0",
    "omega_e0",
    "omega_o1",
    "omega_e1",
    "omegas",
    "omegas_from_log",
    "omega_o0_prime",
    "omega_e0_prime",
    "omega_o1_prime",
    "omega_e1_prime",
]

# above this |tau| the reciprocal form is used
_LOG_SWITCH = 20.0
_BRANCH_TOL = 1e-8


def _wrap(phase):
    """Map angles into (-pi, pi]."""
    return np.pi - np.mod(np.pi - phase, 2.0 * np.pi)


def _check_branch(w):
    ang = np.abs(np.angle(w))
    if np.any(ang > np.pi - _BRANCH_TOL):
        warnings.warn("1 + 9 tau^2 is close to the branch cut", BranchWarning, stacklevel=3)


def _direct(tau):
    w = 1.0 + 9.0 * tau * tau
    _check_branch(w)
    s = np.sqrt(w)
    lw = np.log(w)
    o0 = tau / s
    e0 = -1.5 * tau * tau / w
    o1 = -tau * (45.0 * tau * tau - 33.0 * lw) / (24.0 * w * s)
    e1 = tau * tau * (14.0 + 36.0 * tau * tau - 33.0 * lw) / (8.0 * w * w)
    return o0, e0, o1, e1


def _reciprocal(lt):
    # 1 + 9 tau^2 = tau^2 (9 + u^2) with u = 1/tau
    u = np.exp(-lt)
    lw = 2.0 * lt + np.log(9.0 + u * u)
    lw = lw.real + 1j * _wrap(lw.imag)
    _check_branch(np.exp(1j * lw.imag))
    ls = 0.5 * lw
    o0 = np.exp(lt - ls)
    e0 = -1.5 * np.exp(2.0 * lt - lw)
    o1 = -(45.0 * np.exp(3.0 * lt - 3.0 * ls) - 33.0 * lw * np.exp(lt - 3.0 * ls)) / 24.0
    e1 = (
        14.0 * np.exp(2.0 * lt - 2.0 * lw)
        + 36.0 * np.exp(4.0 * lt - 2.0 * lw)
        - 33.0 * lw * np.exp(2.0 * lt - 2.0 * lw)
    ) / 8.0
    return o0, e0, o1, e1


def omegas_from_log(log_tau):
    """All four Omega functions from ``log(tau)``.

    Parameters
    ----------
    log_tau : complex or array_like
        Logarithm of the resummation variable; any branch of the imaginary
        part may be used.

    Returns
    -------
    tuple of ndarray
        ``(Omega_o0, Omega_e0, Omega_o1, Omega_e1)`` on the principal branch
        of the square root and logarithm of ``1 + 9 tau^2``.
    """
    lt = np.asarray(log_tau, dtype=complex)
    scalar = lt.ndim == 0
    lt = np.atleast_1d(lt)
    out = [np.zeros(lt.shape, dtype=complex) for _ in range(4)]
    big = lt.real > _LOG_SWITCH
    zero = np.isneginf(lt.real)
    small = ~big & ~zero
    if np.any(small):
        for o, v in zip(out, _direct(np.exp(lt[small]))):
            o[small] = v
    if np.any(big):
        for o, v in zip(out, _reciprocal(lt[big])):
            o[big] = v
    if scalar:
        return tuple(complex(o[0]) for o in out)
    return tuple(out)


def omegas(tau):
    """All four Omega functions at `tau` (scalar or array)."""
    t = np.asarray(tau, dtype=complex)
    if np.all(np.abs(t) < np.exp(_LOG_SWITCH)):
        vals = _direct(t)
        return tuple(complex(v) for v in vals) if t.ndim == 0 else vals
    with np.errstate(divide="ignore"):
        return omegas_from_log(np.log(t))


def omega_o0(tau):
    """Leading odd resummation ``tau / sqrt(1 + 9 tau^2)``."""
    return omegas(tau)[0]


def omega_e0(tau):
    """Leading even resummation ``-(3/2) tau^2 / (1 + 9 tau^2)``."""
    return omegas(tau)[1]


def omega_o1(tau):
    """First odd correction ``-tau (45 tau^2 - 33 log w) / (24 w^{3/2})``, ``w = 1 + 9 tau^2``."""
    return omegas(tau)[2]


def omega_e1(tau):
    """First even correction ``tau^2 (14 + 36 tau^2 - 33 log w) / (8 w^2)``."""
    return omegas(tau)[3]


def omega_o0_prime(tau):
    """Derivative ``(1 + 9 tau^2)^{-3/2}``."""
    tau = np.asarray(tau, dtype=complex)
    w = 1.0 + 9.0 * tau * tau
    return w ** -1.5


def omega_e0_prime(tau):
    tau = np.asarray(tau, dtype=complex)
    w = 1.0 + 9.0 * tau * tau
    return -3.0 * tau / (w * w)


def omega_o1_prime(tau):
    tau = np.asarray(tau, dtype=complex)
    w = 1.0 + 9.0 * tau * tau
    lw = np.log(w)
    num = 45.0 * tau**3 - 33.0 * tau * lw
    dnum = 135.0 * tau**2 - 33.0 * lw - 594.0 * tau**2 / w
    return -(dnum * w - 27.0 * tau * num) / (24.0 * w**2.5)


def omega_e1_prime(tau):
    tau = np.asarray(tau, dtype=complex)
    w = 1.0 + 9.0 * tau * tau
    lw = np.log(w)
    num = tau**2 * (14.0 + 36.0 * tau**2 - 33.0 * lw)
    dnum = 2.0 * tau * (14.0 + 36.0 * tau**2 - 33.0 * lw) + tau**2 * (72.0 * tau - 594.0 * tau / w)
    return (dnum * w - 36.0 * tau * num) / (8.0 * w**3)
