"""Exponential weights of the 4- and 8-periodic contributions.

A weight ``f(eps)`` multiplies ``-x/eps`` in an exponential.  Where its real
part is positive the contribution is exponentially small, and where it is
negative the contribution dominates.  Both weights are tied to a cycle
multiplier ``M`` through ``exp(-p f) = M`` (p = 2 for the 2-cycle, 4 for the
4-cycle), so poles sit where ``M = 0`` and sign changes where ``|M| = 1``.
"""
from dataclasses import dataclass
import math

import numpy as np
from scipy.optimize import bisect

from .errors import (
    ConfigurationError,
    PoleError,
    RangeError,
    SolverError,
    UnclassifiedError,
)
from .maps import cycle_multiplier, find_cycle, iterate_static, StaticMapConfig, two_cycle
from .period4 import EPS0, upper_log

__all__ = [
    "WeightProfile",
    "RegionLabel",
    "multiplier2",
    "multiplier4",
    "f8_from_multiplier",
    "profile_f4",
    "profile_f8",
    "classify_region",
    "periodicity_of",
]

_XTOL = 1e-15


@dataclass(frozen=True)
class WeightProfile:
    """Sampled weight with its poles and real-part sign changes.

    Attributes
    ----------
    kind : str
        ``"per4"``, ``"per8"`` or ``"dynamic"``.
    eps_grid : ndarray
        Strictly increasing sample points.
    f_values : ndarray
        Complex weight values.
    poles : tuple of float
        Points where ``Re f`` diverges.
    sign_changes : tuple of float
        Points where ``Re f`` crosses zero.
    multipliers : ndarray or None
        Underlying cycle multipliers, when the weight comes from one.
    """

    kind: str
    eps_grid: np.ndarray
    f_values: np.ndarray
    poles: tuple
    sign_changes: tuple
    multipliers: np.ndarray = None

    def __post_init__(self):
        g = np.asarray(self.eps_grid, dtype=float)
        if g.ndim != 1 or len(g) == 0 or np.any(np.diff(g) <= 0.0):
            raise ConfigurationError("grid must be non-empty and strictly increasing")


@dataclass(frozen=True)
class RegionLabel:
    """Region of a weight: ``R1`` absent, ``R2`` exponentially small, ``R3`` dominant."""

    label: str
    boundaries: tuple


def multiplier2(eps):
    """2-cycle multiplier ``1 - eps(4 + eps)``."""
    return 1.0 - eps * (4.0 + eps)


def _check_grid(eps_grid):
    g = np.asarray(eps_grid, dtype=float)
    if g.ndim != 1 or len(g) == 0 or np.any(np.diff(g) <= 0.0):
        raise ConfigurationError("grid must be non-empty and strictly increasing")
    return g


def _roots_on_grid(grid, values, fn):
    """Bisection roots of `fn` inside each grid interval where `values` flips sign."""
    roots = []
    for i in range(len(grid) - 1):
        v0, v1 = values[i], values[i + 1]
        if v0 == 0.0:
            roots.append(float(grid[i]))
        elif v0 * v1 < 0.0:
            roots.append(float(bisect(fn, grid[i], grid[i + 1], xtol=_XTOL, rtol=4 * np.finfo(float).eps)))
    if values[-1] == 0.0:
        roots.append(float(grid[-1]))
    return tuple(roots)


def profile_f4(eps_grid):
    """Profile of the 4-periodic weight ``-1/2 log(1 - eps(4+eps)) - pi i``.

    Parameters
    ----------
    eps_grid : array_like
        Strictly increasing, positive, not containing ``sqrt(5) - 2``.

    Returns
    -------
    WeightProfile
        Poles where the 2-cycle multiplier vanishes and sign changes where
        its modulus is one, both refined by bisection.
    """
    grid = _check_grid(eps_grid)
    mult = multiplier2(grid)
    if np.any(np.abs(mult) < 1e-14):
        raise PoleError("grid contains the pole eps = sqrt(5) - 2")
    f = -0.5 * upper_log(mult) - 1j * np.pi
    poles = _roots_on_grid(grid, mult, multiplier2)
    sgn = _roots_on_grid(grid, np.abs(mult) - 1.0, lambda e: abs(multiplier2(e)) - 1.0)
    return WeightProfile("per4", grid, np.asarray(f), poles, sgn, mult)


def _seed4(eps):
    tail = iterate_static(StaticMapConfig(eps, 0.3), 4000).values[-4:]
    return tail


class _Cycle4Tracker:
    """Continuation of the 4-cycle in eps with Newton refinement."""

    def __init__(self, eps, seed=None):
        self.eps = eps
        self.cycle = self._solve(eps, _seed4(eps) if seed is None else seed)

    @staticmethod
    def _solve(eps, seed):
        cyc = find_cycle(eps, 4, seed)
        if cyc.degenerate:
            raise SolverError(f"4-cycle collapsed onto the 2-cycle at eps={eps!r}")
        return cyc

    def move(self, eps, depth=0):
        try:
            cyc = self._solve(eps, self.cycle.points)
        except SolverError:
            if depth > 12:
                raise
            self.move(0.5 * (self.eps + eps), depth + 1)
            cyc = self._solve(eps, self.cycle.points)
        self.eps, self.cycle = eps, cyc
        return cyc


def multiplier4(eps, seed=None, compensated=True):
    """Multiplier of the 4-cycle born at ``sqrt(6) - 2``."""
    if seed is None:
        seed = _seed4(eps)
    cyc = find_cycle(eps, 4, seed)
    if cyc.degenerate and eps > EPS0:
        raise SolverError(f"4-cycle collapsed onto the 2-cycle at eps={eps!r}")
    return cycle_multiplier(cyc, eps, compensated=compensated), cyc


def f8_from_multiplier(m4):
    """8-periodic weight from ``exp(-4 f8) = M4``.

    The imaginary part is ``-3 pi/2`` while ``M4 > 0`` and ``-7 pi/4`` once
    ``M4`` has passed through zero.
    """
    return -0.25 * upper_log(m4) - 1.5j * np.pi


def _anchor_index(grid):
    # start the continuation near the superstable 4-cycle, where the
    # attracting orbit converges fastest
    return int(np.argmin(np.abs(grid - 0.5)))


def profile_f8(eps_grid):
    """Profile of the 8-periodic weight computed from the 4-cycle multiplier.

    The 4-cycle is followed by continuation outward from the grid point
    nearest 0.5.  Poles (``M4 = 0``) and sign changes (``|M4| = 1``) are
    refined by bisection with the multiplier evaluated in compensated
    arithmetic.

    Parameters
    ----------
    eps_grid : array_like
        Strictly increasing points in ``(sqrt(6) - 2, 0.6]``.

    Returns
    -------
    WeightProfile
    """
    grid = _check_grid(eps_grid)
    if grid[0] <= EPS0 or grid[-1] > 0.6:
        raise ConfigurationError("the 8-periodic weight is profiled on (sqrt(6) - 2, 0.6]")
    k0 = _anchor_index(grid)
    cycles = [None] * len(grid)
    tracker = _Cycle4Tracker(grid[k0])
    cycles[k0] = tracker.cycle
    for i in range(k0 + 1, len(grid)):
        cycles[i] = tracker.move(grid[i])
    tracker = _Cycle4Tracker(grid[k0], cycles[k0].points)
    for i in range(k0 - 1, -1, -1):
        cycles[i] = tracker.move(grid[i])
    mult = np.array([cycle_multiplier(c, e, compensated=True) for c, e in zip(cycles, grid)])

    def m4_near(i):
        def fn(e):
            t = _Cycle4Tracker(grid[i], cycles[i].points)
            return cycle_multiplier(t.move(e), e, compensated=True)
        return fn

    poles, sgn = [], []
    for i in range(len(grid) - 1):
        fn = m4_near(i)
        if mult[i] * mult[i + 1] < 0.0:
            poles.append(float(bisect(fn, grid[i], grid[i + 1], xtol=_XTOL)))
        a0, a1 = abs(mult[i]) - 1.0, abs(mult[i + 1]) - 1.0
        if a0 * a1 < 0.0:
            sgn.append(float(bisect(lambda e: abs(fn(e)) - 1.0, grid[i], grid[i + 1], xtol=_XTOL)))
    f = f8_from_multiplier(mult)
    return WeightProfile("per8", grid, np.asarray(f), tuple(poles), tuple(sgn), mult)


def classify_region(profile, eps):
    """Region of `eps` relative to the first pole and first sign change.

    Returns
    -------
    RegionLabel
        ``R1`` below the pole, ``R2`` between the pole and the sign change,
        ``R3`` beyond.

    Raises
    ------
    RangeError
        If `eps` lies outside the sampled grid.
    """
    grid = profile.eps_grid
    if not grid[0] <= eps <= grid[-1]:
        raise RangeError(f"eps={eps!r} outside the profile range [{grid[0]}, {grid[-1]}]")
    mult = profile.multipliers
    if profile.poles:
        pole = profile.poles[0]
    else:
        # no pole sampled: the whole grid lies on one side of it
        pole = -math.inf if mult is not None and mult[0] < 0.0 else math.inf
    if profile.sign_changes:
        flip = profile.sign_changes[0]
    else:
        flip = math.inf if mult is None or abs(mult[-1]) < 1.0 else -math.inf
    if eps < pole:
        label = "R1"
    elif eps < flip:
        label = "R2"
    else:
        label = "R3"
    return RegionLabel(label, (pole, flip))


def periodicity_of(f_im_slope, tol=1e-6, max_period=1024):
    """Smallest p with ``p * slope`` a multiple of ``2 pi``.

    Parameters
    ----------
    f_im_slope : float
        Imaginary part of the weight slope per unit ``x/eps``.

    Raises
    ------
    UnclassifiedError
        If the slope is not within `tol` of a dyadic multiple of pi.
    """
    k = f_im_slope / math.pi
    p = 1
    while p <= max_period:
        v = p * k
        if abs(v - 2.0 * round(v / 2.0)) <= tol * p:
            return p
        p *= 2
    raise UnclassifiedError(f"slope {f_im_slope!r} is not a dyadic multiple of pi")
