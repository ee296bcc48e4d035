"""Exact iteration of the static and slowly varying logistic maps.

The static map is ``y(n+1) = (3 + eps) y(n) (1 - y(n))`` and the slowly
varying map is ``y(n+1) = (lambda0 + eps n) y(n) (1 - y(n))``.  Besides
plain iteration, this module computes periodic orbits of the static map by
Newton's method together with their stability multipliers.
"""
from dataclasses import dataclass, field
import math

import numpy as np

from .errors import ComplexCycleError, ConfigurationError, DomainEscapeError, SolverError

__all__ = [
    "StaticMapConfig",
    "DynamicMapConfig",
    "Orbit",
    "Cycle",
    "iterate_static",
    "iterate_dynamic",
    "nonperiodic_fixed_point",
    "two_cycle",
    "find_cycle",
    "cycle_multiplier",
    "DEGENERACY_TOL",
]

DEGENERACY_TOL = 1e-8
_PARAM_SLACK = 1e-12


def _frozen(values):
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class StaticMapConfig:
    """Static logistic map with parameter ``3 + eps`` started at ``y0``."""

    eps: float
    y0: float = 2.0 / 3.0

    def __post_init__(self):
        if not 0.0 < self.y0 < 1.0:
            raise ConfigurationError(f"y0 must lie in (0, 1), got {self.y0!r}")
        lam = 3.0 + self.eps
        if not 0.0 < lam <= 4.0:
            raise ConfigurationError(f"3 + eps must lie in (0, 4], got {lam!r}")


@dataclass(frozen=True)
class DynamicMapConfig:
    """Slowly varying logistic map ``lambda0 + eps n``."""

    eps: float
    lambda0: float = 3.0
    y0: float = 2.0 / 3.0

    def __post_init__(self):
        if not self.eps > 0.0:
            raise ConfigurationError(f"eps must be positive, got {self.eps!r}")
        if not 0.0 < self.y0 < 1.0:
            raise ConfigurationError(f"y0 must lie in (0, 1), got {self.y0!r}")


@dataclass(frozen=True)
class Orbit:
    """Consecutive iterates ``values[i] = y(start_index + i)``."""

    values: np.ndarray
    start_index: int = 0

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen(self.values))

    def __len__(self):
        return len(self.values)

    @property
    def n(self):
        """Step indices matching `values`."""
        return np.arange(self.start_index, self.start_index + len(self.values))


@dataclass(frozen=True)
class Cycle:
    """Periodic orbit of the static map.

    Attributes
    ----------
    period : int
        Nominal period p.
    points : tuple of float
        The p points in orbit order, starting from the smallest.
    multiplier : float
        Derivative of the p-fold composed map along the cycle.
    degenerate : bool
        True when the points coincide pairwise with those half a period
        later, i.e. the true period is smaller than `period`.
    """

    period: int
    points: tuple
    multiplier: float
    degenerate: bool = field(default=False)

    @property
    def attracting(self):
        return abs(self.multiplier) < 1.0


def iterate_static(cfg, n_steps):
    """Iterate the static logistic map.

    Parameters
    ----------
    cfg : StaticMapConfig
        Map parameter and initial value.
    n_steps : int
        Number of map applications.

    Returns
    -------
    Orbit
        ``n_steps + 1`` values starting with ``cfg.y0``.
    """
    if n_steps < 0:
        raise ConfigurationError("n_steps must be non-negative")
    lam = 3.0 + cfg.eps
    out = np.empty(n_steps + 1)
    y = cfg.y0
    out[0] = y
    for i in range(1, n_steps + 1):
        y = lam * y * (1.0 - y)
        out[i] = y
    return Orbit(out, 0)


def iterate_dynamic(cfg, n_steps):
    """Iterate the slowly varying map ``y(n+1) = (lambda0 + eps n) y(n)(1 - y(n))``.

    Raises
    ------
    DomainEscapeError
        If a parameter value used during the iteration exceeds 4.
    """
    if n_steps < 0:
        raise ConfigurationError("n_steps must be non-negative")
    out = np.empty(n_steps + 1)
    y = cfg.y0
    out[0] = y
    for n in range(n_steps):
        lam = cfg.lambda0 + cfg.eps * n
        if lam > 4.0 + _PARAM_SLACK:
            raise DomainEscapeError(n, lam)
        y = lam * y * (1.0 - y)
        out[n + 1] = y
    return Orbit(out, 0)


def nonperiodic_fixed_point(eps):
    """Nontrivial fixed point ``(2 + eps)/(3 + eps)`` of the static map."""
    if 3.0 + eps == 0.0:
        raise ConfigurationError("3 + eps must be nonzero")
    return (2.0 + eps) / (3.0 + eps)


def _orbit_order(points):
    k = int(np.argmin(points))
    return tuple(float(v) for v in np.roll(points, -k))


def _is_degenerate(points):
    p = len(points)
    if p < 2 or p % 2:
        return False
    pts = np.asarray(points)
    return bool(np.max(np.abs(pts - np.roll(pts, p // 2))) < DEGENERACY_TOL)


def two_cycle(eps):
    """Closed-form 2-cycle ``(4 + eps -+ sqrt(eps (4 + eps))) / (2 (3 + eps))``.

    Raises
    ------
    ComplexCycleError
        If ``eps (4 + eps) < 0``.
    """
    q = eps * (4.0 + eps)
    if q < 0.0:
        raise ComplexCycleError(f"2-cycle is complex for eps={eps!r}")
    r = math.sqrt(q)
    den = 2.0 * (3.0 + eps)
    points = ((4.0 + eps - r) / den, (4.0 + eps + r) / den)
    return Cycle(2, points, 1.0 - q, _is_degenerate(points))


# error-free transformations for the compensated multiplier
_SPLITTER = 134217729.0  # 2**27 + 1


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _dd_mul(x, y):
    p, e = _two_prod(x[0], y[0])
    e += x[0] * y[1] + x[1] * y[0]
    return _two_sum(p, e)


def cycle_multiplier(cycle, eps, compensated=False):
    """Product of ``(3 + eps)(1 - 2 y_i)`` over the cycle points.

    Parameters
    ----------
    cycle : Cycle or sequence of float
        Cycle, or its points.
    eps : float
        Map parameter offset.
    compensated : bool, optional
        Evaluate in double-double arithmetic, which keeps the sign of
        ``log|M|`` reliable when ``|M|`` is within a few ulps of 1.
    """
    points = cycle.points if isinstance(cycle, Cycle) else tuple(cycle)
    if not compensated:
        lam = 3.0 + eps
        return float(np.prod([lam * (1.0 - 2.0 * y) for y in points]))
    lam = _two_sum(3.0, eps)
    acc = (1.0, 0.0)
    for y in points:
        acc = _dd_mul(acc, _dd_mul(lam, _two_sum(1.0, -2.0 * y)))
    return acc[0] + acc[1]


def _compose(lam, y, p):
    for _ in range(p):
        y = lam * y * (1.0 - y)
    return y


def _default_seed(eps, period):
    tail = iterate_static(StaticMapConfig(eps, 0.3), 4000).values[-period:]
    return tail


def find_cycle(eps, period, seed=None, *, tol=1e-12, max_iter=100):
    """Newton-refined period-p cycle of the static map.

    The p cycle equations ``f(y_i) = y_{i+1}`` are solved simultaneously
    with the exact Jacobian.  Steps that would leave [0, 1] are halved until
    they stay inside.

    Parameters
    ----------
    eps : float
        Map parameter offset.
    period : {1, 2, 4, 8}
        Requested period.
    seed : sequence of float, optional
        Initial guess of length `period`.  Defaults to the tail of a long
        orbit from ``y0 = 0.3``.
    tol : float, optional
        Bound on ``|f^p(y_i) - y_i|`` at convergence.
    max_iter : int, optional
        Newton iteration limit.

    Returns
    -------
    Cycle
        Points in orbit order from the smallest; ``degenerate`` is set when
        the solution is really a cycle of half the period.

    Raises
    ------
    SolverError
        If Newton's method does not converge.
    """
    if period not in (1, 2, 4, 8):
        raise ConfigurationError(f"period must be one of 1, 2, 4, 8, got {period!r}")
    if seed is None:
        seed = _default_seed(eps, period)
    y = np.array(seed, dtype=float)
    if y.shape != (period,):
        raise ConfigurationError(f"seed must have length {period}")
    lam = 3.0 + eps
    shift = np.roll(np.eye(period), 1, axis=1)
    for _ in range(max_iter):
        resid = np.array([_compose(lam, v, period) - v for v in y])
        if np.max(np.abs(resid)) < tol:
            break
        g = lam * y * (1.0 - y) - np.roll(y, -1)
        jac = np.diag(lam * (1.0 - 2.0 * y)) - shift
        try:
            step = np.linalg.solve(jac, -g)
        except np.linalg.LinAlgError:
            step = np.linalg.lstsq(jac, -g, rcond=None)[0]
        t = 1.0
        while np.any((y + t * step < 0.0) | (y + t * step > 1.0)) and t > 1e-12:
            t *= 0.5
        y = y + t * step
    else:
        raise SolverError(f"period-{period} cycle did not converge at eps={eps!r}")
    points = _orbit_order(y)
    return Cycle(period, points, cycle_multiplier(points, eps), _is_degenerate(points))
