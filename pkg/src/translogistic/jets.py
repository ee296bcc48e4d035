"""Truncated Taylor series ("jets") with exact coefficient arithmetic."""
import math

import numpy as np

from .errors import OrderBudgetError

__all__ = ["Jet"]


class Jet:
    """Truncated Taylor expansion about a point.

    ``coeffs[k]`` holds the normalized coefficient ``f^(k)(x) / k!``, so
    ``coeffs[0]`` is the function value.  Arithmetic between jets keeps the
    smaller of the two orders and is exact through that order.

    Parameters
    ----------
    center : float
        Expansion point.
    coeffs : array_like
        Normalized Taylor coefficients ``c_0 .. c_K``.
    """

    __slots__ = ("center", "coeffs")
    __array_priority__ = 100

    def __init__(self, center, coeffs):
        self.center = float(center)
        c = np.array(coeffs, dtype=float)
        c.setflags(write=False)
        self.coeffs = c

    @classmethod
    def variable(cls, x, order):
        """Jet of the identity function at `x`."""
        c = np.zeros(order + 1)
        c[0] = x
        if order >= 1:
            c[1] = 1.0
        return cls(x, c)

    @classmethod
    def constant(cls, value, x, order):
        c = np.zeros(order + 1)
        c[0] = value
        return cls(x, c)

    @property
    def order(self):
        return len(self.coeffs) - 1

    @property
    def value(self):
        return float(self.coeffs[0])

    def __repr__(self):
        return f"Jet(center={self.center!r}, coeffs={self.coeffs.tolist()!r})"

    def _lift(self, other):
        if isinstance(other, Jet):
            if other.center != self.center:
                raise ValueError("jets expanded about different points")
            k = min(self.order, other.order)
            return self.coeffs[: k + 1], other.coeffs[: k + 1]
        c = np.zeros_like(self.coeffs)
        c[0] = other
        return self.coeffs, c

    def _new(self, coeffs):
        return Jet(self.center, coeffs)

    def __add__(self, other):
        a, b = self._lift(other)
        return self._new(a + b)

    __radd__ = __add__

    def __neg__(self):
        return self._new(-self.coeffs)

    def __sub__(self, other):
        a, b = self._lift(other)
        return self._new(a - b)

    def __rsub__(self, other):
        a, b = self._lift(other)
        return self._new(b - a)

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return self._new(self.coeffs * other)
        a, b = self._lift(other)
        n = len(a)
        return self._new(np.convolve(a, b)[:n])

    __rmul__ = __mul__

    def reciprocal(self):
        a = self.coeffs
        if a[0] == 0.0:
            raise ZeroDivisionError("reciprocal of a jet with zero value")
        b = np.zeros_like(a)
        b[0] = 1.0 / a[0]
        for k in range(1, len(a)):
            b[k] = -np.dot(a[1 : k + 1], b[k - 1 :: -1][:k]) / a[0]
        return self._new(b)

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return self._new(self.coeffs / other)
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, p):
        """Real power via ``a b' = p a' b``."""
        a = self.coeffs
        if a[0] <= 0.0 and not float(p).is_integer():
            raise ValueError("non-integer power of a non-positive jet")
        b = np.zeros_like(a)
        b[0] = a[0] ** p
        for k in range(1, len(a)):
            j = np.arange(1, k + 1)
            b[k] = np.sum((p * j - (k - j)) * a[j] * b[k - j]) / (k * a[0])
        return self._new(b)

    def exp(self):
        a = self.coeffs
        b = np.zeros_like(a)
        b[0] = math.exp(a[0])
        for k in range(1, len(a)):
            j = np.arange(1, k + 1)
            b[k] = np.sum(j * a[j] * b[k - j]) / k
        return self._new(b)

    def log(self):
        a = self.coeffs
        if a[0] <= 0.0:
            raise ValueError("log of a non-positive jet")
        b = np.zeros_like(a)
        b[0] = math.log(a[0])
        for k in range(1, len(a)):
            j = np.arange(1, k)
            b[k] = (a[k] - np.sum(j * b[j] * a[k - j]) / k) / a[0]
        return self._new(b)

    def sqrt(self):
        return self ** 0.5

    def derivative(self, n=1):
        """Jet of the n-th derivative, of order ``K - n``.

        Raises
        ------
        OrderBudgetError
            If `n` exceeds the jet order.
        """
        if n > self.order:
            raise OrderBudgetError(
                f"derivative of order {n} requested from a jet of order {self.order}"
            )
        k = np.arange(self.order - n + 1)
        fall = np.ones(len(k))
        for i in range(1, n + 1):
            fall *= k + i
        return self._new(self.coeffs[n:] * fall)

    def derivatives(self):
        """Plain derivatives ``f(x), f'(x), ..., f^(K)(x)``."""
        fact = np.array([math.factorial(k) for k in range(self.order + 1)], dtype=float)
        return self.coeffs * fact

    def truncate(self, order):
        if order > self.order:
            raise OrderBudgetError(f"cannot extend a jet of order {self.order} to {order}")
        return self._new(self.coeffs[: order + 1])
