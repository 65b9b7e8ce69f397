"""Forward-mode automatic differentiation with truncated Taylor series.

A :class:`Jet` holds the normalised Taylor coefficients ``u_k = u^(k)(x0)/k!``
of a function around a batch of base points; ``coeffs`` has shape
``(order + 1, *batch)``. Elementary functions use the usual recurrences,
so derivatives up to ``order`` are exact up to roundoff.
"""

from __future__ import annotations

import math

import numpy as np

MAX_ORDER = 6


class Jet:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = np.asarray(coeffs, dtype=float)

    @classmethod
    def variable(cls, x0, order: int) -> "Jet":
        if not 0 <= order <= MAX_ORDER:
            raise ValueError(f"jet order must be in [0, {MAX_ORDER}], got {order}")
        x0 = np.asarray(x0, dtype=float)
        c = np.zeros((order + 1,) + x0.shape)
        c[0] = x0
        if order >= 1:
            c[1] = 1.0
        return cls(c)

    @classmethod
    def constant(cls, value, like: "Jet") -> "Jet":
        c = np.zeros_like(like.coeffs)
        c[0] = value
        return cls(c)

    @property
    def order(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def value(self) -> np.ndarray:
        return self.coeffs[0]

    def derivative(self, k: int) -> np.ndarray:
        return self.coeffs[k] * math.factorial(k)

    def _lift(self, other) -> "Jet":
        return other if isinstance(other, Jet) else Jet.constant(other, self)

    def __add__(self, other):
        return Jet(self.coeffs + self._lift(other).coeffs)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.coeffs)

    def __sub__(self, other):
        return Jet(self.coeffs - self._lift(other).coeffs)

    def __rsub__(self, other):
        return Jet(self._lift(other).coeffs - self.coeffs)

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.coeffs * other)
        a, b = self.coeffs, other.coeffs
        out = np.zeros(np.broadcast_shapes(a.shape, b.shape))
        for k in range(out.shape[0]):
            out[k] = sum(a[j] * b[k - j] for j in range(k + 1))
        return Jet(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.coeffs / other)
        a, b = self.coeffs, other.coeffs
        q = np.zeros(np.broadcast_shapes(a.shape, b.shape))
        for k in range(q.shape[0]):
            acc = a[k] - sum(b[j] * q[k - j] for j in range(1, k + 1))
            q[k] = acc / b[0]
        return Jet(q)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, p: float):
        # r' a = p a' r  =>  r_k = sum_{j=1..k} ((p+1) j - k) a_j r_{k-j} / (k a_0)
        a = self.coeffs
        r = np.zeros_like(a)
        r[0] = a[0] ** p
        for k in range(1, a.shape[0]):
            acc = sum(((p + 1.0) * j - k) * a[j] * r[k - j] for j in range(1, k + 1))
            r[k] = acc / (k * a[0])
        return Jet(r)


def sqrt(u: Jet) -> Jet:
    a = u.coeffs
    r = np.zeros_like(a)
    r[0] = np.sqrt(a[0])
    for k in range(1, a.shape[0]):
        acc = a[k] - sum(r[j] * r[k - j] for j in range(1, k))
        r[k] = acc / (2.0 * r[0])
    return Jet(r)


def exp(u: Jet) -> Jet:
    a = u.coeffs
    e = np.zeros_like(a)
    e[0] = np.exp(a[0])
    for k in range(1, a.shape[0]):
        e[k] = sum(j * a[j] * e[k - j] for j in range(1, k + 1)) / k
    return Jet(e)


def tanh(u: Jet) -> Jet:
    # t' = (1 - t^2) u'
    a = u.coeffs
    t = np.zeros_like(a)
    s = np.zeros_like(a)  # s = 1 - t^2
    t[0] = np.tanh(a[0])
    s[0] = 1.0 - t[0] ** 2
    for k in range(1, a.shape[0]):
        t[k] = sum(j * a[j] * s[k - j] for j in range(1, k + 1)) / k
        s[k] = -sum(t[i] * t[k - i] for i in range(k + 1))
    return Jet(t)


def sincos(u: Jet) -> tuple[Jet, Jet]:
    a = u.coeffs
    s = np.zeros_like(a)
    c = np.zeros_like(a)
    s[0], c[0] = np.sin(a[0]), np.cos(a[0])
    for k in range(1, a.shape[0]):
        s[k] = sum(j * a[j] * c[k - j] for j in range(1, k + 1)) / k
        c[k] = -sum(j * a[j] * s[k - j] for j in range(1, k + 1)) / k
    return Jet(s), Jet(c)


def cos(u: Jet) -> Jet:
    return sincos(u)[1]


def sin(u: Jet) -> Jet:
    return sincos(u)[0]
