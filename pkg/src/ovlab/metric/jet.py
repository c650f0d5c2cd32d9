"""Second-order forward-mode differentiation.

A :class:`Jet2` carries the value, gradient and Hessian of a scalar function
of ``n`` variables at a point, truncated after second order. Elementary
functions act through the chain rule ``d2 f(u) = f'(u) d2 u + f''(u) du du^T``.
"""

from __future__ import annotations

import math

import numpy as np


class Jet2:
    __slots__ = ("value", "grad", "hess")
    __array_priority__ = 100

    def __init__(self, value: float, grad, hess):
        self.value = float(value)
        self.grad = np.asarray(grad, dtype=float)
        self.hess = np.asarray(hess, dtype=float)

    @classmethod
    def constant(cls, value: float, n: int) -> "Jet2":
        return cls(value, np.zeros(n), np.zeros((n, n)))

    @classmethod
    def variable(cls, value: float, index: int, n: int) -> "Jet2":
        grad = np.zeros(n)
        grad[index] = 1.0
        return cls(value, grad, np.zeros((n, n)))

    @property
    def n(self) -> int:
        return len(self.grad)

    def __repr__(self):
        return f"Jet2({self.value!r}, grad={self.grad.tolist()})"

    def _lift(self, other) -> "Jet2":
        return other if isinstance(other, Jet2) else Jet2.constant(other, self.n)

    def chain(self, f0: float, f1: float, f2: float) -> "Jet2":
        """Compose with a scalar function given ``f(u), f'(u), f''(u)``."""
        return Jet2(f0, f1 * self.grad, f1 * self.hess + f2 * np.outer(self.grad, self.grad))

    def __add__(self, other):
        o = self._lift(other)
        return Jet2(self.value + o.value, self.grad + o.grad, self.hess + o.hess)

    __radd__ = __add__

    def __neg__(self):
        return Jet2(-self.value, -self.grad, -self.hess)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Jet2):
            c = float(other)
            return Jet2(self.value * c, self.grad * c, self.hess * c)
        a, b = self, other
        cross = np.outer(a.grad, b.grad)
        return Jet2(a.value * b.value,
                    a.value * b.grad + b.value * a.grad,
                    a.value * b.hess + b.value * a.hess + cross + cross.T)

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet2":
        u = self.value
        if u == 0:
            raise ZeroDivisionError("reciprocal of a jet with zero value")
        return self.chain(1 / u, -1 / u ** 2, 2 / u ** 3)

    def __truediv__(self, other):
        if not isinstance(other, Jet2):
            return self * (1 / float(other))
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, p):
        p = float(p)
        if p == 0:
            return Jet2.constant(1.0, self.n)
        if p == 1:
            return self
        u = self.value
        if p == 2:
            return self * self
        return self.chain(u ** p, p * u ** (p - 1), p * (p - 1) * u ** (p - 2))


def sin(x):
    if isinstance(x, Jet2):
        s, c = math.sin(x.value), math.cos(x.value)
        return x.chain(s, c, -s)
    return math.sin(x)


def cos(x):
    if isinstance(x, Jet2):
        s, c = math.sin(x.value), math.cos(x.value)
        return x.chain(c, -s, -c)
    return math.cos(x)


def sqrt(x):
    if isinstance(x, Jet2):
        r = math.sqrt(x.value)
        return x.chain(r, 0.5 / r, -0.25 / (r * x.value))
    return math.sqrt(x)


def value(x) -> float:
    return x.value if isinstance(x, Jet2) else float(x)


def seed(point) -> list[Jet2]:
    """Independent variables at ``point``."""
    n = len(point)
    return [Jet2.variable(v, i, n) for i, v in enumerate(point)]
