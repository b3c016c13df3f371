"""Truncated Taylor arithmetic on derivative jets.

A :class:`Jet` stores a function's value and its first ``K`` derivatives with
respect to the curve parameter ``t``::

    d[0] = f(t), d[1] = f'(t), ..., d[K] = f^(K)(t)

Values may be scalars (``d.shape == (K+1,)``) or 3-vectors
(``d.shape == (K+1, 3)``). Products follow the Leibniz rule and the
elementary functions use the usual first-order ODE recurrences, so every
coefficient is exact up to floating point rounding.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .errors import DomainError, GuardViolation, JetOrderExhausted

EPS_DIV = 1e-12


@lru_cache(maxsize=None)
def _binomials(k: int) -> np.ndarray:
    return np.array([math.comb(k, j) for j in range(k + 1)], dtype=float)


def _align(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # scalar jets broadcast against vector jets along the trailing axis
    while a.ndim < b.ndim:
        a = a[..., None]
    while b.ndim < a.ndim:
        b = b[..., None]
    return a, b


class Jet:
    """Value and parameter derivatives up to a fixed order."""

    __slots__ = ("d",)
    __array_priority__ = 1000

    def __init__(self, d):
        d = np.asarray(d, dtype=float)
        if d.ndim == 0:
            d = d.reshape(1)
        self.d = d

    # construction -------------------------------------------------------

    @classmethod
    def constant(cls, value, order: int) -> "Jet":
        value = np.asarray(value, dtype=float)
        d = np.zeros((order + 1,) + value.shape)
        d[0] = value
        return cls(d)

    @classmethod
    def variable(cls, t: float, order: int) -> "Jet":
        d = np.zeros(order + 1)
        d[0] = t
        if order >= 1:
            d[1] = 1.0
        return cls(d)

    # inspection ---------------------------------------------------------

    @property
    def order(self) -> int:
        return self.d.shape[0] - 1

    @property
    def is_vector(self) -> bool:
        return self.d.ndim > 1

    @property
    def value(self):
        v = self.d[0]
        return float(v) if v.ndim == 0 else v.copy()

    def __getitem__(self, k: int):
        v = self.d[k]
        return float(v) if np.ndim(v) == 0 else v

    def __repr__(self) -> str:
        return f"Jet(order={self.order}, d={self.d.tolist()})"

    def truncate(self, order: int) -> "Jet":
        if order > self.order:
            raise JetOrderExhausted(f"cannot extend jet of order {self.order} to {order}")
        return Jet(self.d[: order + 1])

    def derivative(self) -> "Jet":
        """Jet of f' (one order lower)."""
        if self.order < 1:
            raise JetOrderExhausted("derivative of an order-0 jet")
        return Jet(self.d[1:])

    def component(self, i: int) -> "Jet":
        return Jet(self.d[:, i])

    # arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other, order: int) -> "Jet":
        if isinstance(other, Jet):
            return other
        return Jet.constant(other, order)

    def _pair(self, other) -> tuple[np.ndarray, np.ndarray]:
        other = self._coerce(other, self.order)
        n = min(self.order, other.order) + 1
        return _align(self.d[:n], other.d[:n])

    def __add__(self, other) -> "Jet":
        a, b = self._pair(other)
        return Jet(a + b)

    __radd__ = __add__

    def __sub__(self, other) -> "Jet":
        a, b = self._pair(other)
        return Jet(a - b)

    def __rsub__(self, other) -> "Jet":
        a, b = self._pair(other)
        return Jet(b - a)

    def __neg__(self) -> "Jet":
        return Jet(-self.d)

    def __mul__(self, other) -> "Jet":
        if not isinstance(other, Jet):
            o = np.asarray(other, dtype=float)
            if o.ndim == 0 or self.is_vector:
                return Jet(self.d * o)
            return Jet(self.d[:, None] * o)
        a, b = self._pair(other)
        out = np.empty(np.broadcast_shapes(a.shape, b.shape))
        for k in range(out.shape[0]):
            c = _binomials(k)
            c = c.reshape((-1,) + (1,) * (out.ndim - 1))
            out[k] = np.sum(c * a[: k + 1] * b[k::-1], axis=0)
        return Jet(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Jet":
        if not isinstance(other, Jet):
            return self * (1.0 / np.asarray(other, dtype=float))
        if other.is_vector:
            raise TypeError("division by a vector jet")
        return _divide(self, other)

    def __rtruediv__(self, other) -> "Jet":
        return _divide(Jet.constant(other, self.order), self)

    def __pow__(self, n) -> "Jet":
        if int(n) != n:
            raise TypeError("jets support integer powers only")
        n = int(n)
        if n < 0:
            return 1.0 / (self ** (-n))
        result = Jet.constant(1.0, self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result


def _guard(value, what: str) -> None:
    if abs(value) <= EPS_DIV:
        raise GuardViolation(f"{what}: leading value {value!r} within {EPS_DIV:g} of zero")


def _divide(f: Jet, g: Jet) -> Jet:
    g0 = g.d[0]
    _guard(g0, "division")
    n = min(f.order, g.order) + 1
    fd, gd = f.d[:n], g.d[:n]
    h = np.empty_like(fd)
    for k in range(n):
        acc = fd[k].copy() if fd.ndim > 1 else fd[k]
        c = _binomials(k)
        for j in range(1, k + 1):
            acc = acc - c[j] * gd[j] * h[k - j]
        h[k] = acc / g0
    return Jet(h)


def _scalar(x: Jet) -> np.ndarray:
    if x.is_vector:
        raise TypeError("elementary functions take scalar jets")
    return x.d


def sqrt(x: Jet) -> Jet:
    f = _scalar(x)
    if f[0] < 0:
        raise DomainError(f"sqrt of negative leading value {f[0]!r}")
    _guard(f[0], "sqrt")
    s = np.empty_like(f)
    s[0] = math.sqrt(f[0])
    for k in range(1, len(f)):
        c = _binomials(k)
        acc = f[k]
        for j in range(1, k):
            acc -= c[j] * s[j] * s[k - j]
        s[k] = acc / (2.0 * s[0])
    return Jet(s)


def exp(x: Jet) -> Jet:
    f = _scalar(x)
    e = np.empty_like(f)
    e[0] = math.exp(f[0])
    for k in range(1, len(f)):
        c = _binomials(k - 1)
        e[k] = sum(c[j] * e[j] * f[k - j] for j in range(k))
    return Jet(e)


def sin_cos(x: Jet) -> tuple[Jet, Jet]:
    f = _scalar(x)
    s = np.empty_like(f)
    c = np.empty_like(f)
    s[0], c[0] = math.sin(f[0]), math.cos(f[0])
    for k in range(1, len(f)):
        b = _binomials(k - 1)
        s[k] = sum(b[j] * c[j] * f[k - j] for j in range(k))
        c[k] = -sum(b[j] * s[j] * f[k - j] for j in range(k))
    return Jet(s), Jet(c)


def sin(x: Jet) -> Jet:
    return sin_cos(x)[0]


def cos(x: Jet) -> Jet:
    return sin_cos(x)[1]


# vector helpers -----------------------------------------------------------


def stack(components) -> Jet:
    """Vector jet from three scalar jets (truncated to the lowest order)."""
    n = min(c.order for c in components) + 1
    return Jet(np.stack([c.d[:n] for c in components], axis=-1))


def dot(a: Jet, b: Jet) -> Jet:
    p = a * b
    return Jet(p.d.sum(axis=-1))


def cross(a: Jet, b: Jet) -> Jet:
    n = min(a.order, b.order) + 1
    ad, bd = a.d[:n], b.d[:n]
    # all pairwise products at once: table[j, i] = a_j x b_i
    table = np.cross(ad[:, None, :], bd[None, :, :])
    out = np.empty((n, 3))
    for k in range(n):
        j = np.arange(k + 1)
        out[k] = _binomials(k) @ table[j, k - j]
    return Jet(out)


def norm(a: Jet) -> Jet:
    return sqrt(dot(a, a))


def det3(a: Jet, b: Jet, c: Jet) -> Jet:
    return dot(a, cross(b, c))
