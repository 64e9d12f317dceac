"""Truncated power series with complex double-precision coefficients.

A :class:`PowerSeries` stores ``c_0, ..., c_N`` densely together with its
truncation order ``N``.  Binary operations never invent coefficients past
the smaller of the operand orders.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import NonzeroConstantTerm, NotNormalized

__all__ = [
    "PowerSeries",
    "mul",
    "add",
    "sub",
    "compose",
    "reciprocal",
    "divide",
    "derivative",
    "reverse",
    "salagean",
    "evaluate",
    "identity",
    "normalized",
]

COEFF_TOL = 1e-12
CONSTANT_TERM_TOL = 1e-14
REVERSE_TOL = 1e-14
_REVERSE_MAX_ITER = 64


@dataclass(frozen=True, eq=False)
class PowerSeries:
    """Truncated series ``sum_{k<=order} coeffs[k] z**k``."""

    coeffs: np.ndarray

    def __init__(self, coeffs: Iterable[complex], order: int | None = None):
        c = np.array(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs,
                     dtype=complex).ravel()
        if c.size == 0:
            raise ValueError("a power series needs at least one coefficient")
        if order is not None:
            if order < 0:
                raise ValueError("order must be non-negative")
            if order + 1 > c.size:
                c = np.concatenate([c, np.zeros(order + 1 - c.size, dtype=complex)])
            else:
                c = c[: order + 1]
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def __len__(self) -> int:
        return self.coeffs.size

    def __getitem__(self, k):
        return self.coeffs[k]

    def __repr__(self) -> str:
        return f"PowerSeries({self.coeffs.tolist()!r}, order={self.order})"

    def truncate(self, order: int) -> PowerSeries:
        return PowerSeries(self.coeffs[: order + 1], order=min(order, self.order))

    def allclose(self, other: PowerSeries, tol: float = COEFF_TOL) -> bool:
        n = min(self.order, other.order) + 1
        return bool(np.max(np.abs(self.coeffs[:n] - other.coeffs[:n])) <= tol)

    def __add__(self, other: PowerSeries) -> PowerSeries:
        return add(self, other)

    def __sub__(self, other: PowerSeries) -> PowerSeries:
        return sub(self, other)

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            return mul(self, other)
        return PowerSeries(self.coeffs * other)

    __rmul__ = __mul__

    def __neg__(self) -> PowerSeries:
        return PowerSeries(-self.coeffs)

    def __call__(self, z):
        return evaluate(self, z)


def identity(order: int) -> PowerSeries:
    """The series ``z`` truncated at ``order`` (``order >= 1``)."""
    if order < 1:
        raise ValueError("identity series needs order >= 1")
    c = np.zeros(order + 1, dtype=complex)
    c[1] = 1.0
    return PowerSeries(c)


def normalized(tail: Iterable[complex], order: int | None = None) -> PowerSeries:
    """Build ``z + a2 z**2 + a3 z**3 + ...`` from ``tail = (a2, a3, ...)``."""
    tail = list(tail)
    return PowerSeries([0.0, 1.0, *tail], order=order)


def _is_normalized(f: PowerSeries, tol: float = COEFF_TOL) -> bool:
    return f.order >= 1 and abs(f.coeffs[0]) <= tol and abs(f.coeffs[1] - 1.0) <= tol


def add(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    n = min(a.order, b.order) + 1
    return PowerSeries(a.coeffs[:n] + b.coeffs[:n])


def sub(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    n = min(a.order, b.order) + 1
    return PowerSeries(a.coeffs[:n] - b.coeffs[:n])


def mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Cauchy product truncated at ``min(a.order, b.order)``."""
    n = min(a.order, b.order) + 1
    return PowerSeries(np.convolve(a.coeffs[:n], b.coeffs[:n])[:n])


def compose(outer: PowerSeries, inner: PowerSeries) -> PowerSeries:
    """Coefficients of ``outer(inner(z))``.

    Requires ``inner[0] == 0`` so that every truncated coefficient is exact.
    The result order is ``min(outer.order, inner.order)``.
    """
    if abs(inner.coeffs[0]) > CONSTANT_TERM_TOL:
        raise NonzeroConstantTerm(
            f"inner series has constant term {inner.coeffs[0]!r}")
    n = min(outer.order, inner.order)
    inner = inner.truncate(n)
    # Horner's scheme in the ring of truncated series.
    acc = PowerSeries([outer.coeffs[n]], order=n)
    for k in range(n - 1, -1, -1):
        c = mul(acc, inner).coeffs.copy()
        c[0] += outer.coeffs[k]
        acc = PowerSeries(c)
    return acc


def reciprocal(a: PowerSeries) -> PowerSeries:
    """``1 / a`` by forward substitution; needs ``a[0] != 0``."""
    c = a.coeffs
    if c[0] == 0:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    n = a.order + 1
    out = np.zeros(n, dtype=complex)
    out[0] = 1.0 / c[0]
    for k in range(1, n):
        out[k] = -np.dot(c[1 : k + 1], out[k - 1 :: -1][:k]) / c[0]
    return PowerSeries(out)


def divide(num: PowerSeries, den: PowerSeries) -> PowerSeries:
    return mul(num, reciprocal(den.truncate(min(num.order, den.order))))


def derivative(f: PowerSeries) -> PowerSeries:
    """Term-wise derivative; the order drops by one (floored at zero)."""
    if f.order == 0:
        return PowerSeries([0.0])
    k = np.arange(1, f.order + 1)
    return PowerSeries(f.coeffs[1:] * k)


def reverse(f: PowerSeries) -> PowerSeries:
    """Compositional inverse ``g`` of a normalized series, ``f(g(w)) = w``.

    Newton iteration ``g <- g - (f(g) - w) / f'(g)`` started from ``g = w``;
    stops once no coefficient moves by more than ``1e-14``.
    """
    if not _is_normalized(f):
        raise NotNormalized("reverse needs f(0) = 0 and f'(0) = 1")
    n = f.order
    w = identity(n)
    g = w
    # Residuals start at z**2, so padding f' with a zero top coefficient
    # keeps every retained Newton step exact.
    df = PowerSeries(derivative(f).coeffs, order=n)
    for _ in range(_REVERSE_MAX_ITER):
        resid = sub(compose(f, g), w)
        slope = compose(df, g)
        step = divide(resid, slope)
        g_next = sub(g, step)
        delta = np.max(np.abs(g_next.coeffs - g.coeffs))
        g = g_next
        if delta < REVERSE_TOL:
            break
    else:  # pragma: no cover - Newton converges in O(log n) steps
        raise RuntimeError("series reversion did not converge")
    c = g.coeffs.copy()
    c[0], c[1] = 0.0, 1.0
    return PowerSeries(c)


def salagean(f: PowerSeries, m: int) -> PowerSeries:
    """``D^m f``: coefficient ``k`` becomes ``k**m * a_k``."""
    if m < 0 or int(m) != m:
        raise ValueError("m must be a non-negative integer")
    if not _is_normalized(f):
        raise NotNormalized("the Salagean operator is applied to normalized series")
    k = np.arange(f.order + 1, dtype=float)
    return PowerSeries(f.coeffs * k ** int(m))


def evaluate(f: PowerSeries, z):
    """Horner evaluation of the truncated sum at ``z`` (scalar or array)."""
    z = np.asarray(z, dtype=complex)
    acc = np.zeros_like(z)
    for c in f.coeffs[::-1]:
        acc = acc * z + c
    return acc[()] if acc.ndim == 0 else acc
