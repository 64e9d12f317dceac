"""Chebyshev polynomials of the first and second kind.

``U_n`` is evaluated with the three-term recurrence
``U_n = 2t U_{n-1} - U_{n-2}`` from ``U_0 = 1, U_1 = 2t``.  The trigonometric
form ``sin((n+1) theta) / sin(theta)`` with ``t = cos(theta)`` is kept as an
independent check.  All routines accept scalars or numpy arrays of ``t``.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError
from .series import PowerSeries, reciprocal

__all__ = [
    "u_poly",
    "u_poly_trig",
    "t_poly",
    "t_poly_trig",
    "h_denominator",
    "h_coeffs",
    "h_coeffs_as_printed",
]


def _check_t(t):
    t = np.asarray(t, dtype=float)
    if np.any(~np.isfinite(t)) or np.any(np.abs(t) >= 1.0):
        raise DomainError(f"Chebyshev argument must satisfy |t| < 1, got {t!r}")
    return t


def _check_n(n):
    if int(n) != n or n < 0:
        raise ValueError(f"degree must be a non-negative integer, got {n!r}")
    return int(n)


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


def _u_table(nmax: int, t) -> list:
    """``[U_{-2}, U_{-1}, U_0, ..., U_nmax]`` with ``U_{-1} = 0, U_{-2} = -1``."""
    out = [-np.ones_like(t), np.zeros_like(t), np.ones_like(t)]
    two_t = 2.0 * t
    for _ in range(nmax):
        out.append(two_t * out[-1] - out[-2])
    return out


def u_poly(n: int, t):
    """Second-kind polynomial ``U_n(t)`` by the three-term recurrence."""
    n = _check_n(n)
    t = _check_t(t)
    return _scalar(_u_table(n, t)[n + 2])


def u_poly_trig(n: int, t):
    """``U_n(t) = sin((n+1) arccos t) / sqrt(1 - t**2)``; raises for ``|t| >= 1``."""
    n = _check_n(n)
    t = _check_t(t)
    theta = np.arccos(t)
    return _scalar(np.sin((n + 1) * theta) / np.sin(theta))


def t_poly(n: int, t):
    """First-kind polynomial from ``2 T_n = U_n - U_{n-2}``."""
    n = _check_n(n)
    t = _check_t(t)
    table = _u_table(n, t)
    return _scalar(0.5 * (table[n + 2] - table[n]))


def t_poly_trig(n: int, t):
    n = _check_n(n)
    t = _check_t(t)
    return _scalar(np.cos(n * np.arccos(t)))


def h_denominator(t: float, order: int) -> PowerSeries:
    """``1 - 2t z + z**2``, whose reciprocal generates ``U_0, U_1, ...``."""
    return PowerSeries([1.0, -2.0 * float(t), 1.0], order=order)


def h_coeffs(t: float, order: int) -> PowerSeries:
    """Taylor coefficients ``U_0(t), ..., U_order(t)`` of the Chebyshev
    generating function, obtained by series division.

    The denominator is ``1 - 2tz + z**2``; see :func:`h_coeffs_as_printed`
    for the variant with ``- z**2``.
    """
    t = float(_check_t(t))
    if order < 0:
        raise ValueError("order must be non-negative")
    return reciprocal(h_denominator(t, order))


def h_coeffs_as_printed(t: float, order: int) -> PowerSeries:
    """Series division of ``1 / (1 - 2tz - z**2)``.

    This reciprocal does *not* generate ``U_n``: already its ``z**2``
    coefficient is ``4t**2 + 1`` rather than ``U_2(t) = 4t**2 - 1``.  It is
    kept so that the literal denominator can be audited directly.
    """
    t = float(_check_t(t))
    if order < 0:
        raise ValueError("order must be non-negative")
    return reciprocal(PowerSeries([1.0, -2.0 * t, -1.0], order=order))
