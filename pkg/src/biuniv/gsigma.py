"""The bi-univalent class ``G_Sigma(delta, t, m)`` at truncation order 3.

A member ``f(z) = z + a2 z**2 + a3 z**3 + ...`` satisfies

    ((1 - delta) D^m f + delta D^{m+1} f) / z  =  H(u(z), t)

together with the same identity for ``g = f^{-1}`` and a second Schwarz
function ``v``.  The left side has coefficient ``Lambda_k a_k`` in degree
``k - 1`` where ``Lambda_k = (1 - delta) k**m + delta k**(m+1)``.  Matching
coefficients through degree 2 gives the linear system

    U1 p1            = Lambda_2 a2
    U1 p2 + U2 p1**2 = Lambda_3 a3
    U1 q1            = -Lambda_2 a2
    U1 q2 + U2 q1**2 = Lambda_3 (2 a2**2 - a3)

which is solved here in both directions.  The coefficient formulas accept
numpy arrays so that the search can evaluate them in bulk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import chebyshev
from .errors import DomainError, NotNormalized
from .schwarz import Mode, SchwarzPair
from .series import PowerSeries, compose, normalized, reverse, salagean, _is_normalized

__all__ = [
    "ClassParams",
    "MemberCoeffs",
    "weight",
    "coeffs_from_schwarz",
    "induced_q2",
    "class_pair",
    "lhs_series",
    "membership_residual",
    "default_grid",
]


@dataclass(frozen=True, order=True)
class ClassParams:
    """Class parameters ``delta >= 1``, ``1/2 < t < 1`` and integer ``m >= 0``.

    Instances sort by ``(delta, t, m)``.
    """

    delta: float
    t: float
    m: int

    def __post_init__(self):
        if not (math.isfinite(self.delta) and self.delta >= 1.0):
            raise DomainError(f"delta must be >= 1, got {self.delta!r}")
        if not (0.5 < self.t < 1.0):
            raise DomainError(f"t must lie in (1/2, 1), got {self.t!r}")
        if int(self.m) != self.m or self.m < 0:
            raise DomainError(f"m must be a non-negative integer, got {self.m!r}")
        object.__setattr__(self, "delta", float(self.delta))
        object.__setattr__(self, "t", float(self.t))
        object.__setattr__(self, "m", int(self.m))

    @property
    def lambda2(self) -> float:
        return weight(self, 2)

    @property
    def lambda3(self) -> float:
        return weight(self, 3)

    @property
    def u1(self) -> float:
        return chebyshev.u_poly(1, self.t)

    @property
    def u2(self) -> float:
        return chebyshev.u_poly(2, self.t)

    def to_dict(self) -> dict:
        return {"delta": self.delta, "t": self.t, "m": self.m}


@dataclass(frozen=True)
class MemberCoeffs:
    a2: complex
    a3: complex


def weight(params: ClassParams, k: int) -> float:
    """Salagean weight ``(1 - delta) k**m + delta k**(m+1)``.

    Evaluated as ``k**m (1 + delta (k - 1))`` to avoid cancellation for
    large ``delta``.
    """
    if k < 1:
        raise ValueError("weights are indexed by k >= 1")
    return float(k) ** params.m * (1.0 + params.delta * (k - 1))


def _a_from_p(p1, p2, params: ClassParams):
    l2, l3 = params.lambda2, params.lambda3
    u1, u2 = params.u1, params.u2
    a2 = u1 * p1 / l2
    a3 = (u1 * p2 + u2 * p1 * p1) / l3
    return a2, a3


def _q2_from_p(p1, p2, params: ClassParams):
    a2, a3 = _a_from_p(p1, p2, params)
    q1 = -p1
    return (params.lambda3 * (2.0 * a2 * a2 - a3) - params.u2 * q1 * q1) / params.u1


def coeffs_from_schwarz(pair: SchwarzPair, params: ClassParams) -> MemberCoeffs:
    """``(a2, a3)`` of the member generated by the forward Schwarz data."""
    a2, a3 = _a_from_p(complex(pair.p1), complex(pair.p2), params)
    return MemberCoeffs(complex(a2), complex(a3))


def induced_q2(p1: complex, p2: complex, params: ClassParams) -> complex:
    """The unique ``q2`` for which the inverse-side equations hold."""
    return complex(_q2_from_p(complex(p1), complex(p2), params))


def class_pair(p1: complex, p2: complex, params: ClassParams,
               mode: Mode | str = Mode.PAPER) -> SchwarzPair:
    """Forward data completed by ``q1 = -p1`` and the induced ``q2``."""
    return SchwarzPair.from_forward(p1, p2, induced_q2(p1, p2, params), mode)


def lhs_series(f: PowerSeries, params: ClassParams, order: int) -> PowerSeries:
    """``((1 - delta) D^m f + delta D^{m+1} f) / z`` truncated at ``order``."""
    if not _is_normalized(f):
        raise NotNormalized("class condition needs a normalized f")
    dm = salagean(f, params.m)
    dm1 = salagean(f, params.m + 1)
    combo = (1.0 - params.delta) * dm.coeffs + params.delta * dm1.coeffs
    n = min(order, f.order - 1)
    return PowerSeries(combo[1 : n + 2])


def member_series(coeffs: MemberCoeffs) -> PowerSeries:
    return normalized([coeffs.a2, coeffs.a3])


def membership_residual(pair: SchwarzPair, params: ClassParams,
                        coeffs: MemberCoeffs | None = None) -> float:
    """Largest coefficient mismatch through degree 2 of both subordination
    identities, for ``f`` built from ``coeffs`` (default: from ``pair``) and
    ``g = reverse(f)``.
    """
    if coeffs is None:
        coeffs = coeffs_from_schwarz(pair, params)
    h = chebyshev.h_coeffs(params.t, 2)
    f = member_series(coeffs)
    g = reverse(f)
    u = PowerSeries([0.0, pair.p1, pair.p2])
    v = PowerSeries([0.0, pair.q1, pair.q2])
    res_f = compose(h, u).coeffs - lhs_series(f, params, 2).coeffs
    res_g = compose(h, v).coeffs - lhs_series(g, params, 2).coeffs
    return float(max(np.max(np.abs(res_f)), np.max(np.abs(res_g))))


DEFAULT_DELTAS = (1.0, 1.5, 2.0, 3.0)
DEFAULT_TS = (0.55, 0.65, 0.75, 0.85, 0.95)
DEFAULT_MS = (0, 1, 2)


def default_grid() -> list[ClassParams]:
    """The 4 x 5 x 3 parameter grid, ordered by ``(delta, t, m)``."""
    return sorted(ClassParams(d, t, m)
                  for d in DEFAULT_DELTAS for t in DEFAULT_TS for m in DEFAULT_MS)
