"""Coefficient and Fekete-Szego bounds for ``G_Sigma(delta, t, m)``.

Two families are provided.

*Printed* bounds evaluate the stated closed forms literally, including
exponent placement, so that the audit measures them as written.

*Derived* bounds follow mechanically from the coefficient system (see
:mod:`biuniv.gsigma`).  Substituting ``p1**2 + q1**2 = 2 Lambda_2**2 a2**2 / U1**2``
into ``2 Lambda_3 a2**2 = U1 (p2 + q2) + U2 (p1**2 + q1**2)`` gives

    a2**2 = U1**3 (p2 + q2) / (2 (U1**2 Lambda_3 - U2 Lambda_2**2)),

so with ``|p1| <= 1`` and ``|p2 + q2| <= 2``

    |a2| <= min(2t / Lambda_2, sqrt(|U1|**3 / |U1**2 Lambda_3 - U2 Lambda_2**2|)).

For ``a3 - r a2**2`` the same substitution yields
``U1 ((s + h) p2 + (s - h) q2)`` with ``h = 1 / (2 Lambda_3)`` and
``s = (1 - r) U1**2 / (2 (U1**2 Lambda_3 - U2 Lambda_2**2))``, hence the bound
``|U1| max(1 / Lambda_3, 2 |s|)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import BoundUndefined, DegenerateDenominator
from .gsigma import ClassParams

__all__ = [
    "SMALL_SIGMA",
    "LARGE_SIGMA",
    "DEGENERATE",
    "printed_a2_bound",
    "printed_a3_bound",
    "sigma_printed",
    "printed_fs_bound",
    "derived_a2_bound",
    "derived_a3_bound",
    "sigma_derived",
    "derived_fs_bound",
    "BoundReport",
    "bound_report",
    "AuditRecord",
    "audit",
]

SMALL_SIGMA = "small-sigma"
LARGE_SIGMA = "large-sigma"
DEGENERATE = "degenerate"
DEGENERATE_TOL = 1e-12
VIOLATION_TOL = 1e-9


def _u(params: ClassParams) -> tuple[float, float]:
    return 2.0 * params.t, 4.0 * params.t ** 2 - 1.0


# --- printed ------------------------------------------------------------------

def printed_a2_bound(params: ClassParams) -> float:
    t, l2, l3 = params.t, params.lambda2, params.lambda3
    radicand = 4.0 * t * t * l3 ** 2 - (8.0 * t * t - 2.0) * l2
    if radicand <= 0.0:
        raise BoundUndefined(f"bound undefined: radicand {radicand!r} <= 0")
    return 2.0 * t * math.sqrt(2.0 * t) / math.sqrt(radicand)


def printed_a3_bound(params: ClassParams) -> float:
    t = params.t
    return 2.0 * t / params.lambda3 + 16.0 * t * t / params.lambda2 ** 2


def sigma_printed(params: ClassParams, r: float) -> float:
    u1, u2 = _u(params)
    den = 2.0 * (u1 ** 3 * params.lambda3 ** 2 - u2 * params.lambda2)
    if den == 0.0:
        raise BoundUndefined("bound undefined: sigma denominator vanishes")
    return (1.0 - r) * u1 * u1 / den


def _fs_piecewise(u1: float, l3: float, sigma: float, literal: bool) -> tuple[float, str]:
    if abs(sigma) <= 1.0 / (2.0 * l3):
        return abs(u1) / l3, SMALL_SIGMA
    value = 2.0 * abs(u1) * abs(sigma)
    return (value / l3 if literal else value), LARGE_SIGMA


def printed_fs_bound(params: ClassParams, r: float, literal: bool = False) -> tuple[float, str]:
    """Piecewise bound on ``|a3 - r a2**2|`` with the literal ``sigma``.

    The large-sigma branch as written carries an extra ``1 / Lambda_3``, which
    makes the bound jump at the threshold.  ``literal=True`` keeps that
    factor; the default drops it so both branches meet continuously.
    """
    u1, _ = _u(params)
    return _fs_piecewise(u1, params.lambda3, sigma_printed(params, r), literal)


# --- derived ------------------------------------------------------------------

def _derived_den(params: ClassParams) -> float:
    u1, u2 = _u(params)
    return u1 * u1 * params.lambda3 - u2 * params.lambda2 ** 2


def derived_a2_bound(params: ClassParams) -> float:
    t = params.t
    linear = 2.0 * t / params.lambda2
    den = _derived_den(params)
    if abs(den) < DEGENERATE_TOL:
        return linear
    return min(linear, 2.0 * t * math.sqrt(2.0 * t) / math.sqrt(abs(den)))


def derived_a3_bound(params: ClassParams) -> float:
    t = params.t
    return 2.0 * t / params.lambda3 + 4.0 * t * t / params.lambda2 ** 2


def sigma_derived(params: ClassParams, r: float) -> float:
    den = _derived_den(params)
    if abs(den) < DEGENERATE_TOL:
        raise DegenerateDenominator("U1^2 Lambda_3 - U2 Lambda_2^2 vanishes")
    u1, _ = _u(params)
    return (1.0 - r) * u1 * u1 / (2.0 * den)


def derived_fs_bound(params: ClassParams, r: float,
                     fallback: bool = False) -> tuple[float, str]:
    """Re-derived bound on ``|a3 - r a2**2|``.

    When ``U1**2 Lambda_3 = U2 Lambda_2**2`` the sum identity forces
    ``q2 = -p2`` and ``sigma`` is undefined.  With ``fallback=True`` the
    bound ``2t / Lambda_3 + |1 - r| 4t**2 / Lambda_2**2`` (tag ``degenerate``)
    is returned instead of raising.
    """
    u1, _ = _u(params)
    try:
        sigma = sigma_derived(params, r)
    except DegenerateDenominator:
        if not fallback:
            raise
        t = params.t
        return (2.0 * t / params.lambda3
                + abs(1.0 - r) * 4.0 * t * t / params.lambda2 ** 2), DEGENERATE
    return _fs_piecewise(u1, params.lambda3, sigma, literal=False)


# --- reports ------------------------------------------------------------------

def _safe(fn, *args):
    try:
        return fn(*args)
    except (BoundUndefined, DegenerateDenominator):
        return None


@dataclass(frozen=True)
class BoundReport:
    """All bound values at one parameter point and (optionally) one ``r``.

    Entries that are undefined at this point are ``None``.
    """

    params: ClassParams
    r: float | None
    printed_a2: float | None
    printed_a3: float
    derived_a2: float
    derived_a3: float
    sigma_printed: float | None = None
    sigma_derived: float | None = None
    fs_printed: float | None = None
    fs_derived: float | None = None
    fs_case_printed: str | None = None
    fs_case_derived: str | None = None

    def to_dict(self) -> dict:
        d = self.params.to_dict()
        d.update(
            r=self.r,
            printed_a2=self.printed_a2,
            printed_a3=self.printed_a3,
            derived_a2=self.derived_a2,
            derived_a3=self.derived_a3,
            sigma_printed=self.sigma_printed,
            sigma_derived=self.sigma_derived,
            fs_printed=self.fs_printed,
            fs_derived=self.fs_derived,
            fs_case=None if self.r is None else {
                "printed": self.fs_case_printed, "derived": self.fs_case_derived},
        )
        return d


def bound_report(params: ClassParams, r: float | None = None,
                 literal: bool = False) -> BoundReport:
    base = dict(
        params=params,
        r=None if r is None else float(r),
        printed_a2=_safe(printed_a2_bound, params),
        printed_a3=printed_a3_bound(params),
        derived_a2=derived_a2_bound(params),
        derived_a3=derived_a3_bound(params),
    )
    if r is None:
        return BoundReport(**base)
    fp = _safe(printed_fs_bound, params, r, literal)
    fd = derived_fs_bound(params, r, fallback=True)
    return BoundReport(
        **base,
        sigma_printed=_safe(sigma_printed, params, r),
        sigma_derived=_safe(sigma_derived, params, r),
        fs_printed=None if fp is None else fp[0],
        fs_derived=fd[0],
        fs_case_printed=None if fp is None else fp[1],
        fs_case_derived=fd[1],
    )


def _ratio(a, b):
    if a is None or b is None or b == 0:
        return None
    return a / b


def _below(a, b):
    """``a < b`` beyond the violation tolerance; ``None`` if either is missing."""
    if a is None or b is None:
        return None
    return bool(a < b - VIOLATION_TOL)


@dataclass
class AuditRecord:
    """Printed versus derived (and optionally empirical) values at one point."""

    params: ClassParams
    base: BoundReport
    fs: list[BoundReport] = field(default_factory=list)
    empirical: dict = field(default_factory=dict)

    def entries(self) -> list[dict]:
        """One comparison per functional: ``a2``, ``a3`` and ``fs`` per ``r``."""
        out = [
            self._entry("a2", None, self.base.printed_a2, self.base.derived_a2),
            self._entry("a3", None, self.base.printed_a3, self.base.derived_a3),
        ]
        for rep in self.fs:
            out.append(self._entry("fs", rep.r, rep.fs_printed, rep.fs_derived))
        return out

    def _entry(self, functional, r, printed, derived) -> dict:
        emp = self.empirical.get((functional, r), {})
        entry = {
            "functional": functional,
            "r": r,
            "printed": printed,
            "derived": derived,
            "ratio_printed_to_derived": _ratio(printed, derived),
            "printed_below_derived": _below(printed, derived),
        }
        for mode in sorted(emp):
            entry[f"empirical_{mode}"] = emp[mode]
            entry[f"printed_below_empirical_{mode}"] = _below(printed, emp[mode])
            entry[f"derived_below_empirical_{mode}"] = _below(derived, emp[mode])
        return entry

    def to_dict(self) -> dict:
        d = self.params.to_dict()
        d["bounds"] = [self.base.to_dict()] + [rep.to_dict() for rep in self.fs]
        d["comparisons"] = self.entries()
        return d


def audit(grid: Iterable[tuple[ClassParams, Sequence[float]]],
          extremal: Iterable | None = None,
          literal: bool = False) -> list[AuditRecord]:
    """Compare printed with derived bounds at every grid point.

    ``extremal`` is an optional iterable of
    :class:`biuniv.search.ExtremalReport`; its empirical maxima are attached
    to the matching point and functional (per admissibility mode).  Records
    are ordered by ``(delta, t, m)``.
    """
    emp: dict = {}
    for rep in extremal or ():
        key = (rep.params, rep.functional, rep.r)
        emp.setdefault(key, {})[str(rep.mode)] = rep.empirical_max
    records = []
    for params, rs in grid:
        rs = list(rs or ())
        rec = AuditRecord(
            params=params,
            base=bound_report(params, None, literal),
            fs=[bound_report(params, r, literal) for r in rs],
        )
        rec.empirical = {(f, r): modes for (p, f, r), modes in emp.items() if p == params}
        records.append(rec)
    records.sort(key=lambda rec: rec.params)
    return records
