"""Seeded random search with compass refinement over admissible Schwarz data.

The feasible set is parameterized by the forward data ``(p1, p2)``; ``q1 =
-p1`` and ``q2`` is the value forced by the inverse-side equations, kept only
if it satisfies the mode's constraint.  Objectives are closed forms in
``(p1, p2)``, so no series are built during the search.

Randomness is split into fixed-size chunks whose generators derive from
``(seed, chunk index)``.  Chunks may run on several threads
(``BIUNIV_THREADS``); the reduction is a total order, so results do not
depend on scheduling.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import bounds
from .gsigma import ClassParams, _a_from_p, _q2_from_p
from .schwarz import (ADMISSIBLE_TOL, Mode, SchwarzPair, derive_seed,
                      native_to_coeffs, uniforms_to_native)

__all__ = [
    "FUNCTIONALS",
    "SearchConfig",
    "ExtremalReport",
    "evaluate_functional",
    "maximize",
    "sweep",
    "worker_count",
]

FUNCTIONALS = ("a2", "a3", "fs")
CHUNK_SIZE = 16_384
VIOLATION_TOL = bounds.VIOLATION_TOL
THREADS_ENV = "BIUNIV_THREADS"


def worker_count() -> int:
    raw = os.environ.get(THREADS_ENV, "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass(frozen=True)
class SearchConfig:
    samples: int = 100_000
    seed: int = 42
    mode: Mode = Mode.PAPER
    refine_steps: int = 200
    refine_shrink: float = 0.7
    refine_step: float = 0.1
    workers: int | None = None

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if not 0.0 < self.refine_shrink < 1.0:
            raise ValueError("refine_shrink must lie in (0, 1)")
        if self.refine_steps < 0:
            raise ValueError("refine_steps must be >= 0")
        object.__setattr__(self, "mode", Mode(self.mode))

    def with_seed(self, seed: int) -> SearchConfig:
        return SearchConfig(self.samples, seed, self.mode, self.refine_steps,
                            self.refine_shrink, self.refine_step, self.workers)


@dataclass(frozen=True)
class ExtremalReport:
    functional: str
    r: float | None
    mode: Mode
    params: ClassParams
    empirical_max: float
    argmax: SchwarzPair | None
    bound_printed: float | None
    bound_derived: float
    margin_derived: float
    violation_printed: bool | None
    violation_derived: bool
    seed: int
    samples: int
    feasible_samples: int
    no_feasible_sample: bool = False

    def to_dict(self) -> dict:
        d = {"functional": self.functional, "r": self.r, "mode": str(self.mode)}
        d.update(self.params.to_dict())
        d.update(
            empirical_max=self.empirical_max,
            argmax=None if self.argmax is None else self.argmax.to_dict(),
            bound_printed=self.bound_printed,
            bound_derived=self.bound_derived,
            margin_derived=self.margin_derived,
            violation_printed=self.violation_printed,
            violation_derived=self.violation_derived,
            seed=self.seed,
            samples=self.samples,
            feasible_samples=self.feasible_samples,
            no_feasible_sample=self.no_feasible_sample,
        )
        return d


# --- objectives ---------------------------------------------------------------

def _feasible(p1, q2, mode: Mode):
    limit = 1.0 if mode is Mode.PAPER else 1.0 - np.abs(p1) ** 2
    return np.abs(q2) <= limit + ADMISSIBLE_TOL


def evaluate_functional(functional: str, params: ClassParams, p1, p2,
                        r: float | None = None, mode: Mode | str = Mode.PAPER):
    """``|a2|``, ``|a3|`` or ``|a3 - r a2**2|`` at forward data ``(p1, p2)``.

    Infeasible points (induced ``q2`` outside the mode's constraint) get
    ``-inf``.
    """
    p1 = np.asarray(p1, dtype=complex)
    p2 = np.asarray(p2, dtype=complex)
    a2, a3 = _a_from_p(p1, p2, params)
    ok = _feasible(p1, _q2_from_p(p1, p2, params), Mode(mode))
    return np.where(ok, _functional_value(functional, r, a2, a3), -np.inf)


def _functional_value(functional, r, a2, a3):
    if functional == "a2":
        return np.abs(a2)
    if functional == "a3":
        return np.abs(a3)
    if functional == "fs":
        if r is None:
            raise ValueError("the Fekete-Szego functional needs r")
        return np.abs(a3 - r * a2 * a2)
    raise ValueError(f"unknown functional {functional!r}")


def _keys(native: np.ndarray) -> np.ndarray:
    """Tie-break keys ``(|n0|, |n1|, arg n0, arg n1)``, smaller wins."""
    n0, n1 = native[:, 0], native[:, 1]
    return np.stack([np.abs(n0), np.abs(n1),
                     np.mod(np.angle(n0), 2 * np.pi), np.mod(np.angle(n1), 2 * np.pi)],
                    axis=1)


@dataclass(order=True)
class _Best:
    """Sortable incumbent: larger value first, then lexicographically smaller key."""

    neg_value: float
    key: tuple
    native: tuple = field(compare=False)
    index: int = field(default=0, compare=False)

    @property
    def value(self) -> float:
        return -self.neg_value


def _best_in(values: np.ndarray, native: np.ndarray) -> _Best | None:
    top = np.max(values)
    if not np.isfinite(top):
        return None
    idx = np.flatnonzero(values == top)
    keys = _keys(native[idx])
    pick = idx[np.lexsort(keys.T[::-1])[0]] if idx.size > 1 else idx[0]
    return _Best(-float(top), tuple(_keys(native[pick : pick + 1])[0]),
                 tuple(complex(x) for x in native[pick]), int(pick))


# --- sampling phase -------------------------------------------------------------

def _chunk_bounds(samples: int) -> list[tuple[int, int]]:
    return [(i, min(CHUNK_SIZE, samples - i * CHUNK_SIZE))
            for i in range((samples + CHUNK_SIZE - 1) // CHUNK_SIZE)]


def _run_chunk(params, targets, mode, seed, chunk, size):
    rng = np.random.default_rng(np.random.SeedSequence(
        int(seed) & 0xFFFF_FFFF_FFFF_FFFF, spawn_key=(chunk,)))
    native = uniforms_to_native(rng.random((size, 6)))
    p = native_to_coeffs(native, mode)
    p1, p2 = p[:, 0], p[:, 1]
    a2, a3 = _a_from_p(p1, p2, params)
    ok = _feasible(p1, _q2_from_p(p1, p2, params), mode)
    out = []
    for functional, r in targets:
        vals = np.where(ok, _functional_value(functional, r, a2, a3), -np.inf)
        out.append(_best_in(vals, native))
    return int(np.count_nonzero(ok)), out


def _sample_phase(params, targets, config: SearchConfig, seed: int):
    chunks = _chunk_bounds(config.samples)
    workers = config.workers or worker_count()
    job = lambda cs: _run_chunk(params, targets, config.mode, seed, *cs)  # noqa: E731
    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(job, chunks))
    else:
        results = [job(cs) for cs in chunks]
    feasible = sum(n for n, _ in results)
    best = []
    for j in range(len(targets)):
        cands = [res[j] for _, res in results if res[j] is not None]
        best.append(min(cands) if cands else None)
    return feasible, best


# --- refinement ---------------------------------------------------------------

def _to_native(x: np.ndarray) -> np.ndarray:
    """Real coordinates ``(|n0|, arg n0, |n1|, arg n1)`` to native complex rows."""
    x = np.atleast_2d(x)
    n0 = x[:, 0] * np.exp(1j * x[:, 1])
    n1 = x[:, 2] * np.exp(1j * x[:, 3])
    return np.stack([n0, n1, np.zeros_like(n0)], axis=1)


def _project(x: np.ndarray) -> np.ndarray:
    x = x.copy()
    x[:, 0::2] = np.clip(x[:, 0::2], 0.0, 1.0)
    x[:, 1::2] = np.mod(x[:, 1::2], 2 * np.pi)
    return x


def _refine(params, functional, r, mode: Mode, best: _Best, config: SearchConfig) -> _Best:
    n0, n1 = best.native[0], best.native[1]
    x = np.array([abs(n0), np.angle(n0) % (2 * np.pi), abs(n1), np.angle(n1) % (2 * np.pi)])
    value, key, native = best.value, best.key, best.native
    step = config.refine_step
    scale = np.array([1.0, np.pi, 1.0, np.pi])
    moves = np.vstack([np.eye(4), -np.eye(4)]) * scale
    for _ in range(config.refine_steps):
        cand_x = _project(x + step * moves)
        cand_native = _to_native(cand_x)
        p = native_to_coeffs(cand_native, mode)
        vals = evaluate_functional(functional, params, p[:, 0], p[:, 1], r, mode)
        cand = _best_in(vals, cand_native)
        if cand is not None and cand.value > value:
            x = cand_x[cand.index]
            value, key, native = cand.value, cand.key, cand.native
        else:
            step *= config.refine_shrink
    return _Best(-value, key, native)


# --- public API -----------------------------------------------------------------

def _bounds_for(functional, params, r):
    if functional == "a2":
        printed = bounds._safe(bounds.printed_a2_bound, params)
        derived = bounds.derived_a2_bound(params)
    elif functional == "a3":
        printed = bounds.printed_a3_bound(params)
        derived = bounds.derived_a3_bound(params)
    else:
        fp = bounds._safe(bounds.printed_fs_bound, params, r)
        printed = None if fp is None else fp[0]
        derived = bounds.derived_fs_bound(params, r, fallback=True)[0]
    return printed, derived


def _report(functional, r, params, config, seed, feasible, best) -> ExtremalReport:
    printed, derived = _bounds_for(functional, params, r)
    if best is None:
        emp, argmax = 0.0, None
    else:
        emp = best.value
        p1, p2, _ = native_to_coeffs(np.array([best.native]), config.mode)[0]
        q2 = complex(_q2_from_p(complex(p1), complex(p2), params))
        argmax = SchwarzPair.from_forward(p1, p2, q2, config.mode)
    return ExtremalReport(
        functional=functional,
        r=None if r is None else float(r),
        mode=config.mode,
        params=params,
        empirical_max=float(emp),
        argmax=argmax,
        bound_printed=printed,
        bound_derived=derived,
        margin_derived=derived - emp,
        violation_printed=None if printed is None else bool(emp > printed + VIOLATION_TOL),
        violation_derived=bool(emp > derived + VIOLATION_TOL),
        seed=int(seed),
        samples=config.samples,
        feasible_samples=feasible,
        no_feasible_sample=best is None,
    )


def _search_point(params: ClassParams, targets, config: SearchConfig, seed: int):
    feasible, best = _sample_phase(params, targets, config, seed)
    reports = []
    for (functional, r), b in zip(targets, best):
        if b is not None and config.refine_steps:
            b = _refine(params, functional, r, config.mode, b, config)
        reports.append(_report(functional, r, params, config, seed, feasible, b))
    return reports


def maximize(functional: str, params: ClassParams, r: float | None = None,
             config: SearchConfig | None = None) -> ExtremalReport:
    """Empirical maximum of one functional at one parameter point.

    If no sample is feasible the report has ``empirical_max = 0`` and
    ``no_feasible_sample = True``.
    """
    config = config or SearchConfig()
    if functional not in FUNCTIONALS:
        raise ValueError(f"unknown functional {functional!r}")
    if (functional == "fs") != (r is not None):
        raise ValueError("r is required for 'fs' and only for 'fs'")
    return _search_point(params, [(functional, r)], config, config.seed)[0]


def _targets(functionals, rs):
    out = []
    for f in functionals:
        if f == "fs":
            out.extend(("fs", float(r)) for r in rs or ())
        else:
            out.append((f, None))
    return out


def sweep(grid: Iterable[tuple[ClassParams, Sequence[float] | None]],
          config: SearchConfig | None = None,
          functionals: Sequence[str] = FUNCTIONALS) -> list[ExtremalReport]:
    """One report per (grid point, functional, r), in grid order.

    Point ``i`` searches with seed ``derive_seed(config.seed, i)``.
    """
    config = config or SearchConfig()
    reports = []
    for i, (params, rs) in enumerate(grid):
        seed = derive_seed(config.seed, i)
        reports.extend(_search_point(params, _targets(functionals, rs), config, seed))
    return reports
