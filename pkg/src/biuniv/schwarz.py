"""Schwarz-function coefficient data ``(p1, p2, q1, q2)``.

Two admissibility bodies are supported:

``paper``
    coefficient-wise unit bounds ``|p1|, |p2|, |q2| <= 1``;
``schur``
    the Schwarz-Pick body ``|p2| <= 1 - |p1|**2`` and ``|q2| <= 1 - |q1|**2``,
    which is exactly the set of second-order coefficient pairs of genuine
    Schwarz functions.

In both cases ``q1 = -p1``.  Schur-mode pairs are generated from Schur
parameters ``(gamma0, gamma1)`` in the closed unit disc through the order-2
lift ``u(z) = z (gamma0 + gamma1 z) / (1 + conj(gamma0) gamma1 z)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import InconsistentPair

__all__ = [
    "Mode",
    "SchurParams",
    "SchwarzPair",
    "coeffs_from_schur",
    "schur_from_coeffs",
    "admissible",
    "schur_lift",
    "verify_bounded",
    "sample",
    "uniforms_to_native",
    "native_to_coeffs",
    "derive_seed",
]

ADMISSIBLE_TOL = 1e-12
TWO_PI = 2.0 * np.pi


class Mode(str, enum.Enum):
    PAPER = "paper"
    SCHUR = "schur"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SchurParams:
    gamma0: complex
    gamma1: complex

    def __post_init__(self):
        if abs(self.gamma0) > 1.0 + ADMISSIBLE_TOL or abs(self.gamma1) > 1.0 + ADMISSIBLE_TOL:
            raise ValueError("Schur parameters must lie in the closed unit disc")


@dataclass(frozen=True)
class SchwarzPair:
    p1: complex
    p2: complex
    q1: complex
    q2: complex
    mode: Mode = Mode.PAPER

    @classmethod
    def from_forward(cls, p1: complex, p2: complex, q2: complex,
                     mode: Mode | str = Mode.PAPER) -> SchwarzPair:
        """Build a pair with ``q1`` set to ``-p1``."""
        p1 = complex(p1)
        return cls(p1, complex(p2), complex(-p1.real, -p1.imag), complex(q2), Mode(mode))

    def to_dict(self) -> dict:
        return {
            "p1": [self.p1.real, self.p1.imag],
            "p2": [self.p2.real, self.p2.imag],
            "q1": [self.q1.real, self.q1.imag],
            "q2": [self.q2.real, self.q2.imag],
            "mode": str(self.mode),
        }


def coeffs_from_schur(s: SchurParams) -> tuple[complex, complex]:
    """First two Taylor coefficients of the order-2 Schur lift."""
    g0 = complex(s.gamma0)
    return g0, (1.0 - abs(g0) ** 2) * complex(s.gamma1)


def schur_from_coeffs(p1: complex, p2: complex) -> SchurParams:
    """Inverse of :func:`coeffs_from_schur`; ``gamma1 = 0`` when ``|p1| = 1``."""
    rest = 1.0 - abs(p1) ** 2
    g1 = 0j if rest <= ADMISSIBLE_TOL else complex(p2) / rest
    return SchurParams(complex(p1), g1)


def admissible(pair: SchwarzPair, tol: float = ADMISSIBLE_TOL) -> bool:
    """Closed-inequality membership test of ``pair`` in its mode's body."""
    if abs(pair.q1 + pair.p1) > tol:
        raise InconsistentPair(f"q1 = {pair.q1!r} is not -p1 = {-pair.p1!r}")
    if Mode(pair.mode) is Mode.PAPER:
        return bool(abs(pair.p1) <= 1 + tol and abs(pair.p2) <= 1 + tol
                    and abs(pair.q2) <= 1 + tol)
    return bool(abs(pair.p1) <= 1 + tol
                and abs(pair.p2) <= 1 - abs(pair.p1) ** 2 + tol
                and abs(pair.q2) <= 1 - abs(pair.q1) ** 2 + tol)


def schur_lift(s: SchurParams, z):
    """Evaluate ``u(z) = z (g0 + g1 z) / (1 + conj(g0) g1 z)``."""
    z = np.asarray(z, dtype=complex)
    g0, g1 = complex(s.gamma0), complex(s.gamma1)
    return z * (g0 + g1 * z) / (1.0 + np.conj(g0) * g1 * z)


def _disc_samples(samples: int, radius: float) -> np.ndarray:
    """Half the points on the circle of ``radius``, half on a Vogel spiral inside."""
    n_edge = max(1, samples // 2)
    n_in = max(0, samples - n_edge)
    edge = radius * np.exp(1j * TWO_PI * np.arange(n_edge) / n_edge)
    k = np.arange(n_in)
    golden = np.pi * (3.0 - np.sqrt(5.0))
    inner = radius * np.sqrt((k + 0.5) / max(n_in, 1)) * np.exp(1j * golden * k)
    return np.concatenate([edge, inner])


def verify_bounded(p1: complex, p2: complex, samples: int = 10_000,
                   radius: float = 0.99) -> float:
    """Sampled ``max |u(z)|`` over ``|z| <= radius`` for the lift with data ``(p1, p2)``."""
    z = _disc_samples(int(samples), radius)
    return float(np.max(np.abs(schur_lift(schur_from_coeffs(p1, p2), z))))


# --- sampling -------------------------------------------------------------

def derive_seed(seed: int, *key: int) -> int:
    """Stateless child seed of ``seed`` along ``key`` (64-bit)."""
    ss = np.random.SeedSequence(int(seed) & 0xFFFF_FFFF_FFFF_FFFF, spawn_key=tuple(key))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def uniforms_to_native(u: np.ndarray) -> np.ndarray:
    """Map ``(n, 6)`` uniforms to complex native coordinates ``(n, 3)``.

    Columns are (modulus, phase) pairs; the three complex numbers are
    ``(p1, p2, q2)`` in paper mode and ``(gamma0, gamma1, gamma_q)`` in
    schur mode.
    """
    u = np.atleast_2d(u)
    return u[:, 0::2] * np.exp(1j * TWO_PI * u[:, 1::2])


def native_to_coeffs(native: np.ndarray, mode: Mode | str) -> np.ndarray:
    """Complex ``(p1, p2, q2)`` from native coordinates (broadcasts over rows)."""
    native = np.atleast_2d(native)
    if Mode(mode) is Mode.PAPER:
        return native.copy()
    g0, g1, gq = native[:, 0], native[:, 1], native[:, 2]
    rest = 1.0 - np.abs(g0) ** 2
    return np.stack([g0, rest * g1, rest * gq], axis=1)


def sample(seed: int, mode: Mode | str = Mode.PAPER) -> SchwarzPair:
    """Deterministic pseudo-random pair drawn from ``seed`` alone."""
    rng = np.random.default_rng(np.random.SeedSequence(int(seed) & 0xFFFF_FFFF_FFFF_FFFF))
    p1, p2, q2 = native_to_coeffs(uniforms_to_native(rng.random((1, 6))), mode)[0]
    return SchwarzPair.from_forward(p1, p2, q2, mode)
