"""Eigensystem and mixed-state observables for a particle in a rigid 1-D box.

A particle of mass ``m`` confined to ``[0, L]`` by impenetrable walls has
normalized modes ``sqrt(2/L) sin(n pi x / L)`` with energies
``pi^2 hbar^2 n^2 / (2 m L^2)``.  An ensemble over these levels is described
here purely by its populations ``w_n``; every observable this package
computes is phase-independent, so amplitudes are never stored.  Letting the
wall at ``x = L`` move defines the force on it as ``-dE/dL`` at frozen
populations, which evaluates level by level to ``pi^2 hbar^2 n^2 / (m L^3)``.

Default units are natural (``hbar = m = 1``); both constants are overridable
through :class:`WellParams`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, StateError

# Tolerance on |sum(weights) - 1| accepted at construction.
NORMALIZATION_TOL = 1e-12


def _check_level(n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"level index must be a positive integer, got {n!r}")
    return int(n)


def _check_width(L, name: str = "L") -> float:
    L = float(L)
    if not math.isfinite(L) or L <= 0.0:
        raise DomainError(f"{name} must be positive and finite, got {L!r}")
    return L


@dataclass(frozen=True)
class WellParams:
    """Physical constants fixing the energy scale hbar^2 / (mass * length^2)."""

    hbar: float = 1.0
    mass: float = 1.0

    def __post_init__(self):
        for name in ("hbar", "mass"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be positive and finite, got {value!r}")


DEFAULT_PARAMS = WellParams()


@dataclass(frozen=True, eq=False)
class MixedState:
    """Finite population vector over box levels.

    ``levels`` are distinct positive integers in ascending order; ``weights``
    are the matching populations, nonnegative and summing to one within
    ``NORMALIZATION_TOL``.  Instances are immutable (arrays are marked
    read-only) and safe to share between threads.
    """

    levels: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        levels = np.asarray(self.levels, dtype=np.int64).copy()
        weights = np.asarray(self.weights, dtype=np.float64).copy()
        if levels.ndim != 1 or weights.ndim != 1 or levels.shape != weights.shape:
            raise StateError("levels and weights must be 1-D sequences of equal length")
        if levels.size == 0:
            raise StateError("a state needs at least one populated level")
        if np.any(levels < 1):
            raise StateError("levels must be positive integers")
        if levels.size > 1 and np.any(np.diff(levels) <= 0):
            raise StateError("levels must be distinct and sorted ascending")
        if not np.all(np.isfinite(weights)):
            raise StateError("weights must be finite")
        if np.any(weights < 0.0):
            raise StateError("weights must be nonnegative")
        total = float(weights.sum())
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise StateError(
                f"populations must sum to 1 within {NORMALIZATION_TOL:g}, got {total!r}"
            )
        levels.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def pure(cls, n) -> "MixedState":
        """State fully concentrated on level ``n``."""
        return cls(np.array([_check_level(n)]), np.array([1.0]))

    @classmethod
    def from_pairs(cls, pairs, renormalize: bool = False) -> "MixedState":
        """Build from ``{level: weight}`` or an iterable of ``(level, weight)`` pairs.

        With ``renormalize=True`` the weights are divided by their sum; this is
        the intended entry point for truncated series output whose raw sum
        falls short of one.
        """
        if isinstance(pairs, dict):
            pairs = pairs.items()
        items = sorted((_check_level(n), float(w)) for n, w in pairs)
        levels = np.array([n for n, _ in items], dtype=np.int64)
        weights = np.array([w for _, w in items], dtype=np.float64)
        if levels.size > 1 and np.any(np.diff(levels) == 0):
            raise StateError("duplicate level in population pairs")
        if renormalize:
            total = float(weights.sum())
            if not (total > 0.0 and math.isfinite(total)):
                raise StateError(f"cannot renormalize weights summing to {total!r}")
            weights = weights / total
        return cls(levels, weights)

    @property
    def populations(self) -> tuple[tuple[int, float], ...]:
        return tuple((int(n), float(w)) for n, w in zip(self.levels, self.weights))

    @property
    def support_size(self) -> int:
        return int(self.levels.size)

    @property
    def is_pure(self) -> bool:
        return bool(np.count_nonzero(self.weights) == 1)

    def __repr__(self):
        body = ", ".join(f"{n}: {w:.6g}" for n, w in self.populations)
        return f"MixedState({{{body}}})"


def eigenenergy(n, L, params: WellParams = DEFAULT_PARAMS) -> float:
    """Energy of level ``n`` in a box of width ``L``: pi^2 hbar^2 n^2 / (2 m L^2)."""
    n = _check_level(n)
    L = _check_width(L)
    return 0.5 * (math.pi * params.hbar * n) ** 2 / (params.mass * L * L)


def eigenfunction_value(n, L, x) -> float:
    """Value of the normalized mode ``n`` at position ``x`` in ``[0, L]``."""
    n = _check_level(n)
    L = _check_width(L)
    x = float(x)
    if not 0.0 <= x <= L:
        raise DomainError(f"x must lie in [0, {L}], got {x!r}")
    return math.sqrt(2.0 / L) * math.sin(n * math.pi * x / L)


def _level_square_sum(state: MixedState) -> float:
    n = state.levels.astype(np.float64)
    return float(np.dot(state.weights, n * n))


def expectation_energy(state: MixedState, L, params: WellParams = DEFAULT_PARAMS) -> float:
    """Population-weighted mean energy of ``state`` at width ``L``."""
    L = _check_width(L)
    return 0.5 * (math.pi * params.hbar) ** 2 * _level_square_sum(state) / (params.mass * L * L)


def wall_force(state: MixedState, L, params: WellParams = DEFAULT_PARAMS) -> float:
    """Force on the moving wall at frozen populations, ``-dE/dL``.

    Satisfies ``wall_force(s, L) * L == 2 * expectation_energy(s, L)`` up to
    rounding, since both are the same weighted sum of ``n^2``.
    """
    L = _check_width(L)
    return (math.pi * params.hbar) ** 2 * _level_square_sum(state) / (params.mass * L ** 3)


def entropy(state: MixedState) -> float:
    """Population entropy ``-sum(w ln w)`` with ``0 ln 0 := 0`` (dimensionless)."""
    w = state.weights[state.weights > 0.0]
    return float(-(w * np.log(w)).sum()) + 0.0
