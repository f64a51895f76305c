"""Reversible strokes: adiabatic and isothermal wall motion.

An adiabatic stroke freezes the populations, so the mean energy follows
``E(L) = E(L0) * L0^2 / L^2`` and the wall obeys ``F * L^3 = const``.  An
isothermal stroke instead holds the mean energy fixed while the populations
redistribute; any population path satisfying the constraint yields the same
equation of state ``F(L) = 2 E / L``, i.e. ``L * F = const``.

The concrete isothermal population path used here is the staircase through
adjacent level pairs: on ``L in [k*L_base, (k+1)*L_base]`` only levels ``k``
and ``k+1`` are populated, with

    w_{k+1} = ((L/L_base)^2 - k^2) / (2k + 1),    w_k = 1 - w_{k+1},

where ``L_base`` is the width at which the ground state alone carries the
fixed energy.  At exact integer multiples of ``L_base`` the state is pure, so
the path is continuous; work, heat and efficiency are path-independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import quadrature
from .boxmodel import (
    DEFAULT_PARAMS,
    MixedState,
    WellParams,
    _check_width,
    eigenenergy,
    entropy,
    expectation_energy,
    wall_force,
)
from .errors import DomainError, IsothermRangeError, QuadratureError

# Relative mismatch tolerated between a declared fixed energy and the
# ground-state energy at the declared base width.
_ENERGY_MATCH_RTOL = 1e-9


class StrokeKind(Enum):
    ISOTHERMAL = "isothermal"
    ADIABATIC = "adiabatic"


@dataclass(frozen=True)
class ProcessSample:
    """One (width, force, energy, entropy, populations) record along a stroke."""

    stroke_index: int
    stroke_kind: str
    L: float
    force: float
    energy: float
    entropy: float
    populations: tuple[tuple[int, float], ...]


@dataclass(frozen=True)
class Stroke:
    """One reversible process segment.

    ``conserved`` is the fixed mean energy for an isothermal stroke and the
    constant ``E * L^2`` coefficient for an adiabatic one.  ``base_scale`` is
    the isotherm's ground-state width (``None`` on adiabats).  Zero-length
    strokes (``L_start == L_end``) are permitted and carry zero work.
    """

    kind: StrokeKind
    L_start: float
    L_end: float
    state_start: MixedState
    conserved: float
    params: WellParams
    base_scale: float | None = None
    level_window: tuple[int, ...] = ()

    def state_at(self, L) -> MixedState:
        if self.kind is StrokeKind.ADIABATIC:
            _check_width(L)
            return self.state_start
        return isothermal_state_at(self.conserved, L, self.base_scale, self.params)

    def force_at(self, L) -> float:
        return wall_force(self.state_at(L), L, self.params)

    def energy_at(self, L) -> float:
        return expectation_energy(self.state_at(L), L, self.params)


def adiabatic_stroke(state: MixedState, L_from, L_to,
                     params: WellParams = DEFAULT_PARAMS) -> Stroke:
    """Stroke at frozen populations from width ``L_from`` to ``L_to``."""
    L_from = _check_width(L_from, "L_from")
    L_to = _check_width(L_to, "L_to")
    e_start = expectation_energy(state, L_from, params)
    return Stroke(
        kind=StrokeKind.ADIABATIC,
        L_start=L_from,
        L_end=L_to,
        state_start=state,
        conserved=e_start * L_from * L_from,
        params=params,
    )


def isothermal_state_at(e_fixed, L, base_scale, params: WellParams = DEFAULT_PARAMS) -> MixedState:
    """Staircase state holding mean energy ``e_fixed`` at width ``L``.

    ``e_fixed`` must equal the ground-state energy at ``base_scale``.  Raises
    :class:`IsothermRangeError` for ``L < base_scale``, where the required
    populations would turn negative.
    """
    L = _check_width(L)
    base_scale = _check_width(base_scale, "base_scale")
    e_fixed = float(e_fixed)
    ground = eigenenergy(1, base_scale, params)
    if not math.isfinite(e_fixed) or abs(e_fixed - ground) > _ENERGY_MATCH_RTOL * ground:
        raise DomainError(
            f"fixed energy {e_fixed!r} does not match the ground-state energy "
            f"{ground!r} at base width {base_scale!r}"
        )
    ratio = L / base_scale
    if ratio < 1.0 - 1e-12:
        raise IsothermRangeError(
            f"width {L!r} lies below the isotherm validity window starting at {base_scale!r}"
        )
    ratio = max(ratio, 1.0)
    k = int(ratio)
    w_upper = (ratio * ratio - k * k) / (2 * k + 1)
    if w_upper == 0.0:
        return MixedState.pure(k)
    return MixedState.from_pairs([(k, 1.0 - w_upper), (k + 1, w_upper)])


def isothermal_stroke(e_fixed, L_from, L_to, base_scale,
                      params: WellParams = DEFAULT_PARAMS) -> Stroke:
    """Constant-energy stroke between two widths on the same isotherm.

    The wall force along the stroke is ``2 * e_fixed / L`` regardless of the
    population path.
    """
    state_from = isothermal_state_at(e_fixed, L_from, base_scale, params)
    state_to = isothermal_state_at(e_fixed, L_to, base_scale, params)
    lo = int(min(state_from.levels[0], state_to.levels[0]))
    hi = int(max(state_from.levels[-1], state_to.levels[-1]))
    return Stroke(
        kind=StrokeKind.ISOTHERMAL,
        L_start=float(L_from),
        L_end=float(L_to),
        state_start=state_from,
        conserved=float(e_fixed),
        params=params,
        base_scale=float(base_scale),
        level_window=tuple(range(lo, hi + 1)),
    )


def stroke_work(stroke: Stroke) -> float:
    """Closed-form work done by the system along the stroke.

    Expansion is positive; zero-length strokes return 0.  Isothermal:
    ``2 E ln(L_end/L_start)``.  Adiabatic: ``E(L_start) - E(L_end)``.
    """
    if stroke.L_start == stroke.L_end:
        return 0.0
    if stroke.kind is StrokeKind.ISOTHERMAL:
        return 2.0 * stroke.conserved * math.log(stroke.L_end / stroke.L_start)
    return stroke.energy_at(stroke.L_start) - stroke.energy_at(stroke.L_end)


def stroke_work_quadrature(stroke: Stroke, rel_tol: float = 1e-10) -> float:
    """Work by adaptive quadrature of the sampled wall force.

    Independent of the closed forms in :func:`stroke_work`: the integrand is
    the population-weighted force at each sampled width.  The a-posteriori
    estimate must come out below ``rel_tol`` times the integral, else a
    :class:`QuadratureError` is raised.
    """
    if not (0.0 < rel_tol <= 1e-4):
        raise DomainError(f"rel_tol must lie in (0, 1e-4], got {rel_tol!r}")
    if stroke.L_start == stroke.L_end:
        return 0.0
    # Integrate at a quarter of the requested tolerance so the accumulated
    # estimate clears rel_tol * |value| with margin.
    value, estimate = quadrature.integrate(
        stroke.force_at, stroke.L_start, stroke.L_end, rel_tol=rel_tol / 4.0
    )
    if estimate > rel_tol * abs(value):
        raise QuadratureError(
            f"quadrature error estimate {estimate!r} exceeds {rel_tol!r} * |{value!r}|",
            partial=value,
            error_estimate=estimate,
        )
    return value


def sample_stroke(stroke: Stroke, count: int, stroke_index: int = 1) -> list[ProcessSample]:
    """``count`` records at uniformly spaced widths, endpoints included."""
    if isinstance(count, bool) or int(count) != count or count < 2:
        raise DomainError(f"count must be an integer >= 2, got {count!r}")
    samples = []
    for L in np.linspace(stroke.L_start, stroke.L_end, int(count)):
        L = float(L)
        state = stroke.state_at(L)
        samples.append(
            ProcessSample(
                stroke_index=stroke_index,
                stroke_kind=stroke.kind.value,
                L=L,
                force=wall_force(state, L, stroke.params),
                energy=expectation_energy(state, L, stroke.params),
                entropy=entropy(state),
                populations=state.populations,
            )
        )
    return samples
