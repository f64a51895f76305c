"""Sudden (free) expansion: overlap coefficients and certified series sums.

When the wall jumps instantly from ``L`` to ``alpha * L`` the old modes
re-expand in the new basis.  The overlap of old level ``n`` with new level
``m`` has the closed form

    b(m, n) = 2 n alpha^(3/2) (-1)^n sin(m pi / alpha) / (pi (m^2 - alpha^2 n^2)),

which is evaluated here through the equivalent cancellation-free rewrite

    b(m, n) = 2 n sqrt(alpha) * sinc((m - alpha n) / alpha) / (m + alpha n),

using ``sinc(x) = sin(pi x)/(pi x)``.  The rewrite is exact for every
``m, n`` and continuous through the resonance ``m = alpha n``, where it
yields the limit ``1 / sqrt(alpha)``.

Mean energy is conserved by the jump: for every level ``n`` and ratio
``alpha > 1`` the energy-weighted squares satisfy

    sum_m 4 alpha m^2 sin^2(m pi / alpha) / (pi^2 (m^2 - alpha^2 n^2)^2) = 1.

:func:`verify_energy_identity` certifies this numerically: it sums the
series directly up to ``M`` terms and bounds the neglected tail rigorously
by splitting ``sin^2 = 1/2 - cos/2``, bracketing the monotone half between
integrals of its closed-form antiderivative and bounding the oscillatory
half by summation by parts against the Dirichlet-kernel bound
``1 / sin(pi / alpha)``.  The same tail machinery certifies the truncation
of :func:`post_expansion_distribution`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .boxmodel import MixedState, _check_level
from .errors import DomainError, TruncationError, VerificationError

_SUM_CHUNK = 1 << 20


@dataclass(frozen=True)
class TruncationReport:
    """Outcome of a certified series truncation.

    ``terms_used`` is the direct-summation cutoff ``M``; ``tail_bound`` is a
    rigorous upper bound on what the truncation neglects; ``achieved_sum`` is
    the directly summed mass.
    """

    terms_used: int
    tail_bound: float
    achieved_sum: float


def _check_alpha(alpha, strict: bool = False) -> float:
    alpha = float(alpha)
    if not math.isfinite(alpha) or alpha < 1.0 or (strict and alpha == 1.0):
        requirement = "exceed 1" if strict else "be at least 1"
        raise DomainError(f"alpha must {requirement}, got {alpha!r}")
    return alpha


def overlap_coefficient(n, m, alpha) -> float:
    """Overlap of old level ``n`` with new level ``m`` after widening by ``alpha``.

    ``alpha = 1`` gives the Kronecker delta; ``m = alpha n`` gives the
    resonant limit ``1/sqrt(alpha)``.
    """
    n = _check_level(n)
    m = _check_level(m)
    alpha = _check_alpha(alpha)
    if alpha == 1.0:
        return 1.0 if m == n else 0.0
    a = alpha * n
    gap = m - a
    return 2.0 * n * math.sqrt(alpha) * float(np.sinc(gap / alpha)) / (m + a)


def level_overlap_squares(n, alpha, m_count: int) -> np.ndarray:
    """Squared overlaps ``b(m, n)^2`` for ``m = 1 .. m_count`` as an array."""
    n = _check_level(n)
    alpha = _check_alpha(alpha)
    if int(m_count) != m_count or m_count < 1:
        raise DomainError(f"m_count must be a positive integer, got {m_count!r}")
    if alpha == 1.0:
        row = np.zeros(int(m_count))
        if n <= m_count:
            row[n - 1] = 1.0
        return row
    m = np.arange(1, int(m_count) + 1, dtype=np.float64)
    a = alpha * n
    s = np.sinc((m - a) / alpha)
    return 4.0 * n * n * alpha * s * s / ((m + a) ** 2)


def _energy_tail_enclosure(n: int, alpha: float, terms: int) -> tuple[float, float]:
    """Certified bracket on the energy-weighted overlap tail beyond ``terms``.

    Requires ``terms >= 2 * alpha * n`` so the envelope is decreasing past the
    cutoff and no resonance sits in the tail.
    """
    a = alpha * n
    M = float(terms)
    scale = 4.0 * alpha / math.pi ** 2

    def envelope(x):
        return scale * x * x / (x * x - a * a) ** 2

    def tail_integral(x0):
        return scale * (
            x0 / (2.0 * (x0 * x0 - a * a))
            + math.log((x0 + a) / (x0 - a)) / (4.0 * a)
        )

    swing = 1.0 / math.sin(math.pi / alpha)
    osc = 0.5 * envelope(M + 1.0) * swing
    lo = max(0.0, 0.5 * tail_integral(M + 1.0) - osc)
    hi = 0.5 * tail_integral(M) + osc
    return lo, hi


def _smallest_terms(bound_at, floor_terms: int, budget: int, target: float) -> int:
    """Least term count in [floor_terms, budget] with ``bound_at(terms) <= target``.

    ``bound_at`` must be non-increasing.  Raises :class:`TruncationError` when
    even ``budget`` terms cannot certify the target.
    """
    if bound_at(floor_terms) <= target:
        return floor_terms
    worst = bound_at(budget)
    if worst > target:
        raise TruncationError(
            f"cannot certify tail <= {target!r} within {budget} terms "
            f"(bound at budget: {worst!r})",
            terms_used=budget,
            tail_bound=worst,
        )
    lo, hi = floor_terms, budget
    while lo < hi:
        mid = (lo + hi) // 2
        if bound_at(mid) <= target:
            hi = mid
        else:
            lo = mid + 1
    return lo


def _identity_partial_sum(n: int, alpha: float, terms: int) -> float:
    """Direct sum of the energy-conservation series up to ``terms`` (fixed order)."""
    a = alpha * n
    total = 0.0
    for start in range(1, terms + 1, _SUM_CHUNK):
        m = np.arange(start, min(start + _SUM_CHUNK, terms + 1), dtype=np.float64)
        s = np.sinc((m - a) / alpha)
        total += float((4.0 * m * m * s * s / (alpha * (m + a) ** 2)).sum())
    return total


def verify_energy_identity(n, alpha, tol, max_terms: int = 100_000_000) -> TruncationReport:
    """Certify that the energy-weighted squared overlaps for level ``n`` sum to 1.

    Sums the series directly until the certified tail bound drops below
    ``tol``, then checks ``|achieved_sum - 1| <= tol``.  Raises
    :class:`TruncationError` if the budget cannot certify the tolerance and
    :class:`VerificationError` (carrying the report) if the residual exceeds
    ``tol``.
    """
    n = _check_level(n)
    alpha = _check_alpha(alpha, strict=True)
    tol = float(tol)
    if not (0.0 < tol <= 1e-4):
        raise DomainError(f"tol must lie in (0, 1e-4], got {tol!r}")
    if int(max_terms) != max_terms or max_terms < 1:
        raise DomainError(f"max_terms must be a positive integer, got {max_terms!r}")

    floor_terms = max(64, int(math.ceil(2.0 * alpha * n)) + 2)
    if floor_terms > max_terms:
        raise TruncationError(
            f"budget {max_terms} is below the minimum cutoff {floor_terms}",
            terms_used=int(max_terms),
            tail_bound=math.inf,
        )
    terms = _smallest_terms(
        lambda M: _energy_tail_enclosure(n, alpha, M)[1],
        floor_terms,
        int(max_terms),
        0.95 * tol,
    )
    achieved = _identity_partial_sum(n, alpha, terms)
    bound = _energy_tail_enclosure(n, alpha, terms)[1]
    report = TruncationReport(terms_used=terms, tail_bound=bound, achieved_sum=achieved)
    if abs(achieved - 1.0) > tol:
        raise VerificationError(
            f"partial sum {achieved!r} misses 1 by more than {tol!r} "
            f"(residual {achieved - 1.0!r}, tail bound {bound!r})",
            report=report,
        )
    return report


def post_expansion_distribution(state: MixedState, alpha, tail_tol,
                                term_budget: int = 10_000_000) -> tuple[MixedState, TruncationReport]:
    """Populations after a sudden widening by ``alpha``, with certified truncation.

    The new population of level ``m`` is ``sum_n w_n b(m, n)^2``.  The cutoff
    ``M`` is chosen so the certified bound on the *relative energy* carried by
    the neglected levels is at most ``tail_tol``; every neglected level lies
    above the initial mean energy, so the neglected probability mass obeys the
    same bound.  The returned state is explicitly renormalized; the raw
    captured mass is reported as ``achieved_sum`` (raw weights are
    ``weights * achieved_sum``) and the certified bound as ``tail_bound``.
    """
    alpha = _check_alpha(alpha)
    tail_tol = float(tail_tol)
    if not (0.0 < tail_tol <= 1e-3):
        raise DomainError(f"tail_tol must lie in (0, 1e-3], got {tail_tol!r}")
    if alpha == 1.0:
        return state, TruncationReport(
            terms_used=int(state.levels[-1]), tail_bound=0.0, achieved_sum=1.0
        )

    levels = state.levels.astype(np.float64)
    weights = state.weights
    energy_share = weights * levels * levels
    energy_share = energy_share / energy_share.sum()
    n_max = int(state.levels[-1])
    floor_terms = max(64, int(math.ceil(2.0 * alpha * n_max)) + 2)
    if floor_terms > term_budget:
        raise TruncationError(
            f"budget {term_budget} is below the minimum cutoff {floor_terms}",
            terms_used=int(term_budget),
            tail_bound=math.inf,
        )

    pairs = [(int(n), float(es)) for n, es in zip(state.levels, energy_share)]

    def bound_at(terms: int) -> float:
        return sum(es * _energy_tail_enclosure(n, alpha, terms)[1] for n, es in pairs)

    terms = _smallest_terms(bound_at, floor_terms, int(term_budget), tail_tol)

    new_weights = np.zeros(terms, dtype=np.float64)
    for n, w in zip(state.levels, weights):
        new_weights += float(w) * level_overlap_squares(int(n), alpha, terms)
    achieved = float(new_weights.sum())
    keep = new_weights > 0.0
    out = MixedState(
        np.arange(1, terms + 1, dtype=np.int64)[keep],
        new_weights[keep] / achieved,
    )
    return out, TruncationReport(
        terms_used=terms, tail_bound=bound_at(terms), achieved_sum=achieved
    )


def cosine_series(x, u) -> float:
    """Closed form of ``sum_{m>=1} cos(m x) / (m^2 - u^2)`` for ``x in (0, 2 pi)``.

    Equals ``1/(2u^2) - pi cos((pi - x) u) / (2 u sin(pi u))``.  ``u`` within
    1e-9 of an integer is rejected as a pole.
    """
    x = float(x)
    u = float(u)
    if not 0.0 < x < 2.0 * math.pi:
        raise DomainError(f"x must lie in (0, 2*pi), got {x!r}")
    if not math.isfinite(u) or abs(u - round(u)) <= 1e-9:
        raise DomainError(f"u must stay at least 1e-9 away from integer poles, got {u!r}")
    return 0.5 / (u * u) - math.pi * math.cos((math.pi - x) * u) / (2.0 * u * math.sin(math.pi * u))
