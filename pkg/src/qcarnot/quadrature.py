"""Adaptive Simpson quadrature with an accumulated a-posteriori error estimate."""

from __future__ import annotations

from .errors import QuadratureError

DEFAULT_REL_TOL = 1e-10
DEFAULT_MAX_INTERVALS = 1_000_000


def integrate(f, a, b, rel_tol: float = DEFAULT_REL_TOL,
              max_intervals: int = DEFAULT_MAX_INTERVALS) -> tuple[float, float]:
    """Integrate ``f`` from ``a`` to ``b`` by adaptive bisection of Simpson panels.

    Returns ``(value, error_estimate)`` where the estimate accumulates the
    Richardson residual of every accepted panel; for smooth integrands it
    bounds the true error.  Panels halve their tolerance share on refinement,
    so the estimate stays below ``rel_tol`` times the initial whole-interval
    magnitude.  Raises :class:`QuadratureError`, carrying the partial result,
    once ``max_intervals`` panel refinements have been spent.
    """
    a = float(a)
    b = float(b)
    if a == b:
        return 0.0, 0.0
    sign = 1.0
    if b < a:
        a, b = b, a
        sign = -1.0

    def simpson(x0, x1, f0, fm, f1):
        return (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1)

    mid = 0.5 * (a + b)
    fa, fmid, fb = f(a), f(mid), f(b)
    whole = simpson(a, b, fa, fmid, fb)
    tol_abs = rel_tol * max(abs(whole), 1e-300)
    min_width = 16.0 * 2.220446049250313e-16 * (b - a)

    total = 0.0
    estimate = 0.0
    used = 0
    stack = [(a, b, fa, fmid, fb, whole, tol_abs)]
    while stack:
        x0, x1, f0, f1, f2, coarse, tol = stack.pop()
        used += 1
        if used > max_intervals:
            partial = total + coarse + sum(item[5] for item in stack)
            raise QuadratureError(
                f"quadrature did not converge within {max_intervals} intervals",
                partial=sign * partial,
                error_estimate=estimate,
            )
        m = 0.5 * (x0 + x1)
        lm = 0.5 * (x0 + m)
        rm = 0.5 * (m + x1)
        flm = f(lm)
        frm = f(rm)
        left = simpson(x0, m, f0, flm, f1)
        right = simpson(m, x1, f1, frm, f2)
        delta = left + right - coarse
        if abs(delta) <= 15.0 * tol or (x1 - x0) <= min_width:
            total += left + right + delta / 15.0
            estimate += abs(delta) / 15.0
        else:
            half = 0.5 * tol
            stack.append((x0, m, f0, flm, f1, left, half))
            stack.append((m, x1, f1, frm, f2, right, half))
    return sign * total, estimate
