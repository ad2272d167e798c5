"""Chernoff information between the two report distributions.

The objective minimized over ``t in [0, 1]`` is

    f(t) = pi10**t * pi11**(1-t) + (1-pi10)**t * (1-pi11)**(1-t)

and ``C = -ln f(t*)``. For ``pi10 < pi11`` the minimizer has a closed form;
:func:`numeric_t_star` is an independent derivative-free search used both as
a test oracle and as the solver when ``pi10 > pi11``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NearDegenerateError, NumericError, OrderingError

DEGENERATE_GAP = 1e-12
BRACKET_DEGENERATE = 1e-14

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ChernoffResult:
    t_star: float
    c: float
    bracket_lo: float | None = None
    bracket_hi: float | None = None

    @property
    def has_bracket(self):
        return self.bracket_lo is not None


def _interior(m):
    a, b = m.pi10, m.pi11
    if not (0.0 < a < 1.0 and 0.0 < b < 1.0):
        raise DomainError(f"marginals must lie in (0, 1), got pi10={a!r}, pi11={b!r}")
    return a, b


def _log_ratios(a, b):
    """Return ``(ln(pi10/pi11), ln((1-pi10)/(1-pi11)))`` without cancellation."""
    return math.log1p((a - b) / b), math.log1p((b - a) / (1.0 - b))


def chernoff_objective(t, m):
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"t must lie in [0, 1], got {t!r}")
    a, b = _interior(m)
    return math.exp(t * math.log(a) + (1.0 - t) * math.log(b)) + math.exp(
        t * math.log1p(-a) + (1.0 - t) * math.log1p(-b)
    )


def _objective_gap(t1, t2, a, b, lr, ls):
    # f(t1) - f(t2) written as two expm1 terms; no subtraction of nearly equal values
    dt = t1 - t2
    return b * math.exp(t2 * lr) * math.expm1(dt * lr) + (1.0 - b) * math.exp(
        t2 * ls
    ) * math.expm1(dt * ls)


def _log_phi(z):
    # ln(log1p(z) / z) for z > 0
    if z < 0.1:
        # (log1p(z) - z) / z = sum_{k>=2} (-z)**(k-1) / k
        g = 0.0
        power = 1.0
        for k in range(2, 40):
            power *= -z
            g += power / k
            if abs(power) < 1e-18:
                break
        return math.log1p(g)
    return math.log(math.log1p(z) / z)


def closed_form_t_star(m):
    """Stationary point of the objective for ``pi10 < pi11``."""
    a, b = _interior(m)
    if not a < b:
        raise OrderingError(
            f"closed form requires pi10 < pi11, got pi10={a!r}, pi11={b!r}"
        )
    if b - a < DEGENERATE_GAP:
        raise NearDegenerateError(
            f"pi11 - pi10 = {b - a!r} is below {DEGENERATE_GAP}; "
            "use chernoff_information, which returns C=0 in this case"
        )
    x = (b - a) / a
    y = (b - a) / (1.0 - b)
    lx = math.log1p(x)  # ln(pi11/pi10)
    ly = math.log1p(y)  # ln((1-pi10)/(1-pi11))
    # numerator is ln(G * pi11 / (1 - pi11)) with G = lx / ly
    t = (lx + _log_phi(x) - _log_phi(y)) / (lx + ly)
    return min(1.0, max(0.0, t))


def numeric_t_star(m, tol=1e-12, max_iter=500):
    """Golden-section search for the minimizer of the (convex) objective.

    Points are compared through the difference of objective values, which is
    evaluated without cancellation, so the search keeps resolving ``t`` long
    after the objective values themselves agree to machine precision.
    """
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    a, b = _interior(m)
    lr, ls = _log_ratios(a, b)
    lo, hi = 0.0, 1.0
    x1 = hi - _INVPHI * (hi - lo)
    x2 = lo + _INVPHI * (hi - lo)
    for _ in range(max_iter):
        if hi - lo <= tol:
            return 0.5 * (lo + hi)
        if _objective_gap(x1, x2, a, b, lr, ls) < 0.0:
            hi = x2
            x2 = x1
            x1 = hi - _INVPHI * (hi - lo)
        else:
            lo = x1
            x1 = x2
            x2 = lo + _INVPHI * (hi - lo)
    raise NumericError(f"golden-section search did not reach tol={tol!r}")


def t_star_bounds(m, sensor):
    """Interval ``(A, B)`` known to contain the optimal ``t*``.

    Valid for ``pd > pf`` and marginals generated with a Byzantine fraction
    below one half, i.e. ``pi10 < pi11``.
    """
    a, b = _interior(m)
    pd, pf = sensor.pd, sensor.pf
    if not pf < pd:
        raise DomainError("bounds require pd > pf")
    if not a < b:
        raise DomainError(
            f"bounds require pi10 < pi11, got pi10={a!r}, pi11={b!r}"
        )
    lx = math.log1p((b - a) / a)
    ly = math.log1p((b - a) / (1.0 - b))
    g1 = lx / ly + 1.0
    upper = b * g1 - 1.0
    lower = 1.0 - a * g1
    if upper < -1e-12 or lower < -1e-12:
        raise NumericError(
            f"pi11*(G+1) >= 1 >= pi10*(G+1) violated: {b * g1!r}, {a * g1!r}"
        )
    if upper < BRACKET_DEGENERATE:
        raise NearDegenerateError(
            f"pi11*(G+1) - 1 = {upper!r}; marginals too close for the bracket"
        )
    y = (b / a) * ((1.0 - b) / (1.0 - a)) * lower / upper
    lo = 1.0 / (((1.0 - pf) / (1.0 - pd)) * y + 1.0)
    hi = 1.0 / ((pf / pd) * y + 1.0)
    return lo, hi


def chernoff_information(m, sensor=None):
    """Chernoff information in nats, with the optimizer and, when a sensor is
    supplied and the preconditions hold, the bracket around it."""
    a, b = m.pi10, m.pi11
    if abs(b - a) < DEGENERATE_GAP:
        return ChernoffResult(t_star=0.5, c=0.0)
    a, b = _interior(m)
    if a < b:
        t = closed_form_t_star(m)
    else:
        t = numeric_t_star(m)
    lr, ls = _log_ratios(a, b)
    gap = _objective_gap(t, 0.0, a, b, lr, ls)  # f(t*) - 1
    if gap > -0.5:
        c = -math.log1p(gap)
    else:
        c = -math.log(chernoff_objective(t, m))
    c = max(0.0, c)
    lo = hi = None
    if sensor is not None and a < b:
        try:
            lo, hi = t_star_bounds(m, sensor)
        except DomainError:
            pass
    return ChernoffResult(t_star=t, c=c, bracket_lo=lo, bracket_hi=hi)
