"""Sensor, attack and network parameters, and the report marginals seen
by the fusion center.

All value types are frozen dataclasses that validate on construction;
invalid parameters raise :class:`~byzfusion.errors.ValidationError` rather
than being clamped.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import special

from .errors import DegenerateModelError, ValidationError


def _check_real(name, value):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{name} must be a real number, got {value!r}")
    if not math.isfinite(value):
        raise ValidationError(f"{name} must be finite, got {value!r}")


def _check_unit(name, value, *, open_interval=False):
    _check_real(name, value)
    if open_interval:
        if not 0.0 < value < 1.0:
            raise ValidationError(f"{name} must lie in (0, 1), got {value!r}")
    elif not 0.0 <= value <= 1.0:
        raise ValidationError(f"{name} must lie in [0, 1], got {value!r}")


@dataclass(frozen=True)
class SensorOperatingPoint:
    """Local detector operating point: ``pd = P(v=1|H1)``, ``pf = P(v=1|H0)``."""

    pd: float
    pf: float

    def __post_init__(self):
        _check_unit("pd", self.pd, open_interval=True)
        _check_unit("pf", self.pf, open_interval=True)
        if not self.pf < self.pd:
            raise ValidationError(
                f"sensor requires pf < pd, got pd={self.pd!r}, pf={self.pf!r}"
            )


@dataclass(frozen=True)
class AttackStrategy:
    """Byzantine flipping probabilities.

    ``p10`` is the probability of reporting 1 when the local decision is 0,
    ``p01`` the probability of reporting 0 when the local decision is 1.
    """

    p10: float
    p01: float

    def __post_init__(self):
        _check_unit("p10", self.p10)
        _check_unit("p01", self.p01)


HONEST = AttackStrategy(0.0, 0.0)


@dataclass(frozen=True)
class NetworkParams:
    alpha: float
    p0: float
    p1: float
    n: int

    def __post_init__(self):
        _check_unit("alpha", self.alpha)
        _check_unit("p0", self.p0, open_interval=True)
        _check_unit("p1", self.p1, open_interval=True)
        if abs(self.p0 + self.p1 - 1.0) > 1e-12:
            raise ValidationError(
                f"priors must sum to 1, got p0={self.p0!r}, p1={self.p1!r}"
            )
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise ValidationError(f"n must be a positive integer, got {self.n!r}")

    @classmethod
    def uniform(cls, n, alpha=0.0):
        return cls(alpha=alpha, p0=0.5, p1=0.5, n=n)


@dataclass(frozen=True)
class FusedMarginals:
    """``pi10 = P(u=1|H0)`` and ``pi11 = P(u=1|H1)`` for a single report."""

    pi10: float
    pi11: float

    def __post_init__(self):
        _check_unit("pi10", self.pi10)
        _check_unit("pi11", self.pi11)

    @property
    def gap(self):
        return self.pi11 - self.pi10

    def complemented(self):
        """Marginals of the relabelled problem (hypotheses swapped, report bits flipped)."""
        return FusedMarginals(1.0 - self.pi11, 1.0 - self.pi10)


@dataclass(frozen=True)
class GaussianSensingModel:
    """Unit-variance Gaussian mean shift: ``y ~ N(0,1)`` under H0 and
    ``N(theta,1)`` under H1, with likelihood-ratio threshold ``lam``."""

    theta: float
    lam: float

    def __post_init__(self):
        _check_real("theta", self.theta)
        _check_real("lambda", self.lam)
        if self.theta <= 0:
            raise ValidationError(f"theta must be > 0, got {self.theta!r}")
        if self.lam <= 0:
            raise ValidationError(f"lambda must be > 0, got {self.lam!r}")

    @property
    def tau(self):
        """Threshold on the raw observation equivalent to the LRT at ``lam``."""
        return math.log(self.lam) / self.theta + self.theta / 2.0


def gaussian_tail(x):
    """Standard normal upper tail Q(x)."""
    return float(special.ndtr(-x))


def marginalize(alpha, attack, sensor):
    """Report probabilities at the fusion center for a Byzantine fraction ``alpha``."""
    _check_unit("alpha", alpha)
    p10, p01 = attack.p10, attack.p01
    pd, pf = sensor.pd, sensor.pf
    pi10 = alpha * (p10 * (1 - pf) + (1 - p01) * pf) + (1 - alpha) * pf
    pi11 = alpha * (p10 * (1 - pd) + (1 - p01) * pd) + (1 - alpha) * pd
    return FusedMarginals(pi10, pi11)


def local_operating_point(model):
    tau = model.tau
    pf = gaussian_tail(tau)
    pd = gaussian_tail(tau - model.theta)
    if not (0.0 < pf < 1.0 and 0.0 < pd < 1.0) or not pf < pd:
        raise DegenerateModelError(
            f"threshold tau={tau!r} gives a degenerate operating point "
            f"(pd={pd!r}, pf={pf!r})"
        )
    return SensorOperatingPoint(pd=pd, pf=pf)


def gaussian_model_for(sensor):
    """Inverse of :func:`local_operating_point`."""
    tau = -float(special.ndtri(sensor.pf))
    theta = tau + float(special.ndtri(sensor.pd))
    return GaussianSensingModel(theta=theta, lam=math.exp(theta * (tau - theta / 2.0)))
