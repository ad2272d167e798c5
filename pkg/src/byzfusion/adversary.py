"""Attacker-side results: blinding, optimal flipping strategies, and the
exponent guaranteed to a fusion center that only knows an upper bound on
the Byzantine fraction."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .chernoff import chernoff_information
from .errors import ValidationError
from .model import AttackStrategy, _check_unit, marginalize

ALPHA_BLIND = 0.5

SUB_BLINDING = "sub-blinding"
BLINDING = "blinding"


@dataclass(frozen=True)
class OptimalAttack:
    representative: AttackStrategy
    regime: str
    blinding_line_sum: float | None = None

    def __post_init__(self):
        if self.regime not in (SUB_BLINDING, BLINDING):
            raise ValidationError(f"unknown regime {self.regime!r}")
        if (self.regime == BLINDING) != (self.blinding_line_sum is not None):
            raise ValidationError("blinding_line_sum is set iff regime is blinding")

    def is_optimal(self, attack, tol=1e-12):
        """Membership in the optimal set: the point (1, 1) below the blinding
        fraction, any point on ``p10 + p01 = 1/alpha`` at or above it."""
        if self.regime == SUB_BLINDING:
            return attack.p10 == 1.0 and attack.p01 == 1.0
        return abs(attack.p10 + attack.p01 - self.blinding_line_sum) <= tol


def blinding_fraction(attack):
    """Byzantine fraction at which ``attack`` makes the reports uninformative."""
    total = attack.p10 + attack.p01
    if total == 0.0:
        return math.inf
    return 1.0 / total


def is_blinded(alpha, attack, sensor, tol=1e-12):
    m = marginalize(alpha, attack, sensor)
    blind = abs(m.pi11 - m.pi10) <= tol
    # pi11 - pi10 = (1 - alpha*(p10+p01)) * (pd - pf)
    line = abs(alpha * (attack.p10 + attack.p01) - 1.0) <= tol / (sensor.pd - sensor.pf)
    if blind != line:
        line_residual = alpha * (attack.p10 + attack.p01) - 1.0
        # the two tests may only disagree within rounding of the tolerance edge
        if abs(abs(line_residual) * (sensor.pd - sensor.pf) - tol) > 1e-15:
            raise AssertionError(
                f"marginal and line blinding tests disagree at alpha={alpha!r}, {attack!r}"
            )
    return blind


def optimal_attack(alpha):
    _check_unit("alpha", alpha)
    if alpha < ALPHA_BLIND:
        return OptimalAttack(AttackStrategy(1.0, 1.0), SUB_BLINDING)
    half = 1.0 / (2.0 * alpha)
    return OptimalAttack(AttackStrategy(half, half), BLINDING, 1.0 / alpha)


def robust_design_exponent(alpha_tilde, sensor):
    """Exponent the fusion center is guaranteed when it designs against the
    worst-case attack at an upper bound ``alpha_tilde`` on the Byzantine fraction."""
    _check_unit("alpha_tilde", alpha_tilde)
    if alpha_tilde >= ALPHA_BLIND:
        return 0.0
    attack = optimal_attack(alpha_tilde).representative
    return chernoff_information(marginalize(alpha_tilde, attack, sensor)).c
