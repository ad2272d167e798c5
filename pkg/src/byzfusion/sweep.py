"""Chernoff information over the grid of flipping probabilities."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .chernoff import chernoff_information
from .errors import ValidationError
from .model import AttackStrategy, SensorOperatingPoint, _check_unit, marginalize

COLUMNS = ("p10", "p01", "pi10", "pi11", "C")


@dataclass(frozen=True)
class SweepSpec:
    sensor: SensorOperatingPoint
    alpha: float
    grid_step: float = 0.05
    output_format: str = "csv"

    def __post_init__(self):
        _check_unit("alpha", self.alpha)
        if not 0.0 < self.grid_step < 1.0:
            raise ValidationError(f"grid_step must lie in (0, 1), got {self.grid_step!r}")
        if abs(self.intervals * self.grid_step - 1.0) > 1e-12:
            raise ValidationError(f"grid_step {self.grid_step!r} does not divide 1")
        if self.output_format not in ("csv", "json"):
            raise ValidationError(f"output_format must be csv or json, got {self.output_format!r}")

    @property
    def intervals(self):
        return round(1.0 / self.grid_step)

    def grid(self):
        """Grid values ``i / intervals``; both 0 and 1 are included exactly."""
        m = self.intervals
        return [i / m for i in range(m + 1)]


def _row(spec, p10, p01):
    m = marginalize(spec.alpha, AttackStrategy(p10, p01), spec.sensor)
    return {"p10": p10, "p01": p01, "pi10": m.pi10, "pi11": m.pi11,
            "C": chernoff_information(m).c}


def chernoff_surface(spec, workers=1):
    """One row per grid point, in lexicographic ``(p10, p01)`` order."""
    points = [(a, b) for a in spec.grid() for b in spec.grid()]
    if workers <= 1:
        return [_row(spec, a, b) for a, b in points]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda ab: _row(spec, *ab), points))
