"""Run configuration: a flat TOML document with dotted keys, e.g.::

    sensor.pd = 0.8
    sensor.pf = 0.2
    network.alpha = 0.2
    attack.p10 = 1.0
    attack.p01 = 1.0
    simulation.trials = 100000

Unknown keys are rejected. Command-line flags override file values.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import ConfigError
from .model import (
    AttackStrategy,
    GaussianSensingModel,
    NetworkParams,
    SensorOperatingPoint,
    gaussian_model_for,
    local_operating_point,
)

DEFAULT_N_VALUES = tuple(range(50, 401, 50))
DEFAULT_GRID_STEP = 0.05

# key -> (expected python types, default)
KEYS = {
    "sensor.pd": ((float, int), None),
    "sensor.pf": ((float, int), None),
    "network.alpha": ((float, int), 0.0),
    "network.p0": ((float, int), 0.5),
    "network.p1": ((float, int), None),
    "network.n": ((int,), 10),
    "attack.p10": ((float, int), 1.0),
    "attack.p01": ((float, int), 1.0),
    "model.theta": ((float, int), None),
    "model.lambda": ((float, int), None),
    "simulation.trials": ((int,), 100_000),
    "simulation.seed": ((int,), None),
    "simulation.mode": ((str,), "per-node-bernoulli"),
    "simulation.workers": ((int,), 1),
    "exponent.n_values": ((list,), list(DEFAULT_N_VALUES)),
    "sweep.grid_step": ((float, int), DEFAULT_GRID_STEP),
}


def _flatten(doc, prefix=""):
    flat = {}
    for key, value in doc.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, name + "."))
        else:
            flat[name] = value
    return flat


def check_values(values):
    for key, value in values.items():
        if key not in KEYS:
            raise ConfigError(f"unknown config key {key!r}")
        types, _ = KEYS[key]
        if value is None:
            continue
        if isinstance(value, bool) or not isinstance(value, types):
            raise ConfigError(f"{key} has wrong type {type(value).__name__}")
        if key == "exponent.n_values" and not all(
            isinstance(v, int) and not isinstance(v, bool) for v in value
        ):
            raise ConfigError("exponent.n_values must be a list of integers")
    return values


def load_config(path):
    try:
        with open(path, "rb") as fh:
            doc = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    return check_values(_flatten(doc))


@dataclass(frozen=True)
class RunConfig:
    sensor: SensorOperatingPoint
    network: NetworkParams
    attack: AttackStrategy
    model: GaussianSensingModel | None
    trials: int
    seed: int
    mode: str
    workers: int
    n_values: tuple
    grid_step: float

    @classmethod
    def from_values(cls, values, default_seed=0):
        """Build and validate a config from a flat key/value mapping."""
        check_values(values)
        v = {k: d for k, (_, d) in KEYS.items()}
        v.update({k: x for k, x in values.items() if x is not None})

        model = None
        if v["model.theta"] is not None or v["model.lambda"] is not None:
            if v["model.theta"] is None or v["model.lambda"] is None:
                raise ConfigError("model.theta and model.lambda must be given together")
            model = GaussianSensingModel(float(v["model.theta"]), float(v["model.lambda"]))
        if v["sensor.pd"] is None or v["sensor.pf"] is None:
            if model is None:
                raise ConfigError("need sensor.pd and sensor.pf (or a sensing model)")
            sensor = local_operating_point(model)
        else:
            sensor = SensorOperatingPoint(float(v["sensor.pd"]), float(v["sensor.pf"]))

        p0 = float(v["network.p0"])
        p1 = float(v["network.p1"]) if v["network.p1"] is not None else 1.0 - p0
        network = NetworkParams(float(v["network.alpha"]), p0, p1, v["network.n"])
        attack = AttackStrategy(float(v["attack.p10"]), float(v["attack.p01"]))
        seed = v["simulation.seed"] if v["simulation.seed"] is not None else default_seed
        return cls(
            sensor=sensor,
            network=network,
            attack=attack,
            model=model,
            trials=v["simulation.trials"],
            seed=seed,
            mode=v["simulation.mode"],
            workers=v["simulation.workers"],
            n_values=tuple(v["exponent.n_values"]),
            grid_step=float(v["sweep.grid_step"]),
        )

    def sensing_model(self):
        """The configured model, or the Gaussian model reproducing the sensor."""
        return self.model if self.model is not None else gaussian_model_for(self.sensor)
