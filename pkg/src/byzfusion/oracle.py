"""Finite-N ground truth for the asymptotic results.

Exact Bayes error of the optimal count-based fusion rule, a Monte Carlo
simulation of the full sensing/flipping/fusion pipeline, and a least-squares
estimate of the error exponent from exact error probabilities.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import stats

from . import kernels
from .chernoff import DEGENERATE_GAP
from .errors import ConsistencyError, DomainError, SizeError, ValidationError
from .model import local_operating_point, marginalize

H0, H1 = "H0", "H1"

MAX_EXACT_N = 100_000
BLOCK_TRIALS = 8192

FIXED_FRACTION = "fixed-fraction"
PER_NODE_BERNOULLI = "per-node-bernoulli"
SAMPLING_MODES = (FIXED_FRACTION, PER_NODE_BERNOULLI)


@dataclass(frozen=True)
class ExponentFit:
    slope: float
    intercept: float
    points: list = field(default_factory=list)
    r_squared: float = float("nan")


@dataclass(frozen=True)
class SimulationReport:
    trials: int
    errors_h0: int
    errors_h1: int
    pe_hat: float
    seed: int
    sampling_mode: str

    @property
    def std_error(self):
        p = self.pe_hat
        return math.sqrt(p * (1.0 - p) / self.trials)


def _xlogy(count, p):
    if count == 0:
        return 0.0
    return -math.inf if p == 0.0 else count * math.log(p)


def _xlog1my(count, p):
    if count == 0:
        return 0.0
    return -math.inf if p == 1.0 else count * math.log1p(-p)


def _log_likelihoods(k, n, m):
    l0 = _xlogy(k, m.pi10) + _xlog1my(n - k, m.pi10)
    l1 = _xlogy(k, m.pi11) + _xlog1my(n - k, m.pi11)
    return l0, l1


def fusion_decision(k, params, m):
    """MAP decision from the number ``k`` of 1-reports out of ``params.n``.

    Ties go to H0.
    """
    n = params.n
    if not 0 <= k <= n:
        raise DomainError(f"k must lie in [0, {n}], got {k!r}")
    l0, l1 = _log_likelihoods(k, n, m)
    if math.log(params.p1) + l1 > math.log(params.p0) + l0:
        return H1
    return H0


def decision_table(params, m):
    """``table[k]`` is 1 where :func:`fusion_decision` returns H1."""
    return np.array(
        [fusion_decision(k, params, m) == H1 for k in range(params.n + 1)],
        dtype=np.uint8,
    )


def log_error_probability(params, m):
    """Natural log of the exact Bayes error of the optimal fusion rule."""
    if params.n > MAX_EXACT_N:
        raise SizeError(f"n={params.n} exceeds the exact-oracle bound {MAX_EXACT_N}")
    return float(
        kernels.log_error_probability(
            params.n, math.log(params.p0), math.log(params.p1), m.pi10, m.pi11
        )
    )


def exact_error_probability(params, m):
    return math.exp(log_error_probability(params, m))


def fixed_fraction_count(alpha, n):
    # small slack so that e.g. 0.29 * 100 counts 29 nodes, not 28
    return min(n, math.floor(alpha * n + 1e-9))


def _block_sizes(trials):
    full, rest = divmod(trials, BLOCK_TRIALS)
    return [BLOCK_TRIALS] * full + ([rest] if rest else [])


def simulate(params, sensor, attack, model, trials, seed, mode=PER_NODE_BERNOULLI,
             workers=1):
    """Monte Carlo estimate of the fusion center's error probability.

    Trials are split into fixed-size blocks, each drawing from its own stream
    keyed on ``(seed, block index)``, so the report does not depend on
    ``workers``.
    """
    if isinstance(trials, bool) or not isinstance(trials, int) or trials < 1:
        raise ValidationError(f"trials must be a positive integer, got {trials!r}")
    if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed < 2**64:
        raise ValidationError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    if mode not in SAMPLING_MODES:
        raise ValidationError(f"mode must be one of {SAMPLING_MODES}, got {mode!r}")
    if workers < 1:
        raise ValidationError(f"workers must be >= 1, got {workers!r}")
    implied = local_operating_point(model)
    if abs(implied.pd - sensor.pd) > 1e-9 or abs(implied.pf - sensor.pf) > 1e-9:
        raise ConsistencyError(
            f"model gives (pd={implied.pd!r}, pf={implied.pf!r}), "
            f"sensor is (pd={sensor.pd!r}, pf={sensor.pf!r})"
        )

    n = params.n
    table = decision_table(params, marginalize(params.alpha, attack, sensor))
    tau, theta = model.tau, model.theta
    n_fixed = fixed_fraction_count(params.alpha, n)

    def run_block(index, size):
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))
        hyp_u = rng.random(size)
        noise = rng.standard_normal((size, n))
        flip_u = rng.random((size, n))
        byz_u = rng.random((size, n)) if mode == PER_NODE_BERNOULLI else None
        return kernels.simulate_block(
            hyp_u, noise, flip_u, byz_u, params.p1, theta, tau,
            attack.p10, attack.p01, n_fixed, params.alpha, table,
        )

    sizes = _block_sizes(trials)
    if workers == 1:
        results = [run_block(i, s) for i, s in enumerate(sizes)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_block, range(len(sizes)), sizes))
    e0 = sum(r[0] for r in results)
    e1 = sum(r[1] for r in results)
    return SimulationReport(
        trials=trials, errors_h0=e0, errors_h1=e1, pe_hat=(e0 + e1) / trials,
        seed=seed, sampling_mode=mode,
    )


def fit_error_exponent(params, m, n_values):
    """Least-squares slope of ``-ln P_E(n)`` against ``n``.

    ``params`` supplies the priors; its ``n`` is ignored.
    """
    if abs(m.pi11 - m.pi10) < DEGENERATE_GAP:
        raise DomainError("blind fusion center: reports carry no information, no exponent")
    ns = [int(n) for n in n_values]
    if len(ns) < 2:
        raise DomainError("need at least two sensor counts to fit a slope")
    if any(b <= a for a, b in zip(ns, ns[1:])) or ns[0] < 1:
        raise DomainError(f"n_values must be positive and strictly increasing, got {ns}")
    points = []
    for n in ns:
        points.append((n, log_error_probability(replace(params, n=n), m)))
    x = np.array(ns, dtype=float)
    y = -np.array([lp for _, lp in points])
    reg = stats.linregress(x, y)
    return ExponentFit(
        slope=float(reg.slope), intercept=float(reg.intercept), points=points,
        r_squared=float(reg.rvalue**2),
    )
