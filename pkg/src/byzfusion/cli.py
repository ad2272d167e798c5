"""Command-line front end.

    byzfusion chernoff --pd 0.6 --pf 0.4 --alpha 0.4 --p10 1 --p01 1
    byzfusion sweep --pd 0.6 --pf 0.4 --alpha 0.8 --out fig2b.csv
    byzfusion blind --alpha 0.8
    byzfusion exponent --config run.toml
    byzfusion simulate --config run.toml --workers 8

Exit status is 0 on success, 2 on invalid parameters or domain errors and
1 on I/O errors.
"""
from __future__ import annotations

import argparse
import math
import os
import sys

from .adversary import blinding_fraction, is_blinded, optimal_attack
from .chernoff import chernoff_information
from .config import RunConfig, load_config
from .emit import to_csv, to_json
from .errors import ByzFusionError, ConfigError
from .model import AttackStrategy, marginalize
from .oracle import (
    MAX_EXACT_N,
    exact_error_probability,
    fit_error_exponent,
    simulate,
)
from .sweep import COLUMNS, SweepSpec, chernoff_surface

SEED_ENV = "BYZFUSION_SEED"

# flag dest -> config key
FLAG_KEYS = {
    "pd": "sensor.pd",
    "pf": "sensor.pf",
    "alpha": "network.alpha",
    "p0": "network.p0",
    "p1": "network.p1",
    "n": "network.n",
    "p10": "attack.p10",
    "p01": "attack.p01",
    "theta": "model.theta",
    "lam": "model.lambda",
    "trials": "simulation.trials",
    "seed": "simulation.seed",
    "mode": "simulation.mode",
    "workers": "simulation.workers",
    "n_values": "exponent.n_values",
    "grid_step": "sweep.grid_step",
}


def _n_values(text):
    """``50,100,150`` or ``start:stop:step`` (stop inclusive)."""
    if ":" in text:
        start, stop, step = (int(p) for p in text.split(":"))
        return list(range(start, stop + 1, step))
    return [int(p) for p in text.split(",") if p]


def _add_common(p):
    p.add_argument("--config", help="TOML config with dotted keys (sensor.pd, ...)")
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), dest="fmt")
    g = p.add_argument_group("scenario")
    g.add_argument("--pd", type=float)
    g.add_argument("--pf", type=float)
    g.add_argument("--alpha", type=float)
    g.add_argument("--p0", type=float)
    g.add_argument("--p1", type=float)
    g.add_argument("--n", type=int)
    g.add_argument("--p10", type=float)
    g.add_argument("--p01", type=float)
    g.add_argument("--theta", type=float)
    g.add_argument("--lambda", type=float, dest="lam")
    g.add_argument("--trials", type=int)
    g.add_argument("--seed", type=int)
    g.add_argument("--mode", choices=("fixed-fraction", "per-node-bernoulli"))
    g.add_argument("--workers", type=int)
    g.add_argument("--n-values", type=_n_values, dest="n_values")
    g.add_argument("--grid-step", type=float, dest="grid_step")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="byzfusion",
        description="Chernoff-information analysis of distributed detection "
        "under Byzantine data falsification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in [
        ("chernoff", "fused marginals, optimal t and Chernoff information"),
        ("sweep", "Chernoff information over the (p10, p01) grid"),
        ("blind", "blinding fraction of an attack, or the optimal attack for alpha"),
        ("exponent", "exact error probabilities and fitted error exponent"),
        ("simulate", "Monte Carlo error probability of the full pipeline"),
    ]:
        _add_common(sub.add_parser(name, help=help_))
    return parser


def _values(args):
    values = load_config(args.config) if args.config else {}
    for dest, key in FLAG_KEYS.items():
        flag = getattr(args, dest, None)
        if flag is not None:
            values[key] = flag
    return values


def _run_config(args, values):
    default_seed = 0
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            default_seed = int(env)
        except ValueError:
            raise ConfigError(f"{SEED_ENV}={env!r} is not an integer") from None
    return RunConfig.from_values(values, default_seed=default_seed)


def _record_output(record, fmt):
    if fmt == "csv":
        cols = list(record)
        return to_csv(cols, [record])
    return to_json(record) + "\n"


def cmd_chernoff(cfg, fmt):
    alpha = cfg.network.alpha
    m = marginalize(alpha, cfg.attack, cfg.sensor)
    res = chernoff_information(m, cfg.sensor)
    record = {
        "pd": cfg.sensor.pd,
        "pf": cfg.sensor.pf,
        "alpha": alpha,
        "p10": cfg.attack.p10,
        "p01": cfg.attack.p01,
        "pi10": m.pi10,
        "pi11": m.pi11,
        "t_star": res.t_star,
        "C": res.c,
        "bracket_lo": res.bracket_lo,
        "bracket_hi": res.bracket_hi,
        "blinded": is_blinded(alpha, cfg.attack, cfg.sensor),
    }
    return _record_output(record, fmt or "json")


def cmd_sweep(cfg, fmt):
    spec = SweepSpec(cfg.sensor, cfg.network.alpha, cfg.grid_step, fmt or "csv")
    rows = chernoff_surface(spec, workers=cfg.workers)
    if spec.output_format == "csv":
        return to_csv(COLUMNS, rows)
    return to_json({
        "schema": "byzantine-fusion v1",
        "pd": spec.sensor.pd,
        "pf": spec.sensor.pf,
        "alpha": spec.alpha,
        "grid_step": spec.grid_step,
        "rows": rows,
    }) + "\n"


def cmd_blind(values, fmt):
    record = {}
    if "attack.p10" in values or "attack.p01" in values:
        attack = AttackStrategy(float(values.get("attack.p10", 0.0)),
                                float(values.get("attack.p01", 0.0)))
        record.update(p10=attack.p10, p01=attack.p01,
                      blinding_fraction=blinding_fraction(attack))
    if "network.alpha" in values:
        alpha = float(values["network.alpha"])
        opt = optimal_attack(alpha)
        record.update(
            alpha=alpha,
            regime=opt.regime,
            optimal_p10=opt.representative.p10,
            optimal_p01=opt.representative.p01,
            blinding_line_sum=opt.blinding_line_sum,
            optimal_set=("p10 = p01 = 1" if opt.blinding_line_sum is None else
                         f"p10 + p01 = {opt.blinding_line_sum!r}"),
        )
    if not record:
        raise ConfigError("blind needs --alpha or an attack (--p10/--p01)")
    return _record_output(record, fmt or "json")


def cmd_exponent(cfg, fmt):
    m = marginalize(cfg.network.alpha, cfg.attack, cfg.sensor)
    fit = fit_error_exponent(cfg.network, m, cfg.n_values)
    c = chernoff_information(m).c
    rows = [{"n": n, "ln_pe": lp, "rate": -lp / n} for n, lp in fit.points]
    summary = {
        "pi10": m.pi10,
        "pi11": m.pi11,
        "slope": fit.slope,
        "intercept": fit.intercept,
        "r_squared": fit.r_squared,
        "C": c,
        "relative_gap": abs(fit.slope - c) / c,
    }
    if fmt == "csv":
        comment = "\n".join(
            ["# byzantine-fusion v1"] + [f"# {k} = {v!r}" for k, v in summary.items()]
        )
        return to_csv(("n", "ln_pe", "rate"), rows, comment=comment)
    return to_json({**summary, "points": rows}) + "\n"


def cmd_simulate(cfg, fmt):
    net = cfg.network
    rep = simulate(net, cfg.sensor, cfg.attack, cfg.sensing_model(), cfg.trials,
                   cfg.seed, cfg.mode, workers=cfg.workers)
    se = rep.std_error
    record = {
        "trials": rep.trials,
        "errors_h0": rep.errors_h0,
        "errors_h1": rep.errors_h1,
        "pe_hat": rep.pe_hat,
        "seed": rep.seed,
        "sampling_mode": rep.sampling_mode,
        "std_error": se,
        "ci95_lo": max(0.0, rep.pe_hat - 1.96 * se),
        "ci95_hi": min(1.0, rep.pe_hat + 1.96 * se),
    }
    if net.n <= MAX_EXACT_N:
        exact = exact_error_probability(net, marginalize(net.alpha, cfg.attack, cfg.sensor))
        sigma = math.sqrt(exact * (1.0 - exact) / rep.trials)
        record["pe_exact"] = exact
        record["z_score"] = (rep.pe_hat - exact) / sigma if sigma > 0 else 0.0
    return _record_output(record, fmt or "json")


def run(argv=None):
    args = build_parser().parse_args(argv)
    values = _values(args)
    if args.command == "blind":
        text = cmd_blind(values, args.fmt)
    else:
        cfg = _run_config(args, values)
        handler = {
            "chernoff": cmd_chernoff,
            "sweep": cmd_sweep,
            "exponent": cmd_exponent,
            "simulate": cmd_simulate,
        }[args.command]
        text = handler(cfg, args.fmt)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    try:
        run(argv)
    except ByzFusionError as exc:
        print(f"byzfusion: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"byzfusion: I/O error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
