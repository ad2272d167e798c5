"""Time the compiled kernels against the numpy fallback.

Run with ``python3 benchmarks/bench_kernels.py``. Both backends are given
identical inputs; the script also checks that their outputs agree.
"""
import argparse
import math
import timeit

import numpy as np

from byzfusion.kernels import BACKENDS


def block_inputs(size, n, seed=0):
    rng = np.random.default_rng(seed)
    table = (np.arange(n + 1) > n // 2).astype(np.uint8)
    return (
        rng.random(size), rng.standard_normal((size, n)), rng.random((size, n)),
        rng.random((size, n)), 0.5, 1.2, 0.6, 0.7, 0.4, 0, 0.3, table,
    )


def best_of(fn, repeat):
    timer = timeit.Timer(fn)
    number, _ = timer.autorange()
    return min(timer.repeat(repeat=repeat, number=number)) / number


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    print("backends:", ", ".join(BACKENDS))
    cases = []
    for size, n in [(8192, 10), (8192, 100)]:
        inputs = block_inputs(size, n)
        cases.append((f"simulate_block {size}x{n}",
                      lambda mod, a=inputs: mod.simulate_block(*a)))
    for n in (1_000, 100_000):
        args_lep = (n, math.log(0.5), math.log(0.5), 0.3, 0.6)
        cases.append((f"log_error_probability n={n}",
                      lambda mod, a=args_lep: mod.log_error_probability(*a)))

    for label, call in cases:
        outputs = {name: call(mod) for name, mod in BACKENDS.items()}
        ref = outputs["python"]
        agree = all(np.allclose(out, ref, rtol=1e-12, atol=0) for out in outputs.values())
        timings = {name: best_of(lambda m=mod: call(m), args.repeat)
                   for name, mod in BACKENDS.items()}
        line = "  ".join(f"{name}={t * 1e3:9.3f} ms" for name, t in timings.items())
        if "compiled" in timings:
            line += f"  speedup={timings['python'] / timings['compiled']:6.1f}x"
        print(f"{label:32s} {line}  agree={agree}")


if __name__ == "__main__":
    main()
