"""Timing comparison: compiled kernel extension vs the pure-Python twin.

Micro section times the hot bitmask primitives on identical operand batches
through both backends in-process.  Macro section reruns the lagrangian
search in a subprocess with UNILCALC_PURE=1 so the whole call tree flips
backend.  Run as:

    python3 benchmarks/bench_kernels.py [--repeat N] [--batch N]
"""

import argparse
import os
import random
import subprocess
import sys
import time

from unilcalc.kernels import get_backend


def batch_inputs(batch, seed=0):
    rng = random.Random(seed)
    masks = [rng.getrandbits(64) | 1 for _ in range(batch)]
    pairs = [(rng.getrandbits(32), rng.getrandbits(32)) for _ in range(batch)]
    return masks, pairs


def time_micro(impl, masks, pairs, repeat):
    mul = impl.gf2_mul
    mod = impl.gf2_mod
    zmul = impl.z4_mul
    lift = impl.z4_sq_lift
    timings = {}

    t0 = time.perf_counter()
    for _ in range(repeat):
        for a, b in zip(masks, masks[1:]):
            mul(a, b)
    timings["gf2_mul"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    for _ in range(repeat):
        for a, b in zip(masks, masks[1:]):
            mod(mul(a, a), b)
    timings["gf2_mod"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    for _ in range(repeat):
        for (alo, ahi), (blo, bhi) in zip(pairs, pairs[1:]):
            zmul(alo, ahi, blo, bhi)
    timings["z4_mul"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    for _ in range(repeat):
        for m in masks:
            lift(m & 0xFFFFFFFF)
    timings["z4_sq_lift"] = time.perf_counter() - t0
    return timings


MACRO_SNIPPET = """\
import time
from unilcalc.kernels import BACKEND
from unilcalc.linking import find_lagrangian, sublagrangian_reduce, witt_four_term_instance
from unilcalc.polynomials import Polynomial

t = Polynomial.t("Z")
p = t + t * t * t
G, S = witt_four_term_instance(p)
red = sublagrangian_reduce(G, S)
t0 = time.perf_counter()
L = find_lagrangian(red, 3)
assert L is not None
print(f"{BACKEND} {time.perf_counter() - t0:.4f}")
"""


def run_macro(pure):
    env = dict(os.environ)
    if pure:
        env["UNILCALC_PURE"] = "1"
    else:
        env.pop("UNILCALC_PURE", None)
    out = subprocess.run(
        [sys.executable, "-c", MACRO_SNIPPET], env=env, capture_output=True, text=True, check=True
    )
    name, elapsed = out.stdout.split()
    return name, float(elapsed)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=200)
    parser.add_argument("--batch", type=int, default=2000)
    args = parser.parse_args(argv)

    backends = {}
    for name in ("python", "c"):
        try:
            backends[name] = get_backend(name)
        except ImportError:
            print(f"backend {name!r} unavailable, skipping")
    masks, pairs = batch_inputs(args.batch)

    results = {
        name: time_micro(impl, masks, pairs, args.repeat) for name, impl in backends.items()
    }
    ops = sorted(next(iter(results.values())))
    print(f"\nmicro ({args.batch} ops x {args.repeat} repeats, seconds)")
    header = "op".ljust(14) + "".join(name.rjust(12) for name in results)
    print(header)
    for op in ops:
        row = op.ljust(14) + "".join(f"{results[name][op]:12.4f}" for name in results)
        if len(results) == 2:
            py, c = results["python"][op], results["c"][op]
            row += f"   x{py / c:.1f}" if c else ""
        print(row)

    print("\nmacro: find_lagrangian on the reduced four-term form, degree bound 3")
    for pure in (True, False):
        name, elapsed = run_macro(pure)
        print(f"  {name:8} {elapsed:.4f} s")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
