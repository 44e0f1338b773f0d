"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each case runs the identical call on both backends and checks that the
results agree before reporting timings.
"""

import argparse
import importlib
import random
import timeit
from fractions import Fraction


def _backends():
    out = {"python": importlib.import_module("gameaxioms._pykernels")}
    try:
        out["cython"] = importlib.import_module("gameaxioms._ckernels")
    except ImportError:
        pass
    return out


def _tableau(rng, rows, cols):
    return [[rng.randint(-50, 50) for _ in range(cols)] for _ in range(rows)]


def case_pivot(mod, rng):
    base = _tableau(rng, 40, 80)
    base[0][0] = 7

    def run():
        t = [row[:] for row in base]
        mod.pivot(t, 0, 0, 1)
        return t
    return run


def case_matvec(mod, rng):
    rows = _tableau(rng, 64, 256)
    xs = [rng.randint(0, 9) for _ in range(256)]
    return lambda: mod.matvec(rows, xs)


def case_equivalence_diff(mod, rng):
    xs = [rng.randint(-9, 9) for _ in range(4096)]
    ys = [x + rng.randint(-3, 3) for x in xs]
    bases = tuple(range(0, 4096, 4))

    def run():
        diff = mod.scaled_difference(xs, 3, ys, 5)
        return diff, mod.own_action_dependence(diff, bases, 1, 4)
    return run


def case_common_denominator(mod, rng):
    values = [Fraction(rng.randint(-99, 99), rng.randint(1, 12)) for _ in range(2000)]
    return lambda: mod.common_denominator(values)


CASES = [case_pivot, case_matvec, case_equivalence_diff, case_common_denominator]


def bench_lp(repeat):
    """Time a full correlated-equilibrium LP solve under each backend."""
    import os
    import subprocess
    import sys

    code = (
        "import time\n"
        "from gameaxioms import kernels\n"
        "from gameaxioms.equilibria import find_ce, welfare_objective\n"
        "from gameaxioms.harness import GameFamilySpec, random_game\n"
        "spec = GameFamilySpec(players=3, actions=3, seed=11, count=1)\n"
        "u = random_game(spec, 0)\n"
        "best = None\n"
        f"for _ in range({repeat}):\n"
        "    t = time.perf_counter(); find_ce(u, welfare_objective(u)); dt = time.perf_counter() - t\n"
        "    best = dt if best is None else min(best, dt)\n"
        "print(kernels.BACKEND, best)\n"
    )
    results = {}
    for pure in (False, True):
        env = dict(os.environ)
        env.pop("GAMEAXIOMS_PURE_PYTHON", None)
        if pure:
            env["GAMEAXIOMS_PURE_PYTHON"] = "1"
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        name, seconds = out.stdout.split()
        results[name] = float(seconds)
    return results


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    backends = _backends()
    print(f"{'case':<28}" + "".join(f"{name:>12}" for name in backends) + "   speedup")
    for case in CASES:
        timings, outputs = {}, {}
        for name, mod in backends.items():
            fn = case(mod, random.Random(case.__name__))
            outputs[name] = fn()
            timings[name] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
        if len({repr(v) for v in outputs.values()}) != 1:
            raise SystemExit(f"{case.__name__}: backends disagree")
        speed = timings["python"] / timings["cython"] if "cython" in timings else float("nan")
        label = case.__name__.removeprefix("case_")
        print(f"{label:<28}" + "".join(f"{timings[n] * 1e3:>10.3f}ms" for n in backends) + f"   {speed:6.2f}x")
    lp = bench_lp(max(1, args.repeat // 2))
    row = "".join(f"{lp.get(n, float('nan')) * 1e3:>10.1f}ms" for n in backends)
    speed = lp["python"] / lp["cython"] if "cython" in lp else float("nan")
    print(f"{'ce_lp_3x3x3':<28}{row}   {speed:6.2f}x")


if __name__ == "__main__":
    main()
