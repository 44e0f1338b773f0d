import importlib
import os
import random
import subprocess
import sys
from fractions import Fraction as F

import pytest

from gameaxioms import _pykernels, kernels

try:
    _ckernels = importlib.import_module("gameaxioms._ckernels")
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = [_pykernels] + ([_ckernels] if _ckernels else [])


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def test_kernels_agree_with_plain_python(mod):
    rng = random.Random(1)
    xs = [rng.randint(-10**20, 10**20) for _ in range(50)]
    ys = [rng.randint(-9, 9) for _ in range(50)]
    assert mod.dot(xs, ys) == sum(a * b for a, b in zip(xs, ys))
    rows = [[rng.randint(-9, 9) for _ in range(50)] for _ in range(7)]
    assert mod.matvec(rows, ys) == [sum(a * b for a, b in zip(r, ys)) for r in rows]
    assert mod.outer_flat([[1, 2], [3, 4, 5]]) == [3, 4, 5, 6, 8, 10]
    nums, den = mod.common_denominator([F(1, 2), F(-2, 3), 4])
    assert (nums, den) == ([3, -4, 24], 6)
    assert mod.scaled_difference([1, 2], 2, [3, 5], 3) == [3 * 2 - 1 * 3, 5 * 2 - 2 * 3]
    assert mod.own_action_dependence([1, 1, 2, 3], (0, 2), 1, 2) == (1, 1)
    assert mod.own_action_dependence([1, 1, 2, 2], (0, 2), 1, 2) is None


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def test_fraction_free_pivot_matches_rational_elimination(mod):
    rng = random.Random(2)
    t = [[rng.randint(-9, 9) for _ in range(6)] for _ in range(4)]
    t[1][2] = 5
    exact = [[F(v) for v in row] for row in t]
    mod.pivot(t, 1, 2, 1)
    p = exact[1][2]
    for r in range(4):
        if r == 1:
            continue
        f = exact[r][2] / p
        expected = [a - f * b for a, b in zip(exact[r], exact[1])]
        # fraction-free rows carry an extra factor of the pivot
        assert [F(v) for v in t[r]] == [e * p for e in expected]
    assert t[1] == [int(v) for v in exact[1]]


def test_backend_selection():
    assert kernels.BACKEND in ("cython", "python")
    env = dict(os.environ, GAMEAXIOMS_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from gameaxioms import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@pytest.mark.skipif(_ckernels is None, reason="compiled extension not built")
def test_compiled_backend_is_the_default_when_built():
    env = {k: v for k, v in os.environ.items() if k != "GAMEAXIOMS_PURE_PYTHON"}
    out = subprocess.run([sys.executable, "-c", "from gameaxioms import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "cython"
