import os
import subprocess
import sys
from itertools import permutations

import numpy as np
from hypothesis import given, strategies as st

from lparam import kernels


def brute_linext(pred):
    n = len(pred)
    count = 0
    for order in permutations(range(n)):
        seen = 0
        ok = True
        for i in order:
            if pred[i] & ~seen:
                ok = False
                break
            seen |= 1 << i
        count += ok
    return count


@st.composite
def posets(draw, nmax=6):
    n = draw(st.integers(0, nmax))
    # i may only require j < i, which guarantees acyclicity
    pred = [draw(st.integers(0, (1 << i) - 1)) if i else 0 for i in range(n)]
    return pred


def test_linext_examples():
    assert kernels.count_linear_extensions([]) == 1
    assert kernels.count_linear_extensions([0, 0, 0, 0]) == 24
    assert kernels.count_linear_extensions([0, 1, 2, 4]) == 1
    assert kernels.count_linear_extensions([0, 0, 3]) == 2


@given(posets())
def test_linext_matches_bruteforce(pred):
    want = brute_linext(pred)
    assert kernels.count_linear_extensions(pred) == want
    assert kernels.reference("count_linear_extensions")(pred) == want


@given(st.integers(1, 4).flatmap(lambda nv: st.tuples(
    st.lists(st.lists(st.integers(0, 3), min_size=nv, max_size=nv), min_size=1, max_size=20),
    st.lists(st.lists(st.integers(0, 3), min_size=nv, max_size=nv), max_size=4))))
def test_standard_mask_matches_bruteforce(data):
    monos, gens = data
    want = [not any(all(a >= b for a, b in zip(m, g)) for g in gens) for m in monos]
    got = kernels.standard_mask(np.array(monos), np.array(gens, dtype=np.int64).reshape(-1, len(monos[0])))
    ref = kernels.reference("standard_mask")(monos, gens)
    assert list(got) == want and list(ref) == want


def _backend(env_value):
    env = dict(os.environ, LPARAM_KERNELS=env_value)
    return subprocess.run([sys.executable, "-c", "from lparam import kernels; print(kernels.BACKEND, "
                           "kernels.count_linear_extensions([0, 0, 3]))"], env=env, capture_output=True, text=True)


def test_numpy_fallback_flag():
    r = _backend("numpy")
    assert r.returncode == 0 and r.stdout.split() == ["numpy", "2"]


def test_bad_flag_rejected():
    r = _backend("fortran")
    assert r.returncode != 0 and "LPARAM_KERNELS" in r.stderr
