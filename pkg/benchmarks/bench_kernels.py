"""Compare the numba kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each kernel runs on the same inputs under both backends; results must agree
exactly before any timing is reported.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from lparam import kernels


def chain_poset(n: int) -> list[int]:
    # two interleaved chains: i must follow i - 2
    return [(1 << (i - 2)) if i >= 2 else 0 for i in range(n)]


def monomial_grid(nv: int, deg: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    monos = np.array(np.meshgrid(*[np.arange(deg + 1)] * nv, indexing="ij")).reshape(nv, -1).T
    gens = rng.integers(0, deg, size=(24, nv))
    return np.ascontiguousarray(monos, dtype=np.int64), np.ascontiguousarray(gens, dtype=np.int64)


def bench(repeat: int) -> list[tuple[str, float, float]]:
    rows = []
    pred = chain_poset(18)
    fast, ref = kernels.count_linear_extensions, kernels.reference("count_linear_extensions")
    assert fast(pred) == ref(pred)
    rows.append(("count_linear_extensions n=18",
                 min(timeit.repeat(lambda: fast(pred), number=1, repeat=repeat)),
                 min(timeit.repeat(lambda: ref(pred), number=1, repeat=repeat))))

    monos, gens = monomial_grid(5, 8)
    fast, ref = kernels.standard_mask, kernels.reference("standard_mask")
    assert (fast(monos, gens) == ref(monos, gens)).all()
    rows.append((f"standard_mask {monos.shape[0]}x{gens.shape[0]}",
                 min(timeit.repeat(lambda: fast(monos, gens), number=1, repeat=repeat)),
                 min(timeit.repeat(lambda: ref(monos, gens), number=1, repeat=repeat))))
    return rows


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"active backend: {kernels.BACKEND}")
    print(f"{'kernel':36s} {'active':>10s} {'numpy':>10s} {'speedup':>8s}")
    for name, t_fast, t_ref in bench(args.repeat):
        print(f"{name:36s} {t_fast * 1e3:9.2f}ms {t_ref * 1e3:9.2f}ms {t_ref / t_fast:7.1f}x")


if __name__ == "__main__":
    main()
