"""Permutations in one-line notation: w = (w(1), ..., w(n))."""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations


def identity(n: int) -> tuple:
    return tuple(range(1, n + 1))


def longest(n: int) -> tuple:
    return tuple(range(n, 0, -1))


def compose(a: tuple, b: tuple) -> tuple:
    """(a b)(i) = a(b(i))."""
    return tuple(a[b[i] - 1] for i in range(len(b)))


def inverse(w: tuple) -> tuple:
    out = [0] * len(w)
    for i, v in enumerate(w):
        out[v - 1] = i + 1
    return tuple(out)


def simple(i: int, n: int) -> tuple:
    w = list(range(1, n + 1))
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def left_mul_simple(i: int, w: tuple) -> tuple:
    """s_i w: swap the values i and i+1."""
    return tuple(i + 1 if v == i else i if v == i + 1 else v for v in w)


def right_mul_simple(w: tuple, i: int) -> tuple:
    """w s_i: swap positions i and i+1."""
    w = list(w)
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def length(w: tuple) -> int:
    n = len(w)
    return sum(1 for a in range(n) for b in range(a + 1, n) if w[a] > w[b])


def left_ascent(i: int, w: tuple) -> bool:
    """l(s_i w) > l(w), i.e. i appears before i+1 in w."""
    return w.index(i) < w.index(i + 1)


@lru_cache(maxsize=None)
def reduced_word(w: tuple) -> tuple:
    """Indices (i_1, ..., i_l) with w = s_{i_1} ... s_{i_l}."""
    w = tuple(w)
    word = []
    while True:
        for i in range(1, len(w)):
            if not left_ascent(i, w):
                word.append(i)
                w = left_mul_simple(i, w)
                break
        else:
            return tuple(word)


@lru_cache(maxsize=None)
def all_perms(n: int) -> tuple:
    """All of S_n sorted by length, then lexicographically."""
    return tuple(sorted(permutations(range(1, n + 1)), key=lambda w: (length(w), w)))


def act(w: tuple, x: tuple) -> tuple:
    """Permute coordinates: (w x)_{w(j)} = x_j."""
    out = [0] * len(x)
    for j, v in enumerate(w):
        out[v - 1] = x[j]
    return tuple(out)


def min_coset_reps(n: int, blocks: tuple) -> tuple:
    """Minimal length representatives of W / W_M for the block Levi: v
    increasing on every block of positions."""
    out = []
    for v in all_perms(n):
        pos = 0
        ok = True
        for b in blocks:
            seg = v[pos:pos + b]
            if any(seg[k] > seg[k + 1] for k in range(b - 1)):
                ok = False
                break
            pos += b
        if ok:
            out.append(v)
    return tuple(out)


def levi_simples(blocks: tuple) -> tuple:
    """Simple reflections s_i lying in the block Levi."""
    out, pos = [], 0
    for b in blocks:
        out.extend(range(pos + 1, pos + b))
        pos += b
    return tuple(out)


def coset_split(v: tuple, blocks: tuple) -> tuple[tuple, tuple]:
    """v = v_min u with v_min minimal and u in W_M."""
    n = len(v)
    vmin = list(v)
    u = [0] * n
    pos = 0
    for b in blocks:
        seg = sorted(v[pos:pos + b])
        for k in range(b):
            vmin[pos + k] = seg[k]
        pos += b
    vmin = tuple(vmin)
    u = compose(inverse(vmin), v)
    return vmin, u
