"""The monomial quotient ring Q[t, s, u] / (s_i u_i) and its cyclic modules.

One t-variable per q-string of the central character; for every link
(position p joined to p+1 inside a string) a weight-0 variable s_p and a
variable u_p of weight e_p - e_{p+1}.  All ideals used here are monomial,
so bigraded pieces are spanned by standard monomials and every map is a
matrix of polynomials acting by monomial multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

import numpy as np

from ..exact import ONE, ZERO, WeightVector, q_str, to_q
from ..kernels import standard_mask

Mono = tuple  # exponent vector


class LocalModelRing:
    """Use :func:`local_ring` for cached instances."""

    def __init__(self, strings: Sequence[int]):
        self.strings = tuple(int(s) for s in strings)
        if not self.strings or min(self.strings) < 1:
            raise ValueError("string lengths must be positive")
        self.n = sum(self.strings)
        names, weights, links = [], [], []
        single = len(self.strings) == 1
        for a, _ in enumerate(self.strings):
            names.append("t" if single else f"t{a + 1}")
            weights.append(WeightVector.zero(self.n))
        pos = 0
        for length in self.strings:
            links.extend(range(pos + 1, pos + length))
            pos += length
        self.links = tuple(links)
        for p in links:
            names.append(f"s{p}")
            weights.append(WeightVector.zero(self.n))
        for p in links:
            names.append(f"u{p}")
            weights.append(WeightVector.alpha(p, self.n))
        self.names = tuple(names)
        self.weights = tuple(weights)
        self.nt = len(self.strings)
        self.index = {nm: i for i, nm in enumerate(names)}
        self.weight_matrix = np.array([list(w) for w in weights], dtype=np.int64).reshape(len(names), self.n)
        self.relations = tuple(self.mono(**{f"s{p}": 1, f"u{p}": 1}) for p in links)

    def __repr__(self) -> str:
        return f"LocalModelRing(strings={self.strings})"

    @property
    def nvars(self) -> int:
        return len(self.names)

    def string_of(self, position: int) -> int:
        """Index of the string containing 1-based position."""
        acc = 0
        for a, length in enumerate(self.strings):
            acc += length
            if position <= acc:
                return a
        raise IndexError(position)

    def t_name(self, a: int) -> str:
        return self.names[a]

    def mono(self, **exps) -> Mono:
        e = [0] * self.nvars
        for nm, k in exps.items():
            e[self.index[nm]] += k
        return tuple(e)

    def var(self, name: str) -> Mono:
        return self.mono(**{name: 1})

    def s(self, p: int) -> Mono:
        return self.var(f"s{p}")

    def u(self, p: int) -> Mono:
        return self.var(f"u{p}")

    def degree(self, m: Mono) -> int:
        return sum(m)

    def weight(self, m: Mono) -> WeightVector:
        return WeightVector(np.asarray(m, dtype=np.int64) @ self.weight_matrix)

    def is_standard(self, m: Mono, ann: Iterable[Mono] = ()) -> bool:
        for g in tuple(self.relations) + tuple(ann):
            if all(a >= b for a, b in zip(m, g)):
                return False
        return True

    def mono_str(self, m: Mono) -> str:
        parts = [f"{nm}^{k}" if k > 1 else nm for nm, k in zip(self.names, m) if k]
        return "*".join(parts) if parts else "1"

    @lru_cache(maxsize=8)
    def monomial_table(self, bound: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Standard monomials of degree < bound: (exps, degrees, weights)."""
        rows = []
        for d in range(max(bound, 0)):
            for combo in combinations_with_replacement(range(self.nvars), d):
                e = [0] * self.nvars
                for v in combo:
                    e[v] += 1
                rows.append(e)
        exps = np.array(rows, dtype=np.int64).reshape(len(rows), self.nvars)
        keep = standard_mask(exps, np.array(self.relations, dtype=np.int64).reshape(-1, self.nvars))
        exps = exps[keep]
        return exps, exps.sum(axis=1), exps @ self.weight_matrix

    def slice_monomials(self, degree: int, weight, bound: int, ann: Sequence[Mono] = ()) -> list[Mono]:
        """Standard monomials of one bidegree avoiding an extra monomial ideal."""
        if degree < 0 or degree >= bound:
            return []
        exps, degs, wts = self.monomial_table(bound)
        sel = (degs == degree) & (wts == np.asarray(tuple(weight), dtype=np.int64)).all(axis=1)
        cand = exps[sel]
        if ann and len(cand):
            cand = cand[standard_mask(cand, np.array(ann, dtype=np.int64).reshape(-1, self.nvars))]
        return [tuple(int(x) for x in row) for row in cand]

    def bidegrees(self, bound: int) -> set[tuple[int, tuple]]:
        _, degs, wts = self.monomial_table(bound)
        return {(int(d), tuple(int(x) for x in w)) for d, w in zip(degs, wts)}


@lru_cache(maxsize=None)
def local_ring(strings: tuple[int, ...]) -> LocalModelRing:
    return LocalModelRing(strings)


def single_chain_ring(n: int) -> LocalModelRing:
    return local_ring((n,))


# polynomials: dict mono -> mpq

def poly(m: Mono, c=ONE) -> dict:
    c = to_q(c)
    return {tuple(m): c} if c else {}


def poly_add(a: Mapping, b: Mapping) -> dict:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, ZERO) + c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def poly_scale(a: Mapping, c) -> dict:
    c = to_q(c)
    return {m: c * v for m, v in a.items()} if c else {}


def poly_mul(a: Mapping, b: Mapping) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            v = out.get(m, ZERO) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def poly_reduce(ring: LocalModelRing, a: Mapping, ann: Sequence[Mono] = ()) -> dict:
    return {m: c for m, c in a.items() if ring.is_standard(m, ann)}


def poly_str(ring: LocalModelRing, a: Mapping) -> str:
    if not a:
        return "0"
    return " + ".join(f"{q_str(c)}*{ring.mono_str(m)}" for m, c in sorted(a.items()))


def mono_divides(a: Mono, b: Mono) -> bool:
    return all(x <= y for x, y in zip(a, b))


def minimal_monomials(monos: Iterable[Mono]) -> list[Mono]:
    ms = sorted(set(tuple(m) for m in monos), key=lambda m: (sum(m), m))
    out: list[Mono] = []
    for m in ms:
        if not any(mono_divides(g, m) for g in out):
            out.append(m)
    return out


@dataclass(frozen=True)
class CyclicModule:
    """R / (ann) with generator in bidegree (shift_deg, shift_weight)."""

    ring: LocalModelRing
    ann: tuple = ()
    shift_deg: int = 0
    shift_weight: WeightVector = None
    name: str = ""

    def __post_init__(self):
        ann = tuple(minimal_monomials(tuple(tuple(int(x) for x in m) for m in self.ann)))
        object.__setattr__(self, "ann", ann)
        if self.shift_weight is None:
            object.__setattr__(self, "shift_weight", WeightVector.zero(self.ring.n))
        else:
            object.__setattr__(self, "shift_weight", WeightVector(self.shift_weight))

    def shifted(self, ddeg: int, dweight=None) -> "CyclicModule":
        dw = WeightVector.zero(self.ring.n) if dweight is None else WeightVector(dweight)
        return CyclicModule(self.ring, self.ann, self.shift_deg + ddeg, self.shift_weight + dw, self.name)

    def basis(self, degree: int, weight, bound: int) -> list[Mono]:
        d = degree - self.shift_deg
        w = WeightVector(weight) - self.shift_weight
        return self.ring.slice_monomials(d, w, bound - self.shift_deg if bound is not None else d + 1, self.ann)

    def contains_zero(self, m: Mono) -> bool:
        """True when m times the generator vanishes."""
        return not self.ring.is_standard(m, self.ann)

    def bidegrees(self, bound: int) -> set:
        out = set()
        for d, w in self.ring.bidegrees(bound - self.shift_deg):
            out.add((d + self.shift_deg, tuple(WeightVector(w) + self.shift_weight)))
        return out

    def to_json(self) -> dict:
        return {"ann": [self.ring.mono_str(m) for m in self.ann], "shift_degree": self.shift_deg,
                "shift_weight": list(self.shift_weight), "name": self.name}


@dataclass(frozen=True)
class LocalModelModule:
    """Finite direct sum of cyclic monomial modules."""

    ring: LocalModelRing
    summands: tuple = ()

    @classmethod
    def cyclic(cls, ring, ann=(), shift_deg=0, shift_weight=None, name="") -> "LocalModelModule":
        return cls(ring, (CyclicModule(ring, tuple(ann), shift_deg, shift_weight, name),))

    def __add__(self, other: "LocalModelModule") -> "LocalModelModule":
        return LocalModelModule(self.ring, self.summands + other.summands)

    @property
    def rank(self) -> int:
        return len(self.summands)

    def basis(self, degree: int, weight, bound: int) -> list[tuple[int, Mono]]:
        return [(a, m) for a, c in enumerate(self.summands) for m in c.basis(degree, weight, bound)]

    def bidegrees(self, bound: int) -> set:
        out = set()
        for c in self.summands:
            out |= c.bidegrees(bound)
        return out

    def hilbert_table(self, bound: int) -> dict:
        table = {}
        for d, w in sorted(self.bidegrees(bound)):
            if d < bound:
                k = len(self.basis(d, w, bound))
                if k:
                    table[(d, w)] = k
        return table

    def to_json(self) -> dict:
        return {"strings": list(self.ring.strings), "summands": [c.to_json() for c in self.summands]}


class ModuleMap:
    """Homogeneous map between direct sums; entries[(b, a)] is the polynomial
    multiplying generator a into summand b."""

    def __init__(self, src: LocalModelModule, tgt: LocalModelModule, entries: Mapping[tuple[int, int], Mapping],
                 degree: int = 0):
        self.src, self.tgt, self.degree = src, tgt, degree
        ring = src.ring
        clean = {}
        for (b, a), p in entries.items():
            p = poly_reduce(ring, p, tgt.summands[b].ann)
            if p:
                clean[(b, a)] = p
        self.entries = clean

    @property
    def ring(self) -> LocalModelRing:
        return self.src.ring

    def check_homogeneous(self) -> bool:
        ring = self.ring
        for (b, a), p in self.entries.items():
            sa, sb = self.src.summands[a], self.tgt.summands[b]
            for m in p:
                if sa.shift_deg + self.degree != sb.shift_deg + ring.degree(m):
                    return False
                if sa.shift_weight != sb.shift_weight + ring.weight(m):
                    return False
        return True

    def check_well_defined(self) -> bool:
        """Annihilator generators of each source summand map to zero."""
        ring = self.ring
        for (b, a), p in self.entries.items():
            tb = self.tgt.summands[b]
            for g in self.src.summands[a].ann + ring.relations:
                for m in p:
                    if not tb.contains_zero(tuple(x + y for x, y in zip(g, m))):
                        return False
        return True

    def compose(self, first: "ModuleMap") -> "ModuleMap":
        """self o first."""
        out: dict = {}
        for (c, b), p2 in self.entries.items():
            for (b2, a), p1 in first.entries.items():
                if b2 == b:
                    out[(c, a)] = poly_add(out.get((c, a), {}), poly_mul(p2, p1))
        return ModuleMap(first.src, self.tgt, out, self.degree + first.degree)

    def is_zero(self) -> bool:
        return not self.entries

    def scale(self, c) -> "ModuleMap":
        return ModuleMap(self.src, self.tgt, {k: poly_scale(p, c) for k, p in self.entries.items()}, self.degree)

    def slice_matrix(self, degree: int, weight, bound: int, src_basis=None, tgt_basis=None) -> list[dict]:
        """Sparse columns: for each source basis vector, {target index: coeff}."""
        src_basis = self.src.basis(degree, weight, bound) if src_basis is None else src_basis
        tgt_basis = self.tgt.basis(degree + self.degree, weight, bound) if tgt_basis is None else tgt_basis
        tindex = {v: i for i, v in enumerate(tgt_basis)}
        by_src: dict[int, list] = {}
        for (b, a), p in self.entries.items():
            by_src.setdefault(a, []).append((b, p))
        cols = []
        for a, m in src_basis:
            col: dict[int, object] = {}
            for b, p in by_src.get(a, ()):
                tb = self.tgt.summands[b]
                for mm, c in p.items():
                    prod = tuple(x + y for x, y in zip(m, mm))
                    if tb.contains_zero(prod):
                        continue
                    i = tindex.get((b, prod))
                    if i is None:
                        # beyond the degree bound of the target slice table
                        raise KeyError("target monomial outside slice basis")
                    v = col.get(i, ZERO) + c
                    if v:
                        col[i] = v
                    else:
                        col.pop(i)
            cols.append(col)
        return cols

    def to_json(self) -> dict:
        ring = self.ring
        return {"degree": self.degree,
                "entries": [{"row": b, "col": a, "poly": poly_str(ring, p)} for (b, a), p in sorted(self.entries.items())]}
