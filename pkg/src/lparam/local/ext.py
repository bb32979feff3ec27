"""Minimal free resolutions of cyclic monomial modules and bigraded Ext tables.

Everything is graded by the full exponent lattice (one degree per
variable), so each step of the resolution is linear algebra in finitely
many fine degrees.  The resolution is stopped once its differentials
repeat up to a shift, which summarizes infinite resolutions over the
non-regular ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from ..exact import ONE, kernel_from_rref, rref
from .complexes import GradedComplex, HomologyTable, homology
from .ring import CyclicModule, LocalModelModule, LocalModelRing, ModuleMap, poly


def _fine_degrees(nvars: int, bound: int) -> list[tuple]:
    out = []
    for d in range(bound):
        for combo in combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for v in combo:
                e[v] += 1
            out.append(tuple(e))
    return out


@dataclass
class FreeStep:
    gens: list[tuple]  # fine degree of each generator
    matrix: dict  # (row = generator of previous step, col = generator here) -> scalar

    def signature(self, prev_gens: list[tuple]) -> tuple:
        """Shift-invariant description of the differential."""
        base = min(self.gens) if self.gens else ()
        entries = []
        for (h, g), c in sorted(self.matrix.items()):
            mono = tuple(a - b for a, b in zip(self.gens[g], prev_gens[h]))
            entries.append((h, g, mono, c))
        rel = [tuple(a - b for a, b in zip(x, base)) for x in self.gens]
        return len(prev_gens), tuple(rel), tuple(entries)


@dataclass
class Resolution:
    ring: LocalModelRing
    steps: list[FreeStep]  # steps[0]: F_0 (no matrix); steps[i]: F_i with d_i : F_i -> F_{i-1}
    generator_bound: int
    period: int | None = None
    period_start: int | None = None

    def generator_degrees(self, i: int) -> list[int]:
        return [sum(g) for g in self.steps[i].gens]

    @property
    def finite(self) -> bool:
        """The resolution stopped: F_0 alone, or a step without generators."""
        return len(self.steps) == 1 or not self.steps[-1].gens

    def certificate(self) -> dict:
        return {"period": self.period, "finite": self.finite, "start": self.period_start, "steps_computed": len(self.steps) - 1,
                "generator_bound": self.generator_bound,
                "ranks": [len(s.gens) for s in self.steps]}


def _standard(ring: LocalModelRing, m, ann) -> bool:
    return min(m) >= 0 and ring.is_standard(m, ann)


def resolve(ring: LocalModelRing, ann, length: int, generator_bound: int) -> Resolution:
    """Minimal free resolution of R/(ann) over the local model ring."""
    nv = ring.nvars
    fine = _fine_degrees(nv, generator_bound)
    zero = tuple([0] * nv)
    steps = [FreeStep([zero], {})]
    # d_1 from the minimal monomial generators of ann (ring relations excluded)
    first = [tuple(m) for m in CyclicModule(ring, tuple(ann)).ann if sum(m) < generator_bound]
    if first:
        steps.append(FreeStep(first, {(0, g): ONE for g in range(len(first))}))
    while len(steps) >= 2 and len(steps) < length + 2 and steps[-1].gens:
        steps.append(_syzygies(ring, steps[-2], steps[-1], fine))
    res = Resolution(ring, steps, generator_bound)
    sigs = [steps[i].signature(steps[i - 1].gens) for i in range(1, len(steps)) if steps[i].gens]
    found = _find_period(sigs)
    if found:
        res.period, res.period_start = found[0], found[1] + 1
    return res


def _find_period(sigs: list) -> tuple[int, int] | None:
    for p in (1, 2):
        for i0 in range(len(sigs)):
            if i0 + p + 1 < len(sigs) and sigs[i0] == sigs[i0 + p] and sigs[i0 + 1] == sigs[i0 + 1 + p]:
                return p, i0
    return None


def _module_basis(ring, gens, m, ann=()):
    return [g for g, a in enumerate(gens) if _standard(ring, tuple(x - y for x, y in zip(m, a)), ann)]


def _syzygies(ring: LocalModelRing, prev: FreeStep, cur: FreeStep, fine: list) -> FreeStep:
    """Minimal generators of the kernel of d : F_cur -> F_prev."""
    by_col: dict[int, list] = {}
    for (h, g), c in cur.matrix.items():
        by_col.setdefault(g, []).append((h, c))
    kernels: dict[tuple, list] = {}
    new_gens, new_matrix = [], {}
    nv = ring.nvars
    for m in fine:
        src = _module_basis(ring, cur.gens, m)
        if not src:
            continue
        tgt = _module_basis(ring, prev.gens, m)
        tidx = {h: i for i, h in enumerate(tgt)}
        rows = [dict() for _ in tgt]
        for j, g in enumerate(src):
            for h, c in by_col.get(g, ()):
                i = tidx.get(h)
                if i is not None:
                    rows[i][j] = c
        red, piv = rref(rows)
        ker = [{src[j]: v for j, v in enumerate(k) if v} for k in kernel_from_rref(red, piv, len(src))]
        if not ker:
            continue
        kernels[m] = ker
        # part generated from lower fine degrees
        lower = []
        for v in range(nv):
            if m[v] == 0:
                continue
            mm = tuple(x - (1 if i == v else 0) for i, x in enumerate(m))
            for vec in kernels.get(mm, ()):
                lifted = {g: c for g, c in vec.items()
                          if _standard(ring, tuple(x - y for x, y in zip(m, cur.gens[g])), ())}
                if lifted:
                    lower.append(lifted)
        sidx = {g: j for j, g in enumerate(src)}
        lred, lpiv = rref([{sidx[g]: c for g, c in vec.items()} for vec in lower])
        span_rows, span_piv = list(lred), list(lpiv)
        for vec in ker:
            cand = {sidx[g]: c for g, c in vec.items()}
            red2, piv2 = rref(span_rows + [cand])
            if len(piv2) > len(span_piv):
                span_rows, span_piv = red2, piv2
                k = len(new_gens)
                new_gens.append(m)
                for g, c in vec.items():
                    new_matrix[(g, k)] = c
    return FreeStep(new_gens, new_matrix)


def hom_complex(res: Resolution, target: CyclicModule, i_max: int) -> GradedComplex:
    """Hom(F_., M) as a cochain complex in degrees 0..i_max+1."""
    ring = res.ring
    terms, diffs = {}, {}
    top = min(i_max + 1, len(res.steps) - 1)
    for i in range(top + 1):
        summ = []
        for a in res.steps[i].gens:
            wt = ring.weight(a)
            summ.append(CyclicModule(ring, target.ann, target.shift_deg - sum(a), target.shift_weight - wt,
                                     f"F{i}"))
        terms[i] = LocalModelModule(ring, tuple(summ))
    for i in range(top):
        nxt = res.steps[i + 1]
        ent = {}
        for (h, g), c in nxt.matrix.items():
            mono = tuple(x - y for x, y in zip(nxt.gens[g], res.steps[i].gens[h]))
            ent[(g, h)] = poly(mono, c)
        diffs[i] = ModuleMap(terms[i], terms[i + 1], ent)
    return GradedComplex(ring, terms, diffs)


@dataclass
class ExtTable:
    homology: HomologyTable
    resolution: Resolution
    i_max: int

    def dims(self, i: int) -> dict:
        return self.homology.table(i)

    def cyclic(self, i: int):
        return self.homology.cyclic.get(i)

    def to_json(self) -> dict:
        out = self.homology.to_json()
        out["i_max"] = self.i_max
        out["resolution"] = self.resolution.certificate()
        return out


class PeriodicityError(RuntimeError):
    pass


def ext_table(M1: LocalModelModule, M2: LocalModelModule, i_max: int = 6, degree_bound: int = 6,
              require_period: bool = True) -> ExtTable:
    """Ext^i(M1, M2) for 0 <= i <= i_max in every slice of degree < degree_bound."""
    if M1.rank != 1 or M2.rank != 1:
        raise ValueError("cyclic modules expected")
    src, tgt = M1.summands[0], M2.summands[0]
    ring = M1.ring
    res = resolve(ring, src.ann, i_max + 1, degree_bound + i_max + 2)
    if require_period and res.period is None and len(res.steps) > 2 and res.steps[-1].gens:
        raise PeriodicityError("no periodicity detected; partial resolution " + str(res.certificate()))
    # shift by the generator of M1
    shifted = tgt.shifted(-src.shift_deg, -src.shift_weight)
    C = hom_complex(res, shifted, i_max)
    H = homology(C, degree_bound)
    H.dims = {i: v for i, v in H.dims.items() if i <= i_max}
    H.cyclic = {i: v for i, v in H.cyclic.items() if i <= i_max}
    return ExtTable(H, res, i_max)


def invariants(table) -> dict:
    """Weight-zero part of a homology or Ext table."""
    H = table.homology if isinstance(table, ExtTable) else table
    out = {}
    for i, t in H.dims.items():
        out[i] = {k: v for k, v in t.items() if not any(k[1]) and v}
    return out
