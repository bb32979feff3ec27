"""Complexes of monomial modules, slicewise homology, and the standard
objects of the local model: coordinate subschemes, the maps between them,
the Steinberg resolution and the line bundles on the u-space."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

from ..exact import ONE, ZERO, WeightVector, kernel_from_rref, rref
from .ring import (
    CyclicModule,
    LocalModelModule,
    LocalModelRing,
    ModuleMap,
    minimal_monomials,
    poly,
    single_chain_ring,
)


class GradingError(ValueError):
    pass


@dataclass
class GradedComplex:
    """Cohomologically indexed: d[i] maps terms[i] to terms[i+1]."""

    ring: LocalModelRing
    terms: dict[int, LocalModelModule]
    diffs: dict[int, ModuleMap] = field(default_factory=dict)

    def __post_init__(self):
        for i, d in self.diffs.items():
            if d.src is not self.terms.get(i) or d.tgt is not self.terms.get(i + 1):
                if d.src != self.terms.get(i) or d.tgt != self.terms.get(i + 1):
                    raise GradingError(f"differential {i} does not match the terms")

    @property
    def degrees(self) -> list[int]:
        return sorted(self.terms)

    def ranks(self) -> dict[int, int]:
        return {i: self.terms[i].rank for i in self.degrees}

    def check_homogeneous(self) -> bool:
        return all(d.check_homogeneous() and d.degree == 0 for d in self.diffs.values())

    def check_well_defined(self) -> bool:
        return all(d.check_well_defined() for d in self.diffs.values())

    def d_squared_zero(self) -> bool:
        for i, d in self.diffs.items():
            nxt = self.diffs.get(i + 1)
            if nxt is not None and not nxt.compose(d).is_zero():
                return False
        return True

    def bidegrees(self, bound: int) -> list:
        out = set()
        for t in self.terms.values():
            out |= t.bidegrees(bound)
        return sorted(b for b in out if b[0] < bound)

    def euler_table(self, bound: int) -> dict:
        table: dict = {}
        for i, t in self.terms.items():
            for key, v in t.hilbert_table(bound).items():
                table[key] = table.get(key, 0) + (-1) ** (i % 2) * v
        return {k: v for k, v in table.items() if v}

    def to_json(self) -> dict:
        return {"strings": list(self.ring.strings),
                "terms": {str(i): self.terms[i].to_json() for i in self.degrees},
                "differentials": {str(i): d.to_json() for i, d in sorted(self.diffs.items())}}


def _vec(col: Mapping[int, object]) -> dict:
    return dict(col)


@dataclass
class SliceData:
    basis: list
    cycles: list  # sparse vectors (dict index -> coeff)
    boundaries_rref: tuple  # (rows, pivots) of the boundary span
    dim: int


def _rank_cols(cols: list[dict]) -> int:
    return len(rref(cols)[1])


def _slice_homology(C: GradedComplex, i: int, d: int, w, bound: int) -> SliceData:
    term = C.terms[i]
    basis = term.basis(d, w, bound)
    n = len(basis)
    if n == 0:
        return SliceData(basis, [], ([], []), 0)
    din = C.diffs.get(i - 1)
    dout = C.diffs.get(i)
    if dout is not None:
        cols = dout.slice_matrix(d, w, bound, src_basis=basis)
        # kernel of the map: rows of the transpose are the images of basis vectors
        m = len(dout.tgt.basis(d, w, bound))
        rows = [dict() for _ in range(m)]
        for j, col in enumerate(cols):
            for r, v in col.items():
                rows[r][j] = v
        red, piv = rref(rows)
        ker = kernel_from_rref(red, piv, n)
        cycles = [{j: v for j, v in enumerate(k) if v} for k in ker]
    else:
        cycles = [{j: ONE} for j in range(n)]
    if din is not None:
        bcols = din.slice_matrix(d, w, bound, tgt_basis=basis)
        brref = rref(bcols)
    else:
        brref = ([], [])
    dim = len(cycles) - len(brref[1])
    return SliceData(basis, cycles, brref, dim)


def _in_span(vec: dict, span: tuple) -> bool:
    rows, piv = span
    r = dict(vec)
    for row, p in zip(rows, piv):
        f = r.get(p)
        if f:
            for c, v in row.items():
                nv = r.get(c, ZERO) - f * v
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
    return not r


@dataclass
class HomologyTable:
    dims: dict[int, dict]  # cohomological degree -> {(degree, weight): dim}
    cyclic: dict[int, dict] = field(default_factory=dict)
    bound: int = 0

    def nonzero_degrees(self) -> list[int]:
        return sorted(i for i, t in self.dims.items() if any(t.values()))

    def table(self, i: int) -> dict:
        return {k: v for k, v in self.dims.get(i, {}).items() if v}

    def to_json(self) -> dict:
        out = {}
        for i in sorted(self.dims):
            entry = {"hilbert": [{"degree": d, "weight": list(w), "dim": v}
                                 for (d, w), v in sorted(self.table(i).items())]}
            if i in self.cyclic:
                entry["cyclic"] = self.cyclic[i]
            out[str(i)] = entry
        return {"degree_bound": self.bound, "cohomology": out}


def homology(C: GradedComplex, degree_bound: int, weight_window=None, detect_cyclic: bool = True) -> HomologyTable:
    """Dimensions of H^i in every bigraded slice with degree < degree_bound.

    ``weight_window`` optionally restricts to a set of weights.  When a
    cohomology module is generated by a single class, the monomials that
    kill that class (up to the bound) are reported.
    """
    for i, d in C.diffs.items():
        if not d.check_homogeneous() or d.degree != 0:
            raise GradingError(f"differential {i} is not homogeneous of degree 0")
    slices = C.bidegrees(degree_bound)
    if weight_window is not None:
        allowed = {tuple(w) for w in weight_window}
        slices = [s for s in slices if s[1] in allowed]
    dims: dict[int, dict] = {i: {} for i in C.degrees}
    data: dict[tuple, SliceData] = {}
    for i in C.degrees:
        for d, w in slices:
            sd = _slice_homology(C, i, d, w, degree_bound)
            if sd.dim:
                dims[i][(d, w)] = sd.dim
                data[(i, d, w)] = sd
    table = HomologyTable(dims, bound=degree_bound)
    if detect_cyclic:
        for i in C.degrees:
            info = _cyclic_info(C, i, dims[i], data, degree_bound)
            if info is not None:
                table.cyclic[i] = info
    return table


def _cyclic_info(C: GradedComplex, i: int, dims: dict, data: dict, bound: int):
    """If H^i is generated by its lowest class, return its annihilator data."""
    if not dims:
        return None
    low = min(dims, key=lambda k: (k[0], k[1]))
    if dims[low] != 1:
        return None
    lowest_deg = low[0]
    if sum(v for (d, _), v in dims.items() if d == lowest_deg) != 1:
        return None
    sd = data[(i, low[0], low[1])]
    # a cycle representing the nonzero class
    z = next(c for c in sd.cycles if not _in_span(c, sd.boundaries_rref))
    zvec = {sd.basis[j]: v for j, v in z.items()}
    ring = C.ring
    term = C.terms[i]
    ann = []
    generated: dict = {}
    exps, degs, wts = ring.monomial_table(bound - lowest_deg)
    for row in exps:
        m = tuple(int(x) for x in row)
        dd = low[0] + sum(m)
        ww = tuple(WeightVector(low[1]) + ring.weight(m))
        key = (i, dd, ww)
        target = data.get(key)
        prod: dict = {}
        for (a, mono), v in zvec.items():
            pm = tuple(x + y for x, y in zip(mono, m))
            if not term.summands[a].contains_zero(pm):
                prod[(a, pm)] = prod.get((a, pm), ZERO) + v
        if target is None:
            ann.append(m)
            continue
        index = {b: j for j, b in enumerate(target.basis)}
        vec = {index[b]: v for b, v in prod.items() if v}
        if _in_span(vec, target.boundaries_rref):
            ann.append(m)
        else:
            generated.setdefault((dd, ww), []).append(vec)
    # cyclic iff the multiples of z span every slice of H
    for (d, w), k in dims.items():
        target = data[(i, d, w)]
        vecs = generated.get((d, w), [])
        rows, piv = target.boundaries_rref
        span = rref([dict(r) for r in rows] + vecs)
        if len(span[1]) - len(piv) != k:
            return None
    ann_min = [m for m in minimal_monomials(ann)]
    return {"generator_degree": low[0], "generator_weight": list(low[1]),
            "annihilator": [ring.mono_str(m) for m in ann_min], "annihilator_exps": [list(m) for m in ann_min]}


# coordinate subschemes and their maps


def i_set(w: Sequence[int]) -> frozenset:
    """Links i with chi_i placed before chi_{i+1} in the ordering w.phi."""
    n = len(w)
    pos = {w[p]: p for p in range(n)}  # position of value j
    return frozenset(i for i in range(1, n) if pos[i] < pos[i + 1])


def subscheme_module(ring: LocalModelRing, w: Sequence[int] | None = None, vanishing_u=None, shift_deg: int = 0,
                     vanishing_s=(), vanishing_t: bool = False) -> LocalModelModule:
    """Structure sheaf of the coordinate subscheme attached to w (or to an explicit pattern)."""
    if vanishing_u is None:
        vanishing_u = i_set(w)
    ann = [ring.u(i) for i in sorted(vanishing_u)] + [ring.s(i) for i in sorted(vanishing_s)]
    if vanishing_t:
        ann += [ring.var(ring.t_name(a)) for a in range(ring.nt)]
    name = "Y(" + ",".join(map(str, w)) + ")" if w is not None else "Y_I" + "".join(map(str, sorted(vanishing_u)))
    return LocalModelModule.cyclic(ring, ann, shift_deg, None, name)


def g_entry(ring: LocalModelRing, I_src, I_tgt) -> dict:
    m = [0] * ring.nvars
    for i in set(I_src) - set(I_tgt):
        m[ring.index[f"s{i}"]] += 1
    return poly(tuple(m))


def g_map(ring: LocalModelRing, w, w2, src: LocalModelModule | None = None, tgt: LocalModelModule | None = None) -> ModuleMap:
    """Multiply by the product of s_i over I_w minus I_w', then project."""
    I1 = i_set(w) if not isinstance(w, (set, frozenset)) else w
    I2 = i_set(w2) if not isinstance(w2, (set, frozenset)) else w2
    src = src or subscheme_module(ring, vanishing_u=I1)
    tgt = tgt or subscheme_module(ring, vanishing_u=I2)
    deg = src.summands[0].shift_deg - tgt.summands[0].shift_deg
    k = len(set(I1) - set(I2))
    return ModuleMap(src, tgt, {(0, 0): g_entry(ring, I1, I2)}, degree=k - deg)


def defect_monomial(ring: LocalModelRing, I1, I2, I3) -> tuple:
    """Monomial c with g(w',w'') g(w,w') = c g(w,w'')."""
    A, B, C = set(I1) - set(I2), set(I2) - set(I3), set(I1) - set(I3)
    m = [0] * ring.nvars
    for i in A:
        m[ring.index[f"s{i}"]] += 1
    for i in B:
        m[ring.index[f"s{i}"]] += 1
    for i in C:
        m[ring.index[f"s{i}"]] -= 1
    return tuple(m)


def cube_complex(ring: LocalModelRing, links: Sequence[int], projection_links=(), base_ann=(),
                 extra_ann=()) -> GradedComplex:
    """Tensor product over the listed links of two-term complexes.

    For an ordinary link i: R/(u_i) --s_i--> R in degrees -1, 0.
    For a projection link i: R --proj--> R/(u_i) in degrees -1, 0.
    Terms are indexed by the subset S of links sitting in degree -1.
    """
    links = list(links)
    proj = set(projection_links)
    terms, diffs = {}, {}
    index: dict[int, list] = {}
    for k in range(len(links) + 1):
        for S in combinations(links, k):
            index.setdefault(-k, []).append(frozenset(S))

    def ann_of(S):
        a = list(base_ann) + list(extra_ann)
        for i in links:
            if (i in S) != (i in proj):
                a.append(ring.u(i))
        return a

    def shift_of(S):
        return sum(1 for i in S if i not in proj)

    for deg, subsets in index.items():
        summ = [CyclicModule(ring, tuple(ann_of(S)), shift_of(S), None,
                             "{" + ",".join(map(str, sorted(S))) + "}") for S in subsets]
        terms[deg] = LocalModelModule(ring, tuple(summ))
    for deg in range(-len(links), 0):
        src, tgt = index[deg], index[deg + 1]
        ent = {}
        for a, S in enumerate(src):
            for i in sorted(S):
                T = S - {i}
                b = tgt.index(T)
                sign = (-1) ** sum(1 for j in S if links.index(j) < links.index(i))
                m = [0] * ring.nvars
                if i not in proj:
                    m[ring.index[f"s{i}"]] = 1
                ent[(b, a)] = poly(tuple(m), sign)
        diffs[deg] = ModuleMap(terms[deg], terms[deg + 1], ent)
    return GradedComplex(ring, terms, diffs)


def steinberg_resolution(n: int) -> GradedComplex:
    """The complex whose H^0 is the Steinberg locus s_1 = ... = s_{n-1} = 0."""
    ring = single_chain_ring(n)
    return cube_complex(ring, list(range(1, n)))


def steinberg_locus(ring: LocalModelRing) -> LocalModelModule:
    return LocalModelModule.cyclic(ring, [ring.s(p) for p in ring.links], 0, None, "Y^St")


@dataclass(frozen=True)
class LineBundle:
    module: LocalModelModule
    pattern: frozenset
    l_y: int


def line_bundle(n: int, pattern) -> LineBundle:
    """The ideal sheaf of the union of {u_i = 0}, i in pattern, on Spec Q[u]."""
    pattern = frozenset(pattern)
    if not pattern <= set(range(1, n)):
        raise ValueError("pattern must be a subset of 1..n-1")
    ring = single_chain_ring(n)
    ann = [ring.var("t")] + [ring.s(p) for p in ring.links]
    wt = WeightVector.zero(n)
    for i in pattern:
        wt = wt + WeightVector.alpha(i, n)
    mod = LocalModelModule.cyclic(ring, ann, len(pattern), wt, "L(" + ",".join(map(str, sorted(pattern))) + ")")
    return LineBundle(mod, pattern, len(pattern))


def koszul_on_t(C: GradedComplex, t_names: Sequence[str]) -> GradedComplex:
    """Tensor C with the Koszul complex of the given weight-0 variables (each
    a nonzerodivisor on every term); equivalently set them to zero when the
    terms are free in those directions."""
    ring = C.ring
    out = C
    for nm in t_names:
        out = _cone_of_var(out, ring.index[nm])
    return out


def _cone_of_var(C: GradedComplex, v: int) -> GradedComplex:
    ring = C.ring
    terms, diffs = {}, {}
    lo, hi = min(C.terms), max(C.terms)
    # total term in degree k: C^{k+1} shifted (the copy multiplied by x) plus C^k
    layout = {}
    for k in range(lo - 1, hi + 1):
        top = C.terms.get(k + 1)
        bot = C.terms.get(k)
        summ = []
        part = []
        if top is not None:
            for a, c in enumerate(top.summands):
                summ.append(c.shifted(1))
                part.append(("x", a))
        if bot is not None:
            for a, c in enumerate(bot.summands):
                summ.append(c)
                part.append(("c", a))
        if summ:
            terms[k] = LocalModelModule(ring, tuple(summ))
            layout[k] = part
    xm = [0] * ring.nvars
    xm[v] = 1
    for k in sorted(terms):
        if k + 1 not in terms:
            continue
        src, tgt = layout[k], layout[k + 1]
        tindex = {p: j for j, p in enumerate(tgt)}
        ent = {}
        for j, (kind, a) in enumerate(src):
            if kind == "x":
                # -d on the shifted copy plus multiplication by x into C^{k+1}
                d = C.diffs.get(k + 1)
                if d is not None:
                    for (b, aa), p in d.entries.items():
                        if aa == a:
                            ent[(tindex[("x", b)], j)] = {m: -c for m, c in p.items()}
                ent[(tindex[("c", a)], j)] = poly(tuple(xm))
            else:
                d = C.diffs.get(k)
                if d is not None:
                    for (b, aa), p in d.entries.items():
                        if aa == a:
                            ent[(tindex[("c", b)], j)] = dict(p)
        diffs[k] = ModuleMap(terms[k], terms[k + 1], ent)
    return GradedComplex(ring, terms, diffs)
