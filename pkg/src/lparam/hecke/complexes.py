"""Cube complexes of principal series and exactness over truncated bases.

Terms are indexed by subsets S of the links, in degree -|S|; each term is
one principal series iota(delta_w) and every differential entry is a sign
times a normalized intertwiner.  Realization turns the symbolic complex
into block matrices over A_k.

Exactness is tested after removing unit pivots (Gaussian elimination on
the complex): a cycle computed modulo m^{k'} must reduce, modulo m^d for
d <= k' - margin, into the boundaries computed modulo m^d.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from ..exact import ONE, ZERO, q_str, rref, to_q
from ..series import SeriesRing, TruncSeries, series_ring
from . import perm as P
from .homs import ModuleCache
from .modules import CentralCharacter, HeckeModule
from .smat import SMat


class ComplexError(AssertionError):
    pass


def label_for(n: int, I) -> tuple:
    """A permutation w with I_w = I: append n when n-1 is in I, else prepend."""
    I = set(I)
    w = (1,)
    for m in range(2, n + 1):
        w = w + (m,) if m - 1 in I else (m,) + w
    return w


@dataclass
class PrincipalSeriesComplex:
    cc: CentralCharacter
    k: int
    deform: str
    links: tuple
    terms: dict  # degree -> list of (index set S, label w)
    entries: dict  # degree -> {(tgt, src): (sign, w_src, w_tgt)}
    name: str = ""
    _cache: ModuleCache | None = field(default=None, repr=False)

    @property
    def cache(self) -> ModuleCache:
        if self._cache is None:
            self._cache = ModuleCache(self.cc, self.k, self.deform)
        return self._cache

    def degrees(self) -> list[int]:
        return sorted(self.terms)

    def labels(self, degree: int) -> list[tuple]:
        return [w for _, w in self.terms[degree]]

    def ranks(self) -> dict[int, int]:
        return {d: len(v) for d, v in self.terms.items()}

    def term_modules(self, degree: int) -> list[HeckeModule]:
        return [self.cache.module(w) for w in self.labels(degree)]

    def realize(self) -> dict[int, SMat]:
        """Block matrices d^i : C^i -> C^{i+1} over A_k."""
        out = {}
        base = self.cache.module(self.labels(self.degrees()[0])[0]).base
        rank = len(P.all_perms(self.cc.n))
        for deg in self.degrees():
            if deg + 1 not in self.terms:
                continue
            nsrc, ntgt = len(self.terms[deg]), len(self.terms[deg + 1])
            M = SMat(base, ntgt * rank, nsrc * rank)
            for (b, a), (sign, w1, w2) in self.entries.get(deg, {}).items():
                f = self.cache.f_hat(w1, w2).matrix
                for i, row in enumerate(f.rows):
                    tgt_row = M.rows[b * rank + i]
                    for j, v in row.items():
                        tgt_row[a * rank + j] = v if sign > 0 else -v
            out[deg] = M
        return out

    def d_squared_zero(self, realized: dict | None = None) -> bool:
        realized = realized or self.realize()
        return all((realized[d + 1] @ realized[d]).is_zero() for d in realized if d + 1 in realized)

    def hecke_linear(self, realized: dict | None = None) -> bool:
        """Every realized differential commutes with the generators."""
        realized = realized or self.realize()
        for deg, D in realized.items():
            src = _block_module(self.term_modules(deg))
            tgt = _block_module(self.term_modules(deg + 1))
            for g1, g2 in zip(src, tgt):
                if not D @ g1 == g2 @ D:
                    return False
        return True

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "central_character": self.cc.to_json(),
            "k": self.k,
            "deformation": self.deform,
            "terms": {str(d): [{"subset": sorted(S), "label": list(w)} for S, w in v]
                      for d, v in sorted(self.terms.items())},
            "differentials": {str(d): [[b, a, s, list(w1), list(w2)] for (b, a), (s, w1, w2) in sorted(e.items())]
                              for d, e in sorted(self.entries.items())},
        }


def _block_module(mods: list[HeckeModule]) -> list[SMat]:
    from .smat import block_diag
    base = mods[0].base
    gens = [m.generators() for m in mods]
    return [block_diag(base, [g[i] for g in gens]) for i in range(len(gens[0]))]


def _cube(cc: CentralCharacter, k: int, deform: str, labels_of, name: str,
          links: Sequence[int] | None = None) -> PrincipalSeriesComplex:
    links = tuple(cc.links if links is None else links)
    terms, entries = {}, {}
    for r in range(len(links) + 1):
        for S in combinations(links, r):
            S = frozenset(S)
            terms.setdefault(-r, []).append((S, labels_of(S)))
    for deg in range(-len(links), 0):
        tindex = {S: b for b, (S, _) in enumerate(terms[deg + 1])}
        ent = {}
        for a, (S, w1) in enumerate(terms[deg]):
            for i in sorted(S):
                T = S - {i}
                b = tindex[T]
                sign = (-1) ** sum(1 for j in S if j > i)
                ent[(b, a)] = (sign, w1, terms[deg + 1][b][1])
        entries[deg] = ent
    return PrincipalSeriesComplex(cc, k, deform, links, terms, entries, name)


def c_complex(n: int, lam=1, k: int = 4, q=2) -> PrincipalSeriesComplex:
    """The Steinberg cube: term S carries iota(delta_w) with I_w = S."""
    cc = CentralCharacter.chain(lam, n, q)
    return _cube(cc, k, "full", lambda S: label_for(n, S), f"C_{n}")


def cz_complex(n: int, Z, lam=1, k: int = 4, q=2, cc: CentralCharacter | None = None) -> PrincipalSeriesComplex:
    """Cube for the simple module attached to the vanishing pattern Z (t = 0):
    term S carries iota(delta_w) with I_w = S symmetric-difference Z."""
    Z = frozenset(Z)
    cc = cc or CentralCharacter.chain(lam, n, q)
    n = cc.n
    return _cube(cc, k, "s", lambda S: label_for(n, S ^ Z), f"C_{n}^Z{sorted(Z)}")


def standard_complex(cc: CentralCharacter, Z, k: int = 4) -> PrincipalSeriesComplex:
    """Cube over the joined links (those outside Z) with I_w = S union Z;
    its top cokernel is the deformed standard module."""
    Z = frozenset(Z)
    joined = tuple(i for i in cc.links if i not in Z)
    return _cube(cc, k, "full", lambda S: label_for(cc.n, S | Z), f"Std{sorted(Z)}", links=joined)


@dataclass(frozen=True)
class PointData:
    """A regular semisimple point seen through its central character: the
    links left unjoined by N and the segments in the inducing order."""

    cc: CentralCharacter
    Z: frozenset
    blocks: tuple  # segment lengths in the inducing order
    starts: tuple  # first value index (1-based, in cc order) of each segment

    @property
    def joined(self) -> tuple:
        return tuple(i for i in self.cc.links if i not in self.Z)

    def top_label(self) -> tuple:
        """Positions filled segment by segment, each segment in increasing values."""
        w = []
        for a, r in zip(self.starts, self.blocks):
            w.extend(range(a + r - 1, a - 1, -1))
        return tuple(w)

    def levi_label(self, S) -> tuple:
        """w with the segment blocks kept and I_w = S union Z, built blockwise."""
        S = set(S)
        w = []
        for a, r in zip(self.starts, self.blocks):
            local = label_for(r, {i - a + 1 for i in S if a <= i < a + r - 1})
            w.extend(a + x - 1 for x in local)
        return tuple(w)


def point_data(p) -> PointData:
    from .standard import central_character_of, kudla_order, segments_of

    cc = central_character_of(p.eigenvalues, p.qspec)
    vals = list(cc.values())
    index = {v: j + 1 for j, v in enumerate(vals)}
    order = kudla_order(segments_of(p), p.q)
    starts = tuple(index[s.head] for s in order)
    blocks = tuple(s.length for s in order)
    inside = set()
    for a, r in zip(starts, blocks):
        inside.update(range(a, a + r - 1))
    Z = frozenset(i for i in cc.links if i not in inside)
    return PointData(cc, Z, blocks, starts)


def levi_standard_complex(pd: PointData, k: int = 4) -> PrincipalSeriesComplex:
    """The same cube with segment-blockwise labels; its entries are
    computed on the segment Levi and induced."""
    C = _cube(pd.cc, k, "full", pd.levi_label, f"LeviStd{sorted(pd.Z)}", links=pd.joined)
    C.levi = pd.blocks
    return C


# exactness over truncated bases -------------------------------------------

@dataclass
class FreeComplex:
    """Differentials d[i]: C^i -> C^{i+1} between free A_k-modules."""

    base: SeriesRing
    ranks: dict
    d: dict

    @classmethod
    def from_realized(cls, C: PrincipalSeriesComplex, realized: dict | None = None) -> "FreeComplex":
        realized = realized or C.realize()
        rank = len(P.all_perms(C.cc.n))
        base = next(iter(realized.values())).ring if realized else C.cache.module(C.labels(0)[0]).base
        ranks = {deg: len(v) * rank for deg, v in C.terms.items()}
        return cls(base, ranks, dict(realized))

    def copy(self) -> "FreeComplex":
        return FreeComplex(self.base, dict(self.ranks), {i: m.copy() for i, m in self.d.items()})


def minimalize(F: FreeComplex) -> FreeComplex:
    """Cancel unit entries until every differential lies in m * (matrices)."""
    F = F.copy()
    while True:
        found = None
        for i in sorted(F.d):
            D = F.d[i]
            for r, row in enumerate(D.rows):
                for c, v in row.items():
                    if v.is_unit():
                        found = (i, r, c)
                        break
                if found:
                    break
            if found:
                break
        if not found:
            return F
        i, r, c = found
        D = F.d[i]
        phi_inv = D[r, c].inverse()
        col_c = {rr: row[c] for rr, row in enumerate(D.rows) if c in row and rr != r}
        row_r = {cc: v for cc, v in D.rows[r].items() if cc != c}
        # epsilon - delta phi^-1 psi on the remaining rows and columns
        newD = SMat(D.ring, D.nrows - 1, D.ncols - 1)
        rmap = [x for x in range(D.nrows) if x != r]
        cmap = [x for x in range(D.ncols) if x != c]
        cidx = {x: j for j, x in enumerate(cmap)}
        for a, rr in enumerate(rmap):
            row = {cidx[cc]: v for cc, v in D.rows[rr].items() if cc != c}
            delta = col_c.get(rr)
            if delta is not None:
                fac = delta * phi_inv
                for cc, psi in row_r.items():
                    j = cidx[cc]
                    nv = row.get(j, D.ring.zero()) - fac * psi
                    if nv:
                        row[j] = nv
                    else:
                        row.pop(j, None)
            newD.rows[a] = row
        F.d[i] = newD
        # drop row c of d[i-1] (the component into the cancelled source)
        if i - 1 in F.d:
            P_ = F.d[i - 1]
            F.d[i - 1] = SMat(P_.ring, P_.nrows - 1, P_.ncols,
                              [row for x, row in enumerate(P_.rows) if x != c])
        # drop column r of d[i+1]
        if i + 1 in F.d:
            N_ = F.d[i + 1]
            keep = [x for x in range(N_.ncols) if x != r]
            F.d[i + 1] = N_.submatrix(range(N_.nrows), keep)
        F.ranks[i] -= 1
        F.ranks[i + 1] -= 1


def _flat_matrix(D: SMat, k: int) -> list[dict]:
    """Q-linear map of D on (A/m^k)^ncols -> (A/m^k)^nrows as sparse rows."""
    ring = series_ring(D.ring.names, k)
    N = len(ring.monomials)
    rows: dict = {}
    for i, r in enumerate(D.rows):
        for j, f in r.items():
            fk = f.truncate(k) if D.ring.k != k else f
            for b in range(N):
                for c, cb in ring.mul_row(b):
                    coef = fk.c.get(c)
                    if coef:
                        key = i * N + cb
                        row = rows.setdefault(key, {})
                        col = j * N + b
                        row[col] = row.get(col, ZERO) + coef
    return [{c: v for c, v in r.items() if v} for r in rows.values()]


def _kernel(rows: list[dict], ncols: int) -> list[dict]:
    from ..exact import kernel_from_rref
    red, piv = rref([r for r in rows if r])
    return [{j: v for j, v in enumerate(vec) if v} for vec in kernel_from_rref(red, piv, ncols)]


def _image_basis(D: SMat, k: int) -> tuple[list, list]:
    # image is spanned by the flattened columns
    ring = series_ring(D.ring.names, k)
    N = len(ring.monomials)
    colvecs: dict = {}
    for i, r in enumerate(D.rows):
        for j, f in r.items():
            fk = f.truncate(k) if D.ring.k != k else f
            for b in range(N):
                for c, cb in ring.mul_row(b):
                    coef = fk.c.get(c)
                    if coef:
                        vec = colvecs.setdefault(j * N + b, {})
                        key = i * N + cb
                        vec[key] = vec.get(key, ZERO) + coef
    return rref([{a: v for a, v in vec.items() if v} for vec in colvecs.values()])


def _reduce(vec: dict, red: list, piv: list) -> dict:
    vec = dict(vec)
    for row, p in zip(red, piv):
        c = vec.get(p)
        if c:
            for j, x in row.items():
                nv = vec.get(j, ZERO) - c * x
                if nv:
                    vec[j] = nv
                else:
                    vec.pop(j, None)
    return vec


def _project(vec: dict, ring_hi: SeriesRing, ring_lo: SeriesRing) -> dict:
    Nh, Nl = len(ring_hi.monomials), len(ring_lo.monomials)
    out = {}
    for key, v in vec.items():
        blk, m = divmod(key, Nh)
        if m < Nl:  # degree-sorted monomials, so low-degree ones come first
            out[blk * Nl + m] = v
    return out


def lift_test(F: FreeComplex, degree: int, k_hi: int, k_lo: int) -> dict:
    """Cycles of C^degree mod m^{k_hi}, reduced mod m^{k_lo}, lie in the
    boundaries mod m^{k_lo}."""
    ring_hi = series_ring(F.base.names, k_hi)
    ring_lo = series_ring(F.base.names, k_lo)
    r = F.ranks.get(degree, 0)
    if r == 0:
        return {"degree": degree, "rank": 0, "exact": True, "cycles": 0}
    Nh = len(ring_hi.monomials)
    out_d = F.d.get(degree)
    if out_d is not None and out_d.nrows:
        cyc = _kernel(_flat_matrix(out_d, k_hi), r * Nh)
    else:
        cyc = [{j: ONE} for j in range(r * Nh)]
    in_d = F.d.get(degree - 1)
    if in_d is not None and in_d.ncols:
        red, piv = _image_basis(in_d, k_lo)
    else:
        red, piv = [], []
    bad = 0
    for z in cyc:
        rest = _reduce(_project(z, ring_hi, ring_lo), red, piv)
        if rest:
            bad += 1
    return {"degree": degree, "rank": r, "cycles": len(cyc), "non_boundaries": bad, "exact": bad == 0,
            "k_hi": k_hi, "k_lo": k_lo, "informative": k_lo >= 2}


def cokernel_dimension(F: FreeComplex, degree: int, k: int) -> int:
    """dim_Q of C^degree / image at precision k (right exact, so this is
    H^degree tensor A/m^k when degree is the top)."""
    N = len(series_ring(F.base.names, k).monomials)
    r = F.ranks.get(degree, 0)
    in_d = F.d.get(degree - 1)
    if in_d is None or not in_d.ncols:
        return r * N
    _, piv = _image_basis(in_d, k)
    return r * N - len(piv)


def exactness_report(C: PrincipalSeriesComplex, margin: int = 2, levels: Sequence[int] | None = None) -> dict:
    """Minimalize the realized complex at precision k and lift-test every
    negative degree from k down to the requested levels."""
    realized = C.realize()
    F = minimalize(FreeComplex.from_realized(C, realized))
    k = C.k
    # at k_lo = 1 every cycle of a minimal complex projects to zero; avoid it when possible
    levels = list(levels) if levels is not None else [max(k - margin, 2 if k >= 3 else 1)]
    tests = []
    for deg in sorted(F.ranks):
        if deg >= 0:
            continue
        for lo in levels:
            tests.append(lift_test(F, deg, k, lo))
    return {
        "ranks": {str(d): C.ranks()[d] for d in sorted(C.ranks())},
        "minimal_ranks": {str(d): F.ranks[d] for d in sorted(F.ranks)},
        "lift_tests": tests,
        "exact_negative": all(t["exact"] for t in tests),
        "minimal": F,
    }


# the top cokernel at the closed point ---------------------------------------

def top_cokernel_module(C: PrincipalSeriesComplex, realized: dict | None = None):
    """coker(d^{-1}) tensored down to the residue field, as an H-module.

    Right exactness of the tensor product makes this the reduction of H^0.
    """
    from .modules import generated_submodule, quotient_module, specialize

    realized = realized or C.realize()
    (w0,) = C.labels(0)
    M0 = specialize(C.cache.module(w0))
    D = realized.get(-1)
    if D is None:
        return M0
    cols = []
    const = D.constant_part()
    for j in range(D.ncols):
        col = [const[i][j] for i in range(D.nrows)]
        if any(col):
            cols.append(col)
    sub = generated_submodule(M0, cols) if cols else []
    return quotient_module(M0, sub, name=f"H0({C.name})")


def ll_point(n: int, Z, lam=1, q_sqrt=2):
    """The chain point whose nilpotent joins the pair at link i for i not in Z."""
    from ..exact import QSpec
    from ..params import PhiNPoint
    q = QSpec(to_q(q_sqrt)).q
    vals = [to_q(lam) / q ** e for e in range(n)]
    edges = [(i + 1, i) for i in range(1, n) if i not in set(Z)]
    return PhiNPoint.diagonal(vals, edges, q_sqrt)


def ll_z_check(n: int, Z, lam=1, k: int = 3, q_sqrt=2) -> dict:
    """Compare the cokernel of C_Z with the head of the standard module at
    the matching chain point: dimension, simplicity and Jacquet characters."""
    from .modules import is_simple, jacquet_characters, simple_quotient
    from .standard import standard_module

    C = cz_complex(n, Z, lam, k, q_sqrt)
    R = C.realize()
    H = top_cokernel_module(C, R)
    L = simple_quotient(standard_module(ll_point(n, Z, lam, q_sqrt)))
    jH, jL = jacquet_characters(H), jacquet_characters(L)
    return {
        "Z": sorted(Z),
        "d_squared_zero": C.d_squared_zero(R),
        "dim": H.dim, "dim_LL": L.dim,
        "simple": is_simple(H),
        "jacquet_match": jH == jL,
        "jacquet": [[q_str(x) for x in c] for c in jH],
        "ok": H.dim == L.dim and is_simple(H) and jH == jL,
    }


def steinberg_projection_check(n: int, lam=1, k: int = 4, q_sqrt=2) -> dict:
    """pi(T_v (x) 1) = (-1)^l(v) mod s kills the image of d^{-1} and the
    cokernel at level d has the size of Q[[t]]/t^d."""
    C = c_complex(n, lam, k, q_sqrt)
    R = C.realize()
    w0 = C.labels(0)[0]
    M0 = C.cache.module(w0)
    base = M0.base
    svars = [i for i, nm in enumerate(base.names) if nm.startswith("s")]
    # pi on a vector: sum_v (-1)^l(v) x_v, with s set to zero
    def pi(vec: dict) -> TruncSeries:
        acc = base.zero()
        for v, x in vec.items():
            sign = (-1) ** P.length(M0.labels[v])
            acc = acc + (x if sign > 0 else -x)
        return TruncSeries(base, {m: c for m, c in acc.c.items()
                                  if all(base.monomials[m][i] == 0 for i in svars)})
    kills = True
    if -1 in R:
        for col in R[-1].columns():
            if not pi(col).is_zero():
                kills = False
                break
    F = minimalize(FreeComplex.from_realized(C, R))
    levels = {d: cokernel_dimension(F, 0, d) for d in range(1, k + 1)}
    return {"pi_kills_image": kills,
            "cokernel_dims": levels,
            "matches_t_line": all(v == d for d, v in levels.items()),
            "ok": kills and all(v == d for d, v in levels.items())}
