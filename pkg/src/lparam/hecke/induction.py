"""Levi principal series and parabolic induction of modules and maps.

For a block Levi M the span of T_u (u in W_M) inside iota(delta_w) is an
H_M-submodule isomorphic to H_M (x)_{H_T} delta_w.  Inducing back uses the
factorization T_w = T_{v} T_u (v minimal in its coset, u in W_M), so that
H (x)_{H_M} V has basis T_v (x) e over minimal coset representatives.
"""

from __future__ import annotations

from typing import Sequence

from . import perm as P
from .modules import CentralCharacter, HeckeModule, ModuleError, principal_series
from .smat import SMat


def levi_principal_series(w, cc: CentralCharacter, blocks: Sequence[int], k: int = 4,
                          deform: str = "full") -> HeckeModule:
    """H_M (x)_{H_T} delta_w, with T_s left undefined for s outside M."""
    blocks = tuple(blocks)
    G = principal_series(w, cc, k, deform)
    inside = set(P.levi_simples(blocks))
    keep = [j for j, v in enumerate(G.labels) if set(P.reduced_word(v)) <= inside]
    idx = {j: a for a, j in enumerate(keep)}

    def restrict(m: SMat) -> SMat:
        rows = []
        for j in keep:
            rows.append({idx[c]: v for c, v in m.rows[j].items() if c in idx})
        # closure of the span under H_M
        for c in keep:
            for r, row in enumerate(m.rows):
                if r not in idx and c in row:
                    raise ModuleError("span of W_M is not stable")
        return SMat(m.ring, len(keep), len(keep), rows)

    T = [restrict(G.T[i - 1]) if i in inside else None for i in range(1, cc.n)]
    M = HeckeModule(G.alg, G.base, T, [restrict(m) for m in G.theta], [restrict(m) for m in G.theta_inv],
                    labels=[G.labels[j] for j in keep], name=G.name + f"|M{blocks}")
    M.w, M.cc, M.blocks = tuple(w), cc, blocks
    return M


class InducedModule:
    """H (x)_{H_M} V with basis T_v (x) e_j ordered by (v, j)."""

    def __init__(self, V: HeckeModule, blocks: Sequence[int]):
        self.V = V
        self.blocks = tuple(blocks)
        self.reps = P.min_coset_reps(V.n, self.blocks)
        self.rep_index = {v: i for i, v in enumerate(self.reps)}
        self.module = self._build()

    def _vector_of(self, h_terms: dict, j: int) -> dict:
        """Coordinates of (sum c T_w theta_y) (x) e_j."""
        V, out = self.V, {}
        d = V.dim
        for (w, y), c in h_terms.items():
            vmin, u = P.coset_split(w, self.blocks)
            col = (V.act_T(u) @ V.act_theta(y)).rows
            b = self.rep_index[vmin]
            for r, row in enumerate(col):
                x = row.get(j)
                if x is not None:
                    key = b * d + r
                    val = x.scale(c)
                    out[key] = out[key] + val if key in out else val
        return {a: v for a, v in out.items() if v}

    def _matrix_of(self, h) -> SMat:
        alg, V = self.V.alg, self.V
        cols = []
        for v in self.reps:
            hv = alg.mul(h, alg.T(v))
            for j in range(V.dim):
                cols.append(self._vector_of(hv.terms, j))
        return SMat.from_columns(V.base, len(self.reps) * V.dim, cols)

    def _build(self) -> HeckeModule:
        alg, n = self.V.alg, self.V.n
        T = [self._matrix_of(alg.Ts(i)) for i in range(1, n)]
        theta, theta_inv = [], []
        for j in range(n):
            theta.append(self._matrix_of(alg.theta_j(j + 1, 1)))
            theta_inv.append(self._matrix_of(alg.theta_j(j + 1, -1)))
        labels = [(v, j) for v in self.reps for j in range(self.V.dim)]
        return HeckeModule(alg, self.V.base, T, theta, theta_inv, labels=labels, name=f"Ind({self.V.name})")

    def induced_map(self, f: SMat, other: "InducedModule") -> SMat:
        """1 (x) f : H (x) V -> H (x) V'."""
        from .smat import block_diag
        if other.reps != self.reps:
            raise ModuleError("different Levi")
        return block_diag(self.V.base, [f] * len(self.reps))

    def to_principal_series(self) -> SMat:
        """Basis change T_v (x) T_u -> T_{vu}, for V a Levi principal series."""
        n = self.V.n
        G_labels = P.all_perms(n)
        gidx = {w: i for i, w in enumerate(G_labels)}
        d = self.V.dim
        cols = []
        for v in self.reps:
            for u in self.V.labels:
                cols.append({gidx[P.compose(v, u)]: self.V.base.one()})
        if len(cols) != len(G_labels):
            raise ModuleError("induced module does not have rank n!")
        return SMat.from_columns(self.V.base, len(G_labels), cols) if d else SMat(self.V.base, 0, 0)


def identify_multiple(F: SMat, f: SMat):
    """The c with F = c f, read off at a unit entry of f; None if no such c."""
    for r, row in enumerate(f.rows):
        for col, v in row.items():
            if v.is_unit():
                c = F[r, col] * v.inverse()
                return c if F == f.scale(c) else None
    return None


def induced_realization(C) -> tuple[dict, dict]:
    """Realize a cube whose labels keep the segment blocks: every entry is
    the induction of the Levi intertwiner, moved to the principal-series
    basis and identified as c times the G intertwiner.

    Returns (differentials, {(degree, row, col): c}).
    """
    from .homs import ModuleCache

    blocks = C.levi
    LM = ModuleCache(C.cc, C.k, C.deform, levi=blocks)
    GM = C.cache
    rank = len(P.all_perms(C.cc.n))
    induced: dict = {}

    def ind(w):
        hit = induced.get(w)
        if hit is None:
            I = InducedModule(LM.module(w), blocks)
            hit = induced[w] = (I, I.to_principal_series())
        return hit

    out, scalars = {}, {}
    for deg in C.degrees():
        if deg + 1 not in C.terms:
            continue
        nsrc, ntgt = len(C.terms[deg]), len(C.terms[deg + 1])
        base = None
        blocks_out = {}
        for (b, a), (sign, w1, w2) in C.entries.get(deg, {}).items():
            (I1, P1), (I2, P2) = ind(w1), ind(w2)
            F = P2 @ I1.induced_map(LM.f_hat(w1, w2).matrix, I2) @ P1.transpose()
            g = GM.f_hat(w1, w2).matrix
            c = identify_multiple(F, g)
            if c is None or not c.is_unit():
                raise ModuleError(f"induced map {w1}->{w2} is not a unit multiple of the G intertwiner")
            scalars[(deg, b, a)] = c
            blocks_out[(b, a)] = F if sign > 0 else -F
            base = F.ring
        M = SMat(base, ntgt * rank, nsrc * rank)
        for (b, a), F in blocks_out.items():
            for i, row in enumerate(F.rows):
                for j, v in row.items():
                    M.rows[b * rank + i][a * rank + j] = v
        out[deg] = M
    return out, scalars
