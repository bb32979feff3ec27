"""Finite-rank Hecke modules over truncated deformation bases.

A module is given by action matrices of the generators T_{s_i}, theta_j and
theta_j^{-1} over a :class:`SeriesRing`.  Principal series and parabolic
inductions are built in the basis T_v (x) 1 by moving theta past T_v with
the algebra's rewrite rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..exact import ONE, ZERO, Q, QSpec, as_qspec, kernel_from_rref, q_str, rref, to_q
from ..series import SeriesRing, TruncSeries, series_ring
from . import perm as P
from .algebra import HeckeAlgebra, HeckeElement, make_hecke
from .smat import SMat


class ModuleError(ValueError):
    pass


@dataclass(frozen=True)
class CentralCharacter:
    """Concatenated q-strings: string a is (lam_a, q^-1 lam_a, ..., q^-(r_a-1) lam_a)."""

    strings: tuple  # ((head, length), ...)
    qspec: QSpec

    @classmethod
    def make(cls, strings, q=2) -> "CentralCharacter":
        return cls(tuple((to_q(h), int(r)) for h, r in strings), as_qspec(q))

    @classmethod
    def chain(cls, lam, n: int, q=2) -> "CentralCharacter":
        return cls.make([(lam, n)], q)

    @property
    def n(self) -> int:
        return sum(r for _, r in self.strings)

    @property
    def lengths(self) -> tuple:
        return tuple(r for _, r in self.strings)

    @property
    def links(self) -> tuple:
        out, pos = [], 0
        for _, r in self.strings:
            out.extend(range(pos + 1, pos + r))
            pos += r
        return tuple(out)

    def positions(self) -> list[tuple[int, int]]:
        """(string index, offset within string) for every position."""
        out = []
        for a, (_, r) in enumerate(self.strings):
            out.extend((a, e) for e in range(r))
        return out

    def values(self) -> tuple:
        q = self.qspec.q
        return tuple(self.strings[a][0] / q ** e for a, e in self.positions())

    def base(self, k: int, deform: str = "full") -> SeriesRing:
        if deform == "none" or k == 1:
            return series_ring((), 1)
        single = len(self.strings) == 1
        t = ("t",) if single else tuple(f"t{a + 1}" for a in range(len(self.strings)))
        s = tuple(f"s{p}" for p in self.links)
        if deform == "full":
            return series_ring(t + s, k)
        if deform == "s":
            return series_ring(s, k)
        if deform == "t":
            return series_ring(t, k)
        raise ValueError(f"unknown deformation {deform!r}")

    def deformed(self, k: int, deform: str = "full") -> tuple:
        """Deformed values chi_j = q^-e (lam_a + t_a + sum of s_p before j)."""
        ring = self.base(k, deform)
        q = self.qspec.q
        names = set(ring.names)
        single = len(self.strings) == 1
        out = []
        for j, (a, e) in enumerate(self.positions(), start=1):
            lam = self.strings[a][0]
            v = ring.const(lam)
            tn = "t" if single else f"t{a + 1}"
            if tn in names:
                v = v + ring.var(tn)
            for p in range(j - e, j):
                if f"s{p}" in names:
                    v = v + ring.var(f"s{p}")
            out.append(v.scale(1 / q ** e))
        return tuple(out)

    def to_json(self) -> dict:
        return {"strings": [[q_str(h), r] for h, r in self.strings], "q": q_str(self.qspec.q)}


class HeckeModule:
    """Action of T_{s_i}, theta_j, theta_j^{-1} on a free module over ``base``."""

    def __init__(self, alg: HeckeAlgebra, base: SeriesRing, T: Sequence[SMat], theta: Sequence[SMat],
                 theta_inv: Sequence[SMat], labels: Sequence | None = None, name: str = ""):
        self.alg = alg
        self.base = base
        self.T = list(T)
        self.theta = list(theta)
        self.theta_inv = list(theta_inv)
        self.dim = theta[0].nrows if theta else 0
        self.labels = list(labels) if labels is not None else list(range(self.dim))
        self.name = name
        self._Tw: dict = {}
        self._theta_x: dict = {}

    def __repr__(self) -> str:
        return f"HeckeModule({self.name or '?'}, dim={self.dim}, base={self.base})"

    @property
    def n(self) -> int:
        return self.alg.n

    def identity(self) -> SMat:
        return SMat.identity(self.base, self.dim)

    def act_T(self, w: tuple) -> SMat:
        hit = self._Tw.get(w)
        if hit is None:
            hit = self.identity()
            for i in reversed(P.reduced_word(w)):
                hit = self.T[i - 1] @ hit
            self._Tw[w] = hit
        return hit

    def act_theta(self, x: tuple) -> SMat:
        hit = self._theta_x.get(x)
        if hit is None:
            hit = self.identity()
            for j, e in enumerate(x):
                m = self.theta[j] if e > 0 else self.theta_inv[j]
                for _ in range(abs(e)):
                    hit = m @ hit
            self._theta_x[x] = hit
        return hit

    def act(self, h: HeckeElement) -> SMat:
        out = SMat.zeros(self.base, self.dim, self.dim)
        for (w, x), c in h.terms.items():
            out = out + (self.act_T(w) @ self.act_theta(x)).scale(c)
        return out

    def generators(self) -> list[SMat]:
        # T[i] is None for simples outside a Levi subalgebra
        return [g for g in self.T if g is not None] + self.theta + self.theta_inv

    def check_relations(self) -> dict[str, bool]:
        n, q = self.n, self.alg.q
        one = self.identity()
        out = {}
        have = [T is not None for T in self.T]
        out["quadratic"] = all(((T - one.scale(q)) @ (T + one)).is_zero() for T in self.T if T is not None)
        braid = all(self.T[i] @ self.T[i + 1] @ self.T[i] == self.T[i + 1] @ self.T[i] @ self.T[i + 1]
                    for i in range(n - 2) if have[i] and have[i + 1])
        braid &= all(self.T[i] @ self.T[j] == self.T[j] @ self.T[i]
                     for i in range(n - 1) for j in range(i + 2, n - 1) if have[i] and have[j])
        out["braid"] = braid
        out["theta_commute"] = all(self.theta[a] @ self.theta[b] == self.theta[b] @ self.theta[a]
                                   for a in range(n) for b in range(a + 1, n))
        out["theta_inverse"] = all(self.theta[j] @ self.theta_inv[j] == one for j in range(n))
        cross = True
        for i in range(1, n):
            T = self.T[i - 1]
            if T is None:
                continue
            a, b = self.theta[i - 1], self.theta[i]
            # theta_i T - T theta_{i+1} = (q-1) theta_i  (the x = e_i case)
            cross &= (a @ T - T @ b) == a.scale(q - 1)
            # theta_{i+1} T - T theta_i = -(q-1) theta_i
            cross &= (b @ T - T @ a) == a.scale(1 - q)
            for j in range(1, n + 1):
                if j not in (i, i + 1):
                    cross &= self.theta[j - 1] @ T == T @ self.theta[j - 1]
        out["cross"] = cross
        return out

    def relations_ok(self) -> bool:
        return all(self.check_relations().values())

    def is_hom_to(self, other: "HeckeModule", F: SMat) -> bool:
        """F : self -> other commutes with all generators."""
        return all(F @ g1 == g2 @ F for g1, g2 in zip(self.generators(), other.generators()))

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "q": q_str(self.alg.q),
            "base": {"variables": list(self.base.names), "k": self.base.k},
            "dimension": self.dim,
            "labels": [list(v) if isinstance(v, tuple) else v for v in self.labels],
            "T": [m.to_json() if m is not None else None for m in self.T],
            "theta": [m.to_json() for m in self.theta],
        }


def _theta_value(chi: Sequence[TruncSeries], inv: Sequence[TruncSeries], z: tuple, cache: dict) -> TruncSeries:
    hit = cache.get(z)
    if hit is None:
        hit = chi[0].ring.one()
        for j, e in enumerate(z):
            f = chi[j] if e > 0 else inv[j]
            for _ in range(abs(e)):
                hit = hit * f
        cache[z] = hit
    return hit


def induced_character(alg: HeckeAlgebra, blocks: Sequence[int], chi: Sequence[TruncSeries],
                      eps: Sequence | None = None, name: str = "") -> HeckeModule:
    """H (x)_{H_M} (one-dimensional character of H_M).

    ``blocks`` gives the Levi, ``chi[j]`` the value of theta_j on the
    character and ``eps[b]`` the scalar by which T_s acts in block b.
    """
    n = alg.n
    blocks = tuple(blocks)
    if sum(blocks) != n or len(chi) != n:
        raise ModuleError("blocks and character must cover n positions")
    eps = [to_q(e) for e in (eps or [-1] * len(blocks))]
    block_of = []
    for b, r in enumerate(blocks):
        block_of.extend([b] * r)
    base = chi[0].ring
    inv = [c.inverse() for c in chi]
    reps = P.min_coset_reps(n, blocks)
    index = {v: i for i, v in enumerate(reps)}
    dim = len(reps)
    cache: dict = {}
    split_cache: dict = {}

    def reduce(u: tuple) -> tuple[int, Q]:
        hit = split_cache.get(u)
        if hit is None:
            vmin, um = P.coset_split(u, blocks)
            c = ONE
            for i in P.reduced_word(um):
                c *= eps[block_of[i - 1]]
            hit = (index[vmin], c)
            split_cache[u] = hit
        return hit

    def theta_matrix(x: tuple) -> SMat:
        cols = []
        for v in reps:
            col: dict = {}
            for (u, z), c in alg.cross(x, v).items():
                r, sign = reduce(u)
                val = _theta_value(chi, inv, z, cache).scale(c * sign)
                col[r] = col[r] + val if r in col else val
            cols.append({r: v for r, v in col.items() if v})
        return SMat.from_columns(base, dim, cols)

    T = []
    for i in range(1, n):
        cols = []
        for v in reps:
            col: dict = {}
            for u, c in alg._ts_times(i, v).items():
                r, sign = reduce(u)
                col[r] = col.get(r, ZERO) + c * sign
            cols.append({r: base.const(c) for r, c in col.items() if c})
        T.append(SMat.from_columns(base, dim, cols))
    theta, theta_inv = [], []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        theta.append(theta_matrix(tuple(e)))
        e[j] = -1
        theta_inv.append(theta_matrix(tuple(e)))
    return HeckeModule(alg, base, T, theta, theta_inv, labels=reps, name=name)


def principal_series(w, cc: CentralCharacter, k: int = 4, deform: str = "full") -> HeckeModule:
    """iota(delta_w): rank n! with theta_i acting on 1 (x) 1 by chi_{w(i)}."""
    w = tuple(w)
    alg = make_hecke(cc.n, cc.qspec)
    chi = cc.deformed(k, deform)
    delta = [chi[w[i] - 1] for i in range(cc.n)]
    M = induced_character(alg, (1,) * cc.n, delta, name="iota" + "".join(map(str, w)))
    M.w = w
    M.cc = cc
    return M


def principal_series_of(alg: HeckeAlgebra, chi: Sequence[TruncSeries], name: str = "") -> HeckeModule:
    return induced_character(alg, (1,) * alg.n, chi, name=name)


def steinberg_character(lam, r: int, base: SeriesRing, q, tvar: str | None = None) -> list[TruncSeries]:
    """(q^-(r-1) mu, ..., q^-1 mu, mu) with mu = lam (+ t)."""
    q = to_q(q)
    mu = base.const(lam)
    if tvar is not None and tvar in base.names:
        mu = mu + base.var(tvar)
    return [mu.scale(1 / q ** (r - 1 - i)) for i in range(r)]


def steinberg_module(lam, r: int, deformed: bool = False, q=2, k: int = 4) -> HeckeModule:
    """St(lam, r): T_s -> -1, Jacquet character of the chain (deformed by t)."""
    qs = as_qspec(q)
    alg = make_hecke(r, qs)
    base = series_ring(("t",), k) if deformed and k > 1 else series_ring((), 1)
    chi = steinberg_character(lam, r, base, qs.q, "t" if deformed else None)
    return induced_character(alg, (r,), chi, [-1], name=f"St({q_str(to_q(lam))},{r})")


# linear algebra over the residue field -------------------------------------

def _dense(m: SMat) -> list[list]:
    return m.constant_part()


def _matvec(m: list[list], v: Sequence) -> list:
    return [sum((a * b for a, b in zip(row, v) if a and b), ZERO) for row in m]


def _span_basis(vectors: list) -> tuple[list[dict], list[int]]:
    rows = [{j: v for j, v in enumerate(vec) if v} for vec in vectors]
    return rref(rows)


def generated_submodule(M: HeckeModule, vectors: Sequence[Sequence]) -> list[list]:
    """Basis (residue field) of the H-submodule generated by ``vectors``."""
    gens = [_dense(g) for g in M.generators()]
    basis_rows, piv = _span_basis([list(v) for v in vectors])
    frontier = [_row_to_vec(r, M.dim) for r in basis_rows]
    while frontier:
        new = []
        for v in frontier:
            for g in gens:
                gv = _matvec(g, v)
                red2, piv2 = rref(basis_rows + [{j: x for j, x in enumerate(gv) if x}])
                if len(piv2) > len(piv):
                    basis_rows, piv = red2, piv2
                    new.append(gv)
        frontier = new
    return [_row_to_vec(r, M.dim) for r in basis_rows]


def _row_to_vec(row: dict, dim: int) -> list:
    v = [ZERO] * dim
    for j, x in row.items():
        v[j] = x
    return v


def quotient_module(M: HeckeModule, sub: Sequence[Sequence], name: str = "") -> HeckeModule:
    """M / sub over the residue field (``sub`` must be invariant)."""
    red, piv = _span_basis([list(v) for v in sub])
    keep = [j for j in range(M.dim) if j not in set(piv)]
    base = series_ring((), 1)

    def reduce(vec: list) -> list:
        vec = list(vec)
        for r, p in zip(red, piv):
            c = vec[p]
            if c:
                for j, x in r.items():
                    vec[j] -= c * x
        return [vec[j] for j in keep]

    def induced(m: SMat) -> SMat:
        dense = _dense(m)
        cols = []
        for j in keep:
            col = [dense[i][j] for i in range(M.dim)]
            cols.append(reduce(col))
        rows = [[cols[c][r] for c in range(len(keep))] for r in range(len(keep))]
        return SMat.from_scalars(base, rows) if keep else SMat(base, 0, 0)

    Q_ = HeckeModule(M.alg, base, [induced(g) for g in M.T], [induced(g) for g in M.theta],
                     [induced(g) for g in M.theta_inv], labels=[M.labels[j] for j in keep], name=name)
    return Q_


def specialize(M: HeckeModule) -> HeckeModule:
    """Reduction modulo the maximal ideal of the base."""
    base = series_ring((), 1)
    conv = lambda m: SMat.from_scalars(base, _dense(m)) if M.dim else SMat(base, 0, 0)
    return HeckeModule(M.alg, base, [conv(g) for g in M.T], [conv(g) for g in M.theta],
                       [conv(g) for g in M.theta_inv], labels=M.labels, name=M.name + "|0")


# Jacquet restriction ---------------------------------------------------------

class InseparableSpectrum(ModuleError):
    pass


def jacquet_characters(M: HeckeModule) -> list[tuple]:
    """Generalized theta-eigencharacters with multiplicity (sorted).

    The basis T_v is ordered by length, so the theta matrices are upper
    triangular and the characters can be read off the diagonals.  That is
    checked, not assumed.
    """
    if not all(m.is_upper_triangular() for m in M.theta):
        if M.base.k == 1:
            return _jacquet_by_eigenspaces(M)
        raise InseparableSpectrum("theta action is not triangular in the module basis")
    diags = [m.diagonal() for m in M.theta]
    chars = []
    for i in range(M.dim):
        if M.base.k == 1:
            chars.append(tuple(d[i].constant() for d in diags))
        else:
            chars.append(tuple(d[i] for d in diags))
    if M.base.k == 1:
        return sorted(chars)
    return sorted(chars, key=lambda c: tuple(tuple(sorted(x.coefficients().items())) for x in c))


def _jacquet_by_eigenspaces(M: HeckeModule) -> list[tuple]:
    """Generalized eigencharacters over Q through a generic combination of
    the theta matrices (for modules without a triangular basis)."""
    from ..exact import RatMatrix, rank_kernel
    from ..params import ParameterError, _rational_roots

    n = M.dim
    thetas = [RatMatrix(_dense(m)) for m in M.theta]
    Z = RatMatrix.zeros(n, n)
    for j, th in enumerate(thetas):
        Z = Z + th.scale(7 ** j)
    try:
        roots = _rational_roots(Z)
    except ParameterError as exc:
        raise InseparableSpectrum(str(exc)) from exc
    out = []
    eye = RatMatrix.identity(n)
    for rho in sorted(set(roots)):
        m = roots.count(rho)
        A = Z - eye.scale(rho)
        Am = eye
        for _ in range(m):
            Am = Am @ A
        _, ker = rank_kernel(Am)
        if len(ker) != m:
            raise InseparableSpectrum("generalized eigenspace has the wrong dimension")
        B = RatMatrix(ker).transpose()
        sub = _independent_rows(B, m)
        Binv = RatMatrix([B.rows[i] for i in sub]).inverse()
        chi = []
        for th in thetas:
            C = Binv @ RatMatrix([(th @ B).rows[i] for i in sub])
            mu = sum((C[i, i] for i in range(m)), ZERO) / m
            N = C - RatMatrix.identity(m).scale(mu)
            P_ = RatMatrix.identity(m)
            for _ in range(m):
                P_ = P_ @ N
            if not P_.is_zero():
                raise InseparableSpectrum("theta_j is not scalar on a generalized eigenspace")
            chi.append(mu)
        out.extend([tuple(chi)] * m)
    return sorted(out)


def _independent_rows(B, m: int) -> list[int]:
    chosen, rows = [], []
    for i, r in enumerate(B.rows):
        cand = rows + [{j: v for j, v in enumerate(r) if v}]
        if len(rref(cand)[1]) > len(chosen):
            chosen.append(i)
            rows = cand
        if len(chosen) == m:
            break
    return chosen


def eigenvectors(M: HeckeModule) -> dict[tuple, list]:
    """Joint theta-eigenvectors at the residue field, one per character if
    the spectrum is multiplicity free."""
    thetas = [_dense(m) for m in M.theta]
    out = {}
    for chi in sorted(set(jacquet_characters(specialize(M) if M.base.k > 1 else M))):
        rows = []
        for j, m in enumerate(thetas):
            for i in range(M.dim):
                r = {c: (m[i][c] - (chi[j] if c == i else ZERO)) for c in range(M.dim)}
                r = {c: v for c, v in r.items() if v}
                if r:
                    rows.append(r)
        red, piv = rref(rows)
        out[chi] = kernel_from_rref(red, piv, M.dim)
    return out


def is_semisimple_theta(M: HeckeModule) -> bool:
    ev = eigenvectors(M)
    return sum(len(v) for v in ev.values()) == M.dim


def radical(M: HeckeModule) -> list[list]:
    """Sum of the proper submodules generated by theta-eigenvectors.

    For multiplicity-free theta spectrum every submodule is a sum of
    eigenlines, so this is the sum of all proper submodules; it is the
    radical when the head is simple (checked by :func:`simple_quotient`).
    """
    M0 = specialize(M) if M.base.k > 1 else M
    ev = eigenvectors(M0)
    if any(len(v) != 1 for v in ev.values()) or sum(len(v) for v in ev.values()) != M0.dim:
        raise ModuleError("theta spectrum is not multiplicity free")
    subs = []
    for chi, vecs in ev.items():
        S = generated_submodule(M0, [list(vecs[0])])
        if len(S) < M0.dim:
            subs.extend(S)
    if not subs:
        return []
    red, piv = _span_basis(subs)
    return [_row_to_vec(r, M0.dim) for r in red]


def is_simple(M: HeckeModule) -> bool:
    if M.dim == 0:
        return False
    ev = eigenvectors(M)
    return all(len(generated_submodule(M, [list(v)])) == M.dim for vecs in ev.values() for v in vecs)


def simple_quotient(M: HeckeModule, name: str = "") -> HeckeModule:
    M0 = specialize(M) if M.base.k > 1 else M
    R = radical(M0)
    L = quotient_module(M0, R, name=name or f"head({M.name})")
    if not is_simple(L):
        raise ModuleError("head is not simple")
    return L


def steinberg_quotient_check(lam, r: int, q=2) -> dict:
    """Build St(lam, r) as iota(chi)/(sum of sub-induced images) and compare."""
    qs = as_qspec(q)
    alg = make_hecke(r, qs)
    base = series_ring((), 1)
    chi = steinberg_character(lam, r, base, qs.q)
    M = principal_series_of(alg, chi, name="iota_St")
    one = [ONE] + [ZERO] * (M.dim - 1)
    sub = []
    for i in range(1, r):
        v = _matvec(_dense(M.T[i - 1]), one)
        v = [a + b for a, b in zip(v, one)]  # (T_s + 1)(1 x 1)
        sub.extend(generated_submodule(M, [v]))
    quo = quotient_module(M, sub, name="St-quotient")
    ref = steinberg_module(lam, r, q=qs)
    same = quo.dim == 1 and all(
        _dense(a) == _dense(b) for a, b in zip(quo.generators(), ref.generators()))
    return {"induced_dim": M.dim, "quotient_dim": quo.dim, "matches": same}
