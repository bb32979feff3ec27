"""Points (phi, N) of the parameter variety with phi N = q^-1 N phi.

Chains, Jordan types, the reverse-dominance order on partitions, stable
flags, tangent spaces and the Borel dimension count.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property, total_ordering
from itertools import permutations
from typing import Iterable, Sequence

from .exact import ONE, ZERO, QSpec, RatMatrix, as_qspec, rank_kernel, q_str, to_q
from .kernels import count_linear_extensions


class ParameterError(ValueError):
    pass


@dataclass(frozen=True)
class PhiNPoint:
    n: int
    phi: RatMatrix
    nil: RatMatrix
    qspec: QSpec

    def __post_init__(self):
        if self.phi.shape != (self.n, self.n) or self.nil.shape != (self.n, self.n):
            raise ParameterError("phi and N must be n x n")

    @property
    def q(self):
        return self.qspec.q

    @classmethod
    def make(cls, phi, nil=None, q_sqrt=2) -> "PhiNPoint":
        phi = phi if isinstance(phi, RatMatrix) else RatMatrix(phi)
        n = phi.nrows
        if nil is None:
            nil = RatMatrix.zeros(n, n)
        nil = nil if isinstance(nil, RatMatrix) else RatMatrix(nil)
        qs = as_qspec(q_sqrt)
        return cls(n, phi, nil, qs)

    @classmethod
    def diagonal(cls, eigenvalues, edges: Iterable[tuple[int, int]] = (), q_sqrt=2) -> "PhiNPoint":
        """diag(eigenvalues) with N = sum of E_ij over 1-indexed pairs (i, j)."""
        n = len(eigenvalues)
        nil = [[ZERO] * n for _ in range(n)]
        for i, j in edges:
            nil[i - 1][j - 1] = ONE
        return cls.make(RatMatrix.diag(eigenvalues), RatMatrix(nil), q_sqrt)

    def to_json(self) -> dict:
        qs = self.qspec
        return {"n": self.n, "q_sqrt": None if qs.q_sqrt is None else q_str(qs.q_sqrt), "q": q_str(qs.q),
                "phi": [[q_str(x) for x in r] for r in self.phi.rows],
                "nil": [[q_str(x) for x in r] for r in self.nil.rows]}

    @classmethod
    def from_json(cls, data: dict) -> "PhiNPoint":
        qs = QSpec(data["q_sqrt"]) if data.get("q_sqrt") is not None else QSpec.from_q(data["q"])
        p = cls.make(RatMatrix(data["phi"]), RatMatrix(data["nil"]), qs)
        if p.n != data["n"]:
            raise ParameterError("n does not match matrix size")
        return p

    def conjugate(self, g: RatMatrix) -> "PhiNPoint":
        gi = g.inverse()
        return PhiNPoint(self.n, g @ self.phi @ gi, g @ self.nil @ gi, self.qspec)

    @cached_property
    def eigen(self) -> tuple[list, RatMatrix]:
        """Eigenvalues in index order and the matrix of eigenvector columns."""
        return eigen_decompose(self.phi)

    @property
    def eigenvalues(self) -> list:
        return self.eigen[0]

    @cached_property
    def nil_eigenbasis(self) -> RatMatrix:
        """N written in the eigenbasis of phi."""
        _, v = self.eigen
        return v.inverse() @ self.nil @ v


def check_relation(p: PhiNPoint) -> bool:
    p.phi.inverse()  # raises on singular phi
    return p.phi @ p.nil == (p.nil @ p.phi).scale(1 / p.q)


def _rational_roots(mat: RatMatrix) -> list:
    import sympy

    lam = sympy.Symbol("x")
    sm = sympy.Matrix([[sympy.Rational(int(a.numerator), int(a.denominator)) for a in r] for r in mat.rows])
    poly = sympy.Poly(sm.charpoly(lam).as_expr(), lam, domain="QQ")
    roots = poly.ground_roots()
    found = []
    for r, mult in roots.items():
        found.extend([to_q(f"{sympy.fraction(r)[0]}/{sympy.fraction(r)[1]}")] * mult)
    if len(found) != mat.nrows:
        raise ParameterError("phi has non-rational eigenvalues")
    return found


def eigen_decompose(phi: RatMatrix) -> tuple[list, RatMatrix]:
    """Distinct rational eigenvalues and eigenvectors of phi.

    For diagonal phi the order is the diagonal order, otherwise ascending.
    """
    n = phi.nrows
    diagonal = all(not phi[i, j] for i in range(n) for j in range(n) if i != j)
    if diagonal:
        vals = [phi[i, i] for i in range(n)]
        if len(set(vals)) != n:
            raise ParameterError("repeated eigenvalues")
        return vals, RatMatrix.identity(n)
    vals = sorted(_rational_roots(phi))
    if len(set(vals)) != n:
        raise ParameterError("repeated eigenvalues")
    cols = []
    for lam in vals:
        _, ker = rank_kernel(phi - RatMatrix.identity(n).scale(lam))
        cols.append(ker[0])
    return vals, RatMatrix(cols).transpose()


def nilpotent(m: RatMatrix) -> bool:
    p = m
    for _ in range(m.nrows):
        p = p @ m
    return p.is_zero()


@total_ordering
class Partition(tuple):
    """Weakly decreasing positive parts.  ``<=`` is the reverse dominance order."""

    def __new__(cls, parts: Iterable[int]):
        parts = tuple(sorted((int(p) for p in parts if p), reverse=True))
        if any(p < 0 for p in parts):
            raise ValueError("negative part")
        return super().__new__(cls, parts)

    @property
    def parts(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def size(self) -> int:
        return sum(self)

    def transpose(self) -> "Partition":
        return Partition(sum(1 for p in self if p > i) for i in range(self[0] if self else 0))

    def dominates(self, other: "Partition") -> bool:
        a = b = 0
        for i in range(max(len(self), len(other))):
            a += self[i] if i < len(self) else 0
            b += other[i] if i < len(other) else 0
            if a < b:
                return False
        return True

    def __le__(self, other) -> bool:
        return partition_leq(self, other)

    def __lt__(self, other) -> bool:
        return partition_leq(self, other) and tuple(self) != tuple(other)

    def __eq__(self, other) -> bool:
        return tuple(self) == tuple(other)

    def __hash__(self):
        return tuple.__hash__(self)

    def __repr__(self) -> str:
        return f"Partition({list(self)})"

    def label(self) -> str:
        return "(" + ",".join(map(str, self)) + ")"


def partitions(n: int, maxpart: int | None = None) -> list[Partition]:
    """All partitions of n, reverse-lexicographic: (n) first, (1^n) last."""
    maxpart = n if maxpart is None else maxpart
    if n == 0:
        return [Partition(())]
    out = []
    for first in range(min(n, maxpart), 0, -1):
        out.extend(Partition((first,) + tuple(rest)) for rest in partitions(n - first, first))
    return out


def partition_leq(p: Sequence[int], p2: Sequence[int]) -> bool:
    """P precedes P' iff P dominates P'; (n) is least and (1,...,1) greatest."""
    p, p2 = Partition(p), Partition(p2)
    if p.size != p2.size:
        raise ValueError("partitions of different sizes")
    return p.dominates(p2)


def component_support(p: Sequence[int]) -> set[Partition]:
    p = Partition(p)
    return {x for x in partitions(p.size) if partition_leq(p, x)}


def jordan_type(p: PhiNPoint) -> Partition:
    n = p.n
    if not nilpotent(p.nil):
        raise ParameterError("N is not nilpotent")
    ranks = [n]
    power = RatMatrix.identity(n)
    while ranks[-1]:
        power = power @ p.nil
        ranks.append(power.rank())
    # number of blocks of size >= k is rank(N^{k-1}) - rank(N^k)
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    sizes = []
    for k, c in enumerate(at_least, start=1):
        nxt = at_least[k] if k < len(at_least) else 0
        sizes.extend([k] * (c - nxt))
    return Partition(sizes)


@dataclass(frozen=True)
class Chain:
    head: object  # largest eigenvalue lambda
    length: int

    def values(self, q) -> list:
        return [self.head / q**j for j in range(self.length)]

    def __repr__(self) -> str:
        return f"Sp({q_str(self.head)},{self.length})"


@dataclass(frozen=True)
class ChainDecomposition:
    chains: tuple[Chain, ...]
    basis_map: RatMatrix  # columns: adapted basis, chain by chain, head first
    members: tuple[tuple[int, ...], ...]  # eigenline indices per chain, head first

    def block_form(self, q) -> tuple[RatMatrix, RatMatrix]:
        n = sum(c.length for c in self.chains)
        phi = [[ZERO] * n for _ in range(n)]
        nil = [[ZERO] * n for _ in range(n)]
        pos = 0
        for c in self.chains:
            for j, v in enumerate(c.values(q)):
                phi[pos + j][pos + j] = v
                if j + 1 < c.length:
                    nil[pos + j + 1][pos + j] = ONE
            pos += c.length
        return RatMatrix(phi), RatMatrix(nil)

    def jordan_type(self) -> Partition:
        return Partition(c.length for c in self.chains)


def _edges(p: PhiNPoint) -> dict[int, int]:
    """source eigenline -> target eigenline for nonzero N-components."""
    nt = p.nil_eigenbasis
    out = {}
    for j in range(p.n):
        for i in range(p.n):
            if nt[i, j]:
                if p.eigenvalues[i] != p.eigenvalues[j] / p.q:
                    raise ParameterError("relation phi N = q^-1 N phi fails")
                out[j] = i
    return out


def chain_decompose(p: PhiNPoint) -> ChainDecomposition:
    vals, vecs = p.eigen
    edges = _edges(p)
    targets = set(edges.values())
    heads = sorted((j for j in range(p.n) if j not in targets), key=lambda j: vals[j], reverse=True)
    chains, members, cols = [], [], []
    for h in heads:
        seq = [h]
        while seq[-1] in edges:
            seq.append(edges[seq[-1]])
        members.append(tuple(seq))
        chains.append(Chain(vals[h], len(seq)))
        v = tuple(vecs[i, h] for i in range(p.n))
        for _ in seq:
            cols.append(v)
            v = p.nil.apply(v)
    bm = RatMatrix(cols).transpose()
    return ChainDecomposition(tuple(chains), bm, tuple(members))


def roundtrip_ok(p: PhiNPoint, cd: ChainDecomposition) -> bool:
    phi_b, nil_b = cd.block_form(p.q)
    b = cd.basis_map
    return b @ phi_b == p.phi @ b and b @ nil_b == p.nil @ b


@dataclass(frozen=True, order=True)
class FlagOrdering:
    perm: tuple[int, ...]  # eigenline indices, 0-based
    values: tuple = field(compare=False, default=())

    @property
    def unr(self) -> tuple:
        """Characters of the successive graded pieces of the flag."""
        return self.values


def _predecessors(p: PhiNPoint) -> list[int]:
    pred = [0] * p.n
    for src, tgt in _edges(p).items():
        pred[src] |= 1 << tgt
    return pred


def stable_flags(p: PhiNPoint) -> list[FlagOrdering]:
    """Orderings of eigenlines whose flag is N-stable, lexicographic."""
    vals = p.eigenvalues
    pred = _predecessors(p)
    n = p.n
    out: list[FlagOrdering] = []

    def extend(prefix: list[int], used: int):
        if len(prefix) == n:
            out.append(FlagOrdering(tuple(prefix), tuple(vals[i] for i in prefix)))
            return
        for i in range(n):
            if not (used >> i) & 1 and (used & pred[i]) == pred[i]:
                prefix.append(i)
                extend(prefix, used | (1 << i))
                prefix.pop()

    extend([], 0)
    return out


def count_stable_flags(p: PhiNPoint) -> int:
    return count_linear_extensions(_predecessors(p))


def stable_flags_bruteforce(p: PhiNPoint) -> list[FlagOrdering]:
    """Oracle: test N-stability of every ordering directly in the eigenbasis."""
    nt = p.nil_eigenbasis
    out = []
    for perm in permutations(range(p.n)):
        pos = {v: k for k, v in enumerate(perm)}
        ok = all(not nt[i, j] or pos[i] < pos[j] for i in range(p.n) for j in range(p.n))
        if ok:
            out.append(FlagOrdering(perm, tuple(p.eigenvalues[i] for i in perm)))
    return out


def _jacobian(p: PhiNPoint) -> RatMatrix:
    n, phi, nil, qi = p.n, p.phi, p.nil, 1 / p.q
    rows = []
    # equation (a, b): (dphi N + phi dN - q^-1 (dN phi + N dphi))_{ab}
    for a in range(n):
        for b in range(n):
            row = [ZERO] * (2 * n * n)
            for c in range(n):
                # dphi_{ac} N_{cb}
                row[a * n + c] += nil[c, b]
                # - q^-1 N_{ac} dphi_{cb}
                row[c * n + b] -= qi * nil[a, c]
                # phi_{ac} dN_{cb}
                row[n * n + c * n + b] += phi[a, c]
                # - q^-1 dN_{ac} phi_{cb}
                row[n * n + a * n + c] -= qi * phi[c, b]
            rows.append(row)
    return RatMatrix(rows, 2 * n * n)


def tangent_dim(p: PhiNPoint) -> int:
    rank, _ = rank_kernel(_jacobian(p))
    return 2 * p.n * p.n - rank


@dataclass(frozen=True)
class BorelAudit:
    r: int
    d: int
    dim_B: int
    stabilizer_dim: int
    nil_space_dim: int
    component_dim: int
    formula_dim: object
    excess: int
    verdict: str

    def to_json(self) -> dict:
        return {"r": self.r, "d": self.d, "dim_B": self.dim_B, "stabilizer_dim": self.stabilizer_dim,
                "nil_space_dim": self.nil_space_dim, "component_dim": self.component_dim,
                "formula_dim": q_str(self.formula_dim), "excess": self.excess,
                "excess_strict": self.excess > 0, "verdict": self.verdict}


def borel_component_audit(r: int, d: int, q_sqrt=2) -> BorelAudit:
    """Dimension of the B-orbit family through phi_0 = diag(1^r, q^r, ..., (q^{d-1})^r)."""
    if r < 1 or d < 1:
        raise ValueError("r, d must be positive")
    q = as_qspec(q_sqrt).q
    n = r * d
    diag = [q ** (i // r) for i in range(n)]
    upper = [(i, j) for i in range(n) for j in range(i, n)]
    # stabilizer of phi_0 in Lie B: b phi_0 = phi_0 b
    eq = RatMatrix([[diag[j] - diag[i] if (a, b) == (i, j) else ZERO for (a, b) in upper]
                    for (i, j) in upper], ncols=len(upper))
    stab = len(upper) - rank_kernel(eq)[0]
    # N in Lie B with N phi_0 = q phi_0 N
    eq2 = RatMatrix([[diag[j] - q * diag[i] if (a, b) == (i, j) else ZERO for (a, b) in upper]
                     for (i, j) in upper], ncols=len(upper))
    nil_dim = len(upper) - rank_kernel(eq2)[0]
    dim_b = n * (n + 1) // 2
    comp = 1 + dim_b - stab + nil_dim
    formula = 1 + dim_b + to_q(r) / 2 * (d * r - (2 * r + d))
    verdict = "not equidimensional" if comp > dim_b else "no excess"
    return BorelAudit(r, d, dim_b, stab, nil_dim, comp, formula, d * r - 2 * r - d, verdict)


# sampling

def random_invertible(n: int, rng: random.Random, span: int = 3) -> RatMatrix:
    while True:
        m = RatMatrix([[rng.randint(-span, span) for _ in range(n)] for _ in range(n)])
        if m.rank() == n:
            return m


def chain_point(chains: Sequence[tuple], q_sqrt=2, linked: bool = True) -> PhiNPoint:
    """Block-diagonal point from (head, length) pairs, N the chain shifts.

    With ``linked=False`` the nilpotent part is zero.
    """
    qs = as_qspec(q_sqrt)
    vals, edges, pos = [], [], 0
    for head, length in chains:
        head = to_q(head)
        for j in range(length):
            vals.append(head / qs.q**j)
            if j and linked:
                edges.append((pos + j + 1, pos + j))
        pos += length
    return PhiNPoint.diagonal(vals, edges, qs)


def random_point(n: int, rng: random.Random, q_sqrt=2, bases=(1, 3, 9, 27, 81), conjugate: bool = True,
                 partial: bool = True) -> PhiNPoint:
    """A valid point: random chain lengths on resonance-free bases, N a random
    subset of the chain edges with random nonzero coefficients."""
    qs = as_qspec(q_sqrt)
    lengths = []
    rest = n
    while rest:
        l = rng.randint(1, rest)
        lengths.append(l)
        rest -= l
    vals, edges = [], []
    pos = 0
    for b, l in zip(bases, lengths):
        for j in range(l):
            vals.append(to_q(b) / qs.q**j)
            if j and (not partial or rng.random() < 0.7):
                edges.append((pos + j, pos + j - 1, rng.choice([1, 2, -1, to_q("1/2")])))
        pos += l
    order = list(range(n))
    rng.shuffle(order)
    inv = {o: k for k, o in enumerate(order)}
    phi = RatMatrix.diag([vals[order[k]] for k in range(n)])
    nil = [[ZERO] * n for _ in range(n)]
    for tgt, src, c in edges:
        nil[inv[tgt]][inv[src]] = to_q(c)
    p = PhiNPoint.make(phi, RatMatrix(nil), qs)
    if conjugate:
        p = p.conjugate(random_invertible(n, rng))
    return p
