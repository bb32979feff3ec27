"""Central idempotents of the finite Hecke algebra H_0 = H(S_n, q).

The center is found by solving [z, T_s] = 0.  A generic central element
acts semisimply on the center with one eigenvalue per block; Lagrange
interpolation in that element gives the primitive central idempotents.
Blocks are labelled by partitions through the parabolic trivial
idempotents: the permutation module on S_nu contains the block of nu once
and otherwise only blocks of partitions dominating nu.  The label used
here is the transpose, so the trivial block is (1^n) and the sign block
is (n).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Sequence

from ..exact import ONE, ZERO, QSpec, RatMatrix, as_qspec, kernel_from_rref, q_str, rref, to_q
from ..params import Partition, _rational_roots, partitions
from . import perm as P
from .algebra import HeckeAlgebra, HeckeElement, make_hecke


def finite_mul(alg: HeckeAlgebra, a: dict, b: dict) -> dict:
    out: dict = {}
    for w, c in a.items():
        for u, d in b.items():
            for v, e in alg.finite_product(w, u).items():
                x = out.get(v, ZERO) + c * d * e
                if x:
                    out[v] = x
                else:
                    out.pop(v, None)
    return out


def _vec(alg: HeckeAlgebra, a: dict) -> list:
    return [a.get(w, ZERO) for w in P.all_perms(alg.n)]


def _elt(alg: HeckeAlgebra, v: Sequence) -> dict:
    return {w: c for w, c in zip(P.all_perms(alg.n), v) if c}


def center_basis(alg: HeckeAlgebra) -> list[dict]:
    """Basis of Z(H_0) from the linear equations z T_s = T_s z."""
    perms = P.all_perms(alg.n)
    rows: dict = {}
    for i in range(1, alg.n):
        s = P.simple(i, alg.n)
        for j, w in enumerate(perms):
            for v, c in alg.finite_product(w, s).items():
                rows.setdefault((i, v), {})
                rows[(i, v)][j] = rows[(i, v)].get(j, ZERO) + c
            for v, c in alg.finite_product(s, w).items():
                rows.setdefault((i, v), {})
                rows[(i, v)][j] = rows[(i, v)].get(j, ZERO) - c
    eqs = [{j: c for j, c in r.items() if c} for r in rows.values()]
    red, piv = rref([r for r in eqs if r])
    return [_elt(alg, k) for k in kernel_from_rref(red, piv, len(perms))]


@dataclass(frozen=True)
class Idempotent:
    element: tuple  # ((w, coeff), ...) in H_0
    label: Partition
    multiplicity: int  # m_P: dim sigma_P, with dim e_P H_0 = m_P^2
    n: int

    def as_dict(self) -> dict:
        return dict(self.element)

    def hecke(self, alg: HeckeAlgebra) -> HeckeElement:
        return alg.finite(self.as_dict())

    def to_json(self) -> dict:
        return {"label": list(self.label), "multiplicity": self.multiplicity,
                "element": [[list(w), q_str(c)] for w, c in self.element]}


class IdempotentError(ArithmeticError):
    pass


def parabolic_trivial(alg: HeckeAlgebra, nu: Sequence[int]) -> dict:
    simples = set(P.levi_simples(tuple(nu)))
    group = [w for w in P.all_perms(alg.n) if set(P.reduced_word(w)) <= simples]
    norm = sum((alg.q ** P.length(w) for w in group), ZERO)
    if not norm:
        raise IdempotentError("singular normalizer")
    return {w: 1 / norm for w in group}


def _dim_right_ideal(alg: HeckeAlgebra, e: dict) -> int:
    """dim_Q of e H_0."""
    vecs = [_vec(alg, finite_mul(alg, e, {w: ONE})) for w in P.all_perms(alg.n)]
    return len(rref([{j: v for j, v in enumerate(x) if v} for x in vecs])[1])


@lru_cache(maxsize=None)
def _cached(n: int, q_sqrt, q) -> tuple[Idempotent, ...]:
    qs = QSpec(q_sqrt) if q_sqrt is not None else QSpec.from_q(q)
    alg = make_hecke(n, qs)
    Z = center_basis(alg)
    r = len(Z)
    if r != len(partitions(n)):
        raise IdempotentError(f"center has dimension {r}, expected {len(partitions(n))}")
    # a generic central element and its multiplication on the center
    gen: dict = {}
    for i, z in enumerate(Z):
        for w, c in z.items():
            gen[w] = gen.get(w, ZERO) + c * (3 ** i + i)
    Zrows = [_vec(alg, z) for z in Z]
    red, piv = rref([{j: v for j, v in enumerate(x) if v} for x in Zrows])

    def coords(elt: dict) -> list:
        v = _vec(alg, elt)
        # solve v = sum c_i Z_i using the pivot columns
        sol = _solve_in_span(Zrows, v)
        if sol is None:
            raise IdempotentError("product left the center")
        return sol

    mult = [coords(finite_mul(alg, gen, z)) for z in Z]
    Mat = RatMatrix([[mult[j][i] for j in range(r)] for i in range(r)])
    roots = _rational_roots(Mat)
    if len(set(roots)) != r:
        raise IdempotentError("generic central element does not separate the blocks")
    one = {P.identity(n): ONE}
    idems = []
    for mu in roots:
        e = dict(one)
        for nu_ in roots:
            if nu_ == mu:
                continue
            fac = {w: c for w, c in gen.items()}
            fac[P.identity(n)] = fac.get(P.identity(n), ZERO) - nu_
            fac = {w: c / (mu - nu_) for w, c in fac.items() if c}
            e = finite_mul(alg, e, fac)
        idems.append(e)
    # checks: idempotent, orthogonal, complete, central
    total: dict = {}
    for i, e in enumerate(idems):
        if finite_mul(alg, e, e) != e:
            raise IdempotentError("e^2 != e")
        for j in range(i + 1, len(idems)):
            if finite_mul(alg, e, idems[j]):
                raise IdempotentError("idempotents not orthogonal")
        for w, c in e.items():
            total[w] = total.get(w, ZERO) + c
    if {w: c for w, c in total.items() if c} != one:
        raise IdempotentError("idempotents do not sum to 1")
    # labels by the parabolic trivial idempotents, most dominant first
    labels: dict[int, Partition] = {}
    for nu in partitions(n):
        eK = parabolic_trivial(alg, nu)
        hit = [i for i, e in enumerate(idems) if finite_mul(alg, e, eK) and i not in labels]
        if len(hit) != 1:
            raise IdempotentError(f"permutation module {nu} does not isolate one new block")
        labels[hit[0]] = Partition(nu).transpose()
    out = []
    for i, e in enumerate(idems):
        d = _dim_right_ideal(alg, e)
        m = isqrt(d)
        if m * m != d:
            raise IdempotentError("block dimension is not a square")
        out.append(Idempotent(tuple(sorted(e.items())), labels[i], m, n))
    out.sort(key=lambda x: partitions(n).index(x.label))
    return tuple(out)


def _solve_in_span(rows: list[list], v: list) -> list | None:
    r = len(rows)
    dim = len(v)
    # unknown c_i; equations sum_i c_i rows[i][j] = v[j]
    eqs = []
    for j in range(dim):
        row = {i: rows[i][j] for i in range(r) if rows[i][j]}
        if v[j]:
            row[r] = v[j]
        if row:
            eqs.append(row)
    red, piv = rref(eqs)
    if r in piv:
        return None
    sol = [ZERO] * r
    for row, p in zip(red, piv):
        sol[p] = row.get(r, ZERO)
    return sol


def finite_idempotents(n: int, q=2) -> tuple[Idempotent, ...]:
    """Central block idempotents of H_0, ordered like :func:`partitions`."""
    if n > 4:
        raise ValueError("supported for n <= 4")
    qs = as_qspec(q)
    return _cached(n, qs.q_sqrt, qs.q)


def idempotent(n: int, label, q=2) -> Idempotent:
    label = Partition(label)
    for e in finite_idempotents(n, q):
        if e.label == label:
            return e
    raise KeyError(label)


def check_laws(n: int, q=2) -> dict[str, bool]:
    """e^2 = e for every block, T_s e_K = q e_K, T_s e_st = -e_st."""
    qs = as_qspec(q)
    alg = make_hecke(n, qs)
    idems = finite_idempotents(n, qs)
    out = {"square": all(finite_mul(alg, e.as_dict(), e.as_dict()) == e.as_dict() for e in idems)}
    eK = idempotent(n, [1] * n, qs).as_dict()
    est = idempotent(n, [n], qs).as_dict()
    ok_K = ok_st = True
    for i in range(1, n):
        s = {P.simple(i, n): ONE}
        ok_K &= finite_mul(alg, s, eK) == {w: c * alg.q for w, c in eK.items()}
        ok_st &= finite_mul(alg, s, est) == {w: -c for w, c in est.items()}
    out["T_s e_K = q e_K"] = ok_K
    out["T_s e_st = -e_st"] = ok_st
    from .homs import e_K_element, e_st_element
    out["e_K closed form"] = e_K_element(alg).finite_part() == eK
    out["e_st closed form"] = e_st_element(alg).finite_part() == est
    return out


def _generic_character(n: int) -> tuple:
    """Values 1, 3, 9, ... : distinct and never q-linked for q a power of 2."""
    return tuple(to_q(3) ** j for j in range(n))


def idempotent_pairing(n: int, P1, P2, q=2, radius: int = 1) -> dict:
    """Rank of e_P1 H e_P2 over the center, read at a generic central
    character where H specializes to the full matrix algebra of the
    irreducible principal series.  A spanning set of elements
    e_P1 theta_x T_w e_P2 is searched in the theta-window |x_i| <= radius."""
    from itertools import product

    from ..series import series_ring
    from .modules import principal_series_of

    qs = as_qspec(q)
    alg = make_hecke(n, qs)
    base = series_ring((), 1)
    chi = [base.const(v) for v in _generic_character(n)]
    V = principal_series_of(alg, chi, name="generic")
    e1 = V.act(idempotent(n, P1, qs).hecke(alg)).constant_part()
    e2 = V.act(idempotent(n, P2, qs).hecke(alg)).constant_part()
    r1 = RatMatrix(e1).rank()
    r2 = RatMatrix(e2).rank()
    expected_from_m = idempotent(n, P1, qs).multiplicity ** 2 * idempotent(n, P2, qs).multiplicity ** 2
    E1, E2 = RatMatrix(e1), RatMatrix(e2)
    rows, piv = [], []
    basis = []
    for x in product(range(-radius, radius + 1), repeat=n):
        th = RatMatrix(V.act_theta(tuple(x)).constant_part())
        for w in P.all_perms(n):
            Tw = RatMatrix(V.act_T(w).constant_part())
            M = E1 @ th @ Tw @ E2
            flat = {i * V.dim + j: M[i, j] for i in range(V.dim) for j in range(V.dim) if M[i, j]}
            if not flat:
                continue
            red, p2 = rref(rows + [flat])
            if len(p2) > len(piv):
                rows, piv = red, p2
                basis.append((tuple(x), w))
        if len(piv) == r1 * r2:
            break
    rank = len(piv)
    return {
        "pair": [list(Partition(P1)), list(Partition(P2))],
        "rank": rank,
        "expected": expected_from_m,
        "hom_dimension": r1 * r2,
        "conclusive": rank == r1 * r2,
        "basis": [[list(x), list(w)] for x, w in basis],
        "radius": radius,
    }


def sign_line_check(n: int, q=2, radius: int = 1) -> dict:
    """e_st theta_x e_st = z_x e_st with z_x central for every x in the window,
    so e_st H e_st is free of rank 1 over the center with basis e_st."""
    from itertools import product

    qs = as_qspec(q)
    alg = make_hecke(n, qs)
    est = idempotent(n, [n], qs).hecke(alg)
    e_id = est.terms[(P.identity(n), (0,) * n)]
    ok = True
    checked = 0
    for x in product(range(-radius, radius + 1), repeat=n):
        E = est * alg.theta(x) * est
        z = {xx: c / e_id for (w, xx), c in E.terms.items() if w == P.identity(n)}
        zel = alg.element({(P.identity(n), xx): c for xx, c in z.items()})
        sym = all(z.get(P.act(w, xx), ZERO) == c for w in P.all_perms(n) for xx, c in z.items())
        ok &= sym and (zel * est == E)
        checked += 1
    return {"n": n, "window": checked, "free_rank_one": ok}
