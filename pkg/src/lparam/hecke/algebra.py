"""Type-A affine Hecke algebra in the Bernstein presentation.

Elements are finite sums  sum c * T_w theta_x  with w a permutation in
one-line form and x in Z^n.  Relations:

    (T_s - q)(T_s + 1) = 0,  braid relations,
    theta_x T_s = T_s theta_{s x} + (q - 1)(theta_x - theta_{s x}) / (1 - theta_{-alpha}).

Multiplication moves every theta past the finite part with the cached
rewrite ``theta_x T_v -> normal form``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping

from ..exact import ONE, ZERO, Q, QSpec, as_qspec, q_str, to_q
from . import perm as P


def _add_to(acc: dict, key, c) -> None:
    v = acc.get(key, ZERO) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def _vadd(x: tuple, y: tuple) -> tuple:
    return tuple(a + b for a, b in zip(x, y))


class HeckeAlgebra:
    """H(GL_n) with parameter q.  Use :func:`make_hecke`."""

    def __init__(self, n: int, qspec: QSpec):
        if n < 1:
            raise ValueError("n must be at least 1")
        self.n = n
        self.qspec = qspec
        self.q = qspec.q
        self._finite: dict[tuple[int, tuple], dict] = {}
        self._cross: dict[tuple[tuple, tuple], dict] = {}

    def __repr__(self) -> str:
        return f"HeckeAlgebra(n={self.n}, q={q_str(self.q)})"

    # basic elements
    def element(self, terms: Mapping[tuple[tuple, tuple], object]) -> "HeckeElement":
        out = {}
        for (w, x), c in terms.items():
            _add_to(out, (tuple(w), tuple(x)), to_q(c))
        return HeckeElement(self, out)

    def zero(self) -> "HeckeElement":
        return HeckeElement(self, {})

    def one(self) -> "HeckeElement":
        return self.T(P.identity(self.n))

    def scalar(self, c) -> "HeckeElement":
        return self.one().scale(c)

    def T(self, w, c=ONE) -> "HeckeElement":
        return self.element({(tuple(w), (0,) * self.n): c})

    def Ts(self, i: int) -> "HeckeElement":
        return self.T(P.simple(i, self.n))

    def theta(self, x, c=ONE) -> "HeckeElement":
        return self.element({(P.identity(self.n), tuple(x)): c})

    def theta_j(self, j: int, power: int = 1) -> "HeckeElement":
        x = [0] * self.n
        x[j - 1] = power
        return self.theta(x)

    def finite(self, coeffs: Mapping[tuple, object]) -> "HeckeElement":
        """sum c_w T_w."""
        zero = (0,) * self.n
        return self.element({(w, zero): c for w, c in coeffs.items()})

    # structure constants
    def _ts_times(self, i: int, w: tuple) -> dict:
        """T_{s_i} T_w as {u: c}."""
        key = (i, w)
        hit = self._finite.get(key)
        if hit is None:
            sw = P.left_mul_simple(i, w)
            if P.left_ascent(i, w):
                hit = {sw: ONE}
            else:
                hit = {w: self.q - 1, sw: self.q}
            self._finite[key] = hit
        return hit

    def finite_product(self, w: tuple, u: tuple) -> dict:
        """T_w T_u as {v: c}."""
        out = {u: ONE}
        for i in reversed(P.reduced_word(w)):
            nxt: dict = {}
            for v, c in out.items():
                for v2, c2 in self._ts_times(i, v).items():
                    _add_to(nxt, v2, c * c2)
            out = nxt
        return out

    def _quotient(self, x: tuple, i: int) -> dict:
        """(theta_x - theta_{s_i x}) / (1 - theta_{-alpha_i}) as {z: c}."""
        m = x[i - 1] - x[i]
        out: dict = {}
        if m > 0:
            for j in range(m):
                z = list(x)
                z[i - 1] -= j
                z[i] += j
                _add_to(out, tuple(z), ONE)
        elif m < 0:
            for j in range(1, -m + 1):
                z = list(x)
                z[i - 1] += j
                z[i] -= j
                _add_to(out, tuple(z), -ONE)
        return out

    def cross(self, x: tuple, v: tuple) -> dict:
        """theta_x T_v in normal form, {(u, z): c}."""
        key = (x, v)
        hit = self._cross.get(key)
        if hit is not None:
            return hit
        if P.length(v) == 0:
            hit = {(v, x): ONE}
        else:
            i = P.reduced_word(v)[0]
            rest = P.left_mul_simple(i, v)
            sx = list(x)
            sx[i - 1], sx[i] = sx[i], sx[i - 1]
            hit = {}
            # T_s theta_{sx} T_rest
            for (u, z), c in self.cross(tuple(sx), rest).items():
                for u2, c2 in self._ts_times(i, u).items():
                    _add_to(hit, (u2, z), c * c2)
            # (q-1) * quotient * T_rest
            for y, c in self._quotient(x, i).items():
                for (u, z), c2 in self.cross(y, rest).items():
                    _add_to(hit, (u, z), (self.q - 1) * c * c2)
        self._cross[key] = hit
        return hit

    def mul(self, a: "HeckeElement", b: "HeckeElement") -> "HeckeElement":
        out: dict = {}
        for (w, x), c in a.terms.items():
            for (v, y), d in b.terms.items():
                for (u, z), e in self.cross(x, v).items():
                    zy = _vadd(z, y)
                    for u2, f in self.finite_product(w, u).items():
                        _add_to(out, (u2, zy), c * d * e * f)
        return HeckeElement(self, out)


class HeckeElement:
    __slots__ = ("alg", "terms")

    def __init__(self, alg: HeckeAlgebra, terms: dict):
        self.alg = alg
        self.terms = terms

    def __add__(self, other) -> "HeckeElement":
        other = self._coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_to(out, k, c)
        return HeckeElement(self.alg, out)

    __radd__ = __add__

    def __neg__(self) -> "HeckeElement":
        return self.scale(-1)

    def __sub__(self, other) -> "HeckeElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "HeckeElement":
        return self._coerce(other) - self

    def scale(self, c) -> "HeckeElement":
        c = to_q(c)
        if not c:
            return HeckeElement(self.alg, {})
        return HeckeElement(self.alg, {k: c * v for k, v in self.terms.items()})

    def _coerce(self, other) -> "HeckeElement":
        if isinstance(other, HeckeElement):
            return other
        return self.alg.scalar(other)

    def __mul__(self, other) -> "HeckeElement":
        if isinstance(other, HeckeElement):
            return self.alg.mul(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> "HeckeElement":
        return self.scale(other)

    def __pow__(self, e: int) -> "HeckeElement":
        out = self.alg.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeckeElement):
            other = self.alg.scalar(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def finite_part(self) -> dict:
        """Coefficients of T_w theta_0 (for elements of the finite algebra)."""
        zero = (0,) * self.alg.n
        if any(x != zero for _, x in self.terms):
            raise ValueError("element has a nontrivial theta part")
        return {w: c for (w, _), c in self.terms.items()}

    def theta_support(self) -> set:
        return {x for _, x in self.terms}

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (w, x), c in sorted(self.terms.items()):
            parts.append(f"{q_str(c)}*T{''.join(map(str, w))}*th{list(x)}")
        return " + ".join(parts)

    def to_json(self) -> list:
        return [[list(w), list(x), q_str(c)] for (w, x), c in sorted(self.terms.items())]


@lru_cache(maxsize=None)
def _cached_hecke(n: int, q_sqrt, q) -> HeckeAlgebra:
    return HeckeAlgebra(n, QSpec(q_sqrt) if q_sqrt is not None else QSpec.from_q(q))


def make_hecke(n: int, q=2) -> HeckeAlgebra:
    """Cached algebra for GL_n.  ``q`` is a QSpec or a value of sqrt(q)."""
    qs = as_qspec(q)
    return _cached_hecke(n, qs.q_sqrt, qs.q)


# relation suite
def commutator(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    return a * b - b * a


def cross_identity(alg: HeckeAlgebra, x, i: int) -> bool:
    """(theta_x T_s - T_s theta_{sx})(1 - theta_{-alpha}) = (q-1)(theta_x - theta_{sx})."""
    n = alg.n
    x = tuple(x)
    sx = list(x)
    sx[i - 1], sx[i] = sx[i], sx[i - 1]
    neg_alpha = [0] * n
    neg_alpha[i - 1], neg_alpha[i] = -1, 1
    Ts = alg.Ts(i)
    lhs = (alg.theta(x) * Ts - Ts * alg.theta(sx)) * (alg.one() - alg.theta(neg_alpha))
    rhs = (alg.theta(x) - alg.theta(sx)).scale(alg.q - 1)
    return lhs == rhs


def theta_window(n: int, radius: int = 1) -> list[tuple]:
    return [x for x in product(range(-radius, radius + 1), repeat=n)]


def relation_suite(alg: HeckeAlgebra, radius: int = 1, samples: int = 6) -> dict[str, bool]:
    """Quadratic, braid, cross and associativity checks."""
    n, q = alg.n, alg.q
    one = alg.one()
    out = {}
    out["quadratic"] = all(((alg.Ts(i) - q) * (alg.Ts(i) + 1)).is_zero() for i in range(1, n))
    braid = True
    for i in range(1, n - 1):
        a, b = alg.Ts(i), alg.Ts(i + 1)
        braid &= a * b * a == b * a * b
    for i in range(1, n):
        for j in range(i + 2, n):
            braid &= commutator(alg.Ts(i), alg.Ts(j)).is_zero()
    out["braid"] = braid
    window = theta_window(n, radius)
    out["cross"] = all(cross_identity(alg, x, i) for x in window for i in range(1, n))
    out["theta_commute"] = all(commutator(alg.theta_j(a), alg.theta_j(b)).is_zero()
                               for a in range(1, n + 1) for b in range(a + 1, n + 1))
    out["theta_inverse"] = all(alg.theta_j(j) * alg.theta_j(j, -1) == one for j in range(1, n + 1))
    # associativity on mixed words
    gens = [alg.Ts(i) for i in range(1, n)] + [alg.theta_j(j) for j in range(1, n + 1)]
    gens += [alg.theta_j(j, -1) for j in range(1, n + 1)]
    assoc = True
    count = 0
    for a in gens:
        for b in gens:
            for c in gens:
                if count >= samples ** 3:
                    break
                assoc &= (a * b) * c == a * (b * c)
                count += 1
    out["associative"] = assoc
    return out


def basis_size(n: int) -> int:
    from math import factorial
    return factorial(n)


# center
@dataclass(frozen=True)
class CenterElement:
    """Symmetric Laurent polynomial in theta: {exponent: coeff}."""

    n: int
    coeffs: tuple  # sorted ((x, c), ...)
    name: str = ""

    def element(self, alg: HeckeAlgebra) -> HeckeElement:
        e = P.identity(self.n)
        return alg.element({(e, x): c for x, c in self.coeffs})

    def is_symmetric(self) -> bool:
        d = dict(self.coeffs)
        for w in P.all_perms(self.n):
            for x, c in d.items():
                if d.get(P.act(w, x), ZERO) != c:
                    return False
        return True

    def evaluate(self, chi) -> Q:
        """Value at the character theta_j -> chi[j-1]."""
        out = ZERO
        for x, c in self.coeffs:
            term = c
            for a, e in zip(chi, x):
                term *= to_q(a) ** e
            out += term
        return out

    def to_json(self) -> dict:
        return {"name": self.name, "terms": [[list(x), q_str(c)] for x, c in self.coeffs]}


def elementary_symmetric(n: int, k: int, sign: int = 1) -> CenterElement:
    """e_k(theta_1^sign, ..., theta_n^sign)."""
    from itertools import combinations
    terms = []
    for S in combinations(range(n), k):
        x = [0] * n
        for j in S:
            x[j] = sign
        terms.append((tuple(x), ONE))
    return CenterElement(n, tuple(sorted(terms)), f"e{k}" + ("" if sign > 0 else "^-"))


def is_central(alg: HeckeAlgebra, z: HeckeElement) -> bool:
    gens = [alg.Ts(i) for i in range(1, alg.n)] + [alg.theta_j(j) for j in range(1, alg.n + 1)]
    return all(commutator(z, g).is_zero() for g in gens)


class CenterError(AssertionError):
    pass


def center_check(n: int, degree: int = 1, q=2) -> list[CenterElement]:
    """Elementary symmetric functions of theta and theta^-1 (and products up
    to ``degree``), each verified to commute with every generator."""
    alg = make_hecke(n, q)
    base = [elementary_symmetric(n, k) for k in range(1, n + 1)]
    base += [elementary_symmetric(n, n, -1)]
    out = list(base)
    if degree >= 2:
        for a in range(len(base)):
            for b in range(a, len(base)):
                prod = base[a].element(alg) * base[b].element(alg)
                coeffs = tuple(sorted((x, c) for (_, x), c in prod.terms.items()))
                out.append(CenterElement(n, coeffs, f"{base[a].name}*{base[b].name}"))
    for z in out:
        if not z.is_symmetric() or not is_central(alg, z.element(alg)):
            raise CenterError(f"{z.name} is not central")
    return out


def finite_basis(alg: HeckeAlgebra) -> list[HeckeElement]:
    return [alg.T(w) for w in P.all_perms(alg.n)]


def from_finite_vector(alg: HeckeAlgebra, vec: Iterable) -> HeckeElement:
    return alg.finite(dict(zip(P.all_perms(alg.n), vec)))
