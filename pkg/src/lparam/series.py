"""Truncated multivariate power series over Q.

A :class:`SeriesRing` fixes the variable names and the order bound ``k``;
its elements keep only the monomials of total degree ``< k``.  Monomials
are indexed once per ring (sorted by degree, then reverse-lex on the
exponent vector) and products use a cached multiplication table.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

from .exact import ONE, ZERO, q_str, to_q


def monomials_below(nvars: int, k: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total degree < k, degree-sorted."""
    out = []
    for d in range(k):
        layer = []
        for combo in combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for v in combo:
                e[v] += 1
            layer.append(tuple(e))
        layer.sort(reverse=True)
        out.extend(layer)
    return out


class SeriesRing:
    """Q[[x_1..x_m]] / (x)^k.  Use :func:`series_ring` for cached instances."""

    def __init__(self, names: Sequence[str], k: int):
        if k < 1:
            raise ValueError("order bound must be at least 1")
        self.names = tuple(names)
        self.k = k
        self.monomials = monomials_below(len(self.names), k)
        self.index = {m: i for i, m in enumerate(self.monomials)}
        self.degree = [sum(m) for m in self.monomials]
        self._table: dict[int, list[tuple[int, int]]] = {}

    @property
    def nvars(self) -> int:
        return len(self.names)

    def __repr__(self) -> str:
        return f"SeriesRing({list(self.names)}, k={self.k})"

    def mul_row(self, i: int) -> list[tuple[int, int]]:
        row = self._table.get(i)
        if row is None:
            mi = self.monomials[i]
            budget = self.k - self.degree[i]
            row = []
            for j, mj in enumerate(self.monomials):
                if self.degree[j] >= budget:
                    break
                row.append((j, self.index[tuple(a + b for a, b in zip(mi, mj))]))
            self._table[i] = row
        return row

    # constructors
    def zero(self) -> "TruncSeries":
        return TruncSeries(self, {})

    def one(self) -> "TruncSeries":
        return self.const(ONE)

    def const(self, c) -> "TruncSeries":
        c = to_q(c)
        return TruncSeries(self, {0: c} if c else {})

    def var(self, name_or_index) -> "TruncSeries":
        v = self.names.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        if self.k < 2:
            return self.zero()
        e = [0] * self.nvars
        e[v] = 1
        return TruncSeries(self, {self.index[tuple(e)]: ONE})

    def monomial(self, exps: Sequence[int], c=ONE) -> "TruncSeries":
        exps = tuple(exps)
        if sum(exps) >= self.k:
            return self.zero()
        c = to_q(c)
        return TruncSeries(self, {self.index[exps]: c} if c else {})

    def from_dict(self, terms: Mapping[tuple, object]) -> "TruncSeries":
        out: dict[int, mpq] = {}
        for e, c in terms.items():
            if sum(e) < self.k:
                i = self.index[tuple(e)]
                out[i] = out.get(i, ZERO) + to_q(c)
        return TruncSeries(self, {i: c for i, c in out.items() if c})

    def linear(self, coeffs: Sequence, const=ZERO) -> "TruncSeries":
        """const + sum_i coeffs[i] * x_i."""
        f = self.const(const)
        for i, c in enumerate(coeffs):
            if c:
                f = f + self.var(i).scale(c)
        return f


@lru_cache(maxsize=None)
def series_ring(names: tuple[str, ...], k: int) -> SeriesRing:
    return SeriesRing(names, k)


class TruncSeries:
    """Element of a :class:`SeriesRing`; immutable."""

    __slots__ = ("ring", "c")

    def __init__(self, ring: SeriesRing, coeffs: dict[int, mpq]):
        self.ring = ring
        self.c = coeffs

    # inspection
    @property
    def variables(self) -> tuple[str, ...]:
        return self.ring.names

    @property
    def order_bound(self) -> int:
        return self.ring.k

    def coefficients(self) -> dict[tuple[int, ...], mpq]:
        mons = self.ring.monomials
        return {mons[i]: v for i, v in sorted(self.c.items())}

    def coeff(self, exps: Sequence[int]) -> mpq:
        i = self.ring.index.get(tuple(exps))
        return ZERO if i is None else self.c.get(i, ZERO)

    def constant(self) -> mpq:
        return self.c.get(0, ZERO)

    def is_zero(self) -> bool:
        return not self.c

    def is_unit(self) -> bool:
        return bool(self.c.get(0))

    def order(self) -> int | None:
        """Lowest total degree present, or None for zero."""
        if not self.c:
            return None
        return min(self.ring.degree[i] for i in self.c)

    def __bool__(self) -> bool:
        return bool(self.c)

    def __eq__(self, other) -> bool:
        if isinstance(other, TruncSeries):
            return self.ring is other.ring and self.c == other.c
        if isinstance(other, (int, mpq)):
            return self.c == ({0: to_q(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.names, self.ring.k, tuple(sorted(self.c.items()))))

    def __repr__(self) -> str:
        if not self.c:
            return "0"
        parts = []
        for e, v in self.coefficients().items():
            mon = "*".join(f"{n}^{a}" if a > 1 else n for n, a in zip(self.ring.names, e) if a)
            parts.append(f"{q_str(v)}" + (f"*{mon}" if mon else ""))
        return " + ".join(parts)

    # arithmetic
    def _check(self, other: "TruncSeries") -> None:
        if other.ring is not self.ring:
            if other.ring.names != self.ring.names:
                raise ValueError(f"variable mismatch: {self.ring.names} vs {other.ring.names}")
            raise ValueError(f"order bound mismatch: {self.ring.k} vs {other.ring.k}")

    def _coerce(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            self._check(other)
            return other
        return self.ring.const(other)

    def __add__(self, other) -> "TruncSeries":
        other = self._coerce(other)
        out = dict(self.c)
        for i, v in other.c.items():
            nv = out.get(i, ZERO) + v
            if nv:
                out[i] = nv
            else:
                out.pop(i, None)
        return TruncSeries(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.ring, {i: -v for i, v in self.c.items()})

    def __sub__(self, other) -> "TruncSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "TruncSeries":
        return self._coerce(other) - self

    def scale(self, c) -> "TruncSeries":
        c = to_q(c)
        if not c:
            return TruncSeries(self.ring, {})
        return TruncSeries(self.ring, {i: c * v for i, v in self.c.items()})

    def __mul__(self, other) -> "TruncSeries":
        if not isinstance(other, TruncSeries):
            return self.scale(other)
        self._check(other)
        if not self.c or not other.c:
            return TruncSeries(self.ring, {})
        out: dict[int, mpq] = {}
        oc = other.c
        ring = self.ring
        for i, a in self.c.items():
            for j, ij in ring.mul_row(i):
                b = oc.get(j)
                if b:
                    out[ij] = out.get(ij, ZERO) + a * b
        return TruncSeries(ring, {i: v for i, v in out.items() if v})

    def __rmul__(self, other) -> "TruncSeries":
        return self.scale(other)

    def __pow__(self, e: int) -> "TruncSeries":
        if e < 0:
            return self.inverse() ** (-e)
        out = self.ring.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def inverse(self) -> "TruncSeries":
        c0 = self.c.get(0)
        if not c0:
            raise ZeroDivisionError("series with zero constant term is not a unit")
        inv0 = 1 / c0
        g = self.scale(inv0) - 1  # no constant term
        out = self.ring.one()
        term = self.ring.one()
        for _ in range(1, self.ring.k):
            term = -(term * g)
            if not term:
                break
            out = out + term
        return out.scale(inv0)

    def __truediv__(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            return self * other.inverse()
        return self.scale(1 / to_q(other))

    def truncate(self, k: int) -> "TruncSeries":
        """Image in the same variables with a smaller order bound."""
        ring = series_ring(self.ring.names, k)
        return ring.from_dict({e: v for e, v in self.coefficients().items() if sum(e) < k})

    def lift(self, ring: SeriesRing) -> "TruncSeries":
        """Same coefficients read in a ring with the same names and any bound."""
        return ring.from_dict(self.coefficients())

    def substitute(self, images: Sequence["TruncSeries"]) -> "TruncSeries":
        """Replace variable i by images[i] (all in one target ring)."""
        target = images[0].ring
        out = target.zero()
        powers: dict[tuple[int, int], TruncSeries] = {}
        for e, v in self.coefficients().items():
            term = target.const(v)
            for i, a in enumerate(e):
                if a:
                    p = powers.get((i, a))
                    if p is None:
                        p = images[i] ** a
                        powers[(i, a)] = p
                    term = term * p
            out = out + term
        return out

    def divide_by_monomial(self, exps: Sequence[int], ring: SeriesRing | None = None) -> "TruncSeries":
        """Exact quotient by x^exps; every term must be divisible.

        The result lives in ``ring`` (default: the bound lowered by deg exps).
        """
        d = sum(exps)
        ring = ring or series_ring(self.ring.names, max(self.ring.k - d, 1))
        out = {}
        for e, v in self.coefficients().items():
            q = tuple(a - b for a, b in zip(e, exps))
            if min(q) < 0:
                raise ArithmeticError(f"term {e} not divisible by {tuple(exps)}")
            if sum(q) < ring.k:
                out[q] = v
        return ring.from_dict(out)

    def to_json(self) -> list:
        return [[list(e), q_str(v)] for e, v in self.coefficients().items()]

    @staticmethod
    def from_json(ring: SeriesRing, data: Iterable) -> "TruncSeries":
        return ring.from_dict({tuple(e): to_q(v) for e, v in data})


def trunc_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    if a.ring.names != b.ring.names:
        raise ValueError(f"variable mismatch: {a.ring.names} vs {b.ring.names}")
    if a.ring.k != b.ring.k:
        raise ValueError(f"order bound mismatch: {a.ring.k} vs {b.ring.k}")
    return a * b if a.ring is b.ring else a * b.lift(a.ring)


def invert(f: TruncSeries) -> TruncSeries:
    return f.inverse()
