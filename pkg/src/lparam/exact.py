"""Exact rational scalars, matrices and the q-parameter.

Every number in the package is a :class:`gmpy2.mpq`.  Matrices are
immutable tuples of rows; linear algebra goes through a sparse
reduced-row-echelon routine so that large, mostly empty slice matrices
stay cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpq

Q = mpq
ZERO = mpq(0)
ONE = mpq(1)


def to_q(x) -> mpq:
    """Coerce ints, strings ``"p/q"``, Fractions and mpq values to mpq."""
    if isinstance(x, str):
        x = x.strip()
        if "/" in x:
            p, d = x.split("/")
            return mpq(int(p), int(d))
        return mpq(int(x))
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted")
    return mpq(x)


def q_str(x) -> str:
    """Serialize a rational as ``"p/q"`` (denominator always written)."""
    x = to_q(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class QSpec:
    """The deformation parameter q together with a square root when rational.

    ``QSpec(2)`` means q_sqrt = 2, q = 4.  ``QSpec.from_q(2)`` gives q = 2
    with no rational square root, which is enough for everything except
    half-twist normalizations.
    """

    q_sqrt: mpq | None
    q: mpq = None

    def __post_init__(self):
        if self.q_sqrt is not None:
            object.__setattr__(self, "q_sqrt", to_q(self.q_sqrt))
            if self.q_sqrt == 0:
                raise ValueError("q_sqrt must be nonzero")
            q = self.q_sqrt * self.q_sqrt
            if self.q is not None and to_q(self.q) != q:
                raise ValueError("q differs from q_sqrt squared")
            object.__setattr__(self, "q", q)
        elif self.q is None:
            raise ValueError("need q or q_sqrt")
        else:
            object.__setattr__(self, "q", to_q(self.q))
        if self.q in (0, 1, -1):
            raise ValueError(f"q = {self.q} is excluded")

    @classmethod
    def from_q(cls, q) -> "QSpec":
        q = to_q(q)
        if q > 0:
            rn, rd = gmpy2.isqrt(q.numerator), gmpy2.isqrt(q.denominator)
            if rn * rn == q.numerator and rd * rd == q.denominator:
                return cls(mpq(rn, rd))
        return cls(None, q)

    def power(self, k: int) -> mpq:
        return self.q**k

    def resonances(self, eigenvalues: Sequence, bound: int | None = None) -> set[tuple[int, int, int]]:
        """All (i, j, k) with eigenvalues[i] / eigenvalues[j] = q^k, 0 < |k| <= bound."""
        vals = [to_q(v) for v in eigenvalues]
        bound = len(vals) if bound is None else bound
        found = set()
        for i, a in enumerate(vals):
            for j, b in enumerate(vals):
                if i == j:
                    continue
                for k in range(1, bound + 1):
                    if a == b * self.q**k:
                        found.add((i, j, k))
        return found

    def resonance_guard(self, eigenvalues: Sequence, declared: Iterable[tuple[int, int, int]] = (),
                        bound: int | None = None) -> bool:
        """True when every q-power ratio among the eigenvalues is declared."""
        return self.resonances(eigenvalues, bound) <= set(declared)


class RatMatrix:
    """Immutable exact rational matrix."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        self.rows = tuple(tuple(to_q(x) for x in r) for r in rows)
        self.nrows = len(self.rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        self.ncols = ncols
        if any(len(r) != ncols for r in self.rows):
            raise ValueError("ragged matrix")

    @classmethod
    def zeros(cls, m: int, n: int) -> "RatMatrix":
        return cls([[ZERO] * n for _ in range(m)], ncols=n)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def diag(cls, entries: Sequence) -> "RatMatrix":
        n = len(entries)
        return cls([[to_q(entries[i]) if i == j else ZERO for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "RatMatrix":
        """Matrix unit E_ij (0-indexed)."""
        return cls([[ONE if (a, b) == (i, j) else ZERO for b in range(n)] for a in range(n)], ncols=n)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, RatMatrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"RatMatrix({[[q_str(x) for x in r] for r in self.rows]})"

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        return RatMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return RatMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self) -> "RatMatrix":
        return self.scale(-1)

    def scale(self, c) -> "RatMatrix":
        c = to_q(c)
        return RatMatrix([[c * a for a in r] for r in self.rows], self.ncols)

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.rows)) if other.rows else [()] * other.ncols
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append([sum((a * col[k] for k, a in nz), ZERO) for col in cols])
        return RatMatrix(out, other.ncols)

    def apply(self, v: Sequence) -> tuple:
        return tuple(sum((a * b for a, b in zip(r, v) if a), ZERO) for r in self.rows)

    def transpose(self) -> "RatMatrix":
        return RatMatrix(list(zip(*self.rows)) if self.rows else [], self.nrows)

    def is_zero(self) -> bool:
        return all(not a for r in self.rows for a in r)

    def rank(self) -> int:
        return rank_kernel(self)[0]

    def inverse(self) -> "RatMatrix":
        n = self.nrows
        if n != self.ncols:
            raise ValueError("not square")
        aug = [{**{j: a for j, a in enumerate(r) if a}, n + i: ONE} for i, r in enumerate(self.rows)]
        red, piv = rref(aug)
        if piv[:n] != list(range(n)) or len(piv) < n:
            raise ZeroDivisionError("singular matrix")
        return RatMatrix([[red[i].get(n + j, ZERO) for j in range(n)] for i in range(n)], n)

    def sparse_rows(self) -> list[dict[int, mpq]]:
        return [{j: a for j, a in enumerate(r) if a} for r in self.rows]


def rref(rows: Iterable[dict[int, mpq]]) -> tuple[list[dict[int, mpq]], list[int]]:
    """Reduced row echelon form of sparse rows.

    Returns the nonzero reduced rows sorted by pivot column together with
    the pivot columns.  Each returned row has a 1 in its pivot column and
    zeros in every other pivot column.
    """
    pivots: dict[int, dict[int, mpq]] = {}
    for row in rows:
        r = {c: v for c, v in row.items() if v}
        for c in [c for c in r if c in pivots]:
            f = r.get(c)
            if not f:
                continue
            for cc, vv in pivots[c].items():
                nv = r.get(cc, ZERO) - f * vv
                if nv:
                    r[cc] = nv
                else:
                    r.pop(cc, None)
        if not r:
            continue
        p = min(r)
        inv = 1 / r[p]
        r = {c: v * inv for c, v in r.items()}
        for other in pivots.values():
            f = other.get(p)
            if f:
                for cc, vv in r.items():
                    nv = other.get(cc, ZERO) - f * vv
                    if nv:
                        other[cc] = nv
                    else:
                        other.pop(cc, None)
        pivots[p] = r
    order = sorted(pivots)
    return [pivots[p] for p in order], order


def rank_of_rows(rows: Iterable[dict[int, mpq]]) -> int:
    return len(rref(rows)[1])


def kernel_from_rref(reduced: list[dict[int, mpq]], pivots: list[int], ncols: int) -> list[tuple]:
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [ZERO] * ncols
        v[f] = ONE
        for r, p in zip(reduced, pivots):
            a = r.get(f)
            if a:
                v[p] = -a
        basis.append(tuple(v))
    return basis


def rank_kernel(m: RatMatrix) -> tuple[int, list[tuple]]:
    """Rank and a kernel basis (column vectors) of an exact matrix."""
    red, piv = rref(m.sparse_rows())
    return len(piv), kernel_from_rref(red, piv, m.ncols)


def span_rank(vectors: Iterable[Sequence]) -> int:
    return rank_of_rows({j: a for j, a in enumerate(v) if a} for v in vectors)


class WeightVector(tuple):
    """Integer character of the diagonal torus; adds componentwise."""

    def __new__(cls, components: Iterable[int]):
        return super().__new__(cls, (int(c) for c in components))

    @classmethod
    def zero(cls, n: int) -> "WeightVector":
        return cls([0] * n)

    @classmethod
    def alpha(cls, i: int, n: int) -> "WeightVector":
        """Simple root e_i - e_{i+1}, 1-indexed."""
        return cls([1 if k == i - 1 else -1 if k == i else 0 for k in range(n)])

    @property
    def components(self) -> tuple[int, ...]:
        return tuple(self)

    def __add__(self, other) -> "WeightVector":
        return WeightVector(a + b for a, b in zip(self, other))

    def __sub__(self, other) -> "WeightVector":
        return WeightVector(a - b for a, b in zip(self, other))

    def __neg__(self) -> "WeightVector":
        return WeightVector(-a for a in self)

    def __mul__(self, k: int) -> "WeightVector":
        return WeightVector(k * a for a in self)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self)

    def __repr__(self) -> str:
        return f"WeightVector({list(self)})"


def as_qspec(x) -> QSpec:
    """Pass QSpec through; anything else is read as q_sqrt."""
    return x if isinstance(x, QSpec) else QSpec(x)
