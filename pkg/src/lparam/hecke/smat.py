"""Sparse matrices with truncated power-series entries."""

from __future__ import annotations

from typing import Iterable, Sequence

from ..exact import ZERO, rref, to_q
from ..series import SeriesRing, TruncSeries


class SMat:
    """Row-sparse matrix over a :class:`SeriesRing`; rows[i] = {j: series}."""

    __slots__ = ("ring", "nrows", "ncols", "rows")

    def __init__(self, ring: SeriesRing, nrows: int, ncols: int, rows=None):
        self.ring = ring
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows if rows is not None else [dict() for _ in range(nrows)]

    @classmethod
    def zeros(cls, ring, m, n) -> "SMat":
        return cls(ring, m, n)

    @classmethod
    def identity(cls, ring, n) -> "SMat":
        one = ring.one()
        return cls(ring, n, n, [{i: one} for i in range(n)])

    @classmethod
    def from_columns(cls, ring, nrows: int, cols: Sequence[dict]) -> "SMat":
        out = cls(ring, nrows, len(cols))
        for j, col in enumerate(cols):
            for i, v in col.items():
                if v:
                    out.rows[i][j] = v
        return out

    @classmethod
    def from_scalars(cls, ring, rows: Sequence[Sequence]) -> "SMat":
        m = len(rows)
        n = len(rows[0]) if m else 0
        out = cls(ring, m, n)
        for i, r in enumerate(rows):
            for j, v in enumerate(r):
                v = to_q(v)
                if v:
                    out.rows[i][j] = ring.const(v)
        return out

    def copy(self) -> "SMat":
        return SMat(self.ring, self.nrows, self.ncols, [dict(r) for r in self.rows])

    def __getitem__(self, ij) -> TruncSeries:
        i, j = ij
        return self.rows[i].get(j) or self.ring.zero()

    def set(self, i: int, j: int, v: TruncSeries) -> None:
        if v:
            self.rows[i][j] = v
        else:
            self.rows[i].pop(j, None)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def columns(self) -> list[dict]:
        cols = [dict() for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                cols[j][i] = v
        return cols

    def __add__(self, other: "SMat") -> "SMat":
        self._same_shape(other)
        out = self.copy()
        for i, r in enumerate(other.rows):
            row = out.rows[i]
            for j, v in r.items():
                nv = row[j] + v if j in row else v
                if nv:
                    row[j] = nv
                else:
                    row.pop(j, None)
        return out

    def __neg__(self) -> "SMat":
        return SMat(self.ring, self.nrows, self.ncols, [{j: -v for j, v in r.items()} for r in self.rows])

    def __sub__(self, other: "SMat") -> "SMat":
        return self + (-other)

    def scale(self, c) -> "SMat":
        if isinstance(c, TruncSeries):
            rows = [{j: v * c for j, v in r.items()} for r in self.rows]
        else:
            c = to_q(c)
            rows = [{j: v.scale(c) for j, v in r.items()} for r in self.rows]
        return SMat(self.ring, self.nrows, self.ncols, [{j: v for j, v in r.items() if v} for r in rows])

    def __matmul__(self, other: "SMat") -> "SMat":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = SMat(self.ring, self.nrows, other.ncols)
        orows = other.rows
        for i, r in enumerate(self.rows):
            acc: dict = {}
            for k, a in r.items():
                for j, b in orows[k].items():
                    p = a * b
                    if j in acc:
                        acc[j] = acc[j] + p
                    else:
                        acc[j] = p
            out.rows[i] = {j: v for j, v in acc.items() if v}
        return out

    def apply(self, vec: dict) -> dict:
        out: dict = {}
        for i, r in enumerate(self.rows):
            acc = None
            for j, a in r.items():
                b = vec.get(j)
                if b is not None:
                    acc = a * b if acc is None else acc + a * b
            if acc:
                out[i] = acc
        return out

    def _same_shape(self, other: "SMat") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, SMat) or self.shape != other.shape:
            return False
        return all(a == b for a, b in zip(self.rows, other.rows))

    def is_zero(self) -> bool:
        return not any(self.rows)

    def transpose(self) -> "SMat":
        out = SMat(self.ring, self.ncols, self.nrows)
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                out.rows[j][i] = v
        return out

    def lift(self, ring: SeriesRing) -> "SMat":
        return SMat(ring, self.nrows, self.ncols,
                    [{j: v.lift(ring) for j, v in r.items() if v.lift(ring)} for r in self.rows])

    def truncate(self, k: int) -> "SMat":
        from ..series import series_ring
        ring = series_ring(self.ring.names, k)
        rows = []
        for r in self.rows:
            nr = {}
            for j, v in r.items():
                t = v.truncate(k)
                if t:
                    nr[j] = t
            rows.append(nr)
        return SMat(ring, self.nrows, self.ncols, rows)

    def constant_part(self) -> list[list]:
        """Reduction mod the maximal ideal, as a dense rational matrix."""
        out = [[ZERO] * self.ncols for _ in range(self.nrows)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                out[i][j] = v.constant()
        return out

    def is_upper_triangular(self) -> bool:
        return all(j >= i for i, r in enumerate(self.rows) for j in r)

    def diagonal(self) -> list[TruncSeries]:
        return [self[i, i] for i in range(min(self.nrows, self.ncols))]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "SMat":
        cidx = {c: k for k, c in enumerate(cols)}
        out = SMat(self.ring, len(rows), len(cols))
        for a, i in enumerate(rows):
            out.rows[a] = {cidx[j]: v for j, v in self.rows[i].items() if j in cidx}
        return out

    def to_json(self) -> list:
        return [[i, j, v.to_json()] for i, r in enumerate(self.rows) for j, v in sorted(r.items())]


def scalar_rank(mat: list[list]) -> int:
    rows = [{j: v for j, v in enumerate(r) if v} for r in mat]
    return len(rref(rows)[1])


def block_diag(ring, blocks: Iterable[SMat]) -> SMat:
    blocks = list(blocks)
    m = sum(b.nrows for b in blocks)
    n = sum(b.ncols for b in blocks)
    out = SMat(ring, m, n)
    ro = co = 0
    for b in blocks:
        for i, r in enumerate(b.rows):
            out.rows[ro + i] = {co + j: v for j, v in r.items()}
        ro += b.nrows
        co += b.ncols
    return out
