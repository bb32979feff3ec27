"""Bigraded bookkeeping: restrict coordinates and maps to one (degree, weight) piece."""

from __future__ import annotations

from typing import Sequence

from .exact import RatMatrix, WeightVector


def _label(x) -> tuple[int, tuple]:
    if hasattr(x, "degree") and hasattr(x, "weight"):
        return x.degree, tuple(x.weight)
    d, w = x
    return d, tuple(w)


def slice_indices(labels: Sequence, degree: int, weight) -> list[int]:
    w = tuple(weight)
    return [i for i, lab in enumerate(labels) if _label(lab) == (degree, w)]


def graded_slice(labels: Sequence, degree: int, weight: WeightVector,
                 matrix: RatMatrix | None = None, row_labels: Sequence | None = None) -> RatMatrix:
    """Restrict to the coordinates of bidegree (degree, weight).

    ``labels`` bigrade the columns, ``row_labels`` (default ``labels``) the
    rows.  Without a matrix the identity of the slice is returned, so its
    size is the dimension of that piece.
    """
    cols = slice_indices(labels, degree, weight)
    if matrix is None:
        return RatMatrix.identity(len(cols))
    rows = slice_indices(labels if row_labels is None else row_labels, degree, weight)
    return RatMatrix([[matrix[r, c] for c in cols] for r in rows], ncols=len(cols))


def hilbert_table_json(table: dict) -> list[dict]:
    """{(degree, weight): dim} -> sorted list of {degree, weight, dim} records."""
    return [{"degree": d, "weight": list(w), "dim": v} for (d, w), v in sorted(table.items()) if v]
