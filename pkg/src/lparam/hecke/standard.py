"""Segments, admissible orderings and standard modules.

A segment is a chain (head, length) with values head, head/q, ...  The
standard module of a regular semisimple point is the parabolic induction
of the chain Steinbergs, ordered so that no segment precedes a later one.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from ..exact import as_qspec, q_str, to_q
from ..params import PhiNPoint, chain_decompose
from ..series import SeriesRing, series_ring
from .algebra import make_hecke
from .modules import CentralCharacter, HeckeModule, ModuleError, induced_character, steinberg_character


@dataclass(frozen=True)
class Segment:
    head: object
    length: int

    def __post_init__(self):
        object.__setattr__(self, "head", to_q(self.head))

    def values(self, q) -> list:
        return [self.head / q ** j for j in range(self.length)]

    def exponent_range(self, base, q) -> tuple[int, int] | None:
        """(lo, hi) with values base*q^lo .. base*q^hi, if on the q-line of base."""
        e = _q_log(self.head / base, q)
        if e is None:
            return None
        return e - self.length + 1, e

    def __repr__(self) -> str:
        return f"[{q_str(self.head)};{self.length}]"


def _q_log(x, q) -> int | None:
    """Integer e with x = q^e, else None (q > 1)."""
    x, q = to_q(x), to_q(q)
    if x <= 0:
        return None
    e = 0
    while x > 1:
        x, e = x / q, e + 1
    while x < 1:
        x, e = x * q, e - 1
    return e if x == 1 else None


def linked(a: Segment, b: Segment, q) -> bool:
    """The union is a segment and neither contains the other."""
    ra = a.exponent_range(b.head, q)
    if ra is None:
        return False
    rb = (-b.length + 1, 0)
    lo, hi = min(ra[0], rb[0]), max(ra[1], rb[1])
    if ra[0] > rb[1] + 1 or rb[0] > ra[1] + 1:
        return False
    nested = (ra[0] <= rb[0] and rb[1] <= ra[1]) or (rb[0] <= ra[0] and ra[1] <= rb[1])
    return not nested and hi - lo + 1 <= a.length + b.length


def precedes(a: Segment, b: Segment, q) -> bool:
    """a precedes b: linked, and b's head is a positive q-power times a's head."""
    if not linked(a, b, q):
        return False
    e = _q_log(b.head / a.head, q)
    return e is not None and e >= 1


def is_admissible(order: Sequence[Segment], q) -> bool:
    return not any(precedes(order[i], order[j], q) for i in range(len(order)) for j in range(i + 1, len(order)))


def kudla_order(segments: Sequence[Segment], q) -> list[Segment]:
    """Topological order of the reversed precedence relation.

    Ties are broken by descending length, then descending head.
    """
    rest = list(segments)
    out = []
    while rest:
        # the next segment must not precede anything placed after it
        ready = [s for s in rest if not any(precedes(s, t, q) for t in rest if t is not s)]
        if not ready:
            raise ModuleError("no admissible ordering")
        ready.sort(key=lambda s: (-s.length, -s.head))
        out.append(ready[0])
        rest.remove(ready[0])
    if not is_admissible(out, q):
        raise ModuleError("ordering is not admissible")
    return out


def admissible_orders(segments: Sequence[Segment], q, limit: int = 24) -> list[list[Segment]]:
    out = []
    seen = set()
    for perm in permutations(range(len(segments))):
        order = [segments[i] for i in perm]
        key = tuple((s.head, s.length) for s in order)
        if key in seen:
            continue
        seen.add(key)
        if is_admissible(order, q):
            out.append(order)
            if len(out) >= limit:
                break
    return out


def segments_of(p: PhiNPoint) -> list[Segment]:
    cd = chain_decompose(p)
    return [Segment(c.head, c.length) for c in cd.chains]


def standard_character(order: Sequence[Segment], q, base: SeriesRing | None = None) -> tuple[list, list]:
    """Block sizes and theta-character of the induced Steinberg product."""
    base = base or series_ring((), 1)
    chi, blocks = [], []
    for s in order:
        chi.extend(steinberg_character(s.head, s.length, base, q))
        blocks.append(s.length)
    return blocks, chi


def standard_module(p: PhiNPoint, order: Sequence[Segment] | None = None) -> HeckeModule:
    """LL^mod(phi, N) over Q."""
    vals = p.eigenvalues
    if len(set(vals)) != len(vals):
        raise ModuleError("repeated eigenvalues: phi is not regular semisimple")
    q = p.q
    segs = segments_of(p)
    order = list(order) if order is not None else kudla_order(segs, q)
    if not is_admissible(order, q):
        raise ModuleError("ordering is not admissible")
    alg = make_hecke(p.n, p.qspec)
    blocks, chi = standard_character(order, q)
    M = induced_character(alg, blocks, chi, [-1] * len(blocks),
                          name="LLmod" + "".join(repr(s) for s in order))
    M.segments = tuple(order)
    return M


def central_character_of(values: Sequence, qspec) -> CentralCharacter:
    """Group distinct eigenvalues into maximal q-strings, heads descending."""
    qs = as_qspec(qspec)
    q = qs.q
    vals = sorted({to_q(v) for v in values}, reverse=True)
    used = set()
    strings = []
    for v in vals:
        if v in used:
            continue
        if v * q in set(vals):
            continue
        r = 0
        x = v
        while x in set(vals):
            used.add(x)
            r += 1
            x = x / q
        strings.append((v, r))
    strings.sort(key=lambda s: -s[0])
    return CentralCharacter(tuple(strings), qs)
