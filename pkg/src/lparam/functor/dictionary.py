"""The dictionary from principal-series complexes to the local model.

A term iota(delta_w) goes to the coordinate subscheme module O_{Y(w)}
(u_i = 0 for i in I_w) and a differential entry c f(w, w') goes to
c g(w, w').  Internal degree shifts are propagated from degree 0 so every
image differential is homogeneous of degree 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..exact import q_str
from ..hecke.complexes import PrincipalSeriesComplex, cz_complex, exactness_report, point_data, standard_complex
from ..hecke.homs import i_set_on_links
from ..local.complexes import GradedComplex, GradingError, HomologyTable, homology
from ..local.ring import CyclicModule, LocalModelModule, ModuleMap, local_ring, poly
from ..params import PhiNPoint


class DictionaryError(GradingError):
    pass


def _constant(c) -> object:
    """Constant of a unit series that must be a rational scalar."""
    if hasattr(c, "constant"):
        k = c.constant()
        if c != c.ring.const(k):
            raise DictionaryError(f"coefficient {c} is not a scalar")
        return k
    return c


def dictionary(C: PrincipalSeriesComplex, scalars: dict | None = None) -> GradedComplex:
    """Term-by-term image of C.  ``scalars[(deg, row, col)]`` multiplies the
    corresponding entry (default 1); only rational scalars are accepted."""
    cc = C.cc
    ring = local_ring(cc.lengths)
    links = cc.links
    vanish_t = C.deform == "s"
    base_ann = [ring.var(ring.t_name(a)) for a in range(ring.nt)] if vanish_t else []
    I = {(deg, a): i_set_on_links(w, links) for deg, ts in C.terms.items() for a, (_, w) in enumerate(ts)}
    top = max(C.terms)
    shift = {(top, a): 0 for a in range(len(C.terms[top]))}
    for deg in sorted(C.terms, reverse=True)[1:]:
        ent = C.entries.get(deg, {})
        for a in range(len(C.terms[deg])):
            cand = {shift[(deg + 1, b)] + len(I[(deg, a)] - I[(deg + 1, b)])
                    for (b, aa) in ent if aa == a}
            if len(cand) != 1:
                raise DictionaryError(f"no consistent degree shift for term {a} in degree {deg}")
            shift[(deg, a)] = cand.pop()
    terms = {}
    for deg, ts in C.terms.items():
        summ = []
        for a, (_, w) in enumerate(ts):
            ann = [ring.u(i) for i in sorted(I[(deg, a)])] + base_ann
            summ.append(CyclicModule(ring, tuple(ann), shift[(deg, a)], None, "Y(" + ",".join(map(str, w)) + ")"))
        terms[deg] = LocalModelModule(ring, tuple(summ))
    diffs = {}
    for deg, ent in C.entries.items():
        out = {}
        for (b, a), (sign, w1, w2) in ent.items():
            c = sign * _constant((scalars or {}).get((deg, b, a), 1))
            m = [0] * ring.nvars
            for i in I[(deg, a)] - I[(deg + 1, b)]:
                m[ring.index[f"s{i}"]] += 1
            out[(b, a)] = poly(tuple(m), c)
        diffs[deg] = ModuleMap(terms[deg], terms[deg + 1], out)
    G = GradedComplex(ring, terms, diffs)
    if not G.d_squared_zero():
        raise DictionaryError("image complex has d^2 != 0")
    return G


def sign_equivalent(A: GradedComplex, B: GradedComplex) -> bool:
    """A and B agree up to a diagonal change of basis by signs."""
    if A.ring is not B.ring or A.degrees != B.degrees:
        return False
    for i in A.degrees:
        sa, sb = A.terms[i].summands, B.terms[i].summands
        if [(c.ann, c.shift_deg) for c in sa] != [(c.ann, c.shift_deg) for c in sb]:
            return False
    eps = {}
    for i in sorted(A.degrees, reverse=True):
        for a in range(A.terms[i].rank):
            if (i, a) not in eps and i == max(A.degrees):
                eps[(i, a)] = 1
    for i in sorted(A.diffs, reverse=True):
        da, db = A.diffs[i].entries, B.diffs.get(i).entries
        if set(da) != set(db):
            return False
        for (b, a), p in da.items():
            q = db[(b, a)]
            if set(p) != set(q):
                return False
            ratio = {q[m] / p[m] for m in p}
            if len(ratio) != 1 or abs(next(iter(ratio))) != 1:
                return False
            r = int(next(iter(ratio))) * eps[(i + 1, b)]
            if eps.setdefault((i, a), r) != r:
                return False
    return True


def recognize(H: HomologyTable) -> dict | None:
    """Degree and cyclic data when the homology sits in a single degree."""
    nz = H.nonzero_degrees()
    if len(nz) != 1:
        return None
    i = nz[0]
    info = H.cyclic.get(i)
    out = {"degree": i}
    if info is not None:
        out.update(info)
    return out


@dataclass
class FunctorOutput:
    descriptor: dict
    complex: GradedComplex
    homology: HomologyTable
    identified: dict | None
    hecke: dict = field(default_factory=dict)
    expectation: dict = field(default_factory=dict)
    passed: bool | None = None

    def to_json(self) -> dict:
        return {"input": self.descriptor, "ranks": {str(d): r for d, r in self.complex.ranks().items()},
                "homology": self.homology.to_json(), "identified": self.identified,
                "hecke": self.hecke, "expectation": self.expectation, "passed": self.passed}


def _point_descriptor(p: PhiNPoint, kind: str) -> dict:
    d = p.to_json()
    d["kind"] = kind
    return d


def resolve_point(p: PhiNPoint, kind: str = "standard", k: int = 3) -> PrincipalSeriesComplex:
    """Principal-series cube resolving the standard module (deformed along
    the whole base) or the simple quotient (at t = 0) at p."""
    pd = point_data(p)
    if kind == "standard":
        return standard_complex(pd.cc, pd.Z, k)
    if kind == "simple":
        return cz_complex(pd.cc.n, pd.Z, k=k, cc=pd.cc)
    raise ValueError(f"unknown module class {kind!r}")


def r_functor(obj, kind: str = "standard", k: int = 3, degree_bound: int = 6,
              exactness: bool = True, margin: int = 1) -> FunctorOutput:
    """Apply the resolution-plus-dictionary route.

    ``obj`` is a PhiNPoint (``kind`` "standard" or "simple") or an already
    built PrincipalSeriesComplex.
    """
    if isinstance(obj, PrincipalSeriesComplex):
        C, desc = obj, {"complex": obj.name}
    elif isinstance(obj, PhiNPoint):
        C, desc = resolve_point(obj, kind, k), _point_descriptor(obj, kind)
    else:
        raise TypeError("expected a PhiNPoint or a PrincipalSeriesComplex")
    R = C.realize()
    hecke = {"terms": {str(d): [list(w) for w in C.labels(d)] for d in C.degrees()},
             "d_squared_zero": C.d_squared_zero(R)}
    if exactness and C.k > margin:
        rep = exactness_report(C, margin=margin)
        hecke["minimal_ranks"] = rep["minimal_ranks"]
        hecke["exact_negative"] = rep["exact_negative"]
    G = dictionary(C)
    H = homology(G, degree_bound)
    return FunctorOutput(desc, G, H, recognize(H), hecke)


def hilbert_json(table: dict) -> list:
    return [{"degree": d, "weight": list(w), "dim": v} for (d, w), v in sorted(table.items())]


def ann_strings(ring, ann) -> list[str]:
    return [ring.mono_str(m) for m in ann]


__all__ = ["DictionaryError", "FunctorOutput", "dictionary", "r_functor", "recognize", "resolve_point",
           "sign_equivalent", "hilbert_json", "ann_strings", "q_str"]
