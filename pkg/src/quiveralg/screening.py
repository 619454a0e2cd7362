"""Necessary-condition screening for tame symmetric algebras of period four.

Each check returns a :class:`CheckResult` with a status, a JSON-ready
witness and a short descriptive anchor naming the obstruction it tests.
A full pass means only that no obstruction was found.

The involvement test ``p < I`` is evaluated in three-valued (Kleene)
logic: ``True`` when every minimal relation class carrying ``p`` carries it
intrinsically, ``False`` when no element of ``I`` outside ``JI + IJ`` has a
``p`` coefficient, and ``None`` when the answer depends on the choice of
lifts (possible only for paths of length three or more).  Checks whose
verdict hinges on a ``None`` are reported ``inconclusive``.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .algebra import PresentedAlgebra, Word
from .field import FieldSpec
from .modules import omega_orbit
from .quiver import (Quiver, enumerate_squares, enumerate_triangles, find_lemma21_violations,
                     find_lemma22_violations, one_vertex_triangle_violations, validate, vertex_profile)
from .sequence import INFORMATIONAL_FLAGS, GeneratorCountMismatch, exact_sequence_data
from .textformat import InputDocument, render

PASS, FAIL, INAPPLICABLE, INCONCLUSIVE = "pass", "fail", "inapplicable", "inconclusive"

CHECK_ORDER = (
    "SYMMETRIC", "PERIOD4", "L21", "L22", "ONE_VERTEX_TRIANGLE", "DIMVEC_EQ", "DIMVEC_STRICT",
    "TRIANGLE_FORCED", "TRIANGLE_RN", "SQUARE_FORCED", "SQUARE_LEMMA", "PATH4_REDUCTION",
    "VERTEX_TYPE_R", "WILD_FACTOR",
)

ANCHORS = {
    "SYMMETRIC": "symmetric algebra: a nondegenerate trace functional exists",
    "PERIOD4": "every simple module has syzygy period exactly four",
    "L21": "no arrow is both the only arrow leaving its source and the only arrow entering its target",
    "L22": "no vertex whose incident arrows are exactly j <-> i <- t (or the mirror image)",
    "ONE_VERTEX_TRIANGLE": "the other two vertices of a triangle through a 1-regular vertex are 2-regular",
    "DIMVEC_EQ": "p_i^+ = p_i^- at every vertex (outer terms of the four-term projective sequence)",
    "DIMVEC_STRICT": "|p^_i| > |p_i| at every vertex",
    "TRIANGLE_FORCED": "a length-two path a*b (a: i->j, b: j->k) involved in a minimal relation forces an arrow k->i",
    "TRIANGLE_RN": "around a triangle g,a,b: g*a not involved implies a*b not involved, so triangles are of type R or N",
    "SQUARE_FORCED": "a*b*c involved with a*b or b*c not involved forces an arrow closing the square",
    "SQUARE_LEMMA": "around a square d,a,b,c: a*b*c involved implies b*c*d involved",
    "PATH4_REDUCTION": "d*a*b*c involved with |k^+| = 1 and d*a, a*b, b*c not involved implies a*b*c involved",
    "VERTEX_TYPE_R": "no non-regular vertex has both length-two composites through it involved (type R)",
    "WILD_FACTOR": "no double arrow a => b with an escaping arrow b -> x whose composites are not involved "
                   "(hereditary wild factor; a tameness obstruction, not a representation-type decision)",
}

ALGEBRA_CHECKS = {"SYMMETRIC", "PERIOD4", "DIMVEC_EQ", "DIMVEC_STRICT", "TRIANGLE_FORCED", "TRIANGLE_RN",
                  "SQUARE_FORCED", "SQUARE_LEMMA", "PATH4_REDUCTION", "VERTEX_TYPE_R", "WILD_FACTOR"}


@dataclass
class CheckResult:
    id: str
    status: str
    witness: object = None
    anchor: str = ""

    def __post_init__(self):
        if not self.anchor:
            self.anchor = ANCHORS[self.id]

    def to_json(self) -> dict:
        return {"id": self.id, "status": self.status, "witness": self.witness, "anchor": self.anchor}


@dataclass
class ScreeningReport:
    input_hash: str
    presentation: dict
    checks: list[CheckResult] = field(default_factory=list)

    def check(self, cid: str) -> CheckResult:
        return next(c for c in self.checks if c.id == cid)

    @property
    def any_fail(self) -> bool:
        return any(c.status == FAIL for c in self.checks)

    def to_json(self) -> dict:
        return {"input_hash": self.input_hash, "presentation": self.presentation,
                "checks": [c.to_json() for c in self.checks]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


# ---- three-valued involvement -----------------------------------------------

class Involved:
    """Memoized ``p < I`` verdicts in Kleene logic for one algebra."""

    def __init__(self, A: PresentedAlgebra):
        self.A = A
        self._cache: dict[Word, bool | None] = {}

    def __call__(self, p: Word) -> bool | None:
        p = tuple(p)
        hit = self._cache.get(p, "?")
        if hit != "?":
            return hit
        inv = self.A.involvement(p)
        res = True if inv.intrinsic else (False if not inv.literal else None)
        self._cache[p] = res
        return res


def k_not(x):
    return None if x is None else not x


def k_and(*xs):
    if any(x is False for x in xs):
        return False
    return None if any(x is None for x in xs) else True


def k_or(*xs):
    if any(x is True for x in xs):
        return True
    return None if any(x is None for x in xs) else False


def k_implies(a, b):
    return k_or(k_not(a), b)


def _verdict(x) -> str:
    return {True: "involved", False: "not involved", None: "presentation-dependent"}[x]


def _fold(violations: list, unknown: list) -> str:
    if violations:
        return FAIL
    return INCONCLUSIVE if unknown else PASS


# ---- naming helpers -----------------------------------------------------------

def _aname(q: Quiver, a: int) -> str:
    return q.arrow_label(a)


def _pname(q: Quiver, w: Word) -> str:
    return "*".join(q.arrow_label(a) for a in w)


def _vname(q: Quiver, v: int) -> str:
    return q.vertex_label(v)


def _vec(q: Quiver, x) -> dict:
    return {q.vertex_label(v): int(x[v]) for v in range(q.n_vertices)}


def _paths(q: Quiver, length: int) -> list[Word]:
    paths: list[Word] = [(a,) for a in range(q.n_arrows)]
    for _ in range(length - 1):
        paths = [w + (b,) for w in paths for b in q.out_arrows(q.target(w[-1]))]
    return paths


def _has_arrow(q: Quiver, s: int, t: int) -> list[int]:
    return [a for a in q.out_arrows(s) if q.target(a) == t]


# ---- quiver-level checks ------------------------------------------------------

def check_l21(q: Quiver) -> CheckResult:
    hits = find_lemma21_violations(q)
    wit = [{"arrow": _aname(q, a), "from": _vname(q, q.source(a)), "to": _vname(q, q.target(a))} for a in hits]
    return CheckResult("L21", FAIL if hits else PASS, wit)


def check_l22(q: Quiver) -> CheckResult:
    hits = find_lemma22_violations(q)
    wit = [{"vertex": _vname(q, v), "arrows": [_aname(q, a) for a in arrows],
            "orientation": "in-heavy" if len(q.in_arrows(v)) == 2 else "out-heavy"} for v, arrows in hits]
    return CheckResult("L22", FAIL if hits else PASS, wit)


def check_one_vertex_triangle(q: Quiver) -> CheckResult:
    hits = one_vertex_triangle_violations(q)
    wit = [{"triangle": [_aname(q, a) for a in tri.arrows], "one_regular_vertex": _vname(q, v),
            "offending_vertex": _vname(q, w), "offending_regularity": vertex_profile(q, w).regularity}
           for tri, v, w in hits]
    return CheckResult("ONE_VERTEX_TRIANGLE", FAIL if hits else PASS, wit)


def check_quiver_level(q: Quiver) -> list[CheckResult]:
    return [check_l21(q), check_l22(q), check_one_vertex_triangle(q)]


# ---- algebra-level checks -----------------------------------------------------

def check_symmetric(A: PresentedAlgebra) -> CheckResult:
    q = A.quiver
    form = A.symmetrizing_form()
    if form is None:
        cartan = A.cartan_matrix()
        n = q.n_vertices
        asym = [[_vname(q, a), _vname(q, b)] for a in range(n) for b in range(a + 1, n)
                if cartan[a][b] != cartan[b][a]]
        return CheckResult("SYMMETRIC", FAIL, {"reason": "no nondegenerate trace functional",
                                               "cartan_asymmetric_pairs": asym})
    support = [A.describe_word(w, i) for i, _, w in form.support()]
    return CheckResult("SYMMETRIC", PASS, {"functional_support": support, "gram_rank": form.gram_rank,
                                           "dimension": A.dimension})


@dataclass
class PeriodInfo:
    periods: dict[int, int | None]
    details: list[dict]
    conclusive: bool

    @property
    def all_four(self) -> bool:
        return self.conclusive and all(p == 4 for p in self.periods.values())


def compute_periods(A: PresentedAlgebra, max_period: int = 4) -> PeriodInfo:
    """Syzygy periods of all simples, searched up to ``max(max_period, 4)``."""
    q = A.quiver
    periods, details, conclusive = {}, [], True
    for i in range(q.n_vertices):
        orbit = omega_orbit(A, i, max(4, max_period))
        periods[i] = orbit.period
        entry = {"vertex": _vname(q, i), "period": orbit.period, "syzygy_dimensions": orbit.dimensions}
        if orbit.reason:
            entry["note"] = orbit.reason
        if orbit.period is None and "exceeds cap" in orbit.reason and len(orbit.dimensions) < 4:
            conclusive = False
        details.append(entry)
    return PeriodInfo(periods, details, conclusive)


def check_period4(A: PresentedAlgebra, info: PeriodInfo) -> CheckResult:
    bad = [d for d in info.details if d["period"] != 4]
    if not bad:
        return CheckResult("PERIOD4", PASS, info.details)
    if not info.conclusive and all(d["period"] is None for d in bad):
        return CheckResult("PERIOD4", INCONCLUSIVE, info.details)
    wit = {"offending": bad}
    short = sorted({d["period"] for d in bad if d["period"] is not None and d["period"] < 4})
    if short:
        wit["exclusion"] = (f"a simple module of period {', '.join(map(str, short))} occurs; "
                            "the algebra is excluded (only period exactly four is admissible)")
    return CheckResult("PERIOD4", FAIL, wit)


@dataclass
class DimVecData:
    vertex: int
    p: tuple[int, ...]
    p_plus: tuple[int, ...]
    p_minus: tuple[int, ...]

    @property
    def balanced(self) -> bool:
        return self.p_plus == self.p_minus

    @property
    def strict(self) -> bool:
        return sum(self.p_plus) > sum(self.p)


def dimension_vectors(A: PresentedAlgebra) -> list[DimVecData]:
    """``p_i``, ``p_i^+ = sum p_t(a)`` over arrows leaving ``i``, ``p_i^- = sum p_s(a)`` over arrows entering ``i``."""
    q = A.quiver
    C = A.cartan_matrix()
    n = q.n_vertices
    out = []
    for i in range(n):
        plus = tuple(sum(C[q.target(a)][u] for a in q.out_arrows(i)) for u in range(n))
        minus = tuple(sum(C[q.source(a)][u] for a in q.in_arrows(i)) for u in range(n))
        out.append(DimVecData(i, tuple(C[i]), plus, minus))
    return out


def dimension_vector_violations(A: PresentedAlgebra) -> dict[str, list[int]]:
    """Vertices breaking ``p^+ = p^-`` or ``|p^| > |p|``, regardless of periodicity."""
    data = dimension_vectors(A)
    return {"unbalanced": [d.vertex for d in data if not d.balanced],
            "not_strict": [d.vertex for d in data if not d.strict]}


def _gate(cid: str, info: PeriodInfo, q: Quiver) -> CheckResult | None:
    if info.all_four:
        return None
    bad = [{"vertex": _vname(q, v), "period": p} for v, p in info.periods.items() if p != 4]
    return CheckResult(cid, INAPPLICABLE, {"reason": "requires every simple to have period four",
                                           "offending": bad})


def check_dimvec_eq(A: PresentedAlgebra, info: PeriodInfo) -> CheckResult:
    q = A.quiver
    gated = _gate("DIMVEC_EQ", info, q)
    if gated:
        return gated
    bad = [{"vertex": _vname(q, d.vertex), "p_plus": _vec(q, d.p_plus), "p_minus": _vec(q, d.p_minus)}
           for d in dimension_vectors(A) if not d.balanced]
    return CheckResult("DIMVEC_EQ", FAIL if bad else PASS, bad)


def check_dimvec_strict(A: PresentedAlgebra, info: PeriodInfo) -> CheckResult:
    q = A.quiver
    gated = _gate("DIMVEC_STRICT", info, q)
    if gated:
        return gated
    rows = [{"vertex": _vname(q, d.vertex), "norm_p": sum(d.p), "norm_p_hat": sum(d.p_plus)}
            for d in dimension_vectors(A)]
    bad = [r for r in rows if not r["norm_p_hat"] > r["norm_p"]]
    return CheckResult("DIMVEC_STRICT", FAIL if bad else PASS, bad if bad else rows)


def check_triangle_forced(A: PresentedAlgebra, inv: Involved) -> CheckResult:
    q = A.quiver
    bad = []
    for a, b in _paths(q, 2):
        i, k = q.source(a), q.target(b)
        if inv((a, b)) and not _has_arrow(q, k, i):
            bad.append({"path": [_aname(q, a), _aname(q, b)], "missing_arrow": [_vname(q, k), _vname(q, i)]})
    return CheckResult("TRIANGLE_FORCED", FAIL if bad else PASS, bad)


@dataclass
class TriangleClass:
    triangle: tuple[int, int, int]          # (gamma, alpha, beta)
    verdicts: tuple[bool, bool, bool]       # gamma*alpha, alpha*beta, beta*gamma
    cls: str
    breaking_pair: tuple[int, int] | None   # indices into verdicts: (not involved, involved), consecutive
    through_double_arrow: bool              # some arrow of the triangle has a parallel twin


def classify_triangles(A: PresentedAlgebra, inv: Involved | None = None) -> list[TriangleClass]:
    inv = inv or Involved(A)
    q = A.quiver
    out = []
    for tri in enumerate_triangles(q):
        g, a, b = tri.arrows
        v = (inv((g, a)), inv((a, b)), inv((b, g)))
        cls = "R" if all(v) else ("N" if not any(v) else "mixed")
        pair = None
        for k in range(3):
            if v[k] is False and v[(k + 1) % 3] is True:
                pair = (k, (k + 1) % 3)
                break
        if (cls == "mixed") != (pair is not None):
            raise AssertionError("triangle classification disagrees with its consecutive-pair witness")
        doubled = any(len(_has_arrow(q, q.source(x), q.target(x))) > 1 for x in tri.arrows)
        out.append(TriangleClass(tri.arrows, v, cls, pair, doubled))
    return out


def check_triangle_rn(A: PresentedAlgebra, inv: Involved) -> CheckResult:
    q = A.quiver
    names = ("g*a", "a*b", "b*g")
    bad, rows = [], []
    for tc in classify_triangles(A, inv):
        g, a, b = tc.triangle
        comp = [(g, a), (a, b), (b, g)]
        row = {"triangle": {"g": _aname(q, g), "a": _aname(q, a), "b": _aname(q, b)},
               "class": tc.cls,
               "verdicts": {names[k]: _verdict(tc.verdicts[k]) for k in range(3)}}
        if tc.through_double_arrow:
            row["through_double_arrow"] = True
        if tc.breaking_pair:
            k, m = tc.breaking_pair
            row["breaking_pair"] = {"not_involved": _pname(q, comp[k]), "involved": _pname(q, comp[m])}
            bad.append(row)
        rows.append(row)
    return CheckResult("TRIANGLE_RN", FAIL if bad else PASS, bad if bad else rows)


def check_square_forced(A: PresentedAlgebra, inv: Involved) -> CheckResult:
    q = A.quiver
    bad, unknown = [], []
    for a, b, c in _paths(q, 3):
        i, j = q.source(a), q.target(c)
        if _has_arrow(q, j, i):
            continue
        cond = k_and(k_or(k_not(inv((a, b))), k_not(inv((b, c)))), inv((a, b, c)))
        if cond is False:
            continue
        row = {"path": _pname(q, (a, b, c)), "missing_arrow": [_vname(q, j), _vname(q, i)],
               "a*b": _verdict(inv((a, b))), "b*c": _verdict(inv((b, c))), "a*b*c": _verdict(inv((a, b, c)))}
        (bad if cond else unknown).append(row)
    return CheckResult("SQUARE_FORCED", _fold(bad, unknown), bad or unknown)


def check_square_lemma(A: PresentedAlgebra, inv: Involved) -> CheckResult:
    q = A.quiver
    bad, unknown = [], []
    for sq in enumerate_squares(q):
        arrows = sq.arrows          # (delta, alpha, beta, gamma)
        for r in range(4):
            d, a, b, c = arrows[r:] + arrows[:r]
            ok = k_implies(inv((a, b, c)), inv((b, c, d)))
            if ok is True:
                continue
            row = {"square": [_aname(q, x) for x in (d, a, b, c)],
                   "premise": _pname(q, (a, b, c)), "premise_verdict": _verdict(inv((a, b, c))),
                   "conclusion": _pname(q, (b, c, d)), "conclusion_verdict": _verdict(inv((b, c, d)))}
            (bad if ok is False else unknown).append(row)
    return CheckResult("SQUARE_LEMMA", _fold(bad, unknown), bad or unknown)


def check_path4_reduction(A: PresentedAlgebra, inv: Involved) -> CheckResult:
    q = A.quiver
    bad, unknown = [], []
    for d, a, b, c in _paths(q, 4):
        k = q.target(a)
        if len(q.out_arrows(k)) != 1:
            continue
        if inv((d, a)) is not False or inv((a, b)) is not False or inv((b, c)) is not False:
            continue
        ok = k_implies(inv((d, a, b, c)), inv((a, b, c)))
        if ok is True:
            continue
        row = {"path": _pname(q, (d, a, b, c)), "premise_verdict": _verdict(inv((d, a, b, c))),
               "conclusion": _pname(q, (a, b, c)), "conclusion_verdict": _verdict(inv((a, b, c)))}
        (bad if ok is False else unknown).append(row)
    return CheckResult("PATH4_REDUCTION", _fold(bad, unknown), bad or unknown)


@dataclass
class VertexType:
    vertex: int
    kind: str                       # "(1,2)" or "(2,1)"
    composites: tuple[Word, Word]
    verdicts: tuple[bool, bool]
    cls: str                        # R, N or mixed
    proper: bool


def classify_nonregular_vertices(A: PresentedAlgebra, inv: Involved | None = None) -> list[VertexType]:
    inv = inv or Involved(A)
    q = A.quiver
    out = []
    for i in range(q.n_vertices):
        prof = vertex_profile(q, i).regularity
        ins, outs = q.in_arrows(i), q.out_arrows(i)
        if prof == "(1,2)":
            comps = ((ins[0], outs[0]), (ins[0], outs[1]))
            proper = q.target(outs[0]) != q.target(outs[1])
        elif prof == "(2,1)":
            comps = ((ins[0], outs[0]), (ins[1], outs[0]))
            proper = q.source(ins[0]) != q.source(ins[1])
        else:
            continue
        v = (inv(comps[0]), inv(comps[1]))
        cls = "R" if all(v) else ("N" if not any(v) else "mixed")
        out.append(VertexType(i, prof, comps, v, cls, proper))
    return out


def _type_r_chain(A: PresentedAlgebra, vt: VertexType) -> dict:
    """Dimension-vector bookkeeping behind the impossibility of a proper type-R vertex."""
    q = A.quiver
    data = {d.vertex: d for d in dimension_vectors(A)}
    i = vt.vertex
    if vt.kind == "(1,2)":
        j = q.source(q.in_arrows(i)[0])
        k, l = (q.target(a) for a in q.out_arrows(i))
        forced = {"k->j": bool(_has_arrow(q, k, j)), "l->j": bool(_has_arrow(q, l, j))}
        # p_i^- = p_j and p_i^+ = p_k + p_l; at j the arrows from k and l make p^_j = p_j^-
        hat_j = data[j].p_minus
    else:
        j = q.target(q.out_arrows(i)[0])
        k, l = (q.source(a) for a in q.in_arrows(i))
        forced = {"j->k": bool(_has_arrow(q, j, k)), "j->l": bool(_has_arrow(q, j, l))}
        hat_j = data[j].p_plus
    di = data[i]
    return {
        "j": _vname(q, j), "k": _vname(q, k), "l": _vname(q, l),
        "forced_arrows_present": forced,
        "p_i_plus": _vec(q, di.p_plus), "p_i_minus": _vec(q, di.p_minus),
        "p_i_plus_equals_p_i_minus": di.balanced,
        "p_j": _vec(q, data[j].p), "p_hat_j": _vec(q, hat_j),
        "p_j_equals_p_hat_j": tuple(data[j].p) == tuple(hat_j),
        # with both forced arrows present p^_j = p_k + p_l = (p_i^+ or p_i^-), so balance at i
        # would force p_j = p^_j, contradicting |p^_j| > |p_j|
        "p_hat_j_equals_p_k_plus_p_l": tuple(hat_j) == (di.p_plus if vt.kind == "(1,2)" else di.p_minus),
    }


def check_vertex_types(A: PresentedAlgebra, inv: Involved) -> CheckResult:
    q = A.quiver
    bad, rows = [], []
    for vt in classify_nonregular_vertices(A, inv):
        row = {"vertex": _vname(q, vt.vertex), "kind": vt.kind, "class": vt.cls, "proper": vt.proper,
               "composites": {_pname(q, c): _verdict(x) for c, x in zip(vt.composites, vt.verdicts)}}
        if vt.cls == "R":
            row["dimension_vectors"] = _type_r_chain(A, vt)
            bad.append(row)
        rows.append(row)
    return CheckResult("VERTEX_TYPE_R", FAIL if bad else PASS, bad if bad else rows)


def check_wild_factor(A: PresentedAlgebra, inv: Involved) -> CheckResult:
    q = A.quiver
    bad = []
    n = q.n_vertices
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            double = _has_arrow(q, a, b)
            if len(double) < 2:
                continue
            for x_arrow in q.out_arrows(b):
                x = q.target(x_arrow)
                if x in (a, b):
                    continue
                for p in range(len(double)):
                    for r in range(p + 1, len(double)):
                        b1, b2 = double[p], double[r]
                        if inv((b1, x_arrow)) is False and inv((b2, x_arrow)) is False:
                            bad.append({"double_arrow": [_aname(q, b1), _aname(q, b2)],
                                        "escaping_arrow": _aname(q, x_arrow),
                                        "vertices": [_vname(q, a), _vname(q, b), _vname(q, x)]})
    return CheckResult("WILD_FACTOR", FAIL if bad else PASS, bad)


# ---- pipeline -----------------------------------------------------------------

def input_hash(doc: InputDocument, options: dict) -> str:
    payload = render(doc) + json.dumps(options, sort_keys=True)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def _serialize_sequences(A: PresentedAlgebra) -> list[dict]:
    q = A.quiver
    out = []
    for i in range(q.n_vertices):
        try:
            data = exact_sequence_data(A, i, check_period=False)
        except GeneratorCountMismatch as exc:
            out.append({"vertex": _vname(q, i), "obstruction": str(exc)})
            continue
        entry = {"vertex": _vname(q, i), "verified": data.ok,
                 "failed_flags": sorted(k for k, v in data.flags.items() if not v and k not in INFORMATIONAL_FLAGS),
                 "p_hat_norm": sum(data.p_hat), "p_norm": sum(data.p)}
        if data.arrow_adjustment:
            entry["arrow_adjustments"] = {q.arrow_label(a): A.describe(x)
                                          for a, x in sorted(data.arrow_adjustment.items())}
        out.append(entry)
    return out


def run_pipeline(doc: InputDocument, field_spec: FieldSpec | None = None, degree_bound: int | None = None,
                 max_period: int | None = None) -> ScreeningReport:
    q = doc.quiver()
    spec = field_spec or doc.field or FieldSpec()
    bound = degree_bound or doc.options.get("degree_bound", 30)
    maxp = max_period or doc.options.get("max_period", 4)
    options = {"field": spec.describe(), "degree_bound": bound, "max_period": maxp}
    presentation: dict = {
        "field": spec.describe(),
        "degree_bound": bound,
        "vertices": list(q.vertex_names),
        "arrows": {q.arrow_label(a): [_vname(q, s), _vname(q, t)] for a, (s, t) in enumerate(q.arrows)},
        "quiver_violations": [{"kind": v.kind, "where": v.where, "detail": v.detail}
                              for v in validate(q, biserial=True)],
        "involvement_caveat": "involvement verdicts are relative to the arrows of this presentation; "
                              "no change of presentation is searched",
    }
    results: dict[str, CheckResult] = {c.id: c for c in check_quiver_level(q)}
    if not doc.has_relations:
        presentation["algebra"] = None
        for cid in ALGEBRA_CHECKS:
            results[cid] = CheckResult(cid, INAPPLICABLE, {"reason": "no relations given (quiver-only input)"})
    else:
        A = doc.build(spec, bound)
        presentation["algebra"] = {"dimension": A.dimension, "nilpotency_degree": A.nilpotency_degree,
                                   "cartan": A.cartan_matrix()}
        info = compute_periods(A, maxp)
        inv = Involved(A)
        results["SYMMETRIC"] = check_symmetric(A)
        results["PERIOD4"] = check_period4(A, info)
        results["DIMVEC_EQ"] = check_dimvec_eq(A, info)
        results["DIMVEC_STRICT"] = check_dimvec_strict(A, info)
        results["TRIANGLE_FORCED"] = check_triangle_forced(A, inv)
        results["TRIANGLE_RN"] = check_triangle_rn(A, inv)
        results["SQUARE_FORCED"] = check_square_forced(A, inv)
        results["SQUARE_LEMMA"] = check_square_lemma(A, inv)
        results["PATH4_REDUCTION"] = check_path4_reduction(A, inv)
        results["VERTEX_TYPE_R"] = check_vertex_types(A, inv)
        results["WILD_FACTOR"] = check_wild_factor(A, inv)
        if info.all_four:
            presentation["exact_sequences"] = _serialize_sequences(A)
    return ScreeningReport(input_hash(doc, options), presentation, [results[c] for c in CHECK_ORDER])
