import json

import pytest

from conftest import corpus_algebra, corpus_doc
from quiveralg.screening import (ALGEBRA_CHECKS, CHECK_ORDER, FAIL, INAPPLICABLE, INCONCLUSIVE, PASS, Involved,
                                 check_square_lemma, check_triangle_rn, classify_nonregular_vertices,
                                 classify_triangles, input_hash, k_and, k_implies, k_not, k_or, run_pipeline)
from quiveralg.textformat import parse

# expected statuses in CHECK_ORDER; '.' pass, 'F' fail, '-' inapplicable, '?' inconclusive
EXPECTED = {
    "quaternion":            ". . . . . . . . . . . . . .",
    "quaternion_2A_k2":      ". . . . . . . . . . . ? . .",
    "nakayama2":             "F F F . . - - F . . . . . .",
    "lemma22_pattern":       "- - F F . - - - - - - - - -",
    "two_loops_quiver":      "- - . . . - - - - - - - - -",
    "triangle_R":            "F F F . F - - . . . . . . .",
    "triangle_mixed":        "F F F . F - - . F . . . . .",
    "forced_arrow_missing":  "F F F F . - - F . . . . F .",
    "square_lemma_broken":   "F F F . . - - . . . F F . .",
    "square_forced_missing": "F F F . . - - . . F . . . .",
    "type_R_vertex":         "F F F . F - - . F . . . F .",
    "wild_factor":           "F F F . F - - . F . . . F F",
}
SYMBOL = {PASS: ".", FAIL: "F", INAPPLICABLE: "-", INCONCLUSIVE: "?"}


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_corpus_statuses(name):
    rep = run_pipeline(corpus_doc(name))
    assert [c.id for c in rep.checks] == list(CHECK_ORDER)
    assert " ".join(SYMBOL[c.status] for c in rep.checks) == EXPECTED[name]


def test_kleene_connectives():
    assert k_not(None) is None and k_not(True) is False
    assert k_and(True, None) is None and k_and(False, None) is False
    assert k_or(True, None) is True and k_or(False, None) is None
    assert k_implies(False, None) is True and k_implies(True, None) is None
    assert k_implies(True, False) is False


def test_involved_is_tristate(quaternion):
    inv = Involved(quaternion)
    assert inv((0, 0)) is True          # x*x appears in a minimal relation, intrinsically
    assert inv((0, 1)) is False         # x*y appears in no minimal relation at all


def test_triangle_classes():
    for name, cls in (("triangle_R", "R"), ("triangle_N", "N"), ("triangle_mixed", "mixed")):
        (tc,) = classify_triangles(corpus_algebra(name))
        assert tc.cls == cls
        assert (tc.breaking_pair is not None) == (cls == "mixed")


def test_triangle_rn_witness_names_breaking_pair():
    A = corpus_algebra("triangle_mixed")
    res = check_triangle_rn(A, Involved(A))
    assert res.status == FAIL
    pair = res.witness[0]["breaking_pair"]
    assert set(pair) == {"not_involved", "involved"}


def test_triangles_through_double_arrow_are_flagged():
    A = corpus_algebra("triangle_double")
    rows = check_triangle_rn(A, Involved(A)).witness
    assert len(rows) == 2
    assert all(r["through_double_arrow"] is True for r in rows)
    A = corpus_algebra("triangle_R")
    assert not any("through_double_arrow" in r for r in check_triangle_rn(A, Involved(A)).witness)


def test_loops_do_not_form_triangles():
    # a loop x at 1 and a 2-cycle 1 -> 2 -> 1: x, a, b is a closed path but not a triangle
    A = parse("vertices: 1 2\narrow x: 1 -> 1\narrow a: 1 -> 2\narrow b: 2 -> 1\n"
              "relation: x^2\nrelation: a b\nrelation: b a\nrelation: x a\nrelation: b x\n").build()
    assert classify_triangles(A) == []


def test_square_lemma_checks_all_rotations():
    A = corpus_algebra("square_lemma_broken")
    res = check_square_lemma(A, Involved(A))
    assert res.status == FAIL
    assert all(r["premise_verdict"] == "involved" and r["conclusion_verdict"] == "not involved"
               for r in res.witness)


def test_vertex_classification():
    (vt,) = [v for v in classify_nonregular_vertices(corpus_algebra("type_R_vertex")) if v.cls == "R"]
    assert vt.kind == "(1,2)" and vt.proper
    types = {v.cls for v in classify_nonregular_vertices(corpus_algebra("type_N_vertex"))}
    assert "R" not in types


def test_quiver_only_input_skips_algebra_checks():
    rep = run_pipeline(corpus_doc("two_loops_quiver"))
    for cid in ALGEBRA_CHECKS:
        assert rep.check(cid).status == INAPPLICABLE
    assert rep.presentation["algebra"] is None


def test_period4_gate_and_exclusion_note():
    rep = run_pipeline(corpus_doc("dual_numbers"))
    assert rep.check("PERIOD4").status == FAIL
    assert "excluded" in rep.check("PERIOD4").witness["exclusion"]
    assert rep.check("DIMVEC_EQ").status == INAPPLICABLE


def test_path4_inconclusive_is_reported_with_verdicts():
    rep = run_pipeline(corpus_doc("quaternion_2A_k2"))
    c = rep.check("PATH4_REDUCTION")
    assert c.status == INCONCLUSIVE
    assert c.witness == [{"path": "ga*be*ga*al", "premise_verdict": "presentation-dependent",
                          "conclusion": "be*ga*al", "conclusion_verdict": "not involved"}]
    assert not rep.any_fail


def test_exact_sequences_in_report():
    rep = run_pipeline(corpus_doc("quaternion"))
    (seq,) = rep.presentation["exact_sequences"]
    assert seq["verified"] and seq["failed_flags"] == []
    assert seq["p_hat_norm"] == 16 and seq["p_norm"] == 8


def test_report_json_is_canonical():
    a = run_pipeline(corpus_doc("triangle_mixed")).dumps()
    b = run_pipeline(corpus_doc("triangle_mixed")).dumps()
    assert a == b
    data = json.loads(a)
    assert data["input_hash"] and len(data["checks"]) == len(CHECK_ORDER)
    assert json.dumps(data, sort_keys=True, indent=2) == a


def test_input_hash_depends_on_content_and_options():
    d1 = parse("vertices: 1\narrow x: 1 -> 1\nrelation: x^2\n")
    d2 = parse("# comment only differs\nvertices: 1\narrow x: 1 -> 1\nrelation: x*x\n")
    assert input_hash(d1, {}) == input_hash(d2, {})
    assert input_hash(d1, {}) != input_hash(d1, {"max_period": 5})
