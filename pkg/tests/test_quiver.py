import itertools

import pytest
from hypothesis import given, settings, strategies as st

from quiveralg.quiver import (EnumerationStats, Quiver, ResourceLimitExceeded, canonical_form,
                              classify_regularity, enumerate_biserial_quivers, enumerate_squares,
                              enumerate_triangles, find_lemma21_violations, find_lemma22_violations,
                              normalize_filter, one_vertex_triangle_violations, validate, vertex_profile)
from strategies import quivers


def relabel(q: Quiver, perm: list[int], arrow_perm: list[int]) -> Quiver:
    arrows = [None] * q.n_arrows
    for a, (s, t) in enumerate(q.arrows):
        arrows[arrow_perm[a]] = (perm[s], perm[t])
    return Quiver.from_edges(q.n_vertices, arrows)


def test_quiver_basics():
    q = Quiver.from_edges(2, [(0, 1), (1, 0), (0, 0)], ["a", "b", "x"])
    assert q.n_arrows == 3
    assert q.out_arrows(0) == [0, 2] and q.in_arrows(0) == [1, 2]
    assert q.is_connected()
    assert q.opposite().arrows == ((1, 0), (0, 1), (0, 0))
    assert q.arrow_label(2) == "x" and q.vertex_label(1) == "1"


@pytest.mark.parametrize("bad", [dict(n_vertices=1, arrows=[(0, 1)]),
                                 dict(n_vertices=2, arrows=[(0, 1)], arrow_names=("a", "b")),
                                 dict(n_vertices=2, arrows=[(0, 1), (1, 0)], arrow_names=("a", "a"))])
def test_invalid_quivers(bad):
    with pytest.raises(ValueError):
        Quiver(**bad)


def test_validate_reports_biserial_and_sinks():
    q = Quiver.from_edges(3, [(0, 1), (0, 1), (0, 2)])
    kinds = {v.kind for v in validate(q, biserial=True)}
    assert kinds == {"outdegree", "sink", "source"}
    assert validate(Quiver.from_edges(1, [(0, 0), (0, 0)]), biserial=True) == []


def test_regularity_classes():
    assert classify_regularity(1, 1) == "1-regular"
    assert classify_regularity(2, 2) == "2-regular"
    assert classify_regularity(1, 2) == "(1,2)"
    assert classify_regularity(2, 1) == "(2,1)"
    assert classify_regularity(0, 1) == "other"
    with pytest.raises(KeyError):
        vertex_profile(Quiver.from_edges(1, [(0, 0)]), 3)


def test_lemma21():
    assert find_lemma21_violations(Quiver.from_edges(2, [(0, 1), (1, 0)])) == [0, 1]
    assert find_lemma21_violations(Quiver.from_edges(1, [(0, 0)])) == [0]
    assert find_lemma21_violations(Quiver.from_edges(1, [(0, 0), (0, 0)])) == []


def test_lemma22_pattern_and_mirror():
    # j=0, i=1, t=2: i->j, j->i, t->i
    q = Quiver.from_edges(3, [(1, 0), (0, 1), (2, 1), (2, 2)])
    assert [v for v, _ in find_lemma22_violations(q)] == [1]
    assert [v for v, _ in find_lemma22_violations(q.opposite())] == [1]
    # t = j (double arrow back) is not the pattern
    assert find_lemma22_violations(Quiver.from_edges(2, [(1, 0), (0, 1), (0, 1)])) == []
    # a loop is not a 2-cycle
    assert find_lemma22_violations(Quiver.from_edges(2, [(1, 1), (1, 1), (0, 1), (1, 0)])) == []


def brute_lemma22(q: Quiver) -> set[int]:
    """Direct reading of the pattern: the incident arrows at i are exactly i->j, j->i, t->i (or all reversed)."""
    hits = set()
    for qq in (q, q.opposite()):
        for i in range(qq.n_vertices):
            incident = [a for a, (s, t) in enumerate(qq.arrows) if s == i or t == i]
            if len(incident) != 3:
                continue
            for j, t in itertools.permutations(range(qq.n_vertices), 2):
                if i in (j, t):
                    continue
                want = sorted([(i, j), (j, i), (t, i)])
                if sorted(qq.arrows[a] for a in incident) == want:
                    hits.add(i)
    return hits


def brute_lemma21(q: Quiver) -> list[int]:
    out = []
    for a, (s, t) in enumerate(q.arrows):
        outs = [b for b, (x, _) in enumerate(q.arrows) if x == s]
        ins = [b for b, (_, y) in enumerate(q.arrows) if y == t]
        if outs == [a] and ins == [a]:
            out.append(a)
    return out


@given(quivers(max_vertices=4, max_arrows=6))
@settings(max_examples=200, deadline=None)
def test_lemma_filters_match_brute_force(q):
    assert find_lemma21_violations(q) == brute_lemma21(q)
    assert {v for v, _ in find_lemma22_violations(q)} == brute_lemma22(q)


@given(quivers(max_vertices=4, max_arrows=6), st.randoms(use_true_random=False))
@settings(max_examples=200, deadline=None)
def test_canonical_form_invariant_under_relabeling(q, rnd):
    perm = list(range(q.n_vertices))
    arrow_perm = list(range(q.n_arrows))
    rnd.shuffle(perm)
    rnd.shuffle(arrow_perm)
    assert canonical_form(relabel(q, perm, arrow_perm)) == canonical_form(q)


def test_canonical_form_separates():
    a = Quiver.from_edges(2, [(0, 1), (1, 0), (0, 0)])
    b = Quiver.from_edges(2, [(0, 1), (1, 0), (1, 0)])
    assert canonical_form(a) != canonical_form(b)


@given(quivers(max_vertices=3, max_arrows=5))
@settings(max_examples=100, deadline=None)
def test_profile_matches_scan(q):
    for v in range(q.n_vertices):
        prof = vertex_profile(q, v)
        assert prof.indegree == sum(1 for _, t in q.arrows if t == v)
        assert prof.outdegree == sum(1 for s, _ in q.arrows if s == v)


def test_triangles_and_squares():
    tri = Quiver.from_edges(3, [(0, 1), (1, 2), (2, 0)])
    assert len(enumerate_triangles(tri)) == 1
    assert enumerate_squares(tri) == []
    sq = Quiver.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert len(enumerate_squares(sq)) == 1
    double = Quiver.from_edges(3, [(0, 1), (0, 1), (1, 2), (2, 0)])
    assert len(enumerate_triangles(double)) == 2


def test_one_vertex_triangle():
    # triangle with vertex 0 one-regular and vertex 1 of type (1,2)
    q = Quiver.from_edges(4, [(0, 1), (1, 2), (2, 0), (1, 3), (3, 2)])
    bad = one_vertex_triangle_violations(q)
    assert bad and all(v == 0 for _, v, _ in bad)


def brute_enumerate(n: int) -> set[bytes]:
    """All adjacency matrices with entries 0..2, row/column sums in {1, 2}, connected, up to isomorphism."""
    found = set()
    for entries in itertools.product(range(3), repeat=n * n):
        m = [entries[r * n:(r + 1) * n] for r in range(n)]
        if any(not 1 <= sum(row) <= 2 for row in m):
            continue
        if any(not 1 <= sum(m[r][c] for r in range(n)) <= 2 for c in range(n)):
            continue
        edges = [(r, c) for r in range(n) for c in range(n) for _ in range(m[r][c])]
        q = Quiver.from_edges(n, edges)
        if q.is_connected():
            found.add(canonical_form(q))
    return found


@pytest.mark.parametrize("n", [1, 2, 3])
def test_enumeration_matches_brute_force(n):
    got = [canonical_form(q) for q in enumerate_biserial_quivers(n)]
    assert len(got) == len(set(got))
    assert set(got) == brute_enumerate(n)


def test_enumeration_filter_counts():
    stats = EnumerationStats()
    out = list(enumerate_biserial_quivers(3, filters=["lemma21", "lemma22", "one_vertex_triangle"], stats=stats))
    assert stats.generated == 25
    assert stats.surviving == {"lemma21": 17, "lemma22": 14, "one_vertex_triangle": 14}
    assert len(out) == 14
    for q in out:
        assert not find_lemma21_violations(q) and not find_lemma22_violations(q)


def test_enumeration_limits():
    with pytest.raises(ResourceLimitExceeded):
        list(enumerate_biserial_quivers(3, max_candidates=3))
    with pytest.raises(ValueError):
        normalize_filter("nope")
    with pytest.raises(ValueError):
        list(enumerate_biserial_quivers(0))


def test_enumeration_max_arrows():
    qs = list(enumerate_biserial_quivers(2, max_arrows=2))
    assert [q.n_arrows for q in qs] == [2]
