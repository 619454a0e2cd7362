"""Quivers as combinatorial objects.

A quiver has dense vertex ids ``0..n-1`` and dense arrow ids; arrow ``a``
goes from ``arrows[a][0]`` to ``arrows[a][1]``.  Loops and parallel arrows
are allowed.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator

REGULARITIES = ("1-regular", "2-regular", "(1,2)", "(2,1)", "other")


@dataclass(frozen=True)
class Quiver:
    n_vertices: int
    arrows: tuple[tuple[int, int], ...]
    arrow_names: tuple[str, ...] = ()
    vertex_names: tuple[str, ...] = ()

    def __post_init__(self):
        arrows = tuple((int(s), int(t)) for s, t in self.arrows)
        object.__setattr__(self, "arrows", arrows)
        if self.n_vertices < 0:
            raise ValueError("negative vertex count")
        for a, (s, t) in enumerate(arrows):
            if not (0 <= s < self.n_vertices and 0 <= t < self.n_vertices):
                raise ValueError(f"arrow {a} ({s}->{t}) uses an undeclared vertex")
        if not self.arrow_names:
            object.__setattr__(self, "arrow_names", tuple(f"a{k}" for k in range(len(arrows))))
        if not self.vertex_names:
            object.__setattr__(self, "vertex_names", tuple(str(v) for v in range(self.n_vertices)))
        if len(self.arrow_names) != len(arrows) or len(set(self.arrow_names)) != len(arrows):
            raise ValueError("arrow names must be unique, one per arrow")
        if len(self.vertex_names) != self.n_vertices or len(set(self.vertex_names)) != self.n_vertices:
            raise ValueError("vertex names must be unique, one per vertex")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], names: Iterable[str] | None = None) -> "Quiver":
        edges = tuple(edges)
        return cls(n, edges, tuple(names) if names is not None else ())

    @property
    def n_arrows(self) -> int:
        return len(self.arrows)

    def source(self, a: int) -> int:
        return self.arrows[a][0]

    def target(self, a: int) -> int:
        return self.arrows[a][1]

    def out_arrows(self, v: int) -> list[int]:
        """The set i^+ of arrows starting at ``v``, by arrow id."""
        return [a for a, (s, _) in enumerate(self.arrows) if s == v]

    def in_arrows(self, v: int) -> list[int]:
        """The set i^- of arrows ending at ``v``, by arrow id."""
        return [a for a, (_, t) in enumerate(self.arrows) if t == v]

    def adjacency(self) -> list[list[int]]:
        m = [[0] * self.n_vertices for _ in range(self.n_vertices)]
        for s, t in self.arrows:
            m[s][t] += 1
        return m

    def opposite(self) -> "Quiver":
        return Quiver(self.n_vertices, tuple((t, s) for s, t in self.arrows), self.arrow_names, self.vertex_names)

    def is_connected(self) -> bool:
        if self.n_vertices == 0:
            return False
        adj: dict[int, set[int]] = {v: set() for v in range(self.n_vertices)}
        for s, t in self.arrows:
            adj[s].add(t)
            adj[t].add(s)
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in adj[v] - seen:
                seen.add(w)
                stack.append(w)
        return len(seen) == self.n_vertices

    def arrow_label(self, a: int) -> str:
        return self.arrow_names[a]

    def vertex_label(self, v: int) -> str:
        return self.vertex_names[v]


@dataclass(frozen=True)
class Violation:
    kind: str
    where: str
    detail: str


def validate(q: Quiver, biserial: bool = False) -> list[Violation]:
    """Structural problems with ``q``; an empty list means it is usable.

    Checks non-emptiness and connectivity always, and with ``biserial``
    also ``1 <= |i^-|, |i^+| <= 2`` at every vertex.
    """
    out: list[Violation] = []
    if q.n_vertices == 0:
        out.append(Violation("empty", "quiver", "no vertices"))
        return out
    if not q.is_connected():
        out.append(Violation("disconnected", "quiver", "underlying graph is not connected"))
    if biserial:
        for v in range(q.n_vertices):
            nin, nout = len(q.in_arrows(v)), len(q.out_arrows(v))
            if nout > 2:
                out.append(Violation("outdegree", q.vertex_label(v), f"|i^+|={nout} > 2"))
            if nin > 2:
                out.append(Violation("indegree", q.vertex_label(v), f"|i^-|={nin} > 2"))
            if nout == 0:
                out.append(Violation("sink", q.vertex_label(v), "|i^+|=0"))
            if nin == 0:
                out.append(Violation("source", q.vertex_label(v), "|i^-|=0"))
    return out


@dataclass(frozen=True)
class VertexProfile:
    indegree: int
    outdegree: int
    regularity: str = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "regularity", classify_regularity(self.indegree, self.outdegree))


def classify_regularity(indegree: int, outdegree: int) -> str:
    if indegree == outdegree == 1:
        return "1-regular"
    if indegree == outdegree == 2:
        return "2-regular"
    if (indegree, outdegree) == (1, 2):
        return "(1,2)"
    if (indegree, outdegree) == (2, 1):
        return "(2,1)"
    return "other"


def vertex_profile(q: Quiver, i: int) -> VertexProfile:
    if not 0 <= i < q.n_vertices:
        raise KeyError(f"unknown vertex {i}")
    return VertexProfile(len(q.in_arrows(i)), len(q.out_arrows(i)))


def find_lemma21_violations(q: Quiver) -> list[int]:
    """Arrows ``a: i -> j`` that are the only arrow out of ``i`` and the only one into ``j``."""
    return [a for a, (s, t) in enumerate(q.arrows) if q.out_arrows(s) == [a] and q.in_arrows(t) == [a]]


def _lemma22_one_side(q: Quiver) -> list[tuple[int, tuple[int, ...]]]:
    hits = []
    for i in range(q.n_vertices):
        outs, ins = q.out_arrows(i), q.in_arrows(i)
        if len(outs) != 1 or len(ins) != 2:
            continue
        j = q.target(outs[0])
        if j == i:
            continue
        back = [a for a in ins if q.source(a) == j]
        other = [a for a in ins if q.source(a) != j]
        if len(back) == 1 and len(other) == 1 and q.source(other[0]) != i:
            hits.append((i, tuple(sorted(outs + ins))))
    return hits


def find_lemma22_violations(q: Quiver) -> list[tuple[int, tuple[int, ...]]]:
    """Vertices whose incident arrows are exactly ``j <-> i <- t`` (or the mirror image).

    That is: exactly three distinct arrows touch ``i``: ``i -> j``,
    ``j -> i`` and ``t -> i`` with ``i, j, t`` pairwise distinct; the dual
    pattern has the roles of in- and out-arrows exchanged.  Returns ``(vertex, arrows)``
    pairs sorted by vertex.
    """
    hits = dict(_lemma22_one_side(q))
    for i, arrows in _lemma22_one_side(q.opposite()):
        hits.setdefault(i, arrows)
    return sorted(hits.items())


@dataclass(frozen=True)
class Triangle:
    """Oriented 3-cycle ``gamma: x -> i``, ``alpha: i -> j``, ``beta: j -> x``."""

    gamma: int
    alpha: int
    beta: int

    @property
    def arrows(self) -> tuple[int, int, int]:
        return (self.gamma, self.alpha, self.beta)


@dataclass(frozen=True)
class Square:
    """Oriented 4-cycle ``delta: 1 -> 2, alpha: 2 -> 3, beta: 3 -> 4, gamma: 4 -> 1``."""

    delta: int
    alpha: int
    beta: int
    gamma: int

    @property
    def arrows(self) -> tuple[int, int, int, int]:
        return (self.delta, self.alpha, self.beta, self.gamma)


def _cycles(q: Quiver, length: int) -> list[tuple[int, ...]]:
    """Closed paths of ``length`` pairwise distinct non-loop arrows, one per rotation class.

    The representative starts at its smallest arrow id.
    """
    nonloops = [a for a, (s, t) in enumerate(q.arrows) if s != t]
    by_source: dict[int, list[int]] = {}
    for a in nonloops:
        by_source.setdefault(q.source(a), []).append(a)
    found = []

    def extend(path: list[int]):
        if len(path) == length:
            if q.target(path[-1]) == q.source(path[0]):
                found.append(tuple(path))
            return
        for b in by_source.get(q.target(path[-1]), []):
            if b > path[0] and b not in path:
                extend(path + [b])

    for a in nonloops:
        extend([a])
    return sorted(found)


def enumerate_triangles(q: Quiver) -> list[Triangle]:
    return [Triangle(*c) for c in _cycles(q, 3)]


def enumerate_squares(q: Quiver) -> list[Square]:
    return [Square(*c) for c in _cycles(q, 4)]


def _vertex_signature(q: Quiver, adj: list[list[int]], v: int) -> tuple:
    return (sum(adj[v]), sum(row[v] for row in adj), adj[v][v])


def canonical_form(q: Quiver) -> bytes:
    """Isomorphism-invariant encoding of the underlying directed multigraph.

    Minimum of the row-major adjacency matrix over all vertex orders that
    list vertices by (outdegree, indegree, loops) signature.
    """
    n = q.n_vertices
    adj = q.adjacency()
    sig = {v: _vertex_signature(q, adj, v) for v in range(n)}
    groups: dict[tuple, list[int]] = {}
    for v in range(n):
        groups.setdefault(sig[v], []).append(v)
    keys = sorted(groups)
    best = None
    for parts in itertools.product(*(itertools.permutations(groups[k]) for k in keys)):
        order = [v for part in parts for v in part]
        flat = tuple(adj[a][b] for a in order for b in order)
        if best is None or flat < best:
            best = flat
    header = bytes([n]) + b"|" + b"".join(bytes(s) for s in (k for k in keys for _ in groups[k]))
    return header + b"|" + bytes(best or ())


FILTERS = ("lemma21", "lemma22", "one_vertex_triangle")
_FILTER_ALIASES = {"l21": "lemma21", "l22": "lemma22", "triangle-1-vertex": "one_vertex_triangle",
                   "one-vertex-triangle": "one_vertex_triangle"}


def normalize_filter(name: str) -> str:
    key = name.strip().lower()
    key = _FILTER_ALIASES.get(key, key)
    if key not in FILTERS:
        raise ValueError(f"unknown filter {name!r}; expected one of {', '.join(FILTERS)}")
    return key


def one_vertex_triangle_violations(q: Quiver) -> list[tuple[Triangle, int, int]]:
    """``(triangle, one_vertex, bad_vertex)`` where a 1-regular triangle vertex has a non-2-regular partner."""
    out = []
    for tri in enumerate_triangles(q):
        verts = [q.source(a) for a in tri.arrows]
        if len(set(verts)) < 3:
            continue
        for v in verts:
            if vertex_profile(q, v).regularity != "1-regular":
                continue
            for w in verts:
                if w != v and vertex_profile(q, w).regularity != "2-regular":
                    out.append((tri, v, w))
    return out


def passes_filter(q: Quiver, name: str) -> bool:
    name = normalize_filter(name)
    if name == "lemma21":
        return not find_lemma21_violations(q)
    if name == "lemma22":
        return not find_lemma22_violations(q)
    return not one_vertex_triangle_violations(q)


class ResourceLimitExceeded(RuntimeError):
    pass


def _rows_with_sum(n: int, lo: int, hi: int, cap: list[int]) -> Iterator[tuple[int, ...]]:
    # rows of nonnegative ints, entry-wise bounded by remaining column capacity
    def rec(k, remaining, prefix):
        if k == n:
            if lo <= sum(prefix) <= hi:
                yield tuple(prefix)
            return
        for x in range(min(remaining, cap[k]) + 1):
            yield from rec(k + 1, remaining - x, prefix + [x])

    yield from rec(0, hi, [])


def _is_canonical_matrix(m: tuple[tuple[int, ...], ...]) -> bool:
    n = len(m)
    flat = tuple(x for row in m for x in row)
    for perm in itertools.permutations(range(n)):
        cand = tuple(m[a][b] for a in perm for b in perm)
        if cand < flat:
            return False
    return True


def quiver_from_adjacency(m) -> Quiver:
    edges = [(s, t) for s, row in enumerate(m) for t, k in enumerate(row) for _ in range(k)]
    return Quiver.from_edges(len(m), edges)


@dataclass
class EnumerationStats:
    generated: int = 0
    surviving: dict[str, int] = field(default_factory=dict)


def enumerate_biserial_quivers(n_vertices: int, max_arrows: int | None = None,
                               filters: Iterable[str] = (), max_candidates: int = 10**6,
                               stats: EnumerationStats | None = None) -> Iterator[Quiver]:
    """Connected biserial quivers on ``n_vertices`` up to isomorphism.

    Every vertex has between one and two arrows in and out (no sinks or
    sources), at least one arrow overall.  Each isomorphism class is
    emitted once, as the lexicographically smallest adjacency matrix, in
    increasing order of that matrix.  ``filters`` drop quivers hit by the
    named combinatorial screens.
    """
    if n_vertices < 1:
        raise ValueError("need at least one vertex")
    filters = [normalize_filter(f) for f in filters]
    if max_arrows is None:
        max_arrows = 2 * n_vertices
    stats = stats if stats is not None else EnumerationStats()
    for f in filters:
        stats.surviving.setdefault(f, 0)
    n = n_vertices
    rows: list[tuple[int, ...]] = []

    def rec(k, colsum):
        if k == n:
            if any(c < 1 for c in colsum):
                return
            m = tuple(rows)
            if sum(map(sum, m)) > max_arrows:
                return
            if not _is_canonical_matrix(m):
                return
            q = quiver_from_adjacency(m)
            if not q.is_connected():
                return
            stats.generated += 1
            if stats.generated > max_candidates:
                raise ResourceLimitExceeded(f"more than {max_candidates} candidate quivers")
            for f in filters:
                if not passes_filter(q, f):
                    return
                stats.surviving[f] += 1
            yield q
            return
        cap = [2 - c for c in colsum]
        for row in _rows_with_sum(n, 1, 2, cap):
            rows.append(row)
            yield from rec(k + 1, [c + x for c, x in zip(colsum, row)])
            rows.pop()

    yield from rec(0, [0] * n)


def degree_sequence(q: Quiver) -> Counter:
    return Counter((len(q.in_arrows(v)), len(q.out_arrows(v))) for v in range(q.n_vertices))
