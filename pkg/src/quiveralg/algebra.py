"""Bound quiver algebras ``KQ/I`` given by a quiver and relations.

Paths are tuples of arrow ids read left to right (``(a, b)`` is ``a`` then
``b``).  Paths are ordered by length, then lexicographically by arrow id; the
*smallest* term of a relation is its leading word, so rewriting always moves
towards longer paths, which vanish beyond the nilpotency degree.

Construction runs critical-pair completion in the truncated path algebra
``KQ/J^T`` for ``T = 3, 4, ...`` until no normal word of length ``T - 1``
survives; then ``J^d = 0`` in the quotient for ``d = T - 1`` and the
truncated computation describes ``KQ/I`` exactly (for an admissible ``I``).
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from . import linalg
from .field import Field, FieldSpec
from .quiver import Quiver

Word = tuple[int, ...]

DEFAULT_DEGREE_BOUND = 30


class AlgebraError(Exception):
    pass


class NotAdmissible(AlgebraError):
    pass


class NotFiniteDimensional(AlgebraError):
    def __init__(self, message: str, witness: Word):
        super().__init__(message)
        self.witness = witness


class BoundTooSmall(AlgebraError):
    pass


def word_key(w: Word) -> tuple[int, Word]:
    return (len(w), w)


@dataclass(frozen=True)
class PathWord:
    source: int
    target: int
    arrows: Word = ()

    def __len__(self):
        return len(self.arrows)

    @classmethod
    def of(cls, q: Quiver, arrows: Iterable[int], vertex: int | None = None) -> "PathWord":
        arrows = tuple(arrows)
        if not arrows:
            if vertex is None:
                raise ValueError("a trivial path needs its vertex")
            return cls(vertex, vertex, ())
        check_path(q, arrows)
        return cls(q.source(arrows[0]), q.target(arrows[-1]), arrows)


def check_path(q: Quiver, w: Word) -> None:
    for a, b in zip(w, w[1:]):
        if q.target(a) != q.source(b):
            raise ValueError(f"{q.arrow_label(a)}*{q.arrow_label(b)} does not compose")


@dataclass
class AlgebraElement:
    """A linear combination of parallel paths ``source -> target``.

    ``terms`` maps arrow tuples to nonzero scalars; the empty tuple stands
    for the trivial path at ``source`` (which must then equal ``target``).
    """

    source: int
    target: int
    terms: dict[Word, object] = field(default_factory=dict)

    def is_zero(self) -> bool:
        return not self.terms

    def leading_word(self) -> Word:
        return min(self.terms, key=word_key)

    def min_length(self) -> int:
        return min(len(w) for w in self.terms)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (self.source, self.target, self.terms) == (other.source, other.target, other.terms)

    def sorted_terms(self) -> list[tuple[Word, object]]:
        return sorted(self.terms.items(), key=lambda kv: word_key(kv[0]))


def make_element(q: Quiver, F: Field, terms: Mapping[Word, object],
                 source: int | None = None, target: int | None = None) -> AlgebraElement:
    """Validate and normalize ``terms`` into an :class:`AlgebraElement`."""
    clean: dict[Word, object] = {}
    for w, c in terms.items():
        w = tuple(w)
        c = F(c)
        if c == 0:
            continue
        if w:
            check_path(q, w)
            s, t = q.source(w[0]), q.target(w[-1])
        else:
            if source is None:
                raise ValueError("trivial path without a vertex")
            s = t = source
        if source is None:
            source, target = s, t
        if (s, t) != (source, target):
            raise ValueError("terms are not parallel paths")
        clean[w] = F.add(clean.get(w, 0), c)
        if clean[w] == 0:
            del clean[w]
    if source is None or target is None:
        raise ValueError("zero element needs an explicit source and target")
    return AlgebraElement(source, target, clean)


def _add_into(F: Field, acc: dict, w: Word, c) -> None:
    v = F.add(acc.get(w, 0), c)
    if v == 0:
        acc.pop(w, None)
    else:
        acc[w] = v


class _Rules:
    """Rewrite rules ``leading word -> tail`` with subword lookup."""

    def __init__(self):
        self.tail: dict[Word, dict[Word, object]] = {}
        self.version: dict[Word, int] = {}
        self.lengths: list[int] = []
        self._next = 0

    def add(self, lt: Word, tail: dict[Word, object]) -> int:
        self._next += 1
        self.tail[lt] = tail
        self.version[lt] = self._next
        if len(lt) not in self.lengths:
            self.lengths = sorted(self.lengths + [len(lt)])
        return self._next

    def remove(self, lt: Word) -> None:
        del self.tail[lt]
        del self.version[lt]
        self.lengths = sorted({len(w) for w in self.tail})

    def find(self, w: Word, skip: Word | None = None) -> tuple[int, Word] | None:
        """Leftmost occurrence of a leading word inside ``w``."""
        n = len(w)
        for pos in range(n):
            for L in self.lengths:
                if pos + L > n:
                    break
                sub = w[pos:pos + L]
                if sub in self.tail and sub != skip:
                    return pos, sub
        return None

    def suffix_hit(self, w: Word) -> bool:
        """Whether some leading word is a suffix of ``w``."""
        n = len(w)
        return any(L <= n and w[n - L:] in self.tail for L in self.lengths)


def _reduce(F: Field, rules: _Rules, poly: Mapping[Word, object], T: int) -> dict[Word, object]:
    """Full normal form of ``poly`` modulo the rules and ``J^T``."""
    work: dict[Word, object] = {}
    heap: list[tuple[int, Word]] = []
    for w, c in poly.items():
        if len(w) < T and c != 0:
            work[w] = c
            heap.append(word_key(w))
    heapq.heapify(heap)
    out: dict[Word, object] = {}
    while heap:
        _, w = heapq.heappop(heap)
        c = work.pop(w, None)
        if c is None or c == 0:
            continue
        hit = rules.find(w)
        if hit is None:
            out[w] = c
            continue
        pos, lt = hit
        head, rest = w[:pos], w[pos + len(lt):]
        for t, tc in rules.tail[lt].items():
            nw = head + t + rest
            if len(nw) >= T:
                continue
            if nw not in work:
                heapq.heappush(heap, word_key(nw))
            work[nw] = F.add(work.get(nw, 0), F.mul(c, tc))
    return out


@dataclass
class CompletionResult:
    rules: _Rules
    normal_words: list[Word]
    surviving_top: list[Word]


def _complete(q: Quiver, F: Field, relations: list[dict[Word, object]], T: int,
              max_rules: int) -> CompletionResult:
    rules = _Rules()
    queue: list = []
    counter = 0

    def push_poly(poly):
        nonlocal counter
        poly = {w: c for w, c in poly.items() if len(w) < T and c != 0}
        if poly:
            counter += 1
            heapq.heappush(queue, (word_key(min(poly, key=word_key)), counter, "poly", poly))

    def push_pairs(a: Word):
        nonlocal counter
        for b in list(rules.tail):
            for x, y in ((a, b), (b, a)):
                if not rules.tail[x] and not rules.tail[y]:
                    continue  # two monomials: S-polynomial vanishes
                for k in range(1, min(len(x), len(y))):
                    if x[-k:] == y[:k]:
                        w = x + y[k:]
                        if len(w) < T:
                            counter += 1
                            heapq.heappush(queue, (word_key(w), counter, "pair",
                                                   (x, y, k, rules.version[x], rules.version[y])))

    for rel in relations:
        push_poly(rel)
    while queue:
        _, _, kind, payload = heapq.heappop(queue)
        if kind == "pair":
            x, y, k, vx, vy = payload
            if rules.version.get(x) != vx or rules.version.get(y) != vy:
                continue
            u, v = x[:-k], y[k:]
            s: dict[Word, object] = {}
            # (x - tail_x) v - u (y - tail_y): the overlap word cancels
            for t, c in rules.tail[x].items():
                _add_into(F, s, t + v, F.neg(c))
            for t, c in rules.tail[y].items():
                _add_into(F, s, u + t, c)
            poly = s
        else:
            poly = payload
        r = _reduce(F, rules, poly, T)
        if not r:
            continue
        lt = min(r, key=word_key)
        inv = F.inv(r[lt])
        tail = {w: F.neg(F.mul(c, inv)) for w, c in r.items() if w != lt}
        for old in [o for o in rules.tail if _contains(o, lt)]:
            old_poly = {old: F(1)}
            for w, c in rules.tail[old].items():
                _add_into(F, old_poly, w, F.neg(c))
            rules.remove(old)
            push_poly(old_poly)
        rules.add(lt, tail)
        if len(rules.tail) > max_rules:
            raise BoundTooSmall(f"completion exceeded {max_rules} rewrite rules at truncation {T}")
        push_pairs(lt)

    normal: list[Word] = []
    frontier: list[Word] = []
    for a in range(q.n_arrows):
        w = (a,)
        if not rules.suffix_hit(w):
            frontier.append(w)
    length = 1
    while frontier and length < T:
        normal.extend(frontier)
        if length == T - 1:
            break
        nxt = []
        for w in frontier:
            for a in q.out_arrows(q.target(w[-1])):
                nw = w + (a,)
                if not rules.suffix_hit(nw):
                    nxt.append(nw)
        frontier = nxt
        length += 1
    top = [w for w in normal if len(w) == T - 1]
    return CompletionResult(rules, normal, top)


def _contains(big: Word, small: Word) -> bool:
    n, m = len(big), len(small)
    return any(big[i:i + m] == small for i in range(n - m + 1))


@dataclass(frozen=True)
class Involvement:
    """Outcome of the ``p < I`` test for one path.

    ``literal``: ``p`` has nonzero coefficient in some element of ``I``
    outside ``JI + IJ``.  ``intrinsic``: additionally the coefficient
    functional of ``p`` vanishes on ``JI + IJ``, so every lift of the same
    class in ``I/(JI+IJ)`` carries ``p``.  The two agree on paths of length 2.
    """

    literal: bool
    intrinsic: bool

    @property
    def ambiguous(self) -> bool:
        return self.literal and not self.intrinsic


@dataclass
class _IdealBlock:
    words: list[Word]               # all paths i -> j of length 1..d, sorted
    index: dict[Word, int]
    V: np.ndarray                   # rows: w - NF(w) for non-normal w
    U: np.ndarray                   # row-reduced basis of (JI + IJ) in this block
    V_support: set[Word]            # words with nonzero coefficient somewhere on V
    U_support: set[Word]
    minimal: list[AlgebraElement]


@dataclass
class SymmetrizingForm:
    """A trace functional with nondegenerate Gram matrix, as values on the normal-word basis."""

    values: dict[tuple[int, int, Word], object]
    gram_rank: int

    def support(self) -> list[tuple[int, int, Word]]:
        return sorted((k for k, v in self.values.items() if v != 0), key=lambda k: (k[0], k[1], word_key(k[2])))


class PresentedAlgebra:
    """A certified finite-dimensional quotient ``KQ/I``; immutable once built."""

    def __init__(self, quiver: Quiver, relations: list[AlgebraElement], field_spec: FieldSpec,
                 degree_bound: int, completion: CompletionResult, truncation: int):
        self.quiver = quiver
        self.relations = relations
        self.field_spec = field_spec
        self.F = field_spec.make()
        self.degree_bound = degree_bound
        self.truncation = truncation
        self._rules = completion.rules
        self.nilpotency_degree = 1 + max((len(w) for w in completion.normal_words), default=0)
        d = self.nilpotency_degree
        n = quiver.n_vertices
        blocks: dict[tuple[int, int], list[Word]] = {(a, b): [] for a in range(n) for b in range(n)}
        for v in range(n):
            blocks[(v, v)].append(())
        for w in completion.normal_words:
            blocks[(quiver.source(w[0]), quiver.target(w[-1]))].append(w)
        for key in blocks:
            blocks[key].sort(key=word_key)
        self._basis = blocks
        self._index = {key: {w: k for k, w in enumerate(ws)} for key, ws in blocks.items()}
        self._nf_cache: dict[Word, dict[Word, object]] = {}
        self._ideal_cache: dict[tuple[int, int], _IdealBlock] = {}
        self.leading_words = sorted((lt for lt in self._rules.tail if len(lt) <= d), key=word_key)

    # ---- basic data -------------------------------------------------------
    @property
    def dimension(self) -> int:
        return sum(len(ws) for ws in self._basis.values())

    def basis(self, i: int, j: int) -> list[Word]:
        """Normal words from ``i`` to ``j`` (the empty word is ``e_i``)."""
        return list(self._basis[(i, j)])

    def basis_index(self, i: int, j: int) -> dict[Word, int]:
        return self._index[(i, j)]

    def global_basis(self) -> list[tuple[int, int, Word]]:
        n = self.quiver.n_vertices
        return [(i, j, w) for i in range(n) for j in range(n) for w in self._basis[(i, j)]]

    def is_normal(self, w: Word) -> bool:
        return len(w) < self.nilpotency_degree and self._rules.find(w) is None

    def cartan_matrix(self) -> list[list[int]]:
        """``C[a][b] = dim e_a L e_b``; row ``a`` is the dimension vector of ``P_a = e_a L``."""
        n = self.quiver.n_vertices
        return [[len(self._basis[(a, b)]) for b in range(n)] for a in range(n)]

    def dimension_vector_of_projective(self, i: int) -> tuple[int, ...]:
        return tuple(self.cartan_matrix()[i])

    def describe_word(self, w: Word, vertex: int | None = None) -> str:
        if not w:
            return f"e_{self.quiver.vertex_label(vertex)}" if vertex is not None else "e"
        return "*".join(self.quiver.arrow_label(a) for a in w)

    def describe(self, x: AlgebraElement) -> str:
        if x.is_zero():
            return "0"
        parts = []
        for w, c in x.sorted_terms():
            c = self.F.to_json(c)
            name = self.describe_word(w, x.source)
            parts.append(name if c == 1 else (f"-{name}" if c == -1 else f"{c}*{name}"))
        return " + ".join(parts).replace("+ -", "- ")

    # ---- arithmetic -------------------------------------------------------
    def _nf_word(self, w: Word) -> dict[Word, object]:
        if len(w) >= self.nilpotency_degree:
            return {}
        hit = self._nf_cache.get(w)
        if hit is not None:
            return hit
        found = self._rules.find(w)
        if found is None:
            res = {w: self.F(1)}
        else:
            pos, lt = found
            res: dict[Word, object] = {}
            for t, c in self._rules.tail[lt].items():
                for nw, nc in self._nf_word(w[:pos] + t + w[pos + len(lt):]).items():
                    _add_into(self.F, res, nw, self.F.mul(c, nc))
        self._nf_cache[w] = res
        return res

    def normal_form(self, x: AlgebraElement) -> AlgebraElement:
        out: dict[Word, object] = {}
        for w, c in x.terms.items():
            if not w:
                _add_into(self.F, out, w, c)
                continue
            for nw, nc in self._nf_word(w).items():
                _add_into(self.F, out, nw, self.F.mul(c, nc))
        return AlgebraElement(x.source, x.target, out)

    def element(self, terms: Mapping[Word, object], source: int | None = None,
                target: int | None = None) -> AlgebraElement:
        """Build and normalize an element of the algebra from path terms."""
        return self.normal_form(make_element(self.quiver, self.F, terms, source, target))

    def idempotent(self, i: int) -> AlgebraElement:
        return AlgebraElement(i, i, {(): self.F(1)})

    def arrow(self, a: int) -> AlgebraElement:
        s, t = self.quiver.arrows[a]
        return self.normal_form(AlgebraElement(s, t, {(a,): self.F(1)}))

    def path(self, w: Word) -> AlgebraElement:
        return self.element({tuple(w): 1})

    def zero(self, i: int, j: int) -> AlgebraElement:
        return AlgebraElement(i, j, {})

    def add(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        if (x.source, x.target) != (y.source, y.target):
            raise ValueError("adding non-parallel elements")
        out = dict(x.terms)
        for w, c in y.terms.items():
            _add_into(self.F, out, w, c)
        return AlgebraElement(x.source, x.target, out)

    def scale(self, c, x: AlgebraElement) -> AlgebraElement:
        c = self.F(c)
        if c == 0:
            return self.zero(x.source, x.target)
        return AlgebraElement(x.source, x.target, {w: self.F.mul(c, v) for w, v in x.terms.items()})

    def sub(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        return self.add(x, self.scale(-1, y))

    def multiply(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        """Product ``x y`` (``x`` first, then ``y``), in normal form."""
        if x.target != y.source:
            return self.zero(x.source, y.target)
        out: dict[Word, object] = {}
        for wx, cx in x.terms.items():
            for wy, cy in y.terms.items():
                c = self.F.mul(cx, cy)
                w = wx + wy
                if not w:
                    _add_into(self.F, out, w, c)
                    continue
                for nw, nc in self._nf_word(w).items():
                    _add_into(self.F, out, nw, self.F.mul(c, nc))
        return AlgebraElement(x.source, y.target, out)

    def coords(self, x: AlgebraElement) -> np.ndarray:
        """Coordinate vector of a normal-form element in the basis of its block."""
        idx = self._index[(x.source, x.target)]
        v = self.F.zeros(len(idx))
        for w, c in x.terms.items():
            v[idx[w]] = c
        return v

    def from_coords(self, i: int, j: int, v) -> AlgebraElement:
        ws = self._basis[(i, j)]
        return AlgebraElement(i, j, {ws[k]: self.F(c) for k, c in enumerate(v) if c != 0})

    def right_multiplication_matrix(self, i: int, a: int) -> np.ndarray:
        """Matrix of ``u -> u*a`` from ``e_i L e_{s(a)}`` to ``e_i L e_{t(a)}`` (columns = inputs)."""
        s, t = self.quiver.arrows[a]
        src, dst = self._basis[(i, s)], self._index[(i, t)]
        M = self.F.zeros((len(dst), len(src)))
        for k, w in enumerate(src):
            for nw, c in self._nf_word(w + (a,)).items():
                M[dst[nw], k] = c
        return M

    def left_multiplication_matrix(self, m: AlgebraElement, v: int) -> np.ndarray:
        """Matrix of ``u -> m*u`` from ``e_b L e_v`` to ``e_a L e_v`` where ``m`` lies in ``e_a L e_b``."""
        a, b = m.source, m.target
        src, dst = self._basis[(b, v)], self._index[(a, v)]
        M = self.F.zeros((len(dst), len(src)))
        for k, w in enumerate(src):
            prod = self.multiply(m, AlgebraElement(b, v, {w: self.F(1)}))
            for nw, c in prod.terms.items():
                M[dst[nw], k] = c
        return M

    # ---- symmetric structure ----------------------------------------------
    def socle_of_projective(self, i: int) -> list[AlgebraElement]:
        """Basis of ``soc(e_i L)``: elements killed by every arrow on the right."""
        n = self.quiver.n_vertices
        out = []
        for v in range(n):
            maps = [self.right_multiplication_matrix(i, a) for a in self.quiver.out_arrows(v)]
            dim = len(self._basis[(i, v)])
            if dim == 0:
                continue
            K = linalg.nullspace(self.F, np.vstack(maps)) if maps else self.F.eye(dim)
            for k in range(K.shape[1]):
                out.append(self.from_coords(i, v, K[:, k]))
        return out

    def trace_functionals(self) -> np.ndarray:
        """Rows spanning the functionals ``l`` on L with ``l(ab) = l(ba)`` for all basis pairs."""
        gb = self.global_basis()
        gidx = {key: k for k, key in enumerate(gb)}
        rows = []
        for (i, j, w) in gb:
            x = AlgebraElement(i, j, {w: self.F(1)})
            for (k, l, u) in gb:
                if j != k and l != i:
                    continue
                y = AlgebraElement(k, l, {u: self.F(1)})
                row = self.F.zeros(len(gb))
                for prod, sign in ((self.multiply(x, y), 1), (self.multiply(y, x), -1)):
                    for nw, c in prod.terms.items():
                        g = gidx[(prod.source, prod.target, nw)]
                        row[g] = self.F.add(row[g], self.F.mul(sign, c))
                if np.any(row != 0):
                    rows.append(row)
        if not rows:
            return self.F.eye(len(gb))
        C = np.vstack(rows)
        return linalg.nullspace(self.F, C).T

    def gram_matrix(self, values: np.ndarray) -> np.ndarray:
        gb = self.global_basis()
        gidx = {key: k for k, key in enumerate(gb)}
        G = self.F.zeros((len(gb), len(gb)))
        for r, (i, j, w) in enumerate(gb):
            x = AlgebraElement(i, j, {w: self.F(1)})
            for c, (k, l, u) in enumerate(gb):
                if j != k:
                    continue
                prod = self.multiply(x, AlgebraElement(k, l, {u: self.F(1)}))
                acc = 0
                for nw, cf in prod.terms.items():
                    acc = self.F.add(acc, self.F.mul(cf, values[gidx[(prod.source, prod.target, nw)]]))
                G[r, c] = acc
        return G

    def symmetrizing_form(self) -> SymmetrizingForm | None:
        """A nondegenerate trace functional, or ``None`` if none exists.

        Existence is decided exactly: a symmetric algebra has a simple socle
        ``K s_i`` in every ``e_i L``, and a trace functional is nondegenerate
        iff it is nonzero on every ``s_i`` (its left radical is a right
        ideal, so would meet the socle).  The functional returned is checked
        by an exact rank computation of its Gram matrix.
        """
        n = self.quiver.n_vertices
        socles = []
        for i in range(n):
            soc = self.socle_of_projective(i)
            if len(soc) != 1:
                return None
            socles.append(soc[0])
        S = self.trace_functionals()
        if S.shape[0] == 0:
            return None
        gb = self.global_basis()
        gidx = {key: k for k, key in enumerate(gb)}

        def socle_vector(s: AlgebraElement) -> np.ndarray:
            v = self.F.zeros(len(gb))
            for w, c in s.terms.items():
                v[gidx[(s.source, s.target, w)]] = c
            return v

        evals = np.vstack([self.F.matmul(S, socle_vector(s)[:, None])[:, 0] for s in socles])
        if any(not np.any(row != 0) for row in evals):
            return None
        # prefer functionals supported on socle words, then fall back to all of S
        soc_words = {(s.source, s.target, w) for s in socles for w in s.terms}
        off = [gidx[k] for k in gb if k not in soc_words]
        candidates = []
        if off:
            Z = linalg.nullspace(self.F, S[:, off].T) if S.shape[0] else self.F.zeros((0, 0))
            if Z.shape[1]:
                candidates.append(self.F.matmul(Z.T, S))
        else:
            candidates.append(S)
        candidates.append(S)
        found_any = False
        for basis in candidates:
            lam = self._avoid_hyperplanes(basis, socles, socle_vector)
            if lam is None:
                continue
            found_any = True
            G = self.gram_matrix(lam)
            r = linalg.rank(self.F, G)
            if r == len(gb):
                values = {key: lam[k] for k, key in enumerate(gb)}
                return SymmetrizingForm(values, r)
        if not found_any:
            return None
        raise AssertionError("socle criterion satisfied but no nondegenerate form found")

    def _avoid_hyperplanes(self, basis: np.ndarray, socles, socle_vector) -> np.ndarray | None:
        evals = np.vstack([self.F.matmul(basis, socle_vector(s)[:, None])[:, 0] for s in socles])
        if any(not np.any(row != 0) for row in evals):
            return None
        k = basis.shape[0]
        # l(t) = sum t^m b_m; each socle condition is a nonzero polynomial of degree < k in t
        for t in range(0, len(socles) * k + 2):
            coeffs = self.F.array([pow(t, m) for m in range(k)])
            ev = self.F.matmul(coeffs[None, :], evals.T)[0]
            if np.all(ev != 0):
                return self.F.matmul(coeffs[None, :], basis)[0]
        p = self.field_spec.p
        if p is not None and p**k <= 10**5:
            # small field: the curve above may miss, search the whole space
            for coeffs in itertools.product(range(p), repeat=k):
                c = self.F.array(list(coeffs))
                if np.all(self.F.matmul(c[None, :], evals.T)[0] != 0):
                    return self.F.matmul(c[None, :], basis)[0]
            return None
        raise BoundTooSmall("could not exhibit a functional avoiding the socle hyperplanes")

    # ---- minimal relations and involvement ----------------------------------
    def _paths(self, i: int, j: int, max_len: int) -> list[Word]:
        q = self.quiver
        out = []
        frontier: list[Word] = [(a,) for a in q.out_arrows(i)]
        while frontier:
            nxt = []
            for w in frontier:
                if q.target(w[-1]) == j:
                    out.append(w)
                if len(w) < max_len:
                    nxt.extend(w + (a,) for a in q.out_arrows(q.target(w[-1])))
            frontier = nxt
        return sorted(out, key=word_key)

    def _ideal_vector(self, w: Word, index: dict[Word, int], length: int) -> np.ndarray:
        """Coordinates of ``w - NF(w)`` truncated to words of the given max length."""
        v = self.F.zeros(length)
        if w in index:
            v[index[w]] = self.F(1)
        for nw, c in self._nf_word(w).items():
            v[index[nw]] = self.F.sub(v[index[nw]], c)
        return v

    def _ideal_block(self, i: int, j: int) -> _IdealBlock:
        cached = self._ideal_cache.get((i, j))
        if cached is not None:
            return cached
        q, F, d = self.quiver, self.F, self.nilpotency_degree
        words = self._paths(i, j, d)
        index = {w: k for k, w in enumerate(words)}
        nonnormal = [w for w in words if not self.is_normal(w)]
        V = np.vstack([self._ideal_vector(w, index, len(words)) for w in nonnormal]) if nonnormal \
            else F.zeros((0, len(words)))
        gens = []
        for a in q.out_arrows(i):
            for w in self._paths(q.target(a), j, d - 1):
                if not self.is_normal(w):
                    gens.append(self._multiple_vector(a, w, index, len(words), left=True))
        for a in q.in_arrows(j):
            for w in self._paths(i, q.source(a), d - 1):
                if not self.is_normal(w):
                    gens.append(self._multiple_vector(a, w, index, len(words), left=False))
        U = linalg.row_space_basis(F, F.reduce(np.vstack(gens))) if gens else F.zeros((0, len(words)))
        V_support = {words[c] for c in range(len(words)) if V.shape[0] and np.any(V[:, c] != 0)}
        U_support = {words[c] for c in range(len(words)) if U.shape[0] and np.any(U[:, c] != 0)}
        minimal = self._minimal_lifts(i, j, words, index, U)
        block = _IdealBlock(words, index, V, U, V_support, U_support, minimal)
        self._ideal_cache[(i, j)] = block
        return block

    def _multiple_vector(self, a: int, w: Word, index, length, left: bool) -> np.ndarray:
        """Coordinates in KQ of ``a*(w - NF(w))`` (or ``(w - NF(w))*a``), dropping paths longer than d."""
        v = self.F.zeros(length)
        d = self.nilpotency_degree
        shift = (lambda u: (a,) + u) if left else (lambda u: u + (a,))
        if len(w) + 1 <= d:
            v[index[shift(w)]] = self.F(1)
        for nw, c in self._nf_word(w).items():
            if len(nw) + 1 <= d:
                k = index[shift(nw)]
                v[k] = self.F.sub(v[k], c)
        return v

    def _gb_element(self, lt: Word) -> AlgebraElement:
        terms = {lt: self.F(1)}
        for t, c in self._rules.tail[lt].items():
            for nw, nc in self._nf_word(t).items():
                _add_into(self.F, terms, nw, self.F.neg(self.F.mul(c, nc)))
        return AlgebraElement(self.quiver.source(lt[0]), self.quiver.target(lt[-1]), terms)

    def _minimal_lifts(self, i, j, words, index, U) -> list[AlgebraElement]:
        chosen: list[AlgebraElement] = []
        span = U
        for lt in self.leading_words:
            if self.quiver.source(lt[0]) != i or self.quiver.target(lt[-1]) != j:
                continue
            g = self._gb_element(lt)
            v = self.F.zeros(len(words))
            for w, c in g.terms.items():
                v[index[w]] = c
            if not linalg.in_span(self.F, span, v):
                chosen.append(g)
                span = np.vstack([span, v[None, :]]) if span.shape[0] else v[None, :]
        return chosen

    def minimal_relations(self) -> dict[tuple[int, int], list[AlgebraElement]]:
        """Lifts of a basis of ``e_i (I/(JI+IJ)) e_j`` for every pair with a nonzero block."""
        n = self.quiver.n_vertices
        out = {}
        for i in range(n):
            for j in range(n):
                rels = self._ideal_block(i, j).minimal
                if rels:
                    out[(i, j)] = rels
        return out

    def minimal_relation_count(self, i: int, j: int) -> int:
        b = self._ideal_block(i, j)
        return b.V.shape[0] - b.U.shape[0]

    def involvement(self, p: Word) -> Involvement:
        """The ``p < I`` test relative to this presentation."""
        p = tuple(p)
        if not p:
            raise ValueError("involvement of a trivial path")
        check_path(self.quiver, p)
        i, j = self.quiver.source(p[0]), self.quiver.target(p[-1])
        block = self._ideal_block(i, j)
        has_minimal = block.V.shape[0] > block.U.shape[0]
        if len(p) > self.nilpotency_degree:
            return Involvement(has_minimal, False)
        literal = has_minimal and p in block.V_support
        return Involvement(literal, literal and p not in block.U_support)

    def occurs_in_minimal_relation(self, p: Word) -> bool:
        return self.involvement(p).literal


def build(quiver: Quiver, relations: Iterable[AlgebraElement | Mapping[Word, object]],
          field_spec: FieldSpec | None = None, degree_bound: int = DEFAULT_DEGREE_BOUND,
          max_rules: int = 200_000) -> PresentedAlgebra:
    """Certify ``KQ/I`` finite dimensional and set up its normal-word basis.

    Raises :class:`NotAdmissible` for a relation term of length below 2,
    :class:`NotFiniteDimensional` if normal words of length ``degree_bound - 1``
    survive, and :class:`BoundTooSmall` if completion exceeds ``max_rules``.
    """
    field_spec = field_spec or FieldSpec()
    F = field_spec.make()
    rels: list[AlgebraElement] = []
    for r in relations:
        if not isinstance(r, AlgebraElement):
            r = make_element(quiver, F, r)
        else:
            r = make_element(quiver, F, r.terms, r.source, r.target)
        for w in r.terms:
            if len(w) < 2:
                raise NotAdmissible(f"relation term of length {len(w)} (relations must lie in J^2)")
        if not r.is_zero():
            rels.append(r)
    if quiver.n_arrows == 0:
        raise NotAdmissible("quiver has no arrows")
    polys = [dict(r.terms) for r in rels]
    result = None
    T = 2
    while T < degree_bound:
        T += 1
        result = _complete(quiver, F, polys, T, max_rules)
        if not result.surviving_top:
            return PresentedAlgebra(quiver, rels, field_spec, degree_bound, result, T)
    witness = result.surviving_top[0] if result else ()
    raise NotFiniteDimensional(
        f"normal words of length {degree_bound - 1} survive (e.g. "
        f"{'*'.join(quiver.arrow_label(a) for a in witness)})", witness)
