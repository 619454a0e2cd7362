"""Finite-dimensional right modules over a :class:`PresentedAlgebra`.

A module stores one vector space ``M e_v`` per vertex and, for each arrow
``a: u -> v``, the matrix of ``m -> m*a`` acting on column vectors
(shape ``dim_v x dim_u``).  A path ``a1 a2 ... ak`` acts by
``A_ak ... A_a2 A_a1``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .algebra import AlgebraElement, PresentedAlgebra, Word


@dataclass
class RightModule:
    algebra: PresentedAlgebra
    dims: tuple[int, ...]
    actions: dict[int, np.ndarray]
    labels: dict[int, list[Word]] | None = None  # basis words, for projectives

    def __post_init__(self):
        q = self.algebra.quiver
        self.dims = tuple(int(d) for d in self.dims)
        if len(self.dims) != q.n_vertices:
            raise ValueError("one dimension per vertex required")
        for a, (s, t) in enumerate(q.arrows):
            m = self.actions.get(a)
            if m is None:
                self.actions[a] = self.algebra.F.zeros((self.dims[t], self.dims[s]))
            elif m.shape != (self.dims[t], self.dims[s]):
                raise ValueError(f"arrow {q.arrow_label(a)} acts with shape {m.shape}")

    @property
    def F(self):
        return self.algebra.F

    @property
    def dimension(self) -> int:
        return sum(self.dims)

    def dimension_vector(self) -> tuple[int, ...]:
        return self.dims

    def path_action(self, w: Word, v: int | None = None) -> np.ndarray:
        if not w:
            return self.F.eye(self.dims[v])
        M = self.actions[w[0]]
        for a in w[1:]:
            M = self.F.matmul(self.actions[a], M)
        return M

    def element_action(self, x: AlgebraElement) -> np.ndarray:
        M = self.F.zeros((self.dims[x.target], self.dims[x.source]))
        for w, c in x.terms.items():
            M = self.F.reduce(M + c * self.path_action(w, x.source))
        return M

    def is_well_defined(self) -> bool:
        """Every defining relation acts as zero."""
        for r in self.algebra.relations:
            if np.any(self.element_action(r) != 0):
                return False
        # long paths must vanish too: the presentation is read modulo J^d
        d = self.algebra.nilpotency_degree
        for w in _all_paths(self.algebra, d):
            if np.any(self.path_action(w) != 0):
                return False
        return True


def _all_paths(A: PresentedAlgebra, length: int) -> list[Word]:
    q = A.quiver
    paths: list[Word] = [(a,) for a in range(q.n_arrows)]
    for _ in range(length - 1):
        paths = [w + (a,) for w in paths for a in q.out_arrows(q.target(w[-1]))]
    return paths


@dataclass
class ModuleMap:
    """Per-vertex matrices ``M e_v -> N e_v``."""

    source: RightModule
    target: RightModule
    blocks: dict[int, np.ndarray]

    def rank(self) -> int:
        F = self.source.F
        return sum(linalg.rank(F, b) for b in self.blocks.values() if b.size)


def simple(A: PresentedAlgebra, i: int) -> RightModule:
    dims = [0] * A.quiver.n_vertices
    dims[i] = 1
    return RightModule(A, tuple(dims), {})


def projective(A: PresentedAlgebra, i: int) -> RightModule:
    """``P_i = e_i L`` on its normal-word basis; arrows act by right multiplication."""
    q = A.quiver
    labels = {v: A.basis(i, v) for v in range(q.n_vertices)}
    actions = {a: A.right_multiplication_matrix(i, a) for a in range(q.n_arrows)}
    return RightModule(A, tuple(len(labels[v]) for v in range(q.n_vertices)), actions, labels)


def zero_module(A: PresentedAlgebra) -> RightModule:
    return RightModule(A, (0,) * A.quiver.n_vertices, {})


def direct_sum(A: PresentedAlgebra, parts: list[RightModule]) -> RightModule:
    q, F = A.quiver, A.F
    if not parts:
        return zero_module(A)
    dims = tuple(sum(p.dims[v] for p in parts) for v in range(q.n_vertices))
    actions = {}
    for a, (s, t) in enumerate(q.arrows):
        M = F.zeros((dims[t], dims[s]))
        r = c = 0
        for p in parts:
            M[r:r + p.dims[t], c:c + p.dims[s]] = p.actions[a]
            r += p.dims[t]
            c += p.dims[s]
        actions[a] = M
    return RightModule(A, dims, actions)


def submodule(M: RightModule, basis: dict[int, np.ndarray]) -> RightModule:
    """The submodule spanned per vertex by the columns of ``basis[v]`` (assumed closed)."""
    A, F = M.algebra, M.F
    q = A.quiver
    dims = tuple(basis[v].shape[1] for v in range(q.n_vertices))
    actions = {}
    for a, (s, t) in enumerate(q.arrows):
        if dims[s] == 0 or dims[t] == 0:
            actions[a] = F.zeros((dims[t], dims[s]))
            continue
        image = F.matmul(M.actions[a], basis[s])
        X = linalg.solve(F, basis[t], image)
        if X is None:
            raise ValueError("subspace is not closed under the action")
        actions[a] = X
    return RightModule(A, dims, actions)


def radical_basis(M: RightModule) -> dict[int, np.ndarray]:
    """Per-vertex column basis of ``M J``, the span of all arrow images."""
    A, F = M.algebra, M.F
    q = A.quiver
    out = {}
    for v in range(q.n_vertices):
        imgs = [M.actions[a] for a in q.in_arrows(v) if M.actions[a].size]
        if imgs and M.dims[v]:
            R = linalg.row_space_basis(F, np.hstack(imgs).T)
            out[v] = R.T.copy()
        else:
            out[v] = F.zeros((M.dims[v], 0))
    return out


def radical(M: RightModule) -> tuple[RightModule, dict[int, np.ndarray]]:
    """``rad M`` together with its inclusion (per-vertex basis columns)."""
    basis = radical_basis(M)
    return submodule(M, basis), basis


def top_representatives(M: RightModule) -> dict[int, list[np.ndarray]]:
    """Vectors completing a basis of ``rad M`` to one of ``M``, greedily from standard basis vectors."""
    F = M.F
    rad = radical_basis(M)
    reps: dict[int, list[np.ndarray]] = {}
    for v, d in enumerate(M.dims):
        span = rad[v].T.copy()
        chosen = []
        r = linalg.rank(F, span) if span.size else 0
        for k in range(d):
            if r == d:
                break
            e = F.zeros(d)
            e[k] = F(1)
            cand = np.vstack([span, e[None, :]]) if span.shape[0] else e[None, :]
            nr = linalg.rank(F, cand)
            if nr > r:
                span, r = cand, nr
                chosen.append(e)
        reps[v] = chosen
    return reps


def top(M: RightModule) -> dict[int, int]:
    """Multiplicity of each simple ``S_v`` in ``M / rad M``."""
    return {v: len(r) for v, r in top_representatives(M).items() if r}


def socle_basis(M: RightModule) -> dict[int, np.ndarray]:
    F = M.F
    q = M.algebra.quiver
    out = {}
    for v, d in enumerate(M.dims):
        maps = [M.actions[a] for a in q.out_arrows(v) if M.actions[a].shape[0]]
        if d == 0:
            out[v] = F.zeros((0, 0))
        elif maps:
            out[v] = linalg.nullspace(F, np.vstack(maps))
        else:
            out[v] = F.eye(d)
    return out


def socle(M: RightModule) -> RightModule:
    return submodule(M, socle_basis(M))


@dataclass
class ProjectiveCover:
    projective: RightModule
    generators: list[tuple[int, np.ndarray]]   # (vertex, representative vector in M)
    summands: list[int]                        # vertex of each P summand, in order
    surjection: ModuleMap


def projective_cover(M: RightModule) -> ProjectiveCover:
    """``P = (+) P_v^{m_v} -> M`` sending ``e_v`` of each summand to a top representative."""
    A, F = M.algebra, M.F
    q = A.quiver
    reps = top_representatives(M)
    gens = [(v, r) for v in range(q.n_vertices) for r in reps[v]]
    parts = [projective(A, v) for v, _ in gens]
    P = direct_sum(A, parts)
    blocks = {}
    for u in range(q.n_vertices):
        cols = []
        for (v, r), part in zip(gens, parts):
            for w in part.labels[u]:
                cols.append(F.matmul(M.path_action(w, v), r[:, None])[:, 0])
        blocks[u] = np.column_stack(cols) if cols else F.zeros((M.dims[u], 0))
        if not cols:
            blocks[u] = F.zeros((M.dims[u], 0))
    return ProjectiveCover(P, gens, [v for v, _ in gens], ModuleMap(P, M, blocks))


def kernel(f: ModuleMap) -> tuple[RightModule, dict[int, np.ndarray]]:
    F = f.source.F
    basis = {}
    for v, d in enumerate(f.source.dims):
        B = f.blocks[v]
        if d == 0:
            basis[v] = F.zeros((0, 0))
        elif B.shape[0] == 0:
            basis[v] = F.eye(d)
        else:
            basis[v] = linalg.nullspace(F, B)
    return submodule(f.source, basis), basis


def syzygy(M: RightModule) -> RightModule:
    """``Omega(M)``: the kernel of the projective cover of ``M``."""
    if M.dimension == 0:
        return zero_module(M.algebra)
    return kernel(projective_cover(M).surjection)[0]


def hom_space(M: RightModule, N: RightModule) -> list[dict[int, np.ndarray]]:
    """Basis of ``Hom(M, N)`` as per-vertex matrices ``f_v : M e_v -> N e_v``."""
    A, F = M.algebra, M.F
    q = A.quiver
    offsets, total = {}, 0
    for v in range(q.n_vertices):
        offsets[v] = total
        total += N.dims[v] * M.dims[v]
    if total == 0:
        return []
    rows = []
    for a, (s, t) in enumerate(q.arrows):
        nm_t, n_t, m_s, n_s = N.dims[t] * M.dims[s], N.dims[t], M.dims[s], N.dims[s]
        if nm_t == 0:
            continue
        # f_t A_a - B_a f_s = 0, unknowns flattened row-major
        block = F.zeros((nm_t, total))
        if M.dims[t]:
            block[:, offsets[t]:offsets[t] + N.dims[t] * M.dims[t]] = np.kron(F.eye(n_t), M.actions[a].T)
        if n_s and m_s:
            block[:, offsets[s]:offsets[s] + n_s * m_s] = F.reduce(
                block[:, offsets[s]:offsets[s] + n_s * m_s] - np.kron(N.actions[a], F.eye(m_s)))
        rows.append(F.reduce(block))
    K = linalg.nullspace(F, np.vstack(rows)) if rows else F.eye(total)
    out = []
    for k in range(K.shape[1]):
        f = {}
        for v in range(q.n_vertices):
            f[v] = K[offsets[v]:offsets[v] + N.dims[v] * M.dims[v], k].reshape(N.dims[v], M.dims[v])
        out.append(f)
    return out


def _invertible(F, f: dict[int, np.ndarray]) -> bool:
    return all(b.shape[0] == 0 or linalg.is_invertible(F, b) for b in f.values())


def modules_isomorphic(M: RightModule, N: RightModule, trials: int = 24, grid_budget: int = 20000) -> bool:
    """Whether some invertible module map ``M -> N`` exists.

    Searches ``Hom(M, N)`` for an invertible element: basis elements first,
    then a deterministic grid when small enough to be exhaustive beyond the
    degree of the determinant, otherwise seeded random combinations.
    """
    if M.dims != N.dims:
        return False
    if M.dimension == 0:
        return True
    F = M.F
    H = hom_space(M, N)
    if not H:
        return False
    if len(hom_space(N, M)) != len(H):
        return False
    for f in H:
        if _invertible(F, f):
            return True

    # det of the block-diagonal map has degree <= dim M in each coefficient
    size = M.dimension + 1
    p = F.spec.p
    if size ** len(H) <= grid_budget and (p is None or size <= p):
        for coeffs in itertools.product(range(size), repeat=len(H)):
            if _invertible(F, _combine(F, H, coeffs)):
                return True
        return False
    rng = random.Random(0x5EED)
    hi = F.spec.p - 1 if F.spec.p else 10**6
    for _ in range(trials):
        coeffs = [rng.randint(0, hi) for _ in H]
        if _invertible(F, _combine(F, H, coeffs)):
            return True
    return False


def _combine(F, H, coeffs) -> dict[int, np.ndarray]:
    out = {}
    for v in H[0]:
        acc = F.zeros(H[0][v].shape)
        for c, f in zip(coeffs, H):
            if c:
                acc = F.reduce(acc + F(c) * f[v])
        out[v] = acc
    return out


def is_simple_at(M: RightModule, i: int) -> bool:
    return M.dims[i] == 1 and M.dimension == 1


@dataclass
class PeriodResult:
    period: int | None
    dimensions: list[int] = field(default_factory=list)
    reason: str = ""


def omega_orbit(A: PresentedAlgebra, i: int, max_k: int, dim_cap: int | None = None) -> PeriodResult:
    dim_cap = dim_cap if dim_cap is not None else 10 * A.dimension
    S = simple(A, i)
    M = S
    dims = []
    for k in range(1, max_k + 1):
        M = syzygy(M)
        dims.append(M.dimension)
        if M.dimension == 0:
            return PeriodResult(None, dims, "syzygy vanished (projective module reached)")
        if M.dimension > dim_cap:
            return PeriodResult(None, dims, f"syzygy dimension {M.dimension} exceeds cap {dim_cap}")
        if modules_isomorphic(M, S):
            return PeriodResult(k, dims, "")
    return PeriodResult(None, dims, f"no period up to {max_k}")


def omega_period(A: PresentedAlgebra, i: int, max_k: int = 8, dim_cap: int | None = None) -> int | None:
    """Least ``d <= max_k`` with ``Omega^d(S_i) = S_i``, or ``None``."""
    if max_k < 1:
        raise ValueError("max_k must be positive")
    return omega_orbit(A, i, max_k, dim_cap).period
