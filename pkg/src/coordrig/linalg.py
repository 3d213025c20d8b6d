"""Rigidity linear algebra over two backends.

The float backend (numpy) builds the m x dn rigidity matrix and the
m x (dn + k) coordinated matrix, computes kernels (infinitesimal motions),
left kernels (equilibrium stresses), load resolutions and the projection
Gram matrix used by the coordination criterion.

The modular backend does exact arithmetic over GF(q), q = 2^61 - 1, with
coordinates sampled uniformly from [1, q-1]; it answers generic-rank
questions without any tolerance.  Random sampling always takes an explicit
seed and parallel trials must derive their seeds as root_seed + trial_index.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .cgraph import ColouredGraph

MODULUS = (1 << 61) - 1  # Mersenne prime

Edge = tuple[int, int]


# ---------------------------------------------------------------------------
# configurations and placements


@dataclass(frozen=True)
class Configuration:
    """An ordered tuple of n points in d-space."""

    points: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        if not self.points:
            raise ValueError("configuration needs at least one point")
        d = len(self.points[0])
        if d < 1 or any(len(p) != d for p in self.points):
            raise ValueError("points must share a dimension >= 1")
        if any(not math.isfinite(x) for p in self.points for x in p):
            raise ValueError("coordinates must be finite")

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def d(self) -> int:
        return len(self.points[0])


class Placement(NamedTuple):
    """A configuration together with the coordination offsets r."""

    points: object  # (n, d) array-like
    r: object  # length-k array-like


def as_points(p, n: int) -> np.ndarray:
    """Coerce to an (n, d) float array, validating the vertex count."""
    if isinstance(p, Configuration):
        p = p.points
    arr = np.asarray(p, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != n:
        raise ValueError(f"expected {n} points, got array of shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("coordinates must be finite")
    return arr


def random_configuration(n: int, d: int, seed: int) -> np.ndarray:
    """Deterministic float configuration with coordinates in (0, 1)."""
    rng = random.Random(seed)
    return np.array([[rng.random() for _ in range(d)] for _ in range(n)])


def sample_modular_configuration(n: int, d: int, seed: int, q: int = MODULUS):
    """Exact-backend configuration: coordinates uniform in [1, q-1]."""
    rng = random.Random(seed)
    return [[rng.randrange(1, q) for _ in range(d)] for _ in range(n)]


# ---------------------------------------------------------------------------
# matrix construction


@dataclass(frozen=True)
class CoordinatedMatrix:
    """Rows indexed by edges in canonical order; dn kinematic columns
    followed by k class-indicator columns.

    ``backend`` is "float" (numpy array in ``array``) or "modular" (list of
    int rows in ``rows``, entries mod ``prime``).  Rows whose edge has
    coincident endpoints are recorded in ``zero_length_edges``; construction
    succeeds but motion analysis refuses such frameworks.
    """

    m: int
    n: int
    d: int
    k: int
    edges: tuple[Edge, ...]
    backend: str
    array: np.ndarray | None = None
    rows: tuple[tuple[int, ...], ...] | None = None
    prime: int | None = None
    zero_length_edges: tuple[Edge, ...] = ()

    @property
    def ncols(self) -> int:
        return self.d * self.n + self.k


def indicator_matrix(g: ColouredGraph) -> np.ndarray:
    """The m x k matrix whose columns are the class characteristic vectors."""
    ind = np.zeros((g.m, g.k))
    for row, c in enumerate(g.colours):
        if c >= 1:
            ind[row, c - 1] = 1.0
    return ind


def rigidity_matrix(g, p, d: int | None = None) -> CoordinatedMatrix:
    """Float m x dn rigidity matrix of the underlying bar framework.

    Row for edge {i, j} carries p(i) - p(j) on i's column block and
    p(j) - p(i) on j's block; the kernel is the space of infinitesimal
    motions of (G, p).
    """
    edges, n = _edges_n(g)
    pts = as_points(p, n)
    if d is not None and pts.shape[1] != d:
        raise ValueError(f"expected dimension {d}, got {pts.shape[1]}")
    d = pts.shape[1]
    m = len(edges)
    R = np.zeros((m, d * n))
    zero = []
    for row, (i, j) in enumerate(edges):
        diff = pts[i] - pts[j]
        if not np.any(diff):
            zero.append((i, j))
        R[row, d * i : d * i + d] = diff
        R[row, d * j : d * j + d] = -diff
    return CoordinatedMatrix(
        m=m, n=n, d=d, k=0, edges=tuple(edges), backend="float",
        array=R, zero_length_edges=tuple(zero),
    )


def coordinated_matrix(g: ColouredGraph, p, d: int | None = None) -> CoordinatedMatrix:
    """Float m x (dn + k) matrix: rigidity matrix plus indicator columns."""
    base = rigidity_matrix(g, p, d)
    if g.k == 0:
        return base
    full = np.hstack([base.array, indicator_matrix(g)])
    return CoordinatedMatrix(
        m=base.m, n=base.n, d=base.d, k=g.k, edges=base.edges,
        backend="float", array=full, zero_length_edges=base.zero_length_edges,
    )


def modular_matrix(g, p, d: int, k: int = 0, colours=None, q: int = MODULUS) -> CoordinatedMatrix:
    """Exact m x (dn + k) matrix over GF(q) at an integer configuration."""
    edges, n = _edges_n(g)
    if isinstance(g, ColouredGraph) and k:
        colours = g.colours
    rows = []
    zero = []
    for row, (i, j) in enumerate(edges):
        r = [0] * (d * n + k)
        coincident = True
        for a in range(d):
            diff = (p[i][a] - p[j][a]) % q
            r[d * i + a] = diff
            r[d * j + a] = (-diff) % q
            if diff:
                coincident = False
        if k and colours[row] >= 1:
            r[d * n + colours[row] - 1] = 1
        if coincident:
            zero.append((i, j))
        rows.append(tuple(r))
    return CoordinatedMatrix(
        m=len(edges), n=n, d=d, k=k, edges=tuple(edges), backend="modular",
        rows=tuple(rows), prime=q, zero_length_edges=tuple(zero),
    )


def _edges_n(g) -> tuple[tuple[Edge, ...], int]:
    if isinstance(g, ColouredGraph):
        return g.edges, g.n
    edges, n = g
    return tuple(edges), n


# ---------------------------------------------------------------------------
# rank and kernels


def float_rank(A: np.ndarray, tol: float | None = None) -> int:
    if A.size == 0:
        return 0
    s = np.linalg.svd(A, compute_uv=False)
    if tol is None:
        tol = max(A.shape) * np.finfo(float).eps * (s[0] if s.size else 0.0)
    return int(np.sum(s > tol))


def modular_rank_rows(rows, q: int = MODULUS, row_subset=None) -> int:
    """Exact rank over GF(q) by Gaussian elimination."""
    if row_subset is not None:
        rows = [rows[i] for i in row_subset]
    work = [list(r) for r in rows if any(r)]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for c in range(ncols):
        piv = None
        for i in range(rank, len(work)):
            if work[i][c]:
                piv = i
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        inv = pow(prow[c], q - 2, q)
        for i in range(rank + 1, len(work)):
            f = work[i][c]
            if f:
                f = f * inv % q
                ri = work[i]
                ri[c:] = [(a - f * b) % q for a, b in zip(ri[c:], prow[c:])]
        rank += 1
        if rank == len(work):
            break
    return rank


def modular_nullspace(rows, ncols: int, q: int = MODULUS) -> list[list[int]]:
    """Kernel basis over GF(q) in reduced echelon form."""
    work = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    rank = 0
    for c in range(ncols):
        piv = None
        for i in range(rank, len(work)):
            if work[i][c]:
                piv = i
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = pow(work[rank][c], q - 2, q)
        work[rank] = [x * inv % q for x in work[rank]]
        prow = work[rank]
        for i in range(len(work)):
            if i != rank and work[i][c]:
                f = work[i][c]
                work[i] = [(a - f * b) % q for a, b in zip(work[i], prow)]
        pivots.append(c)
        rank += 1
        if rank == len(work):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = (-work[r][fc]) % q
        basis.append(vec)
    return basis


def rank(M: CoordinatedMatrix, tol: float | None = None) -> int:
    """Rank under the matrix's own backend (exact for modular)."""
    if M.backend == "modular":
        return modular_rank_rows(M.rows, M.prime)
    return float_rank(M.array, tol)


def _svd_spaces(A: np.ndarray, tol: float | None = None):
    """(rank, left-null basis as columns, right-null basis as columns)."""
    m, c = A.shape
    if m == 0:
        return 0, np.zeros((0, 0)), np.eye(c)
    u, s, vt = np.linalg.svd(A, full_matrices=True)
    if tol is None:
        tol = max(A.shape) * np.finfo(float).eps * (s[0] if s.size else 0.0)
    r = int(np.sum(s > tol))
    return r, u[:, r:], vt[r:].T


# ---------------------------------------------------------------------------
# motions and stresses


def trivial_motion_generators(p: np.ndarray, k: int = 0) -> np.ndarray:
    """Velocity fields of the ambient isometries evaluated at p.

    d translations plus C(d, 2) infinitesimal rotations, each padded with
    r' = 0 on the k coordination entries.  Their span is the trivial motion
    space; its dimension is computed, never assumed, so degenerate
    configurations are handled correctly.
    """
    n, d = p.shape
    gens = []
    for a in range(d):
        vec = np.zeros(d * n + k)
        vec[a : d * n : d] = 1.0
        gens.append(vec)
    for a in range(d):
        for b in range(a + 1, d):
            vec = np.zeros(d * n + k)
            for i in range(n):
                vec[d * i + b] = p[i, a]
                vec[d * i + a] = -p[i, b]
            gens.append(vec)
    return np.array(gens)


def trivial_dim_at(p: np.ndarray) -> int:
    return float_rank(trivial_motion_generators(p))


def modular_trivial_dim(p, d: int, q: int = MODULUS) -> int:
    """Exact dimension of the trivial motion space at a modular configuration."""
    n = len(p)
    gens = []
    for a in range(d):
        vec = [0] * (d * n)
        for i in range(n):
            vec[d * i + a] = 1
        gens.append(vec)
    for a in range(d):
        for b in range(a + 1, d):
            vec = [0] * (d * n)
            for i in range(n):
                vec[d * i + b] = p[i][a] % q
                vec[d * i + a] = (-p[i][b]) % q
            gens.append(vec)
    return modular_rank_rows(gens, q)


@dataclass(frozen=True)
class MotionReport:
    """Kernel of the coordinated matrix split against the trivial space.

    ``basis`` rows span the kernel of (R(p), 1(c)); each row is a motion
    (p', r') of length dn + k.  ``nontrivial_basis`` rows span the
    orthogonal complement of the trivial motions inside the kernel; the
    framework is infinitesimally rigid iff ``nontrivial_dim`` is zero.
    """

    basis: np.ndarray
    trivial_dim: int
    nontrivial_dim: int
    nontrivial_basis: np.ndarray
    d: int
    k: int

    @property
    def nullity(self) -> int:
        return self.basis.shape[0]


def infinitesimal_motions(g: ColouredGraph, p, tol: float | None = None) -> MotionReport:
    """Basis of the motion space M+(p) with its trivial/nontrivial split."""
    M = coordinated_matrix(g, p)
    if M.zero_length_edges:
        raise ValueError(
            f"zero-length edges {list(M.zero_length_edges)}: motion analysis "
            "requires distinct endpoints on every edge"
        )
    pts = as_points(p, g.n)
    _, _, kern = _svd_spaces(M.array, tol)
    basis = kern.T  # rows are motions
    gens = trivial_motion_generators(pts, g.k)
    # orthonormal row basis of the trivial space via SVD (QR is unsafe when
    # a degenerate configuration makes interior generators dependent)
    _, gs, gvt = np.linalg.svd(gens, full_matrices=False)
    gcut = max(gens.shape) * np.finfo(float).eps * (gs[0] if gs.size else 0.0)
    t_dim = int(np.sum(gs > gcut))
    q_t = gvt[:t_dim].T  # columns orthonormal, span = trivial space
    # the trivial space is a subspace of the kernel by construction, so the
    # nontrivial dimension is the exact difference of the two computed ranks;
    # the residual SVD then only supplies an orthonormal basis for it
    nt_dim = max(0, basis.shape[0] - t_dim)
    if nt_dim and basis.size:
        resid = basis - (basis @ q_t) @ q_t.T
        _, _, vt = np.linalg.svd(resid, full_matrices=False)
        nontrivial = vt[:nt_dim]
    else:
        nontrivial = np.zeros((0, M.ncols))
    return MotionReport(
        basis=basis,
        trivial_dim=t_dim,
        nontrivial_dim=nt_dim,
        nontrivial_basis=nontrivial,
        d=M.d,
        k=g.k,
    )


def equilibrium_stresses(g, p, tol: float | None = None) -> np.ndarray:
    """Orthonormal basis (rows) of the left kernel S(p) of R(p).

    dim S(p) = m - rank R(p); the framework is independent iff it is 0.
    """
    M = rigidity_matrix(g, p)
    _, left, _ = _svd_spaces(M.array, tol)
    return left.T


def edge_load(g, p, edge: Edge) -> np.ndarray:
    """The equilibrium load of one edge: p(i)-p(j) at i, p(j)-p(i) at j."""
    edges, n = _edges_n(g)
    pts = as_points(p, n)
    d = pts.shape[1]
    f = np.zeros(d * n)
    i, j = edge
    f[d * i : d * i + d] = pts[i] - pts[j]
    f[d * j : d * j + d] = pts[j] - pts[i]
    return f


def colour_class_load(g: ColouredGraph, p, i: int) -> np.ndarray:
    """Sum of the edge loads over colour class i (1 <= i <= k)."""
    if not 1 <= i <= g.k:
        raise ValueError(f"colour class index {i} out of range 1..{g.k}")
    pts = as_points(p, g.n)
    d = pts.shape[1]
    f = np.zeros(d * g.n)
    for e in g.colour_class(i):
        f += edge_load(g, pts, e)
    return f


def is_equilibrium_load(p: np.ndarray, f: np.ndarray, tol: float = 1e-9) -> bool:
    """No net force and no net torque, to tolerance."""
    n, d = p.shape
    fv = f.reshape(n, d)
    scale = 1.0 + float(np.abs(fv).sum())
    if np.any(np.abs(fv.sum(axis=0)) > tol * scale):
        return False
    for a in range(d):
        for b in range(a + 1, d):
            torque = float(np.sum(fv[:, a] * p[:, b] - fv[:, b] * p[:, a]))
            if abs(torque) > tol * scale * (1.0 + float(np.abs(p).max())):
                return False
    return True


def resolve_load(g, p, f, tol: float = 1e-9):
    """Minimum-norm stress resolving an equilibrium load, or None.

    Solves sum_j rho({i,j}) [p(j) - p(i)] = -f(i) for all i; returns None
    when f lies outside the resolvable space (the row space of R(p)).
    Raises if f is not an equilibrium load.
    """
    edges, n = _edges_n(g)
    pts = as_points(p, n)
    f = np.asarray(f, dtype=float).reshape(-1)
    if f.shape[0] != pts.size:
        raise ValueError("load vector length must be d*n")
    if not is_equilibrium_load(pts, f, tol):
        raise ValueError("not an equilibrium load (net force or torque nonzero)")
    M = rigidity_matrix((edges, n), pts)
    A = M.array.T  # (dn) x m
    rho, *_ = np.linalg.lstsq(A, f, rcond=None)
    resid = float(np.linalg.norm(A @ rho - f))
    if resid > tol * (1.0 + float(np.linalg.norm(f))):
        return None
    return rho


def coordination_gram(g: ColouredGraph, p, tol: float | None = None) -> np.ndarray:
    """Gram matrix of the projections of the indicator columns onto S(p).

    When the underlying framework (G, p) is infinitesimally rigid, the
    coordinated framework is infinitesimally rigid iff this k x k matrix is
    nonsingular; an independent framework (S(p) = 0) yields the zero matrix.
    """
    M = rigidity_matrix(g, p)
    _, left, _ = _svd_spaces(M.array, tol)
    proj = left.T @ indicator_matrix(g)  # s x k coefficients
    return proj.T @ proj


def gram_rank(gram: np.ndarray, tol: float | None = None) -> int:
    return float_rank(gram, tol)


def check_equivalent(g: ColouredGraph, placement_a, placement_b, tol: float):
    """Edge-by-edge equivalence test for two placements of the same graph.

    Uncoloured edges must preserve length; an edge of class l must preserve
    length + offset(l).  Returns (equivalent, residuals) with one residual
    per edge in canonical order.
    """
    pa, ra = placement_a
    pb, rb = placement_b
    pa = as_points(pa, g.n)
    pb = as_points(pb, g.n)
    ra = np.asarray(ra, dtype=float).reshape(-1)
    rb = np.asarray(rb, dtype=float).reshape(-1)
    if ra.shape[0] != g.k or rb.shape[0] != g.k:
        raise ValueError(f"offset vectors must have length k={g.k}")
    residuals = np.zeros(g.m)
    for row, ((i, j), c) in enumerate(zip(g.edges, g.colours)):
        la = float(np.linalg.norm(pa[i] - pa[j]))
        lb = float(np.linalg.norm(pb[i] - pb[j]))
        if c >= 1:
            la += float(ra[c - 1])
            lb += float(rb[c - 1])
        residuals[row] = abs(la - lb)
    return bool(np.all(residuals <= tol)), residuals
