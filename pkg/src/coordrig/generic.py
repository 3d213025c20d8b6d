"""Monte-Carlo generic-rank oracle and the rainbow-redundancy decider.

Ranks are evaluated exactly over GF(q) at random integer configurations,
so a reported rank is always a lower bound on the true generic rank and
equals it except with probability bounded by (total minor degree)/q per
trial.  The decider checks that the underlying graph is generically rigid
and that some rainbow tuple (one edge per coordination class) is redundant,
and cross-checks the combinatorial answer against the direct rank of the
coordinated matrix at the same sampled configurations.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .cgraph import ColouredGraph
from . import linalg
from .linalg import MODULUS

Edge = tuple[int, int]


class BackendError(RuntimeError):
    """Randomized backend failed to reach a self-consistent verdict."""


@dataclass(frozen=True)
class OracleParams:
    """Sampling parameters for the exact randomized rank oracle."""

    d: int = 2
    trials: int = 3
    seed: int = 0
    prime: int = MODULUS

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError("dimension must be >= 1")
        if self.trials < 1:
            raise ValueError("need at least one trial")


@dataclass(frozen=True)
class RigidityVerdict:
    """Rigid/flexible decision with a replayable certificate."""

    decision: str  # "rigid" | "flexible"
    method: str
    d: int
    k: int
    seed: int | None
    ranks: dict
    certificate: dict | None = None
    witness: str | None = None
    isostatic: bool | None = None

    @property
    def rigid(self) -> bool:
        return self.decision == "rigid"

    def to_json(self) -> dict:
        out = {
            "decision": self.decision,
            "method": self.method,
            "d": self.d,
            "k": self.k,
            "seed": self.seed,
            "ranks": self.ranks,
            "certificate": self.certificate,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.isostatic is not None:
            out["isostatic"] = self.isostatic
        return out


class _RankOracle:
    """Per-seed batch of sampled configurations with exact rank queries.

    Trial t draws its configuration from seed + t, the documented splitting
    rule, so parallel evaluation schemes must reproduce exactly what the
    sequential loop does.
    """

    def __init__(self, g: ColouredGraph, params: OracleParams, seed: int | None = None):
        self.g = g
        self.params = params
        self.seed = params.seed if seed is None else seed
        self.dn = params.d * g.n
        self.trials = []
        for t in range(params.trials):
            p = linalg.sample_modular_configuration(
                g.n, params.d, self.seed + t, params.prime
            )
            mat = linalg.modular_matrix(g, p, params.d, k=g.k)
            self.trials.append((p, mat.rows))
        self._rank_full: int | None = None
        self._trivial: int | None = None

    def _base_rows(self, rows):
        return [row[: self.dn] for row in rows]

    def rank_base(self, drop: frozenset[int] = frozenset()) -> int:
        """Max over trials of rank R(p) with the given edge rows removed."""
        best = 0
        for _, rows in self.trials:
            subset = [i for i in range(len(rows)) if i not in drop]
            r = linalg.modular_rank_rows(
                self._base_rows(rows), self.params.prime, row_subset=subset
            )
            best = max(best, r)
        return best

    def rank_plus(self) -> int:
        return max(
            linalg.modular_rank_rows(rows, self.params.prime)
            for _, rows in self.trials
        )

    def rank_plus_per_trial(self) -> list[int]:
        return [
            linalg.modular_rank_rows(rows, self.params.prime)
            for _, rows in self.trials
        ]

    def rank_full(self) -> int:
        if self._rank_full is None:
            self._rank_full = self.rank_base()
        return self._rank_full

    def trivial_dim(self) -> int:
        if self._trivial is None:
            self._trivial = max(
                linalg.modular_trivial_dim(p, self.params.d, self.params.prime)
                for p, _ in self.trials
            )
        return self._trivial

    def indices(self, edges) -> frozenset[int]:
        return frozenset(self.g.edge_index(tuple(e)) for e in edges)


def generic_rank(g, params: OracleParams) -> int:
    """Rank of the edge set in the d-dimensional rigidity matroid.

    Max over trials of rank R(p) at independently sampled exact
    configurations; never exceeds the true generic rank and is monotone in
    the number of trials.
    """
    g = _as_graph(g)
    return _RankOracle(g, params).rank_full()


def is_redundant_set(g, edges, params: OracleParams) -> bool:
    """Whether removing ``edges`` keeps the generic rank, on shared samples."""
    g = _as_graph(g)
    oracle = _RankOracle(g, params)
    drop = oracle.indices(edges)
    return oracle.rank_base(drop) == oracle.rank_full()


def rank_summary(g: ColouredGraph, params: OracleParams) -> dict:
    """Sampled ranks of both matrices with their rigidity targets."""
    oracle = _RankOracle(g, params)
    trivial = oracle.trivial_dim()
    dn = params.d * g.n
    return {
        "generic_rank": oracle.rank_full(),
        "target_rank": dn - trivial,
        "coordinated_rank": oracle.rank_plus(),
        "coordinated_target": dn + g.k - trivial,
        "trivial_dim": trivial,
    }


def find_rainbow_redundant_tuple(g: ColouredGraph, params: OracleParams, _oracle=None):
    """First redundant rainbow tuple in lexicographic class-product order.

    Edges that are bridges (not individually redundant) are pruned up
    front, since any set containing a bridge fails.  Returns None when the
    whole product is exhausted.
    """
    if g.k < 1:
        raise ValueError("rainbow tuples need k >= 1")
    oracle = _oracle or _RankOracle(g, params)
    full = oracle.rank_full()
    bridges = {
        e
        for e in g.edges
        if oracle.rank_base(oracle.indices([e])) < full
    }
    classes = [g.colour_class(i) for i in range(1, g.k + 1)]
    for cand in itertools.product(*classes):
        if any(e in bridges for e in cand):
            continue
        if oracle.rank_base(oracle.indices(cand)) == full:
            return tuple(cand)
    return None


def rainbow_stress_certificates(g: ColouredGraph, p, tup, tol: float = 1e-9):
    """Float equilibrium stresses w_1..w_k with w_i nonzero exactly on the
    i-th tuple edge among the tuple's entries.

    Exists whenever the tuple is redundant and the underlying framework is
    rigid at p; each returned stress is normalized to unit norm.
    """
    basis = linalg.equilibrium_stresses(g, p)  # rows orthonormal
    if basis.size == 0:
        return None
    B = basis.T  # m x s
    idx = [g.edge_index(tuple(e)) for e in tup]
    out = []
    for i, ei in enumerate(idx):
        others = [e for j, e in enumerate(idx) if j != i]
        if others:
            A = B[others, :]
            _, s, vt = np.linalg.svd(A, full_matrices=True)
            cut = max(A.shape) * np.finfo(float).eps * (s[0] if s.size else 0.0)
            K = vt[int(np.sum(s > cut)) :].T
        else:
            K = np.eye(B.shape[1])
        if K.size == 0:
            return None
        v = B[ei, :] @ K  # coefficients of the target row on the kernel
        if np.linalg.norm(v) <= tol:
            return None
        omega = B @ (K @ v)
        out.append(omega / np.linalg.norm(omega))
    return out


def decide_generic_coordinated_rigidity(
    g: ColouredGraph, params: OracleParams, max_attempts: int = 3
) -> RigidityVerdict:
    """Decide generic rigidity of the coordinated framework in dimension d.

    Rigid iff the underlying graph has full generic rank and some rainbow
    tuple is redundant; the answer is cross-checked against the rank of the
    coordinated matrix at the same samples, and on disagreement (an unlucky
    sample) the whole computation retries with fresh seeds.
    """
    for attempt in range(max_attempts):
        seed = params.seed + 1_000_003 * attempt
        oracle = _RankOracle(g, params, seed=seed)
        trivial = oracle.trivial_dim()
        dn = params.d * g.n
        target = dn - trivial
        coord_target = dn + g.k - trivial
        rank_full = oracle.rank_full()
        plus_per_trial = oracle.rank_plus_per_trial()
        rank_plus = max(plus_per_trial)
        if g.n >= params.d:
            bound = min(g.m, dn - math.comb(params.d + 1, 2) + g.k)
            assert all(r <= bound for r in plus_per_trial), (
                f"sampled coordinated rank exceeds the matroid-union bound "
                f"{bound} (seed {seed})"
            )
        underlying_rigid = rank_full == target
        tup = None
        if underlying_rigid and g.k >= 1:
            tup = find_rainbow_redundant_tuple(g, params, _oracle=oracle)
        rigid = underlying_rigid and (g.k == 0 or tup is not None)
        rigid_direct = rank_plus == coord_target
        if rigid != rigid_direct:
            continue  # unlucky sample; retry with fresh seeds
        ranks = {
            "n": g.n,
            "m": g.m,
            "generic_rank": rank_full,
            "target_rank": target,
            "coordinated_rank": rank_plus,
            "coordinated_target": coord_target,
            "trivial_dim": trivial,
            "trials": params.trials,
        }
        isolated = g.isolated_vertices()
        if isolated:
            ranks["isolated_vertices"] = list(isolated)
        if rigid:
            cert: dict = {"rainbow_tuple": [list(e) for e in (tup or ())]}
            if tup is not None:
                classes = [g.colour_of(e) for e in tup]
                assert sorted(classes) == list(range(1, g.k + 1))
            return RigidityVerdict(
                decision="rigid", method="numeric", d=params.d, k=g.k,
                seed=seed, ranks=ranks, certificate=cert,
                isostatic=g.m == coord_target,
            )
        if not underlying_rigid:
            witness = "underlying-flexible"
        else:
            witness = "no-rainbow-redundant-tuple"
        cert = {"kind": witness}
        flex = _nontrivial_flex(g, params.d, seed)
        if flex is not None:
            cert["flex"] = [round(float(x), 12) for x in flex]
        return RigidityVerdict(
            decision="flexible", method="numeric", d=params.d, k=g.k,
            seed=seed, ranks=ranks, certificate=cert, witness=witness,
        )
    raise BackendError(
        f"combinatorial and direct rank tests disagreed {max_attempts} times; "
        f"root seed {params.seed}, trials {params.trials}"
    )


def _nontrivial_flex(g: ColouredGraph, d: int, seed: int):
    """A nontrivial infinitesimal motion at a seeded float configuration."""
    p = linalg.random_configuration(g.n, d, seed)
    try:
        report = linalg.infinitesimal_motions(g, p)
    except ValueError:
        return None
    if report.nontrivial_dim == 0:
        return None
    return report.nontrivial_basis[0]


def _as_graph(g):
    if isinstance(g, ColouredGraph):
        return g
    edges, n = g
    triples = [(u, v, 0) for (u, v) in edges]
    from .cgraph import build

    return build(n, 0, triples)
