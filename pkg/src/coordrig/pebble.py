"""Deterministic (k, l)-sparsity engine built on the pebble game.

Provides rank in the count matroid (for the plane: (2,3), with (2,2) also
needed by the two-class decider), maximal independent edge sets,
fundamental circuits of rejected edges, Laman+p classification and d=2
redundancy/bridge detection.

Edges are always processed in canonical (sorted) order and pebble searches
break ties toward the lowest-index vertex, so the accepted set, every
circuit, and every derived report are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cgraph import ColouredGraph

Edge = tuple[int, int]


@dataclass(frozen=True)
class SparsityParams:
    """Count-matroid parameters: m' <= kk*n' - ll on every n' >= 2 subgraph.

    The admissible range is kk >= 1, 0 <= ll <= 2*kk - 1; outside it the
    pebble game does not model the count.  (kk here is the count parameter,
    unrelated to the number of coordination classes.)
    """

    kk: int = 2
    ll: int = 3

    def __post_init__(self) -> None:
        if self.kk < 1 or not 0 <= self.ll <= 2 * self.kk - 1:
            raise ValueError(
                f"invalid sparsity parameters ({self.kk}, {self.ll}); "
                f"need kk >= 1 and 0 <= ll <= 2*kk - 1"
            )


PLANE = SparsityParams(2, 3)
PLANE_LOOSE = SparsityParams(2, 2)


@dataclass(frozen=True)
class CircuitReport:
    """Fundamental circuit of a rejected edge over an independent set."""

    circuit: tuple[Edge, ...]
    witness_edge: Edge


class PebbleGame:
    """Incremental (kk, ll)-independence tester.

    Each vertex starts with kk pebbles; inserting an edge requires ll + 1
    pebbles gathered on its endpoints, after which one pebble pays for the
    edge and the edge is oriented away from the paying endpoint.
    """

    def __init__(self, n: int, params: SparsityParams = PLANE) -> None:
        self.n = n
        self.params = params
        self.pebbles = [params.kk] * n
        self.succ: list[list[int]] = [[] for _ in range(n)]
        self.accepted: list[Edge] = []

    def copy_state(self) -> tuple[list[int], list[list[int]], list[Edge]]:
        return (
            list(self.pebbles),
            [list(s) for s in self.succ],
            list(self.accepted),
        )

    def restore_state(self, state) -> None:
        pebbles, succ, accepted = state
        self.pebbles = list(pebbles)
        self.succ = [list(s) for s in succ]
        self.accepted = list(accepted)

    def _find_pebble(self, start: int, blocked: tuple[int, int]) -> bool:
        """Move one pebble to ``start`` along a reversed search path.

        Depth-first over the edge orientations, expanding lowest-index
        successors first; the endpoints of the pending edge never donate.
        Returns False when no free pebble is reachable.
        """
        parent: dict[int, int] = {start: -1}
        stack = [start]
        while stack:
            v = stack.pop()
            if v not in blocked and self.pebbles[v] > 0:
                self.pebbles[v] -= 1
                self.pebbles[start] += 1
                while parent[v] != -1:
                    u = parent[v]
                    self.succ[u].remove(v)
                    self.succ[v].append(u)
                    v = u
                return True
            for w in sorted(self.succ[v], reverse=True):
                if w not in parent:
                    parent[w] = v
                    stack.append(w)
        return False

    def _reach(self, u: int, v: int) -> set[int]:
        seen = {u, v}
        stack = [u, v]
        while stack:
            x = stack.pop()
            for w in self.succ[x]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    def try_insert(self, edge: Edge) -> bool:
        """Accept ``edge`` if it is independent over the accepted set."""
        u, v = edge
        need = self.params.ll + 1
        while self.pebbles[u] + self.pebbles[v] < need:
            if not (self._find_pebble(u, edge) or self._find_pebble(v, edge)):
                return False
        if self.pebbles[u] > 0:
            self.pebbles[u] -= 1
            self.succ[u].append(v)
        else:
            self.pebbles[v] -= 1
            self.succ[v].append(u)
        self.accepted.append(edge)
        return True

    def rejection_circuit(self, edge: Edge) -> tuple[Edge, ...]:
        """Fundamental circuit of a just-rejected edge.

        Valid immediately after ``try_insert`` returned False: the vertices
        still reachable from the endpoints then span a tight subgraph, and
        the accepted edges inside it together with the rejected edge form
        the unique circuit.
        """
        u, v = edge
        region = self._reach(u, v)
        inside = [e for e in self.accepted if e[0] in region and e[1] in region]
        return tuple(sorted(inside + [edge]))


def _edges_of(g) -> tuple[tuple[Edge, ...], int]:
    if isinstance(g, ColouredGraph):
        return g.edges, g.n
    edges, n = g
    return tuple(edges), n


def run_game(g, params: SparsityParams = PLANE):
    """Play the full game; returns (game, accepted, {rejected edge: circuit}).

    Edges are inserted in canonical order; each rejection records its
    fundamental circuit (computed on the spot, which matches the circuit
    over the final accepted set because the circuit of e is already
    contained in the accepted edges present at rejection time).
    """
    edges, n = _edges_of(g)
    game = PebbleGame(n, params)
    circuits: dict[Edge, tuple[Edge, ...]] = {}
    for e in edges:
        if not game.try_insert(e):
            circuits[e] = game.rejection_circuit(e)
    return game, tuple(game.accepted), circuits


def sparsity_rank(g, params: SparsityParams = PLANE) -> tuple[int, tuple[Edge, ...]]:
    """Rank of the edge set in the (kk, ll) count matroid.

    Returns the rank together with the canonical maximal sparse subset (the
    edges accepted in canonical order).  For params (2, 3) this is the rank
    in the plane rigidity matroid by the Pollaczek-Geiringer/Laman count.
    """
    _, accepted, _ = run_game(g, params)
    return len(accepted), accepted


def fundamental_circuit(g, tight, edge: Edge, params: SparsityParams = PLANE) -> CircuitReport:
    """Unique circuit inside tight + edge, where tight is independent.

    Raises if ``tight`` is not sparse or if ``edge`` is independent over it.
    """
    _, n = _edges_of(g)
    game = PebbleGame(n, params)
    for e in sorted(tight):
        if not game.try_insert(tuple(e)):
            raise ValueError(f"edge set is not ({params.kk},{params.ll})-sparse: {e} rejected")
    if game.try_insert(edge):
        raise ValueError(f"edge {edge} is independent over the given set; no circuit")
    return CircuitReport(circuit=game.rejection_circuit(edge), witness_edge=edge)


@dataclass(frozen=True)
class LamanClassification:
    """Outcome of the Laman+p test: kind, (2,3)-rank, and rank deficit."""

    kind: str  # "deficit" | "laman" | "laman+1" | "laman+2" | "other"
    rank: int
    deficit: int = 0


def classify_laman_plus(g) -> LamanClassification:
    """Classify a graph by its (2,3)-rank against the 2n-3 target.

    laman / laman+p means the rank is full (2n-3) and exactly p surplus
    edges exist, so removing the rejected edges leaves a Laman graph;
    deficit(t) means the rank falls short by t; "other" is full rank with
    three or more surplus edges.
    """
    edges, n = _edges_of(g)
    if n < 2:
        raise ValueError("Laman classification needs n >= 2")
    rank, _ = sparsity_rank((edges, n), PLANE)
    target = 2 * n - 3
    m = len(edges)
    if rank < target:
        return LamanClassification("deficit", rank, target - rank)
    surplus = m - rank
    if surplus == 0:
        return LamanClassification("laman", rank)
    if surplus in (1, 2):
        return LamanClassification(f"laman+{surplus}", rank)
    return LamanClassification("other", rank)


def redundant_edges_d2(g) -> tuple[Edge, ...]:
    """Edges whose removal keeps the (2,3)-rank: the union of all circuits.

    The complement within E is the set of rigidity-bridges (edges present
    in every basis).  Computed from one game run: rejected edges are
    redundant, and so is every accepted edge lying in some rejected edge's
    fundamental circuit.
    """
    edges, n = _edges_of(g)
    _, _, circuits = run_game((edges, n), PLANE)
    redundant: set[Edge] = set()
    for e, circuit in circuits.items():
        redundant.update(circuit)
    return tuple(sorted(redundant))


def bridges_d2(g) -> tuple[Edge, ...]:
    """Rigidity-bridges: edges in every basis of the (2,3) matroid."""
    edges, _ = _edges_of(g)
    red = set(redundant_edges_d2(g))
    return tuple(e for e in edges if e not in red)
