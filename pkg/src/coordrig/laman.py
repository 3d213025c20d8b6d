"""Deterministic plane deciders for coordinated rigidity.

For one coordination class the test is: Laman+1 with a coloured edge in the
unique circuit.  For two classes: Laman+2, no class made entirely of
bridges, and the three coloured sparsity counts.  For any number of classes
the rank of the union of the plane rigidity matroid with the colour
partition matroid is computed by augmenting-path matroid union, where the
partition matroid treats uncoloured edges as loops and admits at most one
edge per colour.

Also houses the inductive generator for one-class isostatic graphs used to
build test corpora.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

from .cgraph import ColouredGraph, build, subgraph_by_colours
from .generic import RigidityVerdict
from .pebble import (
    PLANE,
    PLANE_LOOSE,
    PebbleGame,
    classify_laman_plus,
    redundant_edges_d2,
    run_game,
    sparsity_rank,
)

Edge = tuple[int, int]


def transversal_rank(g: ColouredGraph, edges) -> int:
    """Number of distinct nonzero colours among ``edges``.

    The colour classes partition E, so the transversal matroid of the
    classes is a partition matroid with unit capacities; uncoloured edges
    are loops.
    """
    return len({g.colour_of(tuple(e)) for e in edges} - {0})


@dataclass(frozen=True)
class UnionRankReport:
    """Rank of E in the union matroid with a witnessing partition.

    ``independent_rigidity`` is (2,3)-sparse, ``transversal`` has pairwise
    distinct nonzero colours, the two are disjoint and their union has size
    ``union_rank``.  ``deficiency`` is (2n - 3 + k) - union_rank.
    """

    union_rank: int
    independent_rigidity: tuple[Edge, ...]
    transversal: tuple[Edge, ...]
    deficiency: int


def _pebble_insert_all(n: int, edges) -> PebbleGame | None:
    game = PebbleGame(n, PLANE)
    for e in edges:
        if not game.try_insert(e):
            return None
    return game


def union_rank_d2(g: ColouredGraph) -> UnionRankReport:
    """Exact rank of E in the plane union matroid by Edmonds augmentation.

    Grows a union-independent set one ground element at a time; when the
    element does not fit directly, a breadth-first search over the exchange
    digraph finds a shortest augmenting path (lowest canonical index first),
    so the witness partition is deterministic.  The coordinated framework is
    generically rigid in the plane iff union_rank = 2n - 3 + k, and
    generically isostatic iff additionally m = 2n - 3 + k.
    """
    i1: list[Edge] = []  # independent in the (2,3) count matroid
    i2: dict[int, Edge] = {}  # colour -> representative edge
    for e in g.edges:
        _try_augment(g, e, i1, i2)
    i1_sorted = tuple(sorted(i1))
    i2_sorted = tuple(sorted(i2.values()))
    rank = len(i1_sorted) + len(i2_sorted)
    return UnionRankReport(
        union_rank=rank,
        independent_rigidity=i1_sorted,
        transversal=i2_sorted,
        deficiency=(2 * g.n - 3 + g.k) - rank,
    )


def _try_augment(g: ColouredGraph, e: Edge, i1: list[Edge], i2: dict[int, Edge]) -> bool:
    """Insert e into the union via a shortest exchange path, if possible.

    Arcs x -> y mean "x may displace y": y lies in the fundamental circuit
    of x over the rigidity part, or y is the current holder of x's colour.
    The search stops at the first element that extends one of the parts
    directly; swaps along a shortest path keep both parts independent.
    """
    pred: dict[Edge, tuple[Edge | None, int]] = {e: (None, 0)}
    queue: deque[Edge] = deque([e])
    i1_set = set(i1)
    i2_edges = set(i2.values())
    terminal: tuple[Edge, int] | None = None
    while queue and terminal is None:
        x = queue.popleft()
        arcs: list[tuple[Edge, int]] = []
        if x not in i1_set:
            game = _pebble_insert_all(g.n, sorted(i1_set))
            assert game is not None, "union invariant broken: part 1 not sparse"
            if game.try_insert(x):
                terminal = (x, 1)
                break
            circuit = game.rejection_circuit(x)
            arcs.extend((y, 1) for y in circuit if y != x)
        if x not in i2_edges:
            colour = g.colour_of(x)
            if colour >= 1:
                if colour not in i2:
                    terminal = (x, 2)
                    break
                arcs.append((i2[colour], 2))
        for y, label in arcs:
            if y not in pred:
                pred[y] = (x, label)
                queue.append(y)
    if terminal is None:
        return False
    # walk back from the terminal: the terminal enters its part for free,
    # every other path node leaves the part its incoming arc names and is
    # replaced there by its predecessor
    node, part = terminal
    if part == 1:
        i1.append(node)
    else:
        i2[g.colour_of(node)] = node
    current = node
    while True:
        parent, label = pred[current]
        if parent is None:
            break
        if label == 1:
            i1.remove(current)
            i1.append(parent)
        else:
            del i2[g.colour_of(current)]
            i2[g.colour_of(parent)] = parent
        current = parent
    return True


# ---------------------------------------------------------------------------
# one and two coordination classes


def _base_ranks(g: ColouredGraph) -> dict:
    out = {"n": g.n, "m": g.m, "target_rank": 2 * g.n - 3}
    isolated = g.isolated_vertices()
    if isolated:
        out["isolated_vertices"] = list(isolated)
    return out


def check_k1(g: ColouredGraph) -> RigidityVerdict:
    """Plane decision for one coordination class.

    Isostatic iff the graph is Laman+1 and the unique circuit contains a
    coloured edge; rigid in general iff the plane rank is full and some
    coloured edge is redundant.  The verdict carries an independence report:
    independent iff the uncoloured subgraph is Laman-sparse and at most one
    circuit exists.
    """
    if g.k != 1:
        raise ValueError(f"one-class decider called with k={g.k}")
    cls = classify_laman_plus(g)
    target = 2 * g.n - 3
    redundant = set(redundant_edges_d2(g)) if cls.rank == target else set()
    coloured = g.colour_class(1)
    cert_edges = [e for e in coloured if e in redundant]
    rigid = cls.rank == target and bool(cert_edges)
    isostatic = rigid and g.m == target + 1

    g0 = subgraph_by_colours(g, {0})
    g0_rank, _ = sparsity_rank((g0.edges, g.n))
    g0_sparse = g0_rank == g0.m
    independent = g0_sparse and (g.m - cls.rank) <= 1

    ranks = _base_ranks(g)
    ranks["rank23"] = cls.rank
    ranks["classification"] = cls.kind
    diagnosis = {
        "g0_laman_sparse": g0_sparse,
        "independent": independent,
    }
    if rigid:
        if isostatic:
            _, _, circuits = run_game(g)
            (circuit,) = circuits.values()
            diagnosis["circuit"] = [list(e) for e in circuit]
        return RigidityVerdict(
            decision="rigid", method="k1-laman", d=2, k=1, seed=None,
            ranks=ranks,
            certificate={"rainbow_tuple": [list(cert_edges[0])], "diagnosis": diagnosis},
            isostatic=isostatic,
        )
    if cls.rank < target:
        witness = f"deficiency:{target - cls.rank}"
    elif g.m < target + 1:
        witness = "not-laman-plus-1"
    else:
        witness = "class-all-bridges:1"
    return RigidityVerdict(
        decision="flexible", method="k1-laman", d=2, k=1, seed=None,
        ranks=ranks, certificate={"diagnosis": diagnosis},
        witness=witness, isostatic=False,
    )


def rainbow_pair_k2(g: ColouredGraph):
    """First rainbow redundant pair of a Laman+2 graph, canonical order.

    For each coloured edge e of class 1 in turn, e belongs to a rainbow
    redundant pair iff the graph minus e is Laman+1 with a class-2 edge in
    its circuit; the first such (e, f) is returned, else None.
    """
    if g.k != 2:
        raise ValueError(f"rainbow pair search called with k={g.k}")
    if classify_laman_plus(g).kind != "laman+2":
        return None
    class2 = set(g.colour_class(2))
    for e in g.colour_class(1):
        rest = tuple(x for x in g.edges if x != e)
        cls = classify_laman_plus((rest, g.n))
        if cls.kind != "laman+1":
            continue
        _, _, circuits = run_game((rest, g.n))
        (circuit,) = circuits.values()
        for f in circuit:
            if f in class2:
                return (e, f)
    return None


def check_k2(g: ColouredGraph) -> RigidityVerdict:
    """Plane decision for two coordination classes.

    Isostatic iff (1) Laman+2, (2) no colour class consists only of
    bridges, (3) the uncoloured subgraph is Laman-sparse and both one-class
    subgraphs are (2,2)-sparse.  All three conditions are evaluated even
    after one fails so the diagnosis is complete.  Rigid (beyond isostatic)
    means full plane rank plus some rainbow redundant pair.
    """
    if g.k != 2:
        raise ValueError(f"two-class decider called with k={g.k}")
    cls = classify_laman_plus(g)
    target = 2 * g.n - 3
    redundant = set(redundant_edges_d2(g)) if cls.rank == target else set()
    class1, class2 = g.colour_class(1), g.colour_class(2)

    cond_laman2 = cls.kind == "laman+2"
    class_red = {
        1: sorted(e for e in class1 if e in redundant),
        2: sorted(e for e in class2 if e in redundant),
    }
    cond_classes = bool(class_red[1]) and bool(class_red[2])

    g0 = subgraph_by_colours(g, {0})
    g0_rank, _ = sparsity_rank((g0.edges, g.n))
    g0_sparse = g0_rank == g0.m
    g0_circuit = None
    if not g0_sparse:
        _, _, circuits = run_game((g0.edges, g.n))
        g0_circuit = [list(e) for e in next(iter(circuits.values()))]
    sub_22 = {}
    for i in (1, 2):
        gi = subgraph_by_colours(g, {0, i})
        gi_rank, _ = sparsity_rank((gi.edges, g.n), PLANE_LOOSE)
        sub_22[i] = gi_rank == gi.m
    cond_sparsity = g0_sparse and sub_22[1] and sub_22[2]

    ranks = _base_ranks(g)
    ranks["rank23"] = cls.rank
    ranks["classification"] = cls.kind
    diagnosis = {
        "laman_plus_2": cond_laman2,
        "class_redundant": {str(i): [list(e) for e in class_red[i]] for i in (1, 2)},
        "class_bridges": {
            "1": [list(e) for e in class1 if e not in redundant],
            "2": [list(e) for e in class2 if e not in redundant],
        },
        "g0_laman_sparse": g0_sparse,
        "g1_22_sparse": sub_22[1],
        "g2_22_sparse": sub_22[2],
    }
    if g0_circuit is not None:
        diagnosis["g0_circuit"] = g0_circuit
    failing = []
    if not cond_laman2:
        failing.append("not-laman-plus-2")
    for i in (1, 2):
        if not class_red[i]:
            failing.append(f"class-all-bridges:{i}")
    if not g0_sparse:
        failing.append("G0-not-sparse")
    for i in (1, 2):
        if not sub_22[i]:
            failing.append(f"G{i}-not-22-sparse")
    diagnosis["failing"] = failing

    if cond_laman2 and cond_classes and cond_sparsity:
        pair = rainbow_pair_k2(g)
        if pair is None:
            raise RuntimeError(
                "internal inconsistency: coloured sparsity conditions hold "
                "but no rainbow redundant pair was found"
            )
        return RigidityVerdict(
            decision="rigid", method="k2-laman", d=2, k=2, seed=None,
            ranks=ranks,
            certificate={"rainbow_tuple": [list(pair[0]), list(pair[1])],
                         "diagnosis": diagnosis},
            isostatic=True,
        )
    if cls.rank == target and g.m > target + 2:
        # rank-full graph with surplus: not isostatic, but may still be rigid
        pair = _rainbow_pair_general(g, redundant, class1, class2)
        if pair is not None:
            return RigidityVerdict(
                decision="rigid", method="k2-laman", d=2, k=2, seed=None,
                ranks=ranks,
                certificate={"rainbow_tuple": [list(pair[0]), list(pair[1])],
                             "diagnosis": diagnosis},
                isostatic=False,
            )
    if cls.rank < target:
        witness = f"deficiency:{target - cls.rank}"
    elif g.m < target + 2:
        witness = "not-laman-plus-2"
    elif g.m == target + 2:
        witness = failing[0]
    elif not class_red[1]:
        witness = "class-all-bridges:1"
    elif not class_red[2]:
        witness = "class-all-bridges:2"
    else:
        witness = "no-rainbow-redundant-pair"
    return RigidityVerdict(
        decision="flexible", method="k2-laman", d=2, k=2, seed=None,
        ranks=ranks, certificate={"diagnosis": diagnosis},
        witness=witness, isostatic=False,
    )


def _rainbow_pair_general(g: ColouredGraph, redundant, class1, class2):
    """Rainbow redundant pair search for rank-full graphs of any surplus.

    {e, f} is jointly redundant iff e is redundant and f stays redundant
    after e is removed.
    """
    for e in class1:
        if e not in redundant:
            continue
        rest = tuple(x for x in g.edges if x != e)
        sub_red = set(redundant_edges_d2((rest, g.n)))
        for f in class2:
            if f in sub_red:
                return (e, f)
    return None


def check_union(g: ColouredGraph) -> RigidityVerdict:
    """Plane decision for any number of classes via the union rank."""
    rep = union_rank_d2(g)
    target = 2 * g.n - 3 + g.k
    rigid = g.n == 1 or rep.union_rank == target
    ranks = _base_ranks(g)
    ranks["union_rank"] = rep.union_rank
    ranks["union_target"] = target
    ranks["deficiency"] = rep.deficiency
    partition = {
        "rigidity_part": [list(e) for e in rep.independent_rigidity],
        "transversal_part": [list(e) for e in rep.transversal],
    }
    if rigid:
        tuple_by_colour = sorted(rep.transversal, key=lambda e: g.colour_of(e))
        return RigidityVerdict(
            decision="rigid", method="matroid-union", d=2, k=g.k, seed=None,
            ranks=ranks,
            certificate={"rainbow_tuple": [list(e) for e in tuple_by_colour],
                         "partition": partition},
            isostatic=(g.m == target),
        )
    return RigidityVerdict(
        decision="flexible", method="matroid-union", d=2, k=g.k, seed=None,
        ranks=ranks, certificate={"partition": partition},
        witness=f"deficiency:{rep.deficiency}", isostatic=False,
    )


def decide_plane(g: ColouredGraph) -> RigidityVerdict:
    """Dispatch the combinatorial plane decision on the class count."""
    if g.k == 1:
        return check_k1(g)
    if g.k == 2:
        return check_k2(g)
    return check_union(g)


# ---------------------------------------------------------------------------
# inductive generator (one class)


def henneberg_k1_sample(target_n: int, seed: int) -> ColouredGraph:
    """Random isostatic one-class graph grown by vertex-addition and
    edge-split moves.

    Starts from a random colouring of K4 with a non-empty class and applies
    target_n - 4 random moves: vertex addition joins a new degree-2 vertex
    to two existing vertices (each new edge coloured with probability 1/4);
    edge split removes an edge, joining a new degree-3 vertex to its ends
    and one more vertex, and when the removed edge was coloured at least
    one of the two replacement edges at its ends is coloured.  When the
    removed edge was uncoloured all three new edges stay uncoloured.  The
    output is validated to be isostatic before being returned.
    """
    if target_n < 4:
        raise ValueError("generator needs target_n >= 4")
    rng = random.Random(seed)
    edges: list[tuple[int, int, int]] = []
    for u in range(4):
        for v in range(u + 1, 4):
            edges.append((u, v, 1 if rng.random() < 0.25 else 0))
    if not any(c == 1 for _, _, c in edges):
        u, v, _ = edges[rng.randrange(len(edges))]
        edges = [(a, b, 1 if (a, b) == (u, v) else c) for a, b, c in edges]
    n = 4
    while n < target_n:
        w = n
        if rng.random() < 0.5:
            i, j = sorted(rng.sample(range(n), 2))
            edges.append((i, w, 1 if rng.random() < 0.25 else 0))
            edges.append((j, w, 1 if rng.random() < 0.25 else 0))
        else:
            t = rng.randrange(len(edges))
            i, j, c = edges.pop(t)
            z = rng.choice([v for v in range(n) if v not in (i, j)])
            if c == 1:
                ci = 1 if rng.random() < 0.25 else 0
                cj = 1 if rng.random() < 0.25 else 0
                if ci == 0 and cj == 0:
                    if rng.random() < 0.5:
                        ci = 1
                    else:
                        cj = 1
                cz = 1 if rng.random() < 0.25 else 0
            else:
                ci = cj = cz = 0
            edges.append((i, w, ci))
            edges.append((j, w, cj))
            edges.append((z, w, cz))
        n += 1
    g = build(n, 1, edges)
    verdict = check_k1(g)
    if not (verdict.rigid and verdict.isostatic):
        raise RuntimeError(
            f"generator produced a non-isostatic graph (seed {seed}); "
            "this indicates a bug in the move rules"
        )
    return g
