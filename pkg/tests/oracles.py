"""Independent brute-force oracles used to pin expected test values.

These deliberately avoid the production code paths they are used to check:
sparsity is tested subgraph-by-subgraph from the definition, ranks by
maximizing over all edge subsets, circuits as minimal dependent sets, and
the union rank by exhausting the min-formula over every subset.
"""

from __future__ import annotations

from itertools import combinations

from coordrig.pebble import PLANE, PebbleGame


def brute_sparse(edges, n: int, kk: int = 2, ll: int = 3) -> bool:
    """Definition check: every n' >= 2 vertex subset induces <= kk*n' - ll."""
    for r in range(2, n + 1):
        for subset in combinations(range(n), r):
            inside = set(subset)
            count = sum(1 for (u, v) in edges if u in inside and v in inside)
            if count > kk * r - ll:
                return False
    return True


def _subset_checks(edges, n: int, kk: int, ll: int):
    checks = []
    for r in range(2, n + 1):
        for subset in combinations(range(n), r):
            inside = set(subset)
            mask = 0
            for i, (u, v) in enumerate(edges):
                if u in inside and v in inside:
                    mask |= 1 << i
            checks.append((mask, kk * r - ll))
    return checks


def brute_rank(edges, n: int, kk: int = 2, ll: int = 3) -> int:
    """Largest sparse edge subset, maximized over all 2^m subsets."""
    edges = list(edges)
    checks = _subset_checks(edges, n, kk, ll)
    best = 0
    for sub in range(1 << len(edges)):
        size = sub.bit_count()
        if size <= best:
            continue
        if all((sub & mask).bit_count() <= cap for mask, cap in checks):
            best = size
    return best


def brute_circuits(edges, n: int, kk: int = 2, ll: int = 3):
    """All minimal dependent subsets (circuits) of the count matroid."""
    edges = list(edges)
    out = []
    for r in range(3, len(edges) + 1):
        for sub in combinations(edges, r):
            if brute_sparse(sub, n, kk, ll):
                continue
            if all(
                brute_sparse([e for e in sub if e != f], n, kk, ll) for f in sub
            ):
                out.append(tuple(sorted(sub)))
    return out


def brute_union_rank(g) -> int:
    """min over F of |E \\ F| + pebble_rank(F) + transversal_rank(F).

    Exhausts every subset F via depth-first include/exclude decisions,
    keeping a running pebble game (with snapshot/undo) so each subset costs
    one insertion.
    """
    m = g.m
    best = m + 1_000_000
    game = PebbleGame(g.n, PLANE)

    def recurse(i: int, rank_f: int, colours: set[int], size_f: int) -> None:
        nonlocal best
        if i == m:
            best = min(best, (m - size_f) + rank_f + len(colours))
            return
        recurse(i + 1, rank_f, colours, size_f)
        state = game.copy_state()
        gained = 1 if game.try_insert(g.edges[i]) else 0
        c = g.colours[i]
        added = c > 0 and c not in colours
        if added:
            colours.add(c)
        recurse(i + 1, rank_f + gained, colours, size_f + 1)
        if added:
            colours.remove(c)
        game.restore_state(state)

    recurse(0, 0, set(), 0)
    return best
