"""Seeded random coloured graphs for corpora and property suites."""

from __future__ import annotations

import random

from .cgraph import ColouredGraph, build


def random_coloured_graph(
    n: int, k: int, seed: int, m: int | None = None
) -> ColouredGraph:
    """Uniform-ish random simple graph with a valid k-colouring.

    Edge count defaults to a window around 2n - 3 + k so that rigid,
    flexible and overbraced instances all occur.  One edge per nonzero
    class is forced so the colouring is always valid; remaining edges are
    uncoloured with probability 2/3.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    rng = random.Random(seed)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    max_m = len(pairs)
    if m is None:
        target = 2 * n - 3 + k
        m = rng.randint(max(k, 1, target - 4), min(max_m, target + 3))
    if not k <= m <= max_m:
        raise ValueError(f"edge count {m} out of range [{k}, {max_m}]")
    edges = rng.sample(pairs, m)
    rng.shuffle(edges)
    colours = [0] * m
    for i in range(k):
        colours[i] = i + 1
    for i in range(k, m):
        if k > 0 and rng.random() > 2 / 3:
            colours[i] = rng.randint(1, k)
    return build(n, k, [(u, v, c) for (u, v), c in zip(edges, colours)])


def random_corpus(count: int, seed: int, n_range=(3, 8), k_range=(0, 3)):
    """Deterministic list of random graphs; instance i uses seed + i."""
    out = []
    for i in range(count):
        rng = random.Random(seed + i)
        n = rng.randint(*n_range)
        k_hi = min(k_range[1], n * (n - 1) // 2)
        k = rng.randint(k_range[0], k_hi)
        out.append(random_coloured_graph(n, k, seed=seed + i + 10_000))
    return out
