import random

import pytest

from coordrig import (
    OracleParams,
    build,
    check_k1,
    check_k2,
    check_union,
    decide_generic_coordinated_rigidity,
    decide_plane,
    henneberg_k1_sample,
    rainbow_pair_k2,
    subgraph_by_colours,
    transversal_rank,
    union_rank_d2,
)
from coordrig.corpus import random_corpus
from coordrig.pebble import PLANE, PebbleGame

from oracles import brute_circuits, brute_union_rank

K4_ONE_COLOURED = build(
    4, 1, [(0, 1, 1), (0, 2, 0), (0, 3, 0), (1, 2, 0), (1, 3, 0), (2, 3, 0)]
)


def test_transversal_rank_cases(seven_rigid_k2):
    g = seven_rigid_k2
    assert transversal_rank(g, g.colour_class(0)) == 0
    assert transversal_rank(g, [(0, 1), (0, 4)]) == 2  # one of each class
    assert transversal_rank(g, [(0, 1), (1, 4), (4, 6)]) == 2  # 1,1,2


def test_union_rank_k4_one_class():
    rep = union_rank_d2(K4_ONE_COLOURED)
    assert rep.union_rank == 6 == 2 * 4 - 3 + 1
    assert rep.deficiency == 0


def test_union_rank_fixtures(seven_rigid_k2, twin_blocks_k2, nested_circuit_k2):
    assert union_rank_d2(seven_rigid_k2).union_rank == 13
    rep_a = union_rank_d2(twin_blocks_k2)
    assert (rep_a.union_rank, rep_a.deficiency) == (14, 1)
    rep_b = union_rank_d2(nested_circuit_k2)
    assert (rep_b.union_rank, rep_b.deficiency) == (12, 1)


def test_union_report_invariants(seven_rigid_k2, twin_blocks_k2):
    for g in (seven_rigid_k2, twin_blocks_k2):
        rep = union_rank_d2(g)
        part1, part2 = set(rep.independent_rigidity), set(rep.transversal)
        assert not part1 & part2
        assert len(part1) + len(part2) == rep.union_rank
        game = PebbleGame(g.n, PLANE)
        assert all(game.try_insert(e) for e in sorted(part1))
        colours = [g.colour_of(e) for e in part2]
        assert 0 not in colours
        assert len(set(colours)) == len(colours)


def test_union_rank_matches_brute_force_formula():
    for idx, g in enumerate(random_corpus(40, seed=9009, n_range=(3, 6))):
        if g.m > 10:
            continue
        assert union_rank_d2(g).union_rank == brute_union_rank(g), f"instance {idx}"


def test_union_rank_monotone_under_edge_addition():
    rng = random.Random(777)
    for g in random_corpus(30, seed=5500, n_range=(4, 7)):
        pairs = [
            (u, v)
            for u in range(g.n)
            for v in range(u + 1, g.n)
            if (u, v) not in set(g.edges)
        ]
        if not pairs:
            continue
        extra = rng.choice(pairs)
        bigger = build(
            g.n,
            g.k,
            [(u, v, c) for (u, v), c in zip(g.edges, g.colours)] + [(*extra, 0)],
        )
        assert union_rank_d2(bigger).union_rank >= union_rank_d2(g).union_rank


def test_check_k1_quad_rigid(quad_rigid_k1):
    v = check_k1(quad_rigid_k1)
    assert v.rigid and v.isostatic
    assert v.method == "k1-laman"
    assert v.certificate["rainbow_tuple"] == [[0, 1]]
    circuit = {tuple(e) for e in v.certificate["diagnosis"]["circuit"]}
    assert circuit == {(u, v) for u in range(4) for v in range(u + 1, 4)}


def test_check_k1_quad_flex(quad_flex_k1):
    v = check_k1(quad_flex_k1)
    assert not v.rigid
    assert v.witness == "not-laman-plus-1"


def test_check_k1_uncoloured_circuit_rejected():
    # K4 block with a pendant vertex: the unique circuit is uncoloured and
    # the one coloured edge is a bridge, so the framework is flexible
    g = build(
        5,
        1,
        [(0, 1, 0), (0, 2, 0), (0, 3, 0), (1, 2, 0), (1, 3, 0), (2, 3, 0),
         (0, 4, 1), (1, 4, 0)],
    )
    v = check_k1(g)
    assert not v.rigid
    assert v.witness == "class-all-bridges:1"
    numeric = decide_generic_coordinated_rigidity(g, OracleParams(seed=3))
    assert numeric.decision == "flexible"


def test_check_k1_independence_report(quad_rigid_k1, quad_flex_k1):
    assert check_k1(quad_rigid_k1).certificate["diagnosis"]["independent"]
    assert check_k1(quad_flex_k1).certificate["diagnosis"]["independent"]
    # overbraced: K4 plus coloured edge on a 5th vertex pair, one circuit + G0 fine
    g = build(
        5, 1,
        [(0, 1, 0), (0, 2, 0), (0, 3, 0), (1, 2, 0), (1, 3, 0), (2, 3, 1),
         (0, 4, 0), (1, 4, 1)],
    )
    rep = check_k1(g).certificate["diagnosis"]
    assert rep["independent"]  # one circuit, G0 sparse


def test_check_k1_wrong_k(seven_rigid_k2):
    with pytest.raises(ValueError):
        check_k1(seven_rigid_k2)


def test_check_k2_seven_fixture(seven_rigid_k2):
    v = check_k2(seven_rigid_k2)
    assert v.rigid and v.isostatic
    assert v.certificate["rainbow_tuple"] == [[0, 1], [4, 6]]
    diag = v.certificate["diagnosis"]
    assert diag["laman_plus_2"]
    assert diag["g0_laman_sparse"] and diag["g1_22_sparse"] and diag["g2_22_sparse"]
    assert diag["failing"] == []


def test_check_k2_twin_blocks(twin_blocks_k2):
    v = check_k2(twin_blocks_k2)
    assert not v.rigid
    assert v.witness == "class-all-bridges:2"
    diag = v.certificate["diagnosis"]
    assert diag["class_redundant"]["2"] == []
    assert set(map(tuple, (tuple(e) for e in diag["class_bridges"]["2"]))) == {
        (0, 4), (1, 5), (2, 6),
    }


def test_check_k2_nested_circuit(nested_circuit_k2):
    v = check_k2(nested_circuit_k2)
    assert not v.rigid
    assert v.witness == "G0-not-sparse"
    diag = v.certificate["diagnosis"]
    circuit = {tuple(e) for e in diag["g0_circuit"]}
    g0 = subgraph_by_colours(nested_circuit_k2, {0})
    assert circuit == set(g0.edges)  # the block's unique circuit
    assert all(v <= 5 for e in circuit for v in e)


def test_check_k2_wrong_k(quad_rigid_k1):
    with pytest.raises(ValueError):
        check_k2(quad_rigid_k1)


def test_rainbow_pair_seven_fixture(seven_rigid_k2):
    assert rainbow_pair_k2(seven_rigid_k2) == ((0, 1), (4, 6))


def test_rainbow_pair_none_fixtures(twin_blocks_k2, nested_circuit_k2):
    assert rainbow_pair_k2(twin_blocks_k2) is None
    assert rainbow_pair_k2(nested_circuit_k2) is None


def shared_edge_monochromatic_graph():
    # two K4 blocks glued along an edge (so their circuits share it), one
    # coloured-1 edge inside each block, and a pendant vertex carrying the
    # only class-2 edge
    return build(
        7,
        2,
        [(0, 1, 1), (0, 2, 0), (0, 3, 0), (1, 2, 0), (1, 3, 0), (2, 3, 0),
         (2, 4, 0), (2, 5, 0), (3, 4, 0), (3, 5, 0), (4, 5, 1),
         (0, 6, 2), (1, 6, 0)],
    )


def test_shared_monochromatic_circuits_rejected():
    g = shared_edge_monochromatic_graph()
    assert rainbow_pair_k2(g) is None
    v = check_k2(g)
    assert not v.rigid
    diag = v.certificate["diagnosis"]
    assert not diag["g1_22_sparse"]
    assert "G1-not-22-sparse" in diag["failing"]
    numeric = decide_generic_coordinated_rigidity(g, OracleParams(seed=6))
    assert numeric.decision == "flexible"


def monochromatic_circuits(g, colour):
    gi = subgraph_by_colours(g, {0, colour})
    coloured = set(g.colour_class(colour))
    out = []
    for c in brute_circuits(gi.edges, g.n):
        if set(c) & coloured:
            out.append(set(c))
    return out


def test_monochromatic_circuits_edge_disjoint_on_accepted(seven_rigid_k2):
    # every instance the two-class decider accepts as isostatic (the coloured
    # sparsity conditions) keeps same-colour monochromatic circuits pairwise
    # edge-disjoint; rigid-but-overbraced instances are exempt
    accepted = [seven_rigid_k2]
    for g in random_corpus(150, seed=2710, n_range=(4, 7), k_range=(2, 2)):
        if g.k == 2 and check_k2(g).isostatic:
            accepted.append(g)
    assert len(accepted) >= 2
    for g in accepted:
        for colour in (1, 2):
            circuits = monochromatic_circuits(g, colour)
            for i in range(len(circuits)):
                for j in range(i + 1, len(circuits)):
                    assert not circuits[i] & circuits[j]
    # and the glued-blocks counterexample does violate it
    bad = shared_edge_monochromatic_graph()
    circuits = monochromatic_circuits(bad, 1)
    assert any(
        circuits[i] & circuits[j]
        for i in range(len(circuits))
        for j in range(i + 1, len(circuits))
    )


def test_check_union_matches_specialized(quad_rigid_k1, seven_rigid_k2):
    for g in (quad_rigid_k1, seven_rigid_k2):
        assert check_union(g).decision == decide_plane(g).decision


def test_union_certificate_is_rainbow(seven_rigid_k2):
    v = check_union(seven_rigid_k2)
    tup = [tuple(e) for e in v.certificate["rainbow_tuple"]]
    assert [seven_rigid_k2.colour_of(e) for e in tup] == [1, 2]


def test_henneberg_base_case():
    g = henneberg_k1_sample(4, seed=0)
    assert g.n == 4 and g.m == 6
    assert check_k1(g).isostatic


def test_henneberg_one_step():
    g = henneberg_k1_sample(5, seed=1)
    assert g.n == 5 and g.m == 8 == 2 * 5 - 2
    assert check_k1(g).isostatic


def test_henneberg_rejects_tiny():
    with pytest.raises(ValueError):
        henneberg_k1_sample(3, seed=0)


def test_henneberg_smoke_corpus():
    for i in range(12):
        n = 4 + (i % 6)
        g = henneberg_k1_sample(n, seed=100 + i)
        assert g.m == 2 * g.n - 2
        v = check_k1(g)
        assert v.rigid and v.isostatic
        numeric = decide_generic_coordinated_rigidity(
            g, OracleParams(d=2, trials=1, seed=500 + i)
        )
        assert numeric.rigid


def test_union_single_vertex_is_rigid():
    g = build(1, 0, [])
    v = check_union(g)
    assert v.rigid


def test_decider_agreement_small_corpus():
    for idx, g in enumerate(random_corpus(60, seed=31415)):
        plane = decide_plane(g)
        numeric = decide_generic_coordinated_rigidity(
            g, OracleParams(d=2, trials=1, seed=idx)
        )
        union = check_union(g)
        assert plane.decision == numeric.decision == union.decision, f"instance {idx}"
        if plane.rigid:
            assert union.ranks["union_rank"] == 2 * g.n - 3 + g.k
        if plane.isostatic:
            assert g.m == 2 * g.n - 3 + g.k
