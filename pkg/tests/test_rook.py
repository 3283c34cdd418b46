import random

import pytest
from hypothesis import given, strategies as st

from pebblelab.core import PebblingError, is_root_solvable_exact, is_solvable_exact, replay, sample_occupancy
from pebblelab.rook import (
    SOLVABLE,
    UNKNOWN,
    UNSOLVABLE,
    GridVertex,
    RookConfig,
    Verdict,
    catch_plan,
    citizen_components,
    classify,
    direct_catch,
    has_police_component,
    has_robocop,
    rook_graph,
    sees,
    solvable_tiered,
    verify_line_graph_iso,
)

from oracles import brute_solvable, reachable_root, rook_adjacency

CHAIN = RookConfig.from_mapping(3, {(1, 1): 2, (1, 2): 1, (3, 2): 2})
ISOLATED_COPS = RookConfig.from_mapping(2, {(1, 1): 2, (2, 2): 2})


def random_config(rng, n, t):
    grid = rook_graph(n)
    occ = sample_occupancy(grid.N, t, rng)
    return RookConfig(n, tuple((grid.vertex(i), c) for i, c in occ.items()))


def test_rook_graph_shape():
    g2 = rook_graph(2)
    assert g2.N == 4 and all(len(a) == 2 for a in g2.graph.adjacency)
    g3 = rook_graph(3)
    assert g3.N == 9 and all(len(a) == 4 for a in g3.graph.adjacency)
    assert len(g3.graph.edges()) == 18 == g3.edge_count


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_rook_graph_matches_coordinate_rule(n):
    g = rook_graph(n)
    adj = rook_adjacency(n)
    assert [sorted(a) for a in g.graph.adjacency] == [sorted(a) for a in adj]
    assert len(g.graph.edges()) == n * n * (n - 1)


def test_sees():
    assert sees((1, 2), (1, 5))
    assert sees((2, 3), (5, 3))
    assert not sees((1, 2), (3, 4))
    with pytest.raises(PebblingError):
        sees((1, 1), (1, 1))


def test_classify():
    c = RookConfig.from_mapping(3, {(1, 1): 2, (1, 2): 1})
    p = classify(c)
    assert p.cops == {GridVertex(1, 1)} and p.citizens == {GridVertex(1, 2)}
    assert len(p.robbers) == 7
    empty = classify(RookConfig(3))
    assert len(empty.robbers) == 9 and not empty.cops and not empty.citizens


@given(st.integers(1, 6), st.integers(0, 30), st.integers(0, 10**9))
def test_classify_partitions(n, t, seed):
    c = random_config(random.Random(seed), n, t)
    p = classify(c)
    assert len(p.cops) + len(p.citizens) + len(p.robbers) == n * n
    assert not (p.cops & p.citizens or p.cops & p.robbers or p.citizens & p.robbers)
    comps = citizen_components(c)
    assert sum(k.cop_count for k in comps) == len(p.cops)


def test_robocop():
    assert has_robocop(RookConfig.from_mapping(3, {(2, 2): 4}))
    assert not has_robocop(RookConfig.from_mapping(3, {(2, 2): 3, (1, 1): 3}))
    assert not has_robocop(RookConfig(3))


def test_direct_catch():
    assert direct_catch(RookConfig.from_mapping(3, {(2, 2): 1}), (2, 2))
    assert direct_catch(RookConfig.from_mapping(3, {(2, 1): 2}), (2, 3))
    assert not direct_catch(RookConfig.from_mapping(3, {(2, 1): 1}), (2, 3))


def test_citizen_components_examples():
    comps = citizen_components(CHAIN)
    assert len(comps) == 1 and comps[0].size == 3 and comps[0].cop_count == 2
    comps = citizen_components(ISOLATED_COPS)
    assert [(k.size, k.cop_count) for k in comps] == [(1, 1), (1, 1)]
    assert citizen_components(RookConfig(4)) == []


def test_police_component_examples():
    assert has_police_component(CHAIN)
    assert not has_police_component(ISOLATED_COPS)
    assert is_solvable_exact(rook_graph(2).graph, ISOLATED_COPS.to_configuration())
    assert not has_police_component(RookConfig.from_mapping(4, {(2, 3): 3}))


def replays_to_root(config, plan, root):
    grid = config.grid
    end = replay(config.to_configuration(), plan.index_moves(config.n), grid.graph)
    return end[grid.index(root)] >= 1


def test_catch_plan_chain_example():
    plan = catch_plan(CHAIN, (2, 3))
    assert plan.to_list() == [[1, 1, 1, 3], [3, 2, 1, 2], [1, 2, 1, 3], [1, 3, 2, 3]]
    assert replays_to_root(CHAIN, plan, (2, 3))


def test_catch_plan_direct_and_robocop():
    c = RookConfig.from_mapping(4, {(2, 1): 2})
    assert len(catch_plan(c, (2, 4))) == 1
    assert len(catch_plan(RookConfig.from_mapping(4, {(2, 4): 1}), (2, 4))) == 0
    robo = RookConfig.from_mapping(4, {(1, 1): 4})
    plan = catch_plan(robo, (3, 3))
    assert len(plan) == 3 and replays_to_root(robo, plan, (3, 3))


def test_catch_plan_absent_without_condition():
    assert catch_plan(RookConfig.from_mapping(3, {(1, 1): 1, (2, 2): 1}), (3, 3)) is None


def test_catch_plan_prefers_smallest_cop():
    c = RookConfig.from_mapping(4, {(1, 4): 2, (3, 4): 2})
    assert catch_plan(c, (2, 4)).moves == ((GridVertex(1, 4), GridVertex(2, 4)),)


@given(st.integers(2, 7), st.integers(1, 25), st.integers(0, 10**9))
def test_every_plan_replays(n, t, seed):
    rng = random.Random(seed)
    c = random_config(rng, n, t)
    root = rook_graph(n).vertex(rng.randrange(n * n))
    plan = catch_plan(c, root)
    if plan is not None:
        assert replays_to_root(c, plan, root)


def test_tiered_examples():
    v = solvable_tiered(CHAIN)
    assert v.status == SOLVABLE and v.tier == "police"
    one = RookConfig.from_mapping(3, {(2, 2): 1})
    assert solvable_tiered(one).status == UNSOLVABLE
    stuck = RookConfig.from_mapping(3, {(1, 1): 2, (2, 2): 2})
    v = solvable_tiered(stuck, (3, 3))
    assert (v.status, v.tier) == (UNSOLVABLE, "exact")
    assert not reachable_root(rook_adjacency(3), stuck.to_configuration().counts, 8)


def test_tiered_unknown_beyond_exact_limit():
    # a single cop with a far robber on a big grid: no tier decides
    c = RookConfig.from_mapping(10, {(1, 1): 2, (1, 2): 1, (1, 3): 1})
    v = solvable_tiered(c)
    assert v.status == UNKNOWN
    assert solvable_tiered(c, exact_limit=100).status in (SOLVABLE, UNSOLVABLE)


def test_degenerate_single_cell():
    assert solvable_tiered(RookConfig.from_mapping(1, {(1, 1): 1})).status == SOLVABLE
    assert solvable_tiered(RookConfig(1)).status == UNSOLVABLE


@pytest.mark.parametrize("n", [2, 3])
def test_tiers_agree_with_unpruned_bfs(n):
    adj = rook_adjacency(n)
    rng = random.Random(100 + n)
    for _ in range(400):
        c = random_config(rng, n, rng.randint(0, 3 * n * n + 1))
        v = solvable_tiered(c)
        assert v.status != UNKNOWN
        assert (v.status == SOLVABLE) == brute_solvable(adj, c.to_configuration().counts)


def test_verdict_json_shape():
    d = solvable_tiered(CHAIN, (2, 3)).to_dict()
    assert d["verdict"] == "solvable" and d["tier"] == "police" and len(d["plan"]) == 4
    assert Verdict(UNKNOWN, "none").to_dict() == {"verdict": "unknown", "tier": "none", "plan": None}


def test_rook_json_round_trip():
    assert RookConfig.from_json(CHAIN.to_json()) == CHAIN
    assert RookConfig.from_json('{"n": 3, "pebbles": [[1,1,2],[1,2,1],[3,2,2]]}') == CHAIN


def test_out_of_grid_rejected():
    with pytest.raises(PebblingError):
        RookConfig.from_mapping(2, {(3, 1): 1})


@pytest.mark.parametrize("n", [1, 2, 3, 4, 8])
def test_line_graph_isomorphism(n):
    assert verify_line_graph_iso(n)


def test_isolated_cops_root_exact():
    # the pair of isolated cops on K2 x K2 catches each empty cell directly
    for r in [(1, 2), (2, 1)]:
        assert is_root_solvable_exact(rook_graph(2).graph, ISOLATED_COPS.to_configuration(), rook_graph(2).index(r))
