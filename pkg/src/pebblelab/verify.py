"""Quick invariant checks behind ``pebblelab verify``."""

from __future__ import annotations

import itertools
from fractions import Fraction

from .bipartite import components_of, config_to_multigraph, multigraph_to_config
from .core import enumerate_configurations, is_solvable_exact, replay, sample_occupancy
from .rook import (
    RookConfig,
    catch_plan,
    citizen_components,
    has_police_component,
    has_robocop,
    rook_graph,
    verify_line_graph_iso,
)
from .seeding import trial_rng
from .support import support_mean, support_moment, support_pmf, support_variance


def _rook(n: int, occ: dict[int, int]) -> RookConfig:
    grid = rook_graph(n)
    return RookConfig(n, tuple((grid.vertex(i), c) for i, c in occ.items()))


def check_line_graph(max_n: int = 6) -> bool:
    return all(verify_line_graph_iso(n) for n in range(1, max_n + 1))


def check_claim_soundness(n: int = 2) -> bool:
    """Every configuration with a sufficient condition is exactly solvable."""
    grid = rook_graph(n)
    for t in range(1, 3 * grid.N + 2):
        for config in enumerate_configurations(grid.N, t):
            rc = RookConfig.from_configuration(n, config)
            fires = has_robocop(rc) or has_police_component(rc)
            fires = fires or all(catch_plan(rc, v) is not None for v in grid.vertices())
            if fires and not is_solvable_exact(grid.graph, config):
                return False
    return True


def check_plan_replay(samples: int = 500, seed: int = 1) -> bool:
    for k in range(samples):
        rng = trial_rng(seed, k)
        n = rng.randint(2, 8)
        grid = rook_graph(n)
        rc = _rook(n, sample_occupancy(grid.N, rng.randint(1, 3 * n), rng))
        root = grid.vertex(rng.randrange(grid.N))
        plan = catch_plan(rc, root)
        if plan is None:
            continue
        end = replay(rc.to_configuration(), plan.index_moves(n), grid.graph)
        if end[grid.index(root)] < 1:
            return False
    return True


def check_support_law(max_N: int = 8, max_m: int = 8) -> bool:
    for N, m in itertools.product(range(1, max_N + 1), range(1, max_m + 1)):
        if sum(support_pmf(N, m, s) for s in range(m + 1)) != 1:
            return False
        sizes = [len(set(c)) for c in itertools.combinations_with_replacement(range(N), m)]
        mean = Fraction(sum(sizes), len(sizes))
        second = Fraction(sum(z * z for z in sizes), len(sizes))
        if mean != support_mean(N, m) or support_moment(N, m, 1) != mean:
            return False
        if support_moment(N, m, 2) != second:
            return False
        if N + m >= 3 and support_variance(N, m) != second - mean * mean:
            return False
    return True


def check_correspondence(samples: int = 300, seed: int = 2) -> bool:
    for k in range(samples):
        rng = trial_rng(seed, k)
        n = rng.randint(1, 7)
        rc = _rook(n, sample_occupancy(n * n, rng.randint(0, 4 * n), rng))
        g = config_to_multigraph(rc)
        if multigraph_to_config(g) != rc.to_configuration():
            return False
        a = sorted((c.size, c.cop_count) for c in citizen_components(rc))
        b = sorted((c.support_edge_count, c.cop_edge_count) for c in components_of(g))
        if a != b:
            return False
    return True


CHECKS = {
    "line-graph-isomorphism": check_line_graph,
    "claim-soundness-n2": check_claim_soundness,
    "plan-replay": check_plan_replay,
    "support-law-exact": check_support_law,
    "multigraph-correspondence": check_correspondence,
}


def run_all() -> list[tuple[str, bool]]:
    return [(name, bool(fn())) for name, fn in CHECKS.items()]

