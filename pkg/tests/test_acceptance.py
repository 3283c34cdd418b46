"""Acceptance criteria 1-11, each at its stated tolerance.

Every test prints a single PASS/FAIL line; the lines are repeated in the
terminal summary. Long-running ones are marked slow.
"""

import math
import random
import time
from collections import Counter
from fractions import Fraction

import pytest
from scipy.stats import chisquare

from pebblelab.bipartite import sample_multigraph
from pebblelab.core import (
    configuration_count,
    enumerate_configurations,
    is_solvable_exact,
    replay,
    sample_configuration,
    sample_occupancy,
)
from pebblelab.lab import (
    estimate_solvability,
    exact_probability,
    isotonic_smooth,
    model_transfer_experiment,
    path_bound,
    path_experiment,
    police_component_experiment,
    scaling_report,
)
from pebblelab.rook import (
    SOLVABLE,
    GridVertex,
    RookConfig,
    catch_plan,
    direct_catch,
    has_police_component,
    has_robocop,
    rook_graph,
    solvable_tiered,
)
from pebblelab.support import support_mean, support_moment, support_pmf, support_sizes, support_variance

from acceptance_log import record
from oracles import support_distribution

SEED = 20240601


def _rook(n, counts):
    grid = rook_graph(n)
    return RookConfig(n, tuple((grid.vertex(i), c) for i, c in enumerate(counts) if c))


def _claim_configs(n, per_t):
    """Exhaustive per t when cheaper than per_t samples, else per_t random draws."""
    N = n * n
    rng = random.Random(SEED + n)
    for t in range(1, 3 * N + 2):
        if configuration_count(N, t) <= per_t:
            yield from (c.counts for c in enumerate_configurations(N, t))
        else:
            for _ in range(per_t):
                yield sample_configuration(N, t, rng).counts


def test_criterion_01_claim_soundness():
    start = time.monotonic()
    checked = violations = 0
    for n in (2, 3):
        N = n * n
        per_t = -(-20_000 // (3 * N + 1))
        graph = rook_graph(n).graph
        for counts in _claim_configs(n, per_t):
            config = _rook(n, counts)
            roots = [rook_graph(n).vertex(i) for i in range(N)]
            claimed = (
                has_police_component(config)
                or has_robocop(config)
                or all(direct_catch(config, r) for r in roots)
            )
            tiered = solvable_tiered(config).status == SOLVABLE
            if not (claimed or tiered):
                continue
            checked += 1
            violations += not is_solvable_exact(graph, config.to_configuration())
    elapsed = time.monotonic() - start
    ok = violations == 0 and elapsed <= 600
    record(1, ok, f"{checked} claimed-solvable configurations, {violations} violations, {elapsed:.0f}s")
    assert ok


def test_criterion_02_plan_replay():
    rng = random.Random(SEED)
    plans = violations = 0
    while plans < 10_000:
        n = rng.randint(2, 10)
        N = n * n
        t = rng.randint(1, 3 * N + 1)
        occ = sample_occupancy(N, t, rng)
        grid = rook_graph(n)
        config = RookConfig(n, tuple((grid.vertex(i), k) for i, k in occ.items()))
        root = GridVertex(rng.randint(1, n), rng.randint(1, n))
        plan = catch_plan(config, root)
        if plan is None:
            continue
        plans += 1
        try:
            end = replay(config.to_configuration(), plan.index_moves(n), grid.graph)
            violations += end[grid.index(root)] < 1
        except ValueError:
            violations += 1
    ok = violations == 0
    record(2, ok, f"{plans} plans replayed, {violations} violations")
    assert ok


def test_criterion_03_support_law_exactness():
    start = time.monotonic()
    bad = []
    for N in range(1, 13):
        for m in range(1, 13):
            dist = support_distribution(N, m)
            pmf = {s: support_pmf(N, m, s) for s in range(0, m + 1)}
            q = Fraction(N, N + m - 1)
            mean = support_mean(N, m)
            enum_mean = sum(p * s for s, p in dist.items())
            enum_var = sum(p * s * s for s, p in dist.items()) - enum_mean**2
            checks = [
                sum(pmf.values()) == 1,
                all(pmf[s] == dist.get(s, 0) for s in pmf),
                mean == m * q == enum_mean == support_moment(N, m, 1),
            ]
            if N + m >= 3:
                checks.append(support_variance(N, m) == enum_var)
            if not all(checks):
                bad.append((N, m))
    elapsed = time.monotonic() - start
    ok = not bad and elapsed <= 60
    record(3, ok, f"144 (N, m) pairs exact, mismatches {bad}, {elapsed:.0f}s")
    assert ok


@pytest.mark.slow
def test_criterion_04_empirical_concentration():
    n, m, reps = 30, 300, 100_000
    N = n * n
    sizes = support_sizes(n, m, reps, SEED)
    mean = math.fsum(sizes) / reps
    var = math.fsum((z - mean) ** 2 for z in sizes) / (reps - 1)
    exact_var = float(support_variance(N, m))
    mq = float(support_mean(N, m))
    mean_ok = abs(mean - mq) <= 4 * math.sqrt(exact_var / reps)
    var_ok = abs(var - exact_var) <= 0.1 * exact_var
    ok = mean_ok and var_ok
    record(4, ok, f"mean {mean:.3f} vs mq {mq:.3f}, variance {var:.3f} vs {exact_var:.3f}")
    assert ok


@pytest.mark.slow
def test_criterion_05_monte_carlo_vs_exact():
    worst = 0.0
    unknown = 0.0
    for t in range(1, 13):
        rec = estimate_solvability(2, t, 100_000, SEED)
        worst = max(worst, abs(rec.solvable_lower - float(exact_probability(2, t))))
        unknown = max(unknown, rec.unknown_rate)
    ok = worst <= 0.01 and unknown == 0
    record(5, ok, f"max |lower - exact| = {worst:.4f}, max unknown rate {unknown}")
    assert ok


@pytest.mark.slow
def test_criterion_06_threshold_collapse():
    start = time.monotonic()
    report = scaling_report(
        [16, 32, 64, 128], 1000, SEED, extra_t=lambda n: (-(-n // 16), 16 * n)
    )
    big = report.results[-1]
    n = big.n
    lo_t, hi_t = -(-n // 16), 16 * n
    # smooth the upper bounds too; the pigeonhole endpoint is solvable for sure
    ts = sorted(big.records) + [3 * n * n + 1]
    upper = isotonic_smooth(
        [big.records[t].solvable_upper for t in ts[:-1]] + [1.0], [1000] * len(ts)
    )
    upper_at_lo = dict(zip(ts, upper))[lo_t]
    lower_at_hi = big.smoothed[hi_t]
    elapsed = time.monotonic() - start
    ok = report.spread <= 2 and lower_at_hi >= 0.9 and upper_at_lo <= 0.1
    ratios = ", ".join(f"{r[2]:.3f}" for r in report.rows)
    record(
        6,
        ok,
        f"t_half/n = [{ratios}], spread {report.spread:.3f}, "
        f"P(16n) >= {lower_at_hi:.3f}, P(n/16) <= {upper_at_lo:.3f}, {elapsed:.0f}s",
    )
    assert ok


@pytest.mark.slow
def test_criterion_07_police_component():
    n = 128
    m = math.ceil(n * math.log(n))
    rep = police_component_experiment(n, m, 200, SEED)
    target = m - float(support_mean(n * n, m))
    ok = rep.freq_police >= 0.9 and abs(rep.mean_excess - target) <= 0.05 * target
    record(7, ok, f"m={m}, freq_police {rep.freq_police:.3f}, excess {rep.mean_excess:.3f} vs {target:.3f}")
    assert ok


@pytest.mark.slow
def test_criterion_08_long_path():
    rep = path_experiment(256, 6, 50, SEED)
    ok = rep.bound == 276 == path_bound(256, 6) and rep.fraction >= 0.9
    record(8, ok, f"bound {rep.bound}, fraction {rep.fraction:.2f}, shortest {min(rep.lengths)}")
    assert ok


@pytest.mark.slow
def test_criterion_09_model_transfer():
    n = 64
    rep = model_transfer_experiment(n, 4 * n, "largest-component", 2000, SEED, alpha=0.5)
    freqs = (rep.freq_A, rep.freq_B, rep.freq_B_prime)
    gap = max(freqs) - min(freqs)
    ok = gap <= 0.05
    record(9, ok, f"M={rep.M}, frequencies A/B/B' = {freqs}, max gap {gap:.4f}")
    assert ok


def test_criterion_10_sampler_uniformity():
    rng = random.Random(SEED)
    reps = 100_000
    configs = Counter(sample_configuration(4, 3, rng).counts for _ in range(reps))
    graphs = Counter(sample_multigraph(2, 2, rng).multiplicity_map for _ in range(reps))
    p_config = chisquare([configs[c.counts] for c in enumerate_configurations(4, 3)]).pvalue
    p_graph = chisquare(list(graphs.values())).pvalue
    ok = len(configs) == 20 and len(graphs) == 10 and p_config > 0.001 and p_graph > 0.001
    record(10, ok, f"config p={p_config:.4f} ({len(configs)} cells), multigraph p={p_graph:.4f} ({len(graphs)} cells)")
    assert ok


def test_criterion_11_pigeonhole_ceiling():
    rng = random.Random(SEED)
    results = {}
    for n in (4, 8):
        N = n * n
        grid = rook_graph(n)
        solved = 0
        for _ in range(1000):
            occ = sample_occupancy(N, 3 * N + 1, rng)
            config = RookConfig(n, tuple((grid.vertex(i), k) for i, k in occ.items()))
            solved += solvable_tiered(config).status == SOLVABLE
        results[n] = solved
    ok = all(v == 1000 for v in results.values())
    record(11, ok, f"solvable counts {results} out of 1000")
    assert ok
