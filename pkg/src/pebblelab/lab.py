"""Monte Carlo experiments: solvability sweeps, threshold location, model transfer.

Every trial draws its own generator from a 64-bit mix of (seed, experiment
keys, trial index), so results do not depend on how trials are scheduled.
Unknown verdicts are never guessed: estimates are [lower, upper] brackets.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import isotonic_regression

from .bipartite import (
    components_of,
    excess_of,
    longest_path_dfs,
    sample_gnm,
    sample_gnp,
    sample_multigraph,
)
from .core import (
    DEFAULT_BUDGET,
    DEFAULT_ENUMERATION_CAP,
    PebblingError,
    enumerate_configurations,
    is_solvable_exact,
    sample_occupancy,
)
from .rook import EXACT_VERTEX_LIMIT, SOLVABLE, UNKNOWN, GridVertex, RookConfig, rook_graph, solvable_tiered
from .seeding import mix, trial_rng
from .support import q_of

Z95 = 1.959963984540054
LN16 = math.log(16)

SWEEP_FIELDS = [
    "n", "N", "t", "trials", "solvable_lower", "solvable_upper",
    "unknown_rate", "ci_low", "ci_high", "seed",
]


class ThresholdNotFound(RuntimeError):
    pass


def wilson_interval(successes: int, trials: int, z: float = Z95) -> tuple[float, float]:
    if trials <= 0:
        raise PebblingError("need at least one trial")
    p = successes / trials
    denom = 1 + z * z / trials
    centre = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


@dataclass(frozen=True)
class SweepRecord:
    n: int
    N: int
    t: int
    trials: int
    solvable_lower: float
    solvable_upper: float
    unknown_rate: float
    ci_low: float
    ci_high: float
    seed: int

    @classmethod
    def from_counts(cls, n: int, t: int, trials: int, solvable: int, unknown: int, seed: int) -> SweepRecord:
        lo, hi = wilson_interval(solvable, trials)
        return cls(
            n=n, N=n * n, t=t, trials=trials,
            solvable_lower=solvable / trials,
            solvable_upper=(solvable + unknown) / trials,
            unknown_rate=unknown / trials,
            ci_low=lo, ci_high=hi, seed=seed,
        )

    def csv_row(self) -> list[str]:
        return [
            str(self.n), str(self.N), str(self.t), str(self.trials),
            f"{self.solvable_lower:.6f}", f"{self.solvable_upper:.6f}",
            f"{self.unknown_rate:.6f}", f"{self.ci_low:.6f}", f"{self.ci_high:.6f}",
            str(self.seed),
        ]


def records_to_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_FIELDS)
    for r in records:
        w.writerow(r.csv_row())
    return buf.getvalue()


# ---------------------------------------------------------------------------
# solvability estimation


def judge(n: int, occ: dict[int, int], budget: int = DEFAULT_BUDGET) -> str:
    """All-roots tiered status of a sparse occupancy (cell index -> count)."""
    config = RookConfig(n, tuple((GridVertex(i // n + 1, i % n + 1), c) for i, c in occ.items()))
    return solvable_tiered(config, budget=budget).status


def _count_trials(n: int, t: int, seed: int, start: int, stop: int, budget: int) -> tuple[int, int]:
    N = n * n
    small = N <= EXACT_VERTEX_LIMIT
    memo: dict[tuple, str] = {}
    solvable = unknown = 0
    for k in range(start, stop):
        occ = sample_occupancy(N, t, trial_rng(seed, n, t, k))
        if small:
            key = tuple(sorted(occ.items()))
            status = memo.get(key)
            if status is None:
                status = memo[key] = judge(n, occ, budget)
        else:
            status = judge(n, occ, budget)
        if status == SOLVABLE:
            solvable += 1
        elif status == UNKNOWN:
            unknown += 1
    return solvable, unknown


def _chunks(trials: int, jobs: int) -> list[tuple[int, int]]:
    step = -(-trials // jobs)
    return [(a, min(a + step, trials)) for a in range(0, trials, step)]


def estimate_solvability(
    n: int, t: int, trials: int, seed: int, jobs: int = 1, budget: int = DEFAULT_BUDGET
) -> SweepRecord:
    """Fraction of uniform t-pebble configurations on K_n x K_n solvable for every root."""
    if trials < 1:
        raise PebblingError("need trials >= 1")
    if t < 0:
        raise PebblingError("need t >= 0")
    if jobs <= 1 or trials < 2 * jobs:
        solvable, unknown = _count_trials(n, t, seed, 0, trials, budget)
    else:
        with ProcessPoolExecutor(jobs) as pool:
            futures = [pool.submit(_count_trials, n, t, seed, a, b, budget) for a, b in _chunks(trials, jobs)]
            parts = [f.result() for f in futures]
        solvable = sum(p[0] for p in parts)
        unknown = sum(p[1] for p in parts)
    return SweepRecord.from_counts(n, t, trials, solvable, unknown, seed)


def exact_probability(n: int, t: int, cap: int = DEFAULT_ENUMERATION_CAP, budget: int = DEFAULT_BUDGET) -> Fraction:
    """Solvable fraction of all t-pebble configurations, by enumeration and exact search."""
    g = rook_graph(n).graph
    good = total = 0
    for config in enumerate_configurations(n * n, t, cap):
        total += 1
        good += is_solvable_exact(g, config, budget)
    return Fraction(good, total)


def default_t_grid(n: int) -> list[int]:
    """Geometric grid n 2^(k/2), k = -8..8, clipped to [1, 3N+1]."""
    top = 3 * n * n + 1
    return sorted({min(max(1, round(n * 2 ** (k / 2))), top) for k in range(-8, 9)})


def sweep(n_list, trials: int, seed: int, t_grids: dict | None = None, jobs: int = 1) -> list[SweepRecord]:
    out = []
    for n in n_list:
        grid = (t_grids or {}).get(n) or default_t_grid(n)
        out.extend(estimate_solvability(n, t, trials, seed, jobs) for t in grid)
    return out


def isotonic_smooth(values, weights=None) -> list[float]:
    """Pool-adjacent-violators fit, non-decreasing."""
    if len(values) == 0:
        return []
    w = None if weights is None else np.asarray(weights, dtype=float)
    return [float(x) for x in isotonic_regression(np.asarray(values, dtype=float), weights=w).x]


@dataclass
class ThresholdResult:
    n: int
    t_half: int
    records: dict[int, SweepRecord] = field(default_factory=dict)
    smoothed: dict[int, float] = field(default_factory=dict)

    @property
    def N(self) -> int:
        return self.n * self.n


def _smoothed_curve(points: dict[int, tuple[float, int]]) -> dict[int, float]:
    ts = sorted(points)
    fit = isotonic_smooth([points[t][0] for t in ts], [points[t][1] for t in ts])
    return dict(zip(ts, fit))


def locate_t_half(
    n: int,
    trials: int,
    seed: int,
    tolerance: int = 1,
    extra_t=(),
    jobs: int = 1,
    assume_pigeonhole: bool = True,
) -> ThresholdResult:
    """Smallest t with smoothed solvable_lower >= 1/2, by bisection on [1, 3N+1].

    Probes are placed at the geometric mean of the bracket (arithmetic once
    it is narrow). The curve is refitted with isotonic regression after each
    probe. t = 3N+1 is not sampled: by pigeonhole some cell then holds four
    pebbles, so it is solvable with probability one (``assume_pigeonhole=False``
    samples it instead). ``extra_t`` adds probes that take part in the
    smoothing.
    """
    lo_ci, hi_ci = wilson_interval(trials // 2, trials)
    if hi_ci - lo_ci >= 0.2:
        raise PebblingError("too few trials: Wilson interval at 1/2 is wider than 0.2")
    top = 3 * n * n + 1
    records: dict[int, SweepRecord] = {}
    points: dict[int, tuple[float, int]] = {}
    if assume_pigeonhole:
        points[top] = (1.0, trials)

    def probe(t: int) -> None:
        if t not in points:
            rec = estimate_solvability(n, t, trials, seed, jobs)
            records[t] = rec
            points[t] = (rec.solvable_lower, trials)

    probe(1)
    probe(top)
    for t in extra_t:
        if 1 <= t < top:
            probe(t)
    while True:
        curve = _smoothed_curve(points)
        ts = sorted(curve)
        crossing = next((i for i, t in enumerate(ts) if curve[t] >= 0.5), None)
        if crossing is None:
            raise ThresholdNotFound(f"estimates for n={n} never reach 1/2")
        hi = ts[crossing]
        if crossing == 0:
            return ThresholdResult(n, hi, records, curve)
        lo = ts[crossing - 1]
        if hi - lo <= tolerance:
            return ThresholdResult(n, hi, records, curve)
        mid = round(math.sqrt(lo * hi)) if hi > 2 * lo else (lo + hi) // 2
        probe(min(max(mid, lo + 1), hi - 1))


@dataclass
class ScalingReport:
    rows: list[tuple[int, int, float]]  # (n, t_half, t_half / n)
    results: list[ThresholdResult]

    @property
    def spread(self) -> float:
        ratios = [r[2] for r in self.rows]
        return max(ratios) / min(ratios)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "N", "t_half", "t_half_over_sqrtN"])
        for n, th, ratio in self.rows:
            w.writerow([n, n * n, th, f"{ratio:.6f}"])
        w.writerow(["max_over_min", "", "", f"{self.spread:.6f}"])
        return buf.getvalue()


def scaling_report(n_list, trials: int, seed: int, jobs: int = 1, extra_t=None) -> ScalingReport:
    """t_half / sqrt(N) for each n; a bounded spread is the sqrt(N) collapse."""
    results = []
    for n in n_list:
        extra = extra_t(n) if callable(extra_t) else ()
        results.append(locate_t_half(n, trials, seed, extra_t=extra, jobs=jobs))
    rows = [(r.n, r.t_half, r.t_half / r.n) for r in results]
    return ScalingReport(rows, results)


# ---------------------------------------------------------------------------
# random-graph experiments

PROPERTIES = ("largest-component", "path", "cop-pair")


def _has_property(graph, prop: str, n: int, alpha: float, length: int, seed: int) -> bool:
    if prop == "largest-component":
        comps = components_of(graph)
        return bool(comps) and comps[0].size >= alpha * 2 * n
    if prop == "path":
        return longest_path_dfs(graph, seed) >= length
    if prop == "cop-pair":
        return any(c.cop_edge_count >= 2 for c in components_of(graph))
    raise PebblingError(f"unknown property {prop!r}; expected one of {PROPERTIES}")


def round_half_up(x: Fraction) -> int:
    return math.floor(x + Fraction(1, 2))


@dataclass(frozen=True)
class TransferReport:
    n: int
    m: int
    M: int
    p: float
    property: str
    freq_A: float
    freq_B: float
    freq_B_prime: float
    trials: int
    seed: int

    def max_gap(self) -> float:
        f = (self.freq_A, self.freq_B, self.freq_B_prime)
        return max(f) - min(f)

    def to_dict(self) -> dict:
        return asdict(self)


def model_transfer_experiment(
    n: int,
    m: int,
    prop: str,
    trials: int,
    seed: int,
    alpha: float = 0.5,
    length: int | None = None,
) -> TransferReport:
    """Frequency of an increasing property under models A, B and B' at matched density.

    M = round(mq) simple edges for model B and p = M/N for model A.
    """
    if prop not in PROPERTIES:
        raise PebblingError(f"unknown property {prop!r}; expected one of {PROPERTIES}")
    N = n * n
    M = round_half_up(m * q_of(N, m)) if m else 0
    p = M / N
    if length is None:
        length = n
    hits = [0, 0, 0]
    for k in range(trials):
        graphs = (
            sample_gnp(n, p, mix(seed, n, m, k, 0)),
            sample_gnm(n, M, trial_rng(seed, n, m, k, 1)),
            sample_multigraph(n, m, trial_rng(seed, n, m, k, 2)),
        )
        for slot, g in enumerate(graphs):
            hits[slot] += _has_property(g, prop, n, alpha, length, mix(seed, n, m, k, 3))
    return TransferReport(n, m, M, p, prop, hits[0] / trials, hits[1] / trials, hits[2] / trials, trials, seed)


def gnm_property_curve(n: int, M_values, prop: str, trials: int, seed: int, alpha: float = 0.5) -> list[float]:
    """Frequency of ``prop`` under model B for each M, on one seed schedule."""
    return [
        sum(
            _has_property(sample_gnm(n, M, trial_rng(seed, n, k)), prop, n, alpha, n, mix(seed, n, k, 3))
            for k in range(trials)
        ) / trials
        for M in M_values
    ]


@dataclass(frozen=True)
class PoliceReport:
    n: int
    m: int
    alpha: float
    trials: int
    seed: int
    freq_large_component: float
    freq_police: float
    mean_excess: float

    def to_dict(self) -> dict:
        return asdict(self)


def police_component_experiment(n: int, m: int, trials: int, seed: int, alpha: float | None = None) -> PoliceReport:
    """How often the largest component of B'(n, m) is big and holds two cop edges."""
    if alpha is None:
        alpha = float(q_of(n * n, m)) / 4 if m else 0.25
    large = police = 0
    excess = 0
    for k in range(trials):
        g = sample_multigraph(n, m, trial_rng(seed, n, m, k))
        comps = components_of(g)
        excess += excess_of(g)
        if comps:
            large += comps[0].size >= alpha * 2 * n
            police += comps[0].cop_edge_count >= 2
    return PoliceReport(n, m, alpha, trials, seed, large / trials, police / trials, excess / trials)


def path_bound(n: int, beta: float) -> int:
    """ceil((1 - ln 16 / beta) 2n)."""
    return math.ceil((1 - LN16 / beta) * 2 * n)


@dataclass(frozen=True)
class PathReport:
    n: int
    beta: float
    trials: int
    seed: int
    bound: int
    fraction: float
    lengths: tuple[int, ...]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["lengths"] = list(self.lengths)
        return d


def path_experiment(n: int, beta: float, trials: int, seed: int) -> PathReport:
    """Fraction of B(n, beta/n) draws whose DFS path reaches (1 - ln16/beta) 2n edges."""
    if beta <= LN16:
        raise PebblingError("beta must exceed ln 16")
    bound = path_bound(n, beta)
    lengths = tuple(
        longest_path_dfs(sample_gnp(n, beta / n, mix(seed, n, k, 0)), mix(seed, n, k, 1))
        for k in range(trials)
    )
    frac = sum(1 for x in lengths if x >= bound) / trials
    return PathReport(n, beta, trials, seed, bound, frac, lengths)
