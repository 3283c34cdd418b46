"""Graph-agnostic pebbling: configurations, moves, exact solvability.

A pebbling move removes two pebbles from a vertex and puts one on a
neighbour. The exact solver is a depth-first search over reachable
configurations; it is only meant for small graphs and is budgeted.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from .seeding import as_rng

DEFAULT_BUDGET = 1_000_000
DEFAULT_ENUMERATION_CAP = 10_000_000

Move = tuple[int, int]


class PebblingError(ValueError):
    pass


class IllegalMove(PebblingError):
    pass


class BudgetExceeded(RuntimeError):
    """The exact search hit its state budget; the answer is unknown."""


class EnumerationCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class SimpleGraph:
    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.vertex_count < 1:
            raise PebblingError("graph needs at least one vertex")
        if len(self.adjacency) != self.vertex_count:
            raise PebblingError("adjacency must list every vertex")
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if v == u:
                    raise PebblingError(f"self-loop at {u}")
                if u not in self.adjacency[v]:
                    raise PebblingError(f"adjacency not symmetric at {u}-{v}")

    @classmethod
    def from_edges(cls, vertex_count: int, edges) -> SimpleGraph:
        nbrs: list[set[int]] = [set() for _ in range(vertex_count)]
        for u, v in edges:
            if u == v:
                raise PebblingError(f"self-loop at {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(vertex_count, tuple(tuple(sorted(s)) for s in nbrs))

    @classmethod
    def complete(cls, k: int) -> SimpleGraph:
        return cls.from_edges(k, [(u, v) for u in range(k) for v in range(u + 1, k)])

    @classmethod
    def path(cls, k: int) -> SimpleGraph:
        return cls.from_edges(k, [(u, u + 1) for u in range(k - 1)])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs if u < v]

    @cached_property
    def distances(self) -> tuple[tuple[int, ...], ...]:
        """All-pairs BFS distances; -1 marks unreachable pairs."""
        rows = []
        for s in range(self.vertex_count):
            dist = [-1] * self.vertex_count
            dist[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for v in self.adjacency[u]:
                    if dist[v] < 0:
                        dist[v] = dist[u] + 1
                        queue.append(v)
            rows.append(tuple(dist))
        return tuple(rows)

    def is_connected(self) -> bool:
        return min(self.distances[0]) >= 0


@dataclass(frozen=True)
class PebbleConfiguration:
    counts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        if any(c < 0 for c in self.counts):
            raise PebblingError("pebble counts must be non-negative")

    @property
    def n_vertices(self) -> int:
        return len(self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __getitem__(self, v: int) -> int:
        return self.counts[v]

    def dominates(self, other: PebbleConfiguration) -> bool:
        return all(a >= b for a, b in zip(self.counts, other.counts))

    def to_json(self) -> str:
        return json.dumps({"n_vertices": self.n_vertices, "counts": list(self.counts)})

    @classmethod
    def from_json(cls, text: str) -> PebbleConfiguration:
        data = json.loads(text)
        n = int(data["n_vertices"])
        counts = list(data.get("counts", []))
        if len(counts) > n:
            raise PebblingError("more counts than vertices")
        return cls(tuple(counts) + (0,) * (n - len(counts)))


def configuration_count(N: int, t: int) -> int:
    """Number of t-pebble configurations on N vertices, C(N+t-1, t)."""
    if N < 1:
        raise PebblingError("need N >= 1")
    if t < 0:
        raise PebblingError("need t >= 0")
    return math.comb(N + t - 1, t)


def partial_fisher_yates(population: int, k: int, rng) -> list[int]:
    """k distinct uniform indices from range(population), in draw order.

    Only displaced slots are stored, so memory is O(k).
    """
    if not 0 <= k <= population:
        raise PebblingError("sample larger than population")
    swapped: dict[int, int] = {}
    out = []
    randrange = rng.randrange
    for i in range(k):
        j = randrange(i, population)
        vj = swapped.get(j, j)
        swapped[j] = swapped.get(i, i)
        out.append(vj)
    return out


def sample_occupancy(N: int, t: int, rng) -> dict[int, int]:
    """Sparse uniform multiset of size t over N vertices (stars and bars).

    A uniform t-subset of the N+t-1 star/bar slots is drawn; the i-th
    smallest star position p sits behind p - i bars, which is its vertex.
    """
    if N < 1:
        raise PebblingError("need N >= 1")
    if t < 0:
        raise PebblingError("need t >= 0")
    stars = sorted(partial_fisher_yates(N + t - 1, t, rng))
    occ: dict[int, int] = {}
    for i, p in enumerate(stars):
        v = p - i
        occ[v] = occ.get(v, 0) + 1
    return occ


def sample_configuration(N: int, t: int, seed) -> PebbleConfiguration:
    """Uniform draw from all C(N+t-1, t) configurations (not balls-in-bins)."""
    occ = sample_occupancy(N, t, as_rng(seed))
    counts = [0] * N
    for v, c in occ.items():
        counts[v] = c
    return PebbleConfiguration(tuple(counts))


def enumerate_configurations(
    N: int, t: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> Iterator[PebbleConfiguration]:
    """Every t-pebble configuration once, lexicographically descending counts."""
    total = configuration_count(N, t)
    if total > cap:
        raise EnumerationCapExceeded(
            f"{total} configurations of {t} pebbles on {N} vertices exceeds cap {cap}"
        )
    return (PebbleConfiguration(c) for c in _compositions(N, t))


def _compositions(N: int, t: int) -> Iterator[tuple[int, ...]]:
    if N == 1:
        yield (t,)
        return
    for first in range(t, -1, -1):
        for rest in _compositions(N - 1, t - first):
            yield (first,) + rest


def apply_move(
    config: PebbleConfiguration, from_vertex: int, to_vertex: int, graph: SimpleGraph
) -> PebbleConfiguration:
    if not graph.has_edge(from_vertex, to_vertex):
        raise IllegalMove(f"not an edge: {from_vertex}-{to_vertex}")
    if config.counts[from_vertex] < 2:
        raise IllegalMove(
            f"illegal move: vertex {from_vertex} holds {config.counts[from_vertex]} pebble(s)"
        )
    counts = list(config.counts)
    counts[from_vertex] -= 2
    counts[to_vertex] += 1
    return PebbleConfiguration(tuple(counts))


def replay(config: PebbleConfiguration, moves: Sequence[Move], graph: SimpleGraph) -> PebbleConfiguration:
    for u, v in moves:
        config = apply_move(config, u, v, graph)
    return config


def root_weight(graph: SimpleGraph, config: PebbleConfiguration, root: int) -> float:
    dist = graph.distances[root]
    return sum(c * 2.0 ** -dist[v] for v, c in enumerate(config.counts) if c)


def weight_certificate_unsolvable(graph: SimpleGraph, config: PebbleConfiguration, root: int) -> bool:
    """True when sum c(v) 2^-d(v,root) < 1, which rules out reaching root.

    A move never increases this weight, so False only means "no certificate".
    """
    dist = graph.distances[root]
    D = max(dist)
    scaled = sum(c << (D - dist[v]) for v, c in enumerate(config.counts) if c)
    return scaled < (1 << D)


def find_root_plan(
    graph: SimpleGraph, config: PebbleConfiguration, root: int, budget: int = DEFAULT_BUDGET
) -> list[Move] | None:
    """Shortest-found move sequence putting a pebble on root, or None.

    Memoised depth-first search; states whose distance weight drops below one
    are cut, as are states dominated by a known dead state. Raises
    BudgetExceeded after ``budget`` expansions.
    """
    if len(config.counts) != graph.vertex_count:
        raise PebblingError("configuration does not match graph")
    if not graph.is_connected():
        raise PebblingError("exact solver needs a connected graph")
    if config.counts[root]:
        return []
    dist = graph.distances[root]
    D = max(dist)
    wt = [1 << (D - d) for d in dist]
    goal = 1 << D
    # moves towards the root first, then sideways, then away
    ordered = [
        sorted(graph.adjacency[u], key=lambda v: (dist[v] - dist[u], v))
        for u in range(graph.vertex_count)
    ]
    dead: set[tuple[int, ...]] = set()
    expanded = 0
    plan: list[Move] = []

    def dominated_by_dead(state: tuple[int, ...]) -> bool:
        for v in range(len(state)):
            bigger = state[:v] + (state[v] + 1,) + state[v + 1:]
            if bigger in dead:
                return True
        return False

    def search(state: tuple[int, ...], weight: int) -> bool:
        nonlocal expanded
        if state[root]:
            return True
        if weight < goal or state in dead:
            return False
        if dominated_by_dead(state):
            dead.add(state)
            return False
        expanded += 1
        if expanded > budget:
            raise BudgetExceeded(f"exact search exceeded {budget} states")
        for u in sorted(range(len(state)), key=lambda x: -dist[x]):
            if state[u] < 2:
                continue
            for v in ordered[u]:
                nxt = list(state)
                nxt[u] -= 2
                nxt[v] += 1
                plan.append((u, v))
                if search(tuple(nxt), weight - 2 * wt[u] + wt[v]):
                    return True
                plan.pop()
        dead.add(state)
        return False

    start = config.counts
    if search(start, sum(c * wt[v] for v, c in enumerate(start))):
        return list(plan)
    return None


def is_root_solvable_exact(
    graph: SimpleGraph, config: PebbleConfiguration, root: int, budget: int = DEFAULT_BUDGET
) -> bool:
    return find_root_plan(graph, config, root, budget) is not None


def is_solvable_exact(graph: SimpleGraph, config: PebbleConfiguration, budget: int = DEFAULT_BUDGET) -> bool:
    for r in range(graph.vertex_count):
        if config.counts[r]:
            continue
        if weight_certificate_unsolvable(graph, config, r):
            return False
        if find_root_plan(graph, config, r, budget) is None:
            return False
    return True


def pebbling_number(
    graph: SimpleGraph, budget: int = DEFAULT_BUDGET, cap: int = 1_000_000
) -> int:
    """Least t such that every t-pebble configuration is solvable.

    Solvability is monotone in t (a (t+1)-configuration dominates some
    t-configuration), so t is scanned upward; the scan stops at the first t
    with no unsolvable configuration. ``cap`` bounds the configurations
    examined per t.
    """
    t = 0
    while True:
        if all(is_solvable_exact(graph, c, budget) for c in enumerate_configurations(graph.vertex_count, t, cap)):
            return t
        t += 1
