"""Random bipartite graphs and multigraphs on n + n vertices.

Model A: each of the N = n^2 edges independently with probability p.
Model B: a uniform edge set of exactly M edges.
Model B': a uniform multigraph with m edges counted with multiplicity, which
is the same object as a uniform m-pebble configuration on K_n x K_n (cell
(i, j) holding k pebbles <-> edge (left i, right j) with multiplicity k).

Left vertex i and right vertex j are 1-based; internally left i is node
i - 1 and right j is node n + j - 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .core import PebbleConfiguration, PebblingError, partial_fisher_yates, sample_occupancy
from .rook import GridVertex, RookConfig
from .seeding import as_rng

Edge = tuple[int, int]


@dataclass(frozen=True)
class BipartiteSimpleGraph:
    n: int
    edges: frozenset[Edge]

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset((int(i), int(j)) for i, j in self.edges))
        for i, j in self.edges:
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise PebblingError(f"edge {(i, j)} outside K_{{{self.n},{self.n}}}")

    @property
    def N(self) -> int:
        return self.n * self.n

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def multiplicity(self, i: int, j: int) -> int:
        return 1 if (i, j) in self.edges else 0

    def weighted_edges(self) -> Iterable[tuple[int, int, int]]:
        for i, j in self.edges:
            yield i, j, 1

    @classmethod
    def complete(cls, n: int) -> BipartiteSimpleGraph:
        return cls(n, frozenset((i, j) for i in range(1, n + 1) for j in range(1, n + 1)))


@dataclass(frozen=True)
class BipartiteMultigraph:
    """Sparse multiplicities; only edges with multiplicity >= 1 are kept."""

    n: int
    multiplicity_map: tuple[tuple[Edge, int], ...] = ()

    def __post_init__(self):
        merged: dict[Edge, int] = {}
        for (i, j), k in self.multiplicity_map:
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise PebblingError(f"edge {(i, j)} outside K_{{{self.n},{self.n}}}")
            if k < 0:
                raise PebblingError("multiplicities must be non-negative")
            if k:
                merged[(int(i), int(j))] = merged.get((i, j), 0) + int(k)
        object.__setattr__(self, "multiplicity_map", tuple(sorted(merged.items())))

    @classmethod
    def from_mapping(cls, n: int, mult) -> BipartiteMultigraph:
        return cls(n, tuple(mult.items()))

    @property
    def N(self) -> int:
        return self.n * self.n

    @property
    def total_edges(self) -> int:
        return sum(k for _, k in self.multiplicity_map)

    def multiplicity(self, i: int, j: int) -> int:
        return dict(self.multiplicity_map).get((i, j), 0)

    def weighted_edges(self) -> Iterable[tuple[int, int, int]]:
        for (i, j), k in self.multiplicity_map:
            yield i, j, k

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "edges": [[i, j, k] for (i, j), k in self.multiplicity_map]})

    @classmethod
    def from_json(cls, text: str) -> BipartiteMultigraph:
        data = json.loads(text)
        return cls(int(data["n"]), tuple(((i, j), k) for i, j, k in data.get("edges", [])))


@dataclass(frozen=True)
class ComponentReport:
    left: tuple[int, ...]
    right: tuple[int, ...]
    support_edge_count: int
    cop_edge_count: int

    @property
    def size(self) -> int:
        return len(self.left) + len(self.right)

    def to_dict(self) -> dict:
        return {
            "left": list(self.left),
            "right": list(self.right),
            "support_edge_count": self.support_edge_count,
            "cop_edge_count": self.cop_edge_count,
            "size": self.size,
        }


def config_to_multigraph(config) -> BipartiteMultigraph:
    """Cell (i, j) with k pebbles becomes edge (left i, right j) of multiplicity k."""
    if isinstance(config, RookConfig):
        return BipartiteMultigraph(config.n, tuple(((v.row, v.col), c) for v, c in config.pebbles))
    n = _isqrt_exact(config.n_vertices)
    return config_to_multigraph(RookConfig.from_configuration(n, config))


def multigraph_to_config(graph: BipartiteMultigraph) -> PebbleConfiguration:
    return multigraph_to_rook(graph).to_configuration()


def multigraph_to_rook(graph: BipartiteMultigraph) -> RookConfig:
    return RookConfig(graph.n, tuple((GridVertex(i, j), k) for (i, j), k in graph.multiplicity_map))


def _isqrt_exact(N: int) -> int:
    n = int(round(N ** 0.5))
    if n * n != N:
        raise PebblingError(f"{N} vertices is not a square grid")
    return n


def support_of(graph) -> BipartiteSimpleGraph:
    return BipartiteSimpleGraph(graph.n, frozenset((i, j) for i, j, k in graph.weighted_edges() if k >= 1))


def support_size(graph) -> int:
    return sum(1 for _, _, k in graph.weighted_edges() if k >= 1)


def excess_of(graph) -> int:
    return sum(k - 1 for _, _, k in graph.weighted_edges() if k >= 1)


def sample_gnp(n: int, p: float, seed) -> BipartiteSimpleGraph:
    """Model A. Uses numpy's PCG64 stream seeded by ``seed``."""
    if not 0.0 <= p <= 1.0:
        raise PebblingError("p must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    hits = np.flatnonzero(rng.random(n * n) < p)
    return BipartiteSimpleGraph(n, frozenset((int(k) // n + 1, int(k) % n + 1) for k in hits))


def sample_gnm(n: int, M: int, seed) -> BipartiteSimpleGraph:
    """Model B: partial Fisher-Yates over the N edge slots."""
    N = n * n
    if not 0 <= M <= N:
        raise PebblingError("need 0 <= M <= n^2")
    slots = partial_fisher_yates(N, M, as_rng(seed))
    return BipartiteSimpleGraph(n, frozenset((k // n + 1, k % n + 1) for k in slots))


def sample_multigraph(n: int, m: int, seed) -> BipartiteMultigraph:
    """Model B': a uniform m-pebble configuration on K_n x K_n, read as edges."""
    occ = sample_occupancy(n * n, m, as_rng(seed))
    return BipartiteMultigraph(n, tuple(((k // n + 1, k % n + 1), c) for k, c in occ.items()))


class DisjointSet:
    def __init__(self):
        self.parent: dict[int, int] = {}

    def find(self, x: int) -> int:
        parent = self.parent
        root = parent.setdefault(x, x)
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def components_of(graph) -> list[ComponentReport]:
    """Components spanned by support edges, largest first (ties: smallest vertex)."""
    n = graph.n
    dsu = DisjointSet()
    edges = list(graph.weighted_edges())
    for i, j, _ in edges:
        dsu.union(i - 1, n + j - 1)
    support: dict[int, int] = {}
    cops: dict[int, int] = {}
    for i, j, k in edges:
        r = dsu.find(i - 1)
        support[r] = support.get(r, 0) + 1
        if k >= 2:
            cops[r] = cops.get(r, 0) + 1
    members: dict[int, list[int]] = {}
    for x in sorted(dsu.parent):
        members.setdefault(dsu.find(x), []).append(x)
    out = [
        ComponentReport(
            tuple(x + 1 for x in xs if x < n),
            tuple(x - n + 1 for x in xs if x >= n),
            support[r],
            cops.get(r, 0),
        )
        for r, xs in members.items()
    ]
    out.sort(key=lambda c: (-c.size, min(c.left)))
    return out


def isolated_vertices(graph) -> tuple[list[int], list[int]]:
    """Left and right vertices that touch no support edge."""
    left = {i for i, _, k in graph.weighted_edges() if k}
    right = {j for _, j, k in graph.weighted_edges() if k}
    n = graph.n
    return [i for i in range(1, n + 1) if i not in left], [j for j in range(1, n + 1) if j not in right]


def _adjacency(graph) -> list[list[int]]:
    n = graph.n
    adj: list[list[int]] = [[] for _ in range(2 * n)]
    for i, j, k in graph.weighted_edges():
        if k:
            adj[i - 1].append(n + j - 1)
            adj[n + j - 1].append(i - 1)
    for nbrs in adj:
        nbrs.sort()
    return adj


def dfs_long_path(graph, seed, restarts: str = "single") -> list[int]:
    """Deepest DFS stack seen during a randomised depth-first search.

    The stack is always a simple path, so its length is a lower bound on the
    longest path. Nodes are 0..2n-1 (left first). ``restarts="all"`` keeps
    launching from unvisited vertices until everything is explored.
    """
    rng = as_rng(seed)
    adj = _adjacency(graph)
    total = len(adj)
    visited = [False] * total
    best: list[int] = []
    starts = list(range(total))
    rng.shuffle(starts)
    if restarts == "single":
        starts = starts[:1]
    elif restarts != "all":
        raise PebblingError(f"unknown restart policy {restarts!r}")
    for s in starts:
        if visited[s]:
            continue
        visited[s] = True
        path = [s]
        nbrs = adj[s][:]
        rng.shuffle(nbrs)
        iters = [iter(nbrs)]
        if len(best) < 1:
            best = [s]
        while iters:
            for v in iters[-1]:
                if not visited[v]:
                    visited[v] = True
                    path.append(v)
                    nbrs = adj[v][:]
                    rng.shuffle(nbrs)
                    iters.append(iter(nbrs))
                    if len(path) > len(best):
                        best = path[:]
                    break
            else:
                iters.pop()
                path.pop()
    return best


def longest_path_dfs(graph, seed, restarts: str = "single") -> int:
    """Edge count of the path found by :func:`dfs_long_path`."""
    return max(len(dfs_long_path(graph, seed, restarts)) - 1, 0)
