"""The rook's graph K_n x K_n and its cops/citizens/robbers analysis.

Vertices are grid cells (row, col), 1-based; two cells are adjacent when
they share exactly one coordinate. A cop holds at least two pebbles, a
citizen exactly one, a robber none. Connectivity of the citizen subgraph is
computed on the bipartite row/column graph, where every occupied cell is an
edge joining its row to its column.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple

import networkx as nx

from .core import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    PebbleConfiguration,
    PebblingError,
    SimpleGraph,
    find_root_plan,
)


class GridVertex(NamedTuple):
    row: int
    col: int


GridMove = tuple[GridVertex, GridVertex]

EXACT_VERTEX_LIMIT = 16


@dataclass(frozen=True)
class RookGraph:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise PebblingError("rook graph needs n >= 1")

    @property
    def N(self) -> int:
        return self.n * self.n

    @property
    def edge_count(self) -> int:
        return self.n * self.n * (self.n - 1)

    def index(self, v) -> int:
        row, col = v
        if not (1 <= row <= self.n and 1 <= col <= self.n):
            raise PebblingError(f"{tuple(v)} outside the {self.n}x{self.n} grid")
        return (row - 1) * self.n + (col - 1)

    def vertex(self, i: int) -> GridVertex:
        return GridVertex(i // self.n + 1, i % self.n + 1)

    def vertices(self) -> list[GridVertex]:
        return [self.vertex(i) for i in range(self.N)]

    @property
    def graph(self) -> SimpleGraph:
        return _rook_simple_graph(self.n)


@lru_cache(maxsize=None)
def _rook_simple_graph(n: int) -> SimpleGraph:
    adj = []
    for i in range(n * n):
        r, c = divmod(i, n)
        row = [r * n + k for k in range(n) if k != c]
        col = [k * n + c for k in range(n) if k != r]
        adj.append(tuple(sorted(row + col)))
    return SimpleGraph(n * n, tuple(adj))


def rook_graph(n: int) -> RookGraph:
    return RookGraph(n)


def sees(u, v) -> bool:
    if tuple(u) == tuple(v):
        raise PebblingError("a vertex does not see itself")
    return u[0] == v[0] or u[1] == v[1]


@dataclass(frozen=True)
class RookConfig:
    """Sparse pebble placement on K_n x K_n (zero counts are not stored)."""

    n: int
    pebbles: tuple[tuple[GridVertex, int], ...] = ()

    def __post_init__(self):
        grid = RookGraph(self.n)
        merged: dict[GridVertex, int] = {}
        for v, c in self.pebbles:
            v = GridVertex(*v)
            grid.index(v)
            if c < 0:
                raise PebblingError("pebble counts must be non-negative")
            if c:
                merged[v] = merged.get(v, 0) + int(c)
        object.__setattr__(self, "pebbles", tuple(sorted(merged.items())))

    @classmethod
    def from_mapping(cls, n: int, counts: Mapping) -> RookConfig:
        return cls(n, tuple(counts.items()))

    @classmethod
    def from_configuration(cls, n: int, config: PebbleConfiguration) -> RookConfig:
        grid = RookGraph(n)
        if config.n_vertices != grid.N:
            raise PebblingError("configuration size is not n^2")
        return cls(n, tuple((grid.vertex(i), c) for i, c in enumerate(config.counts) if c))

    @property
    def grid(self) -> RookGraph:
        return RookGraph(self.n)

    @property
    def counts(self) -> dict[GridVertex, int]:
        return dict(self.pebbles)

    @property
    def total(self) -> int:
        return sum(c for _, c in self.pebbles)

    def count(self, v) -> int:
        return self.counts.get(GridVertex(*v), 0)

    def to_configuration(self) -> PebbleConfiguration:
        grid = self.grid
        counts = [0] * grid.N
        for v, c in self.pebbles:
            counts[grid.index(v)] = c
        return PebbleConfiguration(tuple(counts))

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "pebbles": [[v.row, v.col, c] for v, c in self.pebbles]})

    @classmethod
    def from_json(cls, text: str) -> RookConfig:
        data = json.loads(text)
        return cls(int(data["n"]), tuple(((r, c), k) for r, c, k in data.get("pebbles", [])))


@dataclass(frozen=True)
class CitizenPartition:
    cops: frozenset[GridVertex]
    citizens: frozenset[GridVertex]
    robbers: frozenset[GridVertex]


@dataclass(frozen=True)
class ComponentSummary:
    members: tuple[GridVertex, ...]
    cop_count: int

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class CatchPlan:
    moves: tuple[GridMove, ...]

    def __len__(self) -> int:
        return len(self.moves)

    def index_moves(self, n: int) -> list[tuple[int, int]]:
        grid = RookGraph(n)
        return [(grid.index(u), grid.index(v)) for u, v in self.moves]

    def to_list(self) -> list[list[int]]:
        return [[u.row, u.col, v.row, v.col] for u, v in self.moves]


def classify(config: RookConfig) -> CitizenPartition:
    counts = config.counts
    cops = frozenset(v for v, c in counts.items() if c >= 2)
    citizens = frozenset(v for v, c in counts.items() if c == 1)
    robbers = frozenset(v for v in config.grid.vertices() if v not in counts)
    return CitizenPartition(cops, citizens, robbers)


def has_robocop(config: RookConfig) -> bool:
    return any(c >= 4 for _, c in config.pebbles)


def direct_catch(config: RookConfig, root) -> bool:
    root = GridVertex(*root)
    counts = config.counts
    if counts.get(root, 0):
        return True
    return any(c >= 2 and sees(v, root) for v, c in counts.items())


class _RowColForest:
    """Union-find over n row nodes and n column nodes."""

    def __init__(self, n: int, cells: Iterable[GridVertex]):
        self.n = n
        self.parent: dict[int, int] = {}
        for r, c in cells:
            self.union(r - 1, n + c - 1)

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

    def cell_root(self, v: GridVertex) -> int:
        return self.find(v.row - 1)


def citizen_components(config: RookConfig) -> list[ComponentSummary]:
    """Components of the 'sees' graph on occupied cells, with cop counts."""
    counts = config.counts
    forest = _RowColForest(config.n, counts)
    groups: dict[int, list[GridVertex]] = {}
    for v in sorted(counts):
        groups.setdefault(forest.cell_root(v), []).append(v)
    out = [
        ComponentSummary(tuple(members), sum(1 for v in members if counts[v] >= 2))
        for members in groups.values()
    ]
    out.sort(key=lambda comp: comp.members[0])
    return out


def has_police_component(config: RookConfig) -> bool:
    return any(comp.cop_count >= 2 for comp in citizen_components(config))


def _occupied_neighbours(counts: Mapping[GridVertex, int], n: int):
    by_row: dict[int, list[GridVertex]] = {}
    by_col: dict[int, list[GridVertex]] = {}
    for v in sorted(counts):
        by_row.setdefault(v.row, []).append(v)
        by_col.setdefault(v.col, []).append(v)
    return by_row, by_col


def _catch_chain(counts: Mapping[GridVertex, int], n: int, root: GridVertex) -> list[GridVertex] | None:
    """BFS from root through occupied cells to the nearest cop.

    Returns [w1, ..., wk] with w1 seeing root, consecutive cells seeing each
    other, w1..w(k-1) holding at least one pebble and wk at least two.
    Lexicographically smallest cells are explored first.
    """
    by_row, by_col = _occupied_neighbours(counts, n)
    prev: dict[GridVertex, GridVertex | None] = {}
    seen_rows: set[int] = set()
    seen_cols: set[int] = set()
    queue: deque[GridVertex] = deque()

    def expand(x: GridVertex, parent):
        found = []
        if x.row not in seen_rows:
            seen_rows.add(x.row)
            found += by_row.get(x.row, [])
        if x.col not in seen_cols:
            seen_cols.add(x.col)
            found += by_col.get(x.col, [])
        for y in sorted(found):
            if y not in prev and y != root:
                prev[y] = parent
                queue.append(y)

    expand(root, None)
    while queue:
        x = queue.popleft()
        if counts[x] >= 2:
            chain = [x]
            while prev[chain[-1]] is not None:
                chain.append(prev[chain[-1]])
            chain.reverse()
            return chain
        expand(x, x)
    return None


def _cascade(chain: list[GridVertex], root: GridVertex) -> list[GridMove]:
    moves = [(chain[i], chain[i - 1]) for i in range(len(chain) - 1, 0, -1)]
    moves.append((chain[0], root))
    return moves


def _police_start(counts: Mapping[GridVertex, int], n: int) -> tuple[GridVertex, GridVertex] | None:
    """Smallest cop in a police component and its next cell towards another cop."""
    by_row, by_col = _occupied_neighbours(counts, n)
    for v1 in sorted(v for v, c in counts.items() if c >= 2):
        prev = {v1: None}
        queue = deque([v1])
        while queue:
            x = queue.popleft()
            if x != v1 and counts[x] >= 2:
                while prev[x] != v1:
                    x = prev[x]
                return v1, x
            for y in sorted(by_row[x.row] + by_col[x.col]):
                if y not in prev:
                    prev[y] = x
                    queue.append(y)
    return None


def catch_plan(config: RookConfig, root) -> CatchPlan | None:
    """Constructive plan from the first sufficient condition that fires.

    Order: root occupied, a cop seeing root, a citizen chain ending in a
    cop, a robocop, a police component. None when nothing fires.
    """
    root = GridVertex(*root)
    config.grid.index(root)
    counts = config.counts
    if counts.get(root, 0):
        return CatchPlan(())
    for v in sorted(counts):
        if counts[v] >= 2 and sees(v, root):
            return CatchPlan(((v, root),))
    chain = _catch_chain(counts, config.n, root)
    if chain is not None:
        return CatchPlan(tuple(_cascade(chain, root)))
    robocops = sorted(v for v, c in counts.items() if c >= 4)
    if robocops:
        u = robocops[0]
        w = GridVertex(u.row, root.col)
        return CatchPlan(((u, w), (u, w), (w, root)))
    start = _police_start(counts, config.n)
    if start is None:
        return None
    v1, v2 = start
    if v2.row == v1.row:
        v1p = GridVertex(v1.row, root.col)
    else:
        v1p = GridVertex(root.row, v1.col)
    after = dict(counts)
    after[v1] -= 2
    if not after[v1]:
        del after[v1]
    after[v1p] = after.get(v1p, 0) + 1
    chain = _catch_chain(after, config.n, root)
    if chain is None:  # pragma: no cover - v1p, v2, ..., vk always catches
        raise AssertionError("police component failed to produce a chain")
    return CatchPlan(((v1, v1p),) + tuple(_cascade(chain, root)))


# ---------------------------------------------------------------------------
# tiered solver

SOLVABLE = "solvable"
UNSOLVABLE = "unsolvable"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    status: str
    tier: str
    root: GridVertex | None = None
    plan: CatchPlan | None = None
    certificate: str | None = None

    @property
    def solvable(self) -> bool:
        return self.status == SOLVABLE

    def to_dict(self) -> dict:
        out = {
            "verdict": self.status,
            "tier": self.tier,
            "plan": None if self.plan is None else self.plan.to_list(),
        }
        if self.root is not None:
            out["root"] = [self.root.row, self.root.col]
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass
class _Analysis:
    """Everything the tiers need, computed once per configuration."""

    n: int
    counts: dict[GridVertex, int]
    total: int = 0
    robocop: bool = False
    police: bool = False
    any_cop: bool = False
    armed: set[int] = field(default_factory=set)  # row/col nodes whose component has a cop
    cop_rows: set[int] = field(default_factory=set)
    cop_cols: set[int] = field(default_factory=set)
    row_sum: dict[int, int] = field(default_factory=dict)
    col_sum: dict[int, int] = field(default_factory=dict)

    @classmethod
    def of(cls, n: int, counts: dict[GridVertex, int]) -> _Analysis:
        a = cls(n, counts)
        forest = _RowColForest(n, counts)
        cops_in: dict[int, int] = {}
        for v, c in counts.items():
            a.total += c
            a.row_sum[v.row] = a.row_sum.get(v.row, 0) + c
            a.col_sum[v.col] = a.col_sum.get(v.col, 0) + c
            if c >= 2:
                a.any_cop = True
                a.cop_rows.add(v.row)
                a.cop_cols.add(v.col)
                r = forest.cell_root(v)
                cops_in[r] = cops_in.get(r, 0) + 1
                if c >= 4:
                    a.robocop = True
        a.police = any(k >= 2 for k in cops_in.values())
        a.armed = {x for x in forest.parent if forest.find(x) in cops_in}
        return a

    def directly_caught(self, r: GridVertex) -> bool:
        return r in self.counts or r.row in self.cop_rows or r.col in self.cop_cols

    def chain_caught(self, r: GridVertex) -> bool:
        return (r.row - 1) in self.armed or (self.n + r.col - 1) in self.armed

    def weight_unsolvable(self, r: GridVertex) -> bool:
        if r in self.counts:
            return False
        if self.n == 1:
            return True
        # distance 1 to cells in r's row/col, 2 elsewhere: weight = (t + S)/4
        seen = self.row_sum.get(r.row, 0) + self.col_sum.get(r.col, 0)
        return self.total + seen < 4

    def uncovered_roots(self) -> Iterable[GridVertex]:
        """Empty cells that no cop (directly or through citizens) reaches."""
        n = self.n
        rows = [i for i in range(1, n + 1) if (i - 1) not in self.armed]
        cols = [j for j in range(1, n + 1) if (n + j - 1) not in self.armed]
        for i in rows:
            for j in cols:
                v = GridVertex(i, j)
                if v not in self.counts:
                    yield v

    def has_uncovered_root(self) -> bool:
        n = self.n
        rows = sum(1 for i in range(n) if i not in self.armed)
        cols = sum(1 for j in range(n) if (n + j) not in self.armed)
        # an occupied cell in an unarmed row lies in an unarmed column too
        occupied = sum(1 for v in self.counts if (v.row - 1) not in self.armed)
        return rows * cols > occupied

    def all_directly_caught(self) -> bool:
        rows = self.n - len(self.cop_rows)
        cols = self.n - len(self.cop_cols)
        occupied = sum(
            1 for v in self.counts if v.row not in self.cop_rows and v.col not in self.cop_cols
        )
        return rows * cols == occupied


def _exact_root(config: RookConfig, root: GridVertex, budget: int) -> Verdict:
    grid = config.grid
    plan = find_root_plan(grid.graph, config.to_configuration(), grid.index(root), budget)
    if plan is None:
        return Verdict(UNSOLVABLE, "exact", root, certificate="exhaustive search")
    moves = tuple((grid.vertex(u), grid.vertex(v)) for u, v in plan)
    return Verdict(SOLVABLE, "exact", root, CatchPlan(moves))


def _root_verdict(
    config: RookConfig, a: _Analysis, root: GridVertex, budget: int, exact_limit: int, with_plan: bool
) -> Verdict:
    def solved(tier):
        return Verdict(SOLVABLE, tier, root, catch_plan(config, root) if with_plan else None)

    if a.robocop:
        return solved("robocop")
    if a.police:
        return solved("police")
    if a.directly_caught(root):
        return solved("direct")
    if a.chain_caught(root):
        return solved("chain")
    if not a.any_cop:
        return Verdict(UNSOLVABLE, "frozen", root, certificate="no legal move and root empty")
    if a.weight_unsolvable(root):
        return Verdict(UNSOLVABLE, "weight", root, certificate="distance weight below 1")
    if config.grid.N <= exact_limit:
        try:
            return _exact_root(config, root, budget)
        except BudgetExceeded:
            return Verdict(UNKNOWN, "budget", root)
    return Verdict(UNKNOWN, "none", root)


def solvable_tiered(
    config: RookConfig,
    root=None,
    budget: int = DEFAULT_BUDGET,
    exact_limit: int = EXACT_VERTEX_LIMIT,
) -> Verdict:
    """Tiered verdict for one root, or for all roots when ``root`` is None.

    Tiers: robocop / police component (every root), direct or chain catch,
    unsolvability certificates (no legal move, distance weight), exact
    search when the grid has at most ``exact_limit`` cells, else unknown.
    """
    a = _Analysis.of(config.n, config.counts)
    if root is not None:
        root = GridVertex(*root)
        config.grid.index(root)
        return _root_verdict(config, a, root, budget, exact_limit, with_plan=True)
    return _all_roots(config, a, budget, exact_limit)


def _all_roots(config: RookConfig, a: _Analysis, budget: int, exact_limit: int) -> Verdict:
    if a.robocop:
        return Verdict(SOLVABLE, "robocop")
    if a.police:
        return Verdict(SOLVABLE, "police")
    if not a.has_uncovered_root():
        return Verdict(SOLVABLE, "direct" if a.all_directly_caught() else "chain")
    unknown = None
    for r in a.uncovered_roots():
        v = _root_verdict(config, a, r, budget, exact_limit, with_plan=False)
        if v.status == UNSOLVABLE:
            return v
        if v.status == UNKNOWN and unknown is None:
            unknown = v
            if config.grid.N > exact_limit and a.total >= 4:
                # neither certificate can fire on any other root either
                break
    if unknown is not None:
        return Verdict(UNKNOWN, unknown.tier)
    return Verdict(SOLVABLE, "exact")


def verify_line_graph_iso(n: int) -> bool:
    """Check that (left i, right j) -> cell (i, j) maps L(K_{n,n}) onto the rook graph."""
    kb = nx.complete_bipartite_graph(n, n)
    line = nx.line_graph(kb)
    grid = RookGraph(n)
    g = grid.graph

    def to_cell(edge) -> int:
        a, b = sorted(edge)
        return grid.index((a + 1, b - n + 1))

    if line.number_of_nodes() != grid.N or line.number_of_edges() != grid.edge_count:
        return False
    image = {to_cell(e) for e in line.nodes}
    if len(image) != grid.N:
        return False
    for e, f in line.edges:
        if not g.has_edge(to_cell(e), to_cell(f)):
            return False
    return len(g.edges()) == line.number_of_edges()
