"""Exact k-independence numbers by bitset branch-and-bound."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .graph import OracleGraph, geodesic_distances, rows_to_bitsets


class _BudgetExhausted(Exception):
    pass


@dataclass(frozen=True)
class AlphaResult:
    value: int
    exact: bool
    witness: tuple[int, ...]
    nodes: int

    def __iter__(self):
        # unpacks as (value, exact)
        return iter((self.value, self.exact))


def power_offsets(graph: OracleGraph, k: int) -> np.ndarray:
    """Nonzero vertices within distance k of vertex 0, found by truncated BFS."""
    dist = geodesic_distances(graph, 0)
    return np.flatnonzero((dist >= 1) & (dist <= k))


def power_graph_rows(graph: OracleGraph, k: int) -> np.ndarray:
    """Neighbour lists of G^k: v is joined to v + b for every b in the radius-k ball."""
    return graph.translate(power_offsets(graph, k))


def _lowest(bits: int) -> int:
    return (bits & -bits).bit_length() - 1


class _MaxIndependentSet:
    """Tomita-style maximum clique search in the complement, over bitsets.

    One instance is reused across branches so that the incumbent, the node
    count and the deadline are shared.  Each branch runs on a relabelled copy
    of its candidate subgraph; ``labels`` maps back to the caller's vertices.
    """

    def __init__(self, deadline: float | None, node_limit: int | None) -> None:
        self.deadline = deadline
        self.node_limit = node_limit
        self.nodes = 0
        self.best: list[int] = []
        self.adj: list[int] = []
        self.labels: list[int] = []
        self.base: list[int] = []

    def _colour_classes(self, cand: int) -> tuple[list[int], list[int]]:
        """Greedy cover of cand by cliques of G, i.e. colour classes of the complement.

        A set independent in G meets each clique at most once, so the number
        of cliques used is an upper bound on what cand can still contribute.
        """
        order, bounds = [], []
        remaining = cand
        colour = 0
        while remaining:
            colour += 1
            pool = remaining
            while pool:
                v = _lowest(pool)
                pool &= self.adj[v]
                remaining &= ~(1 << v)
                order.append(v)
                bounds.append(colour)
        return order, bounds

    def _tick(self) -> None:
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise _BudgetExhausted
        if self.deadline is not None and self.nodes % 256 == 0 and time.monotonic() > self.deadline:
            raise _BudgetExhausted

    def expand(self, chosen: list[int], cand: int) -> None:
        self._tick()
        order, bounds = self._colour_classes(cand)
        offset = len(self.base)
        for idx in range(len(order) - 1, -1, -1):
            if offset + len(chosen) + bounds[idx] <= len(self.best):
                return
            v = order[idx]
            chosen.append(v)
            rest = cand & ~self.adj[v] & ~(1 << v)
            if rest:
                self.expand(chosen, rest)
            elif offset + len(chosen) > len(self.best):
                self.best = self.base + [self.labels[u] for u in chosen]
            chosen.pop()
            cand &= ~(1 << v)

    def solve_branch(self, adj: list[int], base: list[int], cand: int) -> None:
        sub, labels = degeneracy_relabel(adj, cand)
        self.adj, self.labels, self.base = sub, labels, list(base)
        if len(base) > len(self.best):
            self.best = list(base)
        if labels:
            self.expand([], (1 << len(labels)) - 1)


def degeneracy_relabel(adj: list[int], cand: int) -> tuple[list[int], list[int]]:
    """Induced subgraph on cand, relabelled for a tighter colouring bound.

    Vertices are peeled off by largest remaining degree (lowest index on
    ties) and numbered in reverse peeling order.
    """
    verts = [v for v in range(cand.bit_length()) if cand >> v & 1]
    n = len(verts)
    if n == 0:
        return [], []
    mat = np.zeros((n, n), dtype=np.int64)
    for i, v in enumerate(verts):
        row = adj[v] & cand
        mat[i] = [row >> u & 1 for u in verts]
    degree = mat.sum(axis=1)
    peeled = []
    for _ in range(n):
        i = int(np.argmax(degree))
        peeled.append(i)
        degree -= mat[i]
        degree[i] = -1
        # peeled vertices never win again
        degree[peeled] = -1
    order = peeled[::-1]
    labels = [verts[i] for i in order]
    pos = np.empty(n, dtype=np.int64)
    pos[order] = np.arange(n)
    sub = []
    for i in order:
        bits = np.zeros(n, dtype=np.uint8)
        bits[pos[np.flatnonzero(mat[i])]] = 1
        sub.append(int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little"))
    return sub, labels


def greedy_independent_set(adj: list[int], cand: int) -> list[int]:
    """Lowest-index-first maximal independent set inside cand."""
    out = []
    while cand:
        v = _lowest(cand)
        out.append(v)
        cand &= ~adj[v] & ~(1 << v)
    return out


def max_independent_set(
    adj: list[int],
    forced: int | None = None,
    budget_seconds: float | None = None,
    node_limit: int | None = None,
) -> AlphaResult:
    """Maximum independent set of a graph given as adjacency bitsets.

    ``forced`` pins one vertex into the solution; that is lossless whenever an
    automorphism maps some optimal set onto one containing it.
    """
    V = len(adj)
    cand = (1 << V) - 1
    chosen: list[int] = []
    if forced is not None:
        chosen = [forced]
        cand &= ~adj[forced] & ~(1 << forced)
    return _run_branches(adj, [(chosen, cand)], budget_seconds, node_limit)


def _run_branches(adj, branches, budget_seconds, node_limit) -> AlphaResult:
    """Solve max over branches of |chosen| + alpha(cand), sharing the incumbent."""
    deadline = None if budget_seconds is None else time.monotonic() + budget_seconds
    search = _MaxIndependentSet(deadline, node_limit)
    for chosen, cand in branches:
        trial = list(chosen) + greedy_independent_set(adj, cand)
        if len(trial) > len(search.best):
            search.best = trial
    exact = True
    try:
        for chosen, cand in branches:
            search.solve_branch(adj, chosen, cand)
    except _BudgetExhausted:
        exact = False
    witness = tuple(sorted(search.best))
    return AlphaResult(len(witness), exact, witness, search.nodes)


def _mask(indices) -> int:
    out = 0
    for v in indices:
        out |= 1 << int(v)
    return out


def orbit_representatives(graph: OracleGraph, vertices: np.ndarray) -> list[int]:
    """One vertex per orbit of the stabiliser of 0 among the given vertices.

    Invertible row and column operations inside each block fix 0 and act
    transitively on the matrices of each rank, and blocks of identical shape
    can be swapped.  The orbit of a tuple is therefore fixed by its block
    ranks, sorted within each group of equal shapes.
    """
    ranks = graph.block_ranks()
    shapes = graph.params.blocks
    groups = [[i for i, s in enumerate(shapes) if s == shape] for shape in dict.fromkeys(shapes)]
    reps: dict[tuple, int] = {}
    for v in vertices:
        key = tuple(tuple(sorted(int(ranks[v, i]) for i in grp)) for grp in groups)
        reps.setdefault(key, int(v))
    return list(reps.values())


def exact_alpha_k(
    graph: OracleGraph,
    k: int,
    budget_seconds: float | None = 60.0,
    node_limit: int | None = None,
) -> AlphaResult:
    """alpha_k of the graph: the largest vertex set with pairwise distance > k.

    Translations act transitively, so some optimal set I contains 0.  Let v be
    an element of I other than 0 with the least weight w; an automorphism
    fixing 0 carries v to its orbit representative without changing any
    weight.  The search thus branches only over representatives v, keeping
    candidates of weight >= w that are far from both 0 and v.
    """
    if k < 1:
        raise ValueError("k must be positive")
    rows = power_graph_rows(graph, k)
    adj = rows_to_bitsets(rows, graph.vertex_count)
    weights = graph.weights()
    far = np.flatnonzero(weights > k)
    if far.size == 0:
        return AlphaResult(1, True, (0,), 0)
    branches = []
    for rep in sorted(orbit_representatives(graph, far), key=lambda v: (weights[v], v)):
        pool = _mask(far[weights[far] >= weights[rep]])
        cand = pool & ~adj[rep] & ~(1 << rep)
        branches.append(([0, rep], cand))
    return _run_branches(adj, branches, budget_seconds, node_limit)


def is_k_independent(graph: OracleGraph, vertices, k: int) -> bool:
    """True iff every pair of the given vertices is at distance > k."""
    vs = np.asarray(list(vertices), dtype=np.int64)
    if vs.size < 2:
        return True
    weights = graph.weights()
    for i, u in enumerate(vs[:-1]):
        diffs = graph.subtract(vs[i + 1:], np.full(vs.size - i - 1, u))
        if (weights[diffs] <= k).any():
            return False
    return True
