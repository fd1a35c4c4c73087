"""Explicit checks of regularity, walk-regularity and distance-regularity."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import sparse

from ..spectra import IntersectionArray, Spectrum, classify_distance_regular, closed_walk_count, regularity_delta
from .graph import OracleGraph, geodesic_distances


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""
    witness: tuple | None = None


@dataclass
class RegularityReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def get(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)


def adjacency_matrix(graph: OracleGraph) -> sparse.csr_matrix:
    V, deg = graph.neighbors.shape
    rows = np.repeat(np.arange(V), deg)
    data = np.ones(V * deg, dtype=np.int64)
    return sparse.csr_matrix((data, (rows, graph.neighbors.ravel())), shape=(V, V))


def check_degrees(graph: OracleGraph) -> Check:
    """Symmetric, loop-free, and every vertex has degree delta."""
    delta = regularity_delta(graph.params)
    V = graph.vertex_count
    nbrs = graph.neighbors
    for v in range(V):
        row = nbrs[v]
        if v in row or len(set(row.tolist())) != delta:
            return Check("degree", False, f"vertex {v} has {len(set(row.tolist()))} distinct neighbours", (v,))
    forward = np.sort((np.repeat(np.arange(V), nbrs.shape[1]) * V + nbrs.ravel()))
    backward = np.sort(nbrs.ravel() * V + np.repeat(np.arange(V), nbrs.shape[1]))
    if not np.array_equal(forward, backward):
        bad = int(np.flatnonzero(forward != backward)[0])
        u, v = divmod(int(forward[bad]), V)
        return Check("degree", False, "adjacency is not symmetric", (u, v))
    return Check("degree", True, f"all {V} degrees equal {delta}")


def adjacency_power_diagonals(graph: OracleGraph, L: int) -> list[np.ndarray]:
    """diag(A^l) for l = 0..L, using diag(A^(a+b)) = rowsum(A^a * A^b) for symmetric A."""
    A = adjacency_matrix(graph)
    powers = [sparse.identity(graph.vertex_count, dtype=np.int64, format="csr"), A]
    while len(powers) <= (L + 1) // 2:
        powers.append(powers[-1] @ A)
    out = []
    for l in range(L + 1):
        a, b = (l + 1) // 2, l // 2
        out.append(np.asarray(powers[a].multiply(powers[b]).sum(axis=1)).ravel())
    return out


def check_walk_regularity(graph: OracleGraph, spec: Spectrum, L: int) -> list[Check]:
    checks = []
    V = graph.vertex_count
    for l, diag in enumerate(adjacency_power_diagonals(graph, L)):
        name = f"walk-{l}"
        off = np.flatnonzero(diag != diag[0])
        if off.size:
            v = int(off[0])
            checks.append(Check(name, False, f"closed {l}-walks: {diag[0]} at 0, {diag[v]} at {v}", (0, v)))
            continue
        expected = closed_walk_count(spec, l)
        if int(diag[0]) * V != expected:
            checks.append(Check(name, False, f"V*diag = {int(diag[0]) * V}, spectrum gives {expected}", (0,)))
            continue
        checks.append(Check(name, True, f"diag(A^{l}) = {int(diag[0])}"))
    return checks


def distance_profile(graph: OracleGraph, source: int = 0) -> dict[int, dict[tuple[int, int, int], int]]:
    """For each distance i from source, the multiset of (c, a, b) seen there.

    c, a, b count neighbours of a vertex at distance i - 1, i, i + 1.  Returns
    {i: {(c, a, b): first vertex showing it}}.
    """
    dist = geodesic_distances(graph, source)
    nd = dist[graph.neighbors]
    own = dist[:, None]
    c = (nd == own - 1).sum(axis=1)
    a = (nd == own).sum(axis=1)
    b = (nd == own + 1).sum(axis=1)
    profile: dict[int, dict[tuple[int, int, int], int]] = {}
    for v in range(graph.vertex_count):
        key = (int(c[v]), int(a[v]), int(b[v]))
        profile.setdefault(int(dist[v]), {}).setdefault(key, v)
    return profile


def explicit_distance_regular(graph: OracleGraph) -> tuple[bool, IntersectionArray | None]:
    """Distance-regularity read off the distance partition around vertex 0.

    Translations are automorphisms, so the partition around 0 decides the
    intersection numbers of every pair of vertices.
    """
    profile = distance_profile(graph, 0)
    if any(len(seen) != 1 for seen in profile.values()):
        return False, None
    D = max(profile)
    triples = [next(iter(profile[i])) for i in range(D + 1)]
    b = tuple(t[2] for t in triples[:D])
    c = tuple(t[0] for t in triples[1:])
    return True, IntersectionArray(b, c)


def partial_regularity_witness(graph: OracleGraph, i: int) -> tuple[tuple[int, int], tuple[int, int]] | None:
    """Two vertices at distance i from 0 whose c_i differ, as ((x, c_i(x,0)), (y, c_i(y,0)))."""
    seen = distance_profile(graph, 0).get(i, {})
    by_c: dict[int, int] = {}
    for (c, _, _), v in seen.items():
        by_c.setdefault(c, v)
    if len(by_c) < 2:
        return None
    (c1, x), (c2, y) = sorted(by_c.items())[:2]
    return (x, c1), (y, c2)


def check_distance_regularity(graph: OracleGraph) -> Check:
    predicted, array = classify_distance_regular(graph.params)
    measured, found = explicit_distance_regular(graph)
    if predicted != measured:
        return Check("distance-regular", False, f"classified {predicted}, partition says {measured}")
    if not predicted:
        return Check("distance-regular", True, "not distance-regular, as classified")
    if found != array:
        return Check("distance-regular", False, f"array {found} differs from predicted {array}")
    return Check("distance-regular", True, f"b={array.b} c={array.c}")


def verify_regularities(graph: OracleGraph, spec: Spectrum, L: int = 4) -> RegularityReport:
    """Degrees, walk-regularity up to length L, and the distance partition."""
    if L < 2:
        raise ValueError("L must be at least 2")
    report = RegularityReport()
    report.checks.append(check_degrees(graph))
    report.checks.extend(check_walk_regularity(graph, spec, L))
    report.checks.append(check_distance_regularity(graph))
    return report
