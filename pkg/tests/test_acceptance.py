"""End-to-end acceptance checks.

Each test records a single ``PASS``/``FAIL`` line for its criterion; under
pytest they are printed in the terminal summary.  ``python3 tests/test_acceptance.py`` runs
all eight and prints the same lines.
"""

from __future__ import annotations

import functools
import sys
import time
from fractions import Fraction
from itertools import combinations_with_replacement
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracle_grid import ALPHA_GRID  # noqa: E402

from srkbounds.bounds_classical import (  # noqa: E402
    CLASSICAL_BOUNDS,
    PUNCTURED,
    TABULATED,
    classical_bound,
    singleton,
)
from srkbounds.bounds_spectral import (  # noqa: E402
    DegenerateBoundError,
    RationalPolynomial,
    ratio_type,
    ratio_type_d3,
    ratio_type_d4,
    ratio_type_generic,
)
from srkbounds.core import normalize_params  # noqa: E402
from srkbounds.lp_minor import OPTIMAL, build_minor_lp, divided_difference, lp_bound, solve_exact  # noqa: E402
from srkbounds.msrd import RATIO_TYPE, msrd_exclusion, msrd_threshold_t  # noqa: E402
from srkbounds.oracle import (  # noqa: E402
    build_graph,
    exact_alpha_k,
    explicit_distance_regular,
    geodesic_distances,
    is_k_independent,
    partial_regularity_witness,
)
from srkbounds.oracle.regularity import check_degrees, check_walk_regularity  # noqa: E402
from srkbounds.reproduce import FAIL, KNOWN_DISCREPANCY, PASS, SKIP, UNKNOWN, load_fixture, reproduce_table  # noqa: E402
from srkbounds.spectra import classify_distance_regular, srk_spectrum  # noqa: E402

ORACLE_CAP = 4096

# Filled as criteria finish; the conftest summary hook prints these after the run.
STATUS_LINES: list[str] = []


def _emit(line: str) -> None:
    STATUS_LINES.append(line)
    if __name__ == "__main__":
        print(line, flush=True)


def criterion(number: int, title: str):
    """Run the check, then print one status line whatever the outcome."""

    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            start = time.monotonic()
            try:
                detail = fn(*args, **kwargs)
            except BaseException as exc:
                if isinstance(exc, pytest.skip.Exception):
                    raise
                _emit(f"FAIL criterion {number}: {title} ({type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''})")
                raise
            elapsed = time.monotonic() - start
            _emit(f"PASS criterion {number}: {title} ({detail}; {elapsed:.1f} s)")

        return run

    return wrap


@functools.lru_cache(maxsize=None)
def oracle_shapes():
    """Every shape with blocks of at most 4 columns and at most 4096 vertices, q <= 5."""
    kinds = [(a, b) for b in range(1, 5) for a in range(1, b + 1)]
    seen = {}
    for q, max_dim in ((2, 12), (3, 7), (4, 6), (5, 5)):
        for t in range(1, max_dim + 1):
            for combo in combinations_with_replacement(kinds, t):
                if sum(a * b for a, b in combo) > max_dim:
                    continue
                params = normalize_params(q, [a for a, _ in combo], [b for _, b in combo])
                if params.size <= ORACLE_CAP:
                    seen[params] = None
    return sorted(seen, key=lambda p: (p.size, p.q, p.n, p.m))


@functools.lru_cache(maxsize=None)
def graph_for(params):
    return build_graph(params, ORACLE_CAP)


@functools.lru_cache(maxsize=None)
def exact_alpha_values():
    """(params, k) -> exact alpha_k over the oracle grid, each witness re-verified."""
    out = {}
    for q, n, m, k, _ in ALPHA_GRID:
        params = normalize_params(q, n, m)
        g = graph_for(params)
        res = exact_alpha_k(g, k, budget_seconds=60.0)
        assert res.exact, f"alpha_{k} search did not finish for {params}"
        assert is_k_independent(g, res.witness, k)
        out[(params, k)] = res.value
    return out


# criterion 1 -------------------------------------------------------------------


@criterion(1, "table 1 reproduction")
def test_table1():
    start = time.monotonic()
    fast = reproduce_table(1, compute_alpha=False)
    fast_time = time.monotonic() - start
    assert fast.ok and fast_time < 10, f"bound columns took {fast_time:.1f} s"
    report = reproduce_table(1, alpha_budget=60.0)
    fails = [c.line() for c in report.cells if c.status == FAIL]
    assert not fails, fails
    fixture = load_fixture(1)
    assert len(fixture.rows) == 17
    checked = ("V", "RT", "iS", "iH", "iP", "iE", "S", "SP", "TD")
    for column in checked:
        cells = report.for_column(column)
        assert len(cells) == 17 and all(c.status == PASS for c in cells), column
    alpha = report.for_column("alpha")
    published = [c for c in alpha if c.expected != UNKNOWN]
    assert published and all(c.status == PASS for c in published)
    assert all(c.status == SKIP for c in alpha if c.expected == UNKNOWN)
    assert all(c.status == SKIP for c in report.for_column("theta"))
    return f"{report.count(PASS)} cells pass, {len(published)} alpha values by brute force, bound columns in {fast_time:.1f} s"


# criterion 2 -------------------------------------------------------------------


@criterion(2, "table 2 reproduction")
def test_table2():
    report = reproduce_table(2, alpha_budget=60.0)
    assert report.ok, [c.line() for c in report.cells if c.status == FAIL]
    rows = load_fixture(2).rows
    assert len(rows) == 3
    for column in ("V", "RT", "iS", "iH", "iP", "iE", "S", "SP", "TD"):
        assert all(c.status == PASS for c in report.for_column(column)), column
    alpha = [c for c in report.for_column("alpha") if c.expected != UNKNOWN]
    assert all(c.status == PASS for c in alpha)
    psp = {rows[c.row - 1].n: c for c in report.for_column("PSP")}
    flagged = psp[(2, 1, 1, 1)]
    assert (flagged.status, flagged.expected, flagged.computed) == (KNOWN_DISCREPANCY, "8", "4")
    small = psp[(1, 1, 1, 1)]
    assert (small.status, small.computed) == (PASS, "2")
    known = [c for c in report.cells if c.status == KNOWN_DISCREPANCY]
    assert all(c.column == "PSP" for c in known)
    return f"{report.count(PASS)} cells pass, {len(known)} PSP cells are known discrepancies"


# criterion 3 -------------------------------------------------------------------


@criterion(3, "table 3 reproduction")
def test_table3():
    start = time.monotonic()
    rows = load_fixture(3).rows
    assert len(rows) == 33
    punctured_only = 0
    for row in rows:
        params, d = row.params, row.d
        verdict = msrd_exclusion(params, d, psp_convention=TABULATED)
        s_size = singleton(params, d).value
        rt = verdict.bound(RATIO_TYPE).value
        assert verdict.excluded and rt < s_size, row.label()
        assert rt == int(row.cells["RT"]) and s_size == int(row.cells["S"]), row.label()
        others = [b for b in verdict.bounds if b.applicable and b.name != RATIO_TYPE]
        assert all(b.value >= s_size for b in others), row.label()
        assert verdict.only_spectral
        if msrd_exclusion(params, d).only_spectral:
            punctured_only += 1
    report = reproduce_table(3)
    assert report.ok
    elapsed = time.monotonic() - start
    assert elapsed < 60
    _emit(
        f"INFO criterion 3: with the stated projective sphere-packing formula, {punctured_only} of 33 rows "
        "remain excluded by the Ratio-Type bound alone; the others are also excluded by PSP"
    )
    return "33 rows excluded, RT strictly below S, all other bounds at least S"


# criterion 4 -------------------------------------------------------------------


@criterion(4, "threshold consistency sweep")
def test_threshold_sweep():
    checked = 0
    for q in (2, 3):
        for m in (2, 3, 4):
            for n in (1, 2):
                threshold = msrd_threshold_t(q, m, n)
                for t in range(threshold + 1, threshold + 11):
                    params = normalize_params(q, (n,) + (1,) * (t - 1), (m,) + (1,) * (t - 1))
                    rt = ratio_type_d3(srk_spectrum(params))
                    s_size = singleton(params, 3).value
                    assert isinstance(rt, int) and rt < s_size, (q, m, n, t, rt, s_size)
                    checked += 1
    return f"{checked} parameter sets"


# criterion 5 -------------------------------------------------------------------


def _all_pairs_distances(g) -> np.ndarray:
    """Distance matrix by simultaneous BFS from every vertex on packed bit rows.

    Row v of ``reach`` holds the vertices within the current radius of v; one
    step ORs together the rows of v's neighbours.  Nothing here relies on the
    graph being a Cayley graph.
    """
    V = g.vertex_count
    reach = np.packbits(np.eye(V, dtype=bool), axis=1, bitorder="little")
    dist = np.full((V, V), -1, dtype=np.int8)
    np.fill_diagonal(dist, 0)
    level = 0
    while True:
        level += 1
        nxt = reach.copy()
        for column in g.neighbors.T:
            nxt |= reach[column]
        new = np.unpackbits(nxt & ~reach, axis=1, bitorder="little", count=V).astype(bool)
        if not new.any():
            return dist
        dist[new] = level
        reach = nxt


def _geodesics_match(g) -> None:
    V = g.vertex_count
    w = g.weights()
    idx = np.arange(V)
    dist = _all_pairs_distances(g)
    if g.params.q == 2:
        # over F_2 every digit of v - u is the XOR of the digits
        assert (dist == w[idx[:, None] ^ idx[None, :]]).all(), g.params
    else:
        for lo in range(0, V, 64):
            us = idx[lo:lo + 64]
            diffs = g.subtract(np.broadcast_to(idx, (us.size, V)).ravel(), np.repeat(us, V))
            assert (dist[us] == w[diffs].reshape(us.size, V)).all(), (g.params, lo)
    for u in np.random.default_rng(0).choice(V, size=min(V, 8), replace=False):
        assert (geodesic_distances(g, int(u)) == dist[u]).all(), (g.params, u)
    assert int(dist.max()) == g.params.N


def _all_bounds(params, d):
    spec = srk_spectrum(params)
    out = {}
    try:
        out["RT"] = ratio_type(spec, d)
    except DegenerateBoundError:
        pass
    if d - 1 <= spec.r:
        out["LP"] = lp_bound(spec, d - 1)
    for name in CLASSICAL_BOUNDS:
        for convention in (PUNCTURED, TABULATED):
            b = classical_bound(name, params, d, convention)
            if b.applicable:
                out[f"{name}/{convention}"] = b.value
    return out


@criterion(5, "oracle soundness")
def test_oracle_soundness():
    shapes = oracle_shapes()
    for params in shapes:
        g = graph_for(params)
        assert check_degrees(g).passed, params
        walks = check_walk_regularity(g, srk_spectrum(params), 4)
        assert all(c.passed for c in walks), (params, [c.detail for c in walks if not c.passed])
        _geodesics_match(g)
    comparisons = 0
    for (params, k), alpha in exact_alpha_values().items():
        d = k + 1
        if d not in (3, 4):
            continue
        for name, value in _all_bounds(params, d).items():
            assert value >= alpha, (params, d, name, value, alpha)
            comparisons += 1
    return f"{len(shapes)} graphs checked structurally, {comparisons} bound-vs-alpha comparisons on {len(ALPHA_GRID)} exact values"


# criterion 6 -------------------------------------------------------------------


def _random_poly(rng, spec, degree):
    lo, hi = spec.thetas[-1], spec.thetas[0]
    if rng.random() < 0.5:
        # roots placed among the eigenvalues, where the optimum lives
        roots = [Fraction(int(rng.integers(4 * lo, 4 * hi + 1)), 4) for _ in range(degree)]
        coeffs = [Fraction(1)]  # leading coefficient first
        for r in roots:
            coeffs = [a - r * b for a, b in zip(coeffs + [Fraction(0)], [Fraction(0)] + coeffs)]
        coeffs = [c * Fraction(int(rng.integers(1, 9)), int(rng.integers(1, 9))) for c in coeffs]
        # convert from leading-first to constant-first
        return RationalPolynomial(list(reversed(coeffs)))
    coeffs = [Fraction(int(rng.integers(-50, 51)), int(rng.integers(1, 10))) for _ in range(degree + 1)]
    if coeffs[-1] == 0:
        coeffs[-1] = Fraction(1)
    return RationalPolynomial(coeffs)


@criterion(6, "Ratio-Type optimality spot checks")
def test_optimality_spot_checks():
    rng = np.random.default_rng(20240601)
    pool = [p for p in oracle_shapes() if srk_spectrum(p).r >= 3]
    picks = [pool[i] for i in rng.choice(len(pool), size=20, replace=False)]
    tried = {2: 0, 3: 0}
    for params in picks:
        spec = srk_spectrum(params)
        best = {2: ratio_type_d3(spec)}
        try:
            best[3] = ratio_type_d4(spec)
        except DegenerateBoundError:
            pass
        for degree in (2, 3):
            if degree not in best:
                continue
            for _ in range(1000):
                p = _random_poly(rng, spec, degree)
                try:
                    ev = ratio_type_generic(spec, p)
                except DegenerateBoundError:
                    continue
                tried[degree] += 1
                assert ev.bound_floor >= best[degree], (params, degree, p.coefficients, ev.bound_floor, best[degree])
    return f"{tried[2]} quadratics and {tried[3]} cubics on 20 spectra, none beat the closed forms"


# criterion 7 -------------------------------------------------------------------


@criterion(7, "minor LP validity")
def test_lp_validity():
    comparisons = 0
    for (params, k), alpha in exact_alpha_values().items():
        if k not in (2, 3):
            continue
        spec = srk_spectrum(params)
        if k > spec.r:
            continue
        problem = build_minor_lp(spec, k)
        first = solve_exact(problem)
        assert first.status == OPTIMAL
        assert solve_exact(problem) == first
        assert first.x[0] == 1 and all(v >= 0 for v in first.x)
        for s in range(k + 1, spec.r + 1):
            assert divided_difference(spec.thetas[: s + 1], first.x[: s + 1]) == 0
        assert lp_bound(spec, k) >= alpha, (params, k)
        comparisons += 1
    return f"{comparisons} LP optima checked against exact alpha"


# criterion 8 -------------------------------------------------------------------


@criterion(8, "distance-regularity classification")
def test_distance_regularity():
    drg = 0
    shapes = oracle_shapes()
    for params in shapes:
        predicted = classify_distance_regular(params)
        assert predicted == explicit_distance_regular(graph_for(params)), params
        drg += predicted[0]
    g = graph_for(normalize_params(2, (2, 2), (2, 2)))
    witness = partial_regularity_witness(g, 2)
    assert witness is not None
    (x, cx), (y, cy) = witness
    dist = geodesic_distances(g, 0)
    assert dist[x] == dist[y] == 2 and cx != cy
    assert int((dist[g.neighbors[x]] == 1).sum()) == cx and int((dist[g.neighbors[y]] == 1).sum()) == cy
    return f"{len(shapes)} graphs, {drg} distance-regular; c_2 witness {x} (c={cx}) vs {y} (c={cy})"


if __name__ == "__main__":
    tests = [
        test_table1,
        test_table2,
        test_table3,
        test_threshold_sweep,
        test_oracle_soundness,
        test_optimality_spot_checks,
        test_lp_validity,
        test_distance_regularity,
    ]
    failed = 0
    for test in tests:
        try:
            test()
        except Exception:  # the status line is already printed
            failed += 1
    sys.exit(1 if failed else 0)
