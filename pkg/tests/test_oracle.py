from __future__ import annotations

from itertools import product

import numpy as np
import pytest

from srkbounds.core import normalize_params, rank_distribution
from srkbounds.oracle import (
    FieldTable,
    MatrixTuple,
    ShapeMismatchError,
    TupleCodec,
    VertexCapExceeded,
    build_graph,
    connecting_set,
    distance_profile,
    exact_alpha_k,
    explicit_distance_regular,
    field_for,
    geodesic_distances,
    is_k_independent,
    max_independent_set,
    partial_regularity_witness,
    smallest_primitive_polynomial,
    srk_distance,
    srk_weight,
    verify_regularities,
)
from srkbounds.oracle.graph import rows_to_bitsets
from srkbounds.oracle.independence import degeneracy_relabel, power_graph_rows
from srkbounds.spectra import IntersectionArray, regularity_delta, srk_spectrum

PRIME_POWERS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]
P21 = normalize_params(2, (2, 1), (2, 1))


@pytest.mark.parametrize("q", PRIME_POWERS)
def test_field_axioms(q):
    f = field_for(q)
    add, mul = f.add, f.mul
    e = np.arange(q)
    assert (add == add.T).all() and (mul == mul.T).all()
    assert (add[0] == e).all() and (mul[1] == e).all() and (mul[0] == 0).all()
    # associativity and distributivity, exhaustively
    assert (add[add[:, :, None], e[None, None, :]] == add[e[:, None, None], add[None, :, :]]).all()
    assert (mul[mul[:, :, None], e[None, None, :]] == mul[e[:, None, None], mul[None, :, :]]).all()
    lhs = mul[e[:, None, None], add[None, :, :]]
    rhs = add[mul[:, :, None], mul[:, None, :]]
    assert (lhs == rhs).all()
    assert (add[e, f.neg] == 0).all()
    assert (mul[e[1:], f.inv[1:]] == 1).all()
    # every nonzero row of the multiplication table is a permutation
    assert all(sorted(mul[a].tolist()) == list(range(q)) for a in range(1, q))


@pytest.mark.parametrize("q", [2, 3, 5, 7, 11, 13])
def test_prime_fields_are_modular(q):
    f = field_for(q)
    e = np.arange(q)
    assert (f.add == (e[:, None] + e[None, :]) % q).all()
    assert (f.mul == (e[:, None] * e[None, :]) % q).all()


def test_primitive_polynomials():
    assert smallest_primitive_polynomial(2, 2) == (1, 1, 1)
    assert smallest_primitive_polynomial(2, 3) == (1, 1, 0, 1)
    assert smallest_primitive_polynomial(3, 2) == (2, 1, 1)
    assert smallest_primitive_polynomial(2, 4) == (1, 1, 0, 0, 1)
    assert isinstance(field_for(4), FieldTable)


@pytest.mark.parametrize("q,n,m", [(2, 2, 3), (3, 2, 2), (4, 2, 2), (2, 3, 3), (4, 1, 3)])
def test_field_rank_counts(q, n, m):
    f = field_for(q)
    counts = [0] * (n + 1)
    for flat in product(range(q), repeat=n * m):
        counts[f.rank(np.array(flat).reshape(n, m))] += 1
    assert counts == rank_distribution(n, m, q)


def test_srk_weight_examples():
    assert srk_weight(P21, MatrixTuple.from_lists([[[0, 0], [0, 0]], [[0]]])) == 0
    assert srk_weight(P21, MatrixTuple.from_lists([[[1, 0], [0, 1]], [[1]]])) == 3
    assert srk_weight(P21, MatrixTuple.from_lists([[[1, 1], [1, 1]], [[0]]])) == 1
    x = MatrixTuple.from_lists([[[1, 0], [0, 1]], [[1]]])
    y = MatrixTuple.from_lists([[[1, 0], [0, 0]], [[0]]])
    assert srk_distance(P21, x, y) == 2 == srk_distance(P21, y, x)
    assert srk_distance(P21, x, x) == 0


def test_shape_mismatch():
    with pytest.raises(ShapeMismatchError):
        srk_weight(P21, MatrixTuple.from_lists([[[1, 0], [0, 1]]]))
    with pytest.raises(ShapeMismatchError):
        srk_weight(P21, MatrixTuple.from_lists([[[1, 0, 1], [0, 1, 0]], [[1]]]))
    with pytest.raises(ShapeMismatchError):
        srk_weight(P21, MatrixTuple.from_lists([[[2, 0], [0, 1]], [[1]]]))


@pytest.mark.parametrize("q,n,m", [(2, (2, 1), (2, 1)), (3, (2, 1), (2, 2)), (4, (1, 1), (2, 1))])
def test_random_distance_properties(q, n, m):
    params = normalize_params(q, n, m)
    codec = TupleCodec(params)
    rng = np.random.default_rng(7)
    idx = rng.integers(0, params.size, size=(1000, 3))
    for a, b, c in idx[:300]:
        x, y, z = (codec.decode(int(v)) for v in (a, b, c))
        dxy, dyz, dxz = srk_distance(params, x, y), srk_distance(params, y, z), srk_distance(params, x, z)
        assert dxz <= dxy + dyz
        assert dxy == srk_distance(params, y, x)
        assert (dxy == 0) == (a == b)


def test_codec_round_trip():
    params = normalize_params(3, (2, 1), (2, 2))
    codec = TupleCodec(params)
    for v in (0, 1, 2, 3, 100, params.size - 1):
        assert codec.encode(codec.decode(v)) == v
    with pytest.raises(IndexError):
        codec.decode(params.size)


@pytest.mark.parametrize(
    "q,n,m,V,deg",
    [(2, (2, 1), (2, 1), 32, 10), (2, (1,), (1,), 2, 1), (3, (2, 1), (2, 2), 729, 40), (2, (2, 2, 2), (2, 2, 2), 4096, 27)],
)
def test_graph_shapes(graph, q, n, m, V, deg):
    g = graph(q, n, m)
    assert (g.vertex_count, g.degree) == (V, deg)
    assert g.edge_count == V * deg // 2
    assert len(connecting_set(g.params)) == deg == regularity_delta(g.params)


def test_cap():
    with pytest.raises(VertexCapExceeded):
        build_graph(normalize_params(2, (3, 3), (3, 3)), 1000)


def test_dump_format():
    g = build_graph(normalize_params(2, (1,), (1,)))
    assert g.dump().splitlines() == ["srk-graph q=2 n=1 m=1 V=2", "0 1"]
    lines = build_graph(P21).dump().splitlines()
    assert lines[0] == "srk-graph q=2 n=2,1 m=2,1 V=32" and len(lines) == 1 + 32 * 10 // 2


def _explicit_weights(params, codec):
    return np.array([srk_weight(params, codec.decode(v)) for v in range(params.size)])


@pytest.mark.parametrize("q,n,m", [(2, (2, 1), (2, 1)), (2, (1, 1, 1), (2, 2, 1)), (3, (2, 1), (2, 2)), (4, (1, 1), (2, 1))])
def test_bfs_equals_sum_rank_exhaustively(graph, q, n, m):
    g = graph(q, n, m)
    params = g.params
    weights = _explicit_weights(params, g.codec)
    assert (g.weights() == weights).all()
    for source in range(g.vertex_count):
        dist = geodesic_distances(g, source)
        assert (dist == weights[g.subtract(np.arange(g.vertex_count), np.full(g.vertex_count, source))]).all()
        assert dist.max() == params.N


def test_power_graph_is_distance_ball(graph):
    g = graph(2, (2, 1), (2, 1))
    dist = np.array([geodesic_distances(g, v) for v in range(g.vertex_count)])
    for k in (1, 2, 3):
        rows = power_graph_rows(g, k)
        for v in range(g.vertex_count):
            assert sorted(rows[v].tolist()) == np.flatnonzero((dist[v] >= 1) & (dist[v] <= k)).tolist()


def _plain_alpha(adj: list[int]) -> int:
    # simple exhaustive search without symmetry breaking
    best = 0

    def rec(cand: int, size: int) -> None:
        nonlocal best
        if size + bin(cand).count("1") <= best:
            return
        if not cand:
            best = max(best, size)
            return
        v = (cand & -cand).bit_length() - 1
        rec(cand & ~adj[v] & ~(1 << v), size + 1)
        rec(cand & ~(1 << v), size)

    rec((1 << len(adj)) - 1, 0)
    return best


@pytest.mark.parametrize(
    "q,n,m,k,expected",
    [
        (2, (2, 1), (2, 1), 2, 2),
        (2, (2, 2), (2, 2), 2, 9),
        (2, (1, 1, 1, 1), (2, 1, 1, 1), 3, 2),
        (3, (2, 1), (2, 2), 2, 9),
        (2, (1, 1), (1, 1), 1, 2),
        (2, (1,), (1,), 1, 1),
    ],
)
def test_exact_alpha_examples(graph, q, n, m, k, expected):
    g = graph(q, n, m)
    result = exact_alpha_k(g, k)
    assert (result.value, result.exact) == (expected, True)
    assert is_k_independent(g, result.witness, k)
    value, exact = result
    assert value == expected and exact


@pytest.mark.parametrize("q,n,m,k", [(2, (2, 1), (2, 1), 1), (2, (2, 1), (2, 1), 2), (2, (1, 1, 1, 1), (2, 1, 1, 1), 2), (2, (1,) * 5, (1,) * 5, 2), (2, (1, 1, 1), (2, 2, 1), 2), (3, (1, 1), (2, 1), 1)])
def test_symmetry_breaking_matches_plain_search(graph, q, n, m, k):
    g = graph(q, n, m)
    adj = rows_to_bitsets(power_graph_rows(g, k), g.vertex_count)
    assert exact_alpha_k(g, k).value == _plain_alpha(adj) == max_independent_set(adj).value


def test_budget_exhaustion_reports_lower_bound(graph):
    g = graph(2, (2, 1, 1, 1), (2, 2, 2, 1))
    result = exact_alpha_k(g, 2, budget_seconds=None, node_limit=50)
    assert not result.exact
    assert is_k_independent(g, result.witness, 2)


def test_degeneracy_relabel_is_a_relabelling():
    adj = [0b0110, 0b1001, 0b1001, 0b0110]
    sub, labels = degeneracy_relabel(adj, 0b1111)
    assert sorted(labels) == [0, 1, 2, 3]
    for i, li in enumerate(labels):
        for j, lj in enumerate(labels):
            assert bool(sub[i] >> j & 1) == bool(adj[li] >> lj & 1)


@pytest.mark.parametrize("q,n,m", [(2, (2, 1), (2, 1)), (2, (1, 1, 1), (2, 2, 2)), (2, (2, 2), (2, 2)), (3, (2,), (2,))])
def test_verify_regularities(graph, q, n, m):
    g = graph(q, n, m)
    report = verify_regularities(g, srk_spectrum(g.params), L=4)
    assert report.passed, report.failures
    with pytest.raises(ValueError):
        verify_regularities(g, srk_spectrum(g.params), L=1)


def test_hamming_like_array(graph):
    g = graph(2, (1, 1, 1), (2, 2, 2))
    assert explicit_distance_regular(g) == (True, IntersectionArray((9, 6, 3), (1, 2, 3)))


def test_partial_regularity_witness(graph):
    g = graph(2, (2, 2), (2, 2))
    (x, cx), (y, cy) = partial_regularity_witness(g, 2)
    assert cx != cy
    dist = geodesic_distances(g, 0)
    assert dist[x] == dist[y] == 2
    # recount c_2 directly from the neighbour lists
    for v, c in ((x, cx), (y, cy)):
        assert int((dist[g.neighbors[v]] == 1).sum()) == c
    assert len(distance_profile(g, 0)[2]) >= 2
    assert partial_regularity_witness(graph(2, (2,), (2,)), 2) is None
