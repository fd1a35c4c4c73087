"""Explicit matrix tuples and the sum-rank-metric graph built from them."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Sequence

import numpy as np

from ..core import ParameterError, SrkParams
from ..spectra import regularity_delta
from .field import FieldTable, field_for

DEFAULT_VERTEX_CAP = 2**16


class VertexCapExceeded(RuntimeError):
    """The requested graph has more vertices than the configured cap."""


class ShapeMismatchError(ParameterError):
    """A matrix tuple does not match the block shapes of its parameters."""


@dataclass(frozen=True)
class MatrixTuple:
    """One matrix per block, entries are field element labels."""

    blocks: tuple[np.ndarray, ...]

    @classmethod
    def from_lists(cls, blocks: Sequence) -> MatrixTuple:
        return cls(tuple(np.atleast_2d(np.asarray(b, dtype=np.int64)) for b in blocks))

    def check(self, params: SrkParams) -> None:
        if len(self.blocks) != params.t:
            raise ShapeMismatchError(f"expected {params.t} blocks, got {len(self.blocks)}")
        for blk, shape in zip(self.blocks, params.blocks):
            if blk.shape != shape:
                raise ShapeMismatchError(f"block shape {blk.shape} does not match {shape}")
            if blk.size and (blk.min() < 0 or blk.max() >= params.q):
                raise ShapeMismatchError(f"entries must be field labels in 0..{params.q - 1}")

    def flat(self) -> np.ndarray:
        return np.concatenate([b.ravel() for b in self.blocks]) if self.blocks else np.zeros(0, np.int64)


class TupleCodec:
    """Bijection between matrix tuples and vertex indices 0..V-1.

    The flat coordinate vector lists the blocks in normalized order, each
    block row-major.  Coordinate j carries weight q^j (coordinate 0 is the
    least significant digit).
    """

    def __init__(self, params: SrkParams) -> None:
        self.params = params
        self.length = params.dimension
        self.weights = np.array([params.q**j for j in range(self.length)], dtype=np.int64)
        offsets = [0]
        for a, b in params.blocks:
            offsets.append(offsets[-1] + a * b)
        self.offsets = tuple(offsets)

    def encode(self, x: MatrixTuple) -> int:
        x.check(self.params)
        return int(x.flat() @ self.weights)

    def encode_digits(self, digits: np.ndarray) -> np.ndarray:
        """Vertex indices of rows of flat coordinate vectors."""
        return digits @ self.weights

    def digits(self, index) -> np.ndarray:
        idx = np.asarray(index, dtype=np.int64)
        return (idx[..., None] // self.weights) % self.params.q

    def decode(self, index: int) -> MatrixTuple:
        if not 0 <= index < self.params.size:
            raise IndexError(f"vertex index {index} out of range")
        flat = self.digits(index)
        blocks = []
        for (a, b), lo, hi in zip(self.params.blocks, self.offsets, self.offsets[1:]):
            blocks.append(flat[lo:hi].reshape(a, b))
        return MatrixTuple(tuple(blocks))


def srk_weight(params: SrkParams, x: MatrixTuple, field: FieldTable | None = None) -> int:
    """Sum over blocks of the rank of each block."""
    x.check(params)
    field = field or field_for(params.q)
    return sum(field.rank(b) for b in x.blocks)


def srk_distance(params: SrkParams, x: MatrixTuple, y: MatrixTuple, field: FieldTable | None = None) -> int:
    x.check(params)
    y.check(params)
    field = field or field_for(params.q)
    diff = MatrixTuple(tuple(field.sub[a, b] for a, b in zip(x.blocks, y.blocks)))
    return srk_weight(params, diff, field)


def rank_one_blocks(a: int, b: int, field: FieldTable) -> list[np.ndarray]:
    """All rank-one a x b matrices over the field, as sorted flat label vectors."""
    q = field.q
    seen = set()
    for u in product(range(q), repeat=a):
        if not any(u):
            continue
        for v in product(range(q), repeat=b):
            if any(v):
                seen.add(tuple(int(field.mul[s, w]) for s in u for w in v))
    return [np.array(m, dtype=np.int64) for m in sorted(seen)]


def connecting_set(params: SrkParams, field: FieldTable | None = None) -> np.ndarray:
    """Flat coordinate vectors of all tuples of sum-rank one, one per row."""
    field = field or field_for(params.q)
    codec = TupleCodec(params)
    rows = []
    for i, (a, b) in enumerate(params.blocks):
        for mat in rank_one_blocks(a, b, field):
            vec = np.zeros(codec.length, dtype=np.int64)
            vec[codec.offsets[i]:codec.offsets[i + 1]] = mat
            rows.append(vec)
    return np.array(rows, dtype=np.int64).reshape(len(rows), codec.length)


@dataclass
class OracleGraph:
    """Explicit sum-rank-metric graph as a Cayley graph on (Mat, +)."""

    params: SrkParams
    field: FieldTable
    codec: TupleCodec
    digits: np.ndarray  # V x D flat coordinates of every vertex
    neighbors: np.ndarray  # V x delta, row v lists v + s for s in S
    _bitsets: list[int] | None = dc_field(default=None, repr=False)
    _ranks: np.ndarray | None = dc_field(default=None, repr=False)

    @property
    def vertex_count(self) -> int:
        return self.neighbors.shape[0]

    @property
    def degree(self) -> int:
        return self.neighbors.shape[1]

    @property
    def edge_count(self) -> int:
        pairs = {(int(min(u, v)), int(max(u, v))) for u, row in enumerate(self.neighbors) for v in row}
        return len(pairs)

    def add(self, u, v) -> np.ndarray:
        """Vertex index of u + v (elementwise over arrays of indices)."""
        return self.codec.encode_digits(self.field.add[self.digits[u], self.digits[v]])

    def subtract(self, u, v) -> np.ndarray:
        return self.codec.encode_digits(self.field.sub[self.digits[u], self.digits[v]])

    def translate(self, offsets: np.ndarray) -> np.ndarray:
        """V x len(offsets) array with entry (v, j) the index of v + offsets[j]."""
        table = self.field.add[self.digits[:, None, :], self.digits[offsets][None, :, :]]
        return self.codec.encode_digits(table)

    def bitsets(self) -> list[int]:
        """Adjacency rows as Python integers (bit u of row v set iff uv is an edge)."""
        if self._bitsets is None:
            self._bitsets = rows_to_bitsets(self.neighbors, self.vertex_count)
        return self._bitsets

    def block_ranks(self) -> np.ndarray:
        """V x t array of the rank of every block of every vertex."""
        if self._ranks is None:
            q = self.params.q
            out = np.zeros((self.vertex_count, self.params.t), dtype=np.int64)
            blocks = zip(self.params.blocks, self.codec.offsets, self.codec.offsets[1:])
            for i, ((a, b), lo, hi) in enumerate(blocks):
                place = np.array([q**j for j in range(hi - lo)], dtype=np.int64)
                codes = np.arange(q ** (hi - lo), dtype=np.int64)
                local_digits = (codes[:, None] // place) % q
                ranks = np.array([self.field.rank(row.reshape(a, b)) for row in local_digits], dtype=np.int64)
                out[:, i] = ranks[self.digits[:, lo:hi] @ place]
            self._ranks = out
        return self._ranks

    def weights(self) -> np.ndarray:
        """Sum-rank weight of every vertex, by Gaussian elimination block by block."""
        return self.block_ranks().sum(axis=1)

    def dump(self) -> str:
        p = self.params
        lines = [
            f"srk-graph q={p.q} n={','.join(map(str, p.n))} m={','.join(map(str, p.m))} V={self.vertex_count}"
        ]
        for u in range(self.vertex_count):
            for v in sorted(int(x) for x in self.neighbors[u] if x > u):
                lines.append(f"{u} {v}")
        return "\n".join(lines) + "\n"


def rows_to_bitsets(neighbor_rows, vertex_count: int) -> list[int]:
    out = []
    for row in neighbor_rows:
        mask = np.zeros(vertex_count, dtype=np.uint8)
        mask[np.asarray(row, dtype=np.int64)] = 1
        out.append(int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little"))
    return out


def build_graph(params: SrkParams, limit: int = DEFAULT_VERTEX_CAP) -> OracleGraph:
    """Build the graph by translating the rank-one connecting set."""
    V = params.size
    if V > limit:
        raise VertexCapExceeded(f"{V} vertices exceed the cap of {limit}")
    field = field_for(params.q)
    codec = TupleCodec(params)
    digits = codec.digits(np.arange(V, dtype=np.int64)).reshape(V, codec.length)
    S = connecting_set(params, field)
    if S.shape[0] != regularity_delta(params):
        raise AssertionError("connecting set size disagrees with the vertex degree")
    neighbors = codec.encode_digits(field.add[digits[:, None, :], S[None, :, :]])
    return OracleGraph(params, field, codec, digits, neighbors.reshape(V, S.shape[0]))


def geodesic_distances(graph: OracleGraph, source: int) -> np.ndarray:
    """BFS distances from one vertex; unreachable vertices would get -1."""
    dist = np.full(graph.vertex_count, -1, dtype=np.int64)
    dist[source] = 0
    frontier = np.array([source], dtype=np.int64)
    level = 0
    while frontier.size:
        level += 1
        nbrs = np.unique(graph.neighbors[frontier].ravel())
        nbrs = nbrs[dist[nbrs] < 0]
        dist[nbrs] = level
        frontier = nbrs
    return dist
