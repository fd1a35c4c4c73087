"""Adjacency spectra of sum-rank-metric graphs.

The graph of Mat(n, m, F_q) is the Cartesian product of bilinear forms
graphs, one per block, so its spectrum is the Minkowski sum of the block
spectra.  Nothing here builds the graph itself.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from math import comb, prod

from .core import SrkParams, normalize_params


@dataclass(frozen=True)
class Spectrum:
    """Distinct eigenvalues (descending) with multiplicities."""

    entries: tuple[tuple[int, int], ...]
    vertex_count: int

    def __post_init__(self) -> None:
        eigs = [e for e, _ in self.entries]
        if any(a <= b for a, b in zip(eigs, eigs[1:])):
            raise ValueError("eigenvalues must be strictly decreasing")
        if sum(k for _, k in self.entries) != self.vertex_count:
            raise ValueError("multiplicities must sum to the vertex count")

    @classmethod
    def from_mapping(cls, mults: dict[int, int]) -> Spectrum:
        entries = tuple(sorted(((e, k) for e, k in mults.items() if k), reverse=True))
        return cls(entries, sum(k for _, k in entries))

    @property
    def thetas(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self.entries)

    @property
    def mults(self) -> tuple[int, ...]:
        return tuple(k for _, k in self.entries)

    @property
    def r(self) -> int:
        """Index of the smallest eigenvalue (number of distinct eigenvalues - 1)."""
        return len(self.entries) - 1

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)


@dataclass(frozen=True)
class IntersectionArray:
    b: tuple[int, ...]
    c: tuple[int, ...]

    @property
    def diameter(self) -> int:
        return len(self.b)

    def class_sizes(self) -> list[int]:
        """Sizes k_0..k_D of the distance classes around any vertex."""
        sizes = [1]
        for bi, ci in zip(self.b, self.c):
            num = sizes[-1] * bi
            if num % ci:
                raise ArithmeticError("intersection array gives non-integral class size")
            sizes.append(num // ci)
        return sizes


def _exact_div(num: int, den: int) -> int:
    quo, rem = divmod(num, den)
    if rem:
        raise ArithmeticError(f"{num} is not divisible by {den}")
    return quo


def bilinear_spectrum(n: int, m: int, q: int) -> Spectrum:
    """Spectrum of the bilinear forms graph on n x m matrices over F_q (n <= m)."""
    if not 1 <= n <= m:
        raise ValueError(f"need 1 <= n <= m, got n={n}, m={m}")
    entries = []
    mult = 1
    for i in range(n + 1):
        theta = _exact_div((q ** (n - i) - 1) * (q**m - q**i) - q**i + 1, q - 1)
        entries.append((theta, mult))
        # multiplicity of the next eigenvalue extends the running product
        mult = _exact_div(mult * (q ** (n - i) - 1) * (q**m - q**i), q ** (i + 1) - 1)
    return Spectrum(tuple(entries), q ** (n * m))


def product_spectrum(*spectra: Spectrum) -> Spectrum:
    """Spectrum of a Cartesian product; colliding sums are merged."""
    acc: dict[int, int] = {0: 1}
    for spec in spectra:
        nxt: dict[int, int] = defaultdict(int)
        for e1, k1 in acc.items():
            for e2, k2 in spec.entries:
                nxt[e1 + e2] += k1 * k2
        acc = nxt
    return Spectrum.from_mapping(acc)


def power_spectrum(spec: Spectrum, exponent: int) -> Spectrum:
    """Spectrum of the Cartesian product of ``exponent`` copies, by repeated squaring."""
    if exponent < 0:
        raise ValueError("exponent must be non-negative")
    if len(spec.entries) == 2:
        # Hamming-type power: pick j copies of the smaller eigenvalue
        (a, ka), (b, kb) = spec.entries
        return Spectrum.from_mapping(
            {(exponent - j) * a + j * b: comb(exponent, j) * ka ** (exponent - j) * kb**j for j in range(exponent + 1)}
        )
    result = Spectrum(((0, 1),), 1)
    base = spec
    while exponent:
        if exponent & 1:
            result = product_spectrum(result, base)
        exponent >>= 1
        if exponent:
            base = product_spectrum(base, base)
    return result


def srk_spectrum(params: SrkParams) -> Spectrum:
    counts = Counter(params.blocks)
    return product_spectrum(
        *(power_spectrum(bilinear_spectrum(a, b, params.q), k) for (a, b), k in counts.items())
    )


def regularity_delta(params: SrkParams) -> int:
    """Vertex degree: the number of sum-rank-one tuples."""
    q = params.q
    return _exact_div(sum((q**a - 1) * (q**b - 1) for a, b in params.blocks), q - 1)


def closed_walk_count(spec: Spectrum, length: int) -> int:
    """Total number of closed walks of the given length (trace of A^length)."""
    if length < 0:
        raise ValueError("walk length must be non-negative")
    return sum(k * e**length for e, k in spec.entries)


def bilinear_intersection_array(n: int, m: int, q: int) -> IntersectionArray:
    b = tuple(
        _exact_div(q ** (2 * i) * (q ** (m - i) - 1) * (q ** (n - i) - 1), q - 1)
        for i in range(n)
    )
    c = tuple(_exact_div(q ** (i - 1) * (q**i - 1), q - 1) for i in range(1, n + 1))
    return IntersectionArray(b, c)


def classify_distance_regular(params: SrkParams) -> tuple[bool, IntersectionArray | None]:
    """Decide distance-regularity and return the intersection array if it exists.

    A single block is a bilinear forms graph and always distance-regular.
    With two or more blocks the graph is distance-regular exactly in the
    Hamming case: every n_i = 1 and all m_i equal.
    """
    q, t = params.q, params.t
    if t == 1:
        return True, bilinear_intersection_array(params.n[0], params.m[0], q)
    if all(a == 1 for a in params.n) and len(set(params.m)) == 1:
        qm = q ** params.m[0] - 1
        b = tuple((t - i) * qm for i in range(t))
        c = tuple(range(1, t + 1))
        return True, IntersectionArray(b, c)
    return False, None


def spectrum_for(q: int, n, m) -> Spectrum:
    """Convenience wrapper: normalize then compute the spectrum."""
    return srk_spectrum(normalize_params(q, n, m))


def theta_multiplicity_product(n: int, m: int, q: int, i: int) -> int:
    """Multiplicity of the i-th bilinear forms eigenvalue as a single product."""
    return _exact_div(
        prod((q ** (n - s) - 1) * (q**m - q**s) for s in range(i)),
        prod(q ** (s + 1) - 1 for s in range(i)),
    )
