"""Coding-theoretic upper bounds on A_q(n, m, d).

Four bounds are induced from Hamming-metric codes over F_{q^m} of length N
(m = max m_i); the others work on the sum-rank space directly.  Each bound
returns a :class:`BoundValue`; bounds whose hypotheses fail are reported as
not applicable rather than raising.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, floor

from .core import SrkParams, sum_rank_distribution

INDUCED_SINGLETON = "iS"
INDUCED_HAMMING = "iH"
INDUCED_PLOTKIN = "iP"
INDUCED_ELIAS = "iE"
SINGLETON = "S"
SPHERE_PACKING = "SP"
PROJECTIVE_SPHERE_PACKING = "PSP"
TOTAL_DISTANCE = "TD"

CLASSICAL_BOUNDS = (
    INDUCED_SINGLETON,
    INDUCED_HAMMING,
    INDUCED_PLOTKIN,
    INDUCED_ELIAS,
    SINGLETON,
    SPHERE_PACKING,
    PROJECTIVE_SPHERE_PACKING,
    TOTAL_DISTANCE,
)

# PSP conventions; see projective_sphere_packing
PUNCTURED = "punctured"
TABULATED = "tabulated"


@dataclass(frozen=True)
class BoundValue:
    name: str
    value: int | None

    def __post_init__(self) -> None:
        if self.value is not None and self.value < 1:
            raise ValueError(f"{self.name}: bound value must be >= 1, got {self.value}")

    @property
    def applicable(self) -> bool:
        return self.value is not None

    @classmethod
    def na(cls, name: str) -> BoundValue:
        return cls(name, None)

    def table_value(self) -> int:
        """Value as printed in tables, where 0 marks a non-applicable bound."""
        return 0 if self.value is None else self.value


@dataclass(frozen=True)
class SingletonDecomposition:
    """``d - 1 = n_1 + ... + n_{j-1} + delta`` with ``0 <= delta < n_j`` (j is 1-based)."""

    j: int
    delta: int


@dataclass(frozen=True)
class ProjectiveDecomposition:
    """``d - 3 = n_1 + ... + n_ell + delta_prime`` and the reduced block shapes."""

    ell: int
    delta_prime: int
    n_prime: tuple[int, ...]
    m_prime: tuple[int, ...]


def _check_distance(params: SrkParams, d: int) -> None:
    if not 1 <= d <= params.N:
        raise ValueError(f"minimum distance {d} outside 1..{params.N}")


def _decompose(n: tuple[int, ...], value: int) -> tuple[int, int]:
    """Return ``(k, rest)`` with ``value = n_0 + ... + n_{k-1} + rest``, ``0 <= rest < n_k``."""
    k = 0
    while k < len(n) and value >= n[k]:
        value -= n[k]
        k += 1
    if k == len(n):
        raise ValueError("value exceeds the total number of rows")
    return k, value


def singleton_decomposition(params: SrkParams, d: int) -> SingletonDecomposition:
    _check_distance(params, d)
    k, delta = _decompose(params.n, d - 1)
    return SingletonDecomposition(k + 1, delta)


def projective_decomposition(params: SrkParams, d: int) -> ProjectiveDecomposition | None:
    """Split for the projective sphere-packing bound; ``None`` unless ``3 <= d <= N``.

    ``ell = 0`` and ``delta_prime = 0`` are both allowed.  A leading reduced
    block with no rows left cannot occur because ``delta_prime < n_{ell+1}``.
    """
    if not 3 <= d <= params.N:
        return None
    ell, dp = _decompose(params.n, d - 3)
    n_prime = (params.n[ell] - dp,) + params.n[ell + 1:]
    return ProjectiveDecomposition(ell, dp, n_prime, params.m[ell:])


def _capped(name: str, params: SrkParams, value: int) -> BoundValue:
    # the induced bounds live in F_{q^m}^N, which can be larger than the space itself
    return BoundValue(name, min(value, params.size))


def induced_singleton(params: SrkParams, d: int) -> BoundValue:
    _check_distance(params, d)
    return _capped(INDUCED_SINGLETON, params, params.q ** (params.max_m * (params.N - d + 1)))


def _hamming_ball(length: int, alphabet_minus_one: int, radius: int) -> int:
    return sum(comb(length, i) * alphabet_minus_one**i for i in range(radius + 1))


def induced_hamming(params: SrkParams, d: int) -> BoundValue:
    _check_distance(params, d)
    Q, N = params.q**params.max_m, params.N
    return _capped(INDUCED_HAMMING, params, Q**N // _hamming_ball(N, Q - 1, (d - 1) // 2))


def induced_plotkin(params: SrkParams, d: int) -> BoundValue:
    Q, N = params.q**params.max_m, params.N
    # d > (Q-1)N/Q  <=>  Q d > (Q-1) N
    den = Q * d - (Q - 1) * N
    if den <= 0:
        return BoundValue.na(INDUCED_PLOTKIN)
    return _capped(INDUCED_PLOTKIN, params, Q * d // den)


def induced_elias_terms(params: SrkParams, d: int) -> dict[int, Fraction]:
    """Real-valued Elias bound for every admissible radius w.

    Admissible means ``0 <= w <= N (Q - 1) / Q`` (upper end included) with a
    positive denominator, where ``Q = q^m``.
    """
    Q, N = params.q**params.max_m, params.N
    terms = {}
    w = 0
    while Q * w <= N * (Q - 1):
        den = Q * w * w - 2 * N * w * (Q - 1) + (Q - 1) * N * d
        if den > 0:
            terms[w] = Fraction(N * d * (Q - 1), den) * Fraction(Q**N, _hamming_ball(N, Q - 1, w))
        w += 1
    return terms


def induced_elias(params: SrkParams, d: int) -> BoundValue:
    terms = induced_elias_terms(params, d)
    if not terms:
        return BoundValue.na(INDUCED_ELIAS)
    return _capped(INDUCED_ELIAS, params, min(floor(v) for v in terms.values()))


def singleton(params: SrkParams, d: int) -> BoundValue:
    dec = singleton_decomposition(params, d)
    j = dec.j - 1
    exponent = sum(a * b for a, b in params.blocks[j:]) - params.m[j] * dec.delta
    return BoundValue(SINGLETON, params.q**exponent)


def ball_volume(params: SrkParams, radius: int) -> int:
    """Number of tuples of sum-rank at most ``radius``."""
    if not 0 <= radius <= params.N:
        raise ValueError(f"radius {radius} outside 0..{params.N}")
    return sum(sum_rank_distribution(params)[: radius + 1])


def sphere_packing(params: SrkParams, d: int) -> BoundValue:
    if d < 1:
        raise ValueError("minimum distance must be positive")
    radius = min((d - 1) // 2, params.N)
    return BoundValue(SPHERE_PACKING, params.size // ball_volume(params, radius))


def _radius_one_volume(q: int, blocks) -> int:
    return 1 + sum((q**a - 1) * (q**b - 1) for a, b in blocks) // (q - 1)


def projective_sphere_packing(params: SrkParams, d: int, convention: str = PUNCTURED) -> BoundValue:
    """Projective sphere-packing bound.

    ``punctured`` (default): delete the first ``d - 3`` rows, block by block,
    leaving a code of minimum distance at least 3 in Mat(n', m'), and divide
    |Mat(n', m')| by the radius-one ball of that space.

    ``tabulated``: the variant that reproduces the published tables.  The
    numerator is the same, but in the radius-one ball every remaining block
    has ``delta_prime`` rows removed (clamped at zero), which gives a smaller
    ball and hence a weaker, still valid, bound.  The two agree whenever
    ``delta_prime == 0``.
    """
    dec = projective_decomposition(params, d)
    if dec is None:
        return BoundValue.na(PROJECTIVE_SPHERE_PACKING)
    q = params.q
    size = q ** sum(a * b for a, b in zip(dec.n_prime, dec.m_prime))
    if convention == PUNCTURED:
        ball_blocks = zip(dec.n_prime, dec.m_prime)
    elif convention == TABULATED:
        rows = params.n[dec.ell:]
        ball_blocks = ((max(a - dec.delta_prime, 0), b) for a, b in zip(rows, dec.m_prime))
    else:
        raise ValueError(f"unknown convention {convention!r}")
    return BoundValue(PROJECTIVE_SPHERE_PACKING, size // _radius_one_volume(q, ball_blocks))


def total_distance(params: SrkParams, d: int) -> BoundValue:
    Q = sum(Fraction(1, params.q**b) for b in params.m)
    N, t = params.N, params.t
    den = d - N + Q
    if den <= 0:
        return BoundValue.na(TOTAL_DISTANCE)
    return BoundValue(TOTAL_DISTANCE, floor((d - N + t) / den))


_DISPATCH = {
    INDUCED_SINGLETON: induced_singleton,
    INDUCED_HAMMING: induced_hamming,
    INDUCED_PLOTKIN: induced_plotkin,
    INDUCED_ELIAS: induced_elias,
    SINGLETON: singleton,
    SPHERE_PACKING: sphere_packing,
    TOTAL_DISTANCE: total_distance,
}


def classical_bound(name: str, params: SrkParams, d: int, psp_convention: str = PUNCTURED) -> BoundValue:
    if name == PROJECTIVE_SPHERE_PACKING:
        return projective_sphere_packing(params, d, psp_convention)
    try:
        return _DISPATCH[name](params, d)
    except KeyError:
        raise KeyError(f"unknown classical bound {name!r}") from None


def all_classical(params: SrkParams, d: int, psp_convention: str = PUNCTURED) -> dict[str, BoundValue]:
    """Every classical bound, keyed by its short name."""
    return {name: classical_bound(name, params, d, psp_convention) for name in CLASSICAL_BOUNDS}
