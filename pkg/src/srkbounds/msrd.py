"""Non-existence of MSRD codes: block-length thresholds and exclusion scans.

A code meeting the Singleton bound is MSRD.  Whenever some other upper bound
on A_q(n, m, d) falls strictly below the Singleton value, no MSRD code with
those parameters exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable, Iterator

from .bounds_classical import (
    CLASSICAL_BOUNDS,
    PUNCTURED,
    SINGLETON,
    BoundValue,
    classical_bound,
    singleton,
)
from .bounds_spectral import DegenerateBoundError, ratio_type
from .core import SrkParams, normalize_params
from .lp_minor import lp_bound
from .spectra import srk_spectrum

RATIO_TYPE = "RT"
LINEAR_PROGRAM = "LP"
SPECTRAL_BOUNDS = (RATIO_TYPE, LINEAR_PROGRAM)
DEFAULT_METHODS = (RATIO_TYPE,) + tuple(b for b in CLASSICAL_BOUNDS if b != SINGLETON)
ALL_METHODS = SPECTRAL_BOUNDS + CLASSICAL_BOUNDS


def _exact_div(num: int, den: int) -> int:
    quo, rem = divmod(num, den)
    if rem:
        raise ArithmeticError(f"threshold formula gave {num}/{den}, which is not an integer")
    return quo


def msrd_threshold_t(q: int, m: int, n: int) -> int:
    """Largest block length t for which an MSRD code with d = 3 may exist.

    Applies to n = (n, 1, ..., 1), m = (m, 1, ..., 1) with m >= n >= 1 and m >= 2.
    """
    normalize_params(q, (n,), (m,))  # validates q and positivity
    if not (m >= 2 and 1 <= n <= m):
        raise ValueError(f"need m >= 2 and 1 <= n <= m, got n={n}, m={m}")
    if n == 1:
        return 1 + q**m
    if n == 2:
        return _exact_div(q ** (2 * m) - q ** (m + 1) - q**m + 2 * q - 1, q - 1)
    num = q ** (2 * m + 1) - q ** (2 * m) - q ** (m + n) + q**m + q**n + q * q - 3 * q + 1
    return _exact_div(num, (q - 1) ** 2)


def spectral_bound(name: str, params: SrkParams, d: int) -> BoundValue:
    """Ratio-Type or minor-LP bound on A_q(n, m, d), i.e. on alpha_{d-1}."""
    spec = srk_spectrum(params)
    try:
        if name == RATIO_TYPE:
            return BoundValue(RATIO_TYPE, ratio_type(spec, d))
        if name == LINEAR_PROGRAM:
            if not 2 <= d <= spec.r + 1:
                return BoundValue.na(LINEAR_PROGRAM)
            return BoundValue(LINEAR_PROGRAM, lp_bound(spec, d - 1))
    except (DegenerateBoundError, ValueError):
        return BoundValue.na(name)
    raise KeyError(f"unknown spectral bound {name!r}")


def evaluate_bound(name: str, params: SrkParams, d: int, psp_convention: str = PUNCTURED) -> BoundValue:
    if name in SPECTRAL_BOUNDS:
        return spectral_bound(name, params, d)
    return classical_bound(name, params, d, psp_convention)


@dataclass(frozen=True)
class MsrdVerdict:
    params: SrkParams
    d: int
    singleton_size: int
    bounds: tuple[BoundValue, ...]
    best_bound: BoundValue
    excluded: bool
    only_spectral: bool

    @property
    def vertex_count(self) -> int:
        return self.params.size

    def bound(self, name: str) -> BoundValue:
        return next(b for b in self.bounds if b.name == name)


def msrd_exclusion(
    params: SrkParams,
    d: int,
    methods: Iterable[str] = DEFAULT_METHODS,
    psp_convention: str = PUNCTURED,
) -> MsrdVerdict:
    """Compare every requested bound with the Singleton value.

    ``excluded`` means some bound is strictly below Singleton.  ``only_spectral``
    means a spectral bound is below Singleton while every applicable
    non-spectral bound is not.
    """
    names = [name for name in ALL_METHODS if name in set(methods)]
    unknown = set(methods) - set(ALL_METHODS)
    if unknown:
        raise KeyError(f"unknown bound names: {sorted(unknown)}")
    s_size = singleton(params, d).value
    values = tuple(evaluate_bound(name, params, d, psp_convention) for name in names)
    applicable = [b for b in values if b.applicable]
    best = min(applicable + [BoundValue(SINGLETON, s_size)], key=lambda b: b.value)
    spectral_wins = any(b.value < s_size for b in applicable if b.name in SPECTRAL_BOUNDS)
    others_hold = all(b.value >= s_size for b in applicable if b.name not in SPECTRAL_BOUNDS)
    return MsrdVerdict(
        params=params,
        d=d,
        singleton_size=s_size,
        bounds=values,
        best_bound=best,
        excluded=best.value < s_size,
        only_spectral=spectral_wins and others_hold,
    )


@dataclass(frozen=True)
class ScanGrid:
    """All q-ary block shapes with 1 <= n_i <= m_i <= max_m and at most max_t blocks."""

    q: int = 2
    max_m: int = 3
    max_t: int = 16
    exclude_all_ones_n: bool = True
    exclude_constant_m: bool = True

    def shapes(self, vertex_cap: int) -> Iterator[SrkParams]:
        kinds = [(a, b) for b in range(1, self.max_m + 1) for a in range(1, b + 1)]
        for t in range(1, self.max_t + 1):
            if self.q ** t > vertex_cap:
                break
            for combo in combinations_with_replacement(kinds, t):
                if self.q ** sum(a * b for a, b in combo) > vertex_cap:
                    continue
                params = normalize_params(self.q, [a for a, _ in combo], [b for _, b in combo])
                if self.exclude_all_ones_n and all(a == 1 for a in params.n):
                    continue
                if self.exclude_constant_m and len(set(params.m)) == 1:
                    continue
                yield params


def _canonical_key(params: SrkParams) -> tuple:
    return (params.size, params.t, params.n, params.m)


def msrd_scan(
    grid: ScanGrid | None,
    d: int,
    vertex_cap: int,
    methods: Iterable[str] = DEFAULT_METHODS,
    psp_convention: str = PUNCTURED,
) -> list[MsrdVerdict]:
    """Verdicts for every grid point within the cap, sorted by |V| then shape."""
    if grid is None:
        return []
    methods = tuple(methods)
    shapes = sorted((p for p in grid.shapes(vertex_cap) if d <= p.N), key=_canonical_key)
    return [msrd_exclusion(p, d, methods, psp_convention) for p in shapes]
