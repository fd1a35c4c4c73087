"""Ratio-Type eigenvalue bounds on the k-independence number.

The sum-rank-metric graph is walk-regular, so the diagonal of any matrix
polynomial p(A) is constant and equal to tr p(A) / |V|.  Every quantity
below is therefore a function of the spectrum alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, prod
from typing import Sequence

from .spectra import Spectrum, closed_walk_count


class DegenerateBoundError(ArithmeticError):
    """The bound's denominator vanishes or its hypotheses are not met."""


@dataclass(frozen=True)
class RationalPolynomial:
    """Polynomial with exact rational coefficients, constant term first."""

    coefficients: tuple[Fraction, ...]

    def __init__(self, coefficients: Sequence) -> None:
        coeffs = [Fraction(c) for c in coefficients]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs) or (Fraction(0),))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc


@dataclass(frozen=True)
class RatioTypeEvaluation:
    w: Fraction
    lam: Fraction
    bound_real: Fraction

    @property
    def bound_floor(self) -> int:
        return floor(self.bound_real)


def ratio_type_generic(spec: Spectrum, p: RationalPolynomial) -> RatioTypeEvaluation:
    """Evaluate ``|V| (W(p) - lambda(p)) / (p(theta_0) - lambda(p))``."""
    values = [p(theta) for theta in spec.thetas]
    w = sum((k * v for k, v in zip(spec.mults, values)), Fraction(0)) / spec.vertex_count
    lam = min(values[1:])
    top = values[0]
    if top <= lam:
        raise DegenerateBoundError("p(theta_0) must exceed min p(theta_i), i >= 1")
    return RatioTypeEvaluation(w, lam, spec.vertex_count * (w - lam) / (top - lam))


def _largest_at_most_minus_one(thetas: Sequence[int]) -> int:
    for i, theta in enumerate(thetas):
        if theta <= -1:
            return i
    raise DegenerateBoundError("no eigenvalue <= -1")


def ratio_type_d3_real(spec: Spectrum) -> Fraction:
    if spec.r < 2:
        raise DegenerateBoundError("need at least three distinct eigenvalues")
    th = spec.thetas
    i = _largest_at_most_minus_one(th)
    t0, ti, tp = th[0], th[i], th[i - 1]
    return Fraction(spec.vertex_count * (t0 + ti * tp), (t0 - ti) * (t0 - tp))


def ratio_type_d3(spec: Spectrum) -> int:
    """Best Ratio-Type bound on alpha_2, i.e. on codes of minimum distance 3."""
    return floor(ratio_type_d3_real(spec))


def d4_threshold(spec: Spectrum) -> Fraction:
    th = spec.thetas
    t0, tr = th[0], th[-1]
    if tr == -1:
        raise DegenerateBoundError("smallest eigenvalue -1 makes the threshold undefined")
    delta = Fraction(closed_walk_count(spec, 3), spec.vertex_count)
    return -(t0 * t0 + t0 * tr - delta) / (t0 * (tr + 1))


def ratio_type_d4_parts(spec: Spectrum) -> tuple[Fraction, int, Fraction]:
    """Return ``(Delta, s, bound_real)`` for the distance-4 bound."""
    if spec.r < 3:
        raise DegenerateBoundError("need at least four distinct eigenvalues")
    th = spec.thetas
    threshold = d4_threshold(spec)
    s = max(i for i, theta in enumerate(th) if theta >= threshold)
    if not 1 <= s < spec.r:
        raise DegenerateBoundError(f"threshold index {s} leaves no valid (s, s+1) pair")
    delta = Fraction(closed_walk_count(spec, 3), spec.vertex_count)
    t0, ts, ts1, tr = th[0], th[s], th[s + 1], th[-1]
    num = delta - t0 * (ts + ts1 + tr) - ts * ts1 * tr
    den = (t0 - ts) * (t0 - ts1) * (t0 - tr)
    return delta, s, spec.vertex_count * num / den


def ratio_type_d4(spec: Spectrum) -> int:
    """Best Ratio-Type bound on alpha_3, i.e. on codes of minimum distance 4."""
    return floor(ratio_type_d4_parts(spec)[2])


def ratio_type(spec: Spectrum, d: int) -> int:
    if d == 3:
        return ratio_type_d3(spec)
    if d == 4:
        return ratio_type_d4(spec)
    raise ValueError("closed-form Ratio-Type bounds exist only for d = 3 and d = 4")


def d3_optimal_polynomial(spec: Spectrum) -> RationalPolynomial:
    """A quadratic attaining the distance-3 bound: (x - theta_i)(x - theta_{i-1})."""
    th = spec.thetas
    i = _largest_at_most_minus_one(th)
    a, b = th[i], th[i - 1]
    return RationalPolynomial([a * b, -(a + b), 1])


def family_epsilon(t: int, q: int) -> int:
    return (t - 1) % q


def closed_form_family_d3_real(q: int, n: int, m: int, t: int) -> Fraction:
    """Ratio-Type bound on alpha_2 for n = (n, 1, ..., 1), m = (m, 1, ..., 1)."""
    if not (m >= 2 and 1 <= n <= m and t >= 1):
        raise ValueError("parameters outside the (n,1,...,1), (m,1,...,1) family")
    eps = family_epsilon(t, q)
    core = (q**m - 1) * (q**n - 1)
    num = q ** (m * n + t - 1) * (q - 1) * (
        (q - 1) * (eps + 1) * (eps - q + 1) + core + (q - 1) ** 2 * (t - 1)
    )
    den = (eps * (q - 1) + core + (q - 1) ** 2 * (t - 1) + (q - 1)) * (
        eps * (q - 1) + core + (q - 1) ** 2 * (t - 2)
    )
    return Fraction(num, den)


def closed_form_family_d3(q: int, n: int, m: int, t: int) -> int:
    return floor(closed_form_family_d3_real(q, n, m, t))


def closed_form_family_exact(q: int, n: int, m: int, t: int) -> bool:
    """True iff the closed form coincides with the spectral distance-3 bound.

    The closed form assumes the two eigenvalues nearest -1 are -1 - eps and
    q - 1 - eps.  When the Hamming factor is short relative to the first
    block this fails; the closed form is then still an upper bound, only a
    weaker one.
    """
    from .core import normalize_params
    from .spectra import srk_spectrum

    spec = srk_spectrum(normalize_params(q, (n,) + (1,) * (t - 1), (m,) + (1,) * (t - 1)))
    if spec.r < 2:
        return False
    eps = family_epsilon(t, q)
    i = _largest_at_most_minus_one(spec.thetas)
    return (spec.thetas[i], spec.thetas[i - 1]) == (-1 - eps, q - 1 - eps)


def closed_form_n1_real(q: int, m: int, t: int) -> Fraction:
    """Specialisation of the family bound to n = (1, ..., 1)."""
    eps = family_epsilon(t, q)
    base = q**m + (q - 1) * (t - 1)
    num = q ** (m + t - 1) * (q**m - 1 + (t - 1) * (q - 1) + (-eps - 1) * (q - eps - 1))
    return Fraction(num, (base + eps) * (base + eps - q))


def closed_form_n2_real(q: int, m: int, t: int) -> Fraction:
    """Specialisation of the family bound to n = (2, 1, ..., 1)."""
    eps = family_epsilon(t, q)
    num = q ** (2 * m + t - 1) * (q**m + q ** (m + 1) - t + q * (t - 3 - eps) + (1 + eps) ** 2)
    base = 1 + q**m * (q + 1) - t + eps
    return Fraction(num, (base + q * (t - 3)) * (base + q * (t - 2)))


def cartesian_product_bound(block_alphas: Sequence[int], block_sizes: Sequence[int]) -> int:
    """min over l of alpha_k(G_l) times the sizes of all other factors."""
    if len(block_alphas) != len(block_sizes):
        raise ValueError("need one alpha per factor")
    if not block_alphas:
        raise ValueError("need at least one factor")
    total = prod(block_sizes)
    return min(a * (total // s) for a, s in zip(block_alphas, block_sizes))
