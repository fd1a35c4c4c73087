"""Finite fields F_q as lookup tables, plus rank by Gaussian elimination.

Elements are labelled 0..q-1.  For q = p^e with e > 1 the label of a field
element is the base-p integer formed by its coefficients in the polynomial
basis 1, x, ..., x^{e-1} modulo the lexicographically smallest primitive
polynomial of degree e.  Label 0 is the zero element, label 1 the identity.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np

from ..core import prime_power_decomposition


def _digits(value: int, p: int, e: int) -> list[int]:
    return [(value // p**i) % p for i in range(e)]


def _polymulmod(a: list[int], b: list[int], modulus: list[int], p: int) -> list[int]:
    """Multiply coefficient lists (low degree first) modulo a monic polynomial."""
    e = len(modulus) - 1
    prod_ = [0] * (2 * e - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod_[i + j] = (prod_[i + j] + x * y) % p
    for deg in range(len(prod_) - 1, e - 1, -1):
        coef = prod_[deg]
        if coef:
            for i in range(e + 1):
                prod_[deg - e + i] = (prod_[deg - e + i] - coef * modulus[i]) % p
    return prod_[:e]


def _is_primitive(modulus: list[int], p: int) -> bool:
    e = len(modulus) - 1
    q = p**e
    x = [0, 1] + [0] * (e - 2) if e > 1 else [0]
    one = [1] + [0] * (e - 1)
    seen = set()
    cur = one
    for _ in range(q - 1):
        key = tuple(cur)
        if key in seen or not any(cur):
            return False
        seen.add(key)
        cur = _polymulmod(cur, x, modulus, p)
    return cur == one


def smallest_primitive_polynomial(p: int, e: int) -> tuple[int, ...]:
    """Monic primitive polynomial of degree e over F_p, coefficients low degree first."""
    # lexicographic order on (c_{e-1}, ..., c_0)
    for high_to_low in product(range(p), repeat=e):
        modulus = list(reversed(high_to_low)) + [1]
        if modulus[0] and _is_primitive(modulus, p):
            return tuple(modulus)
    raise ArithmeticError(f"no primitive polynomial of degree {e} over F_{p}")


class FieldTable:
    """Addition, negation, multiplication and inversion tables of F_q."""

    def __init__(self, q: int) -> None:
        dec = prime_power_decomposition(q)
        if dec is None:
            raise ValueError(f"q must be a prime power, got {q}")
        p, e = dec
        self.q, self.p, self.e = q, p, e
        self.modulus = smallest_primitive_polynomial(p, e) if e > 1 else (0, 1)
        digits = [_digits(v, p, e) for v in range(q)]
        weights = [p**i for i in range(e)]

        def label(ds) -> int:
            return sum(d * w for d, w in zip(ds, weights))

        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(q):
                add[a, b] = label([(x + y) % p for x, y in zip(digits[a], digits[b])])
                if e == 1:
                    mul[a, b] = (a * b) % p
                else:
                    mul[a, b] = label(_polymulmod(digits[a], digits[b], list(self.modulus), p))
        self.add = add
        self.mul = mul
        self.neg = np.array([int(np.flatnonzero(add[a] == 0)[0]) for a in range(q)], dtype=np.int64)
        self.sub = add[:, self.neg]
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.flatnonzero(mul[a] == 1)[0])
        self.inv = inv

    def __repr__(self) -> str:
        return f"FieldTable(q={self.q})"

    def rank(self, matrix) -> int:
        """Rank of a matrix of element labels, by Gaussian elimination."""
        rows = [list(map(int, row)) for row in np.atleast_2d(np.asarray(matrix))]
        if not rows or not rows[0]:
            return 0
        add, mul, neg, inv = self.add, self.mul, self.neg, self.inv
        ncols = len(rows[0])
        rank = 0
        for col in range(ncols):
            pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
            if pivot is None:
                continue
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            scale = inv[rows[rank][col]]
            prow = [int(mul[scale, v]) for v in rows[rank]]
            rows[rank] = prow
            for i in range(len(rows)):
                if i != rank and rows[i][col]:
                    f = neg[rows[i][col]]
                    rows[i] = [int(add[v, mul[f, w]]) for v, w in zip(rows[i], prow)]
            rank += 1
            if rank == len(rows):
                break
        return rank


@lru_cache(maxsize=None)
def field_for(q: int) -> FieldTable:
    return FieldTable(q)
