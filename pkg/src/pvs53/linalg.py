"""Exact linear algebra over the rationals.

Matrices are numpy object arrays holding ``fractions.Fraction`` entries.
Every rank decision is exact; there are no tolerances anywhere here.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np


class SingularMatrixError(ArithmeticError):
    pass


def rat(x) -> Fraction:
    """Coerce ints, strings like ``"3/4"`` and Fractions to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction or a 'p/q' string")
    return Fraction(x)


def frac_array(rows) -> np.ndarray:
    a = np.array(rows, dtype=object)
    flat = a.reshape(-1)
    for k in range(flat.size):
        flat[k] = rat(flat[k])
    return a


def zeros(*shape: int) -> np.ndarray:
    a = np.empty(shape, dtype=object)
    a.fill(Fraction(0))
    return a


def identity(n: int) -> np.ndarray:
    a = zeros(n, n)
    for i in range(n):
        a[i, i] = Fraction(1)
    return a


def diag(entries: Sequence) -> np.ndarray:
    n = len(entries)
    a = zeros(n, n)
    for i, e in enumerate(entries):
        a[i, i] = rat(e)
    return a


def is_zero(a: np.ndarray) -> bool:
    return all(v == 0 for v in np.asarray(a, dtype=object).reshape(-1))


def equal(a: np.ndarray, b: np.ndarray) -> bool:
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    return a.shape == b.shape and all(x == y for x, y in zip(a.reshape(-1), b.reshape(-1)))


def rref(m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = np.array(m, dtype=object, copy=True)
    if a.ndim != 2:
        raise ValueError("rref needs a 2-d array")
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i, c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[[r, p]] = a[[p, r]]
        a[r] = a[r] / a[r, c]
        for i in range(nrows):
            if i != r and a[i, c] != 0:
                a[i] = a[i] - a[i, c] * a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m) -> int:
    m = np.asarray(m, dtype=object)
    if m.size == 0:
        return 0
    return len(rref(m)[1])


def nullspace(m: np.ndarray) -> list[np.ndarray]:
    """Basis of ``{v : m v = 0}``, one free variable set to 1 per vector."""
    m = np.asarray(m, dtype=object)
    ncols = m.shape[1]
    if m.shape[0] == 0:
        return [identity(ncols)[i] for i in range(ncols)]
    r, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = zeros(ncols)
        v[f] = Fraction(1)
        for row, pc in enumerate(pivots):
            v[pc] = -r[row, f]
        basis.append(v)
    return basis


def det(m: np.ndarray) -> Fraction:
    a = np.array(m, dtype=object, copy=True)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("determinant of a non-square matrix")
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i, c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[[c, p]] = a[[p, c]]
            result = -result
        result *= a[c, c]
        for i in range(c + 1, n):
            if a[i, c] != 0:
                a[i] = a[i] - (a[i, c] / a[c, c]) * a[c]
    return result


def inv(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=object)
    n = m.shape[0]
    aug = np.concatenate([m, identity(n)], axis=1)
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return r[:, n:]


def solve(m: np.ndarray, b: np.ndarray) -> np.ndarray:
    """One solution of ``m x = b``; raises ValueError when inconsistent."""
    m = np.asarray(m, dtype=object)
    b = np.asarray(b, dtype=object).reshape(-1, 1)
    ncols = m.shape[1]
    r, pivots = rref(np.concatenate([m, b], axis=1))
    if ncols in pivots:
        raise ValueError("inconsistent linear system")
    x = zeros(ncols)
    for row, pc in enumerate(pivots):
        x[pc] = r[row, ncols]
    return x


def row_space(vectors: Iterable[np.ndarray], width: int) -> np.ndarray:
    """Echelon basis (as rows) of the span of ``vectors``."""
    rows = [np.asarray(v, dtype=object) for v in vectors]
    if not rows:
        return zeros(0, width)
    r, pivots = rref(np.array(rows, dtype=object))
    return r[: len(pivots)]


def same_span(a: Sequence[np.ndarray], b: Sequence[np.ndarray]) -> bool:
    a = list(a)
    b = list(b)
    ra = rank(np.array(a, dtype=object)) if a else 0
    rb = rank(np.array(b, dtype=object)) if b else 0
    if ra != rb:
        return False
    if not a:
        return True
    return rank(np.array(a + b, dtype=object)) == ra


class Echelon:
    """Incrementally maintained echelon basis of a subspace of Q^n."""

    def __init__(self, width: int):
        self.width = width
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v) -> np.ndarray:
        v = np.array(v, dtype=object, copy=True)
        for row, pc in zip(self.rows, self.pivots):
            if v[pc] != 0:
                v = v - v[pc] * row
        return v

    def contains(self, v) -> bool:
        return is_zero(self.reduce(v))

    def add(self, v) -> bool:
        """Add ``v``; returns False when it was already in the span."""
        v = self.reduce(v)
        pc = next((i for i in range(self.width) if v[i] != 0), None)
        if pc is None:
            return False
        v = v / v[pc]
        for k, row in enumerate(self.rows):
            if row[pc] != 0:
                self.rows[k] = row - row[pc] * v
        self.rows.append(v)
        self.pivots.append(pc)
        return True
