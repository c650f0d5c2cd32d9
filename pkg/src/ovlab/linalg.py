"""Small dense linear algebra over the rationals (and a float fallback).

Everything here works on plain lists of lists. Exact routines use
:class:`fractions.Fraction`; the float routines defer to numpy and take an
explicit tolerance.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np


class SingularMatrix(ValueError):
    pass


class Inconsistent(ValueError):
    """The linear system has no solution."""


class Underdetermined(ValueError):
    """The linear system has a non-trivial kernel.

    ``kernel`` holds one nonzero kernel vector as a certificate.
    """

    def __init__(self, msg: str, kernel: list):
        super().__init__(msg)
        self.kernel = kernel


def _as_fractions(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[Fraction(v) for v in row] for row in matrix]


def row_reduce(matrix: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns, exact."""
    m = _as_fractions(matrix)
    if not m:
        return m, []
    n_rows, n_cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [v / piv for v in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(matrix: Sequence[Sequence]) -> int:
    return len(row_reduce(matrix)[1])


def nullspace(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of the right kernel, one vector per free column."""
    rref, pivots = row_reduce(matrix)
    n_cols = len(matrix[0]) if matrix else 0
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for row, pc in zip(rref, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Unique exact solution of ``matrix @ x = rhs``.

    Raises :class:`Inconsistent` or :class:`Underdetermined` otherwise. An
    underdetermined system is reported even when it is also consistent.
    """
    n_cols = len(matrix[0])
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    rref, pivots = row_reduce(aug)
    if n_cols in pivots:
        raise Inconsistent("system is inconsistent")
    if len(pivots) < n_cols:
        kernel = nullspace(matrix)[0]
        raise Underdetermined("system is underdetermined", kernel)
    x = [Fraction(0)] * n_cols
    for row, pc in zip(rref, pivots):
        x[pc] = row[-1]
    return x


def det(matrix: Sequence[Sequence]) -> Fraction:
    m = _as_fractions(matrix)
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return d


def inverse(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(matrix)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(matrix)]
    rref, pivots = row_reduce(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return [row[n:] for row in rref]


def leading_minors(matrix: Sequence[Sequence]) -> list[Fraction]:
    return [det([row[:k] for row in matrix[:k]]) for k in range(1, len(matrix) + 1)]


def float_rank(matrix, tol: float) -> int:
    a = np.asarray(matrix, dtype=float)
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    return int((s > tol * max(1.0, s[0])).sum())


def float_solve(matrix, rhs, tol: float) -> list[float]:
    """Least-squares solve with rank and residual checks."""
    a = np.asarray(matrix, dtype=float)
    b = np.asarray(rhs, dtype=float)
    if float_rank(a, tol) < a.shape[1]:
        _, _, vt = np.linalg.svd(a)
        raise Underdetermined("system is underdetermined", list(vt[-1]))
    x, *_ = np.linalg.lstsq(a, b, rcond=None)
    resid = np.abs(a @ x - b).max(initial=0.0)
    if resid > tol * max(1.0, np.abs(b).max(initial=0.0)):
        raise Inconsistent(f"least-squares residual {resid:.3e}")
    return list(x)
