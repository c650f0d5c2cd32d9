"""Slow index-loop versions of the operator kernels.

Written directly from the component formulas with nested loops and plain
scalars, for cross-checking the vectorized kernels on small inputs.
"""

from __future__ import annotations

import itertools

import numpy as np

from .tensors import Tensor, metric_of


def _grid(t: Tensor):
    return t.components()


def _wrap(values: dict, n: int, order: int, exact: bool):
    arr = np.empty((n,) * order, dtype=object)
    for idx, v in values.items():
        arr[idx] = v
    return Tensor.from_array(arr, exact)


def kulkarni_nomizu(e: Tensor, t: Tensor) -> Tensor:
    E, T = _grid(e), _grid(t)
    n, k = e.n, t.ndim
    out = {}
    for a, b, c, d in itertools.product(range(n), repeat=4):
        for rest in itertools.product(range(n), repeat=k - 2):
            out[(a, b, c, d, *rest)] = (E[a, d] * T[(b, c, *rest)] + E[b, c] * T[(a, d, *rest)]
                                        - E[a, c] * T[(b, d, *rest)] - E[b, d] * T[(a, c, *rest)])
    return _wrap(out, n, k + 2, e.exact and t.exact)


def tachibana(a: Tensor, t: Tensor) -> Tensor:
    """``Q(A,T)_{x1..xk l m} = sum_p A_{l x_p} T_{..m..} - A_{m x_p} T_{..l..}``."""
    A, T = _grid(a), _grid(t)
    n, k = a.n, t.ndim
    out = {}
    for xs in itertools.product(range(n), repeat=k):
        for l, m in itertools.product(range(n), repeat=2):
            total = 0
            for p in range(k):
                put_m = xs[:p] + (m,) + xs[p + 1:]
                put_l = xs[:p] + (l,) + xs[p + 1:]
                total += A[l, xs[p]] * T[put_m] - A[m, xs[p]] * T[put_l]
            out[(*xs, l, m)] = total
    return _wrap(out, n, k + 2, a.exact and t.exact)


def curv_action(b: Tensor, t: Tensor, g) -> Tensor:
    """``(B.T)_{x1..xk l m} = sum_p g^{rs} T_{..r..} B_{s x_p l m}``."""
    g = metric_of(g)
    B, T = _grid(b), _grid(t)
    ginv = g.inverse().components()
    n, k = b.n, t.ndim
    out = {}
    for xs in itertools.product(range(n), repeat=k):
        for l, m in itertools.product(range(n), repeat=2):
            total = 0
            for p in range(k):
                for r, s in itertools.product(range(n), repeat=2):
                    if ginv[r, s] == 0:
                        continue
                    total += ginv[r, s] * T[xs[:p] + (r,) + xs[p + 1:]] * B[s, xs[p], l, m]
            out[(*xs, l, m)] = total
    return _wrap(out, n, k + 2, b.exact and t.exact and g.exact)
