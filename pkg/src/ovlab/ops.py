"""Curvature operator calculus on pointwise tensors.

Conventions::

    (E ^ T)_{abcd...} = E_ad T_bc... + E_bc T_ad... - E_ac T_bd... - E_bd T_ac...
    G = 1/2 g ^ g,  G_hijk = g_hk g_ij - g_hj g_ik
    Ric(B)_ij = g^{hk} B_hijk,  kappa(B) = g^{ij} Ric(B)_ij
    (B.T)_{x1..xk l m} = -sum_a B_{l m x_a}^r T_{x1..r..xk}
    Q(A,T)_{x1..xk l m} = sum_a A_{l x_a} T_{..m..} - A_{m x_a} T_{..l..}

The last two are the derivation actions of the endomorphisms B(X,Y) and
X ^_A Y on a (0,k) tensor, written out in components.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .tensors import (
    DEFAULT_TOL, Curv4, DimensionMismatch, DimensionTooSmall, Scalar, Sym2,
    Tens6, Tensor, combine, einsum, metric_of, residual, sym2_power,
)

_LETTERS = string.ascii_lowercase


def _out_cls(order: int):
    return {4: Tensor, 6: Tens6}.get(order, Tensor)


def kulkarni_nomizu(e: Sym2, t: Tensor) -> Tensor:
    """Kulkarni-Nomizu product of a symmetric 2-tensor with a (0,k) tensor, k >= 2.

    Two symmetric arguments give a :class:`Curv4`.
    """
    if e.n != t.n:
        raise DimensionMismatch("kulkarni_nomizu: dimensions differ")
    k = t.ndim
    if k < 2:
        raise ValueError("kulkarni_nomizu needs a tensor of order >= 2")
    rest = _LETTERS[4:4 + k - 2]
    out = "abcd" + rest
    terms = [
        (1, einsum(f"ad,bc{rest}->{out}", e, t)),
        (1, einsum(f"bc,ad{rest}->{out}", e, t)),
        (-1, einsum(f"ac,bd{rest}->{out}", e, t)),
        (-1, einsum(f"bd,ac{rest}->{out}", e, t)),
    ]
    cls = Curv4 if isinstance(t, Sym2) else _out_cls(k + 2)
    return combine(terms, cls=cls)


def wedge_square(e: Sym2) -> Curv4:
    """``1/2 e ^ e``."""
    return kulkarni_nomizu(e, e) / 2


def G_tensor(g) -> Curv4:
    g = metric_of(g)
    return wedge_square(g)



def tachibana(a: Sym2, t: Tensor) -> Tensor:
    """Tachibana tensor ``Q(a, t)``, of order ``k + 2``."""
    if a.n != t.n:
        raise DimensionMismatch("tachibana: dimensions differ")
    k = t.ndim
    idx = _LETTERS[:k]
    out = idx + "yz"
    terms = []
    for pos, x in enumerate(idx):
        with_z = idx[:pos] + "z" + idx[pos + 1:]
        with_y = idx[:pos] + "y" + idx[pos + 1:]
        terms.append((1, einsum(f"y{x},{with_z}->{out}", a, t)))
        terms.append((-1, einsum(f"z{x},{with_y}->{out}", a, t)))
    return combine(terms, cls=_out_cls(k + 2))


def curvature_operator(b: Curv4, g) -> Tensor:
    """Components ``E[l, m, i, r]`` of the endomorphisms ``B(e_l, e_m)``.

    ``B(e_l, e_m) e_i = sum_r E[l, m, i, r] e_r``.
    """
    g = metric_of(g)
    return einsum("lmis,sr->lmir", b, g.inverse())


def curv_action(b: Curv4, t: Tensor, g) -> Tensor:
    """Derivation action ``B . t`` of order ``k + 2``."""
    g = metric_of(g)
    if b.n != t.n or g.n != t.n:
        raise DimensionMismatch("curv_action: dimensions differ")
    op = curvature_operator(b, g)
    k = t.ndim
    idx = _LETTERS[:k]
    out = idx + "yz"
    terms = []
    for pos, x in enumerate(idx):
        swapped = idx[:pos] + "r" + idx[pos + 1:]
        terms.append((-1, einsum(f"yz{x}r,{swapped}->{out}", op, t)))
    return combine(terms, cls=_out_cls(k + 2))


def ricci(b: Curv4, g) -> Sym2:
    """``Ric(B)(X, Y) = sum_j eps_j B(e_j, X, Y, e_j)`` in any frame."""
    g = metric_of(g)
    if b.n != g.n:
        raise DimensionMismatch("ricci: dimensions differ")
    return einsum("hk,hijk->ij", g.inverse(), b, cls=Sym2)


def scalar(b: Curv4, g) -> Scalar:
    g = metric_of(g)
    return ricci(b, g).trace(g)


def weyl(b: Curv4, g) -> Curv4:
    """``B - 1/(n-2) g ^ Ric(B) + kappa(B)/((n-2)(n-1)) G``."""
    g = metric_of(g)
    n = b.n
    if n < 3:
        raise DimensionTooSmall("Weyl tensor needs n >= 3")
    ric = ricci(b, g)
    kappa = ric.trace(g)
    return combine([
        (1, b),
        (-Fraction(1, n - 2) if b.exact else -1.0 / (n - 2), kulkarni_nomizu(g, ric)),
        (_div(kappa, (n - 2) * (n - 1)), G_tensor(g)),
    ], cls=Curv4)


def _div(x, d):
    return x / d if isinstance(x, float) else Fraction(x) / d


def square(a: Sym2, g) -> Sym2:
    return sym2_power(a, metric_of(g), 2)


# ---------------------------------------------------------------------------
# linear dependence


@dataclass(frozen=True)
class Proportionality:
    """Outcome of comparing two tensors of the same shape.

    ``kind`` is ``"both_zero"``, ``"coefficient"`` (``t1 == coefficient * t2``)
    or ``"not_proportional"``.
    """

    kind: str
    coefficient: Scalar | None = None
    residual: Scalar = 0

    @property
    def dependent(self) -> bool:
        return self.kind != "not_proportional"


def proportionality(t1: Tensor, t2: Tensor, tol: float = DEFAULT_TOL) -> Proportionality:
    if t1.numerators.shape != t2.numerators.shape:
        raise DimensionMismatch("proportionality needs tensors of one shape")
    z1, z2 = t1.is_zero(tol), t2.is_zero(tol)
    if z1 and z2:
        return Proportionality("both_zero")
    if z2:
        return Proportionality("not_proportional", residual=t1.max_abs())
    if z1:
        return Proportionality("coefficient", Fraction(0) if t1.exact else 0.0)
    if t1.exact and t2.exact:
        num2 = t2.numerators
        pos = next(i for i, v in enumerate(num2.flat) if v)
        c = t1[tuple(int(i) for i in _unravel(pos, num2.shape))] / t2[
            tuple(int(i) for i in _unravel(pos, num2.shape))]
        res = residual(t1, t2 * c)
        kind = "coefficient" if res == 0 else "not_proportional"
        return Proportionality(kind, c if res == 0 else None, res)
    a, b = t1.to_float().ravel(), t2.to_float().ravel()
    c = float(a @ b / (b @ b))
    res = float(abs(a - c * b).max() / max(1.0, abs(a).max()))
    if res <= tol:
        return Proportionality("coefficient", c, res)
    return Proportionality("not_proportional", None, res)


def _unravel(flat: int, shape):
    import numpy as np
    return np.unravel_index(flat, shape)


# ---------------------------------------------------------------------------
# decompositions


class NoDecomposition(ValueError):
    """The target is not a combination of the requested basis tensors."""


class DegenerateDecomposition(ValueError):
    """The basis tensors are linearly dependent; ``kernel`` certifies it."""

    def __init__(self, msg, kernel):
        super().__init__(msg)
        self.kernel = kernel


def independent_components(n: int) -> list[tuple[int, int, int, int]]:
    """Index tuples (h, i, j, k), h < i, j < k, (h, i) <= (j, k) lexicographically."""
    pairs = [(h, i) for h in range(n) for i in range(h + 1, n)]
    return [(h, i, j, k) for a, (h, i) in enumerate(pairs) for (j, k) in pairs[a:]]


def _rows(tensors: list[Tensor], target: Tensor, index: list[tuple]):
    mats = [t.components() for t in tensors]
    tgt = target.components()
    return [[m[ix] for m in mats] for ix in index], [tgt[ix] for ix in index]


def decompose(target: Curv4, basis: list[Curv4], tol: float = DEFAULT_TOL) -> list[Scalar]:
    """Coefficients ``c`` with ``target == sum(c_i * basis_i)``.

    Works on independent curvature components only. Exact elimination for
    exact inputs, SVD-based least squares otherwise.
    """
    index = independent_components(target.n)
    rows, rhs = _rows(basis, target, index)
    exact = target.exact and all(b.exact for b in basis)
    try:
        if exact:
            return linalg.solve(rows, rhs)
        return linalg.float_solve(rows, rhs, tol)
    except linalg.Underdetermined as exc:
        raise DegenerateDecomposition("basis tensors are linearly dependent",
                                      exc.kernel) from None
    except linalg.Inconsistent:
        raise NoDecomposition("target is not in the span of the basis") from None


@dataclass(frozen=True)
class RoterCoefficients:
    """``B = phi/2 Ric^Ric + mu g^Ric + eta/2 g^g``."""

    phi: Scalar
    mu: Scalar
    eta: Scalar

    def tensor(self, ric: Sym2, g: Sym2) -> Curv4:
        return roter_tensor(ric, g, self)


def roter_tensor(a: Sym2, g: Sym2, c: RoterCoefficients) -> Curv4:
    """``phi/2 a^a + mu g^a + eta/2 g^g`` for an arbitrary symmetric ``a``."""
    return combine([
        (c.phi, wedge_square(a)),
        (c.mu, kulkarni_nomizu(g, a)),
        (c.eta, wedge_square(g)),
    ], cls=Curv4)


def roter_decompose(b: Curv4, g, tol: float = DEFAULT_TOL) -> RoterCoefficients:
    """Solve for Roter coefficients of ``b`` in its own Ricci tensor.

    Raises :class:`DegenerateDecomposition` when ``Ric ^ Ric``, ``g ^ Ric`` and
    ``g ^ g`` are dependent (e.g. ``Ric`` proportional to ``g``) and
    :class:`NoDecomposition` when ``b`` is not of Roter type.
    """
    g = metric_of(g)
    if b.n < 4:
        raise DimensionTooSmall("Roter decomposition needs n >= 4")
    ric = ricci(b, g)
    basis = [wedge_square(ric), kulkarni_nomizu(g, ric), wedge_square(g)]
    return RoterCoefficients(*decompose(b, basis, tol))


@dataclass(frozen=True)
class ExtendedCoefficients:
    """``B = phi/2 Ric^Ric + b1 g^Ric^2 + b2 g^Ric + b3/2 g^g``."""

    phi: Scalar
    beta1: Scalar
    beta2: Scalar
    beta3: Scalar


def extended_basis(b: Curv4, g: Sym2) -> list[Curv4]:
    ric = ricci(b, g)
    return [wedge_square(ric), kulkarni_nomizu(g, square(ric, g)),
            kulkarni_nomizu(g, ric), wedge_square(g)]


def extended_decompose(b: Curv4, g, tol: float = DEFAULT_TOL) -> ExtendedCoefficients:
    """Fit ``b`` by ``Ric^Ric``, ``g^Ric^2``, ``g^Ric``, ``g^g``."""
    g = metric_of(g)
    if b.n < 4:
        raise DimensionTooSmall("extended decomposition needs n >= 4")
    return ExtendedCoefficients(*decompose(b, extended_basis(b, g), tol))


def extended_expected(b: Curv4, g, phi: Scalar) -> ExtendedCoefficients:
    """Closed-form coefficients forced by a given ``phi`` (n >= 4)."""
    g = metric_of(g)
    n = b.n
    ric = ricci(b, g)
    kappa = ric.trace(g)
    tr2 = square(ric, g).trace(g)
    return ExtendedCoefficients(
        phi,
        phi / (n - 2),
        (1 - kappa * phi) / (n - 2),
        ((kappa ** 2 - tr2) * phi - kappa) / ((n - 2) * (n - 1)),
    )


def weyl_extended_expected(b: Curv4, g, phi: Scalar) -> tuple:
    """Coefficients ``(phi, a1, a2, a3)`` forced on a Weyl tensor of that form."""
    g = metric_of(g)
    n = b.n
    ric = ricci(b, g)
    kappa = ric.trace(g)
    tr2 = square(ric, g).trace(g)
    return (phi, phi / (n - 2), -kappa * phi / (n - 2),
            (kappa ** 2 - tr2) * phi / ((n - 2) * (n - 1)))
