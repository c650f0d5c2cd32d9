"""Affine shape data and the Opozda-Verstraelen tensor.

An :class:`AffineInstance` holds the Blaschke metric ``h`` and the shape form
``S(X, Y) = h(X, S Y)`` at one point. Everything else (``R* = 1/2 S^S``, its
Ricci and Weyl tensors, the point classification) is derived from those two.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import linalg
from .ops import ricci, square, wedge_square, weyl
from .tensors import (
    DEFAULT_TOL, Curv4, DimensionMismatch, Frame, Scalar, Sym2, combine,
    raise_index, scalar_close, sym2_power, to_scalar,
)


class ShapeMismatch(ValueError):
    """The spectrum does not have the shape a construction needs."""


class SpectrumUnavailable(ValueError):
    """The shape operator has eigenvalues that are not (small) rationals."""


class NotPositiveDefinite(ValueError):
    pass


class NoFit(ValueError):
    """``X^2`` is not a combination of ``X`` and the metric."""


# ---------------------------------------------------------------------------
# spectra


@dataclass(frozen=True)
class Spectrum:
    """Distinct eigenvalues with multiplicities, in a fixed order."""

    entries: tuple

    def __post_init__(self):
        items = tuple((v, int(m)) for v, m in self.entries)
        if not items:
            raise ValueError("empty spectrum")
        if any(m < 1 for _, m in items):
            raise ValueError("multiplicities must be positive")
        values = [v for v, _ in items]
        if len(set(values)) != len(values):
            raise ValueError("eigenvalues repeat across entries")
        object.__setattr__(self, "entries", items)

    @classmethod
    def of(cls, pairs, exact: bool = True) -> "Spectrum":
        """From ``(value, multiplicity)`` pairs; values may be "p/q" strings."""
        return cls(tuple((to_scalar(v, exact), m) for v, m in pairs))

    @classmethod
    def from_values(cls, values, exact: bool = True) -> "Spectrum":
        """Group a list of eigenvalues, keeping first-appearance order."""
        counts: dict = {}
        for v in values:
            v = to_scalar(v, exact)
            counts[v] = counts.get(v, 0) + 1
        return cls(tuple(counts.items()))

    @property
    def n(self) -> int:
        return sum(m for _, m in self.entries)

    @property
    def exact(self) -> bool:
        return all(isinstance(v, Fraction) for v, _ in self.entries)

    @property
    def values(self) -> tuple:
        return tuple(v for v, m in self.entries for _ in range(m))

    @property
    def distinct(self) -> tuple:
        return tuple(v for v, _ in self.entries)

    @property
    def multiplicities(self) -> tuple:
        return tuple(m for _, m in self.entries)

    def multiplicity(self, value) -> int:
        return next((m for v, m in self.entries if v == value), 0)

    def power_sum(self, p: int) -> Scalar:
        return sum(m * v ** p for v, m in self.entries)

    @property
    def trace(self) -> Scalar:
        return self.power_sum(1)

    def map(self, f) -> "Spectrum":
        """Spectrum of ``f`` applied to the operator (values may merge)."""
        counts: dict = {}
        for v, m in self.entries:
            w = f(v)
            counts[w] = counts.get(w, 0) + m
        return Spectrum(tuple(counts.items()))

    def as_float(self) -> "Spectrum":
        return Spectrum(tuple((float(v), m) for v, m in self.entries))

    def __str__(self):
        return "(" + ", ".join(f"{v}^{m}" if m > 1 else f"{v}" for v, m in self.entries) + ")"


# ---------------------------------------------------------------------------
# instances


def _require_positive_definite(h: Sym2) -> None:
    if h.exact:
        if any(m <= 0 for m in linalg.leading_minors(h.matrix())):
            raise NotPositiveDefinite("h must be positive definite")
        return
    try:
        np.linalg.cholesky(h.to_float())
    except np.linalg.LinAlgError:
        raise NotPositiveDefinite("h must be positive definite") from None


class AffineInstance:
    """Pointwise affine data ``(h, S)`` in a frame with Euclidean signature."""

    def __init__(self, h: Sym2, S: Sym2, spectrum: Spectrum | None = None):
        if h.n != S.n:
            raise DimensionMismatch("h and S live in different dimensions")
        if h.exact != S.exact:
            h, S = h.as_float(), S.as_float()
        if spectrum is not None and spectrum.n != h.n:
            raise DimensionMismatch("spectrum size differs from n")
        _require_positive_definite(h)
        self.h = h
        self.S = S
        self.spectrum = spectrum
        self.frame = Frame(h.n)

    @property
    def n(self) -> int:
        return self.h.n

    @property
    def exact(self) -> bool:
        return self.h.exact

    def __repr__(self):
        spec = f", spectrum={self.spectrum}" if self.spectrum else ""
        return f"AffineInstance(n={self.n}{spec})"

    @cached_property
    def shape_operator(self):
        return raise_index(self.S, self.h)

    @cached_property
    def r_star(self) -> Curv4:
        return wedge_square(self.S)

    @cached_property
    def ric(self) -> Sym2:
        return ricci(self.r_star, self.h)

    @cached_property
    def kappa(self) -> Scalar:
        return self.ric.trace(self.h)

    @cached_property
    def weyl(self) -> Curv4:
        return weyl(self.r_star, self.h)

    @cached_property
    def tr(self) -> Scalar:
        """``tr_h(S)``."""
        return self.S.trace(self.h)

    def power(self, p: int) -> Sym2:
        return sym2_power(self.S, self.h, p)

    @cached_property
    def tr2(self) -> Scalar:
        return self.power(2).trace(self.h)

    def scaled(self, c) -> "AffineInstance":
        spec = self.spectrum.map(lambda v: v * c) if self.spectrum and c != 0 else None
        return AffineInstance(self.h, self.S * c, spec)

    def as_float(self) -> "AffineInstance":
        spec = self.spectrum.as_float() if self.spectrum else None
        return AffineInstance(self.h.as_float(), self.S.as_float(), spec)


def from_spectrum(spec: Spectrum, exact: bool | None = None, basis=None) -> AffineInstance:
    """Realize a spectrum at a point.

    Without ``basis`` the frame is h-orthonormal and ``S`` diagonal. With an
    invertible matrix ``basis = P`` the instance is ``h = P^T P``,
    ``S = P^T D P``, whose shape operator ``P^-1 D P`` has the same spectrum.
    """
    exact = spec.exact if exact is None else exact
    if not exact:
        spec = spec.as_float()
    vals = spec.values
    if basis is None:
        return AffineInstance(Sym2.identity(spec.n, exact), Sym2.diag(vals, exact), spec)
    conv = Fraction if exact else float
    p = np.array([[conv(v) for v in row] for row in basis], dtype=object)
    if p.shape != (spec.n, spec.n):
        raise DimensionMismatch("basis must be n x n")
    d = np.diag(np.array([conv(v) for v in vals], dtype=object))
    h = Sym2.from_array(p.T.dot(p), exact)
    s = Sym2.from_array(p.T.dot(d).dot(p), exact)
    return AffineInstance(h, s, spec)


def opozda_verstraelen(inst: AffineInstance) -> Curv4:
    """``R* = 1/2 S ^ S``."""
    return inst.r_star


# ---------------------------------------------------------------------------
# ranks, fits, spectra


def sym_rank(a: Sym2, tol: float = DEFAULT_TOL) -> int:
    if a.exact:
        return linalg.rank(a.matrix())
    return linalg.float_rank(a.to_float(), tol)


def fit_square(x: Sym2, g: Sym2, tol: float = DEFAULT_TOL) -> tuple:
    """Coefficients ``(a, b)`` with ``x^2 = a x + b g``.

    Raises :class:`NoFit` when no such pair exists or when it is not unique
    (``x`` proportional to ``g``).
    """
    x2 = square(x, g)
    n = x.n
    idx = [(i, j) for i in range(n) for j in range(i, n)]
    cx, cg, c2 = x.components(), g.components(), x2.components()
    rows = [[cx[ij], cg[ij]] for ij in idx]
    rhs = [c2[ij] for ij in idx]
    try:
        if x.exact and g.exact:
            a, b = linalg.solve(rows, rhs)
        else:
            a, b = linalg.float_solve(rows, rhs, tol)
    except linalg.Underdetermined:
        raise NoFit("tensor is proportional to the metric") from None
    except linalg.Inconsistent:
        raise NoFit("square is not a combination of the tensor and the metric") from None
    return a, b


def _rationalize(x: float, max_den: int) -> Fraction:
    return Fraction(x).limit_denominator(max_den)


def recover_spectrum(h: Sym2, S: Sym2, tol: float = DEFAULT_TOL,
                     max_den: int = 10 ** 6) -> Spectrum:
    """Eigenvalues of ``h^-1 S`` with multiplicities.

    Exact inputs: numerical eigenvalues are rounded to nearby rationals and
    each candidate is confirmed by an exact rank computation; the confirmed
    multiplicities must add up to ``n``. Float inputs: eigenvalues are grouped
    within ``tol``.
    """
    n = h.n
    hf, sf = h.to_float(), S.to_float()
    low = np.linalg.cholesky(hf)
    inv = np.linalg.inv(low)
    eig = np.linalg.eigvalsh(inv @ sf @ inv.T)
    if not (h.exact and S.exact):
        groups: list = []
        for v in sorted(eig):
            if groups and abs(v - groups[-1][0]) <= tol * max(1.0, abs(v)):
                groups[-1][1] += 1
            else:
                groups.append([float(v), 1])
        return Spectrum(tuple((v, m) for v, m in groups))
    candidates = []
    for v in eig:
        q = _rationalize(float(v), max_den)
        if q not in candidates:
            candidates.append(q)
    hm, sm = h.components(), S.components()
    entries = []
    for q in candidates:
        mult = n - linalg.rank((sm - hm * q).tolist())
        if mult:
            entries.append((q, mult))
    if sum(m for _, m in entries) != n:
        raise SpectrumUnavailable("shape operator has non-rational eigenvalues")
    return Spectrum(tuple(sorted(entries)))


def spectrum_of(inst: AffineInstance, tol: float = DEFAULT_TOL) -> Spectrum:
    return inst.spectrum or recover_spectrum(inst.h, inst.S, tol)


def ricci_spectrum(spec: Spectrum) -> Spectrum:
    """Eigenvalues ``lambda (tr - lambda)`` of the Ricci operator of ``R*``."""
    tr = spec.trace
    return spec.map(lambda v: v * (tr - v))


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class Flag:
    name: str
    params: tuple = ()

    def get(self, key):
        return dict(self.params)[key]

    def __str__(self):
        if not self.params:
            return self.name
        inner = ", ".join(f"{k}={v}" for k, v in self.params)
        return f"{self.name}({inner})"


@dataclass(frozen=True)
class Classification:
    flags: tuple
    spectrum: Spectrum | None = None
    reason: str = ""

    @property
    def indeterminate(self) -> bool:
        return self.spectrum is None

    def has(self, name: str) -> bool:
        return any(f.name == name for f in self.flags)

    def all(self, name: str) -> list[Flag]:
        return [f for f in self.flags if f.name == name]

    def names(self) -> list[str]:
        return [f.name for f in self.flags]

    def __str__(self):
        return ", ".join(str(f) for f in self.flags)


def classify(inst: AffineInstance, tol: float = DEFAULT_TOL) -> Classification:
    """Every pointwise class the instance belongs to.

    Rank flags are confirmed by a rank computation on the actual tensors, not
    read off the spectrum alone.
    """
    n, h, S, ric = inst.n, inst.h, inst.S, inst.ric
    flags: list[Flag] = []
    try:
        spec = spectrum_of(inst, tol)
        reason = ""
    except SpectrumUnavailable as exc:
        spec, reason = None, str(exc)

    if spec is not None:
        distinct = spec.distinct
        if S.is_zero(tol):
            flags.append(Flag("ImproperSphere"))
        elif len(distinct) == 1:
            flags.append(Flag("ProperSphere", (("lambda", distinct[0]),)))
        else:
            for rho in distinct:
                r = sym_rank(S - h * rho, tol)
                if r == 1:
                    flags.append(Flag("QuasiUmbilical", (("rho", rho),)))
                elif r == 2 and n >= 4:
                    flags.append(Flag("TwoQuasiUmbilical", (("rho", rho),)))
    if spec is None or len(spec.distinct) > 1:
        try:
            a, b = fit_square(S, h, tol)
            flags.append(Flag("AffinePartiallyEinstein", (("L1", -a), ("L", -b))))
        except NoFit:
            pass

    einstein = (ric - h * (inst.kappa / n)).is_zero(tol)
    if einstein:
        flags.append(Flag("EinsteinStar", (("kappa", inst.kappa),)))
    else:
        try:
            r1, r2 = fit_square(ric, h, tol)
            flags.append(Flag("PartiallyEinsteinStar", (("rho1", r1), ("rho2", r2))))
        except NoFit:
            pass
        if spec is not None:
            for rho in ricci_spectrum(spec).distinct:
                r = sym_rank(ric - h * rho, tol)
                if r == 1:
                    flags.append(Flag("QuasiUmbilicalStar", (("rho", rho),)))
                elif r == 2:
                    flags.append(Flag("TwoQuasiUmbilicalStar", (("rho", rho),)))
    if spec is None:
        flags.append(Flag("Indeterminate"))
    if not flags:
        flags.append(Flag("Generic"))
    return Classification(tuple(flags), spec, reason)


# ---------------------------------------------------------------------------
# closed forms used by the verifiers


def two_quasi_umbilical_split(spec: Spectrum, rho=None) -> tuple:
    """``(lambda1, lambda2, rho)`` for a spectrum of shape (l1, l2, rho^(n-2))."""
    n = spec.n
    if n < 4:
        raise ShapeMismatch("2-quasi-umbilical points need n >= 4")
    if rho is None:
        cands = [v for v, m in spec.entries if m == n - 2]
        if len(cands) != 1:
            raise ShapeMismatch("rho is not determined by the spectrum; pass it")
        rho = cands[0]
    if spec.multiplicity(rho) != n - 2:
        raise ShapeMismatch(f"{rho} does not have multiplicity n-2")
    rest = [v for v in spec.values if v != rho]
    return rest[0], rest[1], rho


def tau(spec: Spectrum, rho=None) -> Scalar:
    """The invariant of a 2-quasi-umbilical point, computed two ways."""
    l1, l2, rho = two_quasi_umbilical_split(spec, rho)
    n = spec.n
    tr_a = l1 + l2 - 2 * rho
    tr_a2 = (l1 - rho) ** 2 + (l2 - rho) ** 2
    via_traces = (tr_a ** 2 - tr_a2) / 2 + (n - 2) * rho * (tr_a + (n - 2) * rho)
    factored = (l1 + (n - 3) * rho) * (l2 + (n - 3) * rho)
    assert scalar_close(via_traces, factored), (via_traces, factored)
    return factored


def three_curvature_split(spec: Spectrum) -> tuple:
    """``(l0, l1, n1, l2, n2)`` for three distinct values with l0 simple."""
    if len(spec.entries) != 3:
        raise ShapeMismatch("need exactly three distinct eigenvalues")
    entries = list(spec.entries)
    pos = next((i for i, (_, m) in enumerate(entries) if m == 1), None)
    if pos is None:
        raise ShapeMismatch("one eigenvalue must be simple")
    l0, _ = entries.pop(pos)
    (l1, n1), (l2, n2) = entries
    return l0, l1, n1, l2, n2


def cubic_coefficients(spec: Spectrum) -> tuple:
    """``(alpha, beta, gamma)`` with ``X^3 = alpha X^2 + beta X + gamma``."""
    l0, l1, _, l2, _ = three_curvature_split(spec)
    return l0 + l1 + l2, -l0 * (l1 + l2) - l1 * l2, l0 * l1 * l2


def mu_from_multiplicities(spec: Spectrum) -> Scalar:
    l0, l1, n1, l2, n2 = three_curvature_split(spec)
    return (l0 + (n1 - 1) * l1 + (n2 - 1) * l2) * (
        l1 * l2 + (n1 * l1 + n2 * l2) * ((n1 - 1) * l1 + (n2 - 1) * l2))


@dataclass(frozen=True)
class ThreeCurvature:
    alpha: Scalar
    beta: Scalar
    gamma: Scalar
    A: Sym2
    mu: Scalar
    mu_multiplicity: Scalar


def three_curvature_mu(inst: AffineInstance, tol: float = DEFAULT_TOL) -> ThreeCurvature:
    """The tensor ``A`` built from ``Ric(R*)`` and the scalar ``mu`` with ``A = mu S``."""
    spec = spectrum_of(inst, tol)
    alpha, beta, gamma = cubic_coefficients(spec)
    tr, h, ric = inst.tr, inst.h, inst.ric
    d = alpha - tr
    a = combine([(1, square(ric, h)), (d * d + beta, ric), (-gamma * (alpha - 2 * tr), h)],
                cls=Sym2)
    mu = gamma + d * (beta + tr * d)
    return ThreeCurvature(alpha, beta, gamma, a, mu, mu_from_multiplicities(spec))
