"""Dense tensor values at a point.

Exact tensors are stored fraction-free: an integer array and a single
positive common denominator, kept in lowest terms after every operation. The
integers live in int64 while every entry stays below 2**60 and in Python ints
otherwise; each kernel bounds its result before choosing machine arithmetic. Float tensors are plain float64 arrays. Components always come back
as :class:`~fractions.Fraction` (exact) or ``float``.

All indices are covariant unless stated otherwise, and 0-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

import numpy as np

from . import linalg

Scalar = Union[Fraction, float]

DEFAULT_TOL = 1e-12


class SymmetryViolation(ValueError):
    def __init__(self, kind: str, index: tuple):
        super().__init__(f"{kind} violated at index {index}")
        self.kind = kind
        self.index = index


class DimensionMismatch(ValueError):
    pass


class DimensionTooSmall(ValueError):
    pass


class DegenerateMetric(ValueError):
    pass


def to_scalar(value, exact: bool = True) -> Scalar:
    """Coerce ints, Fractions, floats and "p/q" or decimal strings."""
    if exact:
        if isinstance(value, str):
            return Fraction(value.strip())
        return Fraction(value)
    if isinstance(value, str):
        return float(Fraction(value.strip()))
    return float(value)


def format_scalar(value) -> str:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def scalar_close(a, b, tol: float = DEFAULT_TOL) -> bool:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    a, b = float(a), float(b)
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


_MACHINE = 2 ** 60  # stored int64 entries stay below this
_SAFE = 2 ** 62  # bound for a single int64 kernel result


def _peak(num: np.ndarray) -> int:
    return int(np.max(np.abs(num))) if num.size else 0


def _normalize(num: np.ndarray) -> np.ndarray:
    """int64 when every entry is small, Python ints otherwise."""
    big = _peak(num) >= _MACHINE
    if num.dtype == object:
        return num if big else num.astype(np.int64)
    return num.astype(object) if big else num


def _scaled(num: np.ndarray, k: int) -> np.ndarray:
    if num.dtype != object and _peak(num) * abs(k) < _SAFE:
        return num * k
    return num.astype(object) * k


def _reduce(num: np.ndarray, den: int) -> tuple[np.ndarray, int]:
    num = _normalize(np.asarray(num))
    if den < 0:
        num, den = -num, -den
    if not num.any():
        return num, 1
    if num.dtype == object:
        g = math.gcd(den, *num.flat)
    else:
        g = math.gcd(den, int(np.gcd.reduce(num, axis=None)))
    if g > 1:
        num = np.asarray(num // g)
        den //= g
    return num, den


def _fractions_to_scaled(values: np.ndarray) -> tuple[np.ndarray, int]:
    fr = [Fraction(v) for v in values.flat]
    den = math.lcm(*(f.denominator for f in fr)) if fr else 1
    num = np.empty(values.shape, dtype=object)
    num.flat[:] = [f.numerator * (den // f.denominator) for f in fr]
    return _reduce(num, den)


class Tensor:
    """A dense (0,k) tensor on an ``n``-dimensional space.

    Subclasses fix the order and check their index symmetries on
    construction (skipped under ``python -O``).
    """

    order: int | None = None
    __hash__ = None

    def __init__(self, num: np.ndarray, den: int = 1, check: bool = True):
        if num.dtype.kind in "iuO":
            num, den = _reduce(num, int(den))
        else:
            num, den = np.asarray(num, dtype=float), 1
        if num.ndim and len(set(num.shape)) != 1:
            raise DimensionMismatch(f"non-square component array {num.shape}")
        if self.order is not None and num.ndim != self.order:
            raise DimensionMismatch(
                f"{type(self).__name__} needs order {self.order}, got {num.ndim}")
        self._num = num
        self._den = den
        self._num.flags.writeable = False
        if __debug__ and check:
            self._check(DEFAULT_TOL)

    def _check(self, tol: float) -> None:
        pass

    # construction -----------------------------------------------------

    @classmethod
    def from_array(cls, values, exact: bool = True):
        arr = np.array(values, dtype=object)
        if exact:
            num, den = _fractions_to_scaled(
                np.vectorize(lambda v: to_scalar(v, True), otypes=[object])(arr)
                if arr.size else arr)
            return cls(num, den)
        flt = np.vectorize(lambda v: to_scalar(v, False), otypes=[float])(arr)
        return cls(flt)

    @classmethod
    def zeros(cls, n: int, order: int | None = None, exact: bool = True):
        order = cls.order if order is None else order
        shape = (n,) * order
        if exact:
            return cls(np.zeros(shape, dtype=np.int64), 1)
        return cls(np.zeros(shape))

    # basic properties -------------------------------------------------

    @property
    def n(self) -> int:
        return self._num.shape[0]

    @property
    def ndim(self) -> int:
        return self._num.ndim

    @property
    def exact(self) -> bool:
        return self._num.dtype.kind != "f"

    @property
    def numerators(self) -> np.ndarray:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    def __getitem__(self, idx) -> Scalar:
        v = self._num[idx]
        if isinstance(v, np.ndarray):
            raise IndexError("use full index tuples")
        return Fraction(int(v), self._den) if self.exact else float(v)

    def components(self) -> np.ndarray:
        """Array of Fractions (exact) or floats."""
        if not self.exact:
            return self._num.copy()
        out = np.empty(self._num.shape, dtype=object)
        out.flat[:] = [Fraction(int(v), self._den) for v in self._num.flat]
        return out

    def to_float(self) -> np.ndarray:
        if not self.exact:
            return self._num.copy()
        if self._num.dtype != object:
            return self._num / self._den
        return np.array([float(Fraction(v, self._den)) for v in self._num.flat]).reshape(
            self._num.shape)

    def as_float(self):
        return self if not self.exact else type(self)(self.to_float())

    def as_order(self, cls):
        """Rewrap the same components as another tensor class."""
        return cls(self._num, self._den)

    def max_abs(self) -> Scalar:
        if self._num.size == 0:
            return Fraction(0) if self.exact else 0.0
        if self.exact:
            return Fraction(_peak(self._num), self._den)
        return float(np.abs(self._num).max())

    def is_zero(self, tol: float = DEFAULT_TOL) -> bool:
        if self.exact:
            return not self._num.any()
        return self.max_abs() <= tol

    def allclose(self, other: "Tensor", tol: float = DEFAULT_TOL) -> bool:
        return residual(self, other) <= (0 if self.exact and other.exact else tol)

    # arithmetic -------------------------------------------------------

    def _same_cls(self, other):
        return type(self) if type(self) is type(other) else _generic(self.ndim)

    def __add__(self, other: "Tensor") -> "Tensor":
        a, b, den = _lift(self, other)
        # sums inherit the operands' symmetries; rechecking floats only sees rounding
        return self._same_cls(other)(a + b, den, check=False)

    def __sub__(self, other: "Tensor") -> "Tensor":
        a, b, den = _lift(self, other)
        return self._same_cls(other)(a - b, den, check=False)

    def __neg__(self):
        return type(self)(-self._num, self._den, check=False)

    def __mul__(self, s) -> "Tensor":
        if isinstance(s, Tensor):
            return NotImplemented
        if self.exact and not isinstance(s, float):
            s = Fraction(s)
            return type(self)(_scaled(self._num, s.numerator), self._den * s.denominator,
                              check=False)
        return type(self)(self.to_float() * float(s), check=False)

    __rmul__ = __mul__

    def __truediv__(self, s) -> "Tensor":
        if self.exact and not isinstance(s, float):
            return self * (1 / Fraction(s))
        return self * (1.0 / float(s))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor) or other._num.shape != self._num.shape:
            return False
        if self.exact != other.exact:
            return False
        return self._den == other._den and bool((self._num == other._num).all())

    def __repr__(self) -> str:
        mode = "exact" if self.exact else "float"
        return f"{type(self).__name__}(n={self.n}, {mode})"


def _generic(order: int):
    return {2: Tensor2, 4: Tensor4}.get(order, Tensor)


class Tensor2(Tensor):
    order = 2


class Tensor4(Tensor):
    order = 4


def _lift(*tensors: Tensor):
    """Bring operands to a shared representation.

    Returns the numerator arrays followed by the common denominator.
    """
    n = tensors[0].n
    if any(t.n != n for t in tensors):
        raise DimensionMismatch("tensors live in different dimensions")
    if all(t.exact for t in tensors):
        den = math.lcm(*(t.denominator for t in tensors))
        nums = [_scaled(t.numerators, den // t.denominator) for t in tensors]
        if any(a.dtype == object for a in nums):
            nums = [a.astype(object) for a in nums]
        return (*nums, den)
    return (*(t.to_float() for t in tensors), 1)


def _exact_einsum(spec: str, arrays: list[np.ndarray]) -> np.ndarray:
    """Integer einsum, in int64 when the result provably fits."""
    inputs, _, output = spec.partition("->")
    summed = set(inputs.replace(",", "")) - set(output)
    bound = arrays[0].shape[0] ** len(summed) if arrays[0].ndim else 1
    for a in arrays:
        bound *= _peak(a)
    if bound < _SAFE and all(a.dtype != object for a in arrays):
        return np.asarray(np.einsum(spec, *arrays))
    return np.asarray(np.einsum(spec, *(a.astype(object) for a in arrays)), dtype=object)


def einsum(spec: str, *tensors: Tensor, cls=None) -> Tensor:
    """``np.einsum`` over tensor components, exact when every operand is."""
    n = tensors[0].n
    if any(t.n != n for t in tensors):
        raise DimensionMismatch("tensors live in different dimensions")
    if all(t.exact for t in tensors):
        num = _exact_einsum(spec, [t.numerators for t in tensors])
        den = math.prod(t.denominator for t in tensors)
    else:
        num = np.asarray(np.einsum(spec, *(t.to_float() for t in tensors)), dtype=float)
        den = 1
    cls = cls or _generic(num.ndim)
    # float kernels only ever break symmetry by rounding
    return cls(num, den, check=den != 1 or num.dtype.kind != "f")


def combine(terms: Iterable[tuple], cls=None) -> Tensor:
    """Linear combination ``sum(c * T for c, T in terms)``."""
    terms = list(terms)
    tensors = [t for _, t in terms]
    exact = all(t.exact for t in tensors) and not any(
        isinstance(c, float) for c, _ in terms)
    if exact:
        coeffs = [Fraction(c) for c, _ in terms]
        den = math.lcm(*(t.denominator * c.denominator for c, t in zip(coeffs, tensors)))
        factors = [c.numerator * (den // (t.denominator * c.denominator))
                   for c, t in zip(coeffs, tensors)]
        bound = sum(abs(f) * _peak(t.numerators) for f, t in zip(factors, tensors))
        if bound < _SAFE and all(t.numerators.dtype != object for t in tensors):
            num = sum(t.numerators * f for f, t in zip(factors, tensors))
        else:
            num = sum(t.numerators.astype(object) * f for f, t in zip(factors, tensors))
        out = num, den
    else:
        out = sum(float(c) * t.to_float() for c, t in terms), 1
    if cls is None:
        kinds = {type(t) for t in tensors}
        cls = kinds.pop() if len(kinds) == 1 else _generic(tensors[0].ndim)
    return cls(*out, check=exact)


def residual(lhs: Tensor, rhs: Tensor) -> Scalar:
    """Scale-free mismatch ``|lhs - rhs|_inf / max(1, |lhs|_inf, |rhs|_inf)``.

    Exactly zero iff the tensors agree (exact mode).
    """
    if lhs.ndim != rhs.ndim:
        raise DimensionMismatch("residual of tensors of different order")
    diff = (lhs - rhs).max_abs()
    if diff == 0:
        return diff
    scale = max(1, lhs.max_abs(), rhs.max_abs())
    return diff / scale


# ---------------------------------------------------------------------------
# concrete value types


class Sym2(Tensor):
    """Symmetric (0,2) tensor."""

    order = 2

    def _check(self, tol):
        a = self._num
        if self.exact:
            bad = np.argwhere(a != a.T)
        else:
            bad = np.argwhere(np.abs(a - a.T) > tol * max(1.0, np.abs(a).max(initial=0)))
        if len(bad):
            raise SymmetryViolation("symmetry A_ij = A_ji", tuple(int(i) for i in bad[0]))

    @classmethod
    def identity(cls, n: int, exact: bool = True) -> "Sym2":
        return cls.diag([1] * n, exact)

    @classmethod
    def diag(cls, values, exact: bool = True) -> "Sym2":
        values = list(values)
        n = len(values)
        grid = [[values[i] if i == j else 0 for j in range(n)] for i in range(n)]
        return cls.from_array(grid, exact)

    def matrix(self) -> list[list[Scalar]]:
        return self.components().tolist()

    def inverse(self) -> Tensor2:
        """Contravariant components ``A^{ij}``; cached."""
        inv = getattr(self, "_inv", None)
        if inv is None:
            inv = _inverse(self)
            self._inv = inv
        return inv

    def trace(self, g: "Sym2") -> Scalar:
        return einsum("ij,ij->", self, g.inverse())[()]


def _inverse(g: Sym2) -> Tensor2:
    if g.exact:
        try:
            inv = linalg.inverse(g.matrix())
        except linalg.SingularMatrix:
            raise DegenerateMetric("metric has zero determinant") from None
        return Tensor2.from_array(inv)
    a = g.to_float()
    d = np.linalg.det(a)
    if abs(d) <= DEFAULT_TOL * max(1.0, np.abs(a).max()) ** len(a):
        raise DegenerateMetric(f"metric determinant {d:.3e} is numerically zero")
    return Tensor2(np.linalg.inv(a))


class Endo(Tensor):
    """A (1,1) tensor; ``M[a, b]`` is the ``e_a`` component of ``M e_b``."""

    order = 2

    def apply(self, v) -> list:
        comps = self.components()
        return [sum(comps[a, b] * v[b] for b in range(self.n)) for a in range(self.n)]

    def is_self_adjoint(self, g: Sym2) -> bool:
        low = einsum("ac,cb->ab", g, self)
        return low == einsum("ba->ab", low) if low.exact else low.allclose(
            einsum("ba->ab", low))


class Curv4(Tensor):
    """Generalized curvature tensor ``B_hijk``."""

    order = 4

    def _check(self, tol):
        b = self._num
        exact = self.exact
        scale = 1.0 if exact else tol * max(1.0, np.abs(b).max(initial=0))
        for kind, expr in (
            ("antisymmetry B_hijk = -B_ihjk", b + b.transpose(1, 0, 2, 3)),
            ("antisymmetry B_hijk = -B_hikj", b + b.transpose(0, 1, 3, 2)),
            ("pair interchange B_hijk = B_jkhi", b - b.transpose(2, 3, 0, 1)),
            ("first Bianchi identity",
             b + b.transpose(2, 0, 1, 3) + b.transpose(1, 2, 0, 3)),
        ):
            bad = np.argwhere(expr != 0) if exact else np.argwhere(np.abs(expr) > scale)
            if len(bad):
                raise SymmetryViolation(kind, tuple(int(i) for i in bad[0]))


class Tens6(Tensor):
    """(0,6) tensor, antisymmetric in its last two slots."""

    order = 6

    def _check(self, tol):
        t = self._num
        expr = t + t.swapaxes(4, 5)
        if self.exact:
            bad = np.argwhere(expr != 0)
        else:
            bad = np.argwhere(np.abs(expr) > tol * max(1.0, np.abs(t).max(initial=0)))
        if len(bad):
            raise SymmetryViolation("antisymmetry in the last two slots",
                                    tuple(int(i) for i in bad[0]))


@dataclass(frozen=True)
class Frame:
    """Orthonormal frame data: ``g(e_j, e_k) = signature[j] * delta_jk``."""

    n: int
    signature: tuple = ()

    def __post_init__(self):
        if self.n < 2:
            raise DimensionTooSmall("frames need n >= 2")
        sig = tuple(self.signature) or (1,) * self.n
        if len(sig) != self.n or any(e not in (1, -1) for e in sig):
            raise ValueError(f"bad signature {self.signature!r}")
        object.__setattr__(self, "signature", sig)

    @property
    def euclidean(self) -> bool:
        return all(e == 1 for e in self.signature)

    def metric(self, exact: bool = True) -> Sym2:
        return Sym2.diag(self.signature, exact)


def metric_of(g) -> Sym2:
    return g.metric() if isinstance(g, Frame) else g


def make_sym2(n: int, entries, arith: str = "exact") -> Sym2:
    arr = np.array(entries, dtype=object)
    if arr.shape != (n, n):
        raise DimensionMismatch(f"expected {n}x{n} entries, got {arr.shape}")
    return Sym2.from_array(arr, arith == "exact")


def make_curv4(n: int, entries, arith: str = "exact") -> Curv4:
    arr = np.array(entries, dtype=object)
    if arr.shape != (n,) * 4:
        raise DimensionMismatch(f"expected {n}^4 entries, got {arr.shape}")
    return Curv4.from_array(arr, arith == "exact")


def raise_index(a: Sym2, g) -> Endo:
    """The endomorphism ``A`` with ``g(AX, Y) = a(X, Y)``."""
    g = metric_of(g)
    return einsum("ac,cb->ab", g.inverse(), a, cls=Endo)


def sym2_power(a: Sym2, g, p: int) -> Sym2:
    """``a^p`` with ``a^p(X, Y) = a^{p-1}(AX, Y)``."""
    if p < 1:
        raise ValueError("power must be >= 1")
    g = metric_of(g)
    ginv = g.inverse()
    out = a
    for _ in range(p - 1):
        out = einsum("ik,kl,lj->ij", out, ginv, a, cls=Sym2)
    return out


def trace(a: Sym2, g) -> Scalar:
    return a.trace(metric_of(g))
