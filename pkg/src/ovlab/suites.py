"""Seeded batteries of random instances.

Every trial draws from its own generator, seeded by ``seed/suite/n/trial``, so a
run is reproducible whether trials execute serially or in a worker pool.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import numpy as np

from . import affine_verify as av
from .affine import AffineInstance, Spectrum, from_spectrum, mu_from_multiplicities, tau
from .identities import verify_operator_identities, verify_prop21, verify_prop32, verify_prop34
from .ops import kulkarni_nomizu, roter_decompose, roter_tensor, RoterCoefficients
from .report import Report
from .spaceform import SpaceFormInstance, verify_gauss, verify_thm81
from .tensors import DEFAULT_TOL, Sym2

SUITES = ("core-identities", "section6", "section7", "section8", "prop32", "prop34", "prop21")


class UnknownSuite(ValueError):
    pass


class BadRange(ValueError):
    pass


# ---------------------------------------------------------------------------
# sampling


def rational(rng: random.Random, zero: bool = False) -> Fraction:
    """A small rational p/q with |p|, q <= 9."""
    p = rng.randint(-9, 9)
    while p == 0 and not zero:
        p = rng.randint(-9, 9)
    return Fraction(p, rng.randint(1, 9))


def distinct_rationals(rng, k: int, zero: bool = False) -> list[Fraction]:
    out: list[Fraction] = []
    while len(out) < k:
        v = rational(rng, zero)
        if v not in out:
            out.append(v)
    return out


def random_basis(rng, n: int) -> list[list[Fraction]]:
    """Invertible unit upper-triangular matrix with small integer entries."""
    return [[Fraction(1) if i == j else Fraction(rng.randint(-2, 2)) if j > i else Fraction(0)
             for j in range(n)] for i in range(n)]


def random_metric(rng, n: int) -> Sym2:
    """Positive definite ``L L^T`` with small integer lower-triangular ``L``."""
    L = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            if j > i:
                L[i, j] = Fraction(0)
            elif j == i:
                L[i, j] = Fraction(rng.randint(1, 3))
            else:
                L[i, j] = Fraction(rng.randint(-2, 2))
    return Sym2.from_array(L.dot(L.T))


def random_sym(rng, n: int) -> Sym2:
    a = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(i, n):
            a[i, j] = a[j, i] = rational(rng, zero=True)
    return Sym2.from_array(a)


def _grouped(pairs) -> Spectrum:
    return Spectrum(tuple((v, m) for v, m in pairs if m > 0))


def two_curvature(rng, n: int, inner: bool = False) -> Spectrum:
    """``(l1^k, l2^(n-k))``; ``inner`` keeps ``2 <= k <= n-2``."""
    lo, hi = (2, n - 2) if inner else (1, n - 1)
    k = rng.randint(lo, hi)
    l1, l2 = distinct_rationals(rng, 2, zero=rng.random() < 0.15)
    return _grouped([(l1, k), (l2, n - k)])


def quasi_umbilical(rng, n: int) -> Spectrum:
    rho, lam = distinct_rationals(rng, 2, zero=True)
    return _grouped([(rho, n - 1), (lam, 1)])


def einstein_star(rng, n: int) -> Spectrum:
    """Two curvatures with ``(k-1) l1 + (n-k-1) l2 = 0``, so ``Ric(R*)`` is proportional to ``h``."""
    k = rng.randint(2, n - 2)
    t = rational(rng)
    return _grouped([((n - k - 1) * t, k), (-(k - 1) * t, n - k)])


def roter_two_curvature(rng, n: int) -> Spectrum:
    """Two curvatures, ``2 <= k <= n-2`` and ``(k-1) l1 + (n-k-1) l2 != 0``."""
    while True:
        spec = two_curvature(rng, n, inner=True)
        (l1, k), (l2, _) = spec.entries
        if (k - 1) * l1 + (n - k - 1) * l2 != 0:
            return spec


def generic(rng, n: int) -> Spectrum:
    """Random spectrum with every multiplicity at most ``n - 2``."""
    while True:
        vals = [rational(rng, zero=True) for _ in range(n)]
        spec = Spectrum.from_values(vals)
        if max(spec.multiplicities) <= n - 2 and len(spec.entries) >= 2:
            return spec


def two_quasi_umbilical(rng, n: int, degenerate: bool = False) -> Spectrum:
    """``(l1, l2, rho^(n-2))``; ``degenerate`` forces ``tau = 0``."""
    while True:
        rho = rational(rng, zero=True)
        l1, l2 = distinct_rationals(rng, 2, zero=True)
        if degenerate:
            l1 = -(n - 3) * rho
        if len({l1, l2, rho}) < 3:
            continue
        spec = _grouped([(l1, 1), (l2, 1), (rho, n - 2)])
        if (tau(spec, rho) == 0) == degenerate:
            return spec


def rank_two(rng, n: int) -> Spectrum:
    l1, l2 = distinct_rationals(rng, 2)
    return _grouped([(l1, 1), (l2, 1), (Fraction(0), n - 2)])


def three_curvature(rng, n: int, mu_zero: bool = False) -> Spectrum:
    """``(l0, l1^n1, l2^n2)`` with ``n1 + n2 = n - 1``; ``mu_zero`` forces ``mu = 0``."""
    while True:
        n1 = rng.randint(1, n - 2)
        n2 = n - 1 - n1
        l0, l1, l2 = distinct_rationals(rng, 3, zero=True)
        if mu_zero:
            l0 = -(n1 - 1) * l1 - (n2 - 1) * l2
        if len({l0, l1, l2}) < 3:
            continue
        spec = _grouped([(l0, 1), (l1, n1), (l2, n2)])
        if (mu_from_multiplicities(spec) == 0) == mu_zero:
            return spec


def realize(rng, spec: Spectrum, exact: bool) -> AffineInstance:
    """Diagonal in half the trials, a random basis in the rest."""
    basis = random_basis(rng, spec.n) if rng.random() < 0.5 else None
    return from_spectrum(spec, exact, basis)


# ---------------------------------------------------------------------------
# per-suite trials


def _core(rng, n, exact, tol):
    h, S = random_metric(rng, n), random_sym(rng, n)
    inst = AffineInstance(h, S)
    F = random_sym(rng, n)
    if not exact:
        inst, F = inst.as_float(), F.as_float()
    rep = av.verify_universal(inst, tol)
    av.verify_scaling(inst, rational(rng) if exact else float(rational(rng)), tol, rep)
    rep.extend(verify_operator_identities(inst.S, F, inst.h, inst.r_star, tol=tol))
    return rep


def _section6(rng, n, exact, tol):
    kinds = ["two", "quasi", "generic"] + (["einstein", "roter"] if n >= 4 else [])
    kind = rng.choice(kinds)
    spec = {"two": two_curvature, "quasi": quasi_umbilical, "generic": generic,
            "einstein": einstein_star, "roter": roter_two_curvature}[kind](rng, n)
    rep = av.verify_section6(realize(rng, spec, exact), tol)
    rep.params["family"] = kind
    return rep


def _section7(rng, n, exact, tol):
    kinds = ["three", "three_mu_zero"] + (["tqu", "tqu_degenerate", "rank_two"] if n >= 4 else [])
    kind = rng.choice(kinds)
    if kind.startswith("three"):
        spec = three_curvature(rng, n, mu_zero=kind == "three_mu_zero")
        return av.verify_thm73(realize(rng, spec, exact), tol)
    if kind == "rank_two":
        return av.verify_thm72(realize(rng, rank_two(rng, n), exact), tol)
    spec = two_quasi_umbilical(rng, n, degenerate=kind == "tqu_degenerate")
    inst = realize(rng, spec, exact)
    return av.verify_thm71(inst, inst.spectrum.entries[2][0], tol)


def _section8(rng, n, exact, tol):
    spec = three_curvature(rng, n, mu_zero=rng.random() < 0.25)
    c = rational(rng, zero=True)
    inst = SpaceFormInstance.from_spectrum(spec, c, exact)
    rep = verify_gauss(inst, tol)
    rep.extend(verify_thm81(inst, tol))
    return rep


def _prop32(rng, n, exact, tol):
    if rng.random() < 0.5:
        inst = realize(rng, roter_two_curvature(rng, n), exact)
        B, g = inst.r_star, inst.h
    else:
        g = random_metric(rng, n)
        coeffs = RoterCoefficients(rational(rng), rational(rng, zero=True),
                                   rational(rng, zero=True))
        B = roter_tensor(random_sym(rng, n), g, coeffs)
        if not exact:
            B, g = B.as_float(), g.as_float()
    return verify_prop32(B, g, roter_decompose(B, g, tol), tol)


def _prop34(rng, n, exact, tol):
    u = [rational(rng, zero=True) for _ in range(n)]
    v = [rational(rng, zero=True) for _ in range(n)]
    a, b = rational(rng), rational(rng)
    A = Sym2.from_array([[a * u[i] * u[j] + b * v[i] * v[j] for j in range(n)]
                         for i in range(n)])
    g = random_metric(rng, n)
    if not exact:
        A, g = A.as_float(), g.as_float()
    return verify_prop34(A, g, seed=rng.randint(0, 10 ** 6), tol=tol)


def _prop21(rng, n, exact, tol):
    g = random_metric(rng, n)
    Y = [rational(rng, zero=True) for _ in range(n)]
    if rng.random() < 0.5:
        A = random_sym(rng, n)
        B = kulkarni_nomizu(A, A) * rational(rng)
    else:
        w = [rational(rng, zero=True) for _ in range(n)]
        A = Sym2.from_array([[wi * wj for wj in w] for wi in w]) * rational(rng)
        B = kulkarni_nomizu(A, random_sym(rng, n))
    if not exact:
        A, B, g, Y = A.as_float(), B.as_float(), g.as_float(), [float(y) for y in Y]
    return verify_prop21(A, B, g, Y, tol)


def _resampling(body):
    """Redraw an instance until the hypotheses of the verifier hold."""
    def run(rng, n, exact, tol):
        for _ in range(50):
            try:
                return body(rng, n, exact, tol)
            except (ValueError, ZeroDivisionError) as exc:
                last = exc
        raise last
    return run


RUNNERS = {
    "core-identities": _core,
    "section6": _section6,
    "section7": _section7,
    "section8": _section8,
    "prop32": _resampling(_prop32),
    "prop34": _resampling(_prop34),
    "prop21": _resampling(_prop21),
}
MIN_N = {"prop32": 4}


# ---------------------------------------------------------------------------
# driver


def parse_range(text: str) -> tuple[int, int]:
    """``"A..B"`` or a single ``"A"``."""
    lo, _, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi or lo)
    except ValueError:
        raise BadRange(f"bad dimension range {text!r}") from None
    if a > b:
        raise BadRange(f"empty dimension range {text!r}")
    return a, b


def _trial(args) -> list[dict]:
    suite, n, trial, seed, exact, tol = args
    rng = random.Random(f"{seed}/{suite}/{n}/{trial}")
    rep = RUNNERS[suite](rng, n, exact, tol)
    out = []
    for chk in rep:
        d = chk.to_dict()
        d["params"] = {**d["params"], "suite": suite, "n": n, "trial": trial}
        d["trial"] = trial
        out.append(d)
    return out


def run_suite(suite: str, n_range=(3, 5), trials: int = 10, seed: int = 0,
              arith: str = "exact", tol: float = DEFAULT_TOL, workers: int = 1) -> dict:
    """Run a suite and return the JSON-ready report.

    ``trials`` is per dimension. Suites that need ``n >= 4`` silently start there.
    """
    if suite != "all" and suite not in RUNNERS:
        raise UnknownSuite(f"unknown suite {suite!r}; choose from {', '.join(SUITES + ('all',))}")
    lo, hi = n_range
    if lo < 3:
        raise BadRange("suites need n >= 3")
    if arith not in ("exact", "float"):
        raise ValueError(f"arithmetic must be 'exact' or 'float', not {arith!r}")
    names = SUITES if suite == "all" else (suite,)
    jobs = [(s, n, t, seed, arith == "exact", tol)
            for s in names for n in range(max(lo, MIN_N.get(s, 3)), hi + 1)
            for t in range(trials)]
    start = time.perf_counter()
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            chunks = list(pool.map(_trial, jobs))
    else:
        chunks = [_trial(j) for j in jobs]
    wall = time.perf_counter() - start
    records = sorted((r for c in chunks for r in c),
                     key=lambda r: (r["check_id"], r["params"]["suite"], r["params"]["n"],
                                    r["trial"]))
    counts = {"pass": 0, "fail": 0, "skipped": 0}
    for r in records:
        counts[r["status"]] += 1
    return {
        "checks": records,
        "summary": {"suite": suite, "n_range": [lo, hi], "trials": trials, "seed": seed,
                    "arithmetic_mode": arith, "counts": counts, "wall_time": wall},
    }


def report_document(rep: Report, **summary) -> dict:
    """Wrap a single report in the run-document layout."""
    counts = rep.counts()
    return {"checks": [c.to_dict() for c in rep],
            "summary": {**summary, "counts": counts}}


__all__ = [
    "BadRange", "SUITES", "UnknownSuite", "distinct_rationals", "einstein_star", "generic",
    "parse_range", "quasi_umbilical", "random_basis", "random_metric", "random_sym",
    "rank_two", "rational", "realize", "report_document", "roter_two_curvature", "run_suite",
    "three_curvature", "two_curvature", "two_quasi_umbilical",
]
