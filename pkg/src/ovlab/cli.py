"""``ov-lab`` command line: suites, instance queries and metric checks.

Every subcommand prints (or writes with ``--out``) one JSON document and exits
with status 1 exactly when some check failed.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
import time

from . import suites
from .affine import AffineInstance, Spectrum, classify, from_spectrum
from .ops import (
    DegenerateDecomposition, NoDecomposition, extended_decompose, roter_decompose,
)
from .report import Report
from .spaceform import SpaceFormInstance, gauss_curvature
from .tensors import DEFAULT_TOL, Sym2, format_scalar, to_scalar


class ParseError(ValueError):
    pass


# ---------------------------------------------------------------------------
# instance files


def _scalar(v, exact=True):
    try:
        return to_scalar(v, exact)
    except (ValueError, TypeError, ZeroDivisionError):
        raise ParseError(f"not a scalar: {v!r}") from None


def _grid(doc, key, n, exact):
    rows = doc.get(key)
    if not isinstance(rows, list) or len(rows) != n or any(
            not isinstance(r, list) or len(r) != n for r in rows):
        raise ParseError(f"{key!r} must be an {n}x{n} grid")
    try:
        return Sym2.from_array([[_scalar(v, exact) for v in r] for r in rows], exact)
    except ValueError as exc:
        raise ParseError(f"{key!r}: {exc}") from None


def _spectrum(doc, exact) -> Spectrum:
    try:
        pairs = [(_scalar(e["value"], exact), int(e["mult"])) for e in doc["spectrum"]]
        return Spectrum(tuple(pairs))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"spectrum entries need 'value' and 'mult': {exc}") from None
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def parse_instance(doc: dict, exact: bool = True):
    """An :class:`AffineInstance` or :class:`SpaceFormInstance` from its JSON form."""
    if not isinstance(doc, dict):
        raise ParseError("instance file must hold a JSON object")
    kind = doc.get("kind")
    if kind not in ("affine", "spaceform"):
        raise ParseError("kind must be 'affine' or 'spaceform'")
    try:
        n = int(doc["n"])
    except (KeyError, TypeError, ValueError):
        raise ParseError("missing or bad 'n'") from None
    sig = doc.get("signature")
    if sig is not None and (len(sig) != n or any(s not in (1, -1) for s in sig)):
        raise ParseError("signature must list n entries of +1 or -1")
    if "spectrum" in doc:
        spec = _spectrum(doc, exact)
        if spec.n != n:
            raise ParseError(f"multiplicities sum to {spec.n}, not n = {n}")
        metric = Sym2.diag(sig, exact) if sig else None
    else:
        spec = None
    if kind == "affine":
        if spec is not None:
            if metric is None:
                return from_spectrum(spec, exact)
            return AffineInstance(metric, Sym2.diag(spec.values, exact), spec)
        return AffineInstance(_grid(doc, "h", n, exact), _grid(doc, "S", n, exact))
    c = _scalar(doc.get("c", 0), exact)
    if spec is not None:
        if metric is None:
            return SpaceFormInstance.from_spectrum(spec, c, exact)
        return SpaceFormInstance(metric, Sym2.diag(spec.values, exact), c, spec)
    return SpaceFormInstance(_grid(doc, "g", n, exact), _grid(doc, "H", n, exact), c)


def load_instance(path: str, exact: bool = True):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None
    return parse_instance(doc, exact)


def spectrum_document(kind: str, spec: Spectrum, c=None) -> dict:
    doc = {"kind": kind, "n": spec.n,
           "spectrum": [{"value": format_scalar(v), "mult": m} for v, m in spec.entries]}
    if c is not None:
        doc["c"] = format_scalar(c)
    return doc


# ---------------------------------------------------------------------------
# subcommands


def _summary(args, start, **extra):
    return {"seed": getattr(args, "seed", None), "arithmetic_mode": args.arith,
            "wall_time": time.perf_counter() - start, **extra}


def cmd_verify(args) -> dict:
    lo, hi = suites.parse_range(args.n)
    return suites.run_suite(args.suite, (lo, hi), args.trials, args.seed, args.arith,
                            args.tol, args.workers)


def cmd_classify(args) -> dict:
    start = time.perf_counter()
    inst = load_instance(args.instance, args.arith == "exact")
    if isinstance(inst, SpaceFormInstance):
        inst = AffineInstance(inst.g, inst.H, inst.spectrum)
    cls = classify(inst, args.tol)
    rep = Report(args.tol, {"n": inst.n})
    for flag in cls.flags:
        rep.holds(f"classify.{flag.name}", str(flag), True)
    doc = suites.report_document(rep)
    doc["flags"] = [str(f) for f in cls.flags]
    doc["spectrum"] = None if cls.spectrum is None else str(cls.spectrum)
    doc["summary"].update(_summary(args, start))
    return doc


def cmd_decompose(args) -> dict:
    start = time.perf_counter()
    inst = load_instance(args.instance, args.arith == "exact")
    if isinstance(inst, SpaceFormInstance):
        B, g = gauss_curvature(inst), inst.g
    else:
        B, g = inst.r_star, inst.h
    rep = Report(args.tol, {"n": inst.n})
    out = {}
    for name, solver, fields in (
            ("roter", roter_decompose, ("phi", "mu", "eta")),
            ("extended", extended_decompose, ("phi", "beta1", "beta2", "beta3"))):
        anchor = ("B = phi/2 Ric^Ric + mu g^Ric + eta/2 g^g" if name == "roter" else
                  "B = phi/2 Ric^Ric + beta1 g^Ric^2 + beta2 g^Ric + beta3/2 g^g")
        try:
            c = solver(B, g, args.tol)
        except (NoDecomposition, DegenerateDecomposition, ValueError) as exc:
            rep.skip(f"decompose.{name}", anchor, str(exc))
            out[name] = None
            continue
        coeffs = {f: getattr(c, f) for f in fields}
        rep.holds(f"decompose.{name}", anchor, True, **coeffs)
        out[name] = {k: format_scalar(v) for k, v in coeffs.items()}
    doc = suites.report_document(rep)
    doc["decompositions"] = out
    doc["summary"].update(_summary(args, start))
    return doc


def cmd_metric_check(args) -> dict:
    from . import metric

    start = time.perf_counter()
    name = args.chart
    if name in ("rn", "reissner-nordstrom"):
        chart = metric.get_chart(name, M=args.mass, Q=args.charge, Lam=args.lam)
    elif name == "schwarzschild":
        chart = metric.get_chart(name, M=args.mass)
    else:
        chart = metric.get_chart(name)
    rep = Report(args.tol)
    for r in args.r:
        for theta in args.theta:
            x = _chart_point(chart, r, theta)
            coeffs = None
            if chart.name == "reissner-nordstrom":
                coeffs = metric.rn_roter_coefficients(args.mass, args.charge, args.lam, r)
            rep.extend(metric.verify_point(chart, x, coeffs, args.tol))
            if chart.name in ("schwarzschild", "flat"):
                rep.extend(metric.verify_ricci_flat(chart, x, args.flat_tol))
    doc = suites.report_document(rep)
    doc["summary"].update(_summary(args, start, chart=chart.name, params=chart.params))
    return doc


def _chart_point(chart, r, theta):
    coords = chart.coords
    if coords[:3] == ("t", "r", "theta"):
        return [0.0, r, theta, 0.0] + [0.0] * (chart.n - 4)
    if coords[:1] == ("theta",):
        return [theta] + [0.0] * (chart.n - 1)
    return [0.0] * chart.n


GENERATORS = {
    "two-curvature": suites.two_curvature,
    "quasi-umbilical": suites.quasi_umbilical,
    "einstein-star": suites.einstein_star,
    "two-quasi-umbilical": suites.two_quasi_umbilical,
    "rank-two": suites.rank_two,
    "three-curvature": suites.three_curvature,
    "generic": suites.generic,
}


def cmd_gen(args) -> dict:
    if args.n < 3:
        raise suites.BadRange("instances need n >= 3")
    rng = random.Random(f"{args.seed}/gen/{args.kind}/{args.n}")
    if args.kind == "spaceform":
        spec = suites.three_curvature(rng, args.n)
        return spectrum_document("spaceform", spec, suites.rational(rng, zero=True))
    if args.kind in ("einstein-star", "two-quasi-umbilical", "rank-two") and args.n < 4:
        raise suites.BadRange(f"{args.kind} instances need n >= 4")
    return spectrum_document("affine", GENERATORS[args.kind](rng, args.n))


# ---------------------------------------------------------------------------
# entry point


def _add_common(p, seed=True):
    p.add_argument("--arith", choices=("exact", "float"), default="exact")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    if seed:
        p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ov-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run a seeded identity suite")
    p.add_argument("--suite", default="all")
    p.add_argument("--n", default="3..5", help="dimension range A..B")
    p.add_argument("--trials", type=int, default=10, help="trials per dimension")
    p.add_argument("--workers", type=int, default=1)
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="pointwise classes of an instance")
    p.add_argument("--instance", required=True)
    _add_common(p, seed=False)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("decompose", help="Roter and extended decompositions")
    p.add_argument("--instance", required=True)
    _add_common(p, seed=False)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("metric-check", help="curvature checks on a coordinate chart")
    p.add_argument("chart", nargs="?", default="rn")
    p.add_argument("--mass", type=float, default=1.0)
    p.add_argument("--charge", type=float, default=0.5)
    p.add_argument("--lambda", dest="lam", type=float, default=0.0)
    p.add_argument("--r", type=float, nargs="+", default=[3.0])
    p.add_argument("--theta", type=float, nargs="+", default=[math.pi / 3])
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--flat-tol", type=float, default=1e-9)
    p.add_argument("--out")
    p.set_defaults(func=cmd_metric_check, arith="float")

    p = sub.add_parser("gen", help="emit a random instance file")
    p.add_argument("--kind", choices=(*GENERATORS, "spaceform"), default="three-curvature")
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)
    return parser


def _emit(doc: dict, out: str | None) -> None:
    text = json.dumps(doc, indent=2, default=str)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = args.func(args)
    except (ParseError, suites.BadRange, suites.UnknownSuite, ValueError) as exc:
        print(f"ov-lab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    _emit(doc, args.out)
    counts = doc.get("summary", {}).get("counts")
    return 1 if counts and counts.get("fail") else 0


if __name__ == "__main__":
    sys.exit(main())
