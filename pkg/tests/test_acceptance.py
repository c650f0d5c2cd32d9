"""Acceptance criteria 1-13, one test each.

Every test records a single PASS/FAIL line; the lines are repeated in the
terminal summary of a pytest run.
"""

import json
import math
import random
import time
from collections import Counter


from ovlab import cli, reference, suites
from ovlab.affine import Spectrum, from_spectrum
from ovlab.affine_verify import verify_section6, verify_thm71, verify_thm72, verify_thm73
from ovlab.identities import verify_prop32
from ovlab.metric import get_chart, rn_roter_coefficients, roter_residual, verify_ricci_flat
from ovlab.ops import curv_action, kulkarni_nomizu, roter_decompose, tachibana, wedge_square
from ovlab.spaceform import SpaceFormInstance, verify_thm81


def rng_for(tag):
    return random.Random(f"acceptance/{tag}")


def statuses(reports, *ids):
    """Counter of (check_id, status) restricted to ``ids``."""
    out = Counter()
    for rep in reports:
        for c in rep:
            if c.check_id in ids:
                out[c.check_id, c.status] += 1
    return out


def all_pass(counter, ids, minimum):
    return all(counter[i, "pass"] >= minimum and counter[i, "fail"] == 0 for i in ids)


def test_criterion_01_universal_identity(tmp_path, criterion):
    out = tmp_path / "core.json"
    start = time.perf_counter()
    code = cli.main(["verify", "--suite", "core-identities", "--n", "3..6", "--trials", "50",
                     "--seed", "42", "--arith", "exact", "--out", str(out)])
    elapsed = time.perf_counter() - start
    doc = json.loads(out.read_text())
    eq6 = [c for c in doc["checks"] if c["check_id"] == "ov.ricci_pseudosymmetry"]
    ok = (code == 0 and len(eq6) >= 200 and all(c["status"] == "pass" for c in eq6)
          and all(c["residual"] == "0" for c in eq6) and elapsed < 60)
    criterion(1, ok, f"{len(eq6)} instances, R*.R* - Q(Ric,R*) = 0 exactly, {elapsed:.1f}s")
    assert ok


def test_criterion_02_weyl_equivalence(criterion):
    rng = rng_for(2)
    qu_zero = generic_nonzero = 0
    for n in (4, 5, 6):
        for _ in range(10):
            qu_zero += suites.realize(rng, suites.quasi_umbilical(rng, n), True).weyl.is_zero()
    generic_total = 0
    for i in range(100):
        n = 4 + i % 3
        inst = suites.realize(rng, suites.generic(rng, n), True)
        generic_total += 1
        generic_nonzero += not inst.weyl.is_zero()
    ok = qu_zero == 30 and generic_nonzero == generic_total == 100
    criterion(2, ok, f"quasi-umbilical Weyl = 0: {qu_zero}/30; "
                     f"multiplicities <= n-2 Weyl != 0: {generic_nonzero}/100")
    assert ok


def test_criterion_03_two_curvature_pseudosymmetry(criterion):
    rng = rng_for(3)
    reps = []
    for n in (4, 5, 6):
        for _ in range(10):
            reps.append(verify_section6(suites.realize(rng, suites.two_curvature(rng, n), True)))
            reps.append(verify_section6(suites.realize(rng, suites.quasi_umbilical(rng, n),
                                                       True)))
    ids = ("ov.two_curvature", "ov.partially_einstein", "ov.quasi_umbilical")
    c = statuses(reps, *ids)
    ok = all_pass(c, ids, 30)
    criterion(3, ok, "R*.R* = l1 l2 Q(h,R*) on {} two-curvature points; "
                     "L = rho(tr - (n-1) rho) on {} quasi-umbilical points".format(
                         c["ov.two_curvature", "pass"], c["ov.quasi_umbilical", "pass"]))
    assert ok


def roter_instances(count_per_n=12):
    rng = rng_for(4)
    for n in (4, 5, 6):
        for _ in range(count_per_n):
            yield suites.realize(rng, suites.roter_two_curvature(rng, n), True)


def test_criterion_04_shifted_square(criterion):
    reps = [verify_section6(inst) for inst in roter_instances()]
    ids = ("ov.shifted_square_form", "ov.shifted_square_coefficients",
           "ov.roter_weyl_commutator", "ov.roter_pseudosymmetry")
    c = statuses(reps, *ids)
    ok = all_pass(c, ids, len(reps))
    criterion(4, ok, f"shifted-square decomposition and Weyl commutator on "
                     f"{c['ov.shifted_square_form', 'pass']}/{len(reps)} points")
    assert ok


def test_criterion_05_einstein_star(criterion):
    rng = rng_for(5)
    insts = [from_spectrum(Spectrum.from_values([1, 1, -1, -1]))]
    for n in (4, 5, 6):
        insts += [suites.realize(rng, suites.einstein_star(rng, n), True) for _ in range(5)]
    reps = [verify_section6(i) for i in insts]
    ids = ("ov.einstein_star_square", "ov.einstein_star_shape_action_literal",
           "ov.einstein_star_pseudosymmetry", "ov.einstein_star_weyl")
    c = statuses(reps, *ids)
    ok = all_pass(c, ids, len(insts))
    detail = ", ".join(f"{i.split('.')[-1]} {c[i, 'pass']}/{len(insts)}" for i in ids)
    criterion(5, ok, detail)
    assert ok, detail


def test_criterion_06_two_quasi_umbilical(criterion):
    rng = rng_for(6)
    reps, degenerate = [], []
    for n in (4, 5, 6):
        for _ in range(8):
            spec = suites.two_quasi_umbilical(rng, n)
            reps.append(verify_thm71(suites.realize(rng, spec, True), spec.entries[2][0]))
            spec = suites.two_quasi_umbilical(rng, n, degenerate=True)
            degenerate.append(verify_thm71(suites.realize(rng, spec, True), spec.entries[2][0]))
    fails = sum(len(r.failures()) for r in reps + degenerate)
    tau_forms = statuses(reps, "ov.tqu_tau_forms")["ov.tqu_tau_forms", "pass"]
    rank = statuses(degenerate, "ov.tqu_degenerate_rank")["ov.tqu_degenerate_rank", "pass"]
    ok = fails == 0 and tau_forms == len(reps) and rank == len(degenerate)
    criterion(6, ok, f"tau != 0: {len(reps)} points, both tau forms agree on {tau_forms}; "
                     f"tau = 0 rank <= 1 on {rank}/{len(degenerate)}")
    assert ok


def test_criterion_07_rank_two(criterion):
    rng = rng_for(7)
    reps = [verify_thm72(suites.realize(rng, suites.rank_two(rng, n), True))
            for n in (4, 5, 6) for _ in range(8)]
    ids = ("ov.rank_two_form", "ov.rank_two_ricci_square", "ov.rank_two_semisymmetry",
           "ov.rank_two_weyl_semisymmetry", "ov.rank_two_weyl_action",
           "ov.rank_two_weyl_pseudosymmetry", "ov.rank_two_weyl_commutator")
    c = statuses(reps, *ids)
    ok = all_pass(c, ids, len(reps)) and all(r.ok for r in reps)
    criterion(7, ok, f"seven identities on {len(reps)} (l1, l2, 0, ..., 0) points")
    assert ok


def test_criterion_08_three_curvatures(criterion):
    rng = rng_for(8)
    reps = []
    for n in (3, 4, 5, 6):
        for k in range(10):
            spec = suites.three_curvature(rng, n, mu_zero=k % 3 == 0)
            reps.append(verify_thm73(suites.realize(rng, spec, True)))
    c = statuses(reps, "ov.three_shape_proportional", "ov.three_mu_forms",
                 "ov.three_rstar_form", "ov.three_partially_einstein_star")
    ok = (all(r.ok for r in reps) and c["ov.three_shape_proportional", "pass"] == len(reps)
          and c["ov.three_rstar_form", "pass"] > 0
          and c["ov.three_partially_einstein_star", "pass"] > 0)
    criterion(8, ok, "A = mu S on {} points; mu != 0 form {}; mu = 0 fit {}".format(
        len(reps), c["ov.three_rstar_form", "pass"], c["ov.three_partially_einstein_star", "pass"]))
    assert ok


def test_criterion_09_roter_battery(criterion):
    reps = []
    for inst in roter_instances():
        reps.append(verify_prop32(inst.r_star, inst.h, roter_decompose(inst.r_star, inst.h)))
    battery = sum(1 for r in reps if r.counts()["pass"] == 14)
    ok = len(reps) >= 30 and battery == len(reps) and all(r.ok for r in reps)
    criterion(9, ok, f"full battery on {battery}/{len(reps)} Roter points")
    assert ok


def test_criterion_10_rank_two_symmetric(tmp_path, criterion):
    out = tmp_path / "p34.json"
    code = cli.main(["verify", "--suite", "prop34", "--n", "3..6", "--trials", "25",
                     "--seed", "10", "--out", str(out)])
    doc = json.loads(out.read_text())
    trials = {(c["params"]["n"], c["params"]["trial"]) for c in doc["checks"]}
    ok = code == 0 and len(trials) >= 100 and doc["summary"]["counts"]["fail"] == 0
    criterion(10, ok, f"{len(trials)} rank-two tensors, {doc['summary']['counts']}")
    assert ok


def test_criterion_11_space_forms(criterion):
    rng = rng_for(11)
    reps = []
    for n in (4, 5, 6):
        while sum(1 for r in reps if r.params["n"] == n) < 17:
            spec = suites.three_curvature(rng, n)
            reps.append(verify_thm81(SpaceFormInstance.from_spectrum(
                spec, suites.rational(rng, zero=True))))
    family = [Spectrum.of([(5, 1), (1, 2), (-1, 2)])]
    while len(family) < 10:
        # (n1 - 1) l1 + (n2 - 1) l2 = 0
        n1, n2 = rng.randint(2, 3), rng.randint(1, 3)
        l2 = suites.rational(rng)
        l1 = -(n2 - 1) * l2 / (n1 - 1)
        l0 = suites.rational(rng)
        if len({l0, l1, l2}) == 3 and l1 != 0:
            family.append(Spectrum.of([(l0, 1), (l1, n1), (l2, n2)]))
    family_ok = True
    for spec in family:
        (l0, _), (l1, _), (l2, _) = spec.entries
        rep = verify_thm81(SpaceFormInstance.from_spectrum(spec, suites.rational(rng)))
        mu = rep.get("sf.shape_proportional").params["mu"]
        family_ok &= rep.ok and mu == l0 * l1 * l2
    forms = sum(1 for r in reps if r.status_of("sf.curvature_form") == "pass")
    ok = all(r.ok for r in reps) and forms >= 50 and family_ok
    criterion(11, ok, f"curvature form exact on {forms} points; product family "
                      f"mu = l0 l1 l2 {'reproduced' if family_ok else 'failed'} on {len(family)} spectra")
    assert ok


def test_criterion_12_charged_black_holes(criterion):
    start = time.perf_counter()
    worst = 0.0
    for lam in (0.0, 0.1, -0.1):
        chart = get_chart("reissner-nordstrom", M=1.0, Q=0.5, Lam=lam)
        for r in (2.5, 3.0, 4.0):
            for th in (math.pi / 6, math.pi / 3):
                x = [0.0, r, th, 0.0]
                worst = max(worst, roter_residual(chart, x, rn_roter_coefficients(1.0, 0.5,
                                                                                  lam, r)))
    vacuum = all(verify_ricci_flat(get_chart("schwarzschild", M=1.0), [0.0, r, th, 0.0]).ok
                 for r in (2.5, 3.0, 4.0) for th in (math.pi / 6, math.pi / 3))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-8 and vacuum and elapsed < 5
    criterion(12, ok, f"max Roter residual with the closed-form coefficients {worst:.3e}; "
                      f"Schwarzschild Ricci-flat {vacuum}; {elapsed:.2f}s")
    assert ok


def test_criterion_13_oracle_equivalence(criterion):
    rng = rng_for(13)
    agree = Counter()
    for k in range(60):
        n = 2 + k % 3
        g = suites.random_metric(rng, n)
        e, f, t = (suites.random_sym(rng, n) for _ in range(3))
        b = kulkarni_nomizu(e, f) + wedge_square(t)
        agree["kulkarni_nomizu"] += kulkarni_nomizu(e, f) == reference.kulkarni_nomizu(e, f)
        agree["tachibana"] += (tachibana(e, b) == reference.tachibana(e, b)
                               and tachibana(e, f) == reference.tachibana(e, f))
        agree["curv_action"] += (curv_action(b, t, g) == reference.curv_action(b, t, g)
                                 and curv_action(b, b, g) == reference.curv_action(b, b, g))
    ok = all(agree[k] == 60 for k in ("kulkarni_nomizu", "tachibana", "curv_action"))
    criterion(13, ok, ", ".join(f"{k} {v}/60" for k, v in sorted(agree.items())))
    assert ok
