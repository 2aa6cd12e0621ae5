"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import random
import time

import numpy as np

from infcones.cones import CONE_KINDS, verify_inclusions
from infcones.ideals import (
    Ideal,
    dimension,
    is_groebner,
    normal_form,
    same_radical,
    saturate,
    s_polynomial,
)
from infcones.poly import GREVLEX, LEX, GaussianRational, Polynomial, VariableContext
from infcones.projections import (
    HYPOTHESIS_NOT_SATISFIED,
    VERIFIED,
    LinearSubspace,
    check_affine_linearity,
    find_transverse_subspace,
    sheet_count,
    verify_theorem_1_2,
    verify_theorem_1_3,
)
from infcones.witness import WitnessArc, SampleSchedule, algebraic_region_check, check_cone_membership, sample_directions
from infcones.cones import cone
from infcones.ideals import degree
from infcones.poly import parse_polynomial

from conftest import CHAIN, fixture_cone, fixture_variety, record_criterion, splitting, witness_runs
from test_cones import golden_ideal

FIXTURES = ("line", "plane2", "parabola", "hyperbola", "cusp", "twisted")
E = LinearSubspace.coordinate


def test_criterion_1_cone_fixtures():
    bad, slowest = [], {}
    for name in FIXTURES:
        X = fixture_variety(name)
        for which in CONE_KINDS:
            t0 = time.perf_counter()
            res = cone(X, which)
            slowest[(name, which)] = time.perf_counter() - t0
            gold, dim = golden_ideal(name, which)
            if res.dim != dim or not same_radical(res.ideal, gold):
                bad.append(f"{name} {which}")
    tw = slowest[("twisted", "C5")]
    ok = not bad and tw <= 300
    record_criterion(1, "cone fixtures match derived closed forms up to radical", ok,
                     f"mismatches {bad}; TWISTED C5 {tw:.2f}s")
    assert ok


def test_criterion_2_inclusion_chain():
    bad = []
    for name in FIXTURES:
        X = fixture_variety(name)
        rep = verify_inclusions(X, {w: fixture_cone(name, w) for w in CONE_KINDS})
        d, k, m = rep.dims, X.dim, X.ambient_dim
        if not (rep.passed and d["C3"] == k and k <= d["C4"] <= d["C5"] <= min(m, 2 * k + 1)):
            bad.append(name)
    record_criterion(2, "inclusion chain and dimension window on all fixtures", not bad, f"failures {bad}")
    assert not bad


def test_criterion_3_affine_linearity():
    expected = {"line": VERIFIED, "plane2": VERIFIED, "parabola": HYPOTHESIS_NOT_SATISFIED,
                "hyperbola": HYPOTHESIS_NOT_SATISFIED, "cusp": HYPOTHESIS_NOT_SATISFIED,
                "twisted": HYPOTHESIS_NOT_SATISFIED}
    got = {n: check_affine_linearity(fixture_variety(n), c5=fixture_cone(n, "C5")).verdict for n in expected}
    dims_ok = all(fixture_cone(n, "C5").dim == 2 for n in ("parabola", "hyperbola", "cusp", "twisted"))
    ok = got == expected and dims_ok
    record_criterion(3, "linearity verdicts", ok, str(got))
    assert ok


def test_criterion_4_sheets():
    t0 = time.perf_counter()
    cases = {"parabola": (E(2, 0), 2), "cusp": (E(2, 0), 3), "twisted": (E(3, 0, 1), 3), "line": (E(2, 1), 1)}
    bad = []
    for name, (W, expect) in cases.items():
        X = fixture_variety(name)
        if degree(X) != expect:
            bad.append(f"{name} degree")
        for seed in (0, 1, 2):
            n = sheet_count(X, W, seed)
            if n != expect:
                bad.append(f"{name} seed {seed}: {n}")
    # also along randomly drawn transverse subspaces
    for name, (_, expect) in cases.items():
        X = fixture_variety(name)
        for seed in (0, 1, 2):
            W = find_transverse_subspace(X, seed, cone=fixture_cone(name, "C3"))
            if sheet_count(X, W, seed) != expect:
                bad.append(f"{name} random W seed {seed}")
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 30
    record_criterion(4, "sheet counts equal degree for 3 seeds", ok, f"{elapsed:.2f}s; failures {bad}")
    assert ok


def test_criterion_5_singular_vs_critical():
    cusp = verify_theorem_1_2(fixture_variety("cusp"), E(2, 0))
    par = verify_theorem_1_2(fixture_variety("parabola"), E(2, 0))
    par_y = verify_theorem_1_2(fixture_variety("parabola"), E(2, 1))
    ok = (cusp.verdict == VERIFIED and cusp.conclusions[0].certificate["discrepancy_dim"] == -1
          and par.verdict == VERIFIED and par.conclusions[0].certificate["discrepancy_points"] == 1
          and par_y.verdict == HYPOTHESIS_NOT_SATISFIED)
    record_criterion(5, "singular locus equals critical locus near infinity", ok,
                     f"{cusp.verdict}, {par.verdict}, {par_y.verdict}")
    assert ok


def test_criterion_6_hypersurface_projection():
    tw = fixture_variety("twisted")
    split = splitting("twisted")
    good = verify_theorem_1_3(tw, split, 2, c5=fixture_cone("twisted", "C5"))
    bad = verify_theorem_1_3(tw, split, 1, c5=fixture_cone("twisted", "C5"))
    cert = good.conclusions[0].certificate
    ctx = VariableContext(cert["variables"])
    image = Ideal([parse_polynomial(g, ctx) for g in cert["image"]], ctx)
    expected = Ideal([parse_polynomial("z^2 - y^3", ctx)], ctx)
    ok = good.verdict == VERIFIED and image.equals(expected) and bad.verdict == HYPOTHESIS_NOT_SATISFIED
    record_criterion(6, "hypersurface projection of the twisted cubic", ok,
                     f"kernel e_x: {good.verdict} image {cert['image']}; kernel e_y: {bad.verdict}")
    assert ok


def test_criterion_7_numeric_symbolic():
    bad, worst, slopes = [], 0.0, []
    for name in FIXTURES:
        for label, kind, d in witness_runs(name):
            if d.radii[-1] < 1e6:
                bad.append(f"{name} {label} radius")
            for w in CHAIN[kind]:
                rep = check_cone_membership(fixture_cone(name, w), d)
                worst = max(worst, rep.residuals[-1])
                if rep.slope is not None:
                    slopes.append(rep.slope)
                if not rep.passed or (rep.slope is not None and rep.slope >= -0.4):
                    bad.append(f"{name} {label} vs {w}")
    ctx = fixture_cone("parabola", "C4").ideal.ctx
    wrong = Ideal([parse_polynomial("v_y", ctx)], ctx)
    tangents = sample_directions("c4", WitnessArc(["x", "y"], ["s", "s^2"]), SampleSchedule())
    control = check_cone_membership(wrong, tangents)
    ok = not bad and not control.passed
    record_criterion(7, "sampled directions lie in the symbolic cones", ok,
                     f"worst final residual {worst:.2e}; max fitted slope {max(slopes):.2f}; "
                     f"wrong-cone control {'FAIL' if not control.passed else 'PASS'}; failures {bad}")
    assert ok


def test_criterion_8_region():
    arc = WitnessArc(["x", "y"], ["s", "s^2"]).validate(fixture_variety("parabola"))
    good = algebraic_region_check([arc], E(2, 1), E(2, 0), 2, 0.5)
    swapped = algebraic_region_check([arc], E(2, 0), E(2, 1), 2, 1)
    ok = good.passed and 0.45 <= good.fitted_B <= 0.55 and not swapped.passed
    record_criterion(8, "algebraic region inequality on the parabola", ok,
                     f"fitted B {good.fitted_B:.4f}; swapped split violations {swapped.violations}")
    assert ok


# -- criterion 9: randomized engine suites, 1000 cases each

CASES = 1000
CTX = VariableContext(["x", "y", "z"])


def _rand_coeff(rng):
    c = GaussianRational(rng.randint(-4, 4), rng.choice([0, 0, rng.randint(-2, 2)]))
    return c if c else GaussianRational(1)


def _rand_poly(rng, max_deg=2, max_terms=3, min_deg=1):
    """Random polynomial with at least one term of degree ≥ min_deg."""
    terms = {}
    for j in range(rng.randint(2, max_terms)):
        e = [0, 0, 0]
        for _ in range(rng.randint(min_deg if j == 0 else 0, max_deg)):
            e[rng.randrange(3)] += 1
        terms[tuple(e)] = _rand_coeff(rng)
    return Polynomial(CTX, terms)


def _ring_axioms(rng):
    a, b, c = (_rand_poly(rng, 3, 4) for _ in range(3))
    return ((a + b) + c == a + (b + c) and (a * b) * c == a * (b * c) and a * (b + c) == a * b + a * c
            and a + (-a) == Polynomial.zero(CTX) and a * b == b * a)


def _spolys(rng):
    I = Ideal([_rand_poly(rng, 3, 3) for _ in range(rng.randint(2, 3))], CTX)
    order = rng.choice([GREVLEX, LEX])
    gb = I.groebner(order)
    return (is_groebner(gb, order)
            and all(normal_form(s_polynomial(f, g, order), gb, order).is_zero() for f in gb for g in gb)
            and all(normal_form(f, gb, order).is_zero() for f in I.generators))


def _saturation(rng):
    g = _rand_poly(rng, 1, 2)
    I = Ideal([_rand_poly(rng) * g ** rng.randint(0, 2) for _ in range(rng.randint(1, 2))], CTX)
    J = Ideal([g], CTX)
    S = saturate(I, J)
    return S.contains_ideal(I) and saturate(S, J).equals(S)


def _linear(rng):
    m = rng.randint(1, 5)
    r = rng.randint(0, m)
    ctx = VariableContext([f"x{j}" for j in range(m)])
    while True:
        rows = [[rng.randint(-6, 6) for _ in range(m + 1)] for _ in range(r)]
        if r == 0 or np.linalg.matrix_rank(np.array([row[:m] for row in rows], dtype=float)) == r:
            break
    gens = [Polynomial(ctx, {tuple(int(i == j) for i in range(m)): row[j] for j in range(m) if row[j]}) + row[m]
            for row in rows] or [Polynomial.zero(ctx)]
    return dimension(Ideal(gens, ctx)) == m - r


def test_criterion_9_engine_properties():
    t0 = time.perf_counter()
    failures = {}
    for label, prop, seed in [("ring axioms", _ring_axioms, 1), ("S-polynomials", _spolys, 2),
                              ("saturation idempotence", _saturation, 3), ("generic linear dimension", _linear, 4)]:
        rng = random.Random(seed)
        failures[label] = sum(1 for _ in range(CASES) if not prop(rng))
    elapsed = time.perf_counter() - t0
    ok = not any(failures.values()) and elapsed < 120
    record_criterion(9, f"randomized engine suites, {CASES} cases each", ok, f"{elapsed:.1f}s; failures {failures}")
    assert ok
