import pytest

from infcones.cones import direction_context
from infcones.errors import InputError
from infcones.ideals import Ideal, degree, dimension
from infcones.poly import parse_polynomial
from infcones.projections import (
    HYPOTHESIS_NOT_CERTIFIED,
    HYPOTHESIS_NOT_SATISFIED,
    VERIFIED,
    LinearSubspace,
    Splitting,
    check_affine_linearity,
    check_proper,
    cone_subspace_trivial,
    critical_locus,
    find_transverse_subspace,
    kernel_subspace,
    sheet_count,
    verify_theorem_1_2,
    verify_theorem_1_3,
)

from conftest import fixture_cone, fixture_variety, splitting, variety

E = LinearSubspace.coordinate


def test_subspace_validation():
    with pytest.raises(InputError):
        LinearSubspace.span([1, 2], [2, 4])
    with pytest.raises(InputError):
        LinearSubspace(3, (("1", "0"),))
    S = LinearSubspace.span(["1/2+i", "0"], [0, 1])
    assert S.dim == 2 and S.to_json()["basis"][0] == ["1/2+i", "0"]
    with pytest.raises(InputError):
        Splitting(E(2, 0), E(2, 0))
    sp = Splitting(E(2, 1), LinearSubspace.span([1, 1]))
    assert sp.change_of_coords == [[-1, 1], [1, 0]]


def _cone_in(vars, text):
    from infcones.cones import ConeResult
    ctx = direction_context(variety(vars, "0").ctx)
    I = Ideal([parse_polynomial(text, ctx)], ctx)
    return ConeResult("C5", I, dimension(I), "pure")


def test_cone_subspace_trivial_examples():
    c = _cone_in("x,y", "v_x")
    assert cone_subspace_trivial(c, E(2, 0))
    assert not cone_subspace_trivial(c, E(2, 1))
    tw = fixture_cone("twisted", "C5")
    assert not cone_subspace_trivial(tw, E(3, 1))
    assert cone_subspace_trivial(tw, E(3, 0))
    assert cone_subspace_trivial(tw, LinearSubspace(3, ()))
    with pytest.raises(InputError):
        cone_subspace_trivial(tw, E(2, 0))


def test_find_transverse_examples():
    par = fixture_variety("parabola")
    W = find_transverse_subspace(par, seed=4)
    assert W.basis[0][0] != 0
    assert find_transverse_subspace(par, seed=4) == W
    c3 = fixture_cone("line", "C3")
    assert cone_subspace_trivial(c3, E(2, 1)) and not cone_subspace_trivial(c3, E(2, 0))
    assert cone_subspace_trivial(fixture_cone("twisted", "C3"), E(3, 0, 1))


@pytest.mark.parametrize("seed", range(5))
def test_transverse_output_is_transverse(fixture_name, seed):
    X = fixture_variety(fixture_name)
    W = find_transverse_subspace(X, seed, cone=fixture_cone(fixture_name, "C3"))
    assert W.dim == X.ambient_dim - X.dim
    assert cone_subspace_trivial(fixture_cone(fixture_name, "C3"), W)


def test_check_proper_examples():
    par = fixture_variety("parabola")
    assert check_proper(par, E(2, 0))
    assert not check_proper(par, E(2, 1))
    assert check_proper(fixture_variety("line"), E(2, 1))
    with pytest.raises(InputError):
        check_proper(par, E(2, 0, 1))


def test_sheet_count_examples():
    assert sheet_count(fixture_variety("parabola"), E(2, 0), seed=0) == 2
    assert sheet_count(fixture_variety("line"), LinearSubspace.span([1, 3]), seed=0) == 1
    assert sheet_count(fixture_variety("twisted"), E(3, 0, 1), seed=0) == 3


@pytest.mark.parametrize("seed", range(3))
def test_sheets_equal_degree(fixture_name, seed):
    X = fixture_variety(fixture_name)
    W = find_transverse_subspace(X, seed, cone=fixture_cone(fixture_name, "C3"))
    assert sheet_count(X, W, seed) == degree(X)


def test_transversality_monotone_in_chain(fixture_name):
    X = fixture_variety(fixture_name)
    for seed in range(4):
        W = find_transverse_subspace(X, seed, cone=fixture_cone(fixture_name, "C3"))
        t3, t4, t5 = (cone_subspace_trivial(fixture_cone(fixture_name, w), W) for w in ("C3", "C4", "C5"))
        assert t3 >= t4 >= t5


def test_critical_locus_examples():
    cusp = fixture_variety("cusp")
    C = critical_locus(cusp, E(2, 0))
    assert C.equals(Ideal([parse_polynomial(s, C.ctx) for s in ("y^2 - x^3", "-3*x^2")], C.ctx))
    par = fixture_variety("parabola")
    C = critical_locus(par, E(2, 0))
    assert C.equals(Ideal([parse_polynomial(s, C.ctx) for s in ("y - x^2", "x")], C.ctx))
    assert critical_locus(fixture_variety("line"), E(2, 1)).is_unit()


def test_singular_vs_critical_examples():
    rep = verify_theorem_1_2(fixture_variety("cusp"), E(2, 0))
    assert rep.verdict == VERIFIED
    assert rep.conclusions[0].certificate["discrepancy_dim"] == -1
    rep = verify_theorem_1_2(fixture_variety("parabola"), E(2, 0))
    assert rep.verdict == VERIFIED
    assert rep.conclusions[0].certificate["discrepancy_points"] == 1
    rep = verify_theorem_1_2(fixture_variety("parabola"), E(2, 1))
    assert rep.verdict == HYPOTHESIS_NOT_SATISFIED


def test_singular_vs_critical_never_fails_under_hypothesis(fixture_name):
    X = fixture_variety(fixture_name)
    for seed in range(2):
        W = find_transverse_subspace(X, seed, cone=fixture_cone(fixture_name, "C4"))
        rep = verify_theorem_1_2(X, W, c4=fixture_cone(fixture_name, "C4"))
        assert rep.verdict == VERIFIED


def test_hypersurface_projection_examples():
    tw = fixture_variety("twisted")
    split = splitting("twisted")
    assert kernel_subspace(split, 2) == E(3, 0)
    rep = verify_theorem_1_3(tw, split, 2)
    assert rep.verdict == VERIFIED
    image = rep.conclusions[0].certificate
    assert image["variables"] == ["z", "y"]
    assert image["principal_generator"] in ("y^3 - z^2", "-y^3 + z^2")
    rep = verify_theorem_1_3(tw, split, 1)
    assert rep.verdict == HYPOTHESIS_NOT_SATISFIED
    # conclusions are still reported independently of the hypothesis
    assert rep.conclusions and all(c.passed for c in rep.conclusions)
    rep = verify_theorem_1_3(fixture_variety("line"), splitting("line"), 1)
    assert rep.verdict == VERIFIED
    with pytest.raises(InputError):
        verify_theorem_1_3(tw, split, 3)


def test_affine_linearity_examples():
    assert check_affine_linearity(fixture_variety("line")).verdict == VERIFIED
    assert check_affine_linearity(fixture_variety("plane2")).verdict == VERIFIED
    for name in ("parabola", "hyperbola", "cusp", "twisted"):
        assert check_affine_linearity(fixture_variety(name)).verdict == HYPOTHESIS_NOT_SATISFIED


def test_affine_linearity_not_certified():
    from infcones.cones import ConeResult, purity_of
    X = fixture_variety("line")
    ctx = direction_context(X.ctx)
    I = Ideal([parse_polynomial("v_y^2", ctx), parse_polynomial("v_x*v_y", ctx)], ctx)
    assert purity_of(I, 1) == "unknown"
    rep = check_affine_linearity(X, c5=ConeResult("C5", I, dimension(I), purity_of(I, 1)))
    assert rep.verdict == HYPOTHESIS_NOT_CERTIFIED
    assert not rep.conclusions


def test_contrapositive_linearity(fixture_name):
    X = fixture_variety(fixture_name)
    c5 = fixture_cone(fixture_name, "C5")
    if degree(X) >= 2:
        assert not (c5.dim == X.dim and c5.purity == "pure")


def test_report_json():
    rep = verify_theorem_1_2(fixture_variety("parabola"), E(2, 0)).to_json()
    assert rep["verdict"] == "verified"
    assert rep["hypotheses"][0]["status"] == "pass"
