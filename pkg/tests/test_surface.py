import pytest

from cralg import (
    algebraize,
    algebraize_twice_equals_tensor,
    cartesian_product,
    check_fd_condition,
    check_finite_type_linear,
    check_holomorphic_nondegeneracy_bounded,
    check_quadric_nondegeneracy,
    hermitian_form,
    make_surface,
    preset_algebra,
)
from cralg.errors import NotHomogeneous, NotReal, NotThroughOrigin, UnknownVariable, WrongBidegree
from cralg.parse import parse_expression
from cralg.surface import HermitianFormSpec, cr_type, direct_sum_matches_product
from cralg.scalars import GaussianRational


def test_make_surface_validation():
    with pytest.raises(NotReal):
        make_surface(1, 1, ["z1^2"], {"z1": 1, "w1": 2})
    with pytest.raises(NotHomogeneous):
        make_surface(1, 1, ["z1*zb1 + z1^2*zb1^2"], {"z1": 1, "w1": 2})
    with pytest.raises(UnknownVariable):
        make_surface(1, 1, ["z2*zb2"])
    with pytest.raises(NotThroughOrigin):
        make_surface(1, 1, ["z1*zb1 + u1"], through_origin=True)


def test_inferred_weights():
    q = make_surface(1, 1, ["z1^2*zb1^2"])
    assert q.table.weights["w1"] == 4 and q.homogeneous


def test_sphere_over_dual(sphere_dual):
    t = sphere_dual.table
    assert cr_type(sphere_dual) == (2, 2)
    assert sphere_dual.phi[0] == parse_expression("z1_1*zb1_1", t)
    assert sphere_dual.phi[1] == parse_expression("2*Re(z1_2*zb1_1)", t)


def test_quartic_over_dual(quartic_dual):
    t = quartic_dual.table
    assert quartic_dual.phi[0] == parse_expression("z1_1^2*zb1_1^2", t)
    assert quartic_dual.phi[1] == parse_expression("4*Re(z1_1^2*zb1_1*zb1_2)", t)


def test_algebraize_over_reals_is_identity(quartic):
    q = algebraize(quartic, preset_algebra("reals"))
    assert cr_type(q) == (1, 1)
    assert str(q.phi[0]) == "z1_1^2*zb1_1^2"


@pytest.mark.parametrize("a,b", [("dual", "dual"), ("reals", "dual"), ("dual", "split"), ("complex_as_real", "dual")])
def test_tensor_composition(sphere, quartic, a, b):
    s1, s2 = preset_algebra(a), preset_algebra(b)
    assert algebraize_twice_equals_tensor(sphere, s1, s2)
    assert algebraize_twice_equals_tensor(quartic, s1, s2)


def test_direct_sum_gives_product(sphere, quartic):
    d, r = preset_algebra("dual"), preset_algebra("reals")
    assert direct_sum_matches_product(sphere, d, r)
    assert direct_sum_matches_product(quartic, r, r)


def test_cartesian_product(sphere):
    q = cartesian_product(sphere, sphere)
    assert cr_type(q) == (2, 2)
    assert [str(p) for p in q.phi][0].count("zb") == 1


@pytest.mark.parametrize("spec", ["reals", "complex_as_real", "dual", "split", "truncated_poly:2", "product_of:2"])
def test_raq_quadrics_nondegenerate(sphere, spec):
    name, _, p = spec.partition(":")
    s = preset_algebra(name, int(p) if p else None)
    assert check_quadric_nondegeneracy(hermitian_form(algebraize(sphere, s))).nondegenerate


def test_duplicated_form_is_dependent():
    one = GaussianRational(1, 0)
    h = HermitianFormSpec(1, 2, (((one,),), ((one,),)))
    r = check_quadric_nondegeneracy(h)
    assert not r.independent and r.trivial_kernel


def test_kernel_detected():
    zero, one = GaussianRational(0, 0), GaussianRational(1, 0)
    h = HermitianFormSpec(2, 1, (((one, zero), (zero, zero)),))
    assert not check_quadric_nondegeneracy(h).trivial_kernel


def test_hermitian_form_needs_quadric(quartic):
    with pytest.raises(WrongBidegree):
        hermitian_form(quartic)


def test_fd_condition(quartic, quartic_dual, sphere):
    r = check_fd_condition(quartic)
    assert r.holds and r.samples == 1
    assert check_fd_condition(quartic_dual).holds
    with pytest.raises(WrongBidegree):
        check_fd_condition(sphere)
    big = make_surface(1, 3, ["z1^2*zb1^2", "2*z1^2*zb1^2", "3*z1^2*zb1^2"], {"z1": 1, "w1": 4, "w2": 4, "w3": 4})
    assert check_fd_condition(big).status == "inconclusive"


def test_holomorphic_nondegeneracy(sphere, quartic):
    assert check_holomorphic_nondegeneracy_bounded(sphere, 3).status == "nondegenerate_up_to_3"
    assert check_holomorphic_nondegeneracy_bounded(quartic, 3).nondegenerate
    flat = make_surface(2, 1, ["z1*zb1"], {"z1": 1, "z2": 1, "w1": 2})
    r = check_holomorphic_nondegeneracy_bounded(flat, 2)
    assert r.status == "degenerate"
    f, g = r.witness
    assert f[0].is_zero() and not f[1].is_zero()


def test_finite_type(sphere, quartic_dual):
    assert check_finite_type_linear(sphere)
    assert check_finite_type_linear(quartic_dual)
    dup = make_surface(1, 2, ["z1*zb1", "z1*zb1"], {"z1": 1, "w1": 2, "w2": 2})
    assert not check_finite_type_linear(dup)
