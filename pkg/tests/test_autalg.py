import pytest
from gmpy2 import mpq

from cralg import (
    VectorFieldPoly,
    build_tangency_system,
    compute_aut,
    lie_bracket,
    make_surface,
    preset_algebra,
    s_exhaustion_report,
    s_holomorphic_component,
    solve_nullspace,
    tangency_residual,
    verify_statement13_shape,
)
from cralg.autalg import TangencySystem, default_cap, in_component, is_tangent, weight_floor
from cralg.errors import DegenerateSurface, InvariantViolation, NotAnAlgebraization

import oracles

# Slow for the sampled oracle (about 3 minutes together); recomputed once and frozen.
FROZEN_DUAL_QUARTIC = {4: 2, 5: 0}


def test_tangency_residual_examples(sphere, quartic):
    assert all(r.is_zero() for r in tangency_residual(sphere, VectorFieldPoly.for_surface(sphere, [0], ["3/2"])))
    # g0 of the quartic: beta z d/dz + 4 Re(beta) w d/dw, beta = 2 + i
    x = VectorFieldPoly.for_surface(quartic, ["(2+i)*z1"], ["8*w1"])
    assert is_tangent(quartic, x)
    bad = VectorFieldPoly.for_surface(sphere, [0], ["z1"])
    assert not all(r.is_zero() for r in tangency_residual(sphere, bad))


def test_field_rendering(sphere):
    x = VectorFieldPoly.for_surface(sphere, ["2*i*z1"], ["1"])
    assert str(x) == "2Re(2*i*z1*d/dz1 + d/dw1)"
    y = VectorFieldPoly.for_surface(sphere, ["z1 + w1"], [0])
    assert str(y) == "2Re((z1 + w1)*d/dz1)"


@pytest.mark.parametrize("mu,dim", [(-2, 1), (1, 2)])
def test_sphere_systems(sphere, mu, dim):
    assert len(solve_nullspace(build_tangency_system(sphere, mu))) == dim


@pytest.mark.parametrize("mu", [1, 2, 3])
def test_quartic_gaps(quartic, mu):
    assert solve_nullspace(build_tangency_system(quartic, mu)) == []


def test_solve_nullspace_trivial_systems():
    zero = TangencySystem(0, [], [], [], 3)
    basis = solve_nullspace(zero)
    assert basis == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    ident = TangencySystem(0, [], [], [{i: mpq(1)} for i in range(3)], 3)
    assert solve_nullspace(ident) == []
    assert solve_nullspace(ident, certify_empty=False) == []


def test_caps(sphere, quartic, quartic_dual):
    assert weight_floor(sphere) == -2 and default_cap(sphere)[0] == 4
    assert default_cap(quartic) == (12, "bidegree (2,2)")
    assert default_cap(quartic_dual)[0] == 20


def oracle_dims(phi, dphi, n, k, zw, ww, weights):
    return {mu: oracles.sampled_aut_dim(phi, dphi, n, k, zw, ww, mu) for mu in weights}


def test_sphere_against_oracle(aut_sphere):
    ref = oracle_dims(oracles.sphere_phi, oracles.sphere_dphi, 1, 1, [1], [2], range(-2, 5))
    assert aut_sphere.all_dims == ref
    assert aut_sphere.total_dim == 8


def test_quartic_against_oracle(aut_quartic):
    ref = oracle_dims(oracles.quartic_phi, oracles.quartic_dphi, 1, 1, [1], [4], range(-4, 9))
    got = aut_quartic.all_dims
    assert {mu: got[mu] for mu in ref} == ref
    assert all(got[mu] == 0 for mu in range(9, 13))


def test_dual_quartic_against_oracle(aut_quartic_dual):
    ref = oracle_dims(oracles.dual_quartic_phi, oracles.dual_quartic_dphi, 2, 2, [1, 1], [4, 4], (-4, -1, 0, 1))
    ref.update(FROZEN_DUAL_QUARTIC)
    got = aut_quartic_dual.all_dims
    assert {mu: got[mu] for mu in ref} == ref
    assert aut_quartic_dual.dims == {-4: 2, 0: 5, 4: 2}


def test_dual_sphere(aut_sphere_dual):
    assert aut_sphere_dual.dims == {-2: 2, -1: 4, 0: 5, 1: 4, 2: 2}
    assert {mu: d for mu, d in aut_sphere_dual.s_dims.items() if d} == {-2: 2, -1: 4, 0: 4, 1: 4, 2: 2}


@pytest.fixture(params=["aut_sphere", "aut_quartic", "aut_sphere_dual", "aut_quartic_dual"])
def graded(request):
    return request.getfixturevalue(request.param)


def test_basis_fields_are_tangent_and_weighted(graded):
    for mu, x in graded.fields():
        assert is_tangent(graded.surface, x)
        assert x.weight() == mu


def test_bracket_closure(graded):
    q = graded.surface
    comps = graded.components
    for a in comps:
        for b in comps:
            if a > b:
                continue
            target = a + b
            for x in comps[a].fields:
                for y in comps[b].fields:
                    z = lie_bracket(x, y)
                    if target > graded.cap:
                        assert is_tangent(q, z)
                    elif target < graded.floor:
                        assert z.is_zero()
                    else:
                        assert in_component(q, z, target, comps[target].fields)


def test_bracket_is_antisymmetric(aut_sphere):
    x = aut_sphere.components[-1].fields[0]
    y = aut_sphere.components[1].fields[1]
    assert lie_bracket(x, y) == lie_bracket(y, x) * -1


def test_s_part_requires_algebraization(sphere, sphere_dual):
    with pytest.raises(NotAnAlgebraization):
        s_holomorphic_component(sphere, preset_algebra("dual"), 0)
    with pytest.raises(NotAnAlgebraization):
        s_holomorphic_component(sphere_dual, preset_algebra("split"), 0)


def test_s_component_dims(quartic_dual):
    dual = preset_algebra("dual")
    assert len(s_holomorphic_component(quartic_dual, dual, 0)) == 4
    assert len(s_holomorphic_component(quartic_dual, dual, 4)) == 2


def test_exhaustion_reports(sphere, quartic):
    dual = preset_algebra("dual")
    rq = s_exhaustion_report(quartic, dual)
    assert rq.row(-4).exhausted and rq.row(4).exhausted
    assert not rq.row(0).exhausted and rq.row(0).full_dim == 5
    rs = s_exhaustion_report(sphere, dual)
    assert not rs.row(0).exhausted
    assert s_exhaustion_report(quartic, preset_algebra("reals")).exhausted
    assert "not claimed to vanish" in rq.cap_disclosure


def test_shape_of_bidegree_22_fields(quartic, aut_quartic, quartic_dual, aut_quartic_dual):
    assert verify_statement13_shape(quartic, aut_quartic)
    assert verify_statement13_shape(quartic_dual, aut_quartic_dual)
    odd = VectorFieldPoly.for_surface(quartic, ["z1^2"], [0])
    r = verify_statement13_shape(quartic, [odd])
    assert not r and r.counterexample is odd


def test_degenerate_surface_refused():
    dup = make_surface(1, 2, ["z1*zb1", "z1*zb1"], {"z1": 1, "w1": 2, "w2": 2})
    with pytest.raises(DegenerateSurface):
        compute_aut(dup)


def test_user_cap_is_disclosed(sphere):
    b = compute_aut(sphere, 0)
    assert b.cap == 0 and b.cap_source == "user"
    assert b.dims == {-2: 1, -1: 2, 0: 2}
