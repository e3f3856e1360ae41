"""Acceptance criteria, one test (or small group) per criterion.

Each criterion records a verdict line shown in the pytest terminal summary.
Run directly with ``python tests/test_acceptance.py``.
"""

import random
from fractions import Fraction

import pytest
from gmpy2 import mpq

from cralg import (
    VarTable,
    VectorFieldPoly,
    algebraize,
    algebraize_twice_equals_tensor,
    check_quadric_nondegeneracy,
    direct_sum,
    exponentiate,
    hermitian_form,
    lie_bracket,
    preset_algebra,
    s_exhaustion_report,
    s_flow_check,
    tensor_product,
    validate_algebra,
    verify_flow_tangency,
)
from cralg.autalg import field_vector, in_component, is_tangent
from cralg.linalg import nullspace, span_rank
from cralg.poly import Poly
from cralg.scalars import GaussianRational

import acceptance_log
import oracles
from test_poly import check_homomorphism

DIMS_SPHERE = {-2: 1, -1: 2, 0: 2, 1: 2, 2: 1}
DIMS_QUARTIC = {-4: 1, 0: 2, 4: 1}


def nonzero(dims):
    return {mu: d for mu, d in dims.items() if d}


def test_criterion_1_sphere(aut_sphere):
    dims, total = nonzero(aut_sphere.dims), aut_sphere.total_dim
    ok = dims == DIMS_SPHERE and total == 8
    acceptance_log.record(1, ok, f"sphere dims {dims}, total {total} (expected {DIMS_SPHERE}, 8)")
    assert ok


def test_criterion_2_quartic(aut_quartic):
    d = aut_quartic.all_dims
    gaps = [mu for mu in (-3, -2, -1, 1, 2, 3) if d[mu]]
    ok = nonzero(d) == DIMS_QUARTIC and not gaps
    acceptance_log.record(2, ok, f"quartic dims {nonzero(d)}, nonzero gap weights {gaps}")
    assert ok


def test_criterion_3_dual_sphere(aut_sphere_dual):
    c0 = aut_sphere_dual.components[0]
    ok = c0.dim == 5 and c0.s_dim == 4
    acceptance_log.record(3, ok, f"dual sphere g0 dim {c0.dim}, algebra-holomorphic {c0.s_dim} (expected 5, 4)")
    assert ok


def complement_check(q, comp, field):
    s_vecs = [field_vector(q, x, 0) for x, f in zip(comp.fields, comp.s_flags) if f]
    return (
        is_tangent(q, field)
        and in_component(q, field, 0, comp.fields)
        and span_rank(s_vecs + [field_vector(q, field, 0)]) == len(s_vecs) + 1 == comp.dim
    )


def stated_complement(q):
    return VectorFieldPoly.for_surface(q, [0, "z1_2"], [0, "2*w1_2"])


def corrected_complement(q):
    return VectorFieldPoly.for_surface(q, [0, "z1_2"], [0, "w1_2"])


def test_criterion_4_dual_quartic(quartic_dual, aut_quartic_dual):
    c0, c4 = aut_quartic_dual.components[0], aut_quartic_dual.components[4]
    structure = c0.dim == 5 and c0.s_dim == 4 and c4.dim == 2 and c4.s_dim == 2
    corrected = complement_check(quartic_dual, c0, corrected_complement(quartic_dual))
    stated = is_tangent(quartic_dual, stated_complement(quartic_dual))
    acceptance_log.record(
        4,
        structure and stated,
        f"g0 dim {c0.dim} with complement dim {c0.dim - c0.s_dim}, g4 dim {c4.dim} all algebra-holomorphic; "
        f"stated spanning field 2Re(z2 d/dz2 + 2w2 d/dw2) tangent: {stated}; "
        f"2Re(z2 d/dz2 + w2 d/dw2) spans the complement: {corrected}",
    )
    assert structure and corrected


@pytest.mark.xfail(strict=True, reason="2Re(z2 d/dz2 + 2 w2 d/dw2) leaves a nonzero residual on Im w2")
def test_criterion_4_stated_complement_field(quartic_dual, aut_quartic_dual):
    assert complement_check(quartic_dual, aut_quartic_dual.components[0], stated_complement(quartic_dual))


def test_criterion_4_stated_field_residual(quartic_dual):
    from cralg import tangency_residual
    from cralg.parse import parse_expression

    res = tangency_residual(quartic_dual, stated_complement(quartic_dual))
    t = quartic_dual.table
    assert res[0].is_zero()
    assert res[1] == parse_expression("2*z1_1^2*zb1_1*zb1_2 + 2*z1_1*z1_2*zb1_1^2", t)


def test_criterion_5_dimension_scaling(sphere, quartic):
    bad = []
    for name in ("dual", "split", "complex_as_real"):
        s = preset_algebra(name)
        for qname, q in (("sphere", sphere), ("quartic", quartic)):
            rep = s_exhaustion_report(q, s)
            bad += [(qname, name, r.weight) for r in rep.rows if r.s_dim != r.expected_s_dim]
    acceptance_log.record(5, not bad, f"s_dim = l * dim at every computed weight; mismatches {bad}")
    assert not bad


def test_criterion_6_tensor_composition(sphere, quartic):
    results = {
        (qn, a, b): algebraize_twice_equals_tensor(q, preset_algebra(a), preset_algebra(b))
        for qn, q in (("sphere", sphere), ("quartic", quartic))
        for a, b in (("dual", "split"), ("dual", "dual"))
    }
    ok = all(results.values())
    acceptance_log.record(6, ok, f"{sum(results.values())}/{len(results)} double algebraizations match the tensor algebra")
    assert ok


def test_criterion_7_raq_quadrics(sphere, suite_report):
    specs = [("reals", None), ("complex_as_real", None), ("dual", None), ("split", None),
             ("truncated_poly", 1), ("truncated_poly", 2), ("product_of", 1), ("product_of", 2)]
    bad = [n for n, p in specs
           if not check_quadric_nondegeneracy(hermitian_form(algebraize(sphere, preset_algebra(n, p)))).nondegenerate]
    text = suite_report.render().lower()
    absent = "isomorph" not in text and "equivalen" not in text
    ok = not bad and absent
    acceptance_log.record(7, ok, f"nondegenerate over all presets of dim <= 2 (failures {bad}); "
                                 f"no isomorphism claims in the report: {absent}")
    assert ok


def g4_flow(quartic, aut_quartic, order=6):
    (x,) = aut_quartic.components[4].fields
    t = quartic.table
    gamma = x.g[0].coefficient(tuple(2 if v == "w1" else 0 for v in t.names))
    return exponentiate(x, order), Fraction(int(gamma.re.numerator), int(gamma.re.denominator))


def q_(fr):
    return GaussianRational(f"{fr.numerator}/{fr.denominator}", 0)


def first_w_mismatch(quartic, flow, c):
    """First t-power where the flow's w-component leaves w(1 - c t w)^(-1/2)."""
    t = quartic.table
    w = Poly.var(t, "w1")
    half = oracles.binomial_series(Fraction(-1, 2), flow.order)
    for m in range(flow.order + 1):
        if flow.coefficient("w1", m) != w ** (m + 1) * q_(half[m] * (-c) ** m):
            return m
    return None


def stated_w_series_matches(quartic, flow, c):
    return first_w_mismatch(quartic, flow, c) is None


def test_criterion_8_flows(quartic, aut_quartic, quartic_dual, aut_quartic_dual,
                           sphere, aut_sphere, sphere_dual, aut_sphere_dual):
    tangent = all(
        verify_flow_tangency(q, exponentiate(x, 6))
        for q, b in ((sphere, aut_sphere), (quartic, aut_quartic), (sphere_dual, aut_sphere_dual),
                     (quartic_dual, aut_quartic_dual))
        for _, x in b.fields()
    )
    flow, gamma = g4_flow(quartic, aut_quartic)
    t = quartic.table
    z, w = Poly.var(t, "z1"), Poly.var(t, "w1")
    half = oracles.binomial_series(Fraction(-1, 2), 6)
    closed = all(
        flow.coefficient("w1", m) == w ** (m + 1) * q_(gamma**m)
        and flow.coefficient("z1", m) == z * w**m * q_(half[m] * (-gamma) ** m)
        for m in range(7)
    )
    stated = stated_w_series_matches(quartic, flow, 2 * gamma)
    dual = preset_algebra("dual")
    c0 = aut_quartic_dual.components[0]
    regroup = all(bool(s_flow_check(quartic_dual, dual, exponentiate(x, 6))) == f for x, f in zip(c0.fields, c0.s_flags))
    distinguishes = not s_flow_check(quartic_dual, dual, exponentiate(corrected_complement(quartic_dual), 6))
    acceptance_log.record(
        8,
        tangent and stated and regroup and distinguishes,
        f"all basis flows tangent through t^6: {tangent}; weight-4 flow equals "
        f"(z(1-ctw)^(-1/2), w/(1-ctw)): {closed}; w-component equals w(1-ctw)^(-1/2): {stated}; "
        f"regrouping separates the non-algebra field: {regroup and distinguishes}",
    )
    assert tangent and closed and regroup and distinguishes


def test_criterion_8_stated_series_first_differs_at_t2(quartic, aut_quartic):
    flow, gamma = g4_flow(quartic, aut_quartic)
    assert first_w_mismatch(quartic, flow, 2 * gamma) == 2


@pytest.mark.xfail(strict=True, reason="the weight-4 w-component is w/(1 - ctw); the series differ at t^2")
def test_criterion_8_stated_w_series(quartic, aut_quartic):
    # c = 2 gamma matches the t^1 terms; no other c can
    flow, gamma = g4_flow(quartic, aut_quartic)
    assert stated_w_series_matches(quartic, flow, 2 * gamma)


def test_criterion_9_properties(aut_sphere, aut_quartic, aut_sphere_dual, aut_quartic_dual):
    rng = random.Random(2024)
    failures = []
    names = [("reals", None), ("complex_as_real", None), ("dual", None), ("split", None),
             ("truncated_poly", 2), ("truncated_poly", 3), ("product_of", 2), ("product_of", 3)]
    presets = [preset_algebra(n, p) for n, p in names]
    for a in presets:
        if not oracles.brute_force_axioms(a.structure_constants, a.dim):
            failures.append(("axioms", a.name))
    small = [a for a in presets if a.dim <= 2]
    for _ in range(10):
        a, b = rng.choice(small), rng.choice(small)
        for c in (direct_sum(a, b), tensor_product(a, b)):
            validate_algebra(c.structure_constants, c.dim)
            if not oracles.brute_force_axioms(c.structure_constants, c.dim):
                failures.append(("axioms", c.name))

    for basis in (aut_sphere, aut_quartic, aut_sphere_dual, aut_quartic_dual):
        q, comps = basis.surface, basis.components
        for a in comps:
            for b in comps:
                target = a + b
                if a > b or not comps[a].fields or not comps[b].fields:
                    continue
                for x in comps[a].fields:
                    for y in comps[b].fields:
                        z = lie_bracket(x, y)
                        if basis.floor <= target <= basis.cap:
                            good = in_component(q, z, target, comps[target].fields)
                        else:
                            good = z.is_zero() if target < basis.floor else is_tangent(q, z)
                        if not good:
                            failures.append(("bracket", a, b))

    table = VarTable(["Z", "W"], ["U"], {})
    hom = 0
    for i in range(200):
        s = presets[1 + i % (len(presets) - 1)]
        try:
            check_homomorphism(rng, s, table)
            hom += 1
        except AssertionError:
            failures.append(("scalar_expand", s.name))

    for i in range(100):
        r, c = rng.randint(1, 8), rng.randint(1, 8)
        m = oracles.random_rational_matrix(rng, r, c, rng.randint(0, min(r, c)))
        rows = [{j: mpq(x.numerator, x.denominator) for j, x in enumerate(row) if x} for row in m]
        if len(nullspace(rows, c)) != c - oracles.bareiss_rank(m):
            failures.append(("nullspace", i))

    acceptance_log.record(9, not failures, f"axioms, bracket closure, {hom}/200 scalar_expand homomorphisms, "
                                           f"100 nullspace ranks; failures {failures[:5]}")
    assert not failures


def test_suite_report(suite_report):
    assert suite_report.passed
    ids = {d["id"] for d in suite_report.discrepancies}
    assert ids == {"4.complement-stated", "8.g4-stated"}


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
