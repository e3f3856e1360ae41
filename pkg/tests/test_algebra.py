import itertools
import random

import pytest
from gmpy2 import mpq

from cralg import direct_sum, make_algebra, preset_algebra, tensor_product, validate_algebra
from cralg.algebra import (
    conjugate,
    from_parts,
    im_part,
    invert,
    is_invertible,
    is_nilpotent,
    multiply,
    nilpotency_index,
    operator_norm_bound,
    re_part,
    regular_representation,
)
from cralg.errors import AlgebraMismatch, AxiomViolation, InvalidParam, NotInvertible, UnknownPreset
from cralg.scalars import GaussianRational

from oracles import brute_force_axioms

PRESETS = [
    ("reals", None),
    ("complex_as_real", None),
    ("dual", None),
    ("split", None),
    ("truncated_poly", 1),
    ("truncated_poly", 3),
    ("product_of", 1),
    ("product_of", 3),
]


@pytest.mark.parametrize("name,param", PRESETS)
def test_presets_satisfy_axioms(name, param):
    a = preset_algebra(name, param)
    validate_algebra(a.structure_constants, a.dim)
    assert brute_force_axioms(a.structure_constants, a.dim)


def test_random_sums_and_tensors_satisfy_axioms():
    rng = random.Random(7)
    small = [preset_algebra(n, p) for n, p in PRESETS if preset_algebra(n, p).dim <= 2]
    for _ in range(12):
        a, b = rng.choice(small), rng.choice(small)
        for c in (direct_sum(a, b), tensor_product(a, b)):
            assert brute_force_axioms(c.structure_constants, c.dim)
    assert tensor_product(preset_algebra("dual"), preset_algebra("split")).dim == 4


def test_commutativity_violation_reports_witness():
    c = [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]
    c[1][0] = [0, 0]
    with pytest.raises(AxiomViolation) as info:
        make_algebra(2, ["1", "x"], c)
    assert info.value.kind == "commutativity"


def test_associativity_violation():
    # e1 e1 = e2, e1 e2 = e1, e2 e2 = 0: (e1 e1) e2 = 0 but e1 (e1 e2) = e2
    c = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    for j in range(3):
        c[0][j][j] = c[j][0][j] = 1
    c[1][1][2] = 1
    c[1][2][1] = c[2][1][1] = 1
    with pytest.raises(AxiomViolation) as info:
        make_algebra(3, ["1", "x", "y"], c)
    assert info.value.kind == "associativity"


def test_unit_violation():
    with pytest.raises(AxiomViolation) as info:
        make_algebra(1, ["1"], [[[2]]])
    assert info.value.kind == "unit"


def test_bad_inputs():
    with pytest.raises(UnknownPreset):
        preset_algebra("octonions")
    with pytest.raises(InvalidParam):
        preset_algebra("truncated_poly", 0)
    with pytest.raises(InvalidParam):
        make_algebra(2, ["1", "1"], [[[1, 0], [0, 1]], [[0, 1], [0, 0]]])


def test_complex_as_real_multiplication():
    a = preset_algebra("complex_as_real")
    j = a.basis_element(1)
    assert j * j == a.unit() * -1


def test_dual_inverse_and_nilpotent():
    a = preset_algebra("dual")
    x = a.celement([2, 3])
    y = invert(x)
    assert multiply(x, y) == a.unit()
    assert y == a.celement([mpq(1, 2), mpq(-3, 4)])
    n = a.basis_element(1)
    assert not is_invertible(n)
    assert nilpotency_index(n) == 2
    assert is_nilpotent(n) and not is_nilpotent(x)
    with pytest.raises(NotInvertible):
        invert(n)


def test_truncated_poly_nilpotency():
    a = preset_algebra("truncated_poly", 3)
    assert nilpotency_index(a.basis_element(1)) == 3


def test_split_idempotents():
    a = preset_algebra("split")
    e = a.basis_element(1)
    assert e * e == e
    f = a.unit() - e
    assert (e * f).is_zero()


def test_regular_representation_is_a_homomorphism():
    a = preset_algebra("truncated_poly", 3)
    x, y = a.element([1, 2, -1]), a.element([0, mpq(1, 2), 3])
    mx, my, mxy = regular_representation(x), regular_representation(y), regular_representation(x * y)
    prod = [[sum(mx[i][k] * my[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    assert prod == mxy


def test_operator_norm_is_submultiplicative():
    rng = random.Random(2)
    for name, p in PRESETS:
        a = preset_algebra(name, p)
        for _ in range(5):
            x = a.element([mpq(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(a.dim)])
            y = a.element([mpq(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(a.dim)])
            assert operator_norm_bound(x * y) <= operator_norm_bound(x) * operator_norm_bound(y)


def test_complexified_parts_and_conjugation():
    a = preset_algebra("dual")
    z = a.celement([GaussianRational(1, 2), GaussianRational(-3, 1)])
    assert from_parts(re_part(z), im_part(z)) == z
    assert conjugate(conjugate(z)) == z
    assert conjugate(z).coeffs[0] == GaussianRational(1, -2)


def test_mixing_algebras_is_rejected():
    with pytest.raises(AlgebraMismatch):
        preset_algebra("dual").unit() + preset_algebra("split").unit()


def test_direct_sum_is_split_for_reals():
    r = preset_algebra("reals")
    assert direct_sum(r, r) == preset_algebra("split")
    assert direct_sum(r, r).dim == 2
