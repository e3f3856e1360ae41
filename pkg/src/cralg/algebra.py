"""Finite-dimensional commutative associative unital real algebras.

An algebra is fixed by its structure constants ``c[i][j][k]`` in a basis whose
first element is the unit: ``e_i * e_j = sum_k c[i][j][k] e_k``. Elements of
the algebra carry rational coordinates; elements of its complexification carry
Gaussian-rational coordinates and conjugation acts on those coordinates only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from gmpy2 import mpq

from .errors import AlgebraMismatch, AxiomViolation, InvalidParam, NotInvertible, UnknownPreset
from .linalg import dense_det, dense_solve
from .scalars import G_ONE, G_ZERO, GaussianRational, gauss, to_q


@dataclass(frozen=True, eq=False)
class AlgebraSpec:
    dim: int
    basis_labels: tuple
    structure_constants: tuple
    name: str = ""
    # sparse product table: table[i][j] = ((k, c), ...)
    _table: tuple = field(default=(), repr=False, compare=False)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, AlgebraSpec):
            return NotImplemented
        return self.dim == other.dim and self.structure_constants == other.structure_constants

    def __hash__(self):
        return hash((self.dim, self.structure_constants))

    def product_terms(self, i: int, j: int):
        return self._table[i][j]

    def element(self, coeffs) -> "AlgebraElement":
        return AlgebraElement(self, tuple(to_q(c) for c in coeffs))

    def celement(self, coeffs) -> "ComplexAlgebraElement":
        return ComplexAlgebraElement(self, tuple(gauss(c) for c in coeffs))

    def basis_element(self, i: int) -> "ComplexAlgebraElement":
        return self.celement([1 if j == i else 0 for j in range(self.dim)])

    def unit(self) -> "ComplexAlgebraElement":
        return self.basis_element(0)

    def zero(self) -> "ComplexAlgebraElement":
        return self.celement([0] * self.dim)

    def __repr__(self):
        return f"AlgebraSpec(name={self.name!r}, dim={self.dim}, basis={list(self.basis_labels)})"


def validate_algebra(c, dim: int) -> None:
    """Exhaustive commutativity, unit and associativity loops; raises ``AxiomViolation``."""
    r = range(dim)
    for i, j, k in product(r, r, r):
        if c[i][j][k] != c[j][i][k]:
            raise AxiomViolation("commutativity", (i, j, k))
    for j, k in product(r, r):
        if c[0][j][k] != (1 if j == k else 0):
            raise AxiomViolation("unit", (0, j, k))
    for i, j, p, k in product(r, r, r, r):
        lhs = sum((c[i][j][m] * c[m][p][k] for m in r), mpq(0))
        rhs = sum((c[j][p][m] * c[i][m][k] for m in r), mpq(0))
        if lhs != rhs:
            raise AxiomViolation("associativity", (i, j, p, k))


def make_algebra(dim, basis_labels, structure_constants, name="") -> AlgebraSpec:
    if dim < 1:
        raise InvalidParam("algebra dimension must be at least 1")
    labels = tuple(str(s) for s in basis_labels)
    if len(labels) != dim or len(set(labels)) != dim:
        raise InvalidParam("need exactly dim distinct basis labels")
    try:
        c = tuple(
            tuple(tuple(to_q(structure_constants[i][j][k]) for k in range(dim)) for j in range(dim))
            for i in range(dim)
        )
    except (IndexError, TypeError) as exc:
        raise InvalidParam(f"structure constants must be a {dim}x{dim}x{dim} array") from exc
    for i in range(dim):
        if len(structure_constants[i]) != dim or any(
            len(structure_constants[i][j]) != dim for j in range(dim)
        ):
            raise InvalidParam(f"structure constants must be a {dim}x{dim}x{dim} array")
    validate_algebra(c, dim)
    table = tuple(
        tuple(tuple((k, c[i][j][k]) for k in range(dim) if c[i][j][k]) for j in range(dim))
        for i in range(dim)
    )
    return AlgebraSpec(dim, labels, c, name, table)


def _zeros(dim):
    return [[[0] * dim for _ in range(dim)] for _ in range(dim)]


def _with_unit(dim):
    c = _zeros(dim)
    for j in range(dim):
        c[0][j][j] = 1
        c[j][0][j] = 1
    return c


def preset_algebra(name: str, param=None) -> AlgebraSpec:
    """Named algebras: ``reals``, ``complex_as_real``, ``dual``, ``split``,
    ``truncated_poly`` (param m: R[t]/(t^m)) and ``product_of`` (param m: R^m)."""
    if name == "reals":
        return make_algebra(1, ["1"], [[[1]]], name="reals")
    if name == "complex_as_real":
        c = _with_unit(2)
        c[1][1][0] = -1
        return make_algebra(2, ["1", "j"], c, name="complex_as_real")
    if name == "dual":
        return make_algebra(2, ["1", "n"], _with_unit(2), name="dual")
    if name == "split":
        return _renamed(direct_sum(preset_algebra("reals"), preset_algebra("reals")), "split")
    if name == "truncated_poly":
        m = _int_param(param)
        c = _zeros(m)
        for i in range(m):
            for j in range(m):
                if i + j < m:
                    c[i][j][i + j] = 1
        labels = ["1"] + ["t" if i == 1 else f"t{i}" for i in range(1, m)]
        return make_algebra(m, labels, c, name=f"truncated_poly({m})")
    if name == "product_of":
        m = _int_param(param)
        out = preset_algebra("reals")
        for _ in range(m - 1):
            out = direct_sum(out, preset_algebra("reals"))
        return _renamed(out, f"product_of({m})")
    raise UnknownPreset(f"unknown algebra preset {name!r}")


def _int_param(param) -> int:
    if param is None or int(param) != param or int(param) < 1:
        raise InvalidParam(f"preset parameter must be an integer >= 1, got {param!r}")
    return int(param)


def _renamed(a: AlgebraSpec, name: str) -> AlgebraSpec:
    return AlgebraSpec(a.dim, a.basis_labels, a.structure_constants, name, a._table)


def direct_sum_coordinates(a: AlgebraSpec, b: AlgebraSpec):
    """Matrix ``P`` (rows: concatenated a-then-b coordinates, columns: basis of
    ``direct_sum(a, b)``) expressing each direct-sum basis vector in the pair
    coordinates. The basis is ``[unit, (1_a, 0), a's non-units, b's non-units]``."""
    la, lb = a.dim, b.dim
    n = la + lb
    cols = []
    unit = [0] * n
    unit[0] = 1
    unit[la] = 1
    cols.append(unit)
    ea = [0] * n
    ea[0] = 1
    cols.append(ea)
    for i in range(1, la):
        v = [0] * n
        v[i] = 1
        cols.append(v)
    for j in range(1, lb):
        v = [0] * n
        v[la + j] = 1
        cols.append(v)
    return [[mpq(cols[c][r]) for c in range(n)] for r in range(n)]


def direct_sum(a: AlgebraSpec, b: AlgebraSpec) -> AlgebraSpec:
    la, lb = a.dim, b.dim
    n = la + lb
    P = direct_sum_coordinates(a, b)
    basis_pairs = [[P[r][c] for r in range(n)] for c in range(n)]

    def pair_mul(x, y):
        out = [mpq(0)] * n
        for i in range(la):
            for j in range(la):
                if x[i] and y[j]:
                    for k, v in a.product_terms(i, j):
                        out[k] += x[i] * y[j] * v
        for i in range(lb):
            for j in range(lb):
                if x[la + i] and y[la + j]:
                    for k, v in b.product_terms(i, j):
                        out[la + k] += x[la + i] * y[la + j] * v
        return out

    c = _zeros(n)
    for i in range(n):
        for j in range(n):
            coords = dense_solve(P, pair_mul(basis_pairs[i], basis_pairs[j]))
            for k in range(n):
                c[i][j][k] = coords[k]
    labels = (
        ["1", "a_1"]
        + [f"a_{s}" for s in a.basis_labels[1:]]
        + [f"b_{s}" for s in b.basis_labels[1:]]
    )
    name = f"({a.name or 'A'})+({b.name or 'B'})"
    return make_algebra(n, labels, c, name=name)


def tensor_product(a: AlgebraSpec, b: AlgebraSpec) -> AlgebraSpec:
    """Basis ``e_i (x) f_j`` at index ``i * b.dim + j``; index 0 is the unit."""
    la, lb = a.dim, b.dim
    n = la * lb
    c = _zeros(n)
    for i1, j1, i2, j2 in product(range(la), range(lb), range(la), range(lb)):
        for k1, v1 in a.product_terms(i1, i2):
            for k2, v2 in b.product_terms(j1, j2):
                c[i1 * lb + j1][i2 * lb + j2][k1 * lb + k2] = v1 * v2
    labels = []
    for i in range(la):
        for j in range(lb):
            sa, sb = a.basis_labels[i], b.basis_labels[j]
            if i == 0 and j == 0:
                labels.append("1")
            elif i == 0:
                labels.append(f"1*{sb}")
            elif j == 0:
                labels.append(f"{sa}*1")
            else:
                labels.append(f"{sa}*{sb}")
    name = f"({a.name or 'A'})x({b.name or 'B'})"
    return make_algebra(n, labels, c, name=name)


# ---------------------------------------------------------------- elements


def _check_same(x, y):
    if x.algebra is not y.algebra and x.algebra != y.algebra:
        raise AlgebraMismatch("elements belong to different algebras")


def _mul_coeffs(alg: AlgebraSpec, xs, ys, zero):
    out = [zero] * alg.dim
    for i, a in enumerate(xs):
        if not a:
            continue
        for j, b in enumerate(ys):
            if not b:
                continue
            ab = a * b
            for k, v in alg.product_terms(i, j):
                out[k] = out[k] + ab * v
    return tuple(out)


@dataclass(frozen=True)
class AlgebraElement:
    algebra: AlgebraSpec
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.algebra.dim:
            raise InvalidParam("coefficient vector length must equal the algebra dimension")

    def __add__(self, other):
        _check_same(self, other)
        return AlgebraElement(self.algebra, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        _check_same(self, other)
        return AlgebraElement(self.algebra, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            _check_same(self, other)
            return AlgebraElement(self.algebra, _mul_coeffs(self.algebra, self.coeffs, other.coeffs, mpq(0)))
        q = to_q(other)
        return AlgebraElement(self.algebra, tuple(a * q for a in self.coeffs))

    def complexify(self) -> "ComplexAlgebraElement":
        return ComplexAlgebraElement(self.algebra, tuple(GaussianRational(a, 0) for a in self.coeffs))


@dataclass(frozen=True)
class ComplexAlgebraElement:
    algebra: AlgebraSpec
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.algebra.dim:
            raise InvalidParam("coefficient vector length must equal the algebra dimension")

    def __add__(self, other):
        _check_same(self, other)
        return ComplexAlgebraElement(self.algebra, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        _check_same(self, other)
        return ComplexAlgebraElement(self.algebra, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return ComplexAlgebraElement(self.algebra, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, ComplexAlgebraElement):
            return multiply(self, other)
        g = gauss(other)
        return ComplexAlgebraElement(self.algebra, tuple(a * g for a in self.coeffs))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.algebra.unit()
        for _ in range(k):
            out = multiply(out, self)
        return out

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def multiply(x: ComplexAlgebraElement, y: ComplexAlgebraElement) -> ComplexAlgebraElement:
    _check_same(x, y)
    return ComplexAlgebraElement(x.algebra, _mul_coeffs(x.algebra, x.coeffs, y.coeffs, G_ZERO))


def regular_representation(x):
    """Matrix ``M`` with ``M[k][j]`` = coefficient of ``e_k`` in ``x * e_j``."""
    alg = x.algebra
    zero = G_ZERO if isinstance(x, ComplexAlgebraElement) else mpq(0)
    M = [[zero] * alg.dim for _ in range(alg.dim)]
    for i, a in enumerate(x.coeffs):
        if not a:
            continue
        for j in range(alg.dim):
            for k, v in alg.product_terms(i, j):
                M[k][j] = M[k][j] + a * v
    return M


def _as_complex(x):
    return x.complexify() if isinstance(x, AlgebraElement) else x


def is_invertible(x) -> bool:
    x = _as_complex(x)
    return bool(dense_det(regular_representation(x)))


def invert(x) -> ComplexAlgebraElement:
    x = _as_complex(x)
    alg = x.algebra
    rhs = [G_ONE] + [G_ZERO] * (alg.dim - 1)
    y = dense_solve(regular_representation(x), rhs)
    if y is None:
        raise NotInvertible("element has a singular regular representation")
    return ComplexAlgebraElement(alg, tuple(y))


def nilpotency_index(x):
    """Smallest ``m`` with ``x**m == 0`` (``m <= dim``), or ``None``."""
    x = _as_complex(x)
    p = x
    for m in range(1, x.algebra.dim + 1):
        if p.is_zero():
            return m
        p = multiply(p, x)
    return None


def is_nilpotent(x) -> bool:
    return nilpotency_index(x) is not None


def operator_norm_bound(x: AlgebraElement) -> mpq:
    """Max-row-sum norm of the regular representation; submultiplicative."""
    M = regular_representation(x)
    return max(sum((abs(v) for v in row), mpq(0)) for row in M)


def conjugate(x: ComplexAlgebraElement) -> ComplexAlgebraElement:
    return ComplexAlgebraElement(x.algebra, tuple(a.conjugate() for a in x.coeffs))


def re_part(x: ComplexAlgebraElement) -> AlgebraElement:
    return AlgebraElement(x.algebra, tuple(a.re for a in x.coeffs))


def im_part(x: ComplexAlgebraElement) -> AlgebraElement:
    return AlgebraElement(x.algebra, tuple(a.im for a in x.coeffs))


def from_parts(re: AlgebraElement, im: AlgebraElement) -> ComplexAlgebraElement:
    _check_same(re, im)
    return ComplexAlgebraElement(re.algebra, tuple(GaussianRational(a, b) for a, b in zip(re.coeffs, im.coeffs)))


def structure_matches(a: AlgebraSpec, b: AlgebraSpec) -> bool:
    """Same structure constants in the stored bases (labels ignored)."""
    return a.dim == b.dim and a.structure_constants == b.structure_constants
