"""Graded automorphism algebras of model surfaces.

A field ``2 Re(f d/dz + g d/dw)`` is tangent to ``Im w = phi(z, zb, u)`` when

    E_j = Im g_j - 2 Re(sum_a dphi_j/dz_a f_a) - sum_b dphi_j/du_b Re g_b

vanishes identically after ``w = u + i phi``. Writing ``E_j = 2 Re P_j`` with

    P_j = g_j / (2i) - sum_a dphi_j/dz_a f_a - sum_b dphi_j/du_b g_b / 2

the condition on a coefficient map of ``P_j`` is ``P[e] + conj(P[conj e]) = 0``
for every monomial ``e``; those are the rows of the linear systems below.
Complex unknowns are split into real and imaginary parts so everything is
solved over the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from .algebra import AlgebraSpec
from .errors import DegenerateSurface, InvariantViolation, NotAnAlgebraization, VariableMismatch
from .linalg import in_span, nullspace, rank_mod_p, span_rank
from .poly import AlgebraPoly, Poly, VarTable, render_poly, scalar_expand
from .scalars import G_ONE, G_ZERO, I, GaussianRational
from .surface import (
    ModelSurface,
    algebraize,
    check_finite_type_linear,
    is_bidegree_22,
    on_surface,
)

_HALF_OVER_I = G_ONE / (2 * I)
_MINUS_HALF = GaussianRational("-1/2", 0)


class VectorFieldPoly:
    """The real field ``2 Re(sum f_a d/dz_a + sum g_b d/dw_b)``."""

    __slots__ = ("table", "z", "w", "f", "g")

    def __init__(self, table: VarTable, z, w, f, g):
        self.table = table
        self.z = tuple(z)
        self.w = tuple(w)
        self.f = tuple(f)
        self.g = tuple(g)
        if len(self.f) != len(self.z) or len(self.g) != len(self.w):
            raise VariableMismatch("coefficient count does not match the variables")
        hol = set(self.z) | set(self.w)
        for p in self.f + self.g:
            if p.table != table:
                raise VariableMismatch("coefficient over a different variable table")
            if not p.variables() <= hol:
                raise VariableMismatch(f"coefficients must be holomorphic in {sorted(hol)}")

    @classmethod
    def for_surface(cls, q: ModelSurface, f=None, g=None):
        t = q.table
        f = [_as_poly(t, x) for x in (f or [0] * q.n)]
        g = [_as_poly(t, x) for x in (g or [0] * q.k)]
        return cls(t, q.z, q.w, f, g)

    @classmethod
    def zero_like(cls, x: "VectorFieldPoly"):
        zero = Poly._raw(x.table, {})
        return cls(x.table, x.z, x.w, [zero] * len(x.z), [zero] * len(x.w))

    def components(self):
        return self.f + self.g

    def variables(self):
        return self.z + self.w

    def _check(self, other):
        if self.table != other.table or self.z != other.z or self.w != other.w:
            raise VariableMismatch("fields live on different variables")

    def __add__(self, other):
        self._check(other)
        return VectorFieldPoly(
            self.table,
            self.z,
            self.w,
            [a + b for a, b in zip(self.f, other.f)],
            [a + b for a, b in zip(self.g, other.g)],
        )

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, c):
        return VectorFieldPoly(self.table, self.z, self.w, [a * c for a in self.f], [a * c for a in self.g])

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, VectorFieldPoly)
            and self.table == other.table
            and self.z == other.z
            and self.w == other.w
            and self.f == other.f
            and self.g == other.g
        )

    def __hash__(self):
        return hash((self.f, self.g))

    def is_zero(self) -> bool:
        return not any(p.terms for p in self.components())

    def apply(self, h: Poly) -> Poly:
        """The (1,0) part acting on a polynomial: ``sum f_a dh/dz_a + sum g_b dh/dw_b``."""
        out = Poly._raw(self.table, {})
        for coef, var in zip(self.components(), self.variables()):
            if coef.terms:
                d = h.derivative(var)
                if d.terms:
                    out = out + coef * d
        return out

    def weight(self):
        """Common weight ``[f_a] - [z_a] = [g_b] - [w_b]``, or ``None`` if mixed or zero."""
        mw = self.table.monomial_weight
        ws = set()
        for coef, var in zip(self.components(), self.variables()):
            vw = self.table.weights[var]
            ws.update(mw(e) - vw for e in coef.terms)
        return ws.pop() if len(ws) == 1 else None

    def __str__(self):
        parts = []
        for coef, var in zip(self.components(), self.variables()):
            if not coef.terms:
                continue
            body = render_poly(coef)
            if len(coef.terms) > 1:
                body = f"({body})*"
            elif body in ("1", "-1"):
                body = body[:-1]
            else:
                body += "*"
            parts.append(f"{body}d/d{var}")
        if not parts:
            return "0"
        s = parts[0]
        for p in parts[1:]:
            s += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return f"2Re({s})"

    __repr__ = __str__


def _as_poly(t, x):
    if isinstance(x, Poly):
        return x
    if isinstance(x, str):
        from .parse import parse_expression

        return parse_expression(x, t)
    return Poly.const(t, x)


def _check_field(q: ModelSurface, x: VectorFieldPoly):
    if x.table != q.table or x.z != q.z or x.w != q.w:
        raise VariableMismatch("field and surface use different variables")


# ---------------------------------------------------------------- tangency


class _TangencyKit:
    """Per-surface derivative cache used to build ``P_j`` quickly."""

    def __init__(self, q: ModelSurface):
        self.q = q
        self.S = on_surface(q)
        self.dz = [[p.derivative(v) for p in q.phi] for v in q.z]
        self.du = [[p.derivative(v) for p in q.phi] for v in q.u]

    def p_of(self, x: VectorFieldPoly):
        """``(P_1, ..., P_k)`` for the field ``x``."""
        q = self.q
        out = [Poly._raw(q.table, {}) for _ in range(q.k)]
        for a, fa in enumerate(x.f):
            if fa.terms:
                s = self.S.restrict(fa)
                for j in range(q.k):
                    d = self.dz[a][j]
                    if d.terms:
                        out[j] = out[j] - d * s
        for b, gb in enumerate(x.g):
            if gb.terms:
                s = self.S.restrict(gb)
                out[b] = out[b] + s * _HALF_OVER_I
                for j in range(q.k):
                    d = self.du[b][j]
                    if d.terms:
                        out[j] = out[j] + d * s * _MINUS_HALF
        return out


def _kit(q: ModelSurface) -> _TangencyKit:
    k = q._cache.get("tangency_kit")
    if k is None:
        k = q._cache["tangency_kit"] = _TangencyKit(q)
    return k


def tangency_residual(q: ModelSurface, x: VectorFieldPoly):
    """The ``k`` real polynomials ``E_j`` in ``(z, zb, u)``; all zero iff ``x`` is tangent."""
    _check_field(q, x)
    return tuple(p + p.conjugate() for p in _kit(q).p_of(x))


def is_tangent(q: ModelSurface, x: VectorFieldPoly) -> bool:
    return all(not e.terms for e in tangency_residual(q, x))


@dataclass
class TangencySystem:
    """Homogeneous real system for ``sum (x_2i + i x_2i+1) generators[i]`` tangent."""

    weight: object
    generators: list
    labels: list
    rows: list
    ncols: int


def system_from_generators(q: ModelSurface, generators, labels=None, weight=None) -> TangencySystem:
    kit = _kit(q)
    part = q.table.partner
    acc = {}  # (j, canonical exponent) -> [real part row, imaginary part row]
    for i, gen in enumerate(generators):
        c_one, c_i = 2 * i, 2 * i + 1
        for j, pj in enumerate(kit.p_of(gen)):
            for e, c in pj.terms.items():
                ce = tuple([e[k] for k in part])
                a, b = c.re, c.im
                # contributions of the unknowns with coefficient 1 and i to P[e] + conj(P[ce])
                if ce < e:
                    key, one, eye = ce, (a, -b), (-b, -a)
                elif ce == e:
                    key, one, eye = e, (2 * a, 0), (-2 * b, 0)
                else:
                    key, one, eye = e, (a, b), (-b, a)
                cell = acc.get((j, key))
                if cell is None:
                    cell = acc[(j, key)] = ({}, {})
                for part_row, x, y in ((cell[0], one[0], eye[0]), (cell[1], one[1], eye[1])):
                    if x:
                        part_row[c_one] = part_row.get(c_one, 0) + x
                    if y:
                        part_row[c_i] = part_row.get(c_i, 0) + y
    rows = []
    for key in sorted(acc):
        for part_row in acc[key]:
            row = {col: v for col, v in part_row.items() if v}
            if row:
                rows.append(row)
    return TangencySystem(weight, list(generators), list(labels or range(len(generators))), rows, 2 * len(generators))


def hol_monomials_of_weight(table: VarTable, names, weight: int):
    """Exponents (over the full table) of monomials in ``names`` with the given weight."""
    if weight < 0:
        return []
    idx = [table.index[v] for v in names]
    wts = [table.weight_vec[i] for i in idx]
    out = []

    def rec(pos, remaining, cur):
        if pos == len(idx):
            if remaining == 0:
                e = [0] * table.nvars
                for i, k in zip(idx, cur):
                    e[i] = k
                out.append(tuple(e))
            return
        for k in range(remaining // wts[pos] + 1):
            rec(pos + 1, remaining - k * wts[pos], cur + [k])

    rec(0, weight, [])
    out.sort(key=lambda e: (sum(e), e), reverse=True)
    return out


def template(q: ModelSurface, mu: int):
    """Monomial generators of weight ``mu``: ``(component index, exponent)``
    in the order f_1..f_n, g_1..g_k."""
    t = q.table
    hol = q.z + q.w
    out = []
    for c, var in enumerate(hol):
        for e in hol_monomials_of_weight(t, hol, mu + t.weights[var]):
            out.append((c, e))
    return out


def _monomial_field(q, c, e):
    t = q.table
    zero = Poly._raw(t, {})
    comps = [zero] * (q.n + q.k)
    comps[c] = Poly._raw(t, {e: G_ONE})
    return VectorFieldPoly(t, q.z, q.w, comps[: q.n], comps[q.n :])


def build_tangency_system(q: ModelSurface, mu: int) -> TangencySystem:
    """Linear system whose solutions are the weight-``mu`` fields tangent to ``q``."""
    slots = template(q, mu)
    gens = [_monomial_field(q, c, e) for c, e in slots]
    return system_from_generators(q, gens, slots, mu)


def solve_nullspace(system: TangencySystem, certify_empty=True):
    """Reduced-echelon nullspace basis. When the rank modulo a large prime is
    already full the system only has the trivial solution and no rational
    elimination is run."""
    if certify_empty and system.rows and len(system.rows) >= system.ncols:
        r = rank_mod_p(system.rows)
        if r == system.ncols:
            return []
    return nullspace(system.rows, system.ncols)


def field_from_vector(system: TangencySystem, v) -> VectorFieldPoly:
    out = None
    for i, gen in enumerate(system.generators):
        a, b = v[2 * i], v[2 * i + 1]
        if not a and not b:
            continue
        term = gen * GaussianRational(a, b)
        out = term if out is None else out + term
    return out if out is not None else VectorFieldPoly.zero_like(system.generators[0])


def field_vector(q: ModelSurface, x: VectorFieldPoly, mu: int):
    """Coordinates of a weight-``mu`` field over ``template(q, mu)`` (re/im interleaved)."""
    slots = template(q, mu)
    pos = {s: i for i, s in enumerate(slots)}
    v = [mpq(0)] * (2 * len(slots))
    for c, coef in enumerate(x.components()):
        for e, val in coef.terms.items():
            i = pos.get((c, e))
            if i is None:
                raise ValueError(f"field has a term outside weight {mu}")
            v[2 * i] = val.re
            v[2 * i + 1] = val.im
    return v


# ---------------------------------------------------------------- graded algebra


@dataclass
class WeightComponent:
    weight: int
    fields: list
    s_flags: list = None  # None when no algebra structure is attached

    @property
    def dim(self) -> int:
        return len(self.fields)

    @property
    def s_dim(self):
        return None if self.s_flags is None else sum(self.s_flags)

    @property
    def s_basis_indices(self):
        return None if self.s_flags is None else [i for i, f in enumerate(self.s_flags) if f]


@dataclass
class GradedAutBasis:
    surface: ModelSurface
    floor: int
    cap: int
    components: dict
    algebra: AlgebraSpec = None
    cap_source: str = "default"

    @property
    def dims(self) -> dict:
        return {mu: c.dim for mu, c in sorted(self.components.items()) if c.dim}

    @property
    def all_dims(self) -> dict:
        return {mu: c.dim for mu, c in sorted(self.components.items())}

    @property
    def s_dims(self) -> dict:
        return {mu: c.s_dim for mu, c in sorted(self.components.items())}

    @property
    def total_dim(self) -> int:
        return sum(c.dim for c in self.components.values())

    def component(self, mu: int) -> WeightComponent:
        return self.components[mu]

    def fields(self):
        for mu in sorted(self.components):
            yield from ((mu, x) for x in self.components[mu].fields)

    def cap_disclosure(self) -> str:
        return (
            f"weights searched: {self.floor}..{self.cap} ({self.cap_source} cap); "
            f"components above weight {self.cap} are not claimed to vanish"
        )


def weight_floor(q: ModelSurface) -> int:
    return -max(q.table.weights[v] for v in q.z + q.w)


def default_cap(q: ModelSurface):
    """``(cap, source)``: ``2 max[w]``, or ``[w] 2(k+1) - min[w_j]`` for bidegree (2, 2)."""
    ws = [q.table.weights[v] for v in q.w]
    if is_bidegree_22(q):
        return max(ws) * 2 * (q.k + 1) - min(ws), "bidegree (2,2)"
    return 2 * max(ws), "default"


def weight_component(q: ModelSurface, mu: int):
    key = ("aut_component", mu)
    hit = q._cache.get(key)
    if hit is None:
        system = build_tangency_system(q, mu)
        basis = solve_nullspace(system)
        hit = q._cache[key] = [field_from_vector(system, v) for v in basis]
    return list(hit)


def compute_aut(q: ModelSurface, max_weight=None, *, min_weight=None, with_s_part=True) -> GradedAutBasis:
    """Per-weight bases of the polynomial automorphism algebra over ``[floor, cap]``.

    For an algebraized surface with ``with_s_part`` each component lists the
    algebra-holomorphic fields first (flagged), then a greedy completion.
    """
    if not check_finite_type_linear(q):
        raise DegenerateSurface("defining functions are linearly dependent; the algebra is infinite-dimensional")
    if not q.homogeneous:
        raise DegenerateSurface("weighted homogeneity is required for the graded computation")
    floor = weight_floor(q) if min_weight is None else min_weight
    if max_weight is None:
        cap, source = default_cap(q)
    else:
        cap, source = max_weight, "user"
    algebra = q.origin.algebra if (q.origin is not None and with_s_part) else None
    comps = {}
    for mu in range(floor, cap + 1):
        full = weight_component(q, mu)
        if algebra is None:
            comps[mu] = WeightComponent(mu, full, None)
            continue
        s_part = s_holomorphic_component(q, algebra, mu)
        fields, flags = list(s_part), [True] * len(s_part)
        vecs = [field_vector(q, x, mu) for x in fields]
        for x in full:
            v = field_vector(q, x, mu)
            if not in_span(vecs, v):
                vecs.append(v)
                fields.append(x)
                flags.append(False)
        if len(fields) != len(full):
            raise InvariantViolation(f"weight {mu}: algebra-holomorphic part is not inside the full component")
        comps[mu] = WeightComponent(mu, fields, flags)
    return GradedAutBasis(q, floor, cap, comps, algebra, source)


def lie_bracket(x: VectorFieldPoly, y: VectorFieldPoly) -> VectorFieldPoly:
    """Bracket of the (1,0) parts: coefficients ``x(f_y) - y(f_x)``."""
    x._check(y)
    return VectorFieldPoly(
        x.table,
        x.z,
        x.w,
        [x.apply(b) - y.apply(a) for a, b in zip(x.f, y.f)],
        [x.apply(b) - y.apply(a) for a, b in zip(x.g, y.g)],
    )


def in_component(q: ModelSurface, x: VectorFieldPoly, mu: int, basis) -> bool:
    if x.is_zero():
        return True
    try:
        v = field_vector(q, x, mu)
    except ValueError:
        return False
    return in_span([field_vector(q, b, mu) for b in basis], v)


# ---------------------------------------------------------------- algebra-holomorphic part


def s_generators(q_alg: ModelSurface, s: AlgebraSpec, mu: int):
    """Scalar fields of the algebra monomials ``e_r * M(Z, W)`` of weight ``mu``.

    Returns ``(generators, labels)``; label ``(component, exponent, r)``.
    """
    base = q_alg.origin.base
    bt = base.table
    l = s.dim
    hol = base.z + base.w
    gens, labels = [], []
    for c, var in enumerate(hol):
        for e in hol_monomials_of_weight(bt, hol, mu + bt.weights[var]):
            for r in range(l):
                coeff = s.celement([G_ONE if m == r else G_ZERO for m in range(l)])
                comps = scalar_expand(AlgebraPoly(bt, s, {e: coeff}), q_alg.table)
                zero = Poly._raw(q_alg.table, {})
                allc = [zero] * (l * (base.n + base.k))
                for m in range(l):
                    allc[c * l + m] = comps[m]
                n = l * base.n
                gens.append(VectorFieldPoly(q_alg.table, q_alg.z, q_alg.w, allc[:n], allc[n:]))
                labels.append((c, e, r))
    return gens, labels


def s_holomorphic_component(q_alg: ModelSurface, s: AlgebraSpec, mu: int):
    """Basis of the algebra-holomorphic fields of weight ``mu`` tangent to ``q_alg``;
    checked to lie inside the full component."""
    if q_alg.origin is None:
        raise NotAnAlgebraization("surface carries no algebraization data")
    if q_alg.origin.algebra != s:
        raise NotAnAlgebraization("surface was algebraized over a different algebra")
    key = ("s_component", mu)
    hit = q_alg._cache.get(key)
    if hit is not None:
        return list(hit)
    gens, labels = s_generators(q_alg, s, mu)
    if not gens:
        q_alg._cache[key] = []
        return []
    system = system_from_generators(q_alg, gens, labels, mu)
    basis = [field_from_vector(system, v) for v in solve_nullspace(system)]
    full = weight_component(q_alg, mu)
    full_vecs = [field_vector(q_alg, x, mu) for x in full]
    for x in basis:
        if not in_span(full_vecs, field_vector(q_alg, x, mu)):
            raise InvariantViolation(f"algebra-holomorphic field outside weight {mu} component")
    if span_rank([field_vector(q_alg, x, mu) for x in basis]) != len(basis):
        raise InvariantViolation("algebra-holomorphic basis is dependent")
    q_alg._cache[key] = basis
    return list(basis)


@dataclass
class ExhaustionRow:
    weight: int
    base_dim: int
    expected_s_dim: int
    s_dim: int
    full_dim: int

    @property
    def exhausted(self) -> bool:
        return self.s_dim == self.full_dim


@dataclass
class ExhaustionReport:
    surface: ModelSurface
    algebra: AlgebraSpec
    rows: list
    cap: int
    cap_disclosure: str

    @property
    def exhausted(self) -> bool:
        return all(r.exhausted for r in self.rows)

    def row(self, mu: int) -> ExhaustionRow:
        return next(r for r in self.rows if r.weight == mu)


def s_exhaustion_report(q: ModelSurface, s: AlgebraSpec, max_weight=None) -> ExhaustionReport:
    """Compare ``dim g_j`` of the base, ``l dim g_j``, the algebra-holomorphic and
    the full components of the algebraization, weight by weight."""
    q_alg = algebraize(q, s)
    big = compute_aut(q_alg, max_weight)
    small = compute_aut(q, big.cap, min_weight=big.floor)
    rows = []
    for mu in range(big.floor, big.cap + 1):
        bd = small.component(mu).dim
        c = big.component(mu)
        row = ExhaustionRow(mu, bd, s.dim * bd, c.s_dim, c.dim)
        if row.s_dim != row.expected_s_dim:
            raise InvariantViolation(
                f"weight {mu}: algebra-holomorphic dimension {row.s_dim} != {s.dim} * {bd}"
            )
        rows.append(row)
    return ExhaustionReport(q, s, rows, big.cap, big.cap_disclosure())


# ---------------------------------------------------------------- shape of fields for bidegree (2, 2)


@dataclass
class ShapeCheck:
    ok: bool
    counterexample: object = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def _delta(q: ModelSurface, psi: Poly) -> Poly:
    out = Poly._raw(q.table, {})
    for phi_b, ub in zip(q.phi, q.u):
        d = psi.derivative(ub)
        if d.terms:
            out = out + phi_b * d
    return out


def field_shape_problem(q: ModelSurface, x: VectorFieldPoly):
    """``None`` if ``x = 2 Re(c(w) z d/dz + b(w) d/dw)`` with ``c`` affine, ``b`` real of
    degree <= 2 and the relations between ``b`` and ``c`` hold; otherwise a reason."""
    t = q.table
    zi = [t.index[v] for v in q.z]
    wi = [t.index[v] for v in q.w]
    for a, fa in enumerate(x.f):
        for e in fa.terms:
            if sum(e[i] for i in zi) != 1 or sum(e[i] for i in wi) > 1:
                return f"f_{a + 1} is not (affine in w) * (linear in z)"
    for b, gb in enumerate(x.g):
        for e, c in gb.terms.items():
            if any(e[i] for i in zi) or sum(e[i] for i in wi) > 2:
                return f"g_{b + 1} is not a polynomial of degree <= 2 in w"
            if not c.is_real():
                return f"g_{b + 1} has a non-real coefficient"
    to_u = dict(zip(q.w, q.u))
    b_u = [gb.rename(to_u, t) for gb in x.g]
    cz_u = [fa.rename(to_u, t) for fa in x.f]
    for j, phi in enumerate(q.phi):
        s = Poly._raw(t, {})
        for a, za in enumerate(q.z):
            d = phi.derivative(za)
            if d.terms and cz_u[a].terms:
                s = s + d * cz_u[a]
        if _delta(q, b_u[j]) != s + s.conjugate():
            return f"relation Delta b_{j + 1} = 2 Re(dphi/dz . c z) fails"
        if _delta(q, s.imag_part()).terms:
            return f"relation Delta Im(dphi_{j + 1}/dz . c z) = 0 fails"
        if _delta(q, _delta(q, _delta(q, b_u[j]))).terms:
            return f"relation Delta^3 b_{j + 1} = 0 fails"
    return None


def verify_statement13_shape(q: ModelSurface, basis) -> ShapeCheck:
    """Check every field of ``basis`` (a ``GradedAutBasis`` or iterable of fields)."""
    fields = [x for _, x in basis.fields()] if isinstance(basis, GradedAutBasis) else list(basis)
    for x in fields:
        why = field_shape_problem(q, x)
        if why is not None:
            return ShapeCheck(False, x, why)
    return ShapeCheck(True)
