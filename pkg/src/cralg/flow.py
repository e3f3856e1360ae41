"""Truncated one-parameter flows of polynomial vector fields.

The flow of ``2 Re(f d/dz + g d/dw)`` is holomorphic in ``(z, w)`` and its
Taylor coefficients in the real time ``t`` follow the Lie series
``c_0 = x``, ``c_{m+1} = X(c_m) / (m + 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .algebra import AlgebraSpec
from .autalg import VectorFieldPoly
from .errors import NotAnAlgebraization, VariableMismatch
from .linalg import solve
from .poly import AlgebraPoly, Poly, VarTable, render_poly, scalar_expand
from .scalars import G_ONE, G_ZERO, I, GaussianRational
from .surface import ModelSurface

DEFAULT_ORDER = 6


def _time_name(table: VarTable) -> str:
    name = "t"
    while name in table.index:
        name += "_"
    return name


class FormalFlow:
    """Flow of ``field`` truncated at ``t^order``.

    ``coefficients[var][m]`` is the ``t^m`` coefficient (a polynomial in the
    holomorphic variables); ``components[var]`` is the truncated series over
    ``table`` which adds the real time variable.
    """

    def __init__(self, field: VectorFieldPoly, order: int, coefficients):
        self.field = field
        self.order = order
        self.coefficients = coefficients
        base = field.table
        self.t = _time_name(base)
        self.table = base.extend(real_vars=(self.t,), weights={self.t: 1})
        ti = self.table.index[self.t]
        self._ti = ti
        self.components = {}
        for var, coeffs in coefficients.items():
            terms = {}
            for m, c in enumerate(coeffs):
                for e, v in _lift(c, self.table).terms.items():
                    e2 = e[:ti] + (m,) + e[ti + 1 :]
                    terms[e2] = v
            self.components[var] = Poly._raw(self.table, terms)

    def variables(self):
        return self.field.variables()

    def is_identity_at_zero(self) -> bool:
        return all(
            c[0] == Poly.var(self.field.table, var) for var, c in self.coefficients.items()
        )

    def terminates(self) -> bool:
        """Whether the series is exactly a polynomial in ``t`` (a vanishing
        Lie-series coefficient makes all later ones vanish)."""
        return any(
            all(not self.coefficients[v][m].terms for v in self.coefficients) for m in range(1, self.order + 1)
        )

    def coefficient(self, var: str, m: int) -> Poly:
        return self.coefficients[var][m]

    def render(self) -> str:
        return "\n".join(f"{var}(t) = {render_poly(self.components[var])}" for var in self.variables())

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "field": str(self.field),
            "components": {var: render_poly(self.components[var]) for var in self.variables()},
        }


def _lift(p: Poly, table: VarTable) -> Poly:
    """Re-embed a polynomial over a table that only appends real variables."""
    pad = table.nvars - p.table.nvars
    if pad == 0:
        return Poly._raw(table, p.terms)
    # the appended real variables sit at the end of the layout
    return Poly._raw(table, {e + (0,) * pad: c for e, c in p.terms.items()})


def exponentiate(x: VectorFieldPoly, order: int = DEFAULT_ORDER) -> FormalFlow:
    if order < 1:
        raise ValueError("flow order must be at least 1")
    coeffs = {}
    for var in x.variables():
        seq = [Poly.var(x.table, var)]
        for m in range(order):
            seq.append(x.apply(seq[-1]) * GaussianRational(mpq(1, m + 1), 0))
        coeffs[var] = seq
    return FormalFlow(x, order, coeffs)


# ---------------------------------------------------------------- truncated substitution


def _mul_trunc(a: Poly, b: Poly, ti: int, n: int) -> Poly:
    out = {}
    for e1, c1 in a.terms.items():
        d1 = e1[ti]
        for e2, c2 in b.terms.items():
            if d1 + e2[ti] > n:
                continue
            e = tuple([x + y for x, y in zip(e1, e2)])
            v = out.get(e)
            out[e] = c1 * c2 if v is None else v + c1 * c2
    return Poly._raw(a.table, {e: c for e, c in out.items() if c})


def _subst_trunc(p: Poly, images, table: VarTable, ti: int, n: int) -> Poly:
    """``p`` with variable ``i`` replaced by ``images[i]``, dropping ``t^(>n)``."""
    cache = {}

    def power(i, k):
        key = (i, k)
        v = cache.get(key)
        if v is None:
            v = images[i] if k == 1 else _mul_trunc(power(i, k - 1), images[i], ti, n)
            cache[key] = v
        return v

    out = Poly._raw(table, {})
    for e, c in p.terms.items():
        term = Poly.const(table, c)
        for i, k in enumerate(e):
            if k:
                term = _mul_trunc(term, power(i, k), ti, n)
        out = out + term
    return out


@dataclass
class FlowCheck:
    ok: bool
    first_bad_order: int = None

    def __bool__(self):
        return self.ok


def verify_flow_tangency(q: ModelSurface, flow: FormalFlow) -> FlowCheck:
    """Whether ``Im W_j(t) = phi_j(Z(t), conj Z(t), Re W(t))`` modulo ``t^(N+1)`` for
    every starting point ``w = u + i phi`` of the surface."""
    x = flow.field
    if x.table != q.table or x.z != q.z or x.w != q.w:
        raise VariableMismatch("flow and surface use different variables")
    t = flow.table
    ti, n = flow._ti, flow.order
    # start on the surface
    start = [Poly.var(t, v) for v in t.names]
    for wn, un, phi in zip(q.w, q.u, q.phi):
        img = Poly.var(t, un) + _lift(phi, t) * I
        start[t.index[wn]] = img
        start[t.index[_conj_of(t, wn)]] = img.conjugate()
    moved = {var: _subst_trunc(flow.components[var], start, t, ti, n) for var in x.variables()}
    images = [Poly.var(t, v) for v in t.names]
    for var, p in moved.items():
        images[t.index[var]] = p
        images[t.index[_conj_of(t, var)]] = p.conjugate()
    for wn, un in zip(q.w, q.u):
        images[t.index[un]] = moved[wn].real_part()
    worst = None
    for wn, phi in zip(q.w, q.phi):
        lhs = moved[wn].imag_part()
        rhs = _subst_trunc(_lift(phi, t), images, t, ti, n)
        diff = lhs - rhs
        if diff.terms:
            m = min(e[ti] for e in diff.terms)
            worst = m if worst is None else min(worst, m)
    return FlowCheck(worst is None, worst)


def _conj_of(t: VarTable, name: str) -> str:
    return t.names[t.partner[t.index[name]]]


# ---------------------------------------------------------------- algebra regrouping


@dataclass
class SFlowCheck:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def s_flow_check(q_alg: ModelSurface, s: AlgebraSpec, flow: FormalFlow) -> SFlowCheck:
    """Whether each algebra variable's flow components are the scalar expansion
    of a polynomial in the algebra variables with complexified-algebra
    coefficients, order by order in ``t``."""
    if q_alg.origin is None:
        raise NotAnAlgebraization("surface carries no algebraization data")
    base = q_alg.origin.base
    l = s.dim
    bt = base.table
    hol = base.z + base.w
    layout = list(q_alg.z + q_alg.w)
    for c, bvar in enumerate(hol):
        names = layout[c * l : (c + 1) * l]
        for m in range(flow.order + 1):
            comps = [flow.coefficient(v, m) for v in names]
            degrees = {sum(e) for p in comps for e in p.terms}
            for d in sorted(degrees):
                target = [Poly._raw(q_alg.table, {e: v for e, v in p.terms.items() if sum(e) == d}) for p in comps]
                if not _expressible(target, bt, hol, s, d, q_alg.table):
                    return SFlowCheck(False, f"{bvar}: t^{m} coefficient, degree {d}")
    return SFlowCheck(True)


def _monomials_of_degree(table, names, d):
    idx = [table.index[v] for v in names]
    out = []

    def rec(pos, remaining, cur):
        if pos == len(idx) - 1:
            e = [0] * table.nvars
            for i, k in zip(idx, cur + [remaining]):
                e[i] = k
            out.append(tuple(e))
            return
        for k in range(remaining + 1):
            rec(pos + 1, remaining - k, cur + [k])

    if idx:
        rec(0, d, [])
    return out


def _expressible(target, bt, hol, s, d, scalar_table) -> bool:
    l = s.dim
    gens = []
    for e in _monomials_of_degree(bt, hol, d):
        for r in range(l):
            coeff = s.celement([G_ONE if m == r else G_ZERO for m in range(l)])
            gens.append(scalar_expand(AlgebraPoly(bt, s, {e: coeff}), scalar_table))
    index = {}
    cols = []
    for g in gens:
        for mult in (G_ONE, I):
            col = {}
            for m, p in enumerate(g):
                for e, v in p.terms.items():
                    v = v * mult
                    for part, x in ((0, v.re), (1, v.im)):
                        if x:
                            col[index.setdefault((m, e, part), len(index))] = x
            cols.append(col)
    rhs_map = {}
    for m, p in enumerate(target):
        for e, v in p.terms.items():
            for part, x in ((0, v.re), (1, v.im)):
                if x:
                    key = (m, e, part)
                    if key not in index:
                        return False
                    rhs_map[index[key]] = x
    rows = [dict() for _ in range(len(index))]
    for j, col in enumerate(cols):
        for r, x in col.items():
            rows[r][j] = x
    rhs = [rhs_map.get(r, mpq(0)) for r in range(len(index))]
    return solve(rows, rhs, len(cols)) is not None
