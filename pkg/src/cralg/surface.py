"""Model surfaces ``Im w = Phi(z, zb, Re w)``, their algebraization and diagnostics."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from gmpy2 import mpq

from .algebra import AlgebraSpec, direct_sum, direct_sum_coordinates
from .errors import (
    BadArity,
    NotHomogeneous,
    NotReal,
    NotThroughOrigin,
    UnknownVariable,
    WrongBidegree,
)
from .linalg import dense_rank, dense_solve, nullspace, rank
from .poly import AlgebraPoly, Poly, VarTable, component_name, conj_name, expanded_table, scalar_expand
from .scalars import G_ONE, I, GaussianRational


@dataclass(frozen=True)
class AlgebraizationInfo:
    base: "ModelSurface"
    algebra: AlgebraSpec


@dataclass(frozen=True, eq=False)
class ModelSurface:
    n: int
    k: int
    table: VarTable
    z: tuple
    w: tuple
    u: tuple
    phi: tuple
    homogeneous: bool = True
    origin: AlgebraizationInfo = None
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def cr_type(self):
        return (self.n, self.k)

    def weight(self, name: str) -> int:
        return self.table.weights[name]

    def defining_equations(self):
        return [(f"Im{w}", p) for w, p in zip(self.w, self.phi)]

    def __str__(self):
        lines = [f"surface n={self.n} k={self.k}"]
        ws = " ".join(f"{v}={self.weight(v)}" for v in self.z + self.w)
        if ws:
            lines.append(f"weight {ws}")
        lines += [f"Im{w} = {p}" for w, p in zip(self.w, self.phi)]
        return "\n".join(lines)


def surface_table(z, w, u, weights):
    wt = dict(weights)
    for wn, un in zip(w, u):
        if wn in wt:
            wt[un] = wt[wn]
    return VarTable(list(z) + list(w), list(u), wt)


def make_surface(
    n,
    k,
    phi_exprs,
    weights=None,
    *,
    z_names=None,
    w_names=None,
    u_names=None,
    homogeneous=None,
    through_origin=False,
) -> ModelSurface:
    """Validated surface ``Im w_j = phi_j``.

    ``phi_exprs`` holds strings (parsed over ``z*, zb*, u*``) or polynomials.
    ``weights`` maps ``z``/``w`` names to positive integers; when omitted every
    ``z`` gets weight 1 and each ``w_j`` takes the degree of a homogeneous
    ``phi_j``. Homogeneity is enforced whenever weights are declared.
    """
    z = tuple(z_names or [f"z{a + 1}" for a in range(n)])
    w = tuple(w_names or [f"w{b + 1}" for b in range(k)])
    u = tuple(u_names or [f"u{b + 1}" for b in range(k)])
    if len(z) != n or len(w) != k or len(u) != k:
        raise BadArity("variable name lists must match (n, k)")
    if len(phi_exprs) != k:
        raise BadArity(f"expected {k} defining functions, got {len(phi_exprs)}")
    declared = weights is not None
    weights = dict(weights or {})
    for name in weights:
        if name not in z + w:
            raise UnknownVariable(f"weight given for unknown variable {name!r}")
    table = surface_table(z, w, u, weights)
    phi = tuple(_as_poly(e, table) for e in phi_exprs)
    allowed = set(z) | {conj_name(v) for v in z} | set(u)
    for j, p in enumerate(phi):
        bad = p.variables() - allowed
        if bad:
            raise UnknownVariable(f"defining function {j + 1} uses {sorted(bad)}; only z, zb, u allowed")
        if not p.is_real():
            raise NotReal(j + 1)
        if through_origin:
            zi = [table.index[v] for v in z] + [table.index[conj_name(v)] for v in z]
            if any(not any(e[i] for i in zi) for e in p.terms):
                raise NotThroughOrigin(f"defining function {j + 1} has pure-u terms")
    if not declared:
        inferred = {v: 1 for v in z}
        ok = True
        for wn, p in zip(w, phi):
            ws = Poly(surface_table(z, w, u, inferred), p.terms).weights() if not p.variables() & set(u) else set()
            if len(ws) == 1:
                inferred[wn] = ws.pop()
            else:
                ok = False
                inferred[wn] = 1
        table = surface_table(z, w, u, inferred)
        phi = tuple(Poly(table, p.terms) for p in phi)
        homogeneous = ok if homogeneous is None else homogeneous
    else:
        homogeneous = True if homogeneous is None else homogeneous
        if homogeneous:
            for j, (wn, p) in enumerate(zip(w, phi)):
                if not p.is_homogeneous(table.weights[wn]):
                    raise NotHomogeneous(j + 1, p.weights())
    return ModelSurface(n, k, table, z, w, u, phi, homogeneous)


def _as_poly(e, table):
    if isinstance(e, Poly):
        if e.table == table:
            return e
        return e.rename({}, table)
    from .parse import parse_expression

    return parse_expression(e, table)


def cr_type(q: ModelSurface):
    return (q.n, q.k)


# ---------------------------------------------------------------- algebraization


def algebraize(q: ModelSurface, s: AlgebraSpec) -> ModelSurface:
    """Substitute algebra-valued ``Z, W`` and expand into scalar coordinates.

    Scalar names are ``<var>_<m>`` (``m`` 1-based basis index); weights carry
    over; the CR type becomes ``(l n, l k)``.
    """
    key = ("algebraize", s)
    hit = q._cache.get(key)
    if hit is not None:
        return hit
    l = s.dim
    target = expanded_table(q.table, l)
    z = tuple(component_name(v, m) for v in q.z for m in range(l))
    w = tuple(component_name(v, m) for v in q.w for m in range(l))
    u = tuple(component_name(v, m) for v in q.u for m in range(l))
    phi = []
    for p in q.phi:
        phi.extend(scalar_expand(AlgebraPoly.from_poly(p, s), target))
    out = ModelSurface(l * q.n, l * q.k, target, z, w, u, tuple(phi), q.homogeneous, AlgebraizationInfo(q, s))
    q._cache[key] = out
    return out


def linear_change_matches(src: ModelSurface, dst: ModelSurface, z_map, w_map) -> bool:
    """Whether the linear change ``z_src = z_map(z_dst)``, ``w_src = w_map(w_dst)``
    (real rational coefficients; ``u`` follows ``w``) carries ``src`` onto ``dst``.

    ``z_map[name]`` / ``w_map[name]`` are ``{dst_name: coefficient}``. Since
    ``Im w_src = M Im w_dst``, the check is ``phi_src(z_map(z), M u) = M phi_dst``
    as a polynomial identity over ``dst``'s variables.
    """
    t = dst.table
    if set(z_map) != set(src.z) or set(w_map) != set(src.w):
        return False
    u_of = dict(zip(dst.w, dst.u))
    bindings = {}
    for name, combo in z_map.items():
        bindings[name] = _combo(t, combo)
    for wn, un in zip(src.w, src.u):
        bindings[un] = _combo(t, {u_of[k]: v for k, v in w_map[wn].items()})
    phi_dst = dict(zip(dst.w, dst.phi))
    for wn, p in zip(src.w, src.phi):
        lhs = p.substitute(bindings, t)
        rhs = Poly(t, {})
        for dn, c in w_map[wn].items():
            rhs = rhs + phi_dst[dn] * c
        if lhs != rhs:
            return False
    return True


def _combo(t, combo):
    out = Poly(t, {})
    for name, c in combo.items():
        out = out + Poly.var(t, name) * GaussianRational(mpq(c), 0)
    return out


def renaming_matches(src: ModelSurface, dst: ModelSurface, rename) -> bool:
    """Pure renaming (a permutation of coordinates): ``rename[src_name] = dst_name``."""
    z_map = {v: {rename[v]: 1} for v in src.z}
    w_map = {v: {rename[v]: 1} for v in src.w}
    return linear_change_matches(src, dst, z_map, w_map)


def _tensor_rename(name_base, m1, m2, l1):
    """``<base>_<m1>_<m2>`` (first over s1, then over s2) -> index in s2 (x) s1."""
    return component_name(name_base, m2 * l1 + m1)


def algebraize_twice_equals_tensor(q: ModelSurface, s1: AlgebraSpec, s2: AlgebraSpec) -> bool:
    from .algebra import tensor_product

    twice = algebraize(algebraize(q, s1), s2)
    once = algebraize(q, tensor_product(s2, s1))
    l1, l2 = s1.dim, s2.dim
    rename = {}
    for base in q.z + q.w:
        for m1 in range(l1):
            for m2 in range(l2):
                rename[component_name(component_name(base, m1), m2)] = _tensor_rename(base, m1, m2, l1)
    if sorted(rename[v] for v in twice.z) != sorted(once.z):
        return False
    return renaming_matches(twice, once, rename)


def cartesian_product(q1: ModelSurface, q2: ModelSurface) -> ModelSurface:
    """Block-concatenated coordinates renamed to ``z1.., w1.., u1..``."""
    n, k = q1.n + q2.n, q1.k + q2.k
    z = tuple(f"z{a + 1}" for a in range(n))
    w = tuple(f"w{b + 1}" for b in range(k))
    u = tuple(f"u{b + 1}" for b in range(k))
    weights = {}
    old = [q1.z + q1.w + q1.u, q2.z + q2.w + q2.u]
    new = [z[: q1.n] + w[: q1.k] + u[: q1.k], z[q1.n :] + w[q1.k :] + u[q1.k :]]
    for q, o, nn in zip((q1, q2), old, new):
        for a, b in zip(o, nn):
            weights[b] = q.weight(a)
    table = surface_table(z, w, u, {v: weights[v] for v in z + w})
    phi = []
    for q, o, nn in zip((q1, q2), old, new):
        mapping = dict(zip(o, nn))
        phi.extend(p.rename(mapping, table) for p in q.phi)
    return ModelSurface(n, k, table, z, w, u, tuple(phi), q1.homogeneous and q2.homogeneous)


def direct_sum_matches_product(q: ModelSurface, s1: AlgebraSpec, s2: AlgebraSpec) -> bool:
    """``algebraize(q, s1 (+) s2)`` equals ``algebraize(q, s1) x algebraize(q, s2)``
    after the basis change from the direct-sum basis to the pair of summand bases."""
    src = algebraize(q, direct_sum(s1, s2))
    dst = cartesian_product(algebraize(q, s1), algebraize(q, s2))
    P = direct_sum_coordinates(s1, s2)
    l = s1.dim + s2.dim
    # x = P^{-1} (pair coordinates)
    Pinv_cols = [dense_solve(P, [mpq(1 if r == c else 0) for r in range(l)]) for c in range(l)]
    Pinv = [[Pinv_cols[c][r] for c in range(l)] for r in range(l)]

    def pair_names(dst_names, a, count):
        first = dst_names[a * s1.dim : (a + 1) * s1.dim]
        off = count * s1.dim
        second = dst_names[off + a * s2.dim : off + (a + 1) * s2.dim]
        return list(first) + list(second)

    def build(src_names, dst_names, count):
        out = {}
        for a in range(count):
            pairs = pair_names(dst_names, a, count)
            for m in range(l):
                out[src_names[a * l + m]] = {pairs[r]: Pinv[m][r] for r in range(l) if Pinv[m][r]}
        return out

    return linear_change_matches(src, dst, build(src.z, dst.z, q.n), build(src.w, dst.w, q.k))


# ---------------------------------------------------------------- restriction to the surface


class OnSurface:
    """Restrict holomorphic polynomials in ``(z, w)`` to the surface by
    ``w = u + i*phi(z, zb, u)``; monomial images are cached."""

    def __init__(self, q: ModelSurface):
        self.q = q
        t = q.table
        self.t = t
        self.zi = [t.index[v] for v in q.z]
        self.wi = [t.index[v] for v in q.w]
        self.w_img = [Poly.var(t, un) + p * I for un, p in zip(q.u, q.phi)]
        self._wpow = {}
        self._wmono = {}
        self._mono = {}

    def _w_power(self, b, k):
        key = (b, k)
        p = self._wpow.get(key)
        if p is None:
            p = Poly.const(self.t, 1) if k == 0 else self._w_power(b, k - 1) * self.w_img[b]
            self._wpow[key] = p
        return p

    def _w_monomial(self, wexp):
        p = self._wmono.get(wexp)
        if p is None:
            p = Poly.const(self.t, 1)
            for b, k in enumerate(wexp):
                if k:
                    p = p * self._w_power(b, k)
            self._wmono[wexp] = p
        return p

    def monomial(self, exp):
        """Image of a holomorphic monomial (exponent over the full table)."""
        img = self._mono.get(exp)
        if img is None:
            wexp = tuple(exp[i] for i in self.wi)
            base = self._w_monomial(wexp)
            shift = [0] * self.t.nvars
            for i in self.zi:
                shift[i] = exp[i]
            shift = tuple(shift)
            if any(shift):
                img = Poly._raw(self.t, {tuple([a + b for a, b in zip(e, shift)]): c for e, c in base.terms.items()})
            else:
                img = base
            self._mono[exp] = img
        return img

    def restrict(self, p: Poly) -> Poly:
        out = {}
        for e, c in p.terms.items():
            for e2, c2 in self.monomial(e).terms.items():
                v = out.get(e2)
                out[e2] = c * c2 if v is None else v + c * c2
        return Poly._raw(self.t, {e: c for e, c in out.items() if c})


def on_surface(q: ModelSurface) -> OnSurface:
    r = q._cache.get("on_surface")
    if r is None:
        r = q._cache["on_surface"] = OnSurface(q)
    return r


# ---------------------------------------------------------------- diagnostics


@dataclass(frozen=True)
class HermitianFormSpec:
    n: int
    k: int
    h: tuple  # h[j][a][b], phi_j = sum h[j][a][b] z_a zb_b

    def __post_init__(self):
        for j in range(self.k):
            for a in range(self.n):
                for b in range(self.n):
                    if self.h[j][a][b] != self.h[j][b][a].conjugate():
                        raise NotReal(j + 1)


def hermitian_form(q: ModelSurface) -> HermitianFormSpec:
    t = q.table
    zi = [t.index[v] for v in q.z]
    zbi = [t.index[conj_name(v)] for v in q.z]
    h = []
    for j, p in enumerate(q.phi):
        mat = [[GaussianRational(0, 0) for _ in range(q.n)] for _ in range(q.n)]
        for e, c in p.terms.items():
            a = [i for i, x in enumerate(zi) if e[x]]
            b = [i for i, x in enumerate(zbi) if e[x]]
            if sum(e) != 2 or len(a) != 1 or len(b) != 1:
                raise WrongBidegree(f"defining function {j + 1} is not a Hermitian form")
            mat[a[0]][b[0]] = c
        h.append(tuple(tuple(r) for r in mat))
    return HermitianFormSpec(q.n, q.k, tuple(h))


@dataclass(frozen=True)
class QuadricNondegeneracy:
    independent: bool
    trivial_kernel: bool

    @property
    def nondegenerate(self) -> bool:
        return self.independent and self.trivial_kernel


def check_quadric_nondegeneracy(h: HermitianFormSpec) -> QuadricNondegeneracy:
    n, k = h.n, h.k
    # real independence of the k forms, each as a real vector of length 2 n^2
    vecs = []
    for j in range(k):
        v = {}
        for a in range(n):
            for b in range(n):
                c = h.h[j][a][b]
                if c.re:
                    v[2 * (a * n + b)] = c.re
                if c.im:
                    v[2 * (a * n + b) + 1] = c.im
        vecs.append(v)
    independent = rank(vecs) == k
    # joint kernel: h[j] x = 0 for all j, x = X + iY split into 2n real unknowns
    rows = []
    for j in range(k):
        for a in range(n):
            re_row, im_row = {}, {}
            for b in range(n):
                c = h.h[j][a][b]
                if c.re:
                    re_row[b] = c.re
                    im_row[n + b] = c.re
                if c.im:
                    re_row[n + b] = -c.im
                    im_row[b] = c.im
            rows += [re_row, im_row]
    trivial_kernel = len(nullspace(rows, 2 * n)) == 0
    return QuadricNondegeneracy(independent, trivial_kernel)


def real_coefficient_rows(polys):
    """Each polynomial as a sparse real vector (re/im of every coefficient)."""
    index = {}
    out = []
    for p in polys:
        v = {}
        for e, c in p.terms.items():
            col = index.setdefault(e, len(index))
            if c.re:
                v[2 * col] = c.re
            if c.im:
                v[2 * col + 1] = c.im
        out.append(v)
    return out


def check_finite_type_linear(q: ModelSurface) -> bool:
    """No nonzero real combination of the defining functions vanishes."""
    return rank(real_coefficient_rows(q.phi)) == q.k


def is_bidegree_22(q: ModelSurface) -> bool:
    t = q.table
    zi = [t.index[v] for v in q.z]
    zbi = [t.index[conj_name(v)] for v in q.z]
    for p in q.phi:
        if not p.terms:
            return False
        for e in p.terms:
            if sum(e[i] for i in zi) != 2 or sum(e[i] for i in zbi) != 2 or sum(e) != 4:
                return False
    return True


@dataclass(frozen=True)
class FdResult:
    status: str  # "holds" | "inconclusive"
    witness: tuple = None
    samples: int = 0

    @property
    def holds(self) -> bool:
        return self.status == "holds"


def _van_der_corput(i, base):
    num, den = 0, 1
    while i:
        i, r = divmod(i, base)
        den *= base
        num = num * base + r
    return Fraction(num, den) if den > 1 else Fraction(0)


_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71)


def _nth_prime(i):
    if i < len(_PRIMES):
        return _PRIMES[i]
    p = _PRIMES[-1]
    count = len(_PRIMES) - 1
    while count < i:
        p += 2
        if all(p % d for d in range(3, int(p**0.5) + 1, 2)):
            count += 1
    return p


def fd_sample_points(dim, seed=0, budget=512):
    """All-ones, then 64 Halton points in (-1, 1], then seeded random rationals."""
    yield tuple(Fraction(1) for _ in range(dim))
    count = 1
    for i in range(1, 65):
        if count >= budget:
            return
        yield tuple(2 * _van_der_corput(i, _nth_prime(d)) - 1 + Fraction(1, 7 + d) for d in range(dim))
        count += 1
    rng = random.Random(seed)
    while count < budget:
        yield tuple(Fraction(rng.randint(-50, 50), rng.randint(1, 13)) for _ in range(dim))
        count += 1


def check_fd_condition(q: ModelSurface, seed=0, budget=512) -> FdResult:
    """Full-dimensional image of the polarized map ``(z, zeta) -> Phi(z, z, zeta, zeta)``,
    certified by a rank-k complex Jacobian at a sampled rational point. Never
    reports failure; after the budget the result is ``inconclusive``."""
    if not is_bidegree_22(q):
        raise WrongBidegree("(fd) applies to defining functions of bidegree (2, 2)")
    if q.k > 2 * q.n:
        return FdResult("inconclusive", None, 0)
    variables = list(q.z) + [conj_name(v) for v in q.z]
    partials = [[p.derivative(v) for v in variables] for p in q.phi]
    samples = 0
    for pt in fd_sample_points(len(variables), seed, budget):
        samples += 1
        point = {v: x for v, x in zip(variables, pt)}
        jac = [[d.evaluate(point) for d in row] for row in partials]
        if dense_rank(jac) == q.k:
            return FdResult("holds", pt, samples)
    return FdResult("inconclusive", None, samples)


@dataclass(frozen=True)
class HolNondegeneracy:
    nondegenerate: bool
    degree_cap: int
    witness: object = None  # (f, g) tuple of Polys for a tangent (1,0)-field

    @property
    def status(self) -> str:
        return f"nondegenerate_up_to_{self.degree_cap}" if self.nondegenerate else "degenerate"


def _hol_monomials(q: ModelSurface, max_degree):
    """Holomorphic monomial exponents in (z, w) of total degree <= max_degree."""
    t = q.table
    idx = [t.index[v] for v in q.z + q.w]
    out = []

    def rec(pos, remaining, cur):
        if pos == len(idx):
            e = [0] * t.nvars
            for i, k in zip(idx, cur):
                e[i] = k
            out.append(tuple(e))
            return
        for k in range(remaining + 1):
            rec(pos + 1, remaining - k, cur + [k])

    rec(0, max_degree, [])
    return out


def check_holomorphic_nondegeneracy_bounded(q: ModelSurface, degree_cap=None) -> HolNondegeneracy:
    """Search for a nonzero (1,0)-field ``f d/dz + g d/dw`` with polynomial
    coefficients of degree <= cap that is tangent to the surface."""
    d = degree_cap if degree_cap is not None else max(p.degree() for p in q.phi) + 2
    t = q.table
    S = on_surface(q)
    dphi_z = [[p.derivative(v) for v in q.z] for p in q.phi]
    dphi_u = [[p.derivative(v) for v in q.u] for p in q.phi]
    comps = [("f", a, v) for a, v in enumerate(q.z)] + [("g", b, v) for b, v in enumerate(q.w)]
    monos = _hol_monomials(q, d)
    groups = {}
    for kind, idx, var in comps:
        for m in monos:
            key = t.monomial_weight(m) - t.weights[var] if q.homogeneous else 0
            groups.setdefault(key, []).append((kind, idx, m))
    half_i = G_ONE / (2 * I)
    for key in sorted(groups):
        unknowns = []
        residuals = []
        for kind, idx, m in groups[key]:
            img = S.monomial(m)
            for c in (G_ONE, I):
                res = []
                for j in range(q.k):
                    if kind == "f":
                        r = dphi_z[j][idx] * img * (-c)
                    else:
                        r = dphi_u[j][idx] * img * (-c / 2)
                        if idx == j:
                            r = r + img * (c * half_i)
                    res.append(r)
                unknowns.append((kind, idx, m, c))
                residuals.append(res)
        basis = nullspace(_columns_to_rows(residuals, q.k), len(unknowns))
        if basis:
            v = basis[0]
            f = [Poly(t, {}) for _ in q.z]
            g = [Poly(t, {}) for _ in q.w]
            for x, (kind, idx, m, c) in zip(v, unknowns):
                if x:
                    term = Poly.monomial(t, m, c * GaussianRational(x, 0))
                    if kind == "f":
                        f[idx] = f[idx] + term
                    else:
                        g[idx] = g[idx] + term
            return HolNondegeneracy(False, d, (tuple(f), tuple(g)))
    return HolNondegeneracy(True, d, None)


def _columns_to_rows(residuals, k):
    """Unknown-major residual polynomials -> sparse real equation rows."""
    rows = {}
    for col, res in enumerate(residuals):
        for j in range(k):
            for e, c in res[j].terms.items():
                if c.re:
                    rows.setdefault((j, e, 0), {})[col] = c.re
                if c.im:
                    rows.setdefault((j, e, 1), {})[col] = c.im
    return [rows[key] for key in sorted(rows)]
