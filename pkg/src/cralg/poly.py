"""Sparse exact polynomials in holomorphic variables, their formal conjugates
and real variables.

Exponent vectors are laid out as ``(hol..., conj..., real...)``. A conjugate
variable is an independent formal symbol paired with its holomorphic partner;
``Poly.conjugate`` swaps the pair and conjugates coefficients, so a polynomial
is real exactly when it is fixed by ``conjugate``.
"""

from __future__ import annotations

import re
from collections import defaultdict

from .errors import AlgebraMismatch, TableMismatch, UnboundVariable
from .scalars import G_ONE, G_ZERO, GaussianRational, gauss, render_gaussian

_PREFIX = re.compile(r"^([A-Za-z]+)(.*)$")


def conj_name(name: str) -> str:
    """``z1 -> zb1``, ``w2_1 -> wb2_1``, ``Z -> Zb``."""
    m = _PREFIX.match(name)
    if not m:
        raise ValueError(f"variable names must start with a letter: {name!r}")
    return f"{m.group(1)}b{m.group(2)}"


class VarTable:
    """Ordered variable names with weights; conjugates inherit their partner's weight."""

    def __init__(self, hol_vars=(), real_vars=(), weights=None):
        self.hol = tuple(hol_vars)
        self.conj = tuple(conj_name(v) for v in self.hol)
        self.real = tuple(real_vars)
        self.names = self.hol + self.conj + self.real
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"variable names are not unique: {self.names}")
        self.nh = len(self.hol)
        self.nr = len(self.real)
        self.nvars = len(self.names)
        self.index = {n: i for i, n in enumerate(self.names)}
        weights = dict(weights or {})
        w = []
        for i, n in enumerate(self.names):
            base = self.hol[i - self.nh] if self.nh <= i < 2 * self.nh else n
            wt = weights.get(base, 1)
            if int(wt) != wt or wt < 1:
                raise ValueError(f"weight of {base} must be a positive integer")
            w.append(int(wt))
        self.weight_vec = tuple(w)
        self.weights = {n: self.weight_vec[i] for i, n in enumerate(self.names)}
        nh = self.nh
        self.partner = tuple(
            i + nh if i < nh else (i - nh if i < 2 * nh else i) for i in range(self.nvars)
        )
        self._key = (self.hol, self.real, self.weight_vec)

    def __eq__(self, other):
        return isinstance(other, VarTable) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"VarTable(hol={list(self.hol)}, real={list(self.real)})"

    def kind(self, name: str) -> str:
        i = self.index[name]
        if i < self.nh:
            return "hol"
        if i < 2 * self.nh:
            return "conj"
        return "real"

    def extend(self, hol_vars=(), real_vars=(), weights=None) -> "VarTable":
        w = {n: self.weights[n] for n in self.hol + self.real}
        w.update(weights or {})
        return VarTable(self.hol + tuple(hol_vars), self.real + tuple(real_vars), w)

    def monomial_weight(self, exp) -> int:
        return sum(e * w for e, w in zip(exp, self.weight_vec))

    def zero_exp(self):
        return (0,) * self.nvars


def _same_table(a, b):
    if a.table is not b.table and a.table != b.table:
        raise TableMismatch(f"{a.table!r} vs {b.table!r}")


def _exp_add(e1, e2):
    return tuple([x + y for x, y in zip(e1, e2)])


def monomial_order_key(exp):
    """Graded lexicographic key over the (hol, conj, real) layout."""
    return (sum(exp), exp)


class Poly:
    """Immutable sparse polynomial with ``GaussianRational`` coefficients."""

    __slots__ = ("table", "terms")

    def __init__(self, table: VarTable, terms=None):
        self.table = table
        if terms is None:
            self.terms = {}
        else:
            self.terms = {e: c for e, c in terms.items() if c}

    @classmethod
    def _raw(cls, table, terms):
        p = cls.__new__(cls)
        p.table = table
        p.terms = terms
        return p

    @classmethod
    def const(cls, table, c) -> "Poly":
        c = gauss(c)
        return cls._raw(table, {table.zero_exp(): c} if c else {})

    @classmethod
    def var(cls, table, name: str) -> "Poly":
        if name not in table.index:
            raise UnboundVariable(name)
        e = [0] * table.nvars
        e[table.index[name]] = 1
        return cls._raw(table, {tuple(e): G_ONE})

    @classmethod
    def monomial(cls, table, exp, c=G_ONE) -> "Poly":
        c = gauss(c)
        return cls._raw(table, {tuple(exp): c} if c else {})

    # ---------------------------------------------------------------- arithmetic

    def _coerce(self, other):
        if isinstance(other, Poly):
            _same_table(self, other)
            return other
        return Poly.const(self.table, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Poly._raw(self.table, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.table, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = gauss(other)
            if not c:
                return Poly._raw(self.table, {})
            return Poly._raw(self.table, {e: v * c for e, v in self.terms.items()})
        _same_table(self, other)
        if len(self.terms) < len(other.terms):
            a, b = self.terms, other.terms
        else:
            a, b = other.terms, self.terms
        out = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple([x + y for x, y in zip(e1, e2)])
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return Poly._raw(self.table, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = gauss(other)
        return self * (G_ONE / c)

    def __pow__(self, k: int):
        if int(k) != k or k < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        out = Poly.const(self.table, 1)
        base = self
        k = int(k)
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.table == other.table and self.terms == other.terms
        try:
            return self == Poly.const(self.table, other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.table, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # ---------------------------------------------------------------- structure

    def conjugate(self) -> "Poly":
        part = self.table.partner
        return Poly._raw(
            self.table,
            {tuple([e[part[i]] for i in range(len(e))]): c.conjugate() for e, c in self.terms.items()},
        )

    def is_real(self) -> bool:
        return self.conjugate() == self

    def real_part(self) -> "Poly":
        return (self + self.conjugate()) * GaussianRational("1/2", 0)

    def imag_part(self) -> "Poly":
        return (self - self.conjugate()) * GaussianRational(0, "-1/2")

    def derivative(self, name: str) -> "Poly":
        if name not in self.table.index:
            raise UnboundVariable(name)
        i = self.table.index[name]
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1 :]
                out[ne] = c * k
        return Poly._raw(self.table, out)

    def weights(self) -> set:
        mw = self.table.monomial_weight
        return {mw(e) for e in self.terms}

    def is_homogeneous(self, weight=None) -> bool:
        ws = self.weights()
        if not ws:
            return True
        return len(ws) == 1 and (weight is None or ws == {weight})

    def grade_decompose(self) -> dict:
        mw = self.table.monomial_weight
        parts = defaultdict(dict)
        for e, c in self.terms.items():
            parts[mw(e)][e] = c
        return {w: Poly._raw(self.table, t) for w, t in sorted(parts.items())}

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, names) -> int:
        idx = [self.table.index[n] for n in names]
        return max((sum(e[i] for i in idx) for e in self.terms), default=-1)

    def variables(self) -> set:
        used = set()
        for e in self.terms:
            used.update(i for i, k in enumerate(e) if k)
        return {self.table.names[i] for i in sorted(used)}

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), G_ZERO)

    def truncate(self, name: str, max_degree: int) -> "Poly":
        """Drop every term whose degree in ``name`` exceeds ``max_degree``."""
        i = self.table.index[name]
        return Poly._raw(self.table, {e: c for e, c in self.terms.items() if e[i] <= max_degree})

    def coefficients_in(self, name: str) -> dict:
        """Split by the power of ``name``: ``{k: coefficient poly}``."""
        i = self.table.index[name]
        parts = defaultdict(dict)
        for e, c in self.terms.items():
            parts[e[i]][e[:i] + (0,) + e[i + 1 :]] = c
        return {k: Poly._raw(self.table, t) for k, t in sorted(parts.items())}

    # ---------------------------------------------------------------- substitution

    def substitute(self, bindings, target: VarTable = None) -> "Poly":
        """Replace variables by polynomials over ``target``.

        Conjugate bindings default to the conjugates of the holomorphic ones.
        A variable without a binding maps to the same-named variable of
        ``target``; if there is none, ``UnboundVariable`` is raised.
        """
        target = target or self.table
        src = self.table
        images = [None] * src.nvars
        used = set()
        for e in self.terms:
            used.update(i for i, k in enumerate(e) if k)
        for i in used:
            name = src.names[i]
            img = bindings.get(name)
            if img is None and src.nh <= i < 2 * src.nh:
                partner = src.names[i - src.nh]
                if partner in bindings:
                    img = bindings[partner].conjugate()
            if img is None:
                if name not in target.index:
                    raise UnboundVariable(name)
                img = Poly.var(target, name)
            elif not isinstance(img, Poly):
                img = Poly.const(target, img)
            elif img.table != target:
                raise TableMismatch(f"binding for {name} is over a different table")
            images[i] = img
        powers = {}

        def power(i, k):
            key = (i, k)
            p = powers.get(key)
            if p is None:
                p = images[i] if k == 1 else power(i, k - 1) * images[i]
                powers[key] = p
            return p

        out = Poly._raw(target, {})
        for e, c in self.terms.items():
            term = Poly.const(target, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def rename(self, mapping, target: VarTable) -> "Poly":
        """Pure variable renaming onto ``target`` (conjugates follow their partners)."""
        src = self.table
        pos = []
        for i, n in enumerate(src.names):
            if src.nh <= i < 2 * src.nh:
                new = conj_name(mapping.get(src.hol[i - src.nh], src.hol[i - src.nh]))
            else:
                new = mapping.get(n, n)
            pos.append(target.index.get(new))
        out = {}
        for e, c in self.terms.items():
            ne = [0] * target.nvars
            for i, k in enumerate(e):
                if k:
                    if pos[i] is None:
                        raise UnboundVariable(src.names[i])
                    ne[pos[i]] += k
            out[tuple(ne)] = c
        return Poly._raw(target, out)

    def evaluate(self, point: dict):
        """Evaluate at exact values; every variable that occurs must be given."""
        total = G_ZERO
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    v = v * gauss(point[self.table.names[i]]) ** k
            total = total + v
        return total

    # ---------------------------------------------------------------- rendering

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: monomial_order_key(t[0]), reverse=True)

    def __str__(self):
        return render_poly(self)

    def __repr__(self):
        return f"Poly({render_poly(self)!r})"


def render_monomial(table: VarTable, exp) -> str:
    parts = []
    for i, k in enumerate(exp):
        if k == 1:
            parts.append(table.names[i])
        elif k:
            parts.append(f"{table.names[i]}^{k}")
    return "*".join(parts)


def render_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    out = []
    for e, c in p.sorted_terms():
        m = render_monomial(p.table, e)
        if not m:
            s = render_gaussian(c)
        elif c == G_ONE:
            s = m
        elif c == -G_ONE:
            s = "-" + m
        else:
            s = f"{render_gaussian(c)}*{m}"
        if not out:
            out.append(s)
        elif s.startswith("-"):
            out.append(" - " + s[1:])
        else:
            out.append(" + " + s)
    return "".join(out)


# ---------------------------------------------------------------- function-style aliases


def conjugate_poly(p: Poly) -> Poly:
    return p.conjugate()


def substitute(p: Poly, bindings, target: VarTable = None) -> Poly:
    return p.substitute(bindings, target)


def partial_derivative(p: Poly, var: str) -> Poly:
    return p.derivative(var)


def grade_decompose(p: Poly) -> dict:
    return p.grade_decompose()


def is_identically_zero(p: Poly) -> bool:
    return p.is_zero()


# ---------------------------------------------------------------- algebra-valued polynomials


def component_name(name: str, m: int) -> str:
    """Scalar coordinate ``m`` (0-based basis index) of an algebra variable."""
    return f"{name}_{m + 1}"


def expanded_table(table: VarTable, dim: int) -> VarTable:
    hol = [component_name(v, m) for v in table.hol for m in range(dim)]
    real = [component_name(v, m) for v in table.real for m in range(dim)]
    weights = {component_name(v, m): table.weights[v] for v in table.hol + table.real for m in range(dim)}
    return VarTable(hol, real, weights)


class AlgebraPoly:
    """Polynomial in algebra-valued variables with coefficients in the complexified algebra."""

    __slots__ = ("table", "algebra", "terms")

    def __init__(self, table: VarTable, algebra, terms=None):
        self.table = table
        self.algebra = algebra
        self.terms = {}
        for e, c in (terms or {}).items():
            if c.algebra is not algebra and c.algebra != algebra:
                raise AlgebraMismatch("coefficient from a different algebra")
            if not c.is_zero():
                self.terms[tuple(e)] = c

    @classmethod
    def from_poly(cls, p: Poly, algebra) -> "AlgebraPoly":
        """Scalar coefficients ``c`` become ``c * 1``."""
        zero = [G_ZERO] * (algebra.dim - 1)
        return cls(p.table, algebra, {e: algebra.celement([c] + zero) for e, c in p.terms.items()})

    def __add__(self, other):
        _same_table(self, other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return AlgebraPoly(self.table, self.algebra, out)

    def __sub__(self, other):
        return self + other * (-1)

    def __mul__(self, other):
        if not isinstance(other, AlgebraPoly):
            return AlgebraPoly(self.table, self.algebra, {e: c * other for e, c in self.terms.items()})
        _same_table(self, other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _exp_add(e1, e2)
                v = c1 * c2
                out[e] = out[e] + v if e in out else v
        return AlgebraPoly(self.table, self.algebra, out)

    def conjugate(self) -> "AlgebraPoly":
        from .algebra import conjugate as aconj

        part = self.table.partner
        return AlgebraPoly(
            self.table,
            self.algebra,
            {tuple(e[part[i]] for i in range(len(e))): aconj(c) for e, c in self.terms.items()},
        )


def _alg_mul(alg, a, b, table):
    """Product of two algebra-valued polynomials given as scalar-component tuples."""
    l = alg.dim
    out = [None] * l
    for i in range(l):
        if not a[i].terms:
            continue
        for j in range(l):
            if not b[j].terms:
                continue
            ab = a[i] * b[j]
            for k, v in alg.product_terms(i, j):
                t = ab * v
                out[k] = t if out[k] is None else out[k] + t
    zero = Poly._raw(table, {})
    return tuple(zero if o is None else o for o in out)


def algebra_product(alg, a, b):
    """Multiply two component tuples through the structure constants."""
    return _alg_mul(alg, a, b, a[0].table)


def scalar_expand(p: AlgebraPoly, target: VarTable = None):
    """Expand every algebra variable into its ``l`` scalar coordinates.

    Returns the ``l`` coordinate polynomials over the expanded table (names
    ``<var>_<m>`` with ``m`` 1-based); ``sum_k out[k] * e_k`` reproduces ``p``.
    """
    alg = p.algebra
    l = alg.dim
    src = p.table
    target = target or expanded_table(src, l)
    zero = Poly._raw(target, {})
    images = []
    for i, name in enumerate(src.names):
        if src.nh <= i < 2 * src.nh:
            base = src.hol[i - src.nh]
            comps = tuple(Poly.var(target, conj_name(component_name(base, m))) for m in range(l))
        else:
            comps = tuple(Poly.var(target, component_name(name, m)) for m in range(l))
        images.append(comps)
    powers = {}

    def power(i, k):
        key = (i, k)
        v = powers.get(key)
        if v is None:
            v = images[i] if k == 1 else _alg_mul(alg, power(i, k - 1), images[i], target)
            powers[key] = v
        return v

    out = [zero] * l
    for e, c in p.terms.items():
        term = tuple(Poly.const(target, x) for x in c.coeffs)
        for i, k in enumerate(e):
            if k:
                term = _alg_mul(alg, term, power(i, k), target)
        out = [o + t for o, t in zip(out, term)]
    return tuple(out)
