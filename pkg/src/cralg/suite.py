"""Golden scenarios: reference dimension counts and flows, recomputed.

``run_suite`` returns a ``SuiteReport``; each row carries the claim, the
computed and expected values and a verdict. Reference closed forms that
are themselves wrong are listed separately as discrepancies and do not fail
the suite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import preset_algebra
from .autalg import (
    VectorFieldPoly,
    compute_aut,
    field_vector,
    in_component,
    is_tangent,
    s_exhaustion_report,
)
from .errors import CralgError
from .flow import exponentiate, s_flow_check, verify_flow_tangency
from .linalg import span_rank
from .poly import Poly
from .scalars import GaussianRational
from .surface import (
    algebraize,
    algebraize_twice_equals_tensor,
    check_quadric_nondegeneracy,
    hermitian_form,
    make_surface,
)

SCHEMA_VERSION = 1


@dataclass
class Row:
    id: str
    claim: str
    computed: str
    expected: str
    ok: bool

    @property
    def verdict(self) -> str:
        return "PASS" if self.ok else "FAIL"

    def to_json(self):
        return {
            "id": self.id,
            "claim": self.claim,
            "computed": self.computed,
            "expected": self.expected,
            "verdict": self.verdict,
        }


@dataclass
class SuiteReport:
    rows: list = field(default_factory=list)
    discrepancies: list = field(default_factory=list)
    max_weight: int = None

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.rows)

    def add(self, id, claim, computed, expected, ok=None):
        ok = (computed == expected) if ok is None else ok
        self.rows.append(Row(id, claim, str(computed), str(expected), bool(ok)))

    def render(self) -> str:
        lines = []
        for r in self.rows:
            lines.append(f"[{r.verdict}] {r.id} {r.claim}: {r.computed} = {r.expected}" if r.ok
                         else f"[{r.verdict}] {r.id} {r.claim}: computed {r.computed}, expected {r.expected}")
        if self.discrepancies:
            lines.append("known discrepancies (reference closed forms; not counted):")
            lines += [f"  {d['id']} {d['claim']}: {d['detail']}" for d in self.discrepancies]
        n_ok = sum(r.ok for r in self.rows)
        lines.append(f"{n_ok}/{len(self.rows)} checks passed")
        return "\n".join(lines)

    def to_json(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "command": "paper-suite",
            "max_weight": self.max_weight,
            "rows": [r.to_json() for r in self.rows],
            "discrepancies": list(self.discrepancies),
            "passed": self.passed,
        }


REPORT_SCHEMA = {
    "type": "object",
    "required": ["schema_version", "command", "rows", "discrepancies", "passed"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "command": {"const": "paper-suite"},
        "max_weight": {"type": ["integer", "null"]},
        "passed": {"type": "boolean"},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "claim", "computed", "expected", "verdict"],
                "properties": {
                    "id": {"type": "string"},
                    "claim": {"type": "string"},
                    "computed": {"type": "string"},
                    "expected": {"type": "string"},
                    "verdict": {"enum": ["PASS", "FAIL"]},
                },
            },
        },
        "discrepancies": {"type": "array"},
    },
}


def sphere():
    return make_surface(1, 1, ["z1*zb1"], {"z1": 1, "w1": 2})


def quartic():
    return make_surface(1, 1, ["z1^2*zb1^2"], {"z1": 1, "w1": 4})


def binomial_series(alpha: Fraction, n: int):
    """Coefficients of ``(1 - x)^alpha`` up to ``x^n``."""
    out = [Fraction(1)]
    for m in range(1, n + 1):
        out.append(out[-1] * (alpha - m + 1) / m * -1)
    return out


def _dims(basis, lo, hi):
    return {mu: basis.components[mu].dim if mu in basis.components else 0 for mu in range(lo, hi + 1)}


def _fmt(d):
    return "{" + ", ".join(f"{k}: {v}" for k, v in d.items()) + "}"


def _g4_closed_form_rows(report, q, basis, order=6):
    comp = basis.components.get(4)
    if comp is None or comp.dim != 1:
        report.add("8.g4", "quartic weight-4 flow available", comp.dim if comp else 0, 1)
        return
    x = comp.fields[0]
    t = q.table
    gamma = x.g[0].coefficient(tuple(2 if v == "w1" else 0 for v in t.names))
    gamma = Fraction(int(gamma.re.numerator), int(gamma.re.denominator))
    fl = exponentiate(x, order)
    w_exp = tuple(1 if v == "w1" else 0 for v in t.names)
    z1 = Poly.var(t, "z1")
    w1 = Poly.var(t, "w1")
    ok_w, ok_z = True, True
    half = binomial_series(Fraction(-1, 2), order)
    for m in range(order + 1):
        want_w = w1 ** (m + 1) * _q(gamma**m)
        want_z = z1 * w1**m * _q(half[m] * gamma**m)
        ok_w &= fl.coefficient("w1", m) == want_w
        ok_z &= fl.coefficient("z1", m) == want_z
    report.add("8.g4w", f"quartic weight-4 flow, w-component equals w/(1 - c t w) through t^{order}", ok_w, True)
    report.add("8.g4z", f"quartic weight-4 flow, z-component equals z(1 - c t w)^(-1/2) through t^{order}", ok_z, True)
    # reference closed form for the w-component: w (1 - c t w)^(-1/2); c fixed by the t^1 term
    c = 2 * gamma
    first_bad = None
    for m in range(order + 1):
        want = w1 ** (m + 1) * _q(half[m] * c**m)
        if fl.coefficient("w1", m) != want:
            first_bad = m
            break
    if first_bad is not None:
        report.discrepancies.append(
            {
                "id": "8.g4-stated",
                "claim": "w-component equals w(1 - c t w)^(-1/2)",
                "detail": f"no c matches; with c = {c} the series differ first at t^{first_bad}",
            }
        )
    else:
        report.add("8.g4-stated", "w-component equals w(1 - c t w)^(-1/2)", True, True)


def _q(fr: Fraction):
    return GaussianRational(f"{fr.numerator}/{fr.denominator}", 0)


def run_suite(max_weight=None) -> SuiteReport:
    report = SuiteReport(max_weight=max_weight)
    dual = preset_algebra("dual")
    qs, q4 = sphere(), quartic()

    # 1. sphere
    bs = compute_aut(qs, max_weight)
    report.add("1.dims", "sphere dimensions by weight", _fmt(_dims(bs, -2, 2)), "{-2: 1, -1: 2, 0: 2, 1: 2, 2: 1}")
    report.add("1.total", "sphere aut total dimension", bs.total_dim, 8)

    # 2. quartic
    b4 = compute_aut(q4, max_weight)
    report.add("2.dims", "quartic dimensions at weights -4..4", _fmt(_dims(b4, -4, 4)),
               "{-4: 1, -3: 0, -2: 0, -1: 0, 0: 2, 1: 0, 2: 0, 3: 0, 4: 1}")
    report.add("2.total", "quartic aut total dimension", b4.total_dim, 4)

    # 3. dual sphere
    qsd = algebraize(qs, dual)
    bsd = compute_aut(qsd, max_weight)
    c0 = bsd.components.get(0)
    report.add("3.g0", "dual sphere weight-0 dimension", c0.dim if c0 else 0, 5)
    report.add("3.s0", "dual sphere weight-0 algebra-holomorphic dimension", c0.s_dim if c0 else 0, 4)

    # 4. dual quartic
    q4d = algebraize(q4, dual)
    b4d = compute_aut(q4d, max_weight)
    c0 = b4d.components.get(0)
    report.add("4.g0", "dual quartic weight-0 dimension", c0.dim if c0 else 0, 5)
    report.add("4.s0", "dual quartic weight-0 algebra-holomorphic dimension", c0.s_dim if c0 else 0, 4)
    extra = VectorFieldPoly.for_surface(q4d, [0, "z1_2"], [0, "w1_2"])
    ok = False
    if c0 is not None:
        s_fields = [x for x, f in zip(c0.fields, c0.s_flags) if f]
        vecs = [field_vector(q4d, x, 0) for x in s_fields]
        v = field_vector(q4d, extra, 0)
        ok = (
            is_tangent(q4d, extra)
            and in_component(q4d, extra, 0, c0.fields)
            and span_rank(vecs + [v]) == len(vecs) + 1 == c0.dim
        )
    report.add("4.complement", "weight-0 complement spanned by 2Re(z2 d/dz2 + w2 d/dw2)", ok, True)
    stated = VectorFieldPoly.for_surface(q4d, [0, "z1_2"], [0, "2*w1_2"])
    if not is_tangent(q4d, stated):
        report.discrepancies.append(
            {
                "id": "4.complement-stated",
                "claim": "complement spanned by 2Re(z2 d/dz2 + 2 w2 d/dw2), flow (z2, w2) -> (e^t z2, e^2t w2)",
                "detail": "that field is not tangent (residual of Im w2 is nonzero); "
                "the tangent complement is 2Re(z2 d/dz2 + w2 d/dw2) with flow (e^t z2, e^t w2)",
            }
        )
    c4 = b4d.components.get(4)
    report.add("4.g4", "dual quartic weight-4 dimension", c4.dim if c4 else 0, 2)
    report.add("4.s4", "dual quartic weight-4 algebra-holomorphic dimension", c4.s_dim if c4 else 0, 2)

    # 5. dimension scaling
    for sname in ("dual", "split", "complex_as_real"):
        s = preset_algebra(sname)
        for qname, q in (("sphere", qs), ("quartic", q4)):
            try:
                rep = s_exhaustion_report(q, s, max_weight)
                ok = all(r.s_dim == r.expected_s_dim for r in rep.rows)
                detail = "l * dim g_j at every weight" if ok else "mismatch"
            except CralgError as exc:
                ok, detail = False, str(exc)
            report.add(f"5.{qname}.{sname}", f"{qname} over {sname}: algebra-holomorphic dimensions",
                       detail, "l * dim g_j at every weight", ok)

    # 6. tensor products
    for a, b in (("dual", "split"), ("dual", "dual")):
        s1, s2 = preset_algebra(a), preset_algebra(b)
        for qname, q in (("sphere", qs), ("quartic", q4)):
            report.add(f"6.{qname}.{a}.{b}", f"{qname}: algebraize by {a} then {b} equals tensor algebraization",
                       algebraize_twice_equals_tensor(q, s1, s2), True)

    # 7. quadric nondegeneracy
    for spec in ("reals", "complex_as_real", "dual", "split", "truncated_poly:2", "product_of:2"):
        name, _, p = spec.partition(":")
        s = preset_algebra(name, int(p) if p else None)
        nd = check_quadric_nondegeneracy(hermitian_form(algebraize(qs, s)))
        report.add(f"7.{spec}", f"sphere quadric over {spec} is nondegenerate", nd.nondegenerate, True)

    # 8. flows
    for qname, q, basis in (("sphere", qs, bs), ("quartic", q4, b4), ("dual sphere", qsd, bsd), ("dual quartic", q4d, b4d)):
        fields = list(basis.fields())
        good = sum(bool(verify_flow_tangency(q, exponentiate(x, 6))) for _, x in fields)
        report.add(f"8.tangency.{qname.replace(' ', '_')}", f"{qname}: flows tangent through t^6",
                   f"{good}/{len(fields)}", f"{len(fields)}/{len(fields)}")
    _g4_closed_form_rows(report, q4, b4)
    if c0 is not None:
        s_ok = all(s_flow_check(q4d, dual, exponentiate(x, 6)).ok for x, f in zip(c0.fields, c0.s_flags) if f)
        report.add("8.s-flow", "dual quartic weight-0 algebra-holomorphic flows regroup", s_ok, True)
        report.add("8.non-s-flow", "flow of 2Re(z2 d/dz2 + w2 d/dw2) does not regroup",
                   not s_flow_check(q4d, dual, exponentiate(extra, 6)).ok, True)
    return report
