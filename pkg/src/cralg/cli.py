"""Command-line front end.

    cralg algebra validate <file|preset>
    cralg surface validate <file>
    cralg algebraize <surface> --algebra <file|preset>
    cralg aut <surface> [--algebra A] [--max-weight M]
    cralg s-report <surface> --algebra A [--max-weight M]
    cralg flow <surface> --field <index> [--order N] [--algebra A] [--max-weight M]
    cralg paper-suite [--max-weight M]

``--json`` switches any command to JSON output. ``CRALG_SEED`` overrides the
sampling seed of the full-image check. Errors print one line
``error: <Code>: <message>`` on stderr and exit with status 2.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .algebra import nilpotency_index, validate_algebra
from .autalg import compute_aut, s_exhaustion_report
from .errors import CralgError, InvalidParam, WrongBidegree
from .flow import DEFAULT_ORDER, exponentiate, s_flow_check, verify_flow_tangency
from .parse import parse_surface_text, render_algebra_text, resolve_algebra
from .poly import render_poly
from .suite import SCHEMA_VERSION, run_suite
from .surface import (
    algebraize,
    check_fd_condition,
    check_finite_type_linear,
    check_holomorphic_nondegeneracy_bounded,
    check_quadric_nondegeneracy,
    hermitian_form,
    is_bidegree_22,
)


@dataclass
class SessionConfig:
    command: str
    inputs: list
    algebra: str = None
    max_weight: int = None
    order: int = DEFAULT_ORDER
    field: int = None
    output: str = "text"
    seed: int = 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


class _UsageError(Exception):
    code = "UsageError"


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--seed", type=int, default=None, help="sampling seed (default 0 or $CRALG_SEED)")

    p = _Parser(prog="cralg", description="Automorphism algebras of algebraized model surfaces.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    alg = sub.add_parser("algebra", help="algebra files")
    alg_sub = alg.add_subparsers(dest="action", required=True, parser_class=_Parser)
    av = alg_sub.add_parser("validate", help="check the algebra axioms", parents=[common])
    av.add_argument("source", help="algebra file or preset name (e.g. dual, truncated_poly:3)")

    surf = sub.add_parser("surface", help="surface files")
    surf_sub = surf.add_subparsers(dest="action", required=True, parser_class=_Parser)
    sv = surf_sub.add_parser("validate", help="parse, validate and diagnose a surface", parents=[common])
    sv.add_argument("surface")

    a = sub.add_parser("algebraize", help="algebraize a surface", parents=[common])
    a.add_argument("surface")
    a.add_argument("--algebra", required=True)

    au = sub.add_parser("aut", help="graded automorphism algebra", parents=[common])
    au.add_argument("surface")
    au.add_argument("--algebra", default=None, help="algebraize first and flag algebra-holomorphic fields")
    au.add_argument("--max-weight", type=int, default=None)

    sr = sub.add_parser("s-report", help="algebra-holomorphic exhaustion table", parents=[common])
    sr.add_argument("surface")
    sr.add_argument("--algebra", required=True)
    sr.add_argument("--max-weight", type=int, default=None)

    fl = sub.add_parser("flow", help="truncated flow of a basis field", parents=[common])
    fl.add_argument("surface")
    fl.add_argument("--field", type=int, required=True, help="0-based index into the aut basis listing")
    fl.add_argument("--order", type=int, default=DEFAULT_ORDER)
    fl.add_argument("--algebra", default=None)
    fl.add_argument("--max-weight", type=int, default=None)

    ps = sub.add_parser("paper-suite", help="recompute the reference dimension counts and flows", parents=[common])
    ps.add_argument("--max-weight", type=int, default=None)
    return p


def _config(ns) -> SessionConfig:
    seed = ns.seed
    if seed is None:
        env = os.environ.get("CRALG_SEED")
        if env is not None:
            try:
                seed = int(env)
            except ValueError:
                raise InvalidParam(f"CRALG_SEED must be an integer, got {env!r}") from None
        else:
            seed = 0
    command = ns.command if not getattr(ns, "action", None) else f"{ns.command}-{ns.action}"
    inputs = [getattr(ns, k) for k in ("source", "surface") if getattr(ns, k, None)]
    return SessionConfig(
        command=command,
        inputs=inputs,
        algebra=getattr(ns, "algebra", None),
        max_weight=getattr(ns, "max_weight", None),
        order=getattr(ns, "order", DEFAULT_ORDER),
        field=getattr(ns, "field", None),
        output="json" if ns.json else "text",
        seed=seed,
    )


def _read_surface(path):
    with open(path) as fh:
        return parse_surface_text(fh.read())


def surface_json(q) -> dict:
    out = {
        "n": q.n,
        "k": q.k,
        "z": list(q.z),
        "w": list(q.w),
        "weights": {v: q.weight(v) for v in q.z + q.w},
        "equations": [{"lhs": f"Im{w}", "rhs": render_poly(p)} for w, p in zip(q.w, q.phi)],
        "homogeneous": q.homogeneous,
    }
    if q.origin is not None:
        out["algebra"] = q.origin.algebra.name
    return out


def _algebra_json(a) -> dict:
    return {
        "name": a.name,
        "dim": a.dim,
        "basis": list(a.basis_labels),
        "products": render_algebra_text(a).splitlines()[2:],
    }


def cmd_algebra_validate(cfg):
    a = resolve_algebra(cfg.inputs[0])
    validate_algebra(a.structure_constants, a.dim)
    nil = [lab for i, lab in enumerate(a.basis_labels) if i and nilpotency_index(a.basis_element(i)) is not None]
    if cfg.output == "json":
        return {"schema_version": SCHEMA_VERSION, "command": "algebra-validate", "valid": True,
                "algebra": _algebra_json(a), "nilpotent_basis_elements": nil}, 0
    text = render_algebra_text(a) + "valid: associative, commutative, unital\n"
    if nil:
        text += "nilpotent basis elements: " + ", ".join(nil) + "\n"
    return text, 0


def _diagnostics(q, seed):
    diag = {"finite_type_linear": check_finite_type_linear(q)}
    try:
        nd = check_quadric_nondegeneracy(hermitian_form(q))
        diag["quadric_independent"] = nd.independent
        diag["quadric_trivial_kernel"] = nd.trivial_kernel
    except WrongBidegree:
        pass
    if is_bidegree_22(q):
        diag["fd"] = check_fd_condition(q, seed=seed).status
    diag["holomorphic_nondegeneracy"] = check_holomorphic_nondegeneracy_bounded(q).status
    return diag


def cmd_surface_validate(cfg):
    q = _read_surface(cfg.inputs[0])
    diag = _diagnostics(q, cfg.seed)
    if cfg.output == "json":
        return {"schema_version": SCHEMA_VERSION, "command": "surface-validate",
                "surface": surface_json(q), "diagnostics": diag}, 0
    lines = [str(q), f"CR type: ({q.n}, {q.k})"]
    lines += [f"{k}: {str(v).lower() if isinstance(v, bool) else v}" for k, v in diag.items()]
    return "\n".join(lines) + "\n", 0


def cmd_algebraize(cfg):
    q = _read_surface(cfg.inputs[0])
    s = resolve_algebra(cfg.algebra)
    qa = algebraize(q, s)
    if cfg.output == "json":
        return {"schema_version": SCHEMA_VERSION, "command": "algebraize", "surface": surface_json(qa)}, 0
    return str(qa) + "\n", 0


def _aut_for(cfg):
    q = _read_surface(cfg.inputs[0])
    if cfg.algebra:
        q = algebraize(q, resolve_algebra(cfg.algebra))
    return q, compute_aut(q, cfg.max_weight)


def aut_json(basis) -> dict:
    weights = []
    for mu, c in sorted(basis.components.items()):
        weights.append(
            {
                "weight": mu,
                "dim": c.dim,
                "s_dim": c.s_dim,
                "basis": [str(x) for x in c.fields],
                "s_basis_indices": c.s_basis_indices,
            }
        )
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "aut",
        "surface": surface_json(basis.surface),
        "weights": weights,
        "total_dim": basis.total_dim,
        "cap": basis.cap,
        "cap_disclosure": basis.cap_disclosure(),
    }


def aut_text(basis) -> str:
    has_s = basis.algebra is not None
    lines = [str(basis.surface), ""]
    lines.append("weight  dim" + ("  s_dim" if has_s else ""))
    for mu, c in sorted(basis.components.items()):
        lines.append(f"{mu:>6}  {c.dim:>3}" + (f"  {c.s_dim:>5}" if has_s else ""))
    lines.append(f"total   {basis.total_dim}")
    lines.append("")
    lines.append("basis:")
    idx = 0
    for mu, c in sorted(basis.components.items()):
        for i, x in enumerate(c.fields):
            tag = (" [S]" if c.s_flags[i] else "") if has_s else ""
            lines.append(f"  #{idx} weight {mu}{tag}: {x}")
            idx += 1
    lines.append(basis.cap_disclosure())
    return "\n".join(lines) + "\n"


def cmd_aut(cfg):
    _, basis = _aut_for(cfg)
    return (aut_json(basis) if cfg.output == "json" else aut_text(basis)), 0


def cmd_s_report(cfg):
    q = _read_surface(cfg.inputs[0])
    s = resolve_algebra(cfg.algebra)
    rep = s_exhaustion_report(q, s, cfg.max_weight)
    if cfg.output == "json":
        return {
            "schema_version": SCHEMA_VERSION,
            "command": "s-report",
            "algebra": s.name,
            "rows": [
                {"weight": r.weight, "base_dim": r.base_dim, "expected_s_dim": r.expected_s_dim,
                 "s_dim": r.s_dim, "full_dim": r.full_dim, "exhausted": r.exhausted}
                for r in rep.rows
            ],
            "exhausted": rep.exhausted,
            "cap": rep.cap,
            "cap_disclosure": rep.cap_disclosure,
        }, 0
    lines = [f"algebra {s.name} (dim {s.dim})", "weight  dim_base  l*dim_base  s_dim  dim  exhausted"]
    for r in rep.rows:
        lines.append(
            f"{r.weight:>6}  {r.base_dim:>8}  {r.expected_s_dim:>10}  {r.s_dim:>5}  {r.full_dim:>3}  "
            f"{'yes' if r.exhausted else 'no'}"
        )
    lines.append(f"exhausted overall: {'yes' if rep.exhausted else 'no'}")
    lines.append(rep.cap_disclosure)
    return "\n".join(lines) + "\n", 0


def cmd_flow(cfg):
    q, basis = _aut_for(cfg)
    fields = [x for _, x in basis.fields()]
    if not 0 <= cfg.field < len(fields):
        raise InvalidParam(f"field index {cfg.field} out of range 0..{len(fields) - 1}")
    if cfg.order < 1:
        raise InvalidParam("flow order must be at least 1")
    fl = exponentiate(fields[cfg.field], cfg.order)
    tangent = verify_flow_tangency(q, fl)
    regroup = s_flow_check(q, q.origin.algebra, fl) if q.origin is not None else None
    if cfg.output == "json":
        out = {"schema_version": SCHEMA_VERSION, "command": "flow", **fl.to_json(),
               "tangent": tangent.ok, "first_bad_order": tangent.first_bad_order}
        if regroup is not None:
            out["algebra_holomorphic"] = regroup.ok
        return out, 0
    lines = [f"field: {fl.field}", fl.render(), f"tangent through t^{fl.order}: {'yes' if tangent else 'no'}"]
    if regroup is not None:
        lines.append(f"algebra-holomorphic through t^{fl.order}: {'yes' if regroup else 'no'}")
    return "\n".join(lines) + "\n", 0


def cmd_paper_suite(cfg):
    rep = run_suite(cfg.max_weight)
    code = 0 if rep.passed else 1
    if cfg.output == "json":
        return rep.to_json(), code
    return rep.render() + "\n", code


COMMANDS = {
    "algebra-validate": cmd_algebra_validate,
    "surface-validate": cmd_surface_validate,
    "algebraize": cmd_algebraize,
    "aut": cmd_aut,
    "s-report": cmd_s_report,
    "flow": cmd_flow,
    "paper-suite": cmd_paper_suite,
}


def main(argv=None) -> int:
    try:
        ns = build_parser().parse_args(argv)
        cfg = _config(ns)
        out, code = COMMANDS[cfg.command](cfg)
    except (CralgError, _UsageError) as exc:
        print(f"error: {exc.code}: {_one_line(exc)}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: IOError: {_one_line(exc)}", file=sys.stderr)
        return 2
    if isinstance(out, dict):
        out = json.dumps(out, indent=2, sort_keys=True) + "\n"
    sys.stdout.write(out)
    return code


def _one_line(exc) -> str:
    return " ".join(str(exc).split())


if __name__ == "__main__":
    sys.exit(main())
