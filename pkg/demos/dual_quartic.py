"""The quartic Im w = |z|^4 over the dual numbers.

Algebraizing doubles the variables. Most tangent fields come from fields
that are polynomial in the algebra variables, but at weight 0 one field
does not.

Run: python demos/dual_quartic.py
"""

from cralg import (
    VectorFieldPoly,
    algebraize,
    compute_aut,
    exponentiate,
    make_surface,
    preset_algebra,
    s_exhaustion_report,
    s_flow_check,
    tangency_residual,
)

quartic = make_surface(1, 1, ["z1^2*zb1^2"], {"z1": 1, "w1": 4})
dual = preset_algebra("dual")

# %% The algebraized surface lives in four complex variables
q = algebraize(quartic, dual)
print(q)

# %% Dimensions, and how many fields are polynomial in Z = z1_1 + z1_2 n
aut = compute_aut(q)
for mu in sorted(aut.dims):
    c = aut.components[mu]
    print(f"weight {mu:>2}: dim {c.dim}, algebra-holomorphic {c.s_dim}")

# %% The exhaustion table: l * dim of the base component against the full one
rep = s_exhaustion_report(quartic, dual)
for r in rep.rows:
    if not r.full_dim:
        continue
    print(r.weight, r.expected_s_dim, r.s_dim, r.full_dim, "exhausted" if r.exhausted else "")

# %% The extra weight-0 field scales z1_2 and w1_2 together
extra = VectorFieldPoly.for_surface(q, [0, "z1_2"], [0, "w1_2"])
print(extra, [str(r) for r in tangency_residual(q, extra)])
print("flow regroups into algebra variables:", bool(s_flow_check(q, dual, exponentiate(extra, 4))))

# %% Doubling the w1_2 coefficient breaks tangency
wrong = VectorFieldPoly.for_surface(q, [0, "z1_2"], [0, "2*w1_2"])
print(wrong, "residual on Im w1_2:", tangency_residual(q, wrong)[1])
