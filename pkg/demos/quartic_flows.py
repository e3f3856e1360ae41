"""Truncated flows of the quartic's tangent fields, compared with closed forms.

Run: python demos/quartic_flows.py
"""

from cralg import compute_aut, exponentiate, make_surface, verify_flow_tangency

quartic = make_surface(1, 1, ["z1^2*zb1^2"], {"z1": 1, "w1": 4})
aut = compute_aut(quartic)

# %% Weights -4, 0, 4
for mu, x in aut.fields():
    print(f"weight {mu}: {x}")

# %% The weight-4 field gives w/(1 - c t w) and z (1 - c t w)^(-1/2)
(x,) = aut.components[4].fields
flow = exponentiate(x, 5)
print(flow.render())
print("tangent through t^5:", bool(verify_flow_tangency(quartic, flow)))

# %% Coefficients of t^m in the w-component are c^m w^(m+1)
for m in range(6):
    print(m, flow.coefficient("w1", m))
