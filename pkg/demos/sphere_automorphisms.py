"""Graded automorphism algebra of the sphere Im w = |z|^2.

Run: python demos/sphere_automorphisms.py
"""

from cralg import compute_aut, exponentiate, make_surface, verify_flow_tangency

# %% The surface, with z of weight 1 and w of weight 2
sphere = make_surface(1, 1, ["z1*zb1"], {"z1": 1, "w1": 2})
print(sphere)

# %% Polynomial tangent fields, one weight at a time
aut = compute_aut(sphere)
for mu, dim in sorted(aut.dims.items()):
    print(f"weight {mu:>2}: dim {dim}")
print("total:", aut.total_dim)
print(aut.cap_disclosure())

# %% A basis, printed as real fields 2Re(...)
for mu, x in aut.fields():
    print(f"{mu:>2}  {x}")

# %% Every basis field integrates to a flow that stays on the surface
for mu, x in aut.fields():
    assert verify_flow_tangency(sphere, exponentiate(x, 4))
print("all flows tangent through t^4")
