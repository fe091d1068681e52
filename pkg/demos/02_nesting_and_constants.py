"""The explicit constants: nesting factors and local norm bounds.

A Lip(rho) jet measured at a weaker exponent theta < rho has norm at
most an explicit factor times its Lip(rho) norm. The factor depends
only on (rho, theta, diameter) and never exceeds 1 + e. This script
prints the factor across diameters, shows the two equality instances,
and evaluates the small-ball machinery (the E-recursion and its
feasibility radius).
"""

import numpy as np

from lipjet import (
    BoundQuery,
    counterexample,
    delta_star,
    e_sequence,
    lip_norm,
    local_bound_I,
    local_bound_II,
    nesting_factor,
)

print("nesting factor for rho = 2, theta = 1.5:")
for diam in (0.1, 0.5, 1.0, 2.0, 10.0):
    val = nesting_factor(2.0, 1.5, diam).value
    print(f"  diam {diam:5.1f} -> {val:.6f}")
print()

# two instances where the factor is attained exactly
f, _, _ = counterexample("nesting_a")
ratio = lip_norm(f, 1.5).overall / lip_norm(f, 2.0).overall
print(f"x^2 jet: Lip(3/2)/Lip(2) = {ratio:.12f}, "
      f"factor = {nesting_factor(2.0, 1.5, 2.0).value:.12f}")

f, _, _ = counterexample("nesting_b")
ratio = lip_norm(f, 1.0).overall / lip_norm(f, 2.0).overall
print(f"two-site jet: Lip(1)/Lip(2) = {ratio:.12f}, "
      f"factor = {nesting_factor(2.0, 1.0, 1.0).value:.12f}")
print()

# a jet of norm A that is r0-small at a point stays small nearby;
# the bound on a delta-ball comes from a short recursion
q = BoundQuery(rho=2.5, theta=2.2, A=2.0, r0=0.1, delta=0.2)
print(f"local Lip(2.2) bound on a 0.2-ball (A=2, r0=0.1): "
      f"{local_bound_I(q).value:.6f}")

q = BoundQuery(rho=2.5, theta=0.8, A=2.0, r0=0.1, delta=0.05)
seq = e_sequence(q)
rep = local_bound_II(q)
print(f"E-recursion for theta = 0.8: {[f'{e:.4f}' for e in seq]}")
print(f"local Lip(0.8) bound: {rep.value:.6f}")
star = delta_star(2.0, 0.1, 2.5).value
print(f"feasibility radius delta* = {star:.6f} "
      f"(the closed expansion is valid for delta up to this)")
