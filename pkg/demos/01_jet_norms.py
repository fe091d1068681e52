"""Computing Lip(gamma) norms of jets on finite point sets.

A jet assigns to each site a value form and higher "derivative" forms.
The Lip(gamma) norm is the smallest constant bounding all the level
norms and all the Taylor remainder quotients. This script builds the
jet of x^2 on three points and shows the norm at two exponents, then
does the same for an exact cubic.
"""

import numpy as np

from lipjet import LipFunction, SymForm, lip_norm

# the jet of f(x) = x^2 on {-1, 0, 1}: levels (x^2, 2x), gamma = 2
xs = [-1.0, 0.0, 1.0]
jets = [
    [SymForm(0, 1, 1, np.array([x**2])), SymForm(1, 1, 1, np.array([2 * x]))]
    for x in xs
]
f = LipFunction(2.0, [[x] for x in xs], jets)

rep = lip_norm(f, 2.0)
print("x^2 jet on {-1, 0, 1}")
print(f"  Lip(2) norm   = {rep.overall:.12f}   (expected 2)")
for l, (pw, hq) in enumerate(zip(rep.pointwise, rep.holder)):
    print(f"    level {l}: pointwise {pw:.4f}, remainder quotient {hq:.4f}")

rep15 = lip_norm(f, 1.5)
print(f"  Lip(3/2) norm = {rep15.overall:.12f}   (expected 2*sqrt(2) = {2 * np.sqrt(2):.12f})")
print(f"  attained at site pair {rep15.holder_witness[0]}")
print()

# a jet that is an exact cubic: all remainders collapse to powers of the gap
xs = [0.0, 0.5, 1.0, 2.0]
jets = [
    [
        SymForm(0, 1, 1, np.array([x**3])),
        SymForm(1, 1, 1, np.array([3 * x**2])),
        SymForm(2, 1, 1, np.array([6 * x])),
    ]
    for x in xs
]
cubic = LipFunction(3.0, [[x] for x in xs], jets)
rep = lip_norm(cubic, 3.0)
print("x^3 jet on", xs)
print(f"  Lip(3) norm = {rep.overall:.6f}")
print(f"  level-2 pointwise sup = {rep.pointwise[2]:.6f} at site {rep.pointwise_witness[2]}"
      f" (|6x| at x = {cubic.sites[rep.pointwise_witness[2], 0]})")
