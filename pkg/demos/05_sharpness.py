"""Why the hypotheses cannot be weakened.

Two generated families show the transfer theorem is sharp: the target
exponent must be strictly below gamma, and the agreement tolerance
eps0 must be derived from eps rather than chosen freely.
"""

import numpy as np

from lipjet import certify_full, counterexample, diff, lip_norm

# 1. eta = gamma fails. Jets psi, phi on {0, 1/N} with psi = K0 x and
# phi = -K0 x sampled at the two sites: they agree exactly at 0, each
# has Lip(1) norm K0, but the difference has Lip(1) norm 2 K0 no
# matter how large N is.
print("target exponent at gamma:")
for N in (10, 100, 1000):
    f, g, expected = counterexample("eta_equals_gamma", K0=1.0, eps=0.5, N=N)
    measured = lip_norm(diff(f, g), 1.0).overall
    print(f"  N = {N:5d}: site gap at cover point 0.0, "
          f"Lip(1) difference = {measured} (eps was 0.5)")
try:
    certify_full(f, g, [0], 0.5, 1.0, 1.0, 1.0)
except ValueError as exc:
    print(f"  certify_full refuses eta = gamma: {exc}")
print()

# 2. eps0 must shrink with eps. Anchoring at 0 with a fixed agreement
# tolerance eps0 leaves room for a two-site jet whose Lip(1/2)
# difference is sqrt(2 eps0 K0), which beats any eps with
# eps^2 < 2 eps0 K0.
print("fixed agreement tolerance:")
for eps0 in (0.1, 0.05, 0.02):
    f, g, expected = counterexample("eps0_dependence", eps0=eps0, eps=0.25, K0=2.0)
    measured = lip_norm(diff(f, g), 0.5).overall
    print(f"  eps0 = {eps0:.2f}: Lip(1/2) difference = {measured:.6f} "
          f"= sqrt(2*eps0*K0) = {np.sqrt(2 * eps0 * 2.0):.6f}")
print("so eps0 has to be tied to eps; the derived constants do exactly that")
