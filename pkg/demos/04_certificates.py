"""Certified closeness transfer between two jets.

If two jets of bounded Lip(gamma) norm agree to within eps0 on a
delta0-cover, their difference has small Lip(eta) norm everywhere, for
any eta < gamma, with (delta0, eps0) computed from (eps, K, gamma,
eta) alone. A certificate records the hypothesis checks, the derived
constants, and the measured conclusion.
"""

import numpy as np

from lipjet import (
    LipFunction,
    SymForm,
    certify_full,
    lip_norm,
    plan_approximation,
    sandwich_constants,
    scale,
)

rng = np.random.default_rng(3)

# a Lip(1.8) jet on 12 random planar sites, rescaled to norm 1
sites = rng.random((12, 2))
jets = [
    [SymForm(0, 2, 1, rng.standard_normal(1)), SymForm(1, 2, 1, rng.standard_normal(2))]
    for _ in range(12)
]
f = LipFunction(1.8, sites, jets)
f = scale(f, 1.0 / lip_norm(f, 1.8).overall)

eps, eta = 0.75, 0.9
consts = sandwich_constants(eps, 2.0, 1.8, eta)
print(f"requested: Lip({eta}) closeness {eps} for jets of norm <= 1")
print(f"derived constants: delta0 = {consts.delta0:.3e}, eps0 = {consts.eps0:.3e}")

# perturb f by less than eps0 at every site
g_jets = []
for i in range(12):
    bump0 = SymForm(0, 2, 1, rng.standard_normal(1) * consts.eps0 * 0.2)
    bump1 = SymForm(1, 2, 1, rng.standard_normal(2) * consts.eps0 * 0.2)
    g_jets.append([f.form(i, 0) + bump0, f.form(i, 1) + bump1])
g = LipFunction(1.8, sites, g_jets)

cert = certify_full(f, g, list(range(12)), eps, 1.0, 1.1, eta)
print(f"certificate valid: {cert.valid}")
for name, ok, margin in cert.hypothesis_report["checks"]:
    print(f"  {name}: {'ok' if ok else 'FAILED'}")
print(f"guaranteed Lip({eta}) bound: {cert.guaranteed_bound}")
print(f"measured  Lip({eta}) norm:  {cert.measured_value:.3e}")
print(f"conclusion holds: {cert.conclusion_holds}")
print()

# planning: how many anchor sites would a measurement campaign need?
plan = plan_approximation(sites, eps, 1.0, 1.0, 1.8, eta=eta, cube=True)
print(f"a greedy delta0-cover of these sites needs {plan.N} centers; "
      f"the unit-square ceiling at this radius is {plan.cube_ceiling.m}")
