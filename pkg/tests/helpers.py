"""Shared constructors for randomized test instances."""

import itertools

import numpy as np

from lipjet import LipFunction, SymForm, diff, lip_norm, scale


def symmetrize(arr, degree):
    if degree < 2:
        return arr
    acc = np.zeros_like(arr)
    perms = list(itertools.permutations(range(degree)))
    for perm in perms:
        acc += np.transpose(arr, perm + (degree,))
    return acc / len(perms)


def random_form(rng, degree, d, m, scale_=1.0):
    raw = rng.standard_normal((d,) * degree + (m,)) * scale_
    return SymForm(degree, d, m, symmetrize(raw, degree))


def random_sites(rng, n, d):
    while True:
        sites = rng.random((n, d))
        if n == 1:
            return sites
        ok = True
        for i in range(n):
            gaps = np.linalg.norm(sites[i + 1 :] - sites[i], axis=1)
            if gaps.size and gaps.min() < 1e-6:
                ok = False
                break
        if ok:
            return sites


def random_jet(rng, d, m, k, n_sites, gamma=None, coeff_scale=1.0):
    if gamma is None:
        gamma = k + float(rng.uniform(0.4, 1.0))
    sites = random_sites(rng, n_sites, d)
    jets = [
        [random_form(rng, l, d, m, coeff_scale) for l in range(k + 1)]
        for _ in range(n_sites)
    ]
    return LipFunction(gamma, sites, jets)


def add(f, g):
    return diff(f, scale(g, -1.0))


def jet_with_norm(rng, d, m, k, n_sites, target, gamma=None):
    """Random jet rescaled so its Lip(gamma) norm equals target."""
    while True:
        f = random_jet(rng, d, m, k, n_sites, gamma=gamma)
        norm = lip_norm(f, f.gamma).overall
        if norm > 1e-9:
            return scale(f, target / norm)


def make_pointwise_instance(rng, use_greedy_cover=False):
    """Hypothesis-satisfying inputs for the level-wise transfer check."""
    from lipjet import delta0_pointwise, greedy_cover

    d = int(rng.integers(1, 4))
    m = int(rng.integers(1, 3))
    k = int(rng.integers(0, 3))
    n = int(rng.integers(2, 13))
    K_target = float(rng.uniform(0.5, 3.0))
    eps = K_target * float(rng.uniform(0.4, 1.5))
    eps0 = float(rng.uniform(0.05, 0.5)) * min(eps, K_target)
    f, g, h = _close_pair_with_norm(rng, d, m, k, n, K_target, eps0)
    K1 = K_target * 1.000001
    K2 = (lip_norm(g, g.gamma).overall) * 1.000001
    l = int(rng.integers(0, k + 1))
    if use_greedy_cover:
        d0 = delta0_pointwise(eps, eps0, K1 + K2, f.gamma, l).value
        B = greedy_cover(f.sites, d0).center_indices
    else:
        B = list(range(n))
    return dict(f=f, g=g, B=B, eps=eps, eps0=eps0, K1=K1, K2=K2, l=l)


def _close_pair_with_norm(rng, d, m, k, n, K_target, eps0):
    f = jet_with_norm(rng, d, m, k, n, K_target)
    h = random_jet(rng, d, m, k, n, gamma=f.gamma)
    h = LipFunction(f.gamma, f.sites, [[h.form(i, l) for l in range(k + 1)] for i in range(n)])
    gap = max(worst_site_gap(add(f, h), f), 1e-300)
    h = scale(h, 0.9 * eps0 / gap)
    g = add(f, h)
    return f, g, h


def make_single_point_instance(rng):
    d = int(rng.integers(1, 4))
    m = int(rng.integers(1, 3))
    k = int(rng.integers(0, 3))
    n = int(rng.integers(2, 13))
    K_target = float(rng.uniform(0.5, 3.0))
    eps = K_target * float(rng.uniform(0.4, 1.5))
    eps0 = float(rng.uniform(0.05, 0.5)) * min(eps, K_target)
    f, g, _ = _close_pair_with_norm(rng, d, m, k, n, K_target, eps0)
    # mix exponents above and below the integer threshold k
    if k >= 1 and rng.random() < 0.5:
        eta = float(rng.uniform(0.05, k))
    else:
        eta = float(rng.uniform(k + 1e-3, f.gamma - 0.05))
    anchor = int(rng.integers(0, n))
    K1 = K_target * 1.000001
    K2 = lip_norm(g, g.gamma).overall * 1.000001
    return dict(f=f, g=g, anchor=anchor, eps=eps, eps0=eps0, K1=K1, K2=K2, eta=eta)


def make_full_instance(rng, use_greedy_cover=False):
    from lipjet import greedy_cover, sandwich_constants

    d = int(rng.integers(1, 4))
    m = int(rng.integers(1, 3))
    k = int(rng.integers(0, 3))
    n = int(rng.integers(2, 13))
    K_target = float(rng.uniform(0.5, 3.0))
    f = jet_with_norm(rng, d, m, k, n, K_target)
    h = jet_with_norm(rng, d, m, k, n, 0.3 * K_target, gamma=f.gamma)
    h = LipFunction(f.gamma, f.sites, [[h.form(i, l) for l in range(k + 1)] for i in range(n)])
    # safe norm cap that survives shrinking h
    K2 = (K_target + lip_norm(h, h.gamma).overall) * 1.000001
    K1 = K_target * 1.000001
    # draw eps relative to the combined cap so the derived constants
    # stay inside the resolvable range
    eps = (K1 + K2) * float(rng.uniform(0.5, 1.5))
    eta = float(rng.uniform(0.05, f.gamma - 0.05))
    consts = sandwich_constants(eps, K1 + K2, f.gamma, eta)
    gap = max(worst_site_gap(add(f, h), f), 1e-300)
    c = min(1.0, 0.9 * consts.eps0 / gap)
    if consts.eps0 < 1e-12 * K_target:
        # below float resolution relative to f; only an exactly zero
        # perturbation keeps the measured gaps under eps0
        c = 0.0
    h = scale(h, c)
    g = add(f, h)
    if use_greedy_cover:
        B = greedy_cover(f.sites, consts.delta0).center_indices
    else:
        B = list(range(n))
    return dict(f=f, g=g, B=B, eps=eps, K1=K1, K2=K2, eta=eta)


def site_gap(f, g, idx):
    worst = 0.0
    for l in range(f.k + 1):
        delta = f.form(idx, l).flat() - g.form(idx, l).flat()
        worst = max(worst, float(np.linalg.norm(delta, ord=2 if f.codim > 1 else None)))
    return worst


def worst_site_gap(f, g, indices=None):
    idxs = range(f.n_sites) if indices is None else indices
    return max(site_gap(f, g, i) for i in idxs)
