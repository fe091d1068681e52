"""Jet families on finite site sets and their Lipschitz norms.

A jet of regularity gamma over a finite set of sites in R^d assigns to
each site the forms (psi^(0), ..., psi^(k)) with k = ceil(gamma) - 1.
The Lip(gamma) norm is the smallest M bounding every level pointwise
and every Taylor-type remainder by M * ||y - x||^(gamma - l).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._config import worker_count
from .tensor_core import SymForm, apply_form, contract, op_norm

# Construction rejects site pairs closer than this (relative to the
# ambient coordinate scale): Holder quotients blow up at coincident sites.
MIN_SITE_SEPARATION = 1e-9


def level_count(gamma):
    """k such that gamma lies in (k, k+1]."""
    if not (gamma > 0):
        raise ValueError("gamma must be positive")
    return int(math.ceil(gamma)) - 1


class LipFunction:
    """A jet family (psi^(0), ..., psi^(k)) over finite sites in R^d."""

    __slots__ = ("dim", "codim", "gamma", "k", "sites", "jets")

    def __init__(self, gamma, sites, jets):
        gamma = float(gamma)
        k = level_count(gamma)
        sites = np.asarray(sites, dtype=float)
        if sites.ndim != 2 or sites.shape[0] < 1:
            raise ValueError("sites must be a nonempty (N, d) array")
        if not np.all(np.isfinite(sites)):
            raise ValueError("site coordinates must be finite")
        n, d = sites.shape

        jets = [list(per_site) for per_site in jets]
        if len(jets) != n:
            raise ValueError("one jet per site is required")
        codim = None
        for per_site in jets:
            if len(per_site) != k + 1:
                raise ValueError(
                    f"each site needs forms of degrees 0..{k}, "
                    f"got {len(per_site)}"
                )
            for lvl, form in enumerate(per_site):
                if not isinstance(form, SymForm):
                    raise TypeError("jet entries must be SymForm instances")
                if form.degree != lvl or form.dim != d:
                    raise ValueError(
                        f"level {lvl} form has degree {form.degree}, "
                        f"dim {form.dim}; expected degree {lvl}, dim {d}"
                    )
                if codim is None:
                    codim = form.codim
                elif form.codim != codim:
                    raise ValueError("all forms must share the same codim")

        scale_ref = max(1.0, float(np.max(np.abs(sites))))
        for i in range(n):
            for j in range(i + 1, n):
                if np.linalg.norm(sites[j] - sites[i]) < MIN_SITE_SEPARATION * scale_ref:
                    raise ValueError(
                        f"sites {i} and {j} are closer than the separation "
                        f"tolerance"
                    )

        sites.setflags(write=False)
        object.__setattr__(self, "dim", d)
        object.__setattr__(self, "codim", codim)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "sites", sites)
        object.__setattr__(self, "jets", jets)

    def __setattr__(self, name, value):
        raise AttributeError("LipFunction is immutable")

    @property
    def n_sites(self):
        return self.sites.shape[0]

    def form(self, site_idx, level):
        return self.jets[site_idx][level]

    def __repr__(self):
        return (
            f"LipFunction(gamma={self.gamma}, d={self.dim}, m={self.codim}, "
            f"sites={self.n_sites})"
        )


@dataclass
class NormReport:
    """Outcome of a Lip(eta) norm computation.

    ``pointwise[l]`` is the sup over sites of the level-l operator norm
    and ``holder[l]`` the sup over ordered site pairs of the remainder
    quotient. Witness entries record where each sup is attained.
    """

    eta: float
    pointwise: list = field(default_factory=list)
    pointwise_witness: list = field(default_factory=list)
    holder: list = field(default_factory=list)
    holder_witness: list = field(default_factory=list)
    overall: float = 0.0

    def recompute_overall(self):
        vals = list(self.pointwise) + list(self.holder)
        self.overall = max(vals) if vals else 0.0
        return self.overall


def _check_level(f, l):
    if not (0 <= l <= f.k):
        raise ValueError(f"level {l} out of range [0, {f.k}]")


def _check_site(f, idx):
    if not (0 <= idx < f.n_sites):
        raise IndexError(f"site index {idx} out of range")


def remainder(f, l, x_idx, y_idx):
    """Taylor remainder R_l(x, y) of the full jet, a degree-l form."""
    _check_level(f, l)
    _check_site(f, x_idx)
    _check_site(f, y_idx)
    return truncated_remainder(f, f.k, l, x_idx, y_idx)


def truncated_remainder(f, q, l, x_idx, y_idx):
    """Remainder of the order-q truncation: psi^(l)(y) minus the
    expansion of levels l..q propagated from x."""
    if not (0 <= l <= q <= f.k):
        raise ValueError(f"need 0 <= l <= q <= k, got l={l}, q={q}, k={f.k}")
    _check_site(f, x_idx)
    _check_site(f, y_idx)
    step = f.sites[y_idx] - f.sites[x_idx]
    acc = f.form(y_idx, l).coeffs.copy()
    fact = 1.0
    for s in range(0, q - l + 1):
        if s > 0:
            fact *= s
        term = contract(f.form(x_idx, l + s), step, s)
        acc -= term.coeffs / fact
    return SymForm(l, f.dim, f.codim, acc)


def lip_norm(f, eta):
    """Exact Lip(eta) norm of the truncation of f to level ceil(eta)-1.

    Runs the full double loop over ordered site pairs; exactness matters
    more than speed at the intended scale.
    """
    eta = float(eta)
    if not (0 < eta <= f.gamma):
        raise ValueError(f"eta must lie in (0, {f.gamma}], got {eta}")
    q = level_count(eta)

    report = NormReport(eta=eta)
    n = f.n_sites
    for l in range(q + 1):
        best = 0.0
        best_idx = 0
        for i in range(n):
            val = op_norm(f.form(i, l))
            if val > best:
                best = val
                best_idx = i
        report.pointwise.append(best)
        report.pointwise_witness.append(best_idx)

        best, best_pair = _holder_sup(f, q, l, eta)
        report.holder.append(best)
        report.holder_witness.append(best_pair)

    report.recompute_overall()
    return report


def _holder_row(f, q, l, eta, i):
    """Best remainder quotient over the ordered pairs (i, j), j != i."""
    best = 0.0
    best_pair = None
    n = f.n_sites
    for j in range(n):
        if i == j:
            continue
        gap = float(np.linalg.norm(f.sites[j] - f.sites[i]))
        quot = op_norm(truncated_remainder(f, q, l, i, j)) / gap ** (eta - l)
        if quot > best:
            best = quot
            best_pair = (i, j)
    return best, best_pair


def _holder_sup(f, q, l, eta):
    """Sup of the level-l remainder quotient over ordered site pairs.

    The row scans commute under max, so large instances can be spread
    over worker threads (capped by LIPJET_THREADS); merging rows in
    index order keeps the witness deterministic.
    """
    n = f.n_sites
    workers = min(worker_count(), n)
    if n >= 64 and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda i: _holder_row(f, q, l, eta, i), range(n)))
    else:
        rows = [_holder_row(f, q, l, eta, i) for i in range(n)]
    best = 0.0
    best_pair = None
    for val, pair in rows:
        if val > best:
            best = val
            best_pair = pair
    return best, best_pair


def proposal_eval(f, x_idx, y):
    """Value at y of the degree-k polynomial proposed by the jet at x."""
    _check_site(f, x_idx)
    y = np.asarray(y, dtype=float).reshape(-1)
    if y.shape[0] != f.dim:
        raise ValueError("point length does not match jet dimension")
    step = y - f.sites[x_idx]
    out = np.zeros(f.codim)
    fact = 1.0
    for s in range(f.k + 1):
        if s > 0:
            fact *= s
        term = contract(f.form(x_idx, s), step, s)
        out += apply_form(term, []) / fact
    return out


def holder_estimate_check(f, x_idx, w_idx, y, z, norm=None):
    """Check the two-base-point proposal estimate.

    Compares ||Psi_x(y) - Psi_w(z)|| against
    M * (e^(r1) ||y-z|| + (e^(r2) + e^(1+||z-x||)) ||x-w||^(gamma-k))
    with r1 = max(||x-z||, ||x-y||) and r2 = max(||z-w||, ||z-x||).
    Requires gamma > 1 and the displacement caps ||x-w|| <= 1,
    ||y-z|| <= 1. Returns (lhs, rhs, ok).
    """
    if f.k < 1:
        raise ValueError("estimate requires gamma > 1")
    _check_site(f, x_idx)
    _check_site(f, w_idx)
    y = np.asarray(y, dtype=float).reshape(-1)
    z = np.asarray(z, dtype=float).reshape(-1)
    x = f.sites[x_idx]
    w = f.sites[w_idx]
    d_xw = float(np.linalg.norm(x - w))
    d_yz = float(np.linalg.norm(y - z))
    if d_xw > 1.0 or d_yz > 1.0:
        raise ValueError("estimate assumes ||x-w|| <= 1 and ||y-z|| <= 1")

    if norm is None:
        norm = lip_norm(f, f.gamma).overall
    lhs = float(np.linalg.norm(proposal_eval(f, x_idx, y) - proposal_eval(f, w_idx, z)))
    r1 = max(float(np.linalg.norm(x - z)), float(np.linalg.norm(x - y)))
    r2 = max(float(np.linalg.norm(z - w)), float(np.linalg.norm(z - x)))
    rhs = norm * (
        math.exp(r1) * d_yz
        + (math.exp(r2) + math.exp(1.0 + float(np.linalg.norm(z - x))))
        * d_xw ** (f.gamma - f.k)
    )
    ok = lhs <= rhs * (1.0 + 1e-9)
    return lhs, rhs, ok


def diff(f, g):
    """Level-wise difference f - g on an identical site list."""
    if (f.dim, f.codim, f.gamma) != (g.dim, g.codim, g.gamma):
        raise ValueError("jets must share dimension, codim, and gamma")
    if f.n_sites != g.n_sites or not np.array_equal(f.sites, g.sites):
        raise ValueError("jets must share an identical site list")
    jets = [
        [f.form(i, l) - g.form(i, l) for l in range(f.k + 1)]
        for i in range(f.n_sites)
    ]
    return LipFunction(f.gamma, f.sites, jets)


def scale(f, c):
    c = float(c)
    jets = [
        [f.form(i, l) * c for l in range(f.k + 1)]
        for i in range(f.n_sites)
    ]
    return LipFunction(f.gamma, f.sites, jets)


def truncate(f, q):
    """Drop levels above q; the result carries gamma = q + 1."""
    q = int(q)
    if not (0 <= q <= f.k):
        raise ValueError(f"truncation level {q} out of range [0, {f.k}]")
    jets = [
        [f.form(i, l) for l in range(q + 1)]
        for i in range(f.n_sites)
    ]
    return LipFunction(float(q + 1), f.sites, jets)


def restrict(f, indices):
    """Keep only the listed sites (order preserved, duplicates rejected)."""
    indices = [int(i) for i in indices]
    if not indices:
        raise ValueError("restriction to an empty site set is not allowed")
    if len(set(indices)) != len(indices):
        raise ValueError("duplicate indices in restriction")
    for i in indices:
        _check_site(f, i)
    sites = f.sites[indices]
    jets = [[f.form(i, l) for l in range(f.k + 1)] for i in indices]
    return LipFunction(f.gamma, sites, jets)
