"""Delta-covers and packings of finite point sets.

All balls are closed. Tie-breaking is by site index throughout, so the
greedy constructions are deterministic for a fixed site ordering.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass
class CoverPlan:
    delta: float
    center_indices: list
    verified: bool
    uncovered_witness: int = None


@dataclass
class CubeBound:
    d: int
    delta0: float
    omega_d: float
    bound: float
    m: int


def _as_sites(sites):
    arr = np.asarray(sites, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2 or arr.shape[0] < 1:
        raise ValueError("sites must be a nonempty (N, d) array")
    return arr


def _dists_to(sites, idx):
    return np.linalg.norm(sites - sites[idx], axis=1)


def is_cover(sites, centers, delta):
    """Whether every site lies within delta of some center (closed balls).

    Returns (flag, witness); the witness is the first uncovered site
    index, or None when the cover checks out.
    """
    sites = _as_sites(sites)
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    centers = [int(c) for c in centers]
    for c in centers:
        if not (0 <= c < sites.shape[0]):
            raise IndexError(f"center index {c} out of range")
    if not centers:
        return False, 0
    center_pts = sites[centers]
    for i in range(sites.shape[0]):
        if np.min(np.linalg.norm(center_pts - sites[i], axis=1)) > delta:
            return False, i
    return True, None


def greedy_cover(sites, delta):
    """Farthest-point greedy cover.

    Starts from site 0 and repeatedly adds the site farthest from the
    chosen centers until everything is within delta; ties go to the
    lowest index. The result always verifies.
    """
    sites = _as_sites(sites)
    if not (delta > 0):
        raise ValueError("delta must be positive")
    n = sites.shape[0]
    centers = [0]
    min_dist = _dists_to(sites, 0)
    while True:
        far = int(np.argmax(min_dist))  # argmax takes the first maximizer
        if min_dist[far] <= delta:
            break
        centers.append(far)
        min_dist = np.minimum(min_dist, _dists_to(sites, far))
    ok, witness = is_cover(sites, centers, delta)
    return CoverPlan(
        delta=float(delta),
        center_indices=centers,
        verified=ok,
        uncovered_witness=witness,
    )


def greedy_packing(sites, delta):
    """Maximal subset with pairwise distances strictly greater than delta.

    Greedy in index order, so deterministic. Every excluded site is
    within delta of some kept site (maximality), which also makes the
    result a delta-cover.
    """
    sites = _as_sites(sites)
    if not (delta > 0):
        raise ValueError("delta must be positive")
    kept = []
    for i in range(sites.shape[0]):
        if all(np.linalg.norm(sites[i] - sites[j]) > delta for j in kept):
            kept.append(i)
    return kept


def unit_ball_volume(d):
    """Euclidean volume of the unit ball in R^d."""
    return math.pi ** (d / 2.0) / math.gamma(d / 2.0 + 1.0)


def cube_bound(d, delta0):
    """Volume-comparison ceiling on the delta0-covering number of [0,1]^d."""
    d = int(d)
    if d < 1:
        raise ValueError("dimension must be at least 1")
    delta0 = float(delta0)
    if not (delta0 > 0):
        raise ValueError("delta0 must be positive")
    omega = unit_ball_volume(d)
    bound = (2.0**d / omega) * (1.0 + 1.0 / delta0) ** d
    return CubeBound(d=d, delta0=delta0, omega_d=omega, bound=bound, m=math.ceil(bound))


def diameter(sites):
    """Largest pairwise Euclidean distance; 0 for a single site."""
    sites = _as_sites(sites)
    n = sites.shape[0]
    if n == 1:
        return 0.0
    best = 0.0
    for i in range(n):
        best = max(best, float(np.max(np.linalg.norm(sites[i + 1 :] - sites[i], axis=1))))
        if i + 2 >= n:
            break
    return best
