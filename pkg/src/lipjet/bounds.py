"""Explicit constants for the nesting and sandwich estimates.

Everything here is a deterministic scalar computation: the two
infimum-type remainder constants, the nesting factor, local norm
bounds on small balls, the E-recursion with its feasibility radius,
and the three delta_0 / eps_0 constructions used by the certificate
checkers in :mod:`lipjet.sandwich`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .jets import level_count

E = math.e

# Bisection controls: absolute tolerance on the argument, iteration cap.
BISECT_TOL = 1e-12
BISECT_MAX_ITER = 200

# Grid resolution for the first-violation scans (the interval feasibility
# searches where single-point monotonicity is not available).
SCAN_POINTS = 10_000
SCAN_TOL = 1e-10


@dataclass
class BoundQuery:
    """Parameter bundle for the lemma-style constants.

    Only the fields an operation actually reads need to be set; each
    operation validates the ranges it relies on. ``n`` and ``q`` are
    derived from rho and theta.
    """

    rho: float = None
    theta: float = None
    l: int = 0
    diam: float = None
    A: float = None
    r0: float = None
    delta: float = None

    @property
    def n(self):
        return level_count(self.rho)

    @property
    def q(self):
        return level_count(self.theta)


@dataclass
class BoundReport:
    name: str
    inputs: object
    value: float
    attained_at: float = None
    note: str = ""
    extra: dict = field(default_factory=dict)


def _bisect_boundary(pred, lo, hi, tol=BISECT_TOL):
    """Largest point of [lo, hi] where pred flips from True to False.

    Assumes pred(lo) is True and pred(hi) is False, and that the
    feasible set is an initial interval. Returns the last True point
    found, within tol of the boundary.
    """
    for _ in range(BISECT_MAX_ITER):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if pred(mid):
            lo = mid
        else:
            hi = mid
    return lo


def _bisect_monotone(pred):
    """Largest t in (0, 1] with pred(t) true, for monotone predicates.

    Works on log(t) so radii many orders of magnitude below 1 are still
    resolved to full relative precision. Returns 0.0 only when even the
    smallest positive radius fails.
    """
    if pred(1.0):
        return 1.0
    lo, hi = math.log(1e-300), 0.0
    if not pred(math.exp(lo)):
        return 0.0
    for _ in range(BISECT_MAX_ITER):
        mid = 0.5 * (lo + hi)
        if pred(math.exp(mid)):
            lo = mid
        else:
            hi = mid
    return math.exp(lo)


def _sup_initial_interval(pred, hi, tol=SCAN_TOL, points=SCAN_POINTS):
    """Sup of t <= hi such that pred holds on all of (0, t].

    Scans a uniform grid for the first violation, refines by bisection,
    and shrinks the result by one tolerance so the returned radius is
    strictly feasible. Used for the condition systems whose individual
    inequalities are not all monotone.
    """
    if hi <= 0:
        raise ValueError("search interval is empty")
    first_bad = None
    for i in range(1, points + 1):
        t = hi * i / points
        if not pred(t):
            first_bad = i
            break
    if first_bad is None:
        return max(hi - tol, 0.0)
    lo = hi * (first_bad - 1) / points
    up = hi * first_bad / points
    if first_bad == 1 and not pred(lo + tol):
        # feasibility dies immediately; report the smallest positive radius
        return 0.0
    boundary = _bisect_boundary(pred, lo, up, tol=tol)
    return max(boundary - tol, 0.0)


# ---------------------------------------------------------------------------
# remainder constants (inf over a radius of the max of two branches)


def _inf_of_crossing(f_up, f_down, diam):
    """Infimum over r in (0, diam) of max(f_up(r), f_down(r)).

    f_up is increasing and f_down decreasing with f_down(0+) = +inf, so
    the infimum sits at their crossing when one exists inside the
    interval, and otherwise is the limit at r -> diam from the left.
    Returns (value, attained_at) with attained_at None in the limit case.
    """
    if f_up(diam) <= f_down(diam):
        # no interior crossing: the max equals f_down throughout and
        # decreases toward the open right endpoint
        return f_down(diam), None
    r_star = _bisect_boundary(lambda r: f_up(r) <= f_down(r), diam * 1e-12, diam)
    return max(f_up(r_star), f_down(r_star)), r_star


def g_const(query):
    """First remainder constant, for theta strictly between n and rho."""
    rho, theta, l, diam = query.rho, query.theta, query.l, query.diam
    n = query.n
    if not (n < theta < rho):
        raise ValueError(f"theta must lie in ({n}, {rho}), got {theta}")
    if not (0 <= l <= n):
        raise ValueError(f"l must lie in [0, {n}]")
    if not (diam > 0):
        raise ValueError("diam must be positive")

    def up(r):
        return r ** (rho - theta)

    def down(r):
        return r ** -(theta - l) * (1.0 + sum(r**s / math.factorial(s) for s in range(n - l + 1)))

    value, r_star = _inf_of_crossing(up, down, diam)
    note = "crossing point" if r_star is not None else "limit at r -> diam (not attained)"
    return BoundReport("g_const", query, value, attained_at=r_star, note=note)


def h_const(query):
    """Second remainder constant, for theta in (0, n] (altered remainders)."""
    rho, theta, l, diam = query.rho, query.theta, query.l, query.diam
    n = query.n
    if n < 1 or not (0 < theta <= n):
        raise ValueError(f"theta must lie in (0, {n}] with n >= 1, got {theta}")
    q = query.q
    if not (0 <= l <= q):
        raise ValueError(f"l must lie in [0, {q}]")
    if not (diam > 0):
        raise ValueError("diam must be positive")

    def up(r):
        return r ** (rho - theta) + sum(
            r ** (i - theta) / math.factorial(i - l) for i in range(q + 1, n + 1)
        )

    def down(r):
        return r ** -(theta - l) * (1.0 + sum(r**s / math.factorial(s) for s in range(q - l + 1)))

    value, r_star = _inf_of_crossing(up, down, diam)
    note = "crossing point" if r_star is not None else "limit at r -> diam (not attained)"
    return BoundReport("h_const", query, value, attained_at=r_star, note=note)


def remainder_bound(query, which):
    """Holder-quotient ceiling for (altered) remainders, per unit norm.

    ``which`` selects the branch: "case_one" pairs the diameter power
    with g_const, "case_two" pairs the diameter companion sum with
    h_const.
    """
    rho, theta, l, diam = query.rho, query.theta, query.l, query.diam
    if which == "case_one":
        inner = g_const(query)
        companion = diam ** (rho - theta)
    elif which == "case_two":
        inner = h_const(query)
        n, q = query.n, query.q
        companion = diam ** (rho - theta) + sum(
            diam ** (i - theta) / math.factorial(i - l) for i in range(q + 1, n + 1)
        )
    else:
        raise ValueError("which must be 'case_one' or 'case_two'")
    value = min(companion, inner.value)
    return BoundReport(
        f"remainder_bound[{which}]",
        query,
        value,
        attained_at=inner.attained_at,
        extra={"companion": companion, "inf_const": inner.value},
    )


# ---------------------------------------------------------------------------
# nesting


def nesting_factor(rho, theta, diam):
    """Factor bounding the Lip(theta) norm by the Lip(rho) norm.

    Never exceeds 1 + e. With diam = 0 (a single site) the factor is 1.
    """
    rho = float(rho)
    theta = float(theta)
    diam = float(diam)
    if not (0 < theta < rho):
        raise ValueError(f"need 0 < theta < rho, got theta={theta}, rho={rho}")
    if diam < 0:
        raise ValueError("diam must be nonnegative")
    n = level_count(rho)
    q = level_count(theta)
    query = BoundQuery(rho=rho, theta=theta, diam=diam)

    if theta > n:
        value = max(1.0, min(1.0 + E, diam ** (rho - theta)))
        return BoundReport("nesting_factor", query, value, note="theta above n")

    c1 = max(
        1.0,
        min(
            1.0 + E,
            diam ** (rho - theta)
            + sum(diam ** (j - theta) / math.factorial(j - q) for j in range(q + 1, n + 1)),
        ),
    )
    c2 = (
        max(1.0, min(1.0 + E, diam ** (q + 1 - theta)))
        * (1.0 + min(E, diam ** (rho - n)))
        * (1.0 + min(E, diam)) ** (n - (q + 1))
    )
    value = min(c1, c2)
    return BoundReport(
        "nesting_factor", query, value, note="theta at or below n", extra={"C1": c1, "C2": c2}
    )


# ---------------------------------------------------------------------------
# growth of a jet that is small at an anchor point


def growth_bounds(query, dist_x, dist_y, sub_q, gap=0.0):
    """Anchored pointwise and remainder ceilings.

    For a jet of norm at most A whose levels 0..sub_q at the anchor are
    bounded by r0, returns the pair (remainder_rhs, pointwise_rhs):
    the remainder quotient ceiling for a site pair at distance ``gap``
    whose members sit at distances dist_x, dist_y from the anchor, and
    the level-l pointwise ceiling at distance dist_x.
    """
    rho, theta, l, A, r0 = query.rho, query.theta, query.l, query.A, query.r0
    n = query.n
    if not (n < theta < rho):
        raise ValueError(f"theta must lie in ({n}, {rho})")
    sub_q = int(sub_q)
    if not (0 <= l <= sub_q <= n):
        raise ValueError(f"need 0 <= l <= sub_q <= {n}")
    if dist_x < 0 or dist_y < 0 or gap < 0:
        raise ValueError("distances must be nonnegative")

    remainder_rhs = A * (dist_x + dist_y) ** (rho - theta) * gap ** (theta - l)

    if sub_q < n:
        s_term = sum(
            dist_x**j / math.factorial(j) for j in range(sub_q + 1 - l, n - l + 1)
        )
    else:
        s_term = 0.0
    tail = sum(dist_x**j / math.factorial(j) for j in range(0, sub_q - l + 1))
    pointwise_rhs = min(A, A * (dist_x ** (rho - l) + s_term) + r0 * tail)
    return remainder_rhs, pointwise_rhs


# ---------------------------------------------------------------------------
# local norm bounds on a delta-ball


def local_bound_I(query):
    """Lip(theta) ceiling on a delta-ball, theta above n."""
    rho, theta, A, r0, delta = query.rho, query.theta, query.A, query.r0, query.delta
    n = query.n
    if not (n < theta < rho):
        raise ValueError(f"theta must lie in ({n}, {rho})")
    if not (0 <= r0 <= A):
        raise ValueError("need 0 <= r0 <= A")
    if not (0 <= delta <= 1):
        raise ValueError("delta must lie in [0, 1]")
    value = max(
        (2 * delta) ** (rho - theta) * A,
        min(A, A * delta ** (rho - n) + r0 * math.exp(delta)),
    )
    return BoundReport("local_bound_I", query, value)


def e_sequence(query):
    """The E-recursion E_n, E_{n-1}, ..., E_{q+1}.

    Every term is at least r0; with delta = 0 the whole sequence
    collapses to r0.
    """
    rho, theta, A, r0, delta = query.rho, query.theta, query.A, query.r0, query.delta
    n = query.n
    if rho <= 1 or n < 1:
        raise ValueError("recursion needs rho > 1")
    if not (0 < theta <= n):
        raise ValueError(f"theta must lie in (0, {n}]")
    if not (0 <= r0 < A):
        raise ValueError("need 0 <= r0 < A")
    if not (0 <= delta <= 1):
        raise ValueError("delta must lie in [0, 1]")
    q = query.q
    b_q = n - (q + 1)

    root = math.sqrt(2 * delta)
    r0e = r0 * math.exp(delta)
    e_n = (1.0 + (2 * delta) ** ((rho - n) / 2)) * max(
        (2 * delta) ** ((rho - n) / 2) * A,
        min(A, delta ** (rho - n) * A + r0e),
    )
    seq = [e_n]
    for _ in range(1, b_q + 1):
        prev = seq[-1]
        seq.append((1.0 + root) * max(root * prev, min(prev, delta * prev + r0e)))
    return seq


def delta_star(A, r0, rho):
    """Feasibility radius for the E-recursion analysis, 0 < r0 < A.

    The five defining inequalities must hold for every delta up to the
    returned radius, so the search treats the feasible set as an
    initial interval and certifies it by scanning before refining.
    """
    A = float(A)
    r0 = float(r0)
    rho = float(rho)
    if rho <= 1:
        raise ValueError("rho must exceed 1")
    if not (0 < r0 < A):
        raise ValueError("need 0 < r0 < A (use the r0 = 0 closed form otherwise)")
    n = level_count(rho)
    half = (rho - n) / 2

    def ok(d):
        two_d = 2 * d
        if two_d >= 1.0:
            return False
        root = math.sqrt(two_d)
        r0e = r0 * math.exp(d)
        if max(1 + root, 1 + two_d**half) >= 2:
            return False
        if r0e > A * (1 - d ** (rho - n)):
            return False
        if (2**half - d**half) * d**half * A > r0e:
            return False
        if 2 * root * (d ** (rho - n) * A + r0e) > r0e:
            return False
        geom = (1 - two_d**n) / (1 - two_d)
        if root * (2**n * (d ** (rho - n) * A + r0 * d * math.exp(d)) + 2 * r0e * geom) > r0e:
            return False
        return True

    value = _sup_initial_interval(ok, 1.0)
    query = BoundQuery(rho=rho, A=A, r0=r0)
    return BoundReport("delta_star", query, value, note="scan plus bisection")


def _x_term(t, delta, r0):
    """The geometric correction X_t(delta) in the r0 > 0 expansion."""
    if t == 0:
        return 0.0
    root = math.sqrt(2 * delta)
    return (
        (1.0 + root)
        * r0
        * math.exp(delta)
        * sum(delta**j * (1.0 + root) ** j for j in range(t))
    )


def local_bound_II(query):
    """Lip(theta) ceiling on a delta-ball for theta at or below n.

    The value is the recursion-based bound; for r0 > 0 with delta
    inside the feasibility radius the closed expansion is reported in
    ``extra["expansion"]``, and for r0 = 0 the closed form is checked
    against the recursion.
    """
    rho, theta, A, r0, delta = query.rho, query.theta, query.A, query.r0, query.delta
    n, q = query.n, query.q
    seq = e_sequence(query)
    e_last = seq[-1]
    b_q = n - (q + 1)
    value = max(
        (2 * delta) ** (q + 1 - theta) * e_last,
        min(e_last, delta * e_last + r0 * math.exp(delta)),
    )
    report = BoundReport("local_bound_II", query, value, extra={"E_last": e_last})

    if r0 == 0:
        closed = (
            (1.0 + (2 * delta) ** ((rho - n) / 2))
            * (1.0 + math.sqrt(2 * delta)) ** b_q
            * (2 * delta) ** ((rho - theta) / 2 + (q + 1 - theta) / 2)
            * A
        )
        report.extra["closed_form"] = closed
    else:
        star = delta_star(A, r0, rho).value
        report.extra["delta_star"] = star
        if delta <= star:
            expansion = (
                (1.0 + (2 * delta) ** ((rho - n) / 2))
                * (1.0 + math.sqrt(2 * delta)) ** b_q
                * (delta ** (rho - (q + 1)) * A + r0 * delta**b_q * math.exp(delta))
                + _x_term(b_q, delta, r0)
            )
            report.extra["expansion"] = expansion
    return report


# ---------------------------------------------------------------------------
# the three delta_0 / eps_0 constructions


def delta0_pointwise(eps, eps0, K, gamma, l):
    """Cover radius for the pointwise closeness transfer.

    The sup of theta > 0 with K theta^(gamma - l) + eps0 e^theta at most
    min(K, eps). Always at most 1, and decreasing in l.
    """
    eps = float(eps)
    eps0 = float(eps0)
    K = float(K)
    gamma = float(gamma)
    k = level_count(gamma)
    if K <= 0:
        raise ValueError("K must be positive")
    if not (0 <= l <= k):
        raise ValueError(f"l must lie in [0, {k}]")
    target = min(K, eps)
    if not (0 <= eps0 < target):
        raise ValueError("need 0 <= eps0 < min(K, eps)")

    def feasible(t):
        return K * t ** (gamma - l) + eps0 * math.exp(t) <= target

    value = _bisect_monotone(feasible)
    query = BoundQuery(rho=gamma, l=l, A=K, r0=eps0)
    return BoundReport("delta0_pointwise", query, value, extra={"eps": eps})


def delta0_single_point(eps, eps0, K, gamma, eta):
    """Ball radius for the single-anchor norm transfer.

    Above level k the radius solves two monotone inequalities directly;
    at or below k it is the feasibility radius of the five-condition
    system, capped by delta_star when eps0 is positive.
    """
    eps = float(eps)
    eps0 = float(eps0)
    K = float(K)
    gamma = float(gamma)
    eta = float(eta)
    k = level_count(gamma)
    if K <= 0:
        raise ValueError("K must be positive")
    if not (0 < eta < gamma):
        raise ValueError("need 0 < eta < gamma")
    target = min(K, eps)
    if not (0 <= eps0 < target):
        raise ValueError("need 0 <= eps0 < min(K, eps)")
    query = BoundQuery(rho=gamma, theta=eta, A=K, r0=eps0)

    if eta > k:

        def feasible(t):
            return (
                K * (2 * t) ** (gamma - eta) <= target
                and K * t ** (gamma - k) + eps0 * math.exp(t) <= target
            )

        value = _bisect_monotone(feasible)
        return BoundReport(
            "delta0_single_point", query, value, note="eta above k", extra={"eps": eps}
        )

    # eta <= k: condition system (initial-interval search)
    q = level_count(eta)
    half = (gamma - k) / 2
    expo = (gamma - eta) / 2 + (q + 1 - eta) / 2
    rhs_b = eps / (2 ** (k - q) * K)

    def ok(d):
        two_d = 2 * d
        if two_d >= 1.0:
            return False
        root = math.sqrt(two_d)
        if max(1 + two_d**half, 1 + root) >= 2:
            return False
        if two_d**expo > rhs_b:
            return False
        e_d = math.exp(d)
        if (1 + two_d**half) * (d ** (gamma - k) * K + eps0 * e_d) > eps:
            return False
        if (
            2 ** (k - q) * (d ** (gamma - k) * K + eps0 * d * e_d)
            + (1 + root) / (1 - two_d) * eps0 * e_d
            > eps
        ):
            return False
        if eps0 * e_d > (1 - d) * eps:
            return False
        return True

    if eps0 > 0:
        cap = min(1.0, delta_star(K, eps0, gamma).value)
    else:
        cap = 1.0
    value = _sup_initial_interval(ok, cap) if cap > 0 else 0.0
    return BoundReport(
        "delta0_single_point",
        query,
        value,
        note="eta at or below k",
        extra={"eps": eps, "cap": cap},
    )


@dataclass
class SandwichConstants:
    delta0: float
    eps0: float
    theta_aux: float


def sandwich_constants(eps, K, gamma, eta):
    """The constructive (delta0, eps0) pair for the global transfer.

    Follows the patching construction: retrieve the single-anchor
    radius at the damped tolerances theta*eps and theta*eps/2 with
    theta = 1/(2(1+e)), cap at 1, halve, then set eps0 from the
    patched Holder budget.
    """
    eps = float(eps)
    K = float(K)
    gamma = float(gamma)
    eta = float(eta)
    if K <= 0 or eps <= 0:
        raise ValueError("K and eps must be positive")
    if not (0 < eta < gamma):
        raise ValueError("need 0 < eta < gamma")
    eps_c = min(eps, K)
    theta_aux = 1.0 / (2.0 * (1.0 + E))
    sp = delta0_single_point(theta_aux * eps_c, 0.5 * theta_aux * eps_c, K, gamma, eta)
    delta0 = min(sp.value, 1.0) / 2.0
    if delta0 <= 0:
        raise ArithmeticError("degenerate single-anchor radius")
    eps0 = (
        min(theta_aux, delta0**eta / (math.exp(delta0) * (1.0 + math.exp(delta0))))
        * eps_c
        / 2.0
    )
    return SandwichConstants(delta0=delta0, eps0=eps0, theta_aux=theta_aux)
