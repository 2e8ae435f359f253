"""Link the free recurrence value a~_1^2 to the weight scales.

Forward direction: a~_1^2 = mu~_2 / mu~_0, a ratio of two singular
moments of the even weight, evaluated by tanh-sinh quadrature on the
smooth subintervals [0, x~0] and [x~0, 1].

Inverse direction: estimate the jump parameter lambda from a computed
tail via the limit

    xi = lim ( sum_{k=1}^{n-1} a~_k^2 - n/4 )
       = -(alpha - beta + gamma x0 + 2 lambda sin theta0) / 4,

and shoot on a~_1^2 (bisection) to hit a requested lambda.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import BracketFailure, DivergedTrial, IllConditioned, \
    QuadratureFailure
from .freud import run
from .weights import derive_even, validate

__all__ = ["QuadratureSpec", "moment", "a1_sq_from_weights", "xi_estimate",
           "eta_estimate", "lambda_estimate", "solve_a1_for_lambda"]

_MIN_SIN_THETA0 = 1e-6


@dataclass(frozen=True)
class QuadratureSpec:
    """Stopping rule for the tanh-sinh refinement."""

    target_rel_error: float = 1e-13
    max_levels: int = 12

    def __post_init__(self):
        if self.target_rel_error < 1e-14:
            raise ValueError("target_rel_error below double precision (1e-14)")
        if self.max_levels < 1:
            raise ValueError("max_levels must be >= 1")


_DEFAULT_SPEC = QuadratureSpec()

# Transformed abscissas stay representable while exp(2v) <= exp(700);
# nodes beyond carry no representable distance to the endpoint.
_U_MAX = 6.1


def _tanh_sinh(f, a, b, spec, p_left=0.0, p_right=0.0):
    """Integrate f over [a, b] with the tanh-sinh (double exponential) rule.

    f is called as f(x, dl, dr) where dl = x - a and dr = b - x are
    supplied directly from the transform, so algebraic endpoint factors
    can be evaluated without cancellation.  p_left and p_right are the
    local endpoint exponents, used only to bound the mass beyond the
    last representable node; exponents very close to -1 (< about -0.95)
    exceed what double-width nodes can resolve and raise
    QuadratureFailure instead of returning a silently truncated value.
    """
    half = 0.5 * (b - a)

    def terms(us, h):
        s = 0.0
        for u in us:
            v = 0.5 * math.pi * math.sinh(u)
            if abs(v) > 350.0:
                continue
            ev = math.exp(2.0 * v)
            one_m_t = 2.0 / (1.0 + ev)
            one_p_t = 2.0 / (1.0 + 1.0 / ev)
            sech = 2.0 / (math.exp(v) + math.exp(-v))
            w = 0.5 * math.pi * math.cosh(u) * sech * sech
            dl = half * one_p_t
            dr = half * one_m_t
            s += w * f(a + dl, dl, dr)
        return s * h

    h = 1.0
    us = [0.0]
    k = 1
    while k * h <= _U_MAX:
        us.append(k * h)
        us.append(-k * h)
        k += 1
    total = half * terms(us, h)
    converged = False
    for _ in range(spec.max_levels):
        h *= 0.5
        us = []
        k = 1
        while k * h <= _U_MAX:
            us.append(k * h)
            us.append(-k * h)
            k += 2
        new_total = 0.5 * total + half * terms(us, h)
        if abs(new_total - total) <= spec.target_rel_error * abs(new_total):
            total = new_total
            converged = True
            break
        total = new_total
    if not converged:
        raise QuadratureFailure(
            f"no convergence to {spec.target_rel_error:g} within "
            f"{spec.max_levels} refinement levels on [{a}, {b}]")
    # mass beyond the last representable node: ~ f(d0) d0 / (1 + p)
    v_edge = 350.0
    d_edge = half * 2.0 * math.exp(-2.0 * v_edge)
    for p, dl, dr in ((p_left, d_edge, b - a - d_edge),
                      (p_right, b - a - d_edge, d_edge)):
        edge_x = a + dl
        lost = abs(f(edge_x, dl, dr)) * min(dl, dr) / (1.0 + p)
        if lost > spec.target_rel_error * abs(total):
            raise QuadratureFailure(
                f"endpoint exponent {p} too close to -1 for double-width "
                f"nodes (unresolved mass ~ {lost:.2e})")
    return total


def moment(params, power, spec=None):
    """Moment mu~_power of the even weight, scales A~ and B~ applied.

    power must be an even integer >= 0 (the even weight has no odd
    moments).  The integrand is split at the interior singular abscissa
    x~0 so each panel carries singularities only at its endpoints.
    """
    validate(params)
    if power < 0 or power % 2 != 0:
        raise ValueError(f"power must be an even integer >= 0, got {power}")
    if spec is None:
        spec = _DEFAULT_SPEC
    even = derive_even(params)
    xt0 = even.x_tilde0
    alpha, gamma = params.alpha, params.gamma
    p0 = 2.0 * params.beta + 1.0 + power

    def inner(x, dl, dr):
        # x in (0, xt0): |x|^p0 (xt0^2 - x^2)^gamma (1 - x^2)^alpha
        return dl ** p0 * dr ** gamma * (xt0 + x) ** gamma \
            * (1.0 - x * x) ** alpha

    def outer(x, dl, dr):
        # x in (xt0, 1): |x|^p0 (x^2 - xt0^2)^gamma (1 - x^2)^alpha
        return x ** p0 * dl ** gamma * (x + xt0) ** gamma \
            * dr ** alpha * (1.0 + x) ** alpha

    i_inner = _tanh_sinh(inner, 0.0, xt0, spec, p_left=p0, p_right=gamma)
    i_outer = _tanh_sinh(outer, xt0, 1.0, spec, p_left=gamma, p_right=alpha)
    return 2.0 * (even.B_tilde * i_inner + even.A_tilde * i_outer)


def a1_sq_from_weights(params, spec=None):
    """a~_1^2 = mu~_2 / mu~_0 for the given weight parameters."""
    return moment(params, 2, spec) / moment(params, 0, spec)


def _window_start(n_max, window_fraction):
    if not 0.0 < window_fraction < 1.0:
        raise ValueError(f"window_fraction must be in (0, 1), "
                         f"got {window_fraction}")
    return max(1, int(round((1.0 - window_fraction) * n_max)))


def _centered_sum_fit(seq, window_fraction):
    """Fit the tail of both centered accumulators; return (xi, eta, lam).

    Stage one estimates lambda crudely from the plain window average of
    the quadratic accumulator.  Stage two fits both accumulators against
    {1, (-1)^n/n, cos(psi)/n, sin(psi)/n} with psi = n theta0 -
    2 lam log n, which removes the dominant O(1/n) oscillatory bias,
    and is repeated once with the updated lambda.
    """
    if seq.n_max < 1000:
        raise ValueError("tail estimation needs a run of length >= 1000")
    p = seq.weight
    theta0 = seq.even.theta0
    sin_t0 = math.sin(theta0)
    lo = _window_start(seq.n_max, window_fraction)
    n = np.arange(lo, seq.n_max + 1, dtype=float)
    sgn = np.where(np.arange(lo, seq.n_max + 1) % 2 == 0, 1.0, -1.0)
    targets = np.column_stack([seq.sum_sq_centered[lo:],
                               seq.sum_quartic_centered[lo:]])

    def lam_of(xi):
        if abs(sin_t0) < _MIN_SIN_THETA0:
            return 0.0
        return -(4.0 * xi + p.alpha - p.beta + p.gamma * p.x0) / (2.0 * sin_t0)

    lam = lam_of(float(np.mean(targets[:, 0])) - 0.25)
    for _ in range(2):
        psi = n * theta0 - 2.0 * lam * np.log(n)
        design = np.column_stack([np.ones_like(n), sgn / n,
                                  np.cos(psi) / n, np.sin(psi) / n])
        coef, *_ = np.linalg.lstsq(design, targets, rcond=None)
        xi = coef[0, 0] - 0.25
        lam = lam_of(xi)
    eta = coef[0, 1] - 0.1875
    return xi, eta, lam


def xi_estimate(seq, window_fraction=0.5):
    """Limit of sum_{k=1}^{n-1} a~_k^2 - n/4, from the tail window."""
    xi, _, _ = _centered_sum_fit(seq, window_fraction)
    return xi


def eta_estimate(seq, window_fraction=0.5):
    """Limit of sum_{k=1}^{n-1} (a~_k^4 + 2 a~_k^2 a~_{k-1}^2) - 3n/16."""
    _, eta, _ = _centered_sum_fit(seq, window_fraction)
    return eta


def lambda_estimate(seq, window_fraction=0.5):
    """Jump parameter implied by the computed tail.

    Raises
    ------
    IllConditioned
        If sin(theta0) < 1e-6; the xi-to-lambda map then divides by
        an essentially vanishing quantity.
    """
    if abs(math.sin(seq.even.theta0)) < _MIN_SIN_THETA0:
        raise IllConditioned("x0 ~ +-1: lambda is not recoverable from xi")
    _, _, lam = _centered_sum_fit(seq, window_fraction)
    return lam


def _died_high(trial, prefix, xt0_sq):
    """Classify a diverged trial: did it track the upper branch?

    Valid runs settle at 1/4 and the A=0 limit at x~0^2/4.  A trial above
    the admissible a~_1^2 range rides above the midline of those branches
    before exiting; one below collapses under it.
    """
    values = prefix[1:]
    if len(values) == 0:
        values = np.array([trial])
    mean = float(np.mean(values[len(values) // 2:]))
    return mean > 0.125 * (1.0 + xt0_sq)


def solve_a1_for_lambda(params, target_lambda, n=100_000,
                        window_fraction=0.5, xtol=1e-12, lambda_tol=1e-3):
    """Find a~_1^2 whose run realizes the requested jump parameter.

    Bisection on (1e-6, 1 - 1e-6).  The endpoints sit outside any
    admissible range and correspond to lambda -> +inf (left) and -inf
    (right); interior diverged trials are classified against the best
    valid trial seen, or by their trajectory before any valid trial
    exists.  The scales on params are ignored; only exponents and x0
    matter.

    Raises
    ------
    BracketFailure
        If the bracket collapses without a run whose estimated lambda
        is within lambda_tol of the target.
    """
    validate(params)
    if not math.isfinite(target_lambda):
        raise ValueError("target lambda must be finite")
    if n < 10_000:
        raise ValueError("shooting needs runs of length >= 10000")
    if abs(math.sin(math.acos(params.x0))) < _MIN_SIN_THETA0:
        raise IllConditioned("x0 ~ +-1: lambda is not recoverable from xi")
    xt0_sq = (1.0 + params.x0) / 2.0
    best = None  # (a1_sq, lam_hat)

    def lambda_above_target(trial):
        nonlocal best
        try:
            seq = run(params, trial, n)
        except DivergedTrial as d:
            if best is not None:
                return trial < best[0]
            return not _died_high(trial, d.a_tilde_sq, xt0_sq)
        lam = lambda_estimate(seq, window_fraction)
        if best is None or abs(lam - target_lambda) < abs(best[1] - target_lambda):
            best = (trial, lam)
        return lam > target_lambda

    lo, hi = 1e-6, 1.0 - 1e-6
    # endpoint sides are fixed by position: lambda(a1->0+) = +inf,
    # lambda(a1->1-) = -inf (infinite-|lambda| sides)
    if not lambda_above_target(lo) or lambda_above_target(hi):
        raise BracketFailure(
            "no sign change on (1e-6, 1 - 1e-6); target lambda unreachable")
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        if lambda_above_target(mid):
            lo = mid
        else:
            hi = mid
    a1_star = 0.5 * (lo + hi)
    try:
        seq = run(params, a1_star, n)
    except DivergedTrial:
        raise BracketFailure(
            f"bracket collapsed onto an inadmissible value; nearest "
            f"achieved lambda {best[1]:.6g}" if best else
            "bracket collapsed without any admissible trial") from None
    lam = lambda_estimate(seq, window_fraction)
    if abs(lam - target_lambda) > lambda_tol:
        raise BracketFailure(
            f"target lambda {target_lambda:.6g} not reachable at this run "
            f"length; converged value realizes lambda ~ {lam:.6g}")
    return a1_star
