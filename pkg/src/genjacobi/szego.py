"""Closed-form limit constants and the conjectured tail oscillations.

For a weight in this family the centered partial sums of the even
sequence converge to constants expressible through the Taylor data of
the Szego function of the symmetrized weight.  With
g = gamma x0 + 2 lambda sin(theta0):

    kappa1 = alpha - beta + g
    kappa2 = (alpha-beta)^2/2 + (alpha+beta+1)/2 + (alpha-beta) g
             + (gamma(gamma+2)/4 - lambda^2) cos(2 theta0)
             + lambda (gamma+1) sin(2 theta0) + gamma^2/4 + lambda^2
    xi  = -kappa1 / 4
    eta = (kappa1^2 - 4 kappa1 - 2 kappa2) / 16

The even-sequence deviations a~_n^2 - 1/4 then oscillate as

    -(beta+1/2)(-1)^n/(2n) + K cos(n theta0 - 2 lambda log n - phi)/n

with empirically exact amplitude and phase

    K   = sqrt(gamma^2/4 + lambda^2) sin(theta0/2)
    phi = (alpha+1+gamma/2) pi - (alpha+beta+gamma+1/2) theta0
          + 2 lambda log(2 sin theta0)
          - 2 arg Gamma(gamma/2 + i lambda) - arg(gamma/2 + i lambda)

and the contracted coefficients satisfy

    a_n = 1/2 - (M/n) cos[2n theta0 - 2 lambda log(4n sin theta0) - PHI]
    b_n =   - (2M/n) cos[(2n+1) theta0 - 2 lambda log(4n sin theta0) - PHI]

    M   = (1/2) sqrt(gamma^2/4 + lambda^2) sin(theta0)  = K cos(theta0/2)
    PHI = (alpha+gamma/2) pi - (alpha+beta+gamma) theta0
          - 2 arg Gamma(gamma/2 + i lambda) - arg(gamma/2 + i lambda)

up to o(1/n) corrections.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import loggamma

from .errors import PoleError
from .weights import derive_even

__all__ = ["SzegoConstants", "ConjectureConstants", "kappa_ratios",
           "predict_K_phi", "predict_M_Phi", "conjecture_constants",
           "conjectured_coeffs", "arg_gamma", "wrap_phase", "phase_distance"]


@dataclass(frozen=True)
class SzegoConstants:
    """Limit constants of the centered partial sums."""

    kappa1: float
    kappa2: float
    xi: float
    eta: float


@dataclass(frozen=True)
class ConjectureConstants:
    """Amplitudes and phases of the O(1/n) coefficient oscillations.

    K, phi describe the even-sequence tail; M, PHI the contracted
    coefficients.  The phases are None when the amplitude vanishes
    (gamma = 0 and lambda = 0), in which case they are undefined.
    """

    K: float
    phi: float | None
    M: float
    Phi: float | None


def wrap_phase(x):
    """Reduce an angle (scalar or array) to (-pi, pi]."""
    r = math.pi - np.mod(math.pi - np.asarray(x), 2.0 * math.pi)
    return float(r) if r.ndim == 0 else r


def phase_distance(p, q):
    """Distance between two phases modulo 2 pi, in [0, pi]."""
    return np.abs(wrap_phase(np.asarray(p) - np.asarray(q)))


def arg_gamma(re, im):
    """Argument of Gamma(re + i im) on the standard branch of log Gamma.

    The value is Im log Gamma, the analytic continuation from the
    positive real axis (zero for real positive arguments, conjugate
    antisymmetric in im, and satisfying arg Gamma(z) = arg Gamma(z+1)
    - arg(z), which covers the strip -1/2 < re <= 0 the phase formulas
    may touch).  Real nonpositive arguments on the cut take the limit
    from the upper half plane.

    Raises
    ------
    PoleError
        At the poles z = 0, -1, -2, ...
    """
    if im == 0.0 and re <= 0.0 and re == int(re):
        raise PoleError(f"Gamma has a pole at {re}")
    return float(loggamma(complex(re, im)).imag)


def kappa_ratios(params):
    """Limit constants for the given weight (lambda taken from A, B)."""
    even = derive_even(params)
    alpha, beta, gamma = params.alpha, params.beta, params.gamma
    lam, theta0 = even.lam, even.theta0
    g = gamma * params.x0 + 2.0 * lam * math.sin(theta0)
    kappa1 = alpha - beta + g
    kappa2 = ((alpha - beta) ** 2 / 2.0 + (alpha + beta + 1.0) / 2.0
              + (alpha - beta) * g
              + (gamma * (gamma + 2.0) / 4.0 - lam * lam)
              * math.cos(2.0 * theta0)
              + lam * (gamma + 1.0) * math.sin(2.0 * theta0)
              + gamma * gamma / 4.0 + lam * lam)
    return SzegoConstants(kappa1=kappa1, kappa2=kappa2,
                          xi=-kappa1 / 4.0,
                          eta=(kappa1 ** 2 - 4.0 * kappa1 - 2.0 * kappa2) / 16.0)


def _amplitude(gamma, lam):
    return math.sqrt(gamma * gamma / 4.0 + lam * lam)


def predict_K_phi(params):
    """(K, phi) of the even-sequence tail; phi is None when K = 0."""
    even = derive_even(params)
    alpha, beta, gamma = params.alpha, params.beta, params.gamma
    lam, theta0 = even.lam, even.theta0
    K = _amplitude(gamma, lam) * math.sin(theta0 / 2.0)
    if K == 0.0:
        return 0.0, None
    phi = ((alpha + 1.0 + gamma / 2.0) * math.pi
           - (alpha + beta + gamma + 0.5) * theta0
           + 2.0 * lam * math.log(2.0 * math.sin(theta0))
           - 2.0 * arg_gamma(gamma / 2.0, lam)
           - math.atan2(lam, gamma / 2.0))
    return K, wrap_phase(phi)


def predict_M_Phi(params):
    """(M, PHI) of the contracted-coefficient tail; PHI None when M = 0."""
    even = derive_even(params)
    alpha, beta, gamma = params.alpha, params.beta, params.gamma
    lam, theta0 = even.lam, even.theta0
    M = 0.5 * _amplitude(gamma, lam) * math.sin(theta0)
    if M == 0.0:
        return 0.0, None
    Phi = ((alpha + gamma / 2.0) * math.pi
           - (alpha + beta + gamma) * theta0
           - 2.0 * arg_gamma(gamma / 2.0, lam)
           - math.atan2(lam, gamma / 2.0))
    return M, wrap_phase(Phi)


def conjecture_constants(params):
    """Bundle of all four conjectured tail constants."""
    K, phi = predict_K_phi(params)
    M, Phi = predict_M_Phi(params)
    return ConjectureConstants(K=K, phi=phi, M=M, Phi=Phi)


def conjectured_coeffs(n, params):
    """Leading-order (a_n, b_n) from the conjectured oscillation.

    n may be a positive int or an integer array.  When the amplitude
    vanishes the exact limits (1/2, 0) are returned.
    """
    n = np.asarray(n, dtype=float)
    if np.any(n < 1):
        raise ValueError("n must be >= 1")
    even = derive_even(params)
    theta0, lam = even.theta0, even.lam
    M, Phi = predict_M_Phi(params)
    if M == 0.0:
        a = np.full_like(n, 0.5)
        b = np.zeros_like(n)
    else:
        chirp = 2.0 * lam * np.log(4.0 * n * math.sin(theta0))
        a = 0.5 - (M / n) * np.cos(2.0 * n * theta0 - chirp - Phi)
        b = -(2.0 * M / n) * np.cos((2.0 * n + 1.0) * theta0 - chirp - Phi)
    if a.ndim == 0:
        return float(a), float(b)
    return a, b
