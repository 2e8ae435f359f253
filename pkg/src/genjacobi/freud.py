"""Forward Freud recurrence for the even weight, and contraction.

The nonlinear identity satisfied by the squares t_n = a~_n^2 of the
even-weight recurrence coefficients is, with N = n+alpha+beta+gamma+2,
s = x~0^2, S1(n) = sum_{k=1}^{n-1} t_k and
S2(n) = sum_{k=1}^{n-1} (t_k^2 + 2 t_k t_{k-1}):

    2 N t_n (t_{n-1} + t_n + t_{n+1})
      - 2 [alpha s + (n+beta+1)(s+1) + gamma] t_n
      + 2 (2 t_n - s - 1) S1(n) + n s - 2 t_n t_{n-1}
      + 2 S2(n) + (2 beta + 1) s odd(n)  =  0,        n = 1, 2, ...

with t_0 = 0.  Solving for t_{n+1} gives a stable forward recurrence
driven by the single free value t_1.

Numerical care: the formula combines partial sums of size ~ n/4 whose
leading parts cancel.  The accumulators are therefore stored centered,
S1(n) - (n-1)/4 and S2(n) - 3(n-1)/16, with compensated summation, and
the recurrence is evaluated in an algebraically equivalent centered
form so every intermediate stays O(n) with O(1) cancellation.  This
keeps the sequence accurate to ~1e-13 out to n ~ 1e6 in doubles.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .errors import DivergedTrial
from .weights import EvenWeightParams, WeightParams, derive_even

__all__ = ["CoeffSequence", "ContractedCoeffs", "run", "step",
           "freud_residual", "contract", "GUARD_EPS"]

# Trial runs abort once a value exits (GUARD_EPS, 1 - GUARD_EPS); wrong
# starting values blow up geometrically, so early abort keeps shooting cheap.
GUARD_EPS = 1e-12


@njit(cache=True, inline="always")
def _step_value(n, alpha, beta, gamma, s, t_n, t_nm1, p, q):
    """t_{n+1} from t_n, t_{n-1} and the centered sums p, q through n-1."""
    nn = n + alpha + beta + gamma + 2.0
    oddn = 1.0 if (n & 1) else 0.0
    num = ((n * (1.0 - 4.0 * s) - (4.0 * s + 1.0)) / 8.0
           + 2.0 * (s + 1.0) * p - 2.0 * q
           - (2.0 * beta + 1.0) * s * oddn)
    return ((alpha * s + (n + beta + 1.0) * (s + 1.0) + gamma) / nn
            - 2.0 * ((n - 1) * 0.25 + p) / nn
            + num / (2.0 * nn * t_n)
            + t_nm1 / nn
            - t_n - t_nm1)


@njit(cache=True)
def _run_kernel(alpha, beta, gamma, xt0_sq, a1_sq, n_max, eps):
    a = np.empty(n_max + 1)
    s1 = np.empty(n_max + 1)
    s2 = np.empty(n_max + 1)
    a[0] = 0.0
    a[1] = a1_sq
    s1[0] = 0.0
    s1[1] = 0.0
    s2[0] = 0.0
    s2[1] = 0.0
    s1v = 0.0
    c1 = 0.0
    s2v = 0.0
    c2 = 0.0
    for n in range(1, n_max):
        nxt = _step_value(n, alpha, beta, gamma, xt0_sq,
                          a[n], a[n - 1], s1v + c1, s2v + c2)
        if not (nxt > eps):
            return a, s1, s2, -1, n + 1
        if not (nxt < 1.0 - eps):
            return a, s1, s2, 1, n + 1
        a[n + 1] = nxt
        # fold in the k = n contributions (Neumaier compensation)
        y = a[n] - 0.25
        t = s1v + y
        if abs(s1v) >= abs(y):
            c1 += (s1v - t) + y
        else:
            c1 += (y - t) + s1v
        s1v = t
        w = a[n] * a[n] + 2.0 * a[n] * a[n - 1] - 0.1875
        t = s2v + w
        if abs(s2v) >= abs(w):
            c2 += (s2v - t) + w
        else:
            c2 += (w - t) + s2v
        s2v = t
        s1[n + 1] = s1v + c1
        s2[n + 1] = s2v + c2
    return a, s1, s2, 0, -1


@dataclass
class CoeffSequence:
    """Computed squares a~_n^2 with their compensated running sums.

    a_tilde_sq[n] holds a~_n^2 for n = 0..n_max (a~_0^2 = 0 exactly).
    sum_sq_centered[n] = sum_{k=1}^{n-1} (a~_k^2 - 1/4) and
    sum_quartic_centered[n] = sum_{k=1}^{n-1} (a~_k^4 + 2 a~_k^2 a~_{k-1}^2
    - 3/16); the raw sums are recovered exactly as (n-1)/4 + centered and
    3(n-1)/16 + centered.
    """

    weight: WeightParams
    even: EvenWeightParams
    a_tilde_sq: np.ndarray
    sum_sq_centered: np.ndarray
    sum_quartic_centered: np.ndarray

    @property
    def n_max(self):
        return len(self.a_tilde_sq) - 1


@dataclass
class ContractedCoeffs:
    """Recurrence coefficients of the original weight.

    a[n] is valid for n >= 1 (a[0] is NaN); b[n] for n >= 0.
    """

    a: np.ndarray
    b: np.ndarray


def run(weight, a1_sq, n_max, eps=GUARD_EPS):
    """Iterate the forward recurrence from a~_1^2 = a1_sq up to index n_max.

    Parameters
    ----------
    weight : WeightParams
        Supplies the exponents and x0.  The scales A, B do not enter the
        recurrence (their influence is carried entirely by a1_sq) but are
        kept on the result for downstream diagnostics.
    a1_sq : float
        Starting value in (0, 1), e.g. from calibration.
    n_max : int
        Last index computed; the result holds n_max + 1 values.

    Returns
    -------
    CoeffSequence

    Raises
    ------
    DivergedTrial
        If some a~_n^2 exits (eps, 1 - eps).  The exception carries the
        valid prefix, which shooting uses to classify the trial.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    if not eps < a1_sq < 1.0 - eps:
        raise DivergedTrial(1, "below" if a1_sq <= eps else "above",
                            np.array([0.0]))
    even = derive_even(weight)
    a, s1, s2, status, fail = _run_kernel(
        weight.alpha, weight.beta, weight.gamma, even.x_tilde0 ** 2,
        a1_sq, n_max, eps)
    if status != 0:
        raise DivergedTrial(fail, "above" if status > 0 else "below",
                            a[:fail].copy())
    return CoeffSequence(weight=weight, even=even, a_tilde_sq=a,
                         sum_sq_centered=s1, sum_quartic_centered=s2)


def step(seq, n):
    """a~_{n+1}^2 implied by the identity, from the state stored at n.

    Exposed for verification; run() produces the same values in bulk.

    Raises
    ------
    DivergedTrial
        If the value falls outside (GUARD_EPS, 1 - GUARD_EPS).
    """
    if not 1 <= n <= seq.n_max:
        raise IndexError(f"n={n} outside stored range 1..{seq.n_max}")
    value = _step_value(n, seq.weight.alpha, seq.weight.beta,
                        seq.weight.gamma, seq.even.x_tilde0 ** 2,
                        seq.a_tilde_sq[n], seq.a_tilde_sq[n - 1],
                        seq.sum_sq_centered[n], seq.sum_quartic_centered[n])
    if not GUARD_EPS < value < 1.0 - GUARD_EPS:
        raise DivergedTrial(n + 1, "below" if value <= GUARD_EPS else "above",
                            seq.a_tilde_sq[:n + 1].copy())
    return value


def freud_residual(seq, n):
    """Residual of the nonlinear identity at index n, evaluated as written.

    The partial sums are reconstructed raw from the centered accumulators,
    so the returned magnitude is a true consistency diagnostic for the
    stored sequence.  n may be an int or an integer array with
    1 <= n <= n_max - 1.
    """
    n = np.asarray(n)
    a = seq.a_tilde_sq
    s = seq.even.x_tilde0 ** 2
    alpha, beta, gamma = seq.weight.alpha, seq.weight.beta, seq.weight.gamma
    nn = n + alpha + beta + gamma + 2.0
    raw1 = (n - 1) * 0.25 + seq.sum_sq_centered[n]
    raw2 = (n - 1) * 0.1875 + seq.sum_quartic_centered[n]
    oddn = n % 2
    res = (2.0 * nn * a[n] * (a[n - 1] + a[n] + a[n + 1])
           - 2.0 * (alpha * s + (n + beta + 1.0) * (s + 1.0) + gamma) * a[n]
           + 2.0 * (2.0 * a[n] - s - 1.0) * raw1
           + n * s
           - 2.0 * a[n] * a[n - 1]
           + 2.0 * raw2
           + (2.0 * beta + 1.0) * s * oddn)
    return res if res.ndim else float(res)


def contract(seq):
    """Recover (a_n, b_n) of the original weight from the even sequence.

    a_n = 2 a~_{2n-1} a~_{2n} (positive roots) and
    b_n = -1 + 2 a~_{2n}^2 + 2 a~_{2n+1}^2, for n up to (n_max - 1) // 2.
    """
    m = (seq.n_max - 1) // 2
    if m < 1:
        raise ValueError("sequence too short to contract (need n_max >= 3)")
    t = seq.a_tilde_sq
    a = np.empty(m + 1)
    b = np.empty(m + 1)
    a[0] = np.nan
    idx = np.arange(1, m + 1)
    a[1:] = 2.0 * np.sqrt(t[2 * idx - 1] * t[2 * idx])
    b[0] = -1.0 + 2.0 * t[0] + 2.0 * t[1]
    b[1:] = -1.0 + 2.0 * t[2 * idx] + 2.0 * t[2 * idx + 1]
    return ContractedCoeffs(a=a, b=b)
