"""Weight parameters, even-measure reduction, and the symmetric closed form.

The weight family lives on [-1, 1] and carries three algebraic
singularities: exponents alpha at +1, beta at -1, and gamma at an
interior point x0, with independent scales A (right of x0) and
B (left of x0):

    w(x) = B (1-x)^alpha (x0-x)^gamma (1+x)^beta    on [-1, x0],
    w(x) = A (1-x)^alpha (x-x0)^gamma (1+x)^beta    on [x0, 1].

Substituting x -> 2x^2 - 1 maps the problem to an even weight
w~(x) = 2|x| w(2x^2 - 1) on [-1, 1], whose single recurrence sequence
a~_n determines both coefficient sequences of the original weight.
"""

import math
from dataclasses import dataclass

from .errors import DegenerateCase, DomainError

__all__ = ["WeightParams", "EvenWeightParams", "validate", "derive_even",
           "classical_an_sq", "odd"]


@dataclass(frozen=True)
class WeightParams:
    """The six parameters of the weight: exponents, abscissa, scales."""

    alpha: float
    beta: float
    gamma: float
    x0: float
    A: float = 1.0
    B: float = 1.0


@dataclass(frozen=True)
class EvenWeightParams:
    """Derived quantities of the symmetrized weight w~(x) = 2|x| w(2x^2-1).

    x_tilde0 is the positive root of 2 x~0^2 - 1 = x0, the interior
    singular abscissa of w~; theta0 = arccos(x0) in (0, pi); lam is the
    jump parameter log(B/A) / (2 pi) that drives the log-chirp in the
    oscillatory tails.
    """

    x_tilde0: float
    A_tilde: float
    B_tilde: float
    theta0: float
    lam: float


def validate(params):
    """Check all parameter constraints; return params unchanged.

    Raises
    ------
    DomainError
        If an exponent is <= -1, x0 is not interior, or a scale is
        not positive.
    """
    for name in ("alpha", "beta", "gamma"):
        if not getattr(params, name) > -1.0:
            raise DomainError(f"{name} must exceed -1 for integrability, "
                              f"got {getattr(params, name)}")
    if not -1.0 < params.x0 < 1.0:
        raise DomainError(f"x0 must lie strictly inside (-1, 1), got {params.x0}")
    if not params.A > 0.0:
        raise DomainError(f"A must be positive, got {params.A}")
    if not params.B > 0.0:
        raise DomainError(f"B must be positive, got {params.B}")
    return params


def derive_even(params):
    """Map weight parameters to the derived even-weight quantities.

    x~0 is computed as sqrt((1+x0)/2) and theta0 as arccos(x0) directly;
    both are single-step transforms of x0.  lam uses the difference of
    logs so extreme B/A ratios keep full precision.
    """
    validate(params)
    x_tilde0 = math.sqrt((1.0 + params.x0) / 2.0)
    scale = 2.0 ** (params.alpha + params.beta + params.gamma + 1.0)
    theta0 = math.acos(params.x0)
    lam = (math.log(params.B) - math.log(params.A)) / (2.0 * math.pi)
    return EvenWeightParams(x_tilde0=x_tilde0,
                            A_tilde=scale * params.A,
                            B_tilde=scale * params.B,
                            theta0=theta0,
                            lam=lam)


def odd(n):
    """1 for odd n, 0 for even n."""
    return (1 - (-1) ** n) // 2


def classical_an_sq(n, alpha, gamma):
    """a_n^2 for the symmetric special case A = B, alpha = beta, x0 = 0.

    The weight reduces to A (1-x^2)^alpha |x|^gamma, whose orthonormal
    recurrence coefficients are known in closed form:

        a_n^2 = (n + 2 alpha + gamma odd(n)) (n + gamma odd(n))
                / [(2n + 2 alpha + gamma + 1)(2n + 2 alpha + gamma - 1)]

    with b_n = 0.  Used as a primary oracle for the full pipeline.

    Raises
    ------
    DegenerateCase
        If a denominator factor vanishes (2n + 2 alpha + gamma = +-1).
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    o = odd(n)
    d1 = 2.0 * n + 2.0 * alpha + gamma + 1.0
    d2 = 2.0 * n + 2.0 * alpha + gamma - 1.0
    if abs(d1) < 1e-14 or abs(d2) < 1e-14:
        raise DegenerateCase(
            f"2n + 2 alpha + gamma = -+1 at n={n}: closed form undefined")
    return (n + 2.0 * alpha + gamma * o) * (n + gamma * o) / (d1 * d2)
