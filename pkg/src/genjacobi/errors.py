"""Exception types shared across the package."""


class GenJacobiError(Exception):
    """Base class for all package errors."""


class DomainError(GenJacobiError):
    """A weight parameter violates its admissible range."""


class DegenerateCase(GenJacobiError):
    """A closed-form expression hits a vanishing denominator."""


class DivergedTrial(GenJacobiError):
    """The forward recurrence left (0, 1) at some index.

    Attributes
    ----------
    index : int
        First index whose value fell outside the admissible band.
    direction : str
        'above' or 'below', the side on which the value exited.
    a_tilde_sq : ndarray
        The valid prefix of the sequence, entries 0 .. index-1.
    """

    def __init__(self, index, direction, a_tilde_sq):
        super().__init__(f"recurrence diverged {direction} at n={index}")
        self.index = index
        self.direction = direction
        self.a_tilde_sq = a_tilde_sq


class QuadratureFailure(GenJacobiError):
    """Quadrature refinement hit its level cap before the tolerance."""


class BracketFailure(GenJacobiError):
    """Shooting could not bracket or reach the requested value."""


class IllConditioned(GenJacobiError):
    """The requested estimate is numerically meaningless for these inputs."""


class LossOfOrthogonality(GenJacobiError):
    """The discrete orthogonalization produced a nonpositive norm."""


class PoleError(GenJacobiError):
    """Evaluation requested at a pole of the gamma function."""
