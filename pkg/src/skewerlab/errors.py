"""Exception hierarchy shared by all line models."""


class GeometryError(ValueError):
    """Base class for every error raised by skewerlab."""


class Degeneracy(GeometryError):
    """A construction left general position.

    The randomized verifier treats any subclass as a signal to resample the
    trial rather than as a failure of the theorem under test.
    """


class DegenerateForm(Degeneracy):
    pass


class EqualEndpoints(Degeneracy):
    pass


class DegeneratePair(Degeneracy):
    pass


class NotDecomposable(Degeneracy):
    pass


class ZeroDirection(Degeneracy):
    pass


class ParallelLines(Degeneracy):
    pass


class NonpositiveHeight(Degeneracy):
    pass


class IllConditioned(Degeneracy):
    pass


class IndeterminateCrossRatio(Degeneracy):
    pass


class NoAxis(Degeneracy):
    pass


class DegenerateInput(Degeneracy):
    pass


class DegenerateCircle(Degeneracy):
    pass


class NoIntersection(Degeneracy):
    pass


class PointInsideCircle(Degeneracy):
    pass


class ChainStuck(Degeneracy):
    pass


class UnnormalizedLine(GeometryError):
    pass


class UnsupportedN(GeometryError):
    pass


class TooManyResamples(GeometryError):
    """Raised after a campaign in which some trial never reached general position.

    ``report`` carries the partial :class:`~skewerlab.harness.TrialReport`.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
