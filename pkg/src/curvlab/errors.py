"""Exception hierarchy for curvlab."""


class CurvlabError(Exception):
    """Base class for every error raised by curvlab."""


class DimensionMismatch(CurvlabError, ValueError):
    pass


class SlotIndexError(CurvlabError, IndexError):
    pass


class DimensionTooSmall(CurvlabError, ValueError):
    pass


class DegreeOutOfRange(CurvlabError, ValueError):
    pass


class MiddleDegree(DegreeOutOfRange):
    """The Hessian weight divides by n - 2p and is undefined when n = 2p.

    Use the eigenvalue (mu) route, :func:`curvlab.bochner.weight_proposition`,
    for the middle degree.
    """


class NotTraceFree(CurvlabError, ValueError):
    pass


class NotWeyl(CurvlabError, ValueError):
    pass


class UnknownExample(CurvlabError, KeyError):
    pass


class EigenSolverFailure(CurvlabError, RuntimeError):
    pass


class SymmetryViolation(CurvlabError, ValueError):
    """A candidate (0,4)-tensor fails one of the curvature symmetries.

    Attributes:
        identity: which family failed ("pair antisymmetry", "pair exchange"
            or "first Bianchi").
        index: worst offending multi-index, 0-based.
        magnitude: absolute size of the violation at that index.
    """

    def __init__(self, identity, index, magnitude):
        self.identity = identity
        self.index = tuple(int(i) for i in index)
        self.magnitude = float(magnitude)
        super().__init__(
            f"{identity} violated at index {self.index} "
            f"(magnitude {self.magnitude:.3e})"
        )


class SchemaError(CurvlabError, ValueError):
    """Malformed JSON input; ``path`` names the offending field."""

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")
