"""Exception hierarchy shared by every module of the package."""


class AtrailError(Exception):
    """Base class; the CLI maps subclasses to exit codes."""


class InvalidInput(AtrailError, ValueError):
    """Raised when an input object violates a documented precondition."""


class StructureError(InvalidInput):
    pass


class GenusMismatch(StructureError):
    pass


class OpenWalk(InvalidInput):
    pass


class EmptySubgraph(InvalidInput):
    pass


class BadParams(InvalidInput):
    pass


class NotTriangular(InvalidInput):
    pass


class HasLoops(InvalidInput):
    pass


class NotEulerian(InvalidInput):
    pass


class OddDegree(NotEulerian):
    pass


class NonSmooth(InvalidInput):
    pass


class NotCoveringTree(InvalidInput):
    pass


class NotAnATrail(InvalidInput):
    pass


class PreconditionNotMet(InvalidInput):
    pass


class EvenV(BadParams):
    pass


class SahGrid(BadParams):
    pass


class GenusUnsupported(InvalidInput):
    pass


class MixedEssentialClasses(AtrailError, RuntimeError):
    """Essential curves of one decomposition were not parallel (a bug, not bad input)."""


class NonCyclicFace(InvalidInput):
    pass


class FaceLengthMismatch(InvalidInput):
    pass


class OverlapViolation(InvalidInput):
    pass


class VertexNotOnFace(InvalidInput):
    pass


class Incompatible(InvalidInput):
    def __init__(self, message, vertices=()):
        super().__init__(message)
        self.vertices = tuple(vertices)


class BudgetExceeded(AtrailError):
    def __init__(self, needed, budget, what="systems in the search space"):
        super().__init__(f"{needed} {what} exceeds budget {budget}")
        self.needed = needed
        self.budget = budget
