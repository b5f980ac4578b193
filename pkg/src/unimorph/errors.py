"""Exception hierarchy shared by all modules."""


class MorphError(Exception):
    """Base class for every error raised by unimorph."""


# geometry
class DegenerateTriangle(MorphError):
    pass


class BadWeights(MorphError):
    pass


class NotSimple(MorphError):
    pass


class EmptyRegion(MorphError):
    pass


# triangulations
class InvalidTriangulation(MorphError):
    pass


class BoundaryVertex(MorphError):
    pass


class DegreeTooHigh(MorphError):
    pass


class KernelViolation(MorphError):
    pass


class MultiEdge(MorphError):
    pass


class TopologyMismatch(MorphError):
    pass


# verification
class InvalidEndpoint(MorphError):
    pass


# reinsertion
class ReinsertionFailure(MorphError):
    pass


class DegenerateWedge(ReinsertionFailure):
    pass


class NonPositive(ReinsertionFailure):
    pass


class EmptyNiceSet(ReinsertionFailure):
    pass


class NoIntersection(ReinsertionFailure):
    pass


# pseudo-morph construction
class BuildFailure(MorphError):
    pass


class TargetSelectionExhausted(BuildFailure):
    pass


class OrientationReversed(BuildFailure):
    pass


class Unhandled(BuildFailure):
    pass


class Misclassified(BuildFailure):
    pass


class NoFeasibleParameter(BuildFailure):
    pass
