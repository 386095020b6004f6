"""Exception hierarchy shared by every module.

InvalidInput subclasses map to CLI exit code 1, NumericalFailure
subclasses to exit code 2.
"""


class GeometryError(Exception):
    exit_code = 2


class InvalidInput(GeometryError):
    exit_code = 1


class NumericalFailure(GeometryError):
    exit_code = 2


class TieError(InvalidInput):
    """Two centers project to the same position along a direction."""


class NotATransversal(InvalidInput):
    pass


class WrongOrder(InvalidInput):
    pass


class MixedRadii(InvalidInput):
    pass


class OverlapError(InvalidInput):
    pass


class NotTangent(InvalidInput):
    pass


class BadAngle(InvalidInput):
    pass


class DomainError(InvalidInput):
    pass


class DegenerateParameter(InvalidInput):
    pass


class NoInitialTransversal(NumericalFailure):
    pass


class Infeasible(NumericalFailure):
    pass


class DegenerateChart(NumericalFailure):
    pass
