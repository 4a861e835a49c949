"""
Exception hierarchy shared by the geometry modules and the command line.
"""


class PonceletError(Exception):
    pass


class DomainError(PonceletError, ValueError):
    """A precondition on the parameters was violated."""


class DegenerateError(PonceletError):
    """A degenerate parameter value or a collinear/collapsed triangle."""


class DegenerateFitError(DegenerateError):
    """The fitting design matrix does not determine a unique curve."""


class ArityError(PonceletError, ValueError):
    pass


class InfinityError(PonceletError):
    """A triangle center lies at infinity for the given triangle."""


class ConvergenceError(PonceletError, RuntimeError):
    pass


class UnknownCenterError(PonceletError, KeyError):
    pass


class ConfigError(PonceletError, ValueError):
    pass
