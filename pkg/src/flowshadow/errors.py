"""Exception hierarchy shared by every module of the package."""


class FlowShadowError(Exception):
    """Base class for all errors raised by flowshadow."""


# posets
class CycleError(FlowShadowError):
    pass


class UnknownLabel(FlowShadowError):
    pass


class InvalidSize(FlowShadowError):
    pass


class NotACover(FlowShadowError):
    pass


class LabelClash(FlowShadowError):
    pass


class NotRemovable(FlowShadowError):
    pass


class NotBounded(FlowShadowError):
    pass


class NotMonotone(FlowShadowError):
    pass


# flows
class EndpointError(FlowShadowError):
    pass


class AssociativityError(FlowShadowError):
    pass


class MissingComposite(FlowShadowError):
    pass


class UnknownState(FlowShadowError):
    pass


class UnknownPath(FlowShadowError):
    pass


class LoopError(FlowShadowError):
    pass


class MorphismError(FlowShadowError):
    """A state/path map that does not define a morphism of flows."""


# presentations
class CyclicPresentation(FlowShadowError):
    pass


class EndpointMismatch(FlowShadowError):
    pass


class UnknownEdge(FlowShadowError):
    pass


# T-homotopy
class NotInClassT(FlowShadowError):
    pass


class NotASubdivision(FlowShadowError):
    pass


# text input
class ParseError(FlowShadowError):
    def __init__(self, message, path=None, line=None, column=None):
        self.path = path
        self.line = line
        self.column = column
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
            if column is not None:
                where += f"{column}:"
        super().__init__(f"{where} {message}" if where else message)


class ValidationError(FlowShadowError):
    """Wraps a module error raised while building a parsed object."""

    def __init__(self, cause, path=None):
        self.cause = cause
        self.path = path
        prefix = f"{path}: " if path else ""
        super().__init__(f"{prefix}{type(cause).__name__}: {cause}")
