from typing import Optional


class WorkbenchError(Exception):
    """Base class for domain errors raised by the workbench."""

    @property
    def name(self) -> str:
        return type(self).__name__


# lattice
class UnknownLattice(WorkbenchError):
    pass


class DegenerateForm(WorkbenchError):
    pass


class BadSublattice(WorkbenchError):
    pass


class NotInvolution(WorkbenchError):
    pass


class RankMismatch(WorkbenchError):
    pass


# nikulin
class NonIntegralBalance(WorkbenchError):
    pass


class RankOutOfRange(WorkbenchError):
    pass


class ForbiddenEvenSet(WorkbenchError):
    pass


# nsclass
class BadPolarization(WorkbenchError):
    pass


class GlueNotFound(WorkbenchError):
    pass


class PreconditionViolation(WorkbenchError):
    pass


# elliptic
class DivisionByZeroPoly(WorkbenchError):
    pass


class NonGeneric(WorkbenchError):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


# motive
class NoValence(WorkbenchError):
    pass


class ValenceNotUnique(WorkbenchError):
    pass


class InconsistentValence(WorkbenchError):
    pass


# classifier
class Inconsistent(WorkbenchError):
    def __init__(self, message: str, citation: Optional[str] = None):
        super().__init__(message)
        self.citation = citation


class BadDescriptor(WorkbenchError):
    pass


def error_from_name(name: str, message: str, citation: Optional[str] = None) -> WorkbenchError:
    """Rebuild an error returned by a tool server as ``{"error_type": ..., "error": ...}``."""
    cls = _REGISTRY.get(name, WorkbenchError)
    if cls is Inconsistent:
        return Inconsistent(message, citation)
    return cls(message)


_REGISTRY = {cls.__name__: cls for cls in WorkbenchError.__subclasses__()}
