"""
Error hierarchy for the annotation engine.

Every loader raises a subclass of ResourceError carrying the offending path
and line so command output can point straight at the bad record.
"""
from typing import Optional


class AnnotatorError(Exception):
    """Root of every error raised by the engine."""


class ResourceError(AnnotatorError):
    """A linguistic resource failed to load or validate."""

    def __init__(self, message: str, path: Optional[str] = None, lineno: Optional[int] = None):
        self.message = message
        self.path = path
        self.lineno = lineno
        super().__init__(self.__str__())

    def __str__(self) -> str:
        location = ''
        if self.path:
            location = f"{self.path}:{self.lineno}: " if self.lineno else f"{self.path}: "
        elif self.lineno:
            location = f"line {self.lineno}: "
        return f"{location}{self.message}"


# Hierarchy load errors

class MalformedHierarchyError(ResourceError):
    pass


class DuplicateTypeError(ResourceError):
    pass


class HierarchyCycleError(ResourceError):
    pass


class UndeclaredParentError(ResourceError):
    pass


class UndeclaredFacetError(ResourceError):
    pass


class UnknownTypeError(ResourceError):
    """A type identifier is not a node of the active hierarchy."""


class UnknownFacetError(ResourceError):
    """A facet is not allowed for the type it is attached to."""


class DuplicateEntryError(ResourceError):
    """Conflicting duplicate in a gazetteer, rule set, head lexicon or KB."""


class MalformedRecordError(ResourceError):
    pass


class InvalidTemplateError(ResourceError):
    pass


# Scoring errors

class ScoringError(AnnotatorError):
    pass


class InvalidRatioError(ScoringError, ValueError):
    pass


class DocumentSetMismatchError(ScoringError):
    pass


class GoldFormatError(ScoringError, ResourceError):
    pass
