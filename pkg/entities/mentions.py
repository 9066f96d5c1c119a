"""
Annotated-entity data model shared by the recognizer, focalizer and scorer.

Offsets are code-point indices into the document string, half-open.
"""
from dataclasses import dataclass, replace
from typing import Optional

from .hierarchy import TypeHierarchy
from .exceptions import UnknownFacetError, UnknownTypeError

# Underspecified focalization
NO_FOCUS = 'none'


@dataclass(frozen=True, order=True)
class Span:
    start: int
    end: int

    def __post_init__(self):
        if not 0 <= self.start < self.end:
            raise ValueError(f"Invalid span [{self.start}, {self.end})")

    def __len__(self) -> int:
        return self.end - self.start

    def overlaps(self, other: 'Span') -> bool:
        return self.start < other.end and other.start < self.end

    def contains(self, other: 'Span') -> bool:
        return self.start <= other.start and other.end <= self.end


@dataclass(frozen=True)
class SemFrame:
    """The Sem{Type; Focalisation} block of an entity."""
    entity_type: str
    focalisation: str = NO_FOCUS

    def validate(self, hierarchy: TypeHierarchy) -> None:
        if self.entity_type not in hierarchy:
            raise UnknownTypeError(f"Unknown entity type: {self.entity_type!r}")
        if self.focalisation != NO_FOCUS and \
                self.focalisation not in hierarchy.valid_focalizations(self.entity_type):
            raise UnknownFacetError(
                f"Facet {self.focalisation!r} is not allowed for type {self.entity_type!r}")


@dataclass(frozen=True)
class Token:
    surface: str
    span: Span
    sentence_index: int
    is_word: bool

    @property
    def is_clitic(self) -> bool:
        return self.surface[-1] in "'’"

    @property
    def is_capitalized(self) -> bool:
        return self.is_word and not self.is_clitic and self.surface[0].isupper()


@dataclass(frozen=True)
class Mention:
    lexical_unit: str
    span: Span
    doc_id: str
    sem: SemFrame
    sentence_index: int = 0

    def with_sem(self, sem: SemFrame) -> 'Mention':
        return replace(self, sem=sem)

    @property
    def entity_type(self) -> str:
        return self.sem.entity_type

    @property
    def focalisation(self) -> str:
        return self.sem.focalisation


@dataclass(frozen=True)
class GoldAnnotation:
    doc_id: str
    span: Span
    entity_type: str
    focalisation: Optional[str] = None

    @classmethod
    def from_mention(cls, mention: Mention) -> 'GoldAnnotation':
        return cls(mention.doc_id, mention.span, mention.entity_type, mention.focalisation)

    @property
    def facet(self) -> str:
        return self.focalisation or NO_FOCUS
