"""
Entity templates: per-entity attribute/value records with an inverted index.

Template file:

    entity<TAB>ONU<TAB>organization
    attr<TAB>IsLocatedIn<TAB>New_York
    attr<TAB>IsComposedOf<TAB>employees && diplomats

Records are separated by blank lines. In ids and values, spaces and
underscores are interchangeable.
"""
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple, Union

from .exceptions import (
    DuplicateEntryError,
    InvalidTemplateError,
    MalformedRecordError,
    ResourceError,
    UnknownTypeError,
)
from .hierarchy import TypeHierarchy

logger = logging.getLogger(__name__)

IS_LOCATED_IN = 'IsLocatedIn'
IS_COMPOSED_OF = 'IsComposedOf'
IS_LEADED_BY = 'IsLeadedBy'
KIND_OF = 'KindOf'
RESERVED_ATTRIBUTES = (IS_LOCATED_IN, IS_COMPOSED_OF, IS_LEADED_BY, KIND_OF)

VALUE_SEPARATOR = '&&'


def normalize(name: str) -> str:
    """Spaces and underscores are interchangeable; runs collapse."""
    return ' '.join(name.replace('_', ' ').split())


@dataclass(frozen=True)
class EntityTemplate:
    entity_id: str
    entity_type: str
    attributes: Dict[str, Tuple[str, ...]] = field(default_factory=dict)

    def values(self, attribute: str) -> Tuple[str, ...]:
        return self.attributes.get(attribute, ())

    def has_value(self, attribute: str, value: str) -> bool:
        wanted = normalize(value)
        return any(normalize(v) == wanted for v in self.values(attribute))


class TemplateStore:
    """Read-only after construction; rebuild to change."""

    def __init__(self, templates: Iterable[EntityTemplate] = ()):
        self.templates: Dict[str, EntityTemplate] = {}
        for template in templates:
            key = normalize(template.entity_id)
            if not key:
                raise MalformedRecordError("Empty entity id")
            if key in self.templates:
                raise DuplicateEntryError(f"Duplicate entity id {template.entity_id!r}")
            self.templates[key] = template
        self.inverted: Dict[Tuple[str, str], FrozenSet[str]] = self._invert(self.templates.values())

    @staticmethod
    def _invert(templates: Iterable[EntityTemplate]) -> Dict[Tuple[str, str], FrozenSet[str]]:
        index: Dict[Tuple[str, str], set] = {}
        for template in templates:
            for attribute, values in template.attributes.items():
                for value in values:
                    index.setdefault((attribute, normalize(value)), set()).add(template.entity_id)
        return {key: frozenset(ids) for key, ids in index.items()}

    def __len__(self) -> int:
        return len(self.templates)

    def __iter__(self):
        return iter(self.templates.values())

    def lookup(self, entity_id: str) -> Optional[EntityTemplate]:
        return self.templates.get(normalize(entity_id))

    def invert(self, attribute: str, value: str) -> FrozenSet[str]:
        return self.inverted.get((attribute, normalize(value)), frozenset())

    def attribute_names(self) -> List[str]:
        return sorted({attribute for attribute, _ in self.inverted})

    def is_consistent(self) -> bool:
        """The inverted index equals a fresh inversion of the templates."""
        return self.inverted == self._invert(self.templates.values())


def validate_template(template: EntityTemplate, hierarchy: TypeHierarchy) -> None:
    if template.entity_type not in hierarchy:
        raise UnknownTypeError(f"Entity {template.entity_id!r} has unknown type {template.entity_type!r}")
    allowed = hierarchy.valid_focalizations(template.entity_type)
    for kind in template.values(KIND_OF):
        if hierarchy.is_facet(kind) and kind not in allowed:
            raise InvalidTemplateError(
                f"KindOf {kind!r} of {template.entity_id!r} is not a facet of {template.entity_type!r}")


def parse_templates(text: str, hierarchy: TypeHierarchy, source: Optional[str] = None) -> TemplateStore:
    templates: List[EntityTemplate] = []
    seen: Dict[str, int] = {}
    current: Optional[dict] = None

    def close():
        if current is None:
            return
        template = EntityTemplate(current['id'], current['type'],
                                  {name: tuple(values) for name, values in current['attrs'].items()})
        try:
            validate_template(template, hierarchy)
        except ResourceError as e:
            raise type(e)(e.message, source, current['line']) from e
        templates.append(template)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        if raw.lstrip().startswith('#'):
            continue
        if not raw.strip():
            close()
            current = None
            continue
        fields = [part.strip() for part in raw.split('\t')]
        if fields[0] == 'entity':
            if current is not None:
                raise MalformedRecordError("Entity record must start after a blank line", source, lineno)
            if len(fields) != 3 or not fields[1] or not fields[2]:
                raise MalformedRecordError("Expected 'entity<TAB>id<TAB>type'", source, lineno)
            key = normalize(fields[1])
            if key in seen:
                raise DuplicateEntryError(f"Entity {fields[1]!r} already defined on line {seen[key]}",
                                          source, lineno)
            seen[key] = lineno
            current = {'id': fields[1], 'type': fields[2], 'attrs': {}, 'line': lineno}
        elif fields[0] == 'attr':
            if current is None:
                raise MalformedRecordError("Attribute outside an entity record", source, lineno)
            if len(fields) != 3 or not fields[1]:
                raise MalformedRecordError("Expected 'attr<TAB>Name<TAB>value[ && value...]'", source, lineno)
            values = [v.strip() for v in fields[2].split(VALUE_SEPARATOR)]
            if not all(values):
                raise MalformedRecordError(f"Empty value in {fields[2]!r}", source, lineno)
            bucket = current['attrs'].setdefault(fields[1], [])
            bucket.extend(v for v in values if v not in bucket)
        else:
            raise MalformedRecordError(f"Unknown record line {fields[0]!r}", source, lineno)
    close()

    return TemplateStore(templates)


def load_templates(path: Union[str, Path], hierarchy: TypeHierarchy) -> TemplateStore:
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except (OSError, UnicodeDecodeError) as e:
        raise ResourceError(f"Cannot read templates: {e}", str(path)) from e
    store = parse_templates(text, hierarchy, str(path))
    logger.info(f"Loaded {len(store)} entity templates from {path}")
    return store


def serialize_templates(store: TemplateStore) -> str:
    blocks = []
    for template in sorted(store, key=lambda t: t.entity_id):
        lines = [f"entity\t{template.entity_id}\t{template.entity_type}"]
        for attribute, values in template.attributes.items():
            lines.append(f"attr\t{attribute}\t{f' {VALUE_SEPARATOR} '.join(values)}")
        blocks.append('\n'.join(lines))
    return '\n\n'.join(blocks) + ('\n' if blocks else '')
