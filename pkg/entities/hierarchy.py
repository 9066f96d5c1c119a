"""
Entity type hierarchy with per-type focalization facets.

The hierarchy document is line oriented:

    type enamex parent -
    type organization parent enamex
    facets diplomatic_org location human_org
    facet organization diplomatic_org

`#` starts a comment. The first `type` line whose parent is `-` declares the
root. The optional `facets` inventory line restricts which facet ids `facet`
lines may use; without it, `facet` lines declare their own ids.
"""
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from .exceptions import (
    DuplicateTypeError,
    HierarchyCycleError,
    MalformedHierarchyError,
    UndeclaredFacetError,
    UndeclaredParentError,
    UnknownTypeError,
)

logger = logging.getLogger(__name__)

IDENTIFIER_RE = re.compile(r'^[a-z][a-z0-9_]*$')
ROOT_PARENT = '-'


@dataclass(frozen=True)
class TypeHierarchy:
    """Rooted tree of entity types. Immutable once loaded."""
    root: str
    nodes: Tuple[str, ...]
    parents: Dict[str, Optional[str]]
    facets: Dict[str, Tuple[str, ...]]
    facet_ids: Tuple[str, ...] = field(default=())

    def __contains__(self, type_id: str) -> bool:
        return type_id in self.parents

    def _require(self, type_id: str) -> None:
        if type_id not in self.parents:
            raise UnknownTypeError(f"Unknown entity type: {type_id!r}")

    def ancestors(self, type_id: str) -> List[str]:
        """Parent chain from type_id up to the root, type_id first."""
        self._require(type_id)
        chain = []
        current: Optional[str] = type_id
        while current is not None:
            chain.append(current)
            current = self.parents[current]
        return chain

    def is_subtype(self, a: str, b: str) -> bool:
        self._require(b)
        return b in self.ancestors(a)

    def valid_focalizations(self, type_id: str) -> List[str]:
        """Facets allowed for type_id: inherited ones first, root-most first."""
        allowed: List[str] = []
        for ancestor in reversed(self.ancestors(type_id)):
            for facet in self.facets.get(ancestor, ()):
                if facet not in allowed:
                    allowed.append(facet)
        return allowed

    def is_facet(self, facet: str) -> bool:
        return facet in self.facet_ids


def parse_hierarchy(text: str, source: Optional[str] = None) -> TypeHierarchy:
    """Parse and validate a hierarchy document."""
    nodes: List[str] = []
    parents: Dict[str, Optional[str]] = {}
    declared_at: Dict[str, int] = {}
    facet_lines: List[Tuple[int, str, str]] = []
    inventory: Optional[List[str]] = None
    root: Optional[str] = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        keyword = parts[0]

        if keyword == 'type':
            if len(parts) != 4 or parts[2] != 'parent':
                raise MalformedHierarchyError(f"Expected 'type <id> parent <id>', got {raw.strip()!r}", source, lineno)
            type_id, parent = parts[1], parts[3]
            _check_identifier(type_id, source, lineno)
            if type_id in parents:
                raise DuplicateTypeError(
                    f"Type {type_id!r} already declared on line {declared_at[type_id]}", source, lineno)
            if parent == ROOT_PARENT:
                if root is not None:
                    raise MalformedHierarchyError(
                        f"Second root {type_id!r}; {root!r} is already the root", source, lineno)
                root = type_id
                parents[type_id] = None
            else:
                _check_identifier(parent, source, lineno)
                parents[type_id] = parent
            nodes.append(type_id)
            declared_at[type_id] = lineno

        elif keyword == 'facet':
            if len(parts) != 3:
                raise MalformedHierarchyError(f"Expected 'facet <type-id> <facet-id>', got {raw.strip()!r}", source, lineno)
            _check_identifier(parts[1], source, lineno)
            _check_identifier(parts[2], source, lineno)
            facet_lines.append((lineno, parts[1], parts[2]))

        elif keyword == 'facets':
            if inventory is not None:
                raise MalformedHierarchyError("Facet inventory declared twice", source, lineno)
            inventory = []
            for facet_id in parts[1:]:
                _check_identifier(facet_id, source, lineno)
                if facet_id not in inventory:
                    inventory.append(facet_id)

        else:
            raise MalformedHierarchyError(f"Unknown directive {keyword!r}", source, lineno)

    if root is None:
        raise MalformedHierarchyError("No root declared (a 'type <id> parent -' line is required)", source)

    for type_id in nodes:
        parent = parents[type_id]
        if parent is not None and parent not in parents:
            raise UndeclaredParentError(
                f"Type {type_id!r} names undeclared parent {parent!r}", source, declared_at[type_id])

    _check_acyclic(root, parents, declared_at, source)

    facets: Dict[str, Tuple[str, ...]] = {type_id: () for type_id in nodes}
    facet_ids: List[str] = list(inventory) if inventory is not None else []
    for lineno, type_id, facet_id in facet_lines:
        if type_id not in parents:
            raise UnknownTypeError(f"Facet {facet_id!r} attached to undeclared type {type_id!r}", source, lineno)
        if inventory is not None and facet_id not in inventory:
            raise UndeclaredFacetError(f"Facet {facet_id!r} is not in the facet inventory", source, lineno)
        if facet_id in facets[type_id]:
            logger.debug(f"Ignoring repeated facet {facet_id} on {type_id} (line {lineno})")
            continue
        facets[type_id] = facets[type_id] + (facet_id,)
        if facet_id not in facet_ids:
            facet_ids.append(facet_id)

    return TypeHierarchy(
        root=root,
        nodes=tuple(nodes),
        parents=parents,
        facets=facets,
        facet_ids=tuple(facet_ids),
    )


def load_hierarchy(source: Union[str, Path]) -> TypeHierarchy:
    """Load a hierarchy document from a UTF-8 file."""
    path = Path(source)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as e:
        raise MalformedHierarchyError(f"Cannot read hierarchy: {e}", str(path)) from e
    hierarchy = parse_hierarchy(text, str(path))
    logger.info(f"Loaded hierarchy with {len(hierarchy.nodes)} types and "
                f"{len(hierarchy.facet_ids)} facets from {path}")
    return hierarchy


def serialize_hierarchy(hierarchy: TypeHierarchy) -> str:
    """Render a hierarchy back to its document form."""
    lines = []
    for type_id in hierarchy.nodes:
        parent = hierarchy.parents[type_id]
        lines.append(f"type {type_id} parent {parent if parent is not None else ROOT_PARENT}")
    if hierarchy.facet_ids:
        lines.append('facets ' + ' '.join(hierarchy.facet_ids))
    for type_id in hierarchy.nodes:
        for facet_id in hierarchy.facets[type_id]:
            lines.append(f"facet {type_id} {facet_id}")
    return '\n'.join(lines) + '\n'


def _check_identifier(identifier: str, source: Optional[str], lineno: int) -> None:
    if not IDENTIFIER_RE.match(identifier):
        raise MalformedHierarchyError(
            f"Invalid identifier {identifier!r} (lowercase letters, digits and '_' only)", source, lineno)


def _check_acyclic(root: str, parents: Dict[str, Optional[str]],
                   declared_at: Dict[str, int], source: Optional[str]) -> None:
    reaches_root = {root}
    for type_id in parents:
        path: List[str] = []
        current: Optional[str] = type_id
        while current not in reaches_root:
            if current in path:
                cycle = ' -> '.join(path[path.index(current):] + [current])
                raise HierarchyCycleError(f"Cycle in hierarchy: {cycle}", source, declared_at[type_id])
            path.append(current)
            current = parents[current]
        reaches_root.update(path)
