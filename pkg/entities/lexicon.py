"""
Linguistic resources: proper-name gazetteers, lexical markers, focalization
trigger rules, head-noun lexicons and the general-language dictionary.

All files are UTF-8, TAB separated, one record per line; lines starting with
`#` are comments.

    gazetteer   surface<TAB>type
    markers     surface<TAB>type<TAB>before|after
    triggers    rule_id<TAB>form[|form...]<TAB>verb|noun|prep<TAB>type<TAB>facet<TAB>priority
    heads       noun<TAB>type
    dictionary  word
"""
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple, Union

import ahocorasick

from .exceptions import (
    DuplicateEntryError,
    MalformedRecordError,
    ResourceError,
    UnknownFacetError,
    UnknownTypeError,
)
from .hierarchy import TypeHierarchy
from .mentions import Token
from .tokenizer import surfaces

logger = logging.getLogger(__name__)

CASE_POLICIES = ('exact', 'fold')
MARKER_POSITIONS = ('before', 'after')
TRIGGER_KINDS = ('verb', 'noun', 'prep')

PathLike = Union[str, Path]


def read_records(path: PathLike, min_fields: int, max_fields: int) -> Iterator[Tuple[int, List[str]]]:
    """Yield (line number, fields) for every non-comment line of a TSV resource."""
    path = Path(path)
    try:
        with open(path, 'r', encoding='utf-8') as f:
            lines = f.read().splitlines()
    except (OSError, UnicodeDecodeError) as e:
        raise ResourceError(f"Cannot read resource: {e}", str(path)) from e

    for lineno, raw in enumerate(lines, start=1):
        if not raw.strip() or raw.lstrip().startswith('#'):
            continue
        fields = [part.strip() for part in raw.split('\t')]
        if not min_fields <= len(fields) <= max_fields:
            expected = min_fields if min_fields == max_fields else f"{min_fields}-{max_fields}"
            raise MalformedRecordError(
                f"Expected {expected} TAB-separated fields, got {len(fields)}", str(path), lineno)
        if any(not value for value in fields):
            raise MalformedRecordError("Empty field", str(path), lineno)
        yield lineno, fields


def fold(surface: str) -> str:
    return surface.casefold()


# Gazetteer

@dataclass(frozen=True)
class Gazetteer:
    entries: Dict[str, str] = field(default_factory=dict)
    case_policy: str = 'exact'

    def bind(self, hierarchy: TypeHierarchy) -> None:
        """Check every entry's type against the active hierarchy."""
        for surface, type_id in self.entries.items():
            if type_id not in hierarchy:
                raise UnknownTypeError(f"Gazetteer entry {surface!r} has unknown type {type_id!r}")

    def __len__(self) -> int:
        return len(self.entries)


def load_gazetteer(path: PathLike, case_policy: str = 'exact') -> Gazetteer:
    if case_policy not in CASE_POLICIES:
        raise ValueError(f"case_policy must be one of {CASE_POLICIES}, got {case_policy!r}")

    entries: Dict[str, str] = {}
    seen: Dict[str, Tuple[str, int]] = {}
    for lineno, (surface, type_id) in read_records(path, 2, 2):
        key = fold(surface) if case_policy == 'fold' else surface
        if key in seen:
            previous_type, previous_line = seen[key]
            if previous_type != type_id:
                raise DuplicateEntryError(
                    f"{surface!r} typed {type_id!r} conflicts with {previous_type!r} on line {previous_line}",
                    str(path), lineno)
            logger.debug(f"Duplicate gazetteer entry {surface!r} on line {lineno}")
            continue
        seen[key] = (type_id, lineno)
        entries[surface] = type_id

    logger.info(f"Loaded {len(entries)} gazetteer entries from {path}")
    return Gazetteer(entries, case_policy)


# Markers

@dataclass(frozen=True)
class Marker:
    surface: str
    entity_type: str
    position: str


@dataclass(frozen=True)
class MarkerLexicon:
    entries: Dict[str, Marker] = field(default_factory=dict)

    def bind(self, hierarchy: TypeHierarchy) -> None:
        for marker in self.entries.values():
            if marker.entity_type not in hierarchy:
                raise UnknownTypeError(f"Marker {marker.surface!r} has unknown type {marker.entity_type!r}")

    def __len__(self) -> int:
        return len(self.entries)


def load_markers(path: PathLike) -> MarkerLexicon:
    entries: Dict[str, Marker] = {}
    for lineno, (surface, type_id, position) in read_records(path, 3, 3):
        if position not in MARKER_POSITIONS:
            raise MalformedRecordError(f"Marker position must be before or after, got {position!r}",
                                       str(path), lineno)
        marker = Marker(surface, type_id, position)
        if surface in entries and entries[surface] != marker:
            raise DuplicateEntryError(f"Marker {surface!r} declared twice with different readings",
                                      str(path), lineno)
        entries[surface] = marker
    logger.info(f"Loaded {len(entries)} lexical markers from {path}")
    return MarkerLexicon(entries)


# General-language dictionary

@dataclass(frozen=True)
class GeneralDictionary:
    words: frozenset = frozenset()

    def __contains__(self, word: str) -> bool:
        return fold(word) in self.words

    def __len__(self) -> int:
        return len(self.words)


def load_dictionary(path: PathLike) -> GeneralDictionary:
    words = frozenset(fold(fields[0]) for _, fields in read_records(path, 1, 1))
    logger.info(f"Loaded {len(words)} general-language words from {path}")
    return GeneralDictionary(words)


# Head nouns for definite descriptions

def load_head_lexicon(path: PathLike, hierarchy: TypeHierarchy) -> Dict[str, str]:
    heads: Dict[str, str] = {}
    for lineno, (noun, type_id) in read_records(path, 2, 2):
        if type_id not in hierarchy:
            raise UnknownTypeError(f"Head noun {noun!r} has unknown type {type_id!r}", str(path), lineno)
        key = fold(noun)
        if key in heads and heads[key] != type_id:
            raise DuplicateEntryError(f"Head noun {noun!r} maps to both {heads[key]!r} and {type_id!r}",
                                      str(path), lineno)
        heads[key] = type_id
    logger.info(f"Loaded {len(heads)} head nouns from {path}")
    return heads


# Focalization triggers

@dataclass(frozen=True)
class TriggerRule:
    rule_id: str
    forms: Tuple[Tuple[str, ...], ...]
    trigger_kind: str
    applies_to: str
    facet: str
    priority: int = 0
    scope: str = 'sentence'


@dataclass(frozen=True)
class TriggerRuleSet:
    """Rules ordered by descending priority, then rule_id."""
    rules: Tuple[TriggerRule, ...] = ()

    def __iter__(self):
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)


def parse_trigger_forms(trigger: str) -> Tuple[Tuple[str, ...], ...]:
    """'avoir lieu|a eu lieu' -> (('avoir', 'lieu'), ('a', 'eu', 'lieu')), case folded."""
    forms = []
    for alternative in trigger.split('|'):
        form = tuple(fold(s) for s in surfaces(alternative.strip()))
        if form and form not in forms:
            forms.append(form)
    return tuple(forms)


def build_trigger_rules(rules: List[TriggerRule], hierarchy: TypeHierarchy) -> TriggerRuleSet:
    """Validate rules against the hierarchy and order them."""
    seen = set()
    for rule in rules:
        if rule.rule_id in seen:
            raise DuplicateEntryError(f"Duplicate rule id {rule.rule_id!r}")
        seen.add(rule.rule_id)
        _validate_rule(rule, hierarchy)
    return TriggerRuleSet(tuple(sorted(rules, key=lambda r: (-r.priority, r.rule_id))))


def load_trigger_rules(path: PathLike, hierarchy: TypeHierarchy) -> TriggerRuleSet:
    rules: List[TriggerRule] = []
    seen: Dict[str, int] = {}
    for lineno, (rule_id, trigger, kind, type_id, facet, priority) in read_records(path, 6, 6):
        if rule_id in seen:
            raise DuplicateEntryError(f"Rule id {rule_id!r} already used on line {seen[rule_id]}",
                                      str(path), lineno)
        seen[rule_id] = lineno
        if kind not in TRIGGER_KINDS:
            raise MalformedRecordError(f"Trigger kind must be one of {TRIGGER_KINDS}, got {kind!r}",
                                       str(path), lineno)
        try:
            rank = int(priority)
        except ValueError:
            rank = -1
        if rank < 0:
            raise MalformedRecordError(f"Priority must be an integer >= 0, got {priority!r}", str(path), lineno)
        forms = parse_trigger_forms(trigger)
        if not forms:
            raise MalformedRecordError(f"Empty trigger {trigger!r}", str(path), lineno)

        rule = TriggerRule(rule_id, forms, kind, type_id, facet, rank)
        try:
            _validate_rule(rule, hierarchy)
        except ResourceError as e:
            raise type(e)(e.message, str(path), lineno) from e
        rules.append(rule)

    rule_set = build_trigger_rules(rules, hierarchy)
    logger.info(f"Loaded {len(rule_set)} trigger rules from {path}")
    return rule_set


def _validate_rule(rule: TriggerRule, hierarchy: TypeHierarchy) -> None:
    if rule.applies_to not in hierarchy:
        raise UnknownTypeError(f"Rule {rule.rule_id!r} applies to unknown type {rule.applies_to!r}")
    if rule.facet not in hierarchy.valid_focalizations(rule.applies_to):
        raise UnknownFacetError(
            f"Rule {rule.rule_id!r}: facet {rule.facet!r} is not valid for {rule.applies_to!r}")


# Multi-pattern matcher

# Token separator in the automaton stream; \s matches it so no token contains it
SEPARATOR = '\x1f'


@dataclass(frozen=True)
class PatternMatch:
    start: int  # token index, inclusive
    end: int  # token index, exclusive
    source: str  # 'gazetteer' or 'marker'
    entity_type: str
    position: Optional[str] = None

    @property
    def length(self) -> int:
        return self.end - self.start


# (source, entity_type, position) attached to a pattern key
Reading = Tuple[str, str, Optional[str]]


class PatternMatcher:
    """
    Token-aligned Aho-Corasick matcher over gazetteer entries and markers.

    Patterns are keyed as SEP tok SEP tok ... SEP so a hit can only start and
    end on token boundaries. Folded gazetteers are searched against a
    case-folded stream, markers and exact gazetteers against the raw one.
    """

    def __init__(self, gazetteer: Gazetteer, markers: MarkerLexicon):
        self.case_policy = gazetteer.case_policy
        exact: Dict[str, List[Reading]] = {}
        folded: Dict[str, List[Reading]] = {}

        fold_gazetteer = gazetteer.case_policy == 'fold'
        for surface, type_id in gazetteer.entries.items():
            parts = surfaces(surface)
            if fold_gazetteer:
                folded.setdefault(self._key([fold(p) for p in parts]), []).append(('gazetteer', type_id, None))
            else:
                exact.setdefault(self._key(parts), []).append(('gazetteer', type_id, None))
        for surface, marker in markers.entries.items():
            exact.setdefault(self._key(surfaces(surface)), []).append(
                ('marker', marker.entity_type, marker.position))

        self._exact = self._build(exact)
        self._folded = self._build(folded)

    @staticmethod
    def _key(parts: List[str]) -> str:
        return SEPARATOR + SEPARATOR.join(parts) + SEPARATOR

    @staticmethod
    def _build(patterns: Dict[str, List[Reading]]) -> Optional[ahocorasick.Automaton]:
        patterns = {key: readings for key, readings in patterns.items() if key != SEPARATOR * 2}
        if not patterns:
            return None
        automaton = ahocorasick.Automaton()
        for key in sorted(patterns):
            readings = tuple(sorted(set(patterns[key]), key=lambda r: (r[0], r[1], r[2] or '')))
            automaton.add_word(key, (len(key), key.count(SEPARATOR) - 1, readings))
        automaton.make_automaton()
        return automaton

    @staticmethod
    def _scan(automaton: ahocorasick.Automaton, parts: List[str]) -> List[PatternMatch]:
        stream = SEPARATOR + SEPARATOR.join(parts) + SEPARATOR
        # stream offset of each token's leading separator -> token index
        offsets = {}
        position = 0
        for index, part in enumerate(parts):
            offsets[position] = index
            position += len(part) + 1

        found = []
        for end_char, (key_length, n_tokens, readings) in automaton.iter(stream):
            # end_char is inclusive
            start = offsets[end_char - key_length + 1]
            for source, entity_type, marker_position in readings:
                found.append(PatternMatch(start, start + n_tokens, source, entity_type, marker_position))
        return found

    def find(self, tokens: List[Token]) -> List[PatternMatch]:
        """All non-overlapping leftmost-longest matches, left to right."""
        if not tokens:
            return []
        parts = [token.surface for token in tokens]
        candidates: List[PatternMatch] = []
        if self._exact is not None:
            candidates.extend(self._scan(self._exact, parts))
        if self._folded is not None:
            candidates.extend(self._scan(self._folded, [fold(p) for p in parts]))
        return select_leftmost_longest(candidates)


def select_leftmost_longest(candidates: List[PatternMatch]) -> List[PatternMatch]:
    # A gazetteer reading beats a marker reading on an identical span
    ordered = sorted(candidates, key=lambda m: (m.start, -m.length, m.source != 'gazetteer',
                                                m.entity_type, m.position or ''))
    selected: List[PatternMatch] = []
    frontier = 0
    for match in ordered:
        if match.start >= frontier:
            selected.append(match)
            frontier = match.end
    return selected


def compile_matcher(gazetteer: Gazetteer, markers: MarkerLexicon) -> PatternMatcher:
    matcher = PatternMatcher(gazetteer, markers)
    logger.info(f"Compiled matcher over {len(gazetteer)} gazetteer entries and {len(markers)} markers")
    return matcher
