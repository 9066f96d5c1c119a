"""
Surface-linguistic entity recognition: gazetteer matches plus lexical-marker
rules over capitalized unknown words.
"""
import logging
from typing import List, Optional, Set

from .hierarchy import TypeHierarchy
from .lexicon import GeneralDictionary, PatternMatch, PatternMatcher
from .mentions import NO_FOCUS, Mention, SemFrame, Span, Token
from .tokenizer import tokenize

logger = logging.getLogger(__name__)

# Longest name a marker may type
MAX_MARKED_TOKENS = 4

__all__ = ['tokenize', 'recognize', 'MAX_MARKED_TOKENS']


def recognize(text: str, tokens: List[Token], matcher: PatternMatcher, hierarchy: TypeHierarchy,
              dictionary: Optional[GeneralDictionary] = None, doc_id: str = '-') -> List[Mention]:
    """
    Type the entities of one document.

    Gazetteer matches are taken as they are. A marker types the run of
    capitalized unknown words on its declared side, stopping at the sentence
    edge, at any matched token and after MAX_MARKED_TOKENS words. Output is
    sorted by offset with no overlaps; every focalisation starts as none.
    """
    matches = matcher.find(tokens)
    claimed: Set[int] = set()
    for match in matches:
        claimed.update(range(match.start, match.end))

    candidates: List[PatternMatch] = []
    for match in matches:
        if match.source == 'gazetteer':
            candidates.append(match)
        else:
            named = _marked_name(tokens, match, claimed, dictionary)
            if named is not None:
                candidates.append(named)

    mentions: List[Mention] = []
    frontier = 0
    # gazetteer spans sort ahead of marker-derived ones at the same start
    for candidate in sorted(candidates, key=lambda m: (m.start, m.source != 'gazetteer', -m.length)):
        if candidate.start < frontier:
            logger.debug(f"Dropping overlapping {candidate.source} candidate at token {candidate.start}")
            continue
        if candidate.entity_type not in hierarchy:
            logger.warning(f"Skipping match with type {candidate.entity_type!r} outside the hierarchy")
            continue
        first, last = tokens[candidate.start], tokens[candidate.end - 1]
        span = Span(first.span.start, last.span.end)
        mentions.append(Mention(
            lexical_unit=text[span.start:span.end],
            span=span,
            doc_id=doc_id,
            sem=SemFrame(candidate.entity_type, NO_FOCUS),
            sentence_index=first.sentence_index,
        ))
        frontier = candidate.end
    return mentions


def _marked_name(tokens: List[Token], marker: PatternMatch, claimed: Set[int],
                 dictionary: Optional[GeneralDictionary]) -> Optional[PatternMatch]:
    if marker.position == 'before':
        anchor = tokens[marker.end - 1]
        indices = range(marker.end, min(len(tokens), marker.end + MAX_MARKED_TOKENS))
    else:
        anchor = tokens[marker.start]
        indices = range(marker.start - 1, max(-1, marker.start - 1 - MAX_MARKED_TOKENS), -1)

    run = []
    for index in indices:
        token = tokens[index]
        if token.sentence_index != anchor.sentence_index or index in claimed:
            break
        if not _is_unknown_name(token, dictionary):
            break
        run.append(index)

    if not run:
        return None
    start, end = min(run), max(run) + 1
    return PatternMatch(start, end, 'marker', marker.entity_type, marker.position)


def _is_unknown_name(token: Token, dictionary: Optional[GeneralDictionary]) -> bool:
    if not token.is_capitalized:
        return False
    return dictionary is None or token.surface not in dictionary
