"""
Dynamic focalization: profile which facet of an entity its sentence puts
forward, or leave it underspecified.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .hierarchy import TypeHierarchy
from .lexicon import TriggerRule, TriggerRuleSet
from .mentions import NO_FOCUS, Mention, SemFrame, Token

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FocalizationTrace:
    mention: Mention
    fired_rule: Optional[str]
    competing_rules: Tuple[str, ...]
    facet: str

    def __post_init__(self):
        if self.fired_rule is None and self.facet != NO_FOCUS:
            raise ValueError("A focalization without a fired rule must be none")


@dataclass(frozen=True)
class _Candidate:
    rule: TriggerRule
    distance: int

    @property
    def rank(self):
        return (-self.rule.priority, self.distance, self.rule.rule_id)


def focalize(mention: Mention, tokens: List[Token], rules: TriggerRuleSet,
             hierarchy: TypeHierarchy) -> Tuple[SemFrame, FocalizationTrace]:
    """
    Pick the facet the mention's sentence activates.

    The winning rule has the highest priority, then the trigger nearest the
    mention (in tokens), then the smallest rule_id. Equal priority and
    distance with different facets leaves the facet at none.
    """
    sentence = [t for t in tokens if t.sentence_index == mention.sentence_index]
    inside = [i for i, t in enumerate(sentence) if mention.span.contains(t.span)]
    if not inside:
        return _settle(mention, None, ())
    mention_first, mention_last = inside[0], inside[-1]
    folded = [t.surface.casefold() for t in sentence]

    candidates: List[_Candidate] = []
    for rule in rules:
        if not hierarchy.is_subtype(mention.entity_type, rule.applies_to):
            continue
        distance = _nearest_trigger(rule, folded, mention_first, mention_last)
        if distance is not None:
            candidates.append(_Candidate(rule, distance))

    if not candidates:
        return _settle(mention, None, ())

    candidates.sort(key=lambda c: c.rank)
    winner = candidates[0]
    tied = [c for c in candidates
            if c.rule.priority == winner.rule.priority and c.distance == winner.distance]
    if any(c.rule.facet != winner.rule.facet for c in tied):
        tied_ids = tuple(c.rule.rule_id for c in tied)
        logger.debug(f"Conflicting triggers {', '.join(tied_ids)} for {mention.lexical_unit!r}; "
                     f"leaving focalisation underspecified")
        return _settle(mention, None, tied_ids)

    losers = tuple(c.rule.rule_id for c in candidates[1:])
    return _settle(mention, winner.rule, losers)


def _settle(mention: Mention, rule: Optional[TriggerRule],
            competing: Tuple[str, ...]) -> Tuple[SemFrame, FocalizationTrace]:
    facet = rule.facet if rule is not None else NO_FOCUS
    sem = SemFrame(mention.entity_type, facet)
    trace = FocalizationTrace(mention, rule.rule_id if rule else None, competing, facet)
    return sem, trace


def _nearest_trigger(rule: TriggerRule, folded: List[str], first: int, last: int) -> Optional[int]:
    """Token distance from the closest occurrence of any trigger form, or None."""
    best = None
    for form in rule.forms:
        width = len(form)
        for start in range(len(folded) - width + 1):
            if tuple(folded[start:start + width]) != form:
                continue
            end = start + width - 1
            if end < first:
                distance = first - end
            elif start > last:
                distance = start - last
            else:
                # trigger overlaps the mention itself
                continue
            if best is None or distance < best:
                best = distance
    return best


def focalize_all(mentions: List[Mention], tokens: List[Token], rules: TriggerRuleSet,
                 hierarchy: TypeHierarchy) -> List[Tuple[Mention, FocalizationTrace]]:
    results = []
    for mention in mentions:
        sem, trace = focalize(mention, tokens, rules, hierarchy)
        results.append((mention.with_sem(sem), trace))
    return results
