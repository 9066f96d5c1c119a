"""
Definite nominal anaphora through attribute inversion.

"L'organisation de Kofi Annan" is read as head noun `organisation` plus the
complement "Kofi Annan"; the entities whose template carries the complement
under some attribute, and whose type fits the head noun, are the candidates:

    Syn(L'organisation de Kofi Annan) = ONU
    Justification: IsLeadedBy(ONU)=Kofi_Annan
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .hierarchy import TypeHierarchy
from .kb import IS_COMPOSED_OF, IS_LEADED_BY, IS_LOCATED_IN, KIND_OF, TemplateStore
from .mentions import Span, Token
from .tokenizer import sentences

logger = logging.getLogger(__name__)

DEFINITE_ARTICLES = frozenset(['le', 'la', 'les', "l'", 'l’'])
DE_FORMS = frozenset(['de', "d'", 'd’'])

ATTRIBUTE_PRIORITY = (IS_LEADED_BY, IS_COMPOSED_OF, IS_LOCATED_IN, KIND_OF)


@dataclass(frozen=True)
class DefiniteDescription:
    surface: str
    head_noun: str
    complement: str
    span: Span
    head_type: str
    doc_id: str = '-'


@dataclass(frozen=True)
class Resolution:
    description: DefiniteDescription
    resolved_entity: Optional[str]
    justification: Optional[str]
    candidates: Tuple[Tuple[str, str], ...] = ()

    @property
    def is_resolved(self) -> bool:
        return self.resolved_entity is not None

    def syn(self) -> str:
        return f"Syn({self.description.surface}) = {self.resolved_entity or 'none'}"


def parse_description(text: str, tokens: List[Token], head_lexicon: Dict[str, str],
                      doc_id: str = '-') -> List[DefiniteDescription]:
    """Find `[definite article] [head noun] de|d' [Capitalized Name...]` in each sentence."""
    found: List[DefiniteDescription] = []
    for sentence in sentences(tokens):
        index = 0
        while index < len(sentence) - 3:
            article, head, de = sentence[index], sentence[index + 1], sentence[index + 2]
            head_key = head.surface.casefold()
            if (article.surface.casefold() in DEFINITE_ARTICLES and head_key in head_lexicon
                    and de.surface.casefold() in DE_FORMS):
                name_end = index + 3
                while name_end < len(sentence) and sentence[name_end].is_capitalized:
                    name_end += 1
                if name_end > index + 3:
                    first_name, last_name = sentence[index + 3], sentence[name_end - 1]
                    span = Span(article.span.start, last_name.span.end)
                    found.append(DefiniteDescription(
                        surface=text[span.start:span.end],
                        head_noun=head.surface,
                        complement=text[first_name.span.start:last_name.span.end],
                        span=span,
                        head_type=head_lexicon[head_key],
                        doc_id=doc_id,
                    ))
                    index = name_end
                    continue
            index += 1
    return found


def attribute_rank(attribute: str) -> Tuple[int, str]:
    """Leadership first, then composition, location, kind; other attributes alphabetically."""
    if attribute in ATTRIBUTE_PRIORITY:
        return (ATTRIBUTE_PRIORITY.index(attribute), '')
    return (len(ATTRIBUTE_PRIORITY), attribute)


def resolve(description: DefiniteDescription, store: TemplateStore,
            hierarchy: TypeHierarchy) -> Resolution:
    candidates: List[Tuple[str, str]] = []
    for attribute in store.attribute_names():
        for entity_id in store.invert(attribute, description.complement):
            template = store.lookup(entity_id)
            if template is None or template.entity_type not in hierarchy:
                continue
            if hierarchy.is_subtype(template.entity_type, description.head_type):
                candidates.append((entity_id, attribute))

    candidates.sort(key=lambda pair: (attribute_rank(pair[1]), pair[0]))
    if not candidates:
        logger.debug(f"No entity for {description.surface!r}")
        return Resolution(description, None, None, ())

    entity_id, attribute = candidates[0]
    value = '_'.join(description.complement.split())
    return Resolution(description, entity_id, f"{attribute}({entity_id})={value}", tuple(candidates))


def resolve_all(text: str, tokens: List[Token], head_lexicon: Dict[str, str], store: TemplateStore,
                hierarchy: TypeHierarchy, doc_id: str = '-') -> List[Resolution]:
    return [resolve(d, store, hierarchy) for d in parse_description(text, tokens, head_lexicon, doc_id)]
