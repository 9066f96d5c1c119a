"""
Pipeline configuration and orchestration shared by the management commands.

Every resource is loaded and cross-checked when the pipeline is built, so a
bad resource stops the run before any document is touched.
"""
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Tuple, TypeVar

from django.conf import settings

from .evaluation import MATCH_MODES, SCORE_KEYS
from .focalizer import FocalizationTrace, focalize_all
from .hierarchy import TypeHierarchy, load_hierarchy
from .kb import EntityTemplate, TemplateStore, load_templates
from .lexicon import (
    CASE_POLICIES,
    GeneralDictionary,
    PatternMatcher,
    TriggerRuleSet,
    compile_matcher,
    load_dictionary,
    load_gazetteer,
    load_head_lexicon,
    load_markers,
    load_trigger_rules,
)
from .mentions import Mention
from .recognizer import recognize
from .resolver import Resolution, resolve_all
from .tokenizer import tokenize

logger = logging.getLogger(__name__)

T = TypeVar('T')


@dataclass(frozen=True)
class PipelineConfig:
    hierarchy: str
    gazetteer: str
    markers: str
    triggers: str
    templates: str
    heads: str
    dictionary: Optional[str] = None
    case_policy: str = 'exact'
    trace: bool = False
    with_template: bool = False
    pretty: bool = False
    match_mode: str = 'exact'
    score_keys: str = 'type'
    workers: int = 1

    def __post_init__(self):
        if self.case_policy not in CASE_POLICIES:
            raise ValueError(f"case_policy must be one of {CASE_POLICIES}")
        if self.match_mode not in MATCH_MODES:
            raise ValueError(f"match_mode must be one of {MATCH_MODES}")
        if self.score_keys not in SCORE_KEYS:
            raise ValueError(f"score_keys must be one of {SCORE_KEYS}")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")

    @classmethod
    def from_settings(cls, **overrides) -> 'PipelineConfig':
        """Settings (and the environment behind them) first, then non-None overrides."""
        options = getattr(settings, 'ENTITY_ANNOTATOR', {})
        config = cls(
            hierarchy=options['HIERARCHY'],
            gazetteer=options['GAZETTEER'],
            markers=options['MARKERS'],
            triggers=options['TRIGGERS'],
            templates=options['TEMPLATES'],
            heads=options['HEADS'],
            dictionary=options.get('DICTIONARY') or None,
            case_policy=options.get('CASE_POLICY', 'exact'),
            workers=options.get('WORKERS', 1),
        )
        return replace(config, **{k: v for k, v in overrides.items() if v is not None})


@dataclass(frozen=True)
class AnnotatedMention:
    mention: Mention
    trace: Optional[FocalizationTrace] = None
    template: Optional[EntityTemplate] = None


@dataclass(frozen=True)
class DocumentResult:
    doc_id: str
    records: Tuple = ()
    error: Optional[str] = None


@dataclass
class AnnotationPipeline:
    config: PipelineConfig
    hierarchy: TypeHierarchy = field(init=False)
    matcher: PatternMatcher = field(init=False)
    rules: TriggerRuleSet = field(init=False)
    store: TemplateStore = field(init=False)
    heads: Dict[str, str] = field(init=False)
    dictionary: Optional[GeneralDictionary] = field(init=False)

    def __post_init__(self):
        config = self.config
        self.hierarchy = load_hierarchy(config.hierarchy)
        gazetteer = load_gazetteer(config.gazetteer, config.case_policy)
        gazetteer.bind(self.hierarchy)
        markers = load_markers(config.markers)
        markers.bind(self.hierarchy)
        self.matcher = compile_matcher(gazetteer, markers)
        self.rules = load_trigger_rules(config.triggers, self.hierarchy)
        self.store = load_templates(config.templates, self.hierarchy)
        self.heads = load_head_lexicon(config.heads, self.hierarchy)
        self.dictionary = load_dictionary(config.dictionary) if config.dictionary else None

    def annotate(self, doc_id: str, text: str) -> List[AnnotatedMention]:
        tokens = tokenize(text)
        mentions = recognize(text, tokens, self.matcher, self.hierarchy, self.dictionary, doc_id)
        annotated = []
        for mention, trace in focalize_all(mentions, tokens, self.rules, self.hierarchy):
            mention.sem.validate(self.hierarchy)
            template = self.store.lookup(mention.lexical_unit) if self.config.with_template else None
            annotated.append(AnnotatedMention(
                mention=mention,
                trace=trace if self.config.trace else None,
                template=template,
            ))
        logger.debug(f"{doc_id}: {len(annotated)} mentions")
        return annotated

    def resolve(self, doc_id: str, text: str) -> List[Resolution]:
        tokens = tokenize(text)
        return resolve_all(text, tokens, self.heads, self.store, self.hierarchy, doc_id)


def doc_id_for(name: str) -> str:
    return 'stdin' if name == '-' else Path(name).stem


def read_document(name: str, stdin=None) -> Tuple[str, str]:
    """(doc_id, text) for a path or '-' (standard input)."""
    if name == '-':
        stream = stdin or sys.stdin
        return doc_id_for(name), stream.read()
    return doc_id_for(name), Path(name).read_text(encoding='utf-8')


def process_documents(names: Iterable[str], work: Callable[[str, str], List[T]],
                      workers: int = 1, stdin=None) -> Iterator[DocumentResult]:
    """
    Run `work` over each document, possibly on a thread pool; results come
    back in input order so one writer can stream them.
    """
    names = list(names)
    seen: Dict[str, str] = {}
    for name in names:
        doc_id = doc_id_for(name)
        if doc_id in seen and seen[doc_id] != name:
            logger.warning(f"{name} and {seen[doc_id]} share doc_id {doc_id!r}; "
                           f"their annotations merge when scored")
        seen.setdefault(doc_id, name)
    # stdin is read up front, never from a worker thread
    preloaded = {name: read_document(name, stdin) for name in names if name == '-'}

    def run(name: str) -> DocumentResult:
        try:
            doc_id, text = preloaded.get(name) or read_document(name)
        except (OSError, UnicodeDecodeError) as e:
            logger.error(f"Cannot read {name}: {e}")
            return DocumentResult(doc_id_for(name), error=f"{name}: {e}")
        return DocumentResult(doc_id, tuple(work(doc_id, text)))

    if workers <= 1 or len(names) <= 1:
        for name in names:
            yield run(name)
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(run, names)
