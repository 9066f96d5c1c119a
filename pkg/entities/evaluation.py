"""
Scoring of system annotations against a gold standard with the combined
precision/recall measure P&R = 2PR / (P + R).

Gold file: `doc_id<TAB>start<TAB>end<TAB>type[<TAB>facet]`, one per line.
"""
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Set, Union

from .exceptions import DocumentSetMismatchError, GoldFormatError, InvalidRatioError, ScoringError
from .hierarchy import TypeHierarchy
from .mentions import NO_FOCUS, GoldAnnotation, Mention, Span

logger = logging.getLogger(__name__)

MATCH_MODES = ('exact', 'overlap')
# span: spans only; type: span + type; facet: span + type + facet
SCORE_KEYS = ('span', 'type', 'facet')


def fmeasure(precision: float, recall: float) -> float:
    for name, value in (('precision', precision), ('recall', recall)):
        if not 0.0 <= value <= 1.0:
            raise InvalidRatioError(f"{name} must lie in [0, 1], got {value!r}")
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


@dataclass(frozen=True)
class PRScores:
    precision: float
    recall: float
    combined: float
    true_positive: int
    system_total: int
    gold_total: int

    @classmethod
    def from_counts(cls, true_positive: int, system_total: int, gold_total: int) -> 'PRScores':
        if system_total == 0 and gold_total == 0:
            return cls(1.0, 1.0, 1.0, 0, 0, 0)
        precision = true_positive / system_total if system_total else 0.0
        recall = true_positive / gold_total if gold_total else 0.0
        return cls(precision, recall, fmeasure(precision, recall), true_positive, system_total, gold_total)


@dataclass(frozen=True)
class PRReport:
    overall: PRScores
    match_mode: str
    keys: str
    per_type: Dict[str, PRScores] = field(default_factory=dict)

    @property
    def precision(self) -> float:
        return self.overall.precision

    @property
    def recall(self) -> float:
        return self.overall.recall

    @property
    def combined(self) -> float:
        return self.overall.combined


def _as_gold(item: Union[Mention, GoldAnnotation]) -> GoldAnnotation:
    return GoldAnnotation.from_mention(item) if isinstance(item, Mention) else item


def is_compatible(system: GoldAnnotation, gold: GoldAnnotation, mode: str, keys: str) -> bool:
    """Whether a system/gold pair may count as a true positive."""
    if mode == 'exact':
        if system.span != gold.span:
            return False
    elif not system.span.overlaps(gold.span):
        return False
    if keys in ('type', 'facet') and system.entity_type != gold.entity_type:
        return False
    if keys == 'facet' and system.facet != gold.facet:
        return False
    return True


def max_matching(system: Sequence[GoldAnnotation], gold: Sequence[GoldAnnotation], mode: str, keys: str) -> int:
    """Size of a maximum one-to-one pairing of compatible items (augmenting paths)."""
    edges = [[j for j, g in enumerate(gold) if is_compatible(s, g, mode, keys)] for s in system]
    owner: Dict[int, int] = {}

    def augment(i: int, visited: Set[int]) -> bool:
        for j in edges[i]:
            if j in visited:
                continue
            visited.add(j)
            if j not in owner or augment(owner[j], visited):
                owner[j] = i
                return True
        return False

    # greedy left-to-right pass first; augmenting only repairs overlap-mode conflicts
    for i in sorted(range(len(system)), key=lambda k: system[k].span):
        augment(i, set())
    return len(owner)


def _count(system: List[GoldAnnotation], gold: List[GoldAnnotation], mode: str, keys: str) -> PRScores:
    by_doc_system: Dict[str, List[GoldAnnotation]] = defaultdict(list)
    by_doc_gold: Dict[str, List[GoldAnnotation]] = defaultdict(list)
    for item in system:
        by_doc_system[item.doc_id].append(item)
    for item in gold:
        by_doc_gold[item.doc_id].append(item)

    true_positive = 0
    for doc_id in sorted(set(by_doc_system) | set(by_doc_gold)):
        true_positive += max_matching(by_doc_system[doc_id], by_doc_gold[doc_id], mode, keys)
    return PRScores.from_counts(true_positive, len(system), len(gold))


def score(system: Iterable[Union[Mention, GoldAnnotation]], gold: Iterable[GoldAnnotation],
          mode: str = 'exact', keys: str = 'type', strict_documents: bool = False) -> PRReport:
    """
    Overall and per-gold-type precision, recall and P&R.

    With strict_documents, both sides must cover the same documents.
    """
    if mode not in MATCH_MODES:
        raise ScoringError(f"Unknown match mode {mode!r}; expected one of {MATCH_MODES}")
    if keys not in SCORE_KEYS:
        raise ScoringError(f"Unknown score keys {keys!r}; expected one of {SCORE_KEYS}")

    system_items = [_as_gold(item) for item in system]
    gold_items = list(gold)

    system_docs = {item.doc_id for item in system_items}
    gold_docs = {item.doc_id for item in gold_items}
    if strict_documents and system_docs != gold_docs:
        only_system = sorted(system_docs - gold_docs)
        only_gold = sorted(gold_docs - system_docs)
        raise DocumentSetMismatchError(
            f"Document sets differ (system only: {only_system}, gold only: {only_gold})")

    overall = _count(system_items, gold_items, mode, keys)
    per_type = {}
    for entity_type in sorted({item.entity_type for item in gold_items}):
        per_type[entity_type] = _count(
            [item for item in system_items if item.entity_type == entity_type],
            [item for item in gold_items if item.entity_type == entity_type],
            mode, keys)

    logger.info(f"Scored {len(system_items)} system against {len(gold_items)} gold annotations: "
                f"P&R={overall.combined:.4f}")
    return PRReport(overall, mode, keys, per_type)


# Gold file I/O

def parse_gold_line(line: str, source: Optional[str] = None, lineno: Optional[int] = None,
                    hierarchy: Optional[TypeHierarchy] = None) -> GoldAnnotation:
    """One gold record; with a hierarchy, its type must be declared there."""
    fields = line.rstrip('\n').split('\t')
    if len(fields) not in (4, 5):
        raise GoldFormatError(f"Expected 4 or 5 TAB-separated fields, got {len(fields)}", source, lineno)
    doc_id, start, end, entity_type = (f.strip() for f in fields[:4])
    facet = fields[4].strip() if len(fields) == 5 and fields[4].strip() else None
    if not doc_id or not entity_type:
        raise GoldFormatError("Empty document id or type", source, lineno)
    try:
        span = Span(int(start), int(end))
    except ValueError as e:
        raise GoldFormatError(f"Bad offsets {start!r}..{end!r}: {e}", source, lineno) from e
    check_type(entity_type, hierarchy, source, lineno)
    return GoldAnnotation(doc_id, span, entity_type, facet)


def load_gold(path: Union[str, Path], hierarchy: Optional[TypeHierarchy] = None) -> List[GoldAnnotation]:
    path = Path(path)
    try:
        lines = path.read_text(encoding='utf-8').splitlines()
    except (OSError, UnicodeDecodeError) as e:
        raise GoldFormatError(f"Cannot read gold file: {e}", str(path)) from e
    gold = []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip() or line.lstrip().startswith('#'):
            continue
        gold.append(parse_gold_line(line, str(path), lineno, hierarchy))
    logger.info(f"Loaded {len(gold)} gold annotations from {path}")
    return gold


def check_type(entity_type: str, hierarchy: Optional[TypeHierarchy], source: Optional[str] = None,
               lineno: Optional[int] = None) -> None:
    if hierarchy is not None and entity_type not in hierarchy:
        raise GoldFormatError(f"Type {entity_type!r} is not in the hierarchy", source, lineno)


def to_gold_line(item: Union[Mention, GoldAnnotation]) -> str:
    item = _as_gold(item)
    fields = [item.doc_id, str(item.span.start), str(item.span.end), item.entity_type, item.facet]
    return '\t'.join(fields)
