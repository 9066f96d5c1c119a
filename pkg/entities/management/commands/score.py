"""
Django management command: score system annotations against a gold file with
precision, recall and the combined P&R measure.
"""
import logging
from io import BytesIO
from pathlib import Path

from django.core.management.base import CommandError
from rest_framework.exceptions import ParseError
from rest_framework.parsers import JSONParser

from entities.evaluation import MATCH_MODES, SCORE_KEYS, check_type, load_gold, parse_gold_line, score
from entities.exceptions import AnnotatorError, GoldFormatError, ScoringError
from entities.hierarchy import load_hierarchy
from entities.management.base import RESOURCE_FAILURE, PipelineCommand
from entities.mentions import GoldAnnotation, Span
from entities.serializers import PRReportSerializer, render_record

logger = logging.getLogger(__name__)


def load_system(path, hierarchy=None):
    """System annotations from gold-format TSV or annotate's JSON lines."""
    parser = JSONParser()
    path = Path(path)
    try:
        lines = path.read_text(encoding='utf-8').splitlines()
    except (OSError, UnicodeDecodeError) as e:
        raise GoldFormatError(f"Cannot read system file: {e}", str(path)) from e

    items = []
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith('#'):
            continue
        if not stripped.startswith('{'):
            items.append(parse_gold_line(line, str(path), lineno, hierarchy))
            continue
        try:
            record = parser.parse(BytesIO(stripped.encode('utf-8')))
            if 'error' in record:
                continue
            items.append(GoldAnnotation(
                doc_id=str(record['doc_id']),
                span=Span(int(record['start']), int(record['end'])),
                entity_type=str(record['entity_type']),
                focalisation=record.get('focalisation'),
            ))
        except (ParseError, ValueError, KeyError, TypeError) as e:
            raise GoldFormatError(f"Bad annotation record: {e}", str(path), lineno) from e
        check_type(items[-1].entity_type, hierarchy, str(path), lineno)
    return items


class Command(PipelineCommand):
    help = 'Score system annotations against gold annotations (precision, recall, P&R)'

    def add_arguments(self, parser):
        parser.add_argument('system', help='System annotations: annotate JSON lines or gold-format TSV')
        parser.add_argument('gold', help='Gold annotations: doc_id<TAB>start<TAB>end<TAB>type[<TAB>facet]')
        parser.add_argument('--mode', choices=MATCH_MODES, default='exact', help='Span matching mode')
        parser.add_argument('--keys', choices=SCORE_KEYS, default='type',
                            help='What must agree: span, span+type, or span+type+facet')
        parser.add_argument('--strict-docs', action='store_true', dest='strict_docs',
                            help='Fail when system and gold cover different documents')
        parser.add_argument('--report', help='Also write the report as JSON to this path')
        parser.add_argument('--hierarchy', help='Type hierarchy every annotation type must belong to')

    def handle(self, *args, **options):
        config = self.build_config(options)
        try:
            hierarchy = load_hierarchy(config.hierarchy)
        except AnnotatorError as e:
            logger.error(f"Resource load failed: {e}")
            raise CommandError(f"Resource load failed: {e}", returncode=RESOURCE_FAILURE)

        try:
            system = load_system(options['system'], hierarchy)
            gold = load_gold(options['gold'], hierarchy)
            report = score(system, gold, options['mode'], options['keys'],
                           strict_documents=options['strict_docs'])
        except ScoringError as e:
            logger.error(f"Scoring failed: {e}")
            raise CommandError(str(e), returncode=1)

        self.stdout.write(f"mode={report.match_mode} keys={report.keys}")
        self.stdout.write(self._line('overall', report.overall))
        for entity_type, scores in report.per_type.items():
            self.stdout.write(self._line(entity_type, scores))

        if options.get('report'):
            Path(options['report']).write_text(render_record(PRReportSerializer(report).data) + '\n',
                                               encoding='utf-8')
            self.stderr.write(self.style.SUCCESS(f"✓ Report written to {options['report']}"))

    @staticmethod
    def _line(label, scores):
        return (f"{label:<14} P={scores.precision:.4f} R={scores.recall:.4f} P&R={scores.combined:.4f} "
                f"(tp={scores.true_positive} system={scores.system_total} gold={scores.gold_total})")
