"""
Shared plumbing for the annotation commands: resource flags, fail-fast
pipeline construction and the record writer.
"""
import logging
import sys

from django.core.management.base import BaseCommand, CommandError

from entities.exceptions import AnnotatorError
from entities.pipeline import AnnotationPipeline, PipelineConfig
from entities.serializers import ErrorRecordSerializer, render_record

logger = logging.getLogger(__name__)

# Exit status when a resource fails to load; per-document failures use 1
RESOURCE_FAILURE = 2


class PipelineCommand(BaseCommand):
    """Base for commands that need the loaded linguistic resources."""
    stealth_options = ('stdin',)

    def execute(self, *args, **options):
        self.stdin = options.get('stdin', sys.stdin)
        return super().execute(*args, **options)

    def add_resource_arguments(self, parser):
        group = parser.add_argument_group('resources')
        group.add_argument('--hierarchy', help='Type hierarchy document')
        group.add_argument('--gazetteer', help='Proper-name gazetteer (surface<TAB>type)')
        group.add_argument('--markers', help='Lexical markers (surface<TAB>type<TAB>before|after)')
        group.add_argument('--triggers', help='Focalization trigger rules')
        group.add_argument('--templates', help='Entity template file')
        group.add_argument('--heads', help='Head-noun lexicon (noun<TAB>type)')
        group.add_argument('--dictionary', help='General-language word list gating the marker rule')
        group.add_argument('--case-policy', choices=['exact', 'fold'], dest='case_policy',
                           help='Gazetteer case policy (default from settings)')

    def build_config(self, options, **extra) -> PipelineConfig:
        try:
            return PipelineConfig.from_settings(
                hierarchy=options.get('hierarchy'),
                gazetteer=options.get('gazetteer'),
                markers=options.get('markers'),
                triggers=options.get('triggers'),
                templates=options.get('templates'),
                heads=options.get('heads'),
                dictionary=options.get('dictionary'),
                case_policy=options.get('case_policy'),
                **extra,
            )
        except ValueError as e:
            raise CommandError(str(e))

    def build_pipeline(self, config: PipelineConfig) -> AnnotationPipeline:
        try:
            return AnnotationPipeline(config)
        except AnnotatorError as e:
            logger.error(f"Resource load failed: {e}")
            raise CommandError(f"Resource load failed: {e}", returncode=RESOURCE_FAILURE)

    def write_error(self, result) -> None:
        self.stdout.write(render_record(ErrorRecordSerializer(result).data))
        self.stderr.write(self.style.ERROR(f"✗ {result.error}"))
