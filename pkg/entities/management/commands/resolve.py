"""
Django management command: resolve definite descriptions such as
"L'organisation de Kofi Annan" against the entity templates.
"""
from django.core.management.base import CommandError

from entities.management.base import PipelineCommand
from entities.pipeline import process_documents
from entities.rendering import render_resolution
from entities.serializers import ResolutionRecordSerializer, render_record


class Command(PipelineCommand):
    help = 'Resolve definite nominal descriptions to KB entities via attribute inversion'

    def add_arguments(self, parser):
        parser.add_argument('documents', nargs='+', help="Plain-text files, or '-' for standard input")
        self.add_resource_arguments(parser)
        parser.add_argument('--pretty', action='store_true', help='Render Syn(...) / Justification lines')
        parser.add_argument('--workers', type=int, help='Documents processed concurrently')

    def handle(self, *args, **options):
        config = self.build_config(options, pretty=options['pretty'] or None, workers=options.get('workers'))
        pipeline = self.build_pipeline(config)

        failures = 0
        results = process_documents(options['documents'], pipeline.resolve,
                                    workers=config.workers, stdin=self.stdin)
        for result in results:
            if result.error:
                failures += 1
                self.write_error(result)
                continue
            for resolution in result.records:
                if config.pretty:
                    self.stdout.write(render_resolution(resolution))
                else:
                    self.stdout.write(render_record(ResolutionRecordSerializer(resolution).data))

        if failures:
            raise CommandError(f"{failures} document(s) could not be resolved", returncode=1)
