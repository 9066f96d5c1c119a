"""
Django management command: type, focalize and optionally enrich the entities
of plain-text documents.
"""
from django.core.management.base import CommandError

from entities.evaluation import to_gold_line
from entities.management.base import PipelineCommand
from entities.pipeline import process_documents
from entities.rendering import render_entity
from entities.serializers import MentionRecordSerializer, render_record


class Command(PipelineCommand):
    help = 'Annotate documents with typed, focalized named entities (one JSON record per mention)'

    def add_arguments(self, parser):
        parser.add_argument('documents', nargs='+', help="Plain-text files, or '-' for standard input")
        self.add_resource_arguments(parser)
        parser.add_argument('--trace', action='store_true', help='Include the focalization trace')
        parser.add_argument('--pretty', action='store_true', help='Render Entity{...} blocks instead of JSON')
        parser.add_argument('--with-template', action='store_true', dest='with_template',
                            help='Attach the entity template when the KB knows the entity')
        parser.add_argument('--as-gold', action='store_true', dest='as_gold',
                            help='Emit gold-format lines (doc_id, start, end, type, facet)')
        parser.add_argument('--workers', type=int, help='Documents processed concurrently')

    def handle(self, *args, **options):
        config = self.build_config(
            options,
            trace=options['trace'] or None,
            pretty=options['pretty'] or None,
            with_template=options['with_template'] or None,
            workers=options.get('workers'),
        )
        pipeline = self.build_pipeline(config)

        failures = 0
        results = process_documents(options['documents'], pipeline.annotate,
                                    workers=config.workers, stdin=self.stdin)
        for result in results:
            if result.error:
                failures += 1
                self.write_error(result)
                continue
            for annotated in result.records:
                if options['as_gold']:
                    self.stdout.write(to_gold_line(annotated.mention))
                elif config.pretty:
                    self.stdout.write(render_entity(annotated))
                else:
                    self.stdout.write(render_record(MentionRecordSerializer(annotated).data))

        if failures:
            raise CommandError(f"{failures} document(s) could not be annotated", returncode=1)
