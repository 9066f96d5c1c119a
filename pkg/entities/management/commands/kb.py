"""
Django management command: query the entity template store.

    manage.py kb lookup ONU
    manage.py kb invert IsLeadedBy "Kofi Annan"
    manage.py kb export
"""
from django.core.management.base import CommandError

from entities.kb import serialize_templates
from entities.management.base import PipelineCommand
from entities.serializers import TemplateSerializer, render_record


class Command(PipelineCommand):
    help = 'Look up, invert or export entity templates'

    def add_arguments(self, parser):
        self.add_resource_arguments(parser)
        actions = parser.add_subparsers(dest='action', required=True)

        lookup = actions.add_parser('lookup', help='Template of an entity id')
        lookup.add_argument('entity_id')
        lookup.add_argument('--pretty', action='store_true')

        invert = actions.add_parser('invert', help='Entities carrying a value under an attribute')
        invert.add_argument('attribute')
        invert.add_argument('value')

        actions.add_parser('export', help='Print the store in template-file format')

    def handle(self, *args, **options):
        pipeline = self.build_pipeline(self.build_config(options))
        store = pipeline.store
        action = options['action']

        if action == 'lookup':
            template = store.lookup(options['entity_id'])
            if template is None:
                raise CommandError(f"No template for {options['entity_id']!r}", returncode=1)
            if options.get('pretty'):
                values = ', '.join(f"{name} = {' && '.join(vals)}" for name, vals in template.attributes.items())
                self.stdout.write(f"{template.entity_id} ({template.entity_type}): {values}")
            else:
                self.stdout.write(render_record(TemplateSerializer(template).data))

        elif action == 'invert':
            for entity_id in sorted(store.invert(options['attribute'], options['value'])):
                self.stdout.write(entity_id)

        elif action == 'export':
            self.stdout.write(serialize_templates(store), ending='')
