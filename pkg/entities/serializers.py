from collections import OrderedDict

from rest_framework import serializers
from rest_framework.renderers import JSONRenderer


class OptionalFieldsSerializer(serializers.Serializer):
    """Drops optional keys whose value is None so records stay minimal."""
    optional_fields = ()

    def to_representation(self, instance):
        data = super().to_representation(instance)
        return OrderedDict((k, v) for k, v in data.items()
                           if not (k in self.optional_fields and v is None))


class TemplateSerializer(serializers.Serializer):
    entity_id = serializers.CharField()
    entity_type = serializers.CharField()
    attributes = serializers.SerializerMethodField()

    def get_attributes(self, template):
        return OrderedDict((name, list(values)) for name, values in template.attributes.items())


class TraceSerializer(serializers.Serializer):
    fired_rule = serializers.CharField(allow_null=True)
    competing_rules = serializers.ListField(child=serializers.CharField())
    facet = serializers.CharField()


class MentionRecordSerializer(OptionalFieldsSerializer):
    """One annotated mention; instance is an AnnotatedMention."""
    optional_fields = ('trace', 'template')

    doc_id = serializers.CharField(source='mention.doc_id')
    start = serializers.IntegerField(source='mention.span.start')
    end = serializers.IntegerField(source='mention.span.end')
    lexical_unit = serializers.CharField(source='mention.lexical_unit')
    entity_type = serializers.CharField(source='mention.sem.entity_type')
    focalisation = serializers.CharField(source='mention.sem.focalisation')
    trace = TraceSerializer(allow_null=True)
    template = TemplateSerializer(allow_null=True)


class ResolutionRecordSerializer(serializers.Serializer):
    doc_id = serializers.CharField(source='description.doc_id')
    start = serializers.IntegerField(source='description.span.start')
    end = serializers.IntegerField(source='description.span.end')
    description = serializers.CharField(source='description.surface')
    head_noun = serializers.CharField(source='description.head_noun')
    head_type = serializers.CharField(source='description.head_type')
    complement = serializers.CharField(source='description.complement')
    resolved_entity = serializers.CharField(allow_null=True)
    justification = serializers.CharField(allow_null=True)
    candidates = serializers.SerializerMethodField()

    def get_candidates(self, resolution):
        return [OrderedDict([('entity_id', entity_id), ('attribute', attribute)])
                for entity_id, attribute in resolution.candidates]


class ErrorRecordSerializer(serializers.Serializer):
    doc_id = serializers.CharField()
    error = serializers.CharField()


class PRScoresSerializer(serializers.Serializer):
    precision = serializers.FloatField()
    recall = serializers.FloatField()
    combined = serializers.FloatField()
    true_positive = serializers.IntegerField()
    system_total = serializers.IntegerField()
    gold_total = serializers.IntegerField()


class PRReportSerializer(serializers.Serializer):
    match_mode = serializers.CharField()
    keys = serializers.CharField()
    overall = PRScoresSerializer()
    per_type = serializers.SerializerMethodField()

    def get_per_type(self, report):
        return OrderedDict((entity_type, PRScoresSerializer(scores).data)
                           for entity_type, scores in report.per_type.items())


def render_record(data) -> str:
    """One JSON line, no trailing newline."""
    return JSONRenderer().render(data).decode('utf-8')
