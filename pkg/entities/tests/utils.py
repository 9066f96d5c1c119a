import tempfile
from pathlib import Path

from django.conf import settings

from entities.hierarchy import load_hierarchy
from entities.pipeline import AnnotationPipeline, PipelineConfig

RESOURCES = Path(settings.RESOURCES_DIR)
DEMO = RESOURCES / 'demo'


def bundled_hierarchy():
    return load_hierarchy(RESOURCES / 'hierarchy.txt')


def bundled_pipeline(**overrides):
    return AnnotationPipeline(PipelineConfig.from_settings(**overrides))


class TempFilesMixin:
    """Per-test scratch directory with a small writer."""

    def setUp(self):
        super().setUp()
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)

    def tearDown(self):
        self._tmp.cleanup()
        super().tearDown()

    def write(self, name, content):
        path = self.tmp / name
        path.write_text(content, encoding='utf-8')
        return path
