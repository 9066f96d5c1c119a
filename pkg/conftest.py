import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'entity_annotator_project.settings')
django.setup()
