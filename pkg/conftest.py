import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'qjk_project.settings')
django.setup()
