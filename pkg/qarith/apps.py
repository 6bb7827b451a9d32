from django.apps import AppConfig


class QarithConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'qarith'
    verbose_name = 'Root-of-unity q-arithmetic'
