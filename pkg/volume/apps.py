from django.apps import AppConfig


class VolumeConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'volume'
    verbose_name = 'Growth of the colored Jones polynomial'
