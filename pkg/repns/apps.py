from django.apps import AppConfig


class RepnsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'repns'
    verbose_name = 'Quantum-group representation matrices'
