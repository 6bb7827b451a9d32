from django.apps import AppConfig


class RmatrixConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'rmatrix'
    verbose_name = 'R-matrices and enhanced Yang-Baxter operators'
