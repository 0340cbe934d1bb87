from django.apps import AppConfig


class DomgameConfig(AppConfig):
    name = "domgame"
    verbose_name = "Domination game engine and bound verifier"
