"""Configure Django before pytest collects the domgame test modules."""
import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "domination_game.settings")
django.setup()
