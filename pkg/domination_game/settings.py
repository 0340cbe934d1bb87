"""
Django settings for the domination_game project.

The project has no web surface: Django provides configuration, logging,
the management-command CLI and the test runner for the ``domgame`` app.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


SECRET_KEY = os.environ.get(
    "SECRET_KEY",
    "django-insecure-domgame-local-only-key-not-for-deployment",
)

DEBUG = os.environ.get("DEBUG", "False").lower() in ("true", "1", "yes")

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    "domgame",
]

# Reports are files; nothing is persisted in a database.
DATABASES = {}

# Where `verify` writes reports when no explicit path is given
# (docker-compose mounts /app/reports for this)
DATA_DIR = Path(os.environ.get("DATA_DIR", BASE_DIR / "reports"))


# Engine tunables

# Largest order the exact minimax / branch-and-bound solver accepts.
DOMGAME_SOLVER_CAP = int(os.environ.get("DOMGAME_SOLVER_CAP", "22"))

# Memo entries a single exact solve may hold before it aborts.
DOMGAME_MEMO_BUDGET = int(os.environ.get("DOMGAME_MEMO_BUDGET", "4000000"))

# Nodes the worst-case Staller search may expand before it aborts.
DOMGAME_SEARCH_BUDGET = int(os.environ.get("DOMGAME_SEARCH_BUDGET", "2000000"))

# Restarts of the regular-pairing generator before giving up.
DOMGAME_PAIRING_RETRIES = int(os.environ.get("DOMGAME_PAIRING_RETRIES", "1000"))

# Default seed for every random choice (generators, random Staller).
DOMGAME_SEED = int(os.environ.get("DOMGAME_SEED", "0"))

# Worker processes used by corpus verification.
DOMGAME_WORKERS = int(os.environ.get("DOMGAME_WORKERS", "1"))


# Logging
# https://docs.djangoproject.com/en/5.2/topics/logging/

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {
            "format": "{levelname} {name}: {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "plain",
        },
    },
    "loggers": {
        "domgame": {
            "handlers": ["console"],
            "level": os.environ.get("DOMGAME_LOG_LEVEL", "WARNING").upper(),
            "propagate": False,
        },
    },
}


# Internationalization
# https://docs.djangoproject.com/en/5.2/topics/i18n/

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = True

USE_TZ = True
