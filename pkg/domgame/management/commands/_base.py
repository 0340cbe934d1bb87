"""Shared plumbing of the domgame management commands."""
import json
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from domgame.exceptions import DomGameError
from domgame.graph_core import Graph, read_graph

INPUT_ERROR = 2
CHECK_FAILED = 1


class DomGameCommand(BaseCommand):
    """Turns library and input errors into exit code 2."""

    def execute(self, *args, **options):
        try:
            return super().execute(*args, **options)
        except (DomGameError, OSError, ValueError) as exc:
            raise CommandError(str(exc), returncode=INPUT_ERROR) from exc

    def add_graph_argument(self, parser):
        parser.add_argument('file', help='graph file: graph6 (.g6) or edge list ("n m" then "u v" lines)')

    def load_graph(self, path: str) -> Graph:
        return read_graph(path)

    def write_json(self, path: str, payload) -> None:
        text = payload if isinstance(payload, str) else json.dumps(payload, indent=2, sort_keys=True)
        Path(path).write_text(text + '\n')
        self.stdout.write(f"wrote {path}")

    def fail(self, message: str):
        raise CommandError(message, returncode=CHECK_FAILED)
