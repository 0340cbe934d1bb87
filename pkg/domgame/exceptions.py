"""Errors raised by the domination game engine."""


class DomGameError(Exception):
    """Base class for every error raised by the domgame app."""


class GraphFormatError(DomGameError, ValueError):
    """A graph could not be built or decoded."""


class IllegalMoveError(DomGameError):
    """A vertex was chosen that dominates no new vertex, or by the wrong player."""


class GameOverError(DomGameError):
    """A move was requested after the game ended."""


class SolverCapExceeded(DomGameError):
    """The graph is too large for exact solving; use strategy_lab instead."""


class MemoBudgetExceeded(SolverCapExceeded):
    """The exact solver's memo table outgrew its entry budget."""


class SearchBudgetExceeded(DomGameError):
    """The worst-case Staller search expanded more nodes than allowed."""


class SchemeInapplicable(DomGameError):
    """A value assignment stage is not defined on the current residual graph."""


class ParameterError(DomGameError, ValueError):
    """A parameter is outside the domain of a formula."""


class UnknownBoundary(DomGameError, ValueError):
    """A structural check was requested for a phase boundary the family lacks."""


class FamilyPreconditionError(DomGameError):
    """A strategy family was applied to a graph of too small minimum degree."""

    def __init__(self, message: str, *, delta: int, required: int):
        super().__init__(message)
        self.delta = delta
        self.required = required


class GeneratorExhausted(DomGameError):
    """The pairing model kept producing multigraphs past its retry budget."""
