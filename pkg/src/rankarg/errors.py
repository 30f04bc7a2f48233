"""Exception hierarchy shared by every module."""

from __future__ import annotations


class RankargError(Exception):
    """Base class for all library errors."""


class FormulaSyntaxError(RankargError, ValueError):
    def __init__(self, message: str, offset: int, expected: frozenset[str] = frozenset()):
        self.offset = offset
        self.expected = frozenset(expected)
        self.reason = message
        super().__init__(f"{message} at byte {offset}{self.detail()}")

    def detail(self) -> str:
        return f" (expected one of: {', '.join(sorted(self.expected))})" if self.expected else ""


class AtomLimitExceeded(RankargError):
    pass


class SizeLimitExceeded(RankargError):
    pass


class ABFValidationError(RankargError, ValueError):
    pass


class StrictPremisesInconsistent(ABFValidationError):
    pass


class EmptyAssumptions(ABFValidationError):
    pass


class GammaAbOverlap(ABFValidationError):
    pass


class DuplicateAssumption(ABFValidationError):
    pass


class ContraryConditionViolated(ABFValidationError):
    pass


class UnknownSemantics(RankargError, KeyError):
    pass


class NoConvergence(RankargError):
    """Raised when a fixed-point iteration exhausts its budget.

    ``ranking`` carries the last iterate and ``residual`` its max-norm change.
    """

    def __init__(self, ranking, residual: float):
        self.ranking = ranking
        self.residual = residual
        super().__init__(
            f"no convergence after {ranking.iterations} iterations (residual {residual:.3e})"
        )


class GenerationExhausted(RankargError):
    pass


class KBFileError(RankargError):
    """Malformed knowledge-base file; ``line`` is 1-based."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
