from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from .context import Context


@dataclass
class AnalyzerResult:
    """Outcome of one analyzer run.

    ``exit_code`` lets an analyzer signal a failed check (axiom violations,
    oracle mismatch) without raising; zero means success.
    """

    category: str
    data: Any
    exit_code: int = 0

    @property
    def ok(self) -> bool:
        return self.exit_code == 0


class AnalyzerInterface(ABC):
    """A unit of work behind one CLI subcommand."""

    @property
    @abstractmethod
    def category(self) -> str:
        """Subcommand category the analyzer serves"""

    @abstractmethod
    def analyze(self, context: "Context", **kwargs: Any) -> AnalyzerResult:
        """Run the computation and return its result"""
