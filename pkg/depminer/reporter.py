from abc import ABC, abstractmethod
from typing import Any


class ReporterInterface(ABC):
    """Renders an analyzer result for people or for other programs."""

    @property
    @abstractmethod
    def category(self) -> str:
        """Category of the analyzer whose results this reporter renders"""

    @abstractmethod
    def get_report(self, data: Any, **kwargs: Any) -> Any:
        """Validate the data and return the object that will be rendered"""

    @abstractmethod
    def print_report(self, data: Any, **kwargs: Any) -> None:
        """Render the result to the reporter's output stream"""
