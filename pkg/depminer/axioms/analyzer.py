from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Any, Optional, Sequence

if TYPE_CHECKING:
    from ..context import Context
from ..analyzer import AnalyzerInterface, AnalyzerResult
from ..errors import ConfigurationError
from ..measures import GoodnessMeasure, get_measure
from ..verifier import verify_measure

VIOLATION_EXIT_CODE = 4


class AxiomAnalyzer(AnalyzerInterface):
    """Sweeps a measure over integer lattices and checks the well-behaving conditions."""

    def __init__(self) -> None:
        self.logger = logging.getLogger(__name__)

    @property
    def category(self) -> str:
        return "check-axioms"

    def analyze(self, context: "Context", **kwargs: Any) -> AnalyzerResult:
        """Verify one measure.

        Args:
            context: Application context; supplies the n cap and tie tolerance
            **kwargs: measure (name or instance), n_values, m_a_values, probe, workers

        Returns:
            AnalyzerResult with an AxiomReport; exit code 4 when a condition is violated
        """
        measure = kwargs.get("measure")
        if measure is None:
            raise ConfigurationError("measure is required")
        if not isinstance(measure, GoodnessMeasure):
            measure = get_measure(measure)
        n_values: Optional[Sequence[int]] = kwargs.get("n_values")
        if not n_values:
            raise ConfigurationError("at least one n is required")

        self.logger.debug(f"Checking axioms of {measure.name} for n in {list(n_values)}")
        report = verify_measure(
            measure,
            n_values,
            kwargs.get("m_a_values"),
            max_n=context.setting("verifier", "max_n"),
            probe=kwargs.get("probe", False),
            workers=kwargs.get("workers", 1),
            tie_tolerance=context.setting("tolerances", "tie"),
        )
        if not report.passed:
            self.logger.info(f"{measure.name}: {len(report.violations)} violations")
        return AnalyzerResult(self.category, report, 0 if report.passed else VIOLATION_EXIT_CODE)
