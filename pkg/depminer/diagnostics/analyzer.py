from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Dict, List, Optional

if TYPE_CHECKING:
    from ..context import Context
from ..analyzer import AnalyzerInterface, AnalyzerResult
from ..bounds import Bound, all_bounds, best_nxa, check_polarity
from ..errors import ConfigurationError
from ..frequency import DeltaParams, FrequencyQuad, Polarity, legal_points, quad_from_delta
from ..measures import GoodnessMeasure, get_measure
from ..search import PolarityMode


@dataclass
class BoundsReport:
    measure: GoodnessMeasure
    quad: FrequencyQuad
    bounds: Dict[Polarity, List[Bound]]
    best_nxa: Dict[Polarity, int]
    lattice: List[FrequencyQuad] = field(default_factory=list)


def default_mode(measure: GoodnessMeasure) -> PolarityMode:
    return PolarityMode.BOTH if measure.supports_negative else PolarityMode.POSITIVE


class BoundsAnalyzer(AnalyzerInterface):
    """Evaluates every bound kind for one set of counts."""

    def __init__(self) -> None:
        self.logger = logging.getLogger(__name__)

    @property
    def category(self) -> str:
        return "bounds"

    def analyze(self, context: "Context", **kwargs: Any) -> AnalyzerResult:
        """
        Args:
            context: Application context
            **kwargs: measure, m_x, m_a, n, either m_xa or delta (leverage,
                mapped back to m_xa with the integral tolerance), mode
                (defaults to every polarity the measure supports) and lattice
        """
        measure = kwargs.get("measure")
        if measure is None:
            raise ConfigurationError("measure is required")
        if not isinstance(measure, GoodnessMeasure):
            measure = get_measure(measure)
        try:
            m_x, m_a, n = (int(kwargs[k]) for k in ("m_x", "m_a", "n"))
        except KeyError as e:
            raise ConfigurationError(f"missing count {e.args[0]}") from None
        m_xa = self._joint_count(context, m_x, m_a, n, kwargs.get("m_xa"), kwargs.get("delta"))

        mode: Optional[PolarityMode] = kwargs.get("mode")
        mode = default_mode(measure) if mode is None else PolarityMode(mode)
        bounds: Dict[Polarity, List[Bound]] = {}
        best: Dict[Polarity, int] = {}
        for polarity in mode.polarities:
            check_polarity(measure, polarity)
            bounds[polarity] = all_bounds(measure, m_x, m_xa, m_a, n, polarity)
            best[polarity] = best_nxa(m_x, m_a, n, polarity)

        lattice = list(legal_points(m_a, n)) if kwargs.get("lattice") else []
        self.logger.debug(f"Evaluated bounds of {measure.name} at ({m_x}, {m_xa}, {m_a}, {n})")
        report = BoundsReport(measure, FrequencyQuad(m_x, m_xa, m_a, n), bounds, best, lattice)
        return AnalyzerResult(self.category, report)

    def _joint_count(
        self, context: "Context", m_x: int, m_a: int, n: int, m_xa: Optional[int], delta: Optional[float]
    ) -> int:
        if (m_xa is None) == (delta is None):
            raise ConfigurationError("exactly one of m_xa or delta is required")
        if m_xa is not None:
            return int(m_xa)
        tolerance = context.setting("tolerances", "integral")
        quad = quad_from_delta(DeltaParams(m_x, float(delta), m_a, n), tolerance=tolerance)  # type: ignore[arg-type]
        self.logger.debug(f"delta={delta} maps to m_xa={quad.n_xa}")
        return quad.n_xa
