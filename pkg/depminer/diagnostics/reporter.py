import csv
import logging
from pathlib import Path
from typing import Any, Optional, TextIO, Union

from ..frequency import confidence, leverage, polarity
from ..reporter import ReporterInterface
from ..reporters.base_reporter import BaseReporter
from .analyzer import BoundsReport

LATTICE_COLUMNS = ["n_x", "n_xa", "polarity", "leverage", "confidence", "value"]


class BoundsReporter(BaseReporter, ReporterInterface):
    """Prints bound values and dumps the legal lattice for plotting."""

    def __init__(self, output: Optional[TextIO] = None, digits: int = 12):
        super().__init__(output, digits)
        self.logger = logging.getLogger(__name__)

    @property
    def category(self) -> str:
        return "bounds"

    def get_report(self, data: Any, **kwargs: Any) -> BoundsReport:
        if not isinstance(data, BoundsReport):
            self.logger.error("Invalid report format")
            raise ValueError("Invalid report format")
        return data

    def print_report(self, data: Any, **kwargs: Any) -> None:
        report = self.get_report(data)
        self._print_header(f"Bounds: {report.measure.name} at {report.quad}")
        for pol, bounds in report.bounds.items():
            self._write(f"\n{self._colorize(pol.value, 'bold')} (best n_xa = {report.best_nxa[pol]})\n")
            for bound in bounds:
                value = "n/a" if bound.value is None else self.fmt(bound.value)
                point = "" if bound.point is None else f"  at {bound.point}"
                self._write(f"  {bound.kind.value:<20} {value}{point}\n")

    def write_lattice_csv(self, data: Any, path: Union[str, Path]) -> int:
        """Write every legal (n_x, n_xa) of the report's consequent with its value."""
        report = self.get_report(data)
        measure = report.measure
        with open(path, "w", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(LATTICE_COLUMNS)
            for quad in report.lattice:
                writer.writerow(
                    [
                        quad.n_x,
                        quad.n_xa,
                        polarity(quad).value,
                        self.fmt(leverage(quad)),
                        self.fmt(confidence(quad)),
                        self.fmt(measure.value(quad)),
                    ]
                )
        self.logger.debug(f"Wrote {len(report.lattice)} lattice points to {path}")
        return len(report.lattice)
