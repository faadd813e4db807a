import csv
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, TextIO, Union

from jinja2 import Environment, FileSystemLoader

from ..reporter import ReporterInterface
from ..reporters.base_reporter import BaseReporter
from ..verifier import CONDITIONS, AxiomReport, ConditionResult, Violation

VIOLATION_COLUMNS = ["condition", "n", "m_a", "n_x1", "n_xa1", "n_x2", "n_xa2", "v1", "v2"]
CONDITION_LABELS = {
    "i": "minimum at independence",
    "ii": "monotone in leverage",
    "iii": "monotone in n_x",
    "iv_a": "monotone along confidence",
    "iv_b": "monotone along complement confidence",
    "iv_a_opposite": "confidence, opposite side",
    "iv_b_opposite": "complement confidence, opposite side",
}
EXAMPLE_LIMIT = 5


class AxiomReporter(BaseReporter, ReporterInterface):
    """Summary table, markdown document and violation dump of an axiom check."""

    def __init__(self, output: Optional[TextIO] = None, digits: int = 12):
        super().__init__(output, digits)
        self.logger = logging.getLogger(__name__)
        template_dir = Path(__file__).parent.parent / "templates"
        self.env = Environment(
            autoescape=False,
            loader=FileSystemLoader(str(template_dir)),
            trim_blocks=True,
            lstrip_blocks=True,
        )

    @property
    def category(self) -> str:
        return "check-axioms"

    def get_report(self, data: Any, **kwargs: Any) -> AxiomReport:
        if not isinstance(data, AxiomReport):
            self.logger.error("Invalid report format")
            raise ValueError("Invalid report format")
        return data

    def _row(self, result: ConditionResult) -> Dict[str, Any]:
        return {
            "condition": result.condition,
            "label": CONDITION_LABELS.get(result.condition, result.condition),
            "status": result.status.value,
            "comparisons": result.comparisons,
            "strict": result.strict,
            "ties": result.ties,
            "violations": len(result.violations),
            "positive_side_only": result.positive_side_only,
        }

    def violation_row(self, violation: Violation) -> Dict[str, Any]:
        return {
            "condition": violation.condition,
            "n": violation.n,
            "m_a": violation.m_a,
            "n_x1": violation.first.n_x,
            "n_xa1": violation.first.n_xa,
            "n_x2": violation.second.n_x,
            "n_xa2": violation.second.n_xa,
            "v1": self.fmt(violation.v1),
            "v2": self.fmt(violation.v2),
        }

    def print_report(self, data: Any, **kwargs: Any) -> None:
        """Print the per-condition status table."""
        report = self.get_report(data)
        self._print_header(f"Axiom check: {report.measure}")
        self._write(f"n: {', '.join(str(n) for n in report.n_values)}\n\n")

        self._write(f"{'condition':<10} {'status':<20} {'comparisons':>12} {'ties':>10} {'violations':>10}  description\n")
        for name in CONDITIONS:
            self._write_row(self._row(report.conditions[name]))
        if report.probes:
            self._write("\nopposite-side probe (informational)\n")
            for result in report.probes.values():
                self._write_row(self._row(result))

        verdict = "pass" if report.passed else "fail"
        self._write(f"\nverdict: {self._colorize(verdict, verdict)}\n")
        for violation in report.violations[:EXAMPLE_LIMIT]:
            row = self.violation_row(violation)
            self._write(
                f"  {row['condition']} n={row['n']} m_a={row['m_a']}: "
                f"({row['n_x1']}, {row['n_xa1']})={row['v1']} vs ({row['n_x2']}, {row['n_xa2']})={row['v2']}\n"
            )

    def _write_row(self, row: Dict[str, Any]) -> None:
        status = f"{row['status']:<20}"
        label = row["label"] + (" (positive side)" if row["positive_side_only"] else "")
        self._write(
            f"{row['condition']:<10} {self._colorize(status, row['status'])} "
            f"{row['comparisons']:>12} {row['ties']:>10} {row['violations']:>10}  {label}\n"
        )

    def render_markdown(self, data: Any) -> str:
        report = self.get_report(data)
        template = self.env.get_template("axiom_report.md")
        return template.render(
            measure=report.measure,
            n_values=report.n_values,
            lattices=sum(len(v) for v in report.m_a_values.values()),
            verdict="pass" if report.passed else "fail",
            conditions=[self._row(report.conditions[c]) for c in CONDITIONS],
            probes=[self._row(r) for r in report.probes.values()],
            examples=[self.violation_row(v) for v in report.violations[:EXAMPLE_LIMIT]],
        )

    def print_report_markdown(self, data: Any) -> None:
        self._write(self.render_markdown(data))

    def write_violations_csv(self, data: Any, path: Union[str, Path]) -> int:
        """Dump every violation, probes excluded, and return how many were written."""
        report = self.get_report(data)
        rows: List[Dict[str, Any]] = [self.violation_row(v) for v in report.violations]
        with open(path, "w", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=VIOLATION_COLUMNS, lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
        self.logger.debug(f"Wrote {len(rows)} violations to {path}")
        return len(rows)
