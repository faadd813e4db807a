import csv
import json
import logging
import math
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, TextIO, Union

from ..frequency import Rule, confidence, leverage
from ..measures import LN2, GoodnessMeasure
from ..oracle import ComparisonReport
from ..reporter import ReporterInterface
from ..reporters.base_reporter import BaseReporter
from ..search import SearchStats
from .analyzer import MiningRun

RULE_COLUMNS = [
    "antecedent",
    "consequent_attr",
    "consequent_value",
    "n_x",
    "n_xa",
    "n_a",
    "n",
    "confidence",
    "leverage",
    "polarity",
    "measure",
    "score",
]
DELIMITERS = {"csv": ",", "tsv": "\t"}
LOG_BASES = ("e", "2")


class RuleReporter(BaseReporter, ReporterInterface):
    """Writes mined rules as CSV or TSV, one rule per row."""

    def __init__(self, output: Optional[TextIO] = None, digits: int = 12):
        super().__init__(output, digits)
        self.logger = logging.getLogger(__name__)

    @property
    def category(self) -> str:
        return "mine"

    def get_report(self, data: Any, **kwargs: Any) -> MiningRun:
        if not isinstance(data, MiningRun):
            self.logger.error("Invalid report format")
            raise ValueError("Invalid report format")
        return data

    def score_scale(self, measure: GoodnessMeasure, log_base: str = "e") -> float:
        """Divisor applied to printed scores; only logarithmic measures are rescaled."""
        if log_base not in LOG_BASES:
            raise ValueError(f"log base must be one of {', '.join(LOG_BASES)}")
        return LN2 if log_base == "2" and measure.descriptor.logarithmic else 1.0

    def rule_row(self, rule: Rule, measure: GoodnessMeasure, scale: float = 1.0) -> List[str]:
        quad = rule.quad
        return [
            " ".join(str(a) for a in rule.antecedent),
            str(rule.consequent.attribute),
            str(rule.consequent.value),
            str(quad.n_x),
            str(quad.n_xa),
            str(quad.n_a),
            str(quad.n),
            self.fmt(confidence(quad)),
            self.fmt(leverage(quad)),
            rule.polarity.value,
            measure.name,
            self.fmt(rule.score / scale),
        ]

    def print_report(self, data: Any, **kwargs: Any) -> None:
        """Write the rule table.

        Args:
            data: MiningRun to render
            **kwargs: ``format`` (csv or tsv) and ``log_base`` (e or 2)
        """
        run = self.get_report(data)
        delimiter = DELIMITERS.get(kwargs.get("format", "csv"))
        if delimiter is None:
            raise ValueError(f"output format must be one of {', '.join(DELIMITERS)}")
        scale = self.score_scale(run.measure, kwargs.get("log_base", "e"))

        writer = csv.writer(self.output, delimiter=delimiter, lineterminator="\n")
        writer.writerow(RULE_COLUMNS)
        for rule in run.rules:
            writer.writerow(self.rule_row(rule, run.measure, scale))

    def write_stats(
        self, stats: SearchStats, json_path: Optional[Union[str, Path]] = None, stream: Optional[TextIO] = None
    ) -> None:
        """Emit the pruning counters as key=value lines, or as JSON when a path is given."""
        counters: Dict[str, int] = stats.as_dict()
        if json_path is not None:
            with open(json_path, "w") as f:
                json.dump(counters, f, indent=2, sort_keys=True)
                f.write("\n")
            return
        stream = stream or sys.stderr
        for key in ("nodes_expanded", "nodes_pruned_by_bound", "consequents_pruned", "rules_emitted", "nodes_generated"):
            stream.write(f"{key}={counters[key]}\n")


class ComparisonReporter(BaseReporter, ReporterInterface):
    """Human-readable verdict of a miner versus oracle comparison."""

    def __init__(self, output: Optional[TextIO] = None, digits: int = 12):
        super().__init__(output, digits)
        self.logger = logging.getLogger(__name__)

    @property
    def category(self) -> str:
        return "oracle"

    def get_report(self, data: Any, **kwargs: Any) -> ComparisonReport:
        comparison = getattr(data, "comparison", data)
        if not isinstance(comparison, ComparisonReport):
            self.logger.error("Invalid report format")
            raise ValueError("Invalid report format")
        return comparison

    def _rule_line(self, rule: Rule) -> str:
        return f"  {rule}  score={self.fmt(rule.score)}\n"

    def print_report(self, data: Any, **kwargs: Any) -> None:
        report = self.get_report(data)
        self._print_header("Miner vs Oracle")
        self._write(f"missing: {len(report.missing)}\n")
        for rule in report.missing:
            self._write(self._rule_line(rule))
        self._write(f"spurious: {len(report.spurious)}\n")
        for rule in report.spurious:
            self._write(self._rule_line(rule))
        self._write(f"mismatches: {len(report.mismatches)}\n")
        for mismatch in report.mismatches:
            antecedent, consequent = mismatch.identity
            self._write(
                f"  {' '.join(str(a) for a in antecedent)} -> {consequent}  "
                f"miner={self.fmt(mismatch.miner_score)} oracle={self.fmt(mismatch.oracle_score)}\n"
            )
        if report.node_counts is not None:
            miner_nodes, oracle_nodes = report.node_counts
            saved = 1.0 - miner_nodes / oracle_nodes if oracle_nodes else math.nan
            self._write(
                f"nodes expanded: miner={miner_nodes} oracle={oracle_nodes} saved={self.fmt(saved)}\n"
            )
        self._write(f"verdict: {self._colorize(report.verdict, report.verdict)}\n")
