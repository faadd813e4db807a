from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Hashable, List, Optional, Sequence, Tuple

if TYPE_CHECKING:
    from ..context import Context
from ..analyzer import AnalyzerInterface, AnalyzerResult
from ..dataset import Dataset, load_dataset
from ..errors import ConfigurationError
from ..frequency import Literal, Rule
from ..measures import GoodnessMeasure
from ..miner import DependencyMiner
from ..oracle import ComparisonReport, brute_force_mine, compare
from ..search import Goal, PolarityMode, SearchConfig, SearchStats

COMPARE_EXIT_CODE = 3


@dataclass
class MiningRun:
    """Rules of one mining run together with what produced them."""

    dataset: Dataset
    config: SearchConfig
    measure: GoodnessMeasure
    rules: List[Rule]
    stats: SearchStats
    comparison: Optional[ComparisonReport] = None


def parse_literal(text: str, ds: Dataset) -> Literal:
    """Resolve "attr" (A=1) or "!attr" (A=0) against the data set's identifiers.

    FIMI items are integers, so numeric text falls back to an int lookup.
    """
    value = 0 if text.startswith("!") else 1
    name = text[1:] if value == 0 else text
    if not name:
        raise ConfigurationError(f"empty consequent {text!r}")
    attribute: Hashable = name
    if attribute not in ds:
        try:
            attribute = int(name)
        except ValueError:
            pass
    if attribute not in ds:
        raise ConfigurationError(f"unknown consequent attribute {name!r}")
    return Literal(attribute, value)


def build_config(ds: Dataset, **kwargs: Any) -> SearchConfig:
    """SearchConfig from the keyword arguments shared by mine and oracle."""
    consequents: Optional[Sequence[str]] = kwargs.get("consequents")
    literals: Optional[Tuple[Literal, ...]] = None
    if consequents:
        literals = tuple(parse_literal(text, ds) for text in consequents)
    goal: Optional[Goal] = kwargs.get("goal")
    if goal is None:
        raise ConfigurationError("one of --min-value or --top-k is required")
    return SearchConfig(
        measure=kwargs.get("measure", "chi2"),
        goal=goal,
        mode=PolarityMode(kwargs.get("mode", PolarityMode.POSITIVE)),
        max_antecedent_size=kwargs.get("max_size", 3),
        consequents=literals,
        allow_negated_consequents=kwargs.get("allow_negated", True),
        workers=kwargs.get("workers", 1),
    )


def _load(**kwargs: Any) -> Dataset:
    data_path = kwargs.get("data_path")
    if not data_path:
        raise ConfigurationError("data_path is required")
    return load_dataset(data_path, kwargs.get("input_format"), kwargs.get("row_sets") or "bitmap")


class MineAnalyzer(AnalyzerInterface):
    """Runs the branch-and-bound miner on a data file."""

    def __init__(self) -> None:
        self.logger = logging.getLogger(__name__)

    @property
    def category(self) -> str:
        return "mine"

    def analyze(self, context: "Context", **kwargs: Any) -> AnalyzerResult:
        """Mine the rules of the requested configuration.

        Args:
            context: Application context
            **kwargs: data_path, input_format, measure, goal, mode, max_size,
                consequents, allow_negated, workers, row_sets

        Returns:
            AnalyzerResult wrapping a MiningRun
        """
        ds = _load(**kwargs)
        cfg = build_config(ds, **kwargs)
        miner = DependencyMiner(ds, cfg, score_tolerance=context.setting("tolerances", "score"))
        result = miner.mine()
        self.logger.debug(f"Mined {len(result.rules)} rules from {kwargs['data_path']}")
        run = MiningRun(ds, cfg, miner.measure, result.rules, result.stats)
        return AnalyzerResult(self.category, run)


class OracleAnalyzer(AnalyzerInterface):
    """Runs the exhaustive miner and optionally compares it with the pruned one."""

    def __init__(self) -> None:
        self.logger = logging.getLogger(__name__)

    @property
    def category(self) -> str:
        return "oracle"

    def analyze(self, context: "Context", **kwargs: Any) -> AnalyzerResult:
        ds = _load(**kwargs)
        cfg = build_config(ds, **kwargs)
        tolerance = context.setting("tolerances", "score")
        stats = SearchStats()
        rules = brute_force_mine(
            ds,
            cfg,
            stats,
            max_attributes=context.setting("oracle", "max_attributes"),
            max_antecedent_size=context.setting("oracle", "max_antecedent_size"),
        )
        measure = cfg.resolve_measure()
        run = MiningRun(ds, cfg, measure, rules, stats)
        if not kwargs.get("compare"):
            return AnalyzerResult(self.category, run)

        mined = DependencyMiner(ds, cfg, score_tolerance=tolerance).mine()
        run.comparison = compare(
            mined.rules,
            rules,
            tolerance=tolerance,
            node_counts=(mined.stats.nodes_expanded, stats.nodes_expanded),
        )
        self.logger.info(f"Oracle comparison: {run.comparison.verdict}")
        exit_code = 0 if run.comparison.passed else COMPARE_EXIT_CODE
        return AnalyzerResult(self.category, run, exit_code)
