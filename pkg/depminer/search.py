"""Search configuration, result collection and rule ordering.

Shared by the branch-and-bound miner and the brute-force oracle. Nothing in
here depends on the bounds module.
"""
from __future__ import annotations

import bisect
import logging
import math
import threading
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, Hashable, List, Optional, Sequence, Tuple, Union

from .dataset import Dataset
from .errors import ConfigurationError, UnsupportedPolarityError
from .frequency import Literal, Polarity, Rule
from .measures import GoodnessMeasure, get_measure

logger = logging.getLogger(__name__)

RuleKey = Tuple[Any, ...]


class PolarityMode(str, Enum):
    POSITIVE = "pos"
    NEGATIVE = "neg"
    BOTH = "both"

    @property
    def polarities(self) -> Tuple[Polarity, ...]:
        if self is PolarityMode.POSITIVE:
            return (Polarity.POSITIVE,)
        if self is PolarityMode.NEGATIVE:
            return (Polarity.NEGATIVE,)
        return (Polarity.POSITIVE, Polarity.NEGATIVE)

    def accepts(self, polarity: Polarity) -> bool:
        return polarity in self.polarities


@dataclass(frozen=True)
class ThresholdGoal:
    """Enumerate every rule at least as good as ``min_value``."""

    min_value: float


@dataclass(frozen=True)
class TopKGoal:
    """Keep the ``k`` best rules."""

    k: int


Goal = Union[ThresholdGoal, TopKGoal]


@dataclass(frozen=True)
class SearchConfig:
    measure: Union[str, GoodnessMeasure]
    goal: Goal
    mode: PolarityMode = PolarityMode.POSITIVE
    max_antecedent_size: int = 3
    consequents: Optional[Tuple[Literal, ...]] = None
    allow_negated_consequents: bool = True
    workers: int = 1

    def resolve_measure(self) -> GoodnessMeasure:
        if isinstance(self.measure, GoodnessMeasure):
            return self.measure
        return get_measure(self.measure)

    def validate(self) -> GoodnessMeasure:
        """Check the config invariants and return the resolved measure.

        Raises:
            ConfigurationError: On any invalid field
            UnsupportedPolarityError: If the mode needs negative dependencies the measure lacks
        """
        measure = self.resolve_measure()
        if not isinstance(self.mode, PolarityMode):
            raise ConfigurationError(f"invalid polarity mode {self.mode!r}")
        if self.mode is not PolarityMode.POSITIVE and not measure.supports_negative:
            raise UnsupportedPolarityError(measure.name)
        if isinstance(self.goal, TopKGoal):
            if self.goal.k < 1:
                raise ConfigurationError(f"top-k requires k >= 1, got {self.goal.k}")
        elif isinstance(self.goal, ThresholdGoal):
            if math.isnan(self.goal.min_value):
                raise ConfigurationError("threshold must be a number")
        else:
            raise ConfigurationError(f"unknown search goal {self.goal!r}")
        if self.max_antecedent_size < 1:
            raise ConfigurationError(
                f"max antecedent size must be >= 1, got {self.max_antecedent_size}"
            )
        if self.workers < 1:
            raise ConfigurationError(f"worker count must be >= 1, got {self.workers}")
        return measure


@dataclass
class SearchStats:
    """Pruning-effectiveness counters."""

    nodes_expanded: int = 0
    nodes_pruned_by_bound: int = 0
    consequents_pruned: int = 0
    rules_emitted: int = 0

    @property
    def nodes_generated(self) -> int:
        return self.nodes_expanded + self.nodes_pruned_by_bound

    def merge(self, other: "SearchStats") -> None:
        self.nodes_expanded += other.nodes_expanded
        self.nodes_pruned_by_bound += other.nodes_pruned_by_bound
        self.consequents_pruned += other.consequents_pruned
        self.rules_emitted += other.rules_emitted

    def as_dict(self) -> Dict[str, int]:
        data = asdict(self)
        data["nodes_generated"] = self.nodes_generated
        return data


@dataclass
class MiningResult:
    rules: List[Rule]
    stats: SearchStats = field(default_factory=SearchStats)


def rule_sort_key(rule: Rule, measure: GoodnessMeasure) -> RuleKey:
    """Best score first, then shorter and lexicographically smaller antecedents."""
    return (
        -measure.orient(rule.score),
        len(rule.antecedent),
        rule.antecedent,
        rule.consequent.attribute,
        rule.consequent.value,
    )


def sort_rules(rules: Sequence[Rule], measure: GoodnessMeasure) -> List[Rule]:
    return sorted(rules, key=lambda r: rule_sort_key(r, measure))


class TopKCollector:
    """Keeps the K best rules; the K-th best score is the floating threshold.

    ``threshold`` is on the oriented scale (larger is better) and stays at
    -inf until K rules have been seen. Safe to share between threads.
    """

    def __init__(self, k: int, measure: GoodnessMeasure):
        if k < 1:
            raise ConfigurationError(f"top-k requires k >= 1, got {k}")
        self.k = k
        self.measure = measure
        self._keys: List[RuleKey] = []
        self._rules: List[Rule] = []
        self._lock = threading.Lock()

    @property
    def threshold(self) -> float:
        with self._lock:
            if len(self._rules) < self.k:
                return -math.inf
            return self.measure.orient(self._rules[-1].score)

    def offer(self, rule: Rule) -> bool:
        """Insert the rule if it belongs to the current top K."""
        key = rule_sort_key(rule, self.measure)
        with self._lock:
            if len(self._keys) == self.k and key >= self._keys[-1]:
                return False
            index = bisect.bisect_left(self._keys, key)
            self._keys.insert(index, key)
            self._rules.insert(index, rule)
            if len(self._keys) > self.k:
                self._keys.pop()
                self._rules.pop()
            return True

    def rules(self) -> List[Rule]:
        with self._lock:
            return list(self._rules)


class ThresholdCollector:
    """Keeps every rule whose score passes a fixed threshold."""

    def __init__(self, min_value: float, measure: GoodnessMeasure):
        self.measure = measure
        self.threshold = measure.orient(min_value)
        self._rules: List[Rule] = []
        self._lock = threading.Lock()

    def offer(self, rule: Rule) -> bool:
        if self.measure.orient(rule.score) < self.threshold:
            return False
        with self._lock:
            self._rules.append(rule)
        return True

    def rules(self) -> List[Rule]:
        with self._lock:
            return sort_rules(self._rules, self.measure)


Collector = Union[TopKCollector, ThresholdCollector]


def make_collector(goal: Goal, measure: GoodnessMeasure) -> Collector:
    if isinstance(goal, TopKGoal):
        return TopKCollector(goal.k, measure)
    return ThresholdCollector(goal.min_value, measure)


def candidate_consequents(ds: Dataset, cfg: SearchConfig) -> List[Literal]:
    """Consequent literals the search considers, in canonical order."""
    if cfg.consequents is not None:
        chosen = []
        for literal in cfg.consequents:
            if literal.attribute not in ds:
                raise ConfigurationError(f"unknown consequent attribute {literal.attribute!r}")
            if 0 < ds.consequent_count(literal) < ds.n:
                chosen.append(literal)
            else:
                logger.warning(f"Consequent {literal} holds on no row or on every row; skipped")
        return sorted(set(chosen), key=lambda lit: (lit.attribute, lit.value))

    values: Tuple[int, ...] = (1, 0) if cfg.allow_negated_consequents else (1,)
    return sorted(
        (Literal(attribute, value) for attribute in ds.mineable_attributes() for value in values),
        key=lambda lit: (lit.attribute, lit.value),
    )


def antecedent_attributes(ds: Dataset) -> Tuple[Hashable, ...]:
    return ds.mineable_attributes()
