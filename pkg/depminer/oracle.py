"""Brute-force reference miner and result comparison.

Enumerates every antecedent up to the size cap with no pruning at all.
Deliberately independent of the bounds module so that comparing it with the
branch-and-bound miner actually tests the bounds.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from .dataset import Dataset, count_quad
from .errors import ConfigurationError, GuardRailError
from .frequency import Literal, Rule, is_legal, polarity
from .search import (
    SearchConfig,
    SearchStats,
    ThresholdGoal,
    antecedent_attributes,
    candidate_consequents,
    sort_rules,
)

logger = logging.getLogger(__name__)

MAX_ATTRIBUTES = 16
MAX_ANTECEDENT_SIZE = 6
SCORE_TOLERANCE = 1e-9

Identity = Tuple[Tuple[Hashable, ...], Literal]


def brute_force_mine(
    ds: Dataset,
    cfg: SearchConfig,
    stats: Optional[SearchStats] = None,
    max_attributes: int = MAX_ATTRIBUTES,
    max_antecedent_size: int = MAX_ANTECEDENT_SIZE,
) -> List[Rule]:
    """Every rule of the configuration, found by exhaustive enumeration.

    Raises:
        GuardRailError: If the data has more than ``max_attributes`` attributes
            or the size cap exceeds ``max_antecedent_size``
    """
    measure = cfg.validate()
    if len(ds.attributes) > max_attributes:
        raise GuardRailError(
            f"oracle refuses {len(ds.attributes)} attributes (limit {max_attributes})"
        )
    if cfg.max_antecedent_size > max_antecedent_size:
        raise GuardRailError(
            f"oracle refuses antecedent size {cfg.max_antecedent_size} (limit {max_antecedent_size})"
        )
    if ds.n <= 0 or len(ds.mineable_attributes()) < 2:
        raise ConfigurationError(
            "mining needs a non-empty data set with at least two non-constant attributes"
        )

    stats = stats if stats is not None else SearchStats()
    consequents = candidate_consequents(ds, cfg)
    attributes = antecedent_attributes(ds)
    rules = []
    for size in range(1, cfg.max_antecedent_size + 1):
        for antecedent in combinations(attributes, size):
            stats.nodes_expanded += 1
            for consequent in consequents:
                if consequent.attribute in antecedent:
                    continue
                quad = count_quad(ds, antecedent, consequent)
                if not is_legal(quad) or not cfg.mode.accepts(polarity(quad)):
                    continue
                rules.append(Rule(antecedent, consequent, quad, measure.value(quad)))

    if isinstance(cfg.goal, ThresholdGoal):
        floor = measure.orient(cfg.goal.min_value)
        rules = [r for r in rules if measure.orient(r.score) >= floor]
    rules = sort_rules(rules, measure)
    if not isinstance(cfg.goal, ThresholdGoal):
        rules = rules[: cfg.goal.k]
    stats.rules_emitted = len(rules)
    logger.debug(f"Oracle enumerated {stats.nodes_expanded} antecedents, kept {len(rules)} rules")
    return rules


@dataclass
class ScoreMismatch:
    identity: Identity
    miner_score: float
    oracle_score: float

    @property
    def delta(self) -> float:
        return abs(self.miner_score - self.oracle_score)


@dataclass
class ComparisonReport:
    missing: List[Rule] = field(default_factory=list)
    spurious: List[Rule] = field(default_factory=list)
    mismatches: List[ScoreMismatch] = field(default_factory=list)
    node_counts: Optional[Tuple[int, int]] = None

    @property
    def passed(self) -> bool:
        return not (self.missing or self.spurious or self.mismatches)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"


def compare(
    miner_rules: Sequence[Rule],
    oracle_rules: Sequence[Rule],
    tolerance: float = SCORE_TOLERANCE,
    node_counts: Optional[Tuple[int, int]] = None,
) -> ComparisonReport:
    """Set difference on rule identity plus score deltas on the intersection.

    Args:
        miner_rules: Output of the branch-and-bound miner
        oracle_rules: Output of ``brute_force_mine`` for the same data and config
        tolerance: Largest accepted absolute score difference
        node_counts: (miner nodes expanded, oracle nodes expanded), reported as is
    """
    found: Dict[Identity, Rule] = {r.identity: r for r in miner_rules}
    expected: Dict[Identity, Rule] = {r.identity: r for r in oracle_rules}
    report = ComparisonReport(node_counts=node_counts)
    report.missing = [r for i, r in expected.items() if i not in found]
    report.spurious = [r for i, r in found.items() if i not in expected]
    for identity, rule in expected.items():
        other = found.get(identity)
        if other is not None and abs(other.score - rule.score) > tolerance:
            report.mismatches.append(ScoreMismatch(identity, other.score, rule.score))
    return report
