"""Branch-and-bound search for dependency rules.

Antecedents are enumerated as a canonical prefix tree over the mineable
attributes in ascending identifier order. Each node caches its row set,
n_x and n_xa for every consequent still alive in its subtree, so all bounds
are computed from cached counts. One antecedent expansion serves all
consequents; a subtree is cut only when every consequent's bound fails.
"""
from __future__ import annotations

import logging
import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Optional, Sequence, Set, Tuple

from .bounds import consequent_sup, subtree_bound_known_xa, subtree_bound_unknown_xa
from .dataset import AnyRowSet, Dataset
from .errors import ConfigurationError
from .frequency import FrequencyQuad, Literal, Rule, is_legal, polarity
from .measures import GoodnessMeasure
from .search import (
    MiningResult,
    SearchConfig,
    SearchStats,
    ThresholdGoal,
    antecedent_attributes,
    candidate_consequents,
    make_collector,
)

# Relative slack on bound comparisons; bounds are only ever made weaker by it.
SCORE_TOLERANCE = 1e-9


@dataclass
class Node:
    """Antecedent X with cached counts per surviving consequent."""

    antecedent: Tuple[Hashable, ...]
    rows: AnyRowSet
    n_x: int
    last: int
    counts: Dict[Literal, int] = field(default_factory=dict)


@dataclass
class Expansion:
    children: List[Node]
    rules: List[Rule]


class DependencyMiner:
    """Finds the rules of a SearchConfig without visiting hopeless subtrees."""

    def __init__(self, ds: Dataset, cfg: SearchConfig, score_tolerance: float = SCORE_TOLERANCE):
        self.measure: GoodnessMeasure = cfg.validate()
        if ds.n <= 0 or len(ds.mineable_attributes()) < 2:
            raise ConfigurationError(
                "mining needs a non-empty data set with at least two non-constant attributes"
            )
        self.ds = ds
        self.cfg = cfg
        self.score_tolerance = score_tolerance
        self.polarities = cfg.mode.polarities
        self.attributes = antecedent_attributes(ds)
        self.consequents = candidate_consequents(ds, cfg)
        self.n_a = {c: ds.consequent_count(c) for c in self.consequents}
        self.collector = make_collector(cfg.goal, self.measure)
        self._pruned_consequents: Set[Literal] = set()
        self._lock = threading.Lock()
        self.logger = logging.getLogger(__name__)

    @property
    def threshold(self) -> float:
        return self.collector.threshold

    def _fails(self, oriented_bound: float, threshold: float) -> bool:
        if math.isinf(threshold):
            return threshold == math.inf
        slack = self.score_tolerance * max(1.0, abs(threshold))
        return oriented_bound < threshold - slack

    def _best(self, values: Sequence[float]) -> float:
        return max(self.measure.orient(v) for v in values)

    def consequent_bound(self, consequent: Literal) -> float:
        """Best value any rule with this consequent can reach, over the mined polarities."""
        m_a = self.n_a[consequent]
        return self._best([consequent_sup(self.measure, m_a, self.ds.n, p) for p in self.polarities])

    def known_xa_bound(self, n_x: int, n_xa: int, consequent: Literal) -> float:
        """Bound for every specialisation of a node whose counts for the consequent are known.

        Args:
            n_x: Rows covered by the node's antecedent
            n_xa: Of those, rows where the consequent holds
            consequent: Target literal

        Returns:
            The best of the per-polarity bounds, on the measure's raw scale
        """
        m_a = self.n_a[consequent]
        return self._best(
            [subtree_bound_known_xa(self.measure, n_x, n_xa, m_a, self.ds.n, p) for p in self.polarities]
        )

    def unknown_xa_bound(self, n_x: int, consequent: Literal) -> float:
        """Like known_xa_bound, for nodes that do not carry the consequent's count."""
        m_a = self.n_a[consequent]
        return self._best(
            [subtree_bound_unknown_xa(self.measure, n_x, m_a, self.ds.n, p) for p in self.polarities]
        )

    def prune_consequents(self, consequents: Optional[Sequence[Literal]] = None) -> List[Literal]:
        """Drop consequents whose supremum cannot reach the current threshold."""
        consequents = self.consequents if consequents is None else consequents
        threshold = self.threshold
        surviving = []
        for consequent in consequents:
            if self._fails(self.consequent_bound(consequent), threshold):
                with self._lock:
                    self._pruned_consequents.add(consequent)
                self.logger.debug(f"Consequent {consequent} pruned by its supremum")
            else:
                surviving.append(consequent)
        return surviving

    def _child(
        self, parent: Optional[Node], index: int, consequents: Sequence[Literal], stats: SearchStats
    ) -> Optional[Node]:
        attribute = self.attributes[index]
        applicable = [c for c in consequents if c.attribute != attribute]
        rows = self.ds.row_set(attribute) if parent is None else parent.rows & self.ds.row_set(attribute)
        n_x = len(rows)
        if applicable and n_x > 0:
            threshold = self.threshold
            applicable = [
                c for c in applicable if not self._fails(self.unknown_xa_bound(n_x, c), threshold)
            ]
        if not applicable or n_x == 0:
            stats.nodes_pruned_by_bound += 1
            return None

        antecedent = (attribute,) if parent is None else parent.antecedent + (attribute,)
        counts = {}
        for consequent in applicable:
            with_a = len(rows & self.ds.row_set(consequent.attribute))
            counts[consequent] = with_a if consequent.value == 1 else n_x - with_a
        return Node(antecedent, rows, n_x, index, counts)

    def expand_node(self, node: Node, stats: SearchStats) -> Expansion:
        """Emit the rules of a node and generate the children worth visiting."""
        stats.nodes_expanded += 1
        emitted = []
        for consequent, n_xa in node.counts.items():
            quad = FrequencyQuad(node.n_x, n_xa, self.n_a[consequent], self.ds.n)
            if not is_legal(quad) or not self.cfg.mode.accepts(polarity(quad)):
                continue
            rule = Rule(node.antecedent, consequent, quad, self.measure.value(quad))
            if self.collector.offer(rule):
                emitted.append(rule)

        children: List[Node] = []
        if len(node.antecedent) >= self.cfg.max_antecedent_size:
            return Expansion(children, emitted)

        threshold = self.threshold
        alive = [
            c for c, n_xa in node.counts.items()
            if not self._fails(self.known_xa_bound(node.n_x, n_xa, c), threshold)
        ]
        for index in range(node.last + 1, len(self.attributes)):
            child = self._child(node, index, alive, stats)
            if child is not None:
                children.append(child)
        return Expansion(children, emitted)

    def _search_subtree(self, index: int, consequents: Sequence[Literal]) -> SearchStats:
        stats = SearchStats()
        if not isinstance(self.cfg.goal, ThresholdGoal):
            # The K-th score may have risen since the search started
            consequents = self.prune_consequents(consequents)
        root = self._child(None, index, consequents, stats)
        stack = [root] if root is not None else []
        while stack:
            node = stack.pop()
            expansion = self.expand_node(node, stats)
            stack.extend(reversed(expansion.children))
        return stats

    def mine(self) -> MiningResult:
        """Run the search over every surviving consequent.

        Subtrees are independent, so with workers > 1 each root attribute is
        searched on its own thread and the counters are merged afterwards.

        Returns:
            MiningResult with rules in canonical order and the merged search counters
        """
        self.logger.debug(
            f"Mining {len(self.attributes)} attributes, {len(self.consequents)} consequents, "
            f"measure={self.measure.name}, mode={self.cfg.mode.value}"
        )
        consequents = self.prune_consequents()
        stats = SearchStats()
        if consequents:
            indices = range(len(self.attributes))
            if self.cfg.workers > 1:
                with ThreadPoolExecutor(max_workers=self.cfg.workers) as pool:
                    partial = list(pool.map(lambda i: self._search_subtree(i, consequents), indices))
            else:
                partial = [self._search_subtree(i, consequents) for i in indices]
            for part in partial:
                stats.merge(part)

        rules = self.collector.rules()
        stats.consequents_pruned = len(self._pruned_consequents)
        stats.rules_emitted = len(rules)
        self.logger.info(
            f"Found {len(rules)} rules; expanded {stats.nodes_expanded} nodes, "
            f"pruned {stats.nodes_pruned_by_bound}"
        )
        return MiningResult(rules, stats)


def mine(ds: Dataset, cfg: SearchConfig) -> MiningResult:
    """Branch-and-bound mining; rules come back in canonical order."""
    return DependencyMiner(ds, cfg).mine()


def prune_consequents(ds: Dataset, cfg: SearchConfig) -> List[Literal]:
    """Consequents that survive supremum pruning against the configured threshold."""
    return DependencyMiner(ds, cfg).prune_consequents()
