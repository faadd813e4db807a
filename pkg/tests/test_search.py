import math
import threading

import pytest

from depminer.errors import ConfigurationError, UnsupportedPolarityError
from depminer.frequency import FrequencyQuad, Literal, Polarity, Rule
from depminer.measures import CHI2, reverse_direction
from depminer.search import (
    PolarityMode,
    SearchConfig,
    SearchStats,
    ThresholdCollector,
    ThresholdGoal,
    TopKCollector,
    TopKGoal,
    candidate_consequents,
    sort_rules,
)


def make_rule(antecedent, consequent="a", score=1.0, value=1):
    return Rule(tuple(antecedent), Literal(consequent, value), FrequencyQuad(4, 4, 5, 10), score)


class TestSearchConfig:
    def test_defaults(self):
        cfg = SearchConfig("chi2", ThresholdGoal(3.84))
        assert cfg.mode is PolarityMode.POSITIVE
        assert cfg.max_antecedent_size == 3
        assert cfg.validate() is CHI2

    @pytest.mark.parametrize(
        "cfg, message",
        [
            (SearchConfig("chi2", TopKGoal(0)), "k >= 1"),
            (SearchConfig("chi2", ThresholdGoal(math.nan)), "must be a number"),
            (SearchConfig("chi2", ThresholdGoal(1.0), max_antecedent_size=0), "max antecedent size"),
            (SearchConfig("chi2", ThresholdGoal(1.0), workers=0), "worker count"),
            (SearchConfig("lift", ThresholdGoal(1.0)), "unknown measure"),
        ],
    )
    def test_invalid(self, cfg, message):
        with pytest.raises(ConfigurationError, match=message):
            cfg.validate()

    @pytest.mark.parametrize("mode", [PolarityMode.NEGATIVE, PolarityMode.BOTH])
    def test_positive_only_measure_refuses_negative_modes(self, mode):
        with pytest.raises(UnsupportedPolarityError, match="z1 does not support negative dependencies"):
            SearchConfig("z1", TopKGoal(5), mode=mode).validate()

    def test_mode_polarities(self):
        assert PolarityMode("both").polarities == (Polarity.POSITIVE, Polarity.NEGATIVE)
        assert PolarityMode.NEGATIVE.accepts(Polarity.NEGATIVE)
        assert not PolarityMode.POSITIVE.accepts(Polarity.INDEPENDENT)


class TestOrdering:
    def test_canonical_order(self):
        rules = [
            make_rule(["y"], score=2.0),
            make_rule(["x", "y"], score=5.0),
            make_rule(["x"], score=5.0),
            make_rule(["x"], consequent="b", score=5.0),
            make_rule(["x"], consequent="a", score=5.0, value=0),
        ]
        ordered = sort_rules(rules, CHI2)
        assert [(r.antecedent, str(r.consequent)) for r in ordered] == [
            (("x",), "!a"),
            (("x",), "a"),
            (("x",), "b"),
            (("x", "y"), "a"),
            (("y",), "a"),
        ]

    def test_decreasing_measure_sorts_ascending(self):
        measure = reverse_direction(CHI2)
        ordered = sort_rules([make_rule(["x"], score=-1.0), make_rule(["y"], score=-3.0)], measure)
        assert [r.antecedent for r in ordered] == [("y",), ("x",)]


class TestCollectors:
    def test_top_k_keeps_best_and_raises_threshold(self):
        collector = TopKCollector(2, CHI2)
        assert collector.threshold == -math.inf
        assert collector.offer(make_rule(["x"], score=1.0))
        assert collector.offer(make_rule(["y"], score=3.0))
        assert collector.threshold == 1.0
        assert collector.offer(make_rule(["z"], score=2.0))
        assert collector.threshold == 2.0
        assert not collector.offer(make_rule(["w"], score=0.5))
        assert [r.score for r in collector.rules()] == [3.0, 2.0]

    def test_top_k_tie_resolved_by_key(self):
        collector = TopKCollector(1, CHI2)
        collector.offer(make_rule(["y"], score=2.0))
        assert collector.offer(make_rule(["x"], score=2.0))
        assert not collector.offer(make_rule(["z"], score=2.0))
        assert collector.rules()[0].antecedent == ("x",)

    def test_top_k_is_thread_safe(self):
        collector = TopKCollector(10, CHI2)

        def worker(offset):
            for i in range(200):
                collector.offer(make_rule([f"v{offset}-{i}"], score=float(i)))

        threads = [threading.Thread(target=worker, args=(t,)) for t in range(4)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        rules = collector.rules()
        assert len(rules) == 10
        assert {r.score for r in rules} == {199.0, 198.0, 197.0}

    def test_threshold_collector(self):
        collector = ThresholdCollector(2.0, CHI2)
        assert collector.offer(make_rule(["x"], score=2.0))
        assert not collector.offer(make_rule(["y"], score=1.999))
        assert collector.offer(make_rule(["z"], score=4.0))
        assert [r.antecedent for r in collector.rules()] == [("z",), ("x",)]


class TestCandidateConsequents:
    def test_all_mineable_literals(self, toy_dataset):
        cfg = SearchConfig("chi2", ThresholdGoal(0.0))
        literals = candidate_consequents(toy_dataset, cfg)
        assert [str(c) for c in literals] == ["!a", "a", "!x", "x", "!y", "y", "!z", "z"]

    def test_without_negated(self, toy_dataset):
        cfg = SearchConfig("chi2", ThresholdGoal(0.0), allow_negated_consequents=False)
        assert [str(c) for c in candidate_consequents(toy_dataset, cfg)] == ["a", "x", "y", "z"]

    def test_restriction(self, toy_dataset):
        cfg = SearchConfig("chi2", ThresholdGoal(0.0), consequents=(Literal("z", 0), Literal("a")))
        assert candidate_consequents(toy_dataset, cfg) == [Literal("a"), Literal("z", 0)]

    def test_unknown_restriction(self, toy_dataset):
        cfg = SearchConfig("chi2", ThresholdGoal(0.0), consequents=(Literal("w"),))
        with pytest.raises(ConfigurationError, match="unknown consequent"):
            candidate_consequents(toy_dataset, cfg)


def test_stats_merge_and_export():
    stats = SearchStats(nodes_expanded=3, nodes_pruned_by_bound=2)
    stats.merge(SearchStats(nodes_expanded=1, consequents_pruned=1))
    assert stats.as_dict() == {
        "nodes_expanded": 4,
        "nodes_pruned_by_bound": 2,
        "consequents_pruned": 1,
        "rules_emitted": 0,
        "nodes_generated": 6,
    }
