import io
import json
import math
import re

import pytest

from depminer.frequency import FrequencyQuad, Literal, Rule
from depminer.measures import CHI2, MI
from depminer.mining.analyzer import MiningRun
from depminer.mining.reporter import RULE_COLUMNS, ComparisonReporter, RuleReporter
from depminer.oracle import compare
from depminer.search import SearchConfig, SearchStats, TopKGoal


def strip_ansi(text):
    return re.sub(r"\x1b\[[0-9;]*m", "", text)


@pytest.fixture
def rules():
    return [
        Rule(("x",), Literal("a"), FrequencyQuad(4, 4, 5, 10), CHI2.value(FrequencyQuad(4, 4, 5, 10))),
        Rule(("x", "z"), Literal("y", 0), FrequencyQuad(2, 2, 6, 10), CHI2.value(FrequencyQuad(2, 2, 6, 10))),
    ]


@pytest.fixture
def mining_run(toy_dataset, rules):
    stats = SearchStats(nodes_expanded=5, nodes_pruned_by_bound=3, consequents_pruned=1, rules_emitted=2)
    return MiningRun(toy_dataset, SearchConfig("chi2", TopKGoal(2)), CHI2, rules, stats)


@pytest.fixture
def reporter():
    return RuleReporter(output=io.StringIO())


class TestRuleReporter:
    def test_category_property(self, reporter):
        assert reporter.category == "mine"

    @pytest.mark.parametrize("data", [None, {"rules": []}, []])
    def test_get_report_invalid_format(self, reporter, data):
        with pytest.raises(ValueError, match="Invalid report format"):
            reporter.get_report(data)

    def test_csv_output(self, reporter, mining_run):
        reporter.print_report(mining_run)
        lines = reporter.output.getvalue().splitlines()
        assert lines[0] == ",".join(RULE_COLUMNS)
        assert lines[1] == "x,a,1,4,4,5,10,1,0.2,positive,chi2,6.66666666667"
        assert lines[2].startswith("x z,y,0,2,2,6,10,1,")
        assert len(lines) == 3

    def test_tsv_output(self, reporter, mining_run):
        reporter.print_report(mining_run, format="tsv")
        header = reporter.output.getvalue().splitlines()[0]
        assert header.split("\t") == RULE_COLUMNS

    def test_significant_digits(self, mining_run):
        reporter = RuleReporter(output=io.StringIO(), digits=4)
        reporter.print_report(mining_run)
        assert reporter.output.getvalue().splitlines()[1].endswith(",6.667")

    def test_unknown_format(self, reporter, mining_run):
        with pytest.raises(ValueError, match="output format"):
            reporter.print_report(mining_run, format="xml")

    def test_log_base_only_rescales_logarithmic_measures(self, reporter):
        assert reporter.score_scale(CHI2, "2") == 1.0
        assert reporter.score_scale(MI, "e") == 1.0
        assert reporter.score_scale(MI, "2") == pytest.approx(math.log(2))
        with pytest.raises(ValueError):
            reporter.score_scale(MI, "10")

    def test_mi_in_bits(self, reporter, mining_run, rules):
        quad = FrequencyQuad(4, 4, 5, 10)
        mining_run.measure = MI
        mining_run.rules = [Rule(("x",), Literal("a"), quad, MI.value(quad))]
        reporter.print_report(mining_run, log_base="2")
        score = float(reporter.output.getvalue().splitlines()[1].split(",")[-1])
        assert score == pytest.approx(MI.value(quad) / math.log(2), rel=1e-10)

    def test_empty_result_prints_header_only(self, reporter, mining_run):
        mining_run.rules = []
        reporter.print_report(mining_run)
        assert reporter.output.getvalue() == ",".join(RULE_COLUMNS) + "\n"

    def test_stats_to_stream(self, reporter, mining_run):
        stream = io.StringIO()
        reporter.write_stats(mining_run.stats, stream=stream)
        assert stream.getvalue().splitlines() == [
            "nodes_expanded=5",
            "nodes_pruned_by_bound=3",
            "consequents_pruned=1",
            "rules_emitted=2",
            "nodes_generated=8",
        ]

    def test_stats_to_json(self, reporter, mining_run, tmp_path):
        path = tmp_path / "stats.json"
        reporter.write_stats(mining_run.stats, path)
        assert json.loads(path.read_text())["nodes_generated"] == 8


class TestComparisonReporter:
    @pytest.fixture
    def comparison_reporter(self):
        return ComparisonReporter(output=io.StringIO())

    def test_category_property(self, comparison_reporter):
        assert comparison_reporter.category == "oracle"

    def test_get_report_invalid_format(self, comparison_reporter, mining_run):
        with pytest.raises(ValueError, match="Invalid report format"):
            comparison_reporter.get_report(mining_run)

    def test_passing_comparison(self, comparison_reporter, mining_run, rules):
        mining_run.comparison = compare(rules, rules, node_counts=(3, 12))
        comparison_reporter.print_report(mining_run)
        text = strip_ansi(comparison_reporter.output.getvalue())
        assert "missing: 0" in text
        assert "spurious: 0" in text
        assert "nodes expanded: miner=3 oracle=12 saved=0.75" in text
        assert "verdict: pass" in text

    def test_failing_comparison(self, comparison_reporter, rules):
        report = compare(rules[:1], rules)
        comparison_reporter.print_report(report)
        text = strip_ansi(comparison_reporter.output.getvalue())
        assert "missing: 1" in text
        assert "{x z} -> !y" in text
        assert "verdict: fail" in text

    def test_no_color_on_plain_stream(self, comparison_reporter, rules):
        comparison_reporter.print_report(compare(rules, rules))
        assert "\x1b[" not in comparison_reporter.output.getvalue()
