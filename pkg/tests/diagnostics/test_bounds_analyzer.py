from unittest.mock import Mock

import pytest

from depminer.bounds import BoundKind
from depminer.diagnostics.analyzer import BoundsAnalyzer, BoundsReport, default_mode
from depminer.errors import ConfigurationError, DomainError, UnsupportedPolarityError
from depminer.frequency import FrequencyQuad, Polarity
from depminer.measures import CHI2, Z1
from depminer.search import PolarityMode


@pytest.fixture
def analyzer():
    return BoundsAnalyzer()


def kinds(bounds):
    return {b.kind: b for b in bounds}


def test_category_property(analyzer):
    assert analyzer.category == "bounds"


def test_default_mode():
    assert default_mode(CHI2) is PolarityMode.BOTH
    assert default_mode(Z1) is PolarityMode.POSITIVE


def test_chi2_both_polarities(analyzer):
    result = analyzer.analyze(Mock(), measure="chi2", m_x=4, m_xa=4, m_a=5, n=10)
    report = result.data
    assert isinstance(report, BoundsReport)
    assert report.quad == FrequencyQuad(4, 4, 5, 10)
    assert set(report.bounds) == {Polarity.POSITIVE, Polarity.NEGATIVE}

    positive = kinds(report.bounds[Polarity.POSITIVE])
    assert positive[BoundKind.CONSEQUENT_SUP].value == pytest.approx(10.0)
    assert positive[BoundKind.ANTECEDENT_RULE].value == pytest.approx(20 / 3)
    assert positive[BoundKind.SUBTREE_KNOWN_XA].point == FrequencyQuad(4, 4, 5, 10)
    assert report.best_nxa[Polarity.POSITIVE] == 4

    negative = kinds(report.bounds[Polarity.NEGATIVE])
    # The rule itself is positive, so it has no negative value
    assert negative[BoundKind.ANTECEDENT_RULE].value is None
    assert negative[BoundKind.SUBTREE_KNOWN_XA].value == 0.0
    assert report.best_nxa[Polarity.NEGATIVE] == 0
    assert report.lattice == []


def test_explicit_mode_and_lattice(analyzer):
    report = analyzer.analyze(Mock(), measure=CHI2, m_x=6, m_xa=2, m_a=5, n=10, mode="neg", lattice=True).data
    assert list(report.bounds) == [Polarity.NEGATIVE]
    assert kinds(report.bounds[Polarity.NEGATIVE])[BoundKind.SUBTREE_KNOWN_XA].value == pytest.approx(20 / 3)
    assert len(report.lattice) == 34
    assert report.lattice[0] == FrequencyQuad(1, 0, 5, 10)


def test_positive_only_measure(analyzer):
    report = analyzer.analyze(Mock(), measure="z1", m_x=4, m_xa=4, m_a=5, n=10).data
    assert list(report.bounds) == [Polarity.POSITIVE]
    with pytest.raises(UnsupportedPolarityError):
        analyzer.analyze(Mock(), measure="z1", m_x=4, m_xa=4, m_a=5, n=10, mode="both")


def test_inconsistent_counts(analyzer):
    with pytest.raises(DomainError):
        analyzer.analyze(Mock(), measure="chi2", m_x=4, m_xa=5, m_a=5, n=10)


@pytest.mark.parametrize(
    "kwargs, message",
    [
        ({"m_x": 4, "m_xa": 4, "m_a": 5, "n": 10}, "measure is required"),
        ({"measure": "chi2", "m_x": 4, "m_xa": 4, "m_a": 5}, "missing count n"),
        ({"measure": "chi2", "m_x": 4, "m_a": 5, "n": 10}, "exactly one of m_xa or delta"),
        ({"measure": "chi2", "m_x": 4, "m_xa": 4, "delta": 0.2, "m_a": 5, "n": 10}, "exactly one of m_xa or delta"),
    ],
)
def test_missing_arguments(analyzer, kwargs, message):
    with pytest.raises(ConfigurationError, match=message):
        analyzer.analyze(Mock(), **kwargs)


class TestLeverageInput:
    @pytest.fixture
    def context(self):
        context = Mock()
        context.setting.return_value = 1e-9
        return context

    def test_delta_maps_to_joint_count(self, analyzer, context):
        report = analyzer.analyze(context, measure="chi2", m_x=4, delta=0.2, m_a=5, n=10).data
        assert report.quad == FrequencyQuad(4, 4, 5, 10)
        context.setting.assert_called_with("tolerances", "integral")

    def test_negative_delta(self, analyzer, context):
        report = analyzer.analyze(context, measure="chi2", m_x=6, delta=-0.1, m_a=5, n=10).data
        assert report.quad == FrequencyQuad(6, 2, 5, 10)

    def test_non_integral_delta_rejected(self, analyzer, context):
        with pytest.raises(DomainError, match="not an integer count"):
            analyzer.analyze(context, measure="chi2", m_x=4, delta=0.21, m_a=5, n=10)

    def test_tolerance_comes_from_context(self, analyzer, context):
        context.setting.return_value = 0.2
        report = analyzer.analyze(context, measure="chi2", m_x=4, delta=0.21, m_a=5, n=10).data
        assert report.quad.n_xa == 4
