"""Goodness measures for dependency rules.

Every measure is a pure function of a legal FrequencyQuad. Sign decisions use
the exact integer difference n*n_xa - n_x*n_a; magnitudes are computed in
double precision. Logarithms are natural; ``0 * ln 0`` is taken as 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Dict, Union

from .errors import ConfigurationError
from .frequency import FrequencyQuad, dependency_sign, require_legal

# Divide a natural-log score by this to present it in bits.
LN2 = math.log(2.0)


class Direction(str, Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"


class PolaritySupport(str, Enum):
    BOTH = "both"
    POSITIVE_ONLY = "positive_only"


@dataclass(frozen=True)
class MeasureDescriptor:
    name: str
    direction: Direction = Direction.INCREASING
    polarity_support: PolaritySupport = PolaritySupport.BOTH
    logarithmic: bool = False
    description: str = ""


@dataclass(frozen=True)
class GoodnessMeasure:
    """Evaluation contract: descriptor plus a pure scoring function.

    ``baseline`` is the value at independence, i.e. the worst value the
    measure takes on the legal set.
    """

    descriptor: MeasureDescriptor
    function: Callable[[FrequencyQuad], float]
    baseline: float = 0.0

    @property
    def name(self) -> str:
        return self.descriptor.name

    @property
    def increasing(self) -> bool:
        return self.descriptor.direction is Direction.INCREASING

    @property
    def supports_negative(self) -> bool:
        return self.descriptor.polarity_support is PolaritySupport.BOTH

    def value(self, quad: FrequencyQuad) -> float:
        return self.function(require_legal(quad))

    __call__ = value

    def orient(self, value: float) -> float:
        """Map a raw score onto a scale where larger is always better."""
        return value if self.increasing else -value


def _xlog(count: int, numerator: int, denominator: int) -> float:
    if count == 0:
        return 0.0
    return count * math.log(numerator / denominator)


def chi_square(quad: FrequencyQuad) -> float:
    """n * delta^2 scaled by the four marginals; symmetric in polarity."""
    n_x, n_xa, n_a, n = require_legal(quad).as_tuple()
    diff = n * n_xa - n_x * n_a
    return n * diff * diff / (n_x * (n - n_x) * n_a * (n - n_a))


def mutual_information(quad: FrequencyQuad) -> float:
    """Mutual information of X and A, in nats, multiplied by n."""
    n_x, n_xa, n_a, n = require_legal(quad).as_tuple()
    if n * n_xa == n_x * n_a:
        return 0.0
    n_nx, n_na = n - n_x, n - n_a
    cells = (
        (n_xa, n_x, n_a),
        (n_x - n_xa, n_x, n_na),
        (n_a - n_xa, n_nx, n_a),
        (n - n_x - n_a + n_xa, n_nx, n_na),
    )
    total = sum(_xlog(count, n * count, row * col) for count, row, col in cells)
    return max(total, 0.0)


def z_score_1(quad: FrequencyQuad) -> float:
    n_x, n_xa, n_a, n = require_legal(quad).as_tuple()
    if dependency_sign(quad) <= 0:
        return 0.0
    diff = n * n_xa - n_x * n_a
    return math.sqrt(n) * diff / math.sqrt(n_x * n_a * (n * n - n_x * n_a))


def z_score_2(quad: FrequencyQuad) -> float:
    n_x, n_xa, n_a, n = require_legal(quad).as_tuple()
    if dependency_sign(quad) <= 0:
        return 0.0
    diff = n * n_xa - n_x * n_a
    return diff / math.sqrt(n_x * n_a * (n - n_a))


def j_measure(quad: FrequencyQuad) -> float:
    n_x, n_xa, n_a, n = require_legal(quad).as_tuple()
    if dependency_sign(quad) <= 0:
        return 0.0
    # n_xa ln(n_xa/n_a) + (n_x-n_xa) ln((n_x-n_xa)/(n-n_a)) - n_x ln(n_x/n), regrouped per cell
    total = _xlog(n_xa, n * n_xa, n_x * n_a) + _xlog(
        n_x - n_xa, n * (n_x - n_xa), n_x * (n - n_a)
    )
    return max(total, 0.0)


CHI2 = GoodnessMeasure(
    MeasureDescriptor("chi2", description="chi-square statistic of the 2x2 table"),
    chi_square,
)
MI = GoodnessMeasure(
    MeasureDescriptor("mi", logarithmic=True, description="mutual information, scaled by n"),
    mutual_information,
)
Z1 = GoodnessMeasure(
    MeasureDescriptor(
        "z1",
        polarity_support=PolaritySupport.POSITIVE_ONLY,
        description="z-score with binomial variance of m(XA)",
    ),
    z_score_1,
)
Z2 = GoodnessMeasure(
    MeasureDescriptor(
        "z2",
        polarity_support=PolaritySupport.POSITIVE_ONLY,
        description="z-score with hypergeometric-style variance",
    ),
    z_score_2,
)
J = GoodnessMeasure(
    MeasureDescriptor(
        "j",
        polarity_support=PolaritySupport.POSITIVE_ONLY,
        logarithmic=True,
        description="J-measure, scaled by n",
    ),
    j_measure,
)

MEASURES: Dict[str, GoodnessMeasure] = {m.name: m for m in (CHI2, MI, Z1, Z2, J)}


def get_measure(name: str) -> GoodnessMeasure:
    """Look up a bundled measure.

    Args:
        name: One of chi2, mi, z1, z2, j

    Raises:
        ConfigurationError: For an unknown name
    """
    try:
        return MEASURES[name]
    except KeyError:
        known = ", ".join(MEASURES)
        raise ConfigurationError(f"unknown measure {name!r} (known: {known})") from None


def evaluate(measure: Union[GoodnessMeasure, str], quad: FrequencyQuad) -> float:
    """Score a quad with a measure instance or a registered measure name."""
    if isinstance(measure, str):
        measure = get_measure(measure)
    return measure.value(quad)


def reverse_direction(measure: GoodnessMeasure) -> GoodnessMeasure:
    """Negated twin of a measure, declared with the opposite direction."""
    flipped = (
        Direction.DECREASING if measure.increasing else Direction.INCREASING
    )
    function = measure.function
    return GoodnessMeasure(
        replace(measure.descriptor, name=f"neg-{measure.name}", direction=flipped),
        lambda quad: -function(quad),
        baseline=-measure.baseline,
    )
