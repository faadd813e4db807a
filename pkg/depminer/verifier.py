"""Numeric certification of the well-behaving conditions.

A measure is swept over the legal integer lattice of every requested
(n, m_a). Finite differences between neighbouring lattice points stand in
for derivatives; only lattice points can occur in real data.

Conditions:
    i     minimum at independence (per fixed n_x)
    ii    monotone in n_xa away from independence (per fixed n_x)
    iii   monotone in n_x away from independence (per fixed n_xa)
    iv_a  increasing in n_x along fixed confidence n_xa/n_x > m_a/n
    iv_b  decreasing in n_x along fixed (m_a - n_xa)/(n - n_x) > m_a/n

Comparisons are made on the oriented scale (larger is better), so a
decreasing measure is checked with every comparison reversed.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ConfigurationError
from .frequency import FrequencyQuad, legal_points, nx_range, nxa_range
from .measures import GoodnessMeasure

logger = logging.getLogger(__name__)

TIE_TOLERANCE = 1e-12
MAX_N = 200

CONDITIONS = ("i", "ii", "iii", "iv_a", "iv_b")
PROBES = ("iv_a_opposite", "iv_b_opposite")


class Status(str, Enum):
    HOLDS = "holds"
    HOLDS_NON_STRICTLY = "holds_non_strictly"
    VIOLATED = "violated"


@dataclass(frozen=True)
class Violation:
    condition: str
    first: FrequencyQuad
    second: FrequencyQuad
    v1: float
    v2: float

    @property
    def n(self) -> int:
        return self.first.n

    @property
    def m_a(self) -> int:
        return self.first.n_a


@dataclass
class ConditionResult:
    """Outcome of one condition on one (n, m_a) lattice."""

    condition: str
    comparisons: int = 0
    strict: int = 0
    ties: int = 0
    violations: List[Violation] = field(default_factory=list)
    positive_side_only: bool = False

    @property
    def status(self) -> Status:
        if self.violations:
            return Status.VIOLATED
        if self.ties:
            return Status.HOLDS_NON_STRICTLY
        return Status.HOLDS

    def merge(self, other: "ConditionResult") -> None:
        self.comparisons += other.comparisons
        self.strict += other.strict
        self.ties += other.ties
        self.violations.extend(other.violations)
        self.positive_side_only = self.positive_side_only or other.positive_side_only


class Lattice:
    """Measure values on the legal (n_x, n_xa) lattice of one (n, m_a)."""

    def __init__(self, measure: GoodnessMeasure, n: int, m_a: int, tie_tolerance: float = TIE_TOLERANCE):
        self.measure = measure
        self.n = n
        self.m_a = m_a
        self.tie_tolerance = tie_tolerance
        self.values: Dict[Tuple[int, int], float] = {
            (q.n_x, q.n_xa): measure.value(q) for q in legal_points(m_a, n)
        }

    def quad(self, n_x: int, n_xa: int) -> FrequencyQuad:
        return FrequencyQuad(n_x, n_xa, self.m_a, self.n)

    def sign(self, n_x: int, n_xa: int) -> int:
        diff = self.n * n_xa - n_x * self.m_a
        return (diff > 0) - (diff < 0)

    def oriented(self, point: Tuple[int, int]) -> float:
        return self.measure.orient(self.values[point])

    def compare(
        self, result: ConditionResult, first: Tuple[int, int], second: Tuple[int, int], rising: bool
    ) -> None:
        """Compare two lattice points and tally the outcome on the result.

        Args:
            result: Condition being accumulated
            first: (n_x, n_xa) of the point expected to be worse
            second: (n_x, n_xa) of the point expected to be better, or worse when rising is False
            rising: Direction the oriented value must move

        Steps within the relative tie tolerance count as ties, anything
        further in the wrong direction is stored as a Violation.
        """
        a, b = self.oriented(first), self.oriented(second)
        step = b - a if rising else a - b
        tolerance = self.tie_tolerance * max(abs(a), abs(b))
        result.comparisons += 1
        if step > tolerance:
            result.strict += 1
        elif step >= -tolerance:
            result.ties += 1
        else:
            result.violations.append(
                Violation(
                    result.condition,
                    self.quad(*first),
                    self.quad(*second),
                    self.values[first],
                    self.values[second],
                )
            )


def _lattice(measure: GoodnessMeasure, n: int, m_a: int, lattice: Optional[Lattice]) -> Lattice:
    if not 0 < m_a < n:
        raise ConfigurationError(f"sweep needs 0 < m_a < n, got m_a={m_a}, n={n}")
    if lattice is not None and (lattice.n, lattice.m_a, lattice.measure) == (n, m_a, measure):
        return lattice
    return Lattice(measure, n, m_a)


def _walk(lat: Lattice, result: ConditionResult, points: Sequence[Tuple[int, int]], falling_side: int) -> None:
    """Check a walk that crosses independence once.

    Pairs on the ``falling_side`` (sign of the dependency before the crossing)
    must fall towards independence; pairs after it must rise. Pairs that jump
    over the crossing are bracketed by the minimum check instead.
    """
    for first, second in zip(points, points[1:]):
        s1, s2 = lat.sign(*first), lat.sign(*second)
        if result.positive_side_only and (s1 < 0 or s2 < 0):
            continue
        if s1 * falling_side >= 0 and s2 * falling_side >= 0:
            lat.compare(result, first, second, rising=False)
        elif s1 * falling_side <= 0 and s2 * falling_side <= 0:
            lat.compare(result, first, second, rising=True)


def check_minimum_and_delta_monotonicity(
    measure: GoodnessMeasure, n: int, m_a: int, lattice: Optional[Lattice] = None
) -> Tuple[ConditionResult, ConditionResult]:
    """Conditions (i) and (ii): columns of fixed n_x, walked by n_xa."""
    lat = _lattice(measure, n, m_a, lattice)
    minimum = ConditionResult("i")
    monotone = ConditionResult("ii")
    for n_x in range(1, n):
        column = [(n_x, n_xa) for n_xa in nxa_range(n_x, m_a, n)]
        _walk(lat, monotone, column, falling_side=-1)

        # Independence point, or the two lattice points bracketing the crossing
        centre = [p for p in column if lat.sign(*p) == 0]
        if not centre:
            below = [p for p in column if lat.sign(*p) < 0]
            above = [p for p in column if lat.sign(*p) > 0]
            centre = below[-1:] + above[:1]
        best = min(centre, key=lat.oriented)
        for point in column:
            if point in centre:
                continue
            lat.compare(minimum, best, point, rising=True)
    return minimum, monotone


def check_nx_monotonicity(
    measure: GoodnessMeasure, n: int, m_a: int, lattice: Optional[Lattice] = None
) -> ConditionResult:
    """Condition (iii): rows of fixed n_xa, walked by n_x.

    Positive-only measures are checked on the positive side only.
    """
    lat = _lattice(measure, n, m_a, lattice)
    result = ConditionResult("iii", positive_side_only=not measure.supports_negative)
    for n_xa in range(0, m_a + 1):
        row = [(n_x, n_xa) for n_x in nx_range(n_xa, m_a, n)]
        _walk(lat, result, row, falling_side=1)
    return result


def _lines(lat: Lattice, key) -> Dict[Fraction, List[Tuple[int, int]]]:
    groups: Dict[Fraction, List[Tuple[int, int]]] = defaultdict(list)
    for point in sorted(lat.values):
        ratio = key(*point)
        if ratio is not None:
            groups[ratio].append(point)
    return groups


def _check_lines(lat: Lattice, result: ConditionResult, groups, rising: bool) -> None:
    for ratio in sorted(groups):
        line = groups[ratio]
        for first, second in zip(line, line[1:]):
            lat.compare(result, first, second, rising=rising)


def _confidence_groups(lat: Lattice, side: int) -> Dict[Fraction, List[Tuple[int, int]]]:
    # side > 0: cf > m_a/n, side < 0: cf < m_a/n; Fraction keys compare exactly
    def key(n_x: int, n_xa: int) -> Optional[Fraction]:
        return Fraction(n_xa, n_x) if lat.sign(n_x, n_xa) * side > 0 else None

    return _lines(lat, key)


def _complement_groups(lat: Lattice, side: int) -> Dict[Fraction, List[Tuple[int, int]]]:
    # (m_a - n_xa)/(n - n_x) > m_a/n exactly when the dependency is negative
    def key(n_x: int, n_xa: int) -> Optional[Fraction]:
        return Fraction(lat.m_a - n_xa, lat.n - n_x) if lat.sign(n_x, n_xa) * side < 0 else None

    return _lines(lat, key)


def check_confidence_line_monotonicity(
    measure: GoodnessMeasure, n: int, m_a: int, lattice: Optional[Lattice] = None
) -> Tuple[ConditionResult, ConditionResult]:
    """Condition (iv): parts (a) and (b)."""
    lat = _lattice(measure, n, m_a, lattice)
    part_a = ConditionResult("iv_a")
    part_b = ConditionResult("iv_b")
    _check_lines(lat, part_a, _confidence_groups(lat, side=1), rising=True)
    _check_lines(lat, part_b, _complement_groups(lat, side=1), rising=False)
    return part_a, part_b


def probe_opposite_side(
    measure: GoodnessMeasure, n: int, m_a: int, lattice: Optional[Lattice] = None
) -> Tuple[ConditionResult, ConditionResult]:
    """Condition (iv) on the side it is not required for. Informational only."""
    lat = _lattice(measure, n, m_a, lattice)
    part_a = ConditionResult("iv_a_opposite")
    part_b = ConditionResult("iv_b_opposite")
    _check_lines(lat, part_a, _confidence_groups(lat, side=-1), rising=True)
    _check_lines(lat, part_b, _complement_groups(lat, side=-1), rising=False)
    return part_a, part_b


@dataclass
class SweepResult:
    n: int
    m_a: int
    conditions: Dict[str, ConditionResult]
    probes: Dict[str, ConditionResult] = field(default_factory=dict)


def sweep(
    measure: GoodnessMeasure, n: int, m_a: int, probe: bool = False, tie_tolerance: float = TIE_TOLERANCE
) -> SweepResult:
    """All conditions on one (n, m_a) lattice, sharing the evaluated values."""
    lat = Lattice(measure, n, m_a, tie_tolerance)
    results = [
        *check_minimum_and_delta_monotonicity(measure, n, m_a, lat),
        check_nx_monotonicity(measure, n, m_a, lat),
        *check_confidence_line_monotonicity(measure, n, m_a, lat),
    ]
    probes = probe_opposite_side(measure, n, m_a, lat) if probe else ()
    logger.debug(f"Swept {measure.name} on n={n}, m_a={m_a}: {len(lat.values)} points")
    return SweepResult(n, m_a, {r.condition: r for r in results}, {r.condition: r for r in probes})


@dataclass
class AxiomReport:
    measure: str
    n_values: List[int]
    m_a_values: Dict[int, List[int]]
    conditions: Dict[str, ConditionResult]
    probes: Dict[str, ConditionResult] = field(default_factory=dict)
    sweeps: List[SweepResult] = field(default_factory=list)

    def status(self, condition: str) -> Status:
        return self.conditions[condition].status

    @property
    def violations(self) -> List[Violation]:
        return [v for c in CONDITIONS for v in self.conditions[c].violations]

    @property
    def passed(self) -> bool:
        return not self.violations


def _m_a_values(n: int, requested: Optional[Sequence[int]]) -> List[int]:
    if requested is None:
        return list(range(1, n))
    kept = sorted({m for m in requested if 0 < m < n})
    skipped = sorted(set(requested) - set(kept))
    if skipped:
        logger.debug(f"Skipping m_a values {skipped} outside (0, {n})")
    return kept


def verify_measure(
    measure: GoodnessMeasure,
    n_values: Sequence[int],
    m_a_values: Optional[Sequence[int]] = None,
    max_n: int = MAX_N,
    probe: bool = False,
    workers: int = 1,
    tie_tolerance: float = TIE_TOLERANCE,
) -> AxiomReport:
    """Sweep every requested (n, m_a) and aggregate the five conditions.

    Args:
        measure: Any implementation of the measure contract
        n_values: Data sizes to sweep
        m_a_values: Consequent counts; None means every 0 < m_a < n
        max_n: Largest accepted n
        probe: Also run the opposite-side condition (iv) probe
        workers: Threads sweeping distinct (n, m_a) pairs
        tie_tolerance: Relative step below which two values count as equal

    Returns:
        AxiomReport with one merged ConditionResult per condition

    Raises:
        ConfigurationError: If some n exceeds ``max_n`` or is below 2, or no
            requested m_a is inside (0, n) for any n
    """
    ns = sorted(set(n_values))
    if not ns:
        raise ConfigurationError("at least one n is required")
    for n in ns:
        if n > max_n:
            raise ConfigurationError(f"n={n} exceeds the verifier cap of {max_n}")
        if n < 2:
            raise ConfigurationError(f"n={n} has no legal consequent counts")

    pairs = [(n, m_a) for n in ns for m_a in _m_a_values(n, m_a_values)]
    if not pairs:
        requested = sorted(set(m_a_values or ()))
        raise ConfigurationError(f"none of the m_a values {requested} satisfies 0 < m_a < n for n in {ns}")
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            sweeps = list(pool.map(lambda p: sweep(measure, p[0], p[1], probe, tie_tolerance), pairs))
    else:
        sweeps = [sweep(measure, n, m_a, probe, tie_tolerance) for n, m_a in pairs]
    sweeps.sort(key=lambda s: (s.n, s.m_a))

    conditions = {c: ConditionResult(c) for c in CONDITIONS}
    probes = {c: ConditionResult(c) for c in PROBES} if probe else {}
    for result in sweeps:
        for name, condition in result.conditions.items():
            conditions[name].merge(condition)
        for name, condition in result.probes.items():
            probes[name].merge(condition)

    report = AxiomReport(
        measure=measure.name,
        n_values=ns,
        m_a_values={n: [m for (k, m) in pairs if k == n] for n in ns},
        conditions=conditions,
        probes=probes,
        sweeps=sweeps,
    )
    logger.info(
        f"Verified {measure.name} on {len(pairs)} lattices: "
        + ", ".join(f"{c}={report.status(c).value}" for c in CONDITIONS)
    )
    return report
