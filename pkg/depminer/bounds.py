"""Upper bounds for well-behaving measures.

For a fixed consequent A=a every well-behaving measure reaches its best
value on the same border points of the legal lattice: (m_a, m_a) for
positive and (n - m_a, 0) for negative dependencies. Knowing a rule
X -> A=a narrows the reachable region for every specialization XQ -> A=a
to the corners (m_xa, m_xa) and (m_x - m_xa, 0).

For a decreasing measure the same points give lower bounds; callers
compare through ``GoodnessMeasure.orient``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional

from .errors import ConfigurationError, DomainError, UnsupportedPolarityError
from .frequency import FrequencyQuad, Polarity, is_legal, polarity as quad_polarity
from .measures import GoodnessMeasure


class BoundKind(str, Enum):
    CONSEQUENT_SUP = "consequent_sup"
    ANTECEDENT_RULE = "antecedent_rule"
    SUBTREE_KNOWN_XA = "subtree_known_xa"
    SUBTREE_UNKNOWN_XA = "subtree_unknown_xa"


@dataclass(frozen=True)
class Bound:
    kind: BoundKind
    polarity: Polarity
    value: Optional[float]
    point: Optional[FrequencyQuad] = None


def check_polarity(measure: GoodnessMeasure, polarity: Polarity) -> None:
    """Reject polarities the bounds are not defined for.

    Raises:
        ConfigurationError: For INDEPENDENT
        UnsupportedPolarityError: Negative polarity for a positive-only measure
    """
    if polarity is Polarity.INDEPENDENT:
        raise ConfigurationError("bounds are defined for positive or negative polarity only")
    if polarity is Polarity.NEGATIVE and not measure.supports_negative:
        raise UnsupportedPolarityError(measure.name)


def _check_consequent(m_a: int, n: int) -> None:
    if not 0 < m_a < n:
        raise DomainError(f"consequent count must satisfy 0 < m_a < n, got m_a={m_a}, n={n}")


def _at(measure: GoodnessMeasure, n_x: int, n_xa: int, m_a: int, n: int) -> float:
    # An empty corner means no rule of that polarity is reachable
    if n_x == 0:
        return measure.baseline
    return measure.value(FrequencyQuad(n_x, n_xa, m_a, n))


def supremum_point(m_a: int, n: int, polarity: Polarity) -> FrequencyQuad:
    """Quad where the consequent supremum is attained."""
    if polarity is Polarity.POSITIVE:
        return FrequencyQuad(m_a, m_a, m_a, n)
    return FrequencyQuad(n - m_a, 0, m_a, n)


def consequent_sup(measure: GoodnessMeasure, m_a: int, n: int, polarity: Polarity) -> float:
    """Best value any rule with consequent count m_a can reach.

    Args:
        measure: Well-behaving measure
        m_a: Rows where the consequent holds, 0 < m_a < n
        n: Data size
        polarity: POSITIVE or NEGATIVE

    Returns:
        Raw measure value at the supremum point; for a decreasing measure
        this is the lowest reachable value
    """
    check_polarity(measure, polarity)
    _check_consequent(m_a, n)
    return measure.value(supremum_point(m_a, n, polarity))


def known_xa_point(m_x: int, m_xa: int, m_a: int, n: int, polarity: Polarity) -> FrequencyQuad:
    if polarity is Polarity.POSITIVE:
        return FrequencyQuad(m_xa, m_xa, m_a, n)
    return FrequencyQuad(m_x - m_xa, 0, m_a, n)


def subtree_bound_known_xa(
    measure: GoodnessMeasure, m_x: int, m_xa: int, m_a: int, n: int, polarity: Polarity
) -> float:
    """Bound for every specialization XQ -> A=a of the given polarity.

    Raises:
        DomainError: If the counts cannot come from one data set
        UnsupportedPolarityError: Negative polarity for a positive-only measure
    """
    check_polarity(measure, polarity)
    _check_consequent(m_a, n)
    if not 0 < m_x <= n or not 0 <= m_xa <= min(m_x, m_a) or m_x - m_xa > n - m_a:
        raise DomainError(f"inconsistent counts m_x={m_x}, m_xa={m_xa}, m_a={m_a}, n={n}")
    point = known_xa_point(m_x, m_xa, m_a, n, polarity)
    return _at(measure, point.n_x, point.n_xa, m_a, n)


def best_nxa(m_x: int, m_a: int, n: int, polarity: Polarity) -> int:
    """Most favourable n_xa once only m_x is known."""
    if polarity is Polarity.POSITIVE:
        return min(m_x, m_a)
    return max(0, m_x - (n - m_a))


def unknown_xa_point(m_x: int, m_a: int, n: int, polarity: Polarity) -> FrequencyQuad:
    if polarity is Polarity.POSITIVE:
        t = min(m_x, m_a)
        return FrequencyQuad(t, t, m_a, n)
    # Reachable corner on the N_X axis; beyond n - m_a the axis leaves the legal set
    return FrequencyQuad(min(m_x, n - m_a), 0, m_a, n)


def subtree_bound_unknown_xa(
    measure: GoodnessMeasure, m_x: int, m_a: int, n: int, polarity: Polarity
) -> float:
    """Bound for X -> A=a and all its specializations when only m_x is known."""
    check_polarity(measure, polarity)
    _check_consequent(m_a, n)
    if not 0 < m_x <= n:
        raise DomainError(f"antecedent count must satisfy 0 < m_x <= n, got m_x={m_x}, n={n}")
    point = unknown_xa_point(m_x, m_a, n, polarity)
    return _at(measure, point.n_x, point.n_xa, m_a, n)


def all_bounds(
    measure: GoodnessMeasure, m_x: int, m_xa: int, m_a: int, n: int, polarity: Polarity
) -> List[Bound]:
    """Every bound kind for one (X, A=a) situation, tightest last."""
    quad = FrequencyQuad(m_x, m_xa, m_a, n)
    rule_value: Optional[float] = None
    if is_legal(quad) and quad_polarity(quad) is polarity:
        rule_value = measure.value(quad)
    return [
        Bound(
            BoundKind.CONSEQUENT_SUP,
            polarity,
            consequent_sup(measure, m_a, n, polarity),
            supremum_point(m_a, n, polarity),
        ),
        Bound(
            BoundKind.SUBTREE_UNKNOWN_XA,
            polarity,
            subtree_bound_unknown_xa(measure, m_x, m_a, n, polarity),
            unknown_xa_point(m_x, m_a, n, polarity),
        ),
        Bound(
            BoundKind.SUBTREE_KNOWN_XA,
            polarity,
            subtree_bound_known_xa(measure, m_x, m_xa, m_a, n, polarity),
            known_xa_point(m_x, m_xa, m_a, n, polarity),
        ),
        Bound(BoundKind.ANTECEDENT_RULE, polarity, rule_value, quad if rule_value is not None else None),
    ]
