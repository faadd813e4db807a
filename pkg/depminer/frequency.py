"""Four-count parameterization of dependency rules.

A rule X -> A=a is summarised by the absolute counts n_x = m(X),
n_xa = m(XA=a), n_a = m(A=a) and the data size n. All counts are exact
integers; probabilities are only derived when a measure is evaluated.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Hashable, Iterator, Tuple

from .errors import DomainError

# Closest distance to an integer at which a reconstructed n_xa is accepted.
INTEGRAL_TOLERANCE = 1e-9


class Polarity(str, Enum):
    POSITIVE = "positive"
    INDEPENDENT = "independent"
    NEGATIVE = "negative"


@dataclass(frozen=True)
class FrequencyQuad:
    """Contingency situation of a single rule."""

    n_x: int
    n_xa: int
    n_a: int
    n: int

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.n_x, self.n_xa, self.n_a, self.n)

    def __str__(self) -> str:
        return f"({self.n_x}, {self.n_xa}, {self.n_a}, {self.n})"


@dataclass(frozen=True)
class Literal:
    """Consequent A=a with a in {0, 1}."""

    attribute: Hashable
    value: int = 1

    def __post_init__(self) -> None:
        if self.value not in (0, 1):
            raise DomainError(f"literal value must be 0 or 1, got {self.value!r}")

    def __str__(self) -> str:
        return str(self.attribute) if self.value == 1 else f"!{self.attribute}"


@dataclass(frozen=True)
class DeltaParams:
    """The same situation expressed through leverage instead of n_xa."""

    n_x: int
    delta: float
    n_a: int
    n: int


@dataclass(frozen=True)
class Rule:
    """A scored dependency rule X -> A=a."""

    antecedent: Tuple[Hashable, ...]
    consequent: Literal
    quad: FrequencyQuad
    score: float

    def __post_init__(self) -> None:
        if not self.antecedent:
            raise DomainError("rule antecedent must not be empty")
        if self.consequent.attribute in self.antecedent:
            raise DomainError(
                f"consequent attribute {self.consequent.attribute!r} occurs in the antecedent"
            )
        require_legal(self.quad)

    @property
    def identity(self) -> Tuple[Tuple[Hashable, ...], Literal]:
        return (self.antecedent, self.consequent)

    @property
    def polarity(self) -> Polarity:
        return polarity(self.quad)

    def __str__(self) -> str:
        lhs = " ".join(str(a) for a in self.antecedent)
        return f"{{{lhs}}} -> {self.consequent}"


def is_legal(quad: FrequencyQuad) -> bool:
    """Return True iff the counts can describe a non-trivial rule in some data set."""
    n_x, n_xa, n_a, n = quad.as_tuple()
    if n <= 0 or not 0 < n_x < n or not 0 < n_a < n:
        return False
    return max(0, n_x + n_a - n) <= n_xa <= min(n_x, n_a)


def require_legal(quad: FrequencyQuad) -> FrequencyQuad:
    """Validate counts before they reach a formula.

    Args:
        quad: Counts to check

    Returns:
        The same quad, so calls can be chained

    Raises:
        DomainError: If the quad is not legal
    """
    if not is_legal(quad):
        raise DomainError(f"illegal frequency quad {quad}")
    return quad


def leverage(quad: FrequencyQuad) -> float:
    """P(XA=a) - P(X)P(A=a)."""
    require_legal(quad)
    n_x, n_xa, n_a, n = quad.as_tuple()
    # One division of an exact integer numerator keeps independence at exactly 0.0
    return (n * n_xa - n_x * n_a) / (n * n)


def confidence(quad: FrequencyQuad) -> float:
    """P(A=a|X)."""
    if quad.n_x == 0:
        raise DomainError("confidence is undefined for n_x = 0")
    require_legal(quad)
    return quad.n_xa / quad.n_x


def dependency_sign(quad: FrequencyQuad) -> int:
    """Sign of n*n_xa - n_x*n_a in exact integer arithmetic, no legality check."""
    diff = quad.n * quad.n_xa - quad.n_x * quad.n_a
    return (diff > 0) - (diff < 0)


def polarity(quad: FrequencyQuad) -> Polarity:
    """Classify a rule by the sign of its leverage.

    The sign is decided on integers, so exact independence points such as
    (3, 1, 7, 21) are never misread through rounding.

    Args:
        quad: Legal counts of the rule

    Returns:
        POSITIVE, NEGATIVE or INDEPENDENT

    Raises:
        DomainError: If the quad is not legal
    """
    require_legal(quad)
    sign = dependency_sign(quad)
    if sign > 0:
        return Polarity.POSITIVE
    if sign < 0:
        return Polarity.NEGATIVE
    return Polarity.INDEPENDENT


def delta_from_quad(quad: FrequencyQuad) -> DeltaParams:
    """Re-parameterise counts by leverage.

    Args:
        quad: Legal counts

    Returns:
        (n_x, delta, n_a, n) with delta = P(XA=a) - P(X)P(A=a)
    """
    require_legal(quad)
    n_x, n_xa, n_a, n = quad.as_tuple()
    return DeltaParams(n_x=n_x, delta=(n * n_xa - n_x * n_a) / (n * n), n_a=n_a, n=n)


def quad_from_delta(params: DeltaParams, tolerance: float = INTEGRAL_TOLERANCE) -> FrequencyQuad:
    """Map (n_x, delta, n_a, n) back to the four counts.

    Raises:
        DomainError: If the implied n_xa is not an integer count or the result is illegal
    """
    if params.n <= 0:
        raise DomainError(f"data size must be positive, got {params.n}")
    n_xa_real = params.n_x * params.n_a / params.n + params.delta * params.n
    n_xa = round(n_xa_real)
    if abs(n_xa_real - n_xa) > tolerance:
        raise DomainError(
            f"delta={params.delta!r} gives n_xa={n_xa_real!r}, which is not an integer count"
        )
    return require_legal(FrequencyQuad(params.n_x, int(n_xa), params.n_a, params.n))


def nxa_range(n_x: int, n_a: int, n: int) -> range:
    """Legal n_xa values for fixed n_x, n_a and n.

    Args:
        n_x: Antecedent count, 0 < n_x < n
        n_a: Consequent count, 0 < n_a < n
        n: Data size

    Returns:
        Ascending range from max(0, n_x + n_a - n) to min(n_x, n_a)
    """
    return range(max(0, n_x + n_a - n), min(n_x, n_a) + 1)


def nx_range(n_xa: int, n_a: int, n: int) -> range:
    """Legal n_x values (0 < n_x < n) for fixed n_xa, n_a and n."""
    return range(max(1, n_xa), min(n - 1, n - n_a + n_xa) + 1)


def legal_points(n_a: int, n: int) -> Iterator[FrequencyQuad]:
    """Enumerate the legal lattice for a fixed consequent, ordered by (n_x, n_xa)."""
    if not 0 < n_a < n:
        raise DomainError(f"consequent count must satisfy 0 < n_a < n, got n_a={n_a}, n={n}")
    for n_x in range(1, n):
        for n_xa in nxa_range(n_x, n_a, n):
            yield FrequencyQuad(n_x, n_xa, n_a, n)
