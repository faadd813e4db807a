"""Binary transaction data with exact support counting.

Each attribute keeps the set of row indices where it is 1, either as a
bitmap (a Python int) or as a sorted tuple of row ids. Both give identical
counts. Antecedent counts are row-set intersections; negated consequents
are obtained by subtraction, never by materialising complements.
"""
from __future__ import annotations

import csv
import io
import logging
from bisect import bisect_left
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Hashable, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Type, Union

from .errors import ConfigurationError, DatasetParseError, DomainError
from .frequency import FrequencyQuad, Literal

logger = logging.getLogger(__name__)

FORMATS = {".dat": "fimi", ".csv": "csv"}
ENCODING = "utf-8"


class RowSet:
    """Immutable set of row indices backed by an integer bitmap."""

    __slots__ = ("bits",)

    def __init__(self, bits: int = 0):
        self.bits = bits

    @classmethod
    def from_indices(cls, indices: Iterable[int]) -> "RowSet":
        bits = 0
        for index in indices:
            if index < 0:
                raise ValueError(f"row index must be non-negative, got {index}")
            bits |= 1 << index
        return cls(bits)

    @classmethod
    def full(cls, n: int) -> "RowSet":
        return cls((1 << n) - 1)

    def max_index(self) -> int:
        """Largest row index, -1 when empty."""
        return self.bits.bit_length() - 1

    def __and__(self, other: "RowSet") -> "RowSet":
        if not isinstance(other, RowSet):
            return NotImplemented
        return RowSet(self.bits & other.bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def __contains__(self, index: object) -> bool:
        return isinstance(index, int) and index >= 0 and bool(self.bits >> index & 1)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RowSet) and self.bits == other.bits

    def __hash__(self) -> int:
        return hash(self.bits)

    def __repr__(self) -> str:
        return f"RowSet({list(self)})"


class TidList:
    """Immutable set of row indices backed by a sorted tuple of row ids.

    Intersection walks the shorter list and binary-searches the longer one
    from the last match onwards, so sparse attributes stay cheap.
    """

    __slots__ = ("ids",)

    def __init__(self, ids: Iterable[int] = ()):
        # Callers pass strictly increasing ids
        self.ids: Tuple[int, ...] = tuple(ids)

    @classmethod
    def from_indices(cls, indices: Iterable[int]) -> "TidList":
        ids = sorted(set(indices))
        if ids and ids[0] < 0:
            raise ValueError(f"row index must be non-negative, got {ids[0]}")
        return cls(ids)

    @classmethod
    def full(cls, n: int) -> "TidList":
        return cls(range(n))

    def max_index(self) -> int:
        return self.ids[-1] if self.ids else -1

    def __and__(self, other: "TidList") -> "TidList":
        if not isinstance(other, TidList):
            return NotImplemented
        short, long = (self.ids, other.ids) if len(self.ids) <= len(other.ids) else (other.ids, self.ids)
        common: List[int] = []
        lo, end = 0, len(long)
        for tid in short:
            lo = bisect_left(long, tid, lo, end)
            if lo == end:
                break
            if long[lo] == tid:
                common.append(tid)
                lo += 1
        return TidList(common)

    def __len__(self) -> int:
        return len(self.ids)

    def __iter__(self) -> Iterator[int]:
        return iter(self.ids)

    def __contains__(self, index: object) -> bool:
        if not isinstance(index, int):
            return False
        pos = bisect_left(self.ids, index)
        return pos < len(self.ids) and self.ids[pos] == index

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TidList) and self.ids == other.ids

    def __hash__(self) -> int:
        return hash(self.ids)

    def __repr__(self) -> str:
        return f"TidList({list(self.ids)})"


AnyRowSet = Union[RowSet, TidList]

ROW_SET_KINDS: Dict[str, Type[AnyRowSet]] = {"bitmap": RowSet, "tidlist": TidList}


def row_set_kind(name: str) -> Type[AnyRowSet]:
    try:
        return ROW_SET_KINDS[name]
    except KeyError:
        raise ConfigurationError(
            f"unknown row set representation {name!r}; expected one of {sorted(ROW_SET_KINDS)}"
        ) from None


@dataclass(frozen=True)
class Dataset:
    """Immutable binary data set.

    Attributes are kept in ascending identifier order, which is also the
    canonical enumeration order of the miner. Every attribute uses the same
    row set representation.
    """

    n: int
    attributes: Tuple[Hashable, ...]
    _rows: Mapping[Hashable, AnyRowSet] = field(repr=False)
    _position: Mapping[Hashable, int] = field(init=False, repr=False, compare=False)
    _kind: Type[AnyRowSet] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_position", {a: i for i, a in enumerate(self.attributes)})
        if len(self._position) != len(self.attributes):
            raise DomainError("attribute identifiers must be unique")
        kinds = {type(rows) for rows in self._rows.values()}
        if len(kinds) > 1:
            raise DomainError("all attributes must use the same row set representation")
        object.__setattr__(self, "_kind", kinds.pop() if kinds else RowSet)
        for attribute, rows in self._rows.items():
            if rows.max_index() >= self.n:
                raise DomainError(f"attribute {attribute!r} refers to rows beyond n={self.n}")

    @classmethod
    def from_transactions(
        cls,
        transactions: Sequence[Iterable[Hashable]],
        attributes: Optional[Iterable[Hashable]] = None,
        row_sets: str = "bitmap",
    ) -> "Dataset":
        """Build a data set from one item collection per row.

        Args:
            transactions: Items present in each row
            attributes: Additional identifiers to register even if they never occur
            row_sets: Row set representation, "bitmap" or "tidlist"
        """
        kind = row_set_kind(row_sets)
        members: Dict[Hashable, List[int]] = {a: [] for a in attributes or ()}
        for index, items in enumerate(transactions):
            for item in items:
                members.setdefault(item, []).append(index)
        ordered = tuple(sorted(members))
        return cls(len(transactions), ordered, {a: kind.from_indices(members[a]) for a in ordered})

    @property
    def representation(self) -> str:
        return next(name for name, kind in ROW_SET_KINDS.items() if kind is self._kind)

    def __contains__(self, attribute: object) -> bool:
        return attribute in self._position

    def row_set(self, attribute: Hashable) -> AnyRowSet:
        try:
            return self._rows[attribute]
        except KeyError:
            raise KeyError(f"unknown attribute {attribute!r}") from None

    def rows(self, attribute: Hashable) -> Tuple[int, ...]:
        """Sorted row indices where the attribute is 1."""
        return tuple(self.row_set(attribute))

    def support(self, attribute: Hashable) -> int:
        return len(self.row_set(attribute))

    def antecedent_rows(self, antecedent: Iterable[Hashable]) -> AnyRowSet:
        rows: AnyRowSet = self._kind.full(self.n)
        for attribute in antecedent:
            rows = rows & self.row_set(attribute)  # type: ignore[operator]
        return rows

    def consequent_count(self, consequent: Literal) -> int:
        ones = self.support(consequent.attribute)
        return ones if consequent.value == 1 else self.n - ones

    def mineable_attributes(self) -> Tuple[Hashable, ...]:
        """Attributes that are neither constant 0 nor constant 1."""
        return tuple(a for a in self.attributes if 0 < self.support(a) < self.n)

    def constant_attributes(self) -> Tuple[Hashable, ...]:
        return tuple(a for a in self.attributes if not 0 < self.support(a) < self.n)


def count_quad(ds: Dataset, antecedent: Iterable[Hashable], consequent: Literal) -> FrequencyQuad:
    """Exact counts (n_x, n_xa, n_a, n) of X -> A=a in the data set.

    Args:
        ds: Data set
        antecedent: Non-empty attribute collection X
        consequent: Literal A=a with A outside X

    Returns:
        FrequencyQuad; for a = 0 the joint count is n_x minus the rows with A=1

    Raises:
        DomainError: On an empty antecedent or when A occurs in X
    """
    antecedent = tuple(antecedent)
    if not antecedent:
        raise DomainError("antecedent must not be empty")
    if consequent.attribute in antecedent:
        raise DomainError(f"consequent attribute {consequent.attribute!r} occurs in the antecedent")
    rows = ds.antecedent_rows(antecedent)
    target = ds.row_set(consequent.attribute)
    n_x = len(rows)
    with_a = len(rows & target)  # type: ignore[operator]
    n_xa = with_a if consequent.value == 1 else n_x - with_a
    return FrequencyQuad(n_x, n_xa, ds.consequent_count(consequent), ds.n)


def _decode(raw: bytes, path: Union[str, Path]) -> str:
    try:
        return raw.decode(ENCODING)
    except UnicodeDecodeError as e:
        line = raw.count(b"\n", 0, e.start) + 1
        raise DatasetParseError(f"{path} is not valid {ENCODING} text", line) from None


def _report_loaded(ds: Dataset, unit: str) -> None:
    logger.debug(f"Loaded {ds.n} {unit} over {len(ds.attributes)} attributes")
    constant = ds.constant_attributes()
    if constant:
        logger.debug(f"Constant attributes, never mined: {', '.join(str(a) for a in constant)}")


def load_fimi(path: Union[str, Path], row_sets: str = "bitmap") -> Dataset:
    """Read whitespace separated integer item ids, one transaction per line.

    Args:
        path: FIMI file; an empty line is an empty transaction
        row_sets: Row set representation, "bitmap" or "tidlist"

    Raises:
        DatasetParseError: On undecodable text, non-integer or negative item ids
    """
    logger.debug(f"Reading FIMI file {path}")
    with open(path, "rb") as f:
        lines = _decode(f.read(), path).splitlines()

    transactions: List[List[int]] = []
    for number, line in enumerate(lines, start=1):
        items = []
        for token in line.split():
            try:
                item = int(token)
            except ValueError:
                raise DatasetParseError(f"item id {token!r} is not an integer", number) from None
            if item < 0:
                raise DatasetParseError(f"item id {item} is negative", number)
            items.append(item)
        transactions.append(items)

    ds = Dataset.from_transactions(transactions, row_sets=row_sets)
    _report_loaded(ds, "transactions")
    return ds


def load_csv(path: Union[str, Path], row_sets: str = "bitmap") -> Dataset:
    """Read a 0/1 matrix with a header row of attribute names.

    Data rows are numbered from 1 after the header. Blank lines are skipped
    but still counted, so reported row numbers match the file.
    """
    logger.debug(f"Reading CSV file {path}")
    with open(path, "rb") as f:
        text = _decode(f.read(), path)

    reader = csv.reader(io.StringIO(text, newline=""))
    header = next(reader, None)
    if header is None:
        return Dataset.from_transactions([], row_sets=row_sets)
    names = [name.strip() for name in header]
    if len(set(names)) != len(names) or not all(names):
        raise DatasetParseError("header names must be unique and non-empty", 0, unit="row")

    transactions: List[List[str]] = []
    for number, row in enumerate(reader, start=1):
        if not row:
            continue
        if len(row) != len(names):
            raise DatasetParseError(f"expected {len(names)} cells, got {len(row)}", number, unit="row")
        items = []
        for name, cell in zip(names, row):
            value = cell.strip()
            if value not in ("0", "1"):
                raise DatasetParseError(f"cell {value!r} is not 0 or 1", number, name, unit="row")
            if value == "1":
                items.append(name)
        transactions.append(items)

    ds = Dataset.from_transactions(transactions, attributes=names, row_sets=row_sets)
    _report_loaded(ds, "rows")
    return ds


def detect_format(path: Union[str, Path]) -> str:
    """Map ".dat" to fimi and ".csv" to csv, case-insensitively."""
    suffix = Path(path).suffix.lower()
    try:
        return FORMATS[suffix]
    except KeyError:
        raise ConfigurationError(
            f"cannot infer input format from {str(path)!r}; pass --input-format fimi|csv"
        ) from None


def load_dataset(
    path: Union[str, Path], input_format: Optional[str] = None, row_sets: str = "bitmap"
) -> Dataset:
    """Load FIMI or CSV data, inferring the format from the file suffix when not given."""
    input_format = input_format or detect_format(path)
    if input_format == "fimi":
        return load_fimi(path, row_sets)
    if input_format == "csv":
        return load_csv(path, row_sets)
    raise ConfigurationError(f"unknown input format {input_format!r}")
