from typing import Optional


class DepMinerError(Exception):
    """Base class for all depminer errors"""


class DomainError(DepMinerError, ValueError):
    """Counts outside the legal parameter set"""


class ConfigurationError(DepMinerError, ValueError):
    """Invalid search, verifier or measure configuration"""


class UnsupportedPolarityError(ConfigurationError):
    """Negative dependencies requested from a positive-only measure"""

    def __init__(self, measure_name: str):
        super().__init__(f"{measure_name} does not support negative dependencies")
        self.measure_name = measure_name


class GuardRailError(ConfigurationError):
    """Brute-force enumeration refused because the instance is too large"""


class DatasetParseError(DepMinerError, ValueError):
    """Malformed transaction file.

    Args:
        message: Human readable reason
        line: 1-based line (FIMI) or data row (CSV) number; 0 for the CSV header
        column: Offending column name, if known
        unit: What ``line`` counts, "line" or "row"
    """

    def __init__(self, message: str, line: int, column: Optional[str] = None, unit: str = "line"):
        location = f"{unit} {line}" if line > 0 else "header"
        if column is not None:
            location += f", column {column}"
        super().__init__(f"{location}: {message}")
        self.line = line
        self.column = column
        self.unit = unit
