from .context import Context
from .dataset import Dataset, RowSet, TidList, count_quad, load_dataset
from .errors import (
    ConfigurationError,
    DatasetParseError,
    DepMinerError,
    DomainError,
    GuardRailError,
    UnsupportedPolarityError,
)
from .frequency import DeltaParams, FrequencyQuad, Literal, Polarity, Rule
from .measures import MEASURES, GoodnessMeasure, MeasureDescriptor, get_measure
from .miner import mine
from .oracle import brute_force_mine, compare
from .search import PolarityMode, SearchConfig, SearchStats, ThresholdGoal, TopKGoal
from .verifier import verify_measure

__version__ = "0.1.0"

__all__ = [
    "Context",
    "Dataset",
    "RowSet",
    "TidList",
    "count_quad",
    "load_dataset",
    "ConfigurationError",
    "DatasetParseError",
    "DepMinerError",
    "DomainError",
    "GuardRailError",
    "UnsupportedPolarityError",
    "DeltaParams",
    "FrequencyQuad",
    "Literal",
    "Polarity",
    "Rule",
    "MEASURES",
    "GoodnessMeasure",
    "MeasureDescriptor",
    "get_measure",
    "mine",
    "brute_force_mine",
    "compare",
    "PolarityMode",
    "SearchConfig",
    "SearchStats",
    "ThresholdGoal",
    "TopKGoal",
    "verify_measure",
]
