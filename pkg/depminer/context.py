import json
import logging
import os
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import jsonschema

from .analyzer import AnalyzerInterface, AnalyzerResult
from .errors import ConfigurationError
from .reporter import ReporterInterface

LOG_ENV_VAR = "DEPMINER_LOG"
LOG_LEVELS = {
    "quiet": logging.WARNING,
    "info": logging.INFO,
    "debug": logging.DEBUG,
}
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

DEFAULTS_PATH = Path(__file__).parent / "defaults.json"

CONFIG_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "required": ["tolerances", "verifier", "oracle", "output"],
    "properties": {
        "tolerances": {
            "type": "object",
            "required": ["tie", "score", "integral"],
            "properties": {
                "tie": {"type": "number", "exclusiveMinimum": 0},
                "score": {"type": "number", "exclusiveMinimum": 0},
                "integral": {"type": "number", "exclusiveMinimum": 0},
            },
        },
        "verifier": {
            "type": "object",
            "required": ["max_n"],
            "properties": {"max_n": {"type": "integer", "minimum": 2}},
        },
        "oracle": {
            "type": "object",
            "required": ["max_attributes", "max_antecedent_size"],
            "properties": {
                "max_attributes": {"type": "integer", "minimum": 2},
                "max_antecedent_size": {"type": "integer", "minimum": 1},
            },
        },
        "output": {
            "type": "object",
            "required": ["significant_digits"],
            "properties": {
                "significant_digits": {"type": "integer", "minimum": 1, "maximum": 17},
            },
        },
    },
}


def resolve_log_level(debug: bool = False, env: Optional[Dict[str, str]] = None) -> int:
    """Log level from the --debug flag or the DEPMINER_LOG variable.

    Raises:
        ConfigurationError: If DEPMINER_LOG holds an unknown level name
    """
    if debug:
        return logging.DEBUG
    env = os.environ if env is None else env
    name = env.get(LOG_ENV_VAR, "quiet").strip().lower() or "quiet"
    try:
        return LOG_LEVELS[name]
    except KeyError:
        raise ConfigurationError(
            f"{LOG_ENV_VAR} must be one of {', '.join(LOG_LEVELS)}, got {name!r}"
        ) from None


class Context:
    """Application context holding the settings, analyzers and reporters."""

    def __init__(self, debug: bool = False, log_level: Optional[int] = None):
        self.debug = debug
        self.log_level = resolve_log_level(debug) if log_level is None else log_level

        # Diagnostics always go to stderr; stdout carries results only
        self.logger = logging.getLogger(__name__)
        logging.basicConfig(level=self.log_level, format=LOG_FORMAT, stream=sys.stderr)
        logging.getLogger().setLevel(self.log_level)

        self.config: Dict[str, Any] = {}
        self._analyzers: Dict[str, List[AnalyzerInterface]] = {}
        self._reporters: Dict[str, List[ReporterInterface]] = {}

    def load_config(self, path: Optional[Path] = None) -> Dict[str, Any]:
        """Load and validate the packaged defaults.

        Args:
            path: Alternative settings file, used by tests

        Raises:
            ConfigurationError: If the file is unreadable or fails the schema
        """
        path = path or DEFAULTS_PATH
        self.logger.debug(f"Loading settings from {path}")
        try:
            with open(path, "r") as f:
                config = json.load(f)
            jsonschema.validate(config, CONFIG_SCHEMA)
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigurationError(f"cannot read settings {path}: {e}") from e
        except jsonschema.ValidationError as e:
            raise ConfigurationError(f"invalid settings {path}: {e.message}") from e
        self.config = config
        return config

    def setting(self, section: str, key: str) -> Any:
        if not self.config:
            self.load_config()
        try:
            return self.config[section][key]
        except KeyError:
            raise ConfigurationError(f"unknown setting {section}.{key}") from None

    def register_analyzer(self, analyzer: AnalyzerInterface) -> None:
        """Register an analyzer in its category."""
        if not isinstance(analyzer, AnalyzerInterface):
            raise ValueError("Analyzer must implement AnalyzerInterface")
        registered = self._analyzers.setdefault(analyzer.category, [])
        if analyzer not in registered:
            self.logger.debug(
                f"Registering analyzer {analyzer.__class__.__name__} for category {analyzer.category}"
            )
            registered.append(analyzer)

    def get_analyzers(self, category: str) -> List[AnalyzerInterface]:
        return self._analyzers.get(category, [])

    def run_analyzers(self, category: str, **kwargs: Any) -> List[AnalyzerResult]:
        """Run every analyzer of a category.

        Errors are logged and re-raised; the CLI maps them to exit codes.
        """
        results = []
        for analyzer in self.get_analyzers(category):
            try:
                self.logger.debug(f"Running analyzer {analyzer.__class__.__name__}")
                results.append(analyzer.analyze(self, **kwargs))
            except Exception as e:
                self.logger.debug(f"Analyzer {analyzer.__class__.__name__} failed: {e}")
                if self.debug:
                    self.logger.exception("Detailed error:")
                raise
        return results

    def register_reporter(self, reporter: ReporterInterface) -> None:
        """Register a reporter in its category."""
        if not isinstance(reporter, ReporterInterface):
            raise ValueError("Reporter must implement ReporterInterface")
        registered = self._reporters.setdefault(reporter.category, [])
        if reporter not in registered:
            self.logger.debug(
                f"Registering reporter {reporter.__class__.__name__} for category {reporter.category}"
            )
            registered.append(reporter)

    def get_reporters(self, category: str) -> List[ReporterInterface]:
        return self._reporters.get(category, [])

    def run_reports(self, category: str, data: Any, **kwargs: Any) -> None:
        """Hand one result to every reporter of a category."""
        for reporter in self.get_reporters(category):
            self.logger.debug(f"Running reporter {reporter.__class__.__name__}")
            reporter.print_report(data, **kwargs)
