import os
import sys
from typing import Optional, TextIO

from colorama import Fore, Style, just_fix_windows_console

DEFAULT_DIGITS = 12


class BaseReporter:
    """Shared output handling for the subcommand reporters."""

    COLORS = {
        "holds": Fore.GREEN,
        "holds_non_strictly": Fore.YELLOW,
        "violated": Fore.RED,
        "pass": Fore.GREEN,
        "fail": Fore.RED,
        "blue": Fore.BLUE,
        "reset": Style.RESET_ALL,
        "bold": Style.BRIGHT,
    }

    def __init__(self, output: Optional[TextIO] = None, digits: int = DEFAULT_DIGITS):
        """
        Args:
            output: Stream for the report, stdout when omitted
            digits: Significant digits of every printed real number
        """
        self._output = output
        self.digits = digits
        just_fix_windows_console()

    @property
    def output(self) -> TextIO:
        # Resolved on each write so a redirected sys.stdout is honoured
        return self._output if self._output is not None else sys.stdout

    @output.setter
    def output(self, stream: Optional[TextIO]) -> None:
        self._output = stream

    def _should_enable_color(self) -> bool:
        if "NO_COLOR" in os.environ:
            return False
        return hasattr(self.output, "isatty") and self.output.isatty()

    def _colorize(self, text: str, color_key: str) -> str:
        color = self.COLORS.get(color_key, "")
        if not color or not self._should_enable_color():
            return text
        return f"{color}{text}{self.COLORS['reset']}"

    def _print_header(self, title: str) -> None:
        self._write(f"\n{self._colorize(title, 'bold')}\n")
        self._write("=" * 50 + "\n")

    def _write(self, text: str) -> None:
        self.output.write(text)

    def fmt(self, value: float) -> str:
        """Render a real number with the configured significant digits."""
        return format(value, f".{self.digits}g")
