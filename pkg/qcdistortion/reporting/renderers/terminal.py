"""Terminal report renderer for colored output using colorama"""

import sys
from typing import TextIO

try:
    from colorama import Fore, Style, init as colorama_init
    colorama_init()
    COLORAMA_AVAILABLE = True
except ImportError:
    COLORAMA_AVAILABLE = False

    class Fore:
        YELLOW = ""
        GREEN = ""
        RED = ""
        CYAN = ""
        BLUE = ""

    class Style:
        RESET_ALL = ""
        BRIGHT = ""

from ..events import CheckEvent, StageEvent, SummaryEvent, WarningEvent
from .base import BaseReportRenderer


class TerminalReportRenderer(BaseReportRenderer):
    """Human-readable progress lines, written to stderr by default"""

    def __init__(self, stream: TextIO | None = None, use_colors: bool = True, debug: bool = False):
        super().__init__(debug=debug)
        self.stream = stream or sys.stderr
        self.use_colors = use_colors and COLORAMA_AVAILABLE
        self.check_counter = 0

    def _colorize(self, text: str, *colors) -> str:
        """Apply color/style to text if colors are enabled"""
        if self.use_colors and colors:
            color_codes = "".join(str(c) for c in colors)
            return f"{color_codes}{text}{Style.RESET_ALL}"
        return text

    def _print_status(self, icon: str, message: str, color=None) -> None:
        line = f"{icon} {message}"
        print(self._colorize(line, color) if color else line, file=self.stream, flush=True)

    def on_stage(self, event: StageEvent) -> None:
        if event.status == "start":
            self._print_status("▶", event.stage, Fore.CYAN)
        elif event.detail:
            self._print_status("✓", f"{event.stage}: {event.detail}", Fore.BLUE)
        return None

    def on_check(self, event: CheckEvent) -> None:
        self.check_counter += 1
        label = f"[{self.check_counter:2d}] {event.name} ({event.seconds:.2f}s)"
        if event.passed:
            self._print_status("✅", label, Fore.GREEN)
        else:
            reason = f": {event.error}" if event.error else ""
            self._print_status("❌", f"{label}{reason}", Fore.RED)
        if self.debug and event.detail:
            for key, value in event.detail.items():
                print(f"      {key} = {value}", file=self.stream)
        return None

    def on_warning(self, event: WarningEvent) -> None:
        source = f"[{event.source}] " if event.source else ""
        self._print_status("⚠️", f"{source}{event.message}", Fore.YELLOW)
        return None

    def on_summary(self, event: SummaryEvent) -> None:
        separator = "─" * 60
        print(separator, file=self.stream)
        if event.passed:
            self._print_status("✅", f"All {event.total} checks passed", Style.BRIGHT)
        else:
            self._print_status(
                "❌", f"{len(event.failures)} of {event.total} checks failed: {', '.join(event.failures)}", Fore.RED
            )
        return None

    def reset(self):
        super().reset()
        self.check_counter = 0
