"""Report renderers for different outputs (terminal, JSON lines)"""

from .base import BaseReportRenderer
from .jsonl import JsonLinesReportRenderer
from .terminal import TerminalReportRenderer

__all__ = [
    "BaseReportRenderer",
    "TerminalReportRenderer",
    "JsonLinesReportRenderer",
]
