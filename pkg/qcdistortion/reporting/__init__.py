"""Progress reporting for analysis and verification runs

Architecture:
- events: StageEvent, CheckEvent, WarningEvent, SummaryEvent
- BaseReportRenderer: abstract renderer dispatching events to on_* handlers
- TerminalReportRenderer, JsonLinesReportRenderer: output-specific renderers
"""

from .events import BaseEvent, CheckEvent, StageEvent, SummaryEvent, WarningEvent
from .renderers import BaseReportRenderer, JsonLinesReportRenderer, TerminalReportRenderer

__all__ = [
    "BaseReportRenderer",
    "TerminalReportRenderer",
    "JsonLinesReportRenderer",
    "BaseEvent",
    "StageEvent",
    "CheckEvent",
    "WarningEvent",
    "SummaryEvent",
]
