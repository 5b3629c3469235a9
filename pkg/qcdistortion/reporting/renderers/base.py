"""Base report renderer class for output-specific renderers"""

from abc import ABC, abstractmethod
from typing import Any

from ..events import BaseEvent, CheckEvent, StageEvent, SummaryEvent, WarningEvent


class BaseReportRenderer(ABC):
    """Abstract base class for report renderers"""

    def __init__(self, debug: bool = False):
        self.debug = debug
        self.events_seen = 0

    def process(self, event: BaseEvent) -> list[Any]:
        """Dispatch an event and return renderer-specific output"""
        self.events_seen += 1
        if isinstance(event, StageEvent):
            result = self.on_stage(event)
        elif isinstance(event, CheckEvent):
            result = self.on_check(event)
        elif isinstance(event, WarningEvent):
            result = self.on_warning(event)
        elif isinstance(event, SummaryEvent):
            result = self.on_summary(event)
        else:
            result = None

        if result is None:
            return []
        return result if isinstance(result, list) else [result]

    def on_stage(self, event: StageEvent) -> Any:
        """Handle stage event - default: no-op"""
        return None

    @abstractmethod
    def on_check(self, event: CheckEvent) -> Any:
        """Handle check event"""
        pass

    def on_warning(self, event: WarningEvent) -> Any:
        """Handle warning event - default: no-op"""
        return None

    @abstractmethod
    def on_summary(self, event: SummaryEvent) -> Any:
        """Handle summary event"""
        pass

    def reset(self):
        """Reset renderer state"""
        self.events_seen = 0
