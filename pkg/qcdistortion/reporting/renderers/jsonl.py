"""JSON-lines report renderer (one JSON object per event)"""

import json
from typing import Any

from ...export import to_jsonable
from ..events import CheckEvent, StageEvent, SummaryEvent, WarningEvent
from .base import BaseReportRenderer


class JsonLinesReportRenderer(BaseReportRenderer):
    """Renderer returning one JSON string per event"""

    def _line(self, payload: dict[str, Any]) -> str:
        return json.dumps(to_jsonable(payload), sort_keys=True)

    def on_stage(self, event: StageEvent) -> str:
        payload = {"type": event.event_type, "stage": event.stage, "status": event.status}
        if event.detail:
            payload["detail"] = event.detail
        return self._line(payload)

    def on_check(self, event: CheckEvent) -> str:
        payload = {
            "type": event.event_type,
            "name": event.name,
            "passed": event.passed,
            "seconds": round(event.seconds, 6),
            "detail": event.detail,
        }
        if event.error:
            payload["error"] = event.error
        return self._line(payload)

    def on_warning(self, event: WarningEvent) -> str:
        return self._line({"type": event.event_type, "message": event.message, "source": event.source})

    def on_summary(self, event: SummaryEvent) -> str:
        return self._line(
            {"type": event.event_type, "passed": event.passed, "total": event.total, "failures": event.failures}
        )
