"""Event data classes for analysis and verification progress"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Literal


class BaseEvent(ABC):
    """Abstract base class for all report events"""

    @property
    @abstractmethod
    def event_type(self) -> str:
        """Return the event type identifier"""
        pass


@dataclass
class StageEvent(BaseEvent):
    """A pipeline stage started or finished"""
    stage: str
    status: Literal["start", "complete"]
    detail: str | None = None

    @property
    def event_type(self) -> str:
        return "stage"


@dataclass
class CheckEvent(BaseEvent):
    """Outcome of one acceptance check"""
    name: str
    passed: bool
    seconds: float
    detail: dict = field(default_factory=dict)
    error: str | None = None

    @property
    def event_type(self) -> str:
        return "check"


@dataclass
class WarningEvent(BaseEvent):
    """Recoverable numerical trouble worth surfacing to the user"""
    message: str
    source: str | None = None

    @property
    def event_type(self) -> str:
        return "warning"


@dataclass
class SummaryEvent(BaseEvent):
    """Final tally of a verification run"""
    passed: bool
    total: int
    failures: list[str] = field(default_factory=list)
    result: Any = None

    @property
    def event_type(self) -> str:
        return "summary"
