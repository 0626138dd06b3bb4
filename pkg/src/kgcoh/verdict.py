from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Verdict:
    """Outcome of a check: ``ok`` plus an optional witness or certificate."""

    ok: bool
    witness: Any = None
    detail: str = ""
    checked: int = 0
    extra: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok
