"""Machine-readable command reports."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from importlib import resources
from typing import Any

EXIT_OK = 0
EXIT_NO = 1
EXIT_INPUT = 2
EXIT_LIMITED = 3

SCHEMA_VERSION = 1


@dataclass
class Report:
    command: list[str]
    exit_code: int = EXIT_OK
    file: str | None = None
    results: list[dict[str, Any]] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)
    stats: dict[str, int] | None = None
    bound_limited: bool = False
    checked_range: list[int] | None = None
    error: str | None = None
    schema_version: int = SCHEMA_VERSION

    def to_json(self) -> dict:
        return asdict(self)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> "Report":
        return cls(**data)

    @classmethod
    def loads(cls, text: str) -> "Report":
        return cls.from_json(json.loads(text))


def schema() -> dict:
    text = (resources.files("descheck") / "schema" / "report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)
