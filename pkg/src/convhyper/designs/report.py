from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class DesignReport:
    """Verdict of a design checker.

    ``parameters``, ``witnesses`` and ``residuals`` are JSON-ready; ``value``
    carries the typed result (``PdsParams``, ``Spread``, ``ParameterTensor``...)
    for in-process callers and is not serialised.
    """

    verdict: str
    ok: bool
    parameters: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    residuals: dict = field(default_factory=dict)
    value: Any = None

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "parameters": self.parameters,
            "witnesses": self.witnesses,
            "residuals": self.residuals,
        }
