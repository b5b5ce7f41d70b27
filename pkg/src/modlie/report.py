"""Verification reports: the machine-readable certificate emitted by the CLI.

JSON schema (all keys always present)::

    {
      "tool_version": str,
      "p": int,
      "algebra": str,
      "coefficients": {"phi": int, "psi": int},
      "exploratory": bool,          # true unless coefficients are (1, 2)
      "checks": [
        {"check_name": str,
         "verdict": "pass" | "fail" | "inconclusive",
         "witness": null | list | object,
         "elapsed_ms": float,
         "seed": null | int,
         "detail": object}
      ],
      "overall": bool,              # every verdict == "pass"
      "conclusion": str,
      "total_elapsed_ms": float,
      "timestamp": str              # ISO 8601, UTC
    }
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from typing import Any

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass
class CheckRecord:
    check_name: str
    verdict: str
    witness: Any = None
    elapsed_ms: float = 0.0
    seed: int | None = None
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS


@dataclass
class VerificationReport:
    tool_version: str
    p: int
    algebra: str
    checks: list[CheckRecord] = field(default_factory=list)
    coefficients: dict = field(default_factory=lambda: {"phi": 1, "psi": 2})
    exploratory: bool = False
    conclusion: str = ""
    total_elapsed_ms: float = 0.0
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat())

    @property
    def overall(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    @property
    def inconclusive(self) -> bool:
        return any(c.verdict == INCONCLUSIVE for c in self.checks)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["overall"] = self.overall
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        d = dict(d)
        d.pop("overall", None)
        d["checks"] = [CheckRecord(**c) for c in d.get("checks", [])]
        return cls(**d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        lines = [
            f"modlie {self.tool_version}  algebra={self.algebra}  p={self.p}"
            f"  coefficients=(phi {self.coefficients['phi']}, psi {self.coefficients['psi']})"
            + ("  [exploratory]" if self.exploratory else ""),
        ]
        width = max((len(c.check_name) for c in self.checks), default=10)
        for c in self.checks:
            extra = c.detail.get("summary", "")
            seed = f" seed={c.seed}" if c.seed is not None else ""
            line = f"  {c.check_name:<{width}}  {c.verdict.upper():<12} {c.elapsed_ms:9.1f} ms{seed}"
            if extra:
                line += f"  {extra}"
            if c.witness is not None and not c.passed:
                line += f"  witness={_short(c.witness)}"
            lines.append(line)
        status = "INCONCLUSIVE" if self.inconclusive else ("PASS" if self.overall else "FAIL")
        lines.append(f"overall: {status}  ({self.total_elapsed_ms / 1000:.1f} s)")
        if self.conclusion:
            lines.append(self.conclusion)
        return "\n".join(lines) + "\n"


def _short(w: Any) -> str:
    if isinstance(w, dict):
        return "{" + ", ".join(f"{k}={v}" for k, v in w.items() if k != "basis") + "}"
    return str(w)
