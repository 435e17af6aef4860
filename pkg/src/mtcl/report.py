"""PASS/FAIL reports and ``key=value`` summaries."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = ["Check", "Report", "fmt", "merge_summaries"]


def fmt(v) -> str:
    """Shortest round-trip text for numbers; ``inf``/``nan`` spelled as such."""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    try:
        x = float(v)
    except (TypeError, ValueError):
        return str(v)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(x)


@dataclass
class Check:
    name: str
    passed: bool
    value: float = math.nan
    bound: float = math.nan
    detail: str = ""

    def line(self, prefix=""):
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {prefix}{self.name}"
        if not math.isnan(self.value):
            text += f": value={fmt(self.value)}"
            if not math.isnan(self.bound):
                text += f" bound={fmt(self.bound)}"
        if self.detail:
            text += f" ({self.detail})"
        return text


@dataclass
class Report:
    """Named collection of checks plus free-form numeric metrics."""

    name: str
    checks: list = field(default_factory=list)
    metrics: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, passed, value=math.nan, bound=math.nan, detail=""):
        c = Check(name, bool(passed), float(value), float(bound), detail)
        self.checks.append(c)
        return c

    def check(self, name) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def lines(self):
        return [c.line(f"{self.name}.") for c in self.checks]

    def summary(self):
        """Ordered ``(key, value)`` pairs; keys are ``<report>.<check>[.value|.bound]``."""
        items = []
        for c in self.checks:
            key = f"{self.name}.{c.name}"
            items.append((key, "PASS" if c.passed else "FAIL"))
            if not math.isnan(c.value):
                items.append((key + ".value", fmt(c.value)))
            if not math.isnan(c.bound):
                items.append((key + ".bound", fmt(c.bound)))
        for k, v in self.metrics.items():
            items.append((f"{self.name}.{k}", fmt(v)))
        return items

    def __str__(self):
        return "\n".join(self.lines())


def merge_summaries(reports):
    items = []
    for r in reports:
        items.extend(r.summary())
    return items
