"""Verdicts, report entries and the ``ttg-report/1`` JSON layout."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .finspace import FinSpace, bits

SCHEMA = "ttg-report/1"


def fmt_set(space: FinSpace, mask: int) -> str:
    """Set literal in DSL syntax, points in declaration order: ``{y z}``."""
    return "{" + " ".join(space.points[i] for i in bits(mask)) + "}"


def fmt_pair(space: FinSpace, a: int, b: int) -> str:
    return f"({fmt_set(space, a)}, {fmt_set(space, b)})"


def fmt_map(f) -> str:
    return " ".join(f"{p}->{q}" for p, q in f.as_dict().items())


@dataclass
class Verdict:
    """Outcome of a decision procedure.

    ``witness`` is a DSL literal (point name or set literal) explaining a
    failure; ``value`` carries a constructed object on success (e.g. the
    comparison map); ``data`` holds raw masks for programmatic use.
    """

    holds: bool
    witness: str | None = None
    value: Any = None
    data: dict = field(default_factory=dict)

    def __bool__(self):
        return self.holds


@dataclass
class Property:
    name: str
    verdict: bool
    witness: str | None = None
    support: str | None = None
    # comparative-only identities on non-comparative data are recorded, not counted
    informational: bool = False

    def to_json(self) -> dict:
        out: dict[str, Any] = {"name": self.name}
        if self.support is not None:
            out["support"] = self.support
        out["verdict"] = self.verdict
        if self.witness is not None:
            out["witness"] = self.witness
        if self.informational:
            out["informational"] = True
        return out


@dataclass
class Report:
    properties: list[Property] = field(default_factory=list)
    computations: list[dict] = field(default_factory=list)
    instance: dict | None = None

    def add(self, prop: Property) -> None:
        self.properties.append(prop)

    def extend(self, props) -> None:
        self.properties.extend(props)

    def get(self, name: str, support: str | None = None) -> Property:
        for p in self.properties:
            if p.name == name and (support is None or p.support == support):
                return p
        raise KeyError(name)

    @property
    def failures(self) -> list[Property]:
        return [p for p in self.properties if not p.verdict and not p.informational]

    @property
    def all_pass(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        out: dict[str, Any] = {"schema": SCHEMA}
        if self.instance is not None:
            out["instance"] = self.instance
        out["properties"] = [p.to_json() for p in self.properties]
        if self.computations:
            out["computations"] = self.computations
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"), ensure_ascii=False) + "\n"
