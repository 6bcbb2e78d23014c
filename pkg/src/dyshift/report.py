"""Pass/fail reports shared by all verification suites."""
from __future__ import annotations

import json
from dataclasses import dataclass, field


def _jsonable(x):
    if hasattr(x, "to_json_obj"):
        return x.to_json_obj()
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    return str(x)


@dataclass
class Entry:
    cell: tuple
    ok: bool
    residual: object = None
    info: dict = field(default_factory=dict)

    @property
    def status(self):
        return "pass" if self.ok else "fail"


@dataclass
class Report:
    suite: str
    datum: str
    entries: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def add(self, cell, ok, residual=None, **info):
        self.entries.append(Entry(tuple(cell), bool(ok), residual, info))

    def extend(self, other: "Report"):
        self.entries.extend(other.entries)
        return self

    @property
    def passed(self):
        return all(e.ok for e in self.entries)

    @property
    def failures(self):
        return [e for e in self.entries if not e.ok]

    def __len__(self):
        return len(self.entries)

    def lines(self):
        for e in self.entries:
            rec = {
                "suite": self.suite,
                "datum": self.datum,
                "cell": _jsonable(e.cell),
                "status": e.status,
                "residual": None if e.residual is None or e.ok else _jsonable(e.residual),
            }
            for k, v in e.info.items():
                rec[k] = _jsonable(v)
            yield json.dumps(rec, separators=(",", ":"))

    def summary(self):
        bad = len(self.failures)
        word = "PASS" if bad == 0 else "FAIL"
        return f"{word} {self.suite} [{self.datum}] {len(self) - bad}/{len(self)} cells"
