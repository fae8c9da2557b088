"""Check reports: named clauses with a verdict and a witness string."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Clause:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class Report:
    title: str
    clauses: list[Clause] = field(default_factory=list)
    values: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.clauses)

    def add(self, name: str, ok: bool, detail: str = "") -> Clause:
        clause = Clause(name, bool(ok), detail)
        self.clauses.append(clause)
        return clause

    def clause(self, name: str) -> Clause:
        for c in self.clauses:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[Clause]:
        return [c for c in self.clauses if not c.ok]

    def lines(self) -> list[str]:
        out = [f"{self.title}: {'pass' if self.ok else 'FAIL'}"]
        for c in self.clauses:
            mark = "ok  " if c.ok else "FAIL"
            out.append(f"  [{mark}] {c.name}" + (f" -- {c.detail}" if c.detail else ""))
        for k, v in self.values.items():
            out.append(f"  {k} = {v}")
        return out

    def __str__(self):
        return "\n".join(self.lines())
