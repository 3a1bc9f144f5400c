"""Search budgets shared by the library front-ends."""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, fields, replace

from .algebra import HeytingAlgebra
from .quasivariety import QvarHandle

ENV_VAR = "HEYTINGQV_BUDGETS"


@dataclass(frozen=True)
class Budgets:
    free_cap: int = 20_000
    filter_cap: int = 10**6
    power_cap: int = 3
    gen_cap: int = 3
    table_cap: int = 4096
    witness_cap: int = 4000
    term_cap: int = 20_000
    eval_budget: int = 10**8

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) < 1:
                raise ValueError(f"budget {f.name} must be positive")

    @classmethod
    def trivial(cls) -> "Budgets":
        """The smallest legal budgets; most searches end in exceeds-budget."""
        return cls(**{f.name: 1 for f in fields(cls)})

    def qvar_kwargs(self) -> dict[str, int]:
        d = asdict(self)
        del d["eval_budget"]
        return d

    def handle(self, generator: HeytingAlgebra, check: bool = True) -> QvarHandle:
        return QvarHandle(generator, check=check, **self.qvar_kwargs())

    def override(self, text: str) -> "Budgets":
        """Apply ``"free_cap=100000,power_cap=2"`` style overrides."""
        names = {f.name for f in fields(self)}
        changes = {}
        for item in filter(None, (s.strip() for s in text.split(","))):
            key, sep, val = item.partition("=")
            key = key.strip().replace("-", "_")
            if not sep or key not in names:
                raise ValueError(f"bad budget override {item!r}; known: {', '.join(sorted(names))}")
            try:
                changes[key] = int(float(val))
            except ValueError:
                raise ValueError(f"budget {key} needs an integer, got {val!r}") from None
        return replace(self, **changes)

    @classmethod
    def from_env(cls) -> "Budgets":
        text = os.environ.get(ENV_VAR, "")
        return cls().override(text) if text else cls()


__all__ = ["Budgets", "ENV_VAR"]
