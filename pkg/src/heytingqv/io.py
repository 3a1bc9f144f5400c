"""JSON file formats for posets and algebras, and DOT export of Hasse diagrams."""

from __future__ import annotations

import json
from pathlib import Path

from .algebra import HeytingAlgebra, Poset


def poset_to_dict(p: Poset) -> dict:
    return {"elements": list(p.labels), "covers": [[p.labels[a], p.labels[b]] for a, b in p.covers]}


def poset_from_dict(d: dict) -> Poset:
    try:
        return Poset.from_covers(list(d["elements"]), [tuple(c) for c in d["covers"]])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed poset data: {exc}") from None


def algebra_to_dict(a: HeytingAlgebra) -> dict:
    return a.to_dict()


def algebra_from_dict(d: dict, name: str | None = None) -> HeytingAlgebra:
    try:
        return HeytingAlgebra.from_dict(d, name=name)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed algebra data: {exc}") from None


def load(path: str | Path) -> Poset | HeytingAlgebra:
    """Read a poset (``elements``/``covers``) or algebra (``n``/tables) file."""
    path = Path(path)
    try:
        d = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(d, dict):
        raise ValueError(f"{path}: expected a JSON object")
    if "elements" in d:
        return poset_from_dict(d)
    return algebra_from_dict(d, name=path.stem)


def save(obj: Poset | HeytingAlgebra, path: str | Path) -> None:
    d = poset_to_dict(obj) if isinstance(obj, Poset) else algebra_to_dict(obj)
    Path(path).write_text(json.dumps(d) + "\n")


def export_dot(obj: Poset | HeytingAlgebra, name: str = "hasse") -> str:
    """DOT digraph of the cover relation, drawn bottom to top."""
    if isinstance(obj, HeytingAlgebra):
        n, covers = obj.n, obj.covers
        labels = [obj.label(x) for x in range(n)]
    else:
        n, covers, labels = obj.n, obj.covers, list(obj.labels)
    lines = [f"digraph {json.dumps(name)} {{", "  rankdir=BT;", "  node [shape=circle];"]
    for x in range(n):
        lines.append(f"  n{x} [label={json.dumps(labels[x])}];")
    for a, b in covers:
        lines.append(f"  n{a} -> n{b} [arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = ["poset_to_dict", "poset_from_dict", "algebra_to_dict", "algebra_from_dict", "load", "save", "export_dot"]
