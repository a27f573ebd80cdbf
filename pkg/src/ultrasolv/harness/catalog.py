"""Reading group catalogs: one JSON object per line, permutation generators as image arrays."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from ..core import DEFAULT_GROUP_CAP, FiniteGroup, PermSpec, from_generators, permutation_closure
from ..errors import ClosureExceedsCap, DuplicateId, GroupError, OrderMismatch, ParseError

REQUIRED = ("id", "order", "degree", "generators")


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    order: int
    degree: int
    generators: tuple[tuple[int, ...], ...]
    name: str | None = None

    @property
    def spec(self) -> PermSpec:
        return PermSpec(self.degree, self.generators)

    def build(self, cap: int | None = None) -> FiniteGroup:
        cap = max(self.order, DEFAULT_GROUP_CAP) if cap is None else cap
        return from_generators(self.spec, cap, name=self.name or self.id)

    def as_json(self) -> dict:
        out = {"id": self.id, "order": self.order, "degree": self.degree,
               "generators": [list(g) for g in self.generators]}
        if self.name is not None:
            out["name"] = self.name
        return out


def default_catalog_path() -> Path:
    """The vendored catalog of all groups of order at most 64."""
    return Path(str(resources.files("ultrasolv") / "data" / "smallgroups.jsonl"))


def example_catalog_path() -> Path:
    """Small hand-written catalog of familiar groups of order at most 16."""
    return Path(str(resources.files("ultrasolv") / "data" / "example_catalog.jsonl"))


def _parse_line(lineno: int, text: str) -> CatalogEntry:
    try:
        rec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(lineno, f"invalid JSON ({exc.msg})") from None
    if not isinstance(rec, dict):
        raise ParseError(lineno, "record is not an object")
    missing = [k for k in REQUIRED if k not in rec]
    if missing:
        raise ParseError(lineno, "missing field(s) " + ", ".join(missing))
    eid, order, degree, gens = rec["id"], rec["order"], rec["degree"], rec["generators"]
    if not isinstance(eid, str) or not eid:
        raise ParseError(lineno, "id must be a non-empty string")
    for label, val in (("order", order), ("degree", degree)):
        if isinstance(val, bool) or not isinstance(val, int) or val < 1:
            raise ParseError(lineno, f"{label} must be a positive integer")
    if not isinstance(gens, list):
        raise ParseError(lineno, "generators must be a list")
    parsed = []
    for g in gens:
        if (not isinstance(g, list) or len(g) != degree
                or any(isinstance(x, bool) or not isinstance(x, int) for x in g)
                or sorted(g) != list(range(degree))):
            raise ParseError(lineno, f"generator {g!r} is not a permutation of 0..{degree - 1}")
        parsed.append(tuple(g))
    name = rec.get("name")
    if name is not None and not isinstance(name, str):
        raise ParseError(lineno, "name must be a string")
    return CatalogEntry(eid, order, degree, tuple(parsed), name)


def parse_catalog(lines, validate: bool = True) -> list[CatalogEntry]:
    entries: list[CatalogEntry] = []
    seen: set[str] = set()
    for lineno, text in enumerate(lines, start=1):
        if not text.strip():
            continue
        entry = _parse_line(lineno, text)
        if entry.id in seen:
            raise DuplicateId(entry.id)
        seen.add(entry.id)
        if validate:
            try:
                elems, _ = permutation_closure(entry.spec, cap=entry.order + 1)
                actual = len(elems)
            except ClosureExceedsCap:
                actual = entry.order + 1
            except GroupError as exc:
                raise ParseError(lineno, str(exc)) from None
            if actual != entry.order:
                raise OrderMismatch(entry.id, entry.order, actual)
        entries.append(entry)
    return entries


def ingest_catalog(path: str | Path | None = None, validate: bool = True) -> list[CatalogEntry]:
    """Read and validate a catalog file (default: the vendored one)."""
    path = default_catalog_path() if path is None else Path(path)
    with open(path, encoding="utf-8") as fh:
        return parse_catalog(fh, validate=validate)


def select(entries: list[CatalogEntry], *, max_order: int | None = None,
           orders=None, ids=None) -> list[CatalogEntry]:
    out = entries
    if max_order is not None:
        out = [e for e in out if e.order <= max_order]
    if orders is not None:
        orders = set(orders)
        out = [e for e in out if e.order in orders]
    if ids is not None:
        ids = set(ids)
        out = [e for e in out if e.id in ids]
    return out


def write_catalog(entries, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for e in entries:
            fh.write(json.dumps(e.as_json(), separators=(",", ":")) + "\n")
