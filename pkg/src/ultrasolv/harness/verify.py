"""Per-group verification of the Aut-supersolvability criterion, counting runs and reports."""

from __future__ import annotations

import json
import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import partial
from pathlib import Path

from ..certificates import check_certificate
from ..classify import (
    Verdict,
    aut_supersolvable,
    condition2,
    is_fully_solvable,
    is_solvable,
    is_supersolvable,
    is_ultrasolvable,
)
from ..errors import CertificateError, GroupError, InvalidParameter, SkippedEntriesPresent
from ..morphisms import DEFAULT_AUT_CAP, automorphism_order
from .catalog import CatalogEntry
from .serialize import check_serialized, verdict_to_json

VERDICT_FIELDS = ("ultrasolvable", "fully_solvable", "aut_supersolvable", "condition2")


@dataclass
class VerificationRecord:
    """Both sides of the criterion for one catalog group.

    Verdicts are stored in serialized form: ``{"value", "skipped", "note"}``
    plus a ``certificate`` for true verdicts.
    """

    id: str
    order: int
    name: str | None
    ultrasolvable: dict
    fully_solvable: dict
    aut_order: int | None
    aut_supersolvable: dict
    condition2: dict
    main_theorem_agrees: bool | None
    certificates_ok: bool = True
    error: str | None = None
    timings: dict = field(default_factory=dict)

    def value(self, name: str) -> bool | None:
        return getattr(self, name)["value"]

    @property
    def skipped(self) -> bool:
        return self.main_theorem_agrees is None

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> "VerificationRecord":
        return cls(**data)


def _agreement(aut: Verdict, cond: Verdict) -> bool | None:
    if aut.is_skipped or cond.is_skipped:
        return None
    return aut.value == cond.value


def _audit(G, verdict: Verdict, require_prime: bool = False) -> None:
    if not verdict.value:
        return
    if verdict.certificate is None:
        raise CertificateError("true verdict without a certificate")
    if verdict.group is None:
        kwargs = {"require_prime": True} if require_prime else {}
        check_certificate(G, verdict.certificate, **kwargs)
    else:
        check_certificate(verdict.group, verdict.certificate, require_prime=True)


def verify_entry(entry: CatalogEntry, aut_cap: int = DEFAULT_AUT_CAP) -> VerificationRecord:
    """Compute both sides for one group and audit every certificate produced."""
    timings: dict[str, float] = {}

    def timed(stage, fn, *args):
        t0 = time.perf_counter()
        out = fn(*args)
        timings[stage] = round((time.perf_counter() - t0) * 1000, 3)
        return out

    try:
        G = timed("build", entry.build)
        aut_order = timed("aut_order", automorphism_order, G)
        ultra = timed("ultrasolvable", is_ultrasolvable, G, aut_cap)
        full = timed("fully_solvable", is_fully_solvable, G)
        aut = timed("aut_supersolvable", aut_supersolvable, G, aut_cap)
        cond = timed("condition2", condition2, G, aut_cap)
    except GroupError as exc:
        skip = verdict_to_json(Verdict.skip(type(exc).__name__, str(exc)))
        return VerificationRecord(entry.id, entry.order, entry.name, skip, skip, None, skip, skip,
                                  None, True, f"{type(exc).__name__}: {exc}", timings)
    ok = True
    t0 = time.perf_counter()
    try:
        for v in (ultra, full, cond):
            _audit(G, v)
        _audit(G, aut, require_prime=True)
    except CertificateError:
        ok = False
    timings["audit"] = round((time.perf_counter() - t0) * 1000, 3)
    return VerificationRecord(
        entry.id, entry.order, entry.name,
        verdict_to_json(ultra), verdict_to_json(full), aut_order,
        verdict_to_json(aut), verdict_to_json(cond),
        _agreement(aut, cond), ok, None, timings)


def verify_main(entries: list[CatalogEntry], aut_cap: int = DEFAULT_AUT_CAP,
                workers: int = 1) -> list[VerificationRecord]:
    """Records for every entry, in catalog order regardless of ``workers``."""
    job = partial(verify_entry, aut_cap=aut_cap)
    if workers <= 1:
        return [job(e) for e in entries]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(job, entries, chunksize=1))


@dataclass
class Summary:
    total: int
    agreements: int
    disagreements: list[str]
    skipped: list[tuple[str, str, str]]
    certificate_failures: list[str]
    errors: list[str]

    @property
    def ok(self) -> bool:
        return not (self.disagreements or self.certificate_failures or self.errors)


def summarize(records: list[VerificationRecord]) -> Summary:
    skipped = []
    for r in records:
        if r.skipped and r.error is None:
            side = r.aut_supersolvable if r.aut_supersolvable["value"] is None else r.condition2
            skipped.append((r.id, side["skipped"], side["note"]))
    return Summary(
        total=len(records),
        agreements=sum(1 for r in records if r.main_theorem_agrees),
        disagreements=[r.id for r in records if r.main_theorem_agrees is False],
        skipped=skipped,
        certificate_failures=[r.id for r in records if not r.certificates_ok],
        errors=[r.id for r in records if r.error is not None],
    )


def summary_table(records: list[VerificationRecord]) -> str:
    rows = defaultdict(lambda: [0] * 7)
    for r in records:
        row = rows[r.order]
        row[0] += 1
        row[1] += bool(r.value("ultrasolvable"))
        row[2] += bool(r.value("fully_solvable"))
        row[3] += bool(r.value("aut_supersolvable"))
        row[4] += bool(r.value("condition2"))
        row[5] += r.main_theorem_agrees is True
        row[6] += r.skipped
    head = ("order", "groups", "ultra", "fully", "aut_ss", "cond2", "agree", "skipped")
    lines = ["  ".join(f"{h:>7}" for h in head)]
    for order in sorted(rows):
        lines.append("  ".join(f"{x:>7}" for x in (order, *rows[order])))
    s = summarize(records)
    lines.append("")
    lines.append(f"{s.total} groups, {s.agreements} agree, {len(s.disagreements)} disagree, "
                 f"{len(s.skipped)} skipped, {len(s.certificate_failures)} certificate failures, "
                 f"{len(s.errors)} errors")
    for eid, reason, note in s.skipped:
        lines.append(f"  skipped {eid}: {reason} ({note})")
    for eid in s.disagreements:
        lines.append(f"  DISAGREEMENT {eid}")
    for eid in s.certificate_failures:
        lines.append(f"  CERTIFICATE FAILURE {eid}")
    for r in records:
        if r.error is not None:
            lines.append(f"  error {r.id}: {r.error}")
    return "\n".join(lines)


def write_report(records: list[VerificationRecord], path: str | Path) -> Path:
    """JSON lines, one record each, plus ``<path>.summary.txt``."""
    path = Path(path)
    with open(path, "w", encoding="utf-8") as fh:
        for r in records:
            fh.write(json.dumps(r.to_json(), separators=(",", ":")) + "\n")
    summary = path.with_name(path.name + ".summary.txt")
    summary.write_text(summary_table(records) + "\n", encoding="utf-8")
    return summary


def read_report(path: str | Path) -> list[VerificationRecord]:
    with open(path, encoding="utf-8") as fh:
        return [VerificationRecord.from_json(json.loads(line)) for line in fh if line.strip()]


def recheck_certificates(records: list[VerificationRecord],
                         entries: list[CatalogEntry]) -> list[tuple[str, str, str]]:
    """Re-validate every stored certificate; returns ``(id, verdict, reason)`` failures."""
    by_id = {e.id: e for e in entries}
    failures = []
    for r in records:
        stored = [(f, getattr(r, f)) for f in VERDICT_FIELDS if getattr(r, f)["value"]]
        if not stored:
            continue
        entry = by_id.get(r.id)
        if entry is None:
            failures.append((r.id, "-", "entry missing from catalog"))
            continue
        G = entry.build()
        for name, verdict in stored:
            cert = verdict.get("certificate")
            if cert is None:
                failures.append((r.id, name, "true verdict without a certificate"))
                continue
            try:
                check_serialized(G, cert)
            except CertificateError as exc:
                failures.append((r.id, name, str(exc)))
    return failures


PREDICATES = {
    "ultrasolvable": is_ultrasolvable,
    "fully-solvable": is_fully_solvable,
    "supersolvable": is_supersolvable,
    "solvable": is_solvable,
}


def count_predicate(entries: list[CatalogEntry], order: int, predicate: str) -> int:
    """Number of entries of ``order`` satisfying ``predicate``; skips abort the count."""
    try:
        fn = PREDICATES[predicate]
    except KeyError:
        raise InvalidParameter(f"unknown predicate {predicate!r}; choose from {sorted(PREDICATES)}") from None
    hits, skipped = 0, []
    for e in entries:
        if e.order != order:
            continue
        v = fn(e.build())
        if v.is_skipped:
            skipped.append(e.id)
        elif v.value:
            hits += 1
    if skipped:
        raise SkippedEntriesPresent(skipped)
    return hits
