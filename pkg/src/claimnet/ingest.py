"""Dataset loading: codebook, actor mapping and claim-record files.

File formats (all UTF-8):

* codebook: delimited text with header ``code,label,major,description,example``
  (comma or tab separated; ``major`` may be blank and is recomputed anyway).
* actor mapping: delimited text with header ``surface,canonical,kind,party``.
* records: one JSON object per line with fields ``record_id``, ``doc_id``,
  ``date`` (YYYY-MM-DD), ``span_text``, ``categories`` (list of ints),
  ``polarity`` ("+" or "-"), ``actors`` (list of ``{surface, canonical?,
  kind?, party?}``).

Loading is deterministic: the same files always produce the same Dataset.
"""

from __future__ import annotations

import csv
import json
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path
from typing import Optional

from .model import (
    Actor,
    ActorMention,
    CategoryEntry,
    ClaimRecord,
    Codebook,
    EntityKind,
    Polarity,
    validate_record,
)


class IngestError(Exception):
    """Base class for ingestion failures."""


class ParseError(IngestError):
    def __init__(self, path, line: Optional[int], message: str) -> None:
        where = f"{path}:{line}" if line is not None else str(path)
        super().__init__(f"{where}: {message}")
        self.path = path
        self.line = line


class MappingConflict(IngestError):
    def __init__(self, surface: str, first: str, second: str) -> None:
        super().__init__(
            f"surface {surface!r} mapped to both {first!r} and {second!r}")
        self.surface = surface


class ValidationFailure(IngestError):
    def __init__(self, report: "IngestReport") -> None:
        super().__init__(
            f"{report.rejected} invalid record(s): " + "; ".join(report.reasons[:5])
            + ("; ..." if len(report.reasons) > 5 else ""))
        self.report = report


def _normalize_surface(surface: str) -> str:
    return " ".join(surface.split()).casefold()


class ActorRegistry:
    """Lexical surface-form -> canonical-name lookup plus the actor roster.

    Lookup keys are case-insensitive and whitespace-normalized. Treat the
    registry as immutable once loading has finished.
    """

    def __init__(self, identity_fallback: bool = True) -> None:
        self.identity_fallback = identity_fallback
        self._actors: dict[str, Actor] = {}
        self._mapping: dict[str, str] = {}

    @property
    def actors(self) -> tuple[Actor, ...]:
        return tuple(self._actors[name] for name in sorted(self._actors))

    def register(self, actor: Actor) -> None:
        existing = self._actors.get(actor.canonical_name)
        if existing is None:
            self._actors[actor.canonical_name] = actor
        elif existing.party is None and actor.party is not None:
            self._actors[actor.canonical_name] = Actor(
                actor.canonical_name, existing.entity_kind, actor.party)
        self._mapping.setdefault(
            _normalize_surface(actor.canonical_name), actor.canonical_name)

    def add_mapping(self, surface: str, canonical: str) -> None:
        key = _normalize_surface(surface)
        existing = self._mapping.get(key)
        if existing is not None and existing != canonical:
            raise MappingConflict(surface, existing, canonical)
        self._mapping[key] = canonical

    def known(self, canonical_name: str) -> bool:
        return canonical_name in self._actors

    def get(self, canonical_name: str) -> Optional[Actor]:
        return self._actors.get(canonical_name)

    def resolve(self, surface: str) -> Optional[str]:
        """Canonical name for a surface form, or None if unmapped and no
        identity fallback is enabled."""
        mapped = self._mapping.get(_normalize_surface(surface))
        if mapped is not None:
            return mapped
        if self.identity_fallback:
            return " ".join(surface.split())
        return None


@dataclass(frozen=True)
class IngestReport:
    accepted: int
    rejected: int
    reasons: tuple[str, ...] = ()

    def __str__(self) -> str:
        return f"{self.accepted} accepted, {self.rejected} rejected"


@dataclass(frozen=True)
class Dataset:
    """Immutable snapshot shared by every downstream module."""

    records: tuple[ClaimRecord, ...]
    codebook: Codebook
    registry: ActorRegistry
    corpus_range: tuple[date, date]
    report: IngestReport = field(default=IngestReport(0, 0))


def _open_rows(path) -> tuple[list[dict], str]:
    text = Path(path).read_text(encoding="utf-8")
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        return [], ","
    delimiter = "\t" if "\t" in lines[0] else ","
    reader = csv.DictReader(lines, delimiter=delimiter)
    return list(reader), delimiter


def load_codebook(path) -> Codebook:
    """Parse a codebook file into a Codebook; codes must be unique."""
    rows, _ = _open_rows(path)
    entries: list[CategoryEntry] = []
    seen: set[int] = set()
    for i, row in enumerate(rows, start=2):
        if row.get("code") is None or row.get("label") is None:
            raise ParseError(path, i, "missing code/label column")
        try:
            code = int(row["code"].strip())
        except ValueError:
            raise ParseError(path, i, f"malformed code {row['code']!r}") from None
        if code in seen:
            raise ParseError(path, i, f"duplicate category code {code}")
        seen.add(code)
        major = (row.get("major") or "").strip()
        if major and int(major) != (code // 100) * 100:
            raise ParseError(path, i,
                             f"major class {major} inconsistent with code {code}")
        try:
            entries.append(CategoryEntry(
                code=code,
                label=row["label"].strip(),
                description=(row.get("description") or "").strip() or None,
                example=(row.get("example") or "").strip() or None,
            ))
        except ValueError as exc:
            raise ParseError(path, i, str(exc)) from None
    return Codebook.from_entries(entries)


def load_actor_mapping(path, identity_fallback: bool = True) -> ActorRegistry:
    """Parse an actor-mapping table into an ActorRegistry.

    Each row maps one surface form to a canonical name and (on first sight
    of the canonical name) registers the actor itself. A surface form
    mapped to two different canonical names is a conflict.
    """
    registry = ActorRegistry(identity_fallback=identity_fallback)
    rows, _ = _open_rows(path)
    for i, row in enumerate(rows, start=2):
        surface = (row.get("surface") or "").strip()
        canonical = (row.get("canonical") or "").strip()
        if not surface or not canonical:
            raise ParseError(path, i, "missing surface/canonical column")
        kind_raw = (row.get("kind") or "").strip()
        try:
            kind = EntityKind.parse(kind_raw) if kind_raw else EntityKind.PERSON
        except ValueError as exc:
            raise ParseError(path, i, str(exc)) from None
        party = (row.get("party") or "").strip() or None
        registry.register(Actor(canonical, kind, party))
        try:
            registry.add_mapping(surface, canonical)
        except MappingConflict as exc:
            raise ParseError(path, i, str(exc)) from None
    return registry


def _parse_record_line(line: str, path, lineno: int,
                       registry: ActorRegistry) -> ClaimRecord:
    try:
        raw = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ParseError(path, lineno, f"malformed JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise ParseError(path, lineno, "record line is not an object")
    try:
        record_id = str(raw["record_id"])
        doc_id = str(raw.get("doc_id", ""))
        claim_date = date.fromisoformat(str(raw["date"]))
        span_text = str(raw.get("span_text", ""))
        categories = frozenset(int(c) for c in raw.get("categories", []))
        polarity = Polarity.parse(str(raw["polarity"]))
    except KeyError as exc:
        raise ParseError(path, lineno, f"missing field {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        raise ParseError(path, lineno, str(exc)) from None

    mentions: list[ActorMention] = []
    for entry in raw.get("actors", []):
        if isinstance(entry, str):
            entry = {"surface": entry}
        surface = str(entry.get("surface", "")).strip()
        if not surface:
            raise ParseError(path, lineno, "actor mention without surface form")
        canonical = str(entry.get("canonical", "")).strip() or registry.resolve(surface)
        if canonical is None:
            # leave resolution failure to validation by using the surface
            # itself; the registry will not know it
            canonical = " ".join(surface.split())
        else:
            kind_raw = str(entry.get("kind", "")).strip()
            kind = EntityKind.parse(kind_raw) if kind_raw else EntityKind.PERSON
            party = str(entry.get("party", "")).strip() or None
            if not registry.known(canonical) and (
                    registry.identity_fallback or entry.get("canonical")):
                registry.register(Actor(canonical, kind, party))
        mentions.append(ActorMention(surface=surface, canonical_name=canonical))

    return ClaimRecord(
        record_id=record_id,
        doc_id=doc_id,
        span_text=span_text,
        claim_date=claim_date,
        categories=categories,
        actors=tuple(mentions),
        polarity=polarity,
    )


def load_records(path, codebook: Codebook, registry: ActorRegistry,
                 strict: bool = True,
                 corpus_range: Optional[tuple[date, date]] = None) -> Dataset:
    """Load and validate claim records into a Dataset.

    In strict mode any invalid record aborts the load; in lenient mode
    invalid records are skipped and listed in the report. Records are
    sorted by claim date, then record id.
    """
    accepted: list[ClaimRecord] = []
    reasons: list[str] = []
    seen_ids: set[str] = set()

    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = _parse_record_line(line, path, lineno, registry)
        except ParseError as exc:
            if strict:
                raise
            reasons.append(str(exc))
            continue
        result = validate_record(record, codebook, registry, corpus_range)
        violations = list(result.violations)
        if record.record_id in seen_ids:
            violations.append(f"duplicate record_id {record.record_id!r}")
        if violations:
            reasons.append(
                f"{path}:{lineno}: record {record.record_id!r}: "
                + "; ".join(str(v) for v in violations))
            continue
        seen_ids.add(record.record_id)
        accepted.append(record)

    report = IngestReport(accepted=len(accepted), rejected=len(reasons),
                          reasons=tuple(reasons))
    if strict and report.rejected:
        raise ValidationFailure(report)

    accepted.sort(key=lambda r: (r.claim_date, r.record_id))
    if corpus_range is None:
        if accepted:
            corpus_range = (accepted[0].claim_date, accepted[-1].claim_date)
        else:
            today = date(1970, 1, 1)
            corpus_range = (today, today)
    return Dataset(records=tuple(accepted), codebook=codebook,
                   registry=registry, corpus_range=corpus_range, report=report)


def _percent(count: int, total: int) -> int:
    if total == 0:
        return 0
    return math.floor(count * 100 / total + 0.5)


@dataclass(frozen=True)
class CountsReport:
    """Corpus-level tallies over records and unstacked observations."""

    records: int
    actor_rows: int
    observations: int
    class_counts: dict[int, int]
    class_percentages: dict[int, int]
    actor_counts: dict[str, int]
    category_counts: dict[int, tuple[int, int]]

    def top_actors(self, n: int = 10) -> list[tuple[str, int]]:
        ranked = sorted(self.actor_counts.items(), key=lambda kv: (-kv[1], kv[0]))
        return ranked[:n]

    def category_total(self, code: int) -> int:
        pos, neg = self.category_counts.get(code, (0, 0))
        return pos + neg


def corpus_counts(dataset: Dataset) -> CountsReport:
    """Descriptive statistics: span, actor-row and observation counts,
    major-class distribution, per-actor and per-category tallies."""
    from .aggregate import unstack_all

    observations = unstack_all(dataset.records)
    class_counts: Counter[int] = Counter(o.major_class for o in observations)
    actor_counts: Counter[str] = Counter(o.actor for o in observations)
    by_category: dict[int, list[int]] = defaultdict(lambda: [0, 0])
    for obs in observations:
        slot = 0 if obs.polarity is Polarity.SUPPORT else 1
        by_category[obs.category][slot] += 1

    total = len(observations)
    return CountsReport(
        records=len(dataset.records),
        actor_rows=sum(len(r.actors) for r in dataset.records),
        observations=total,
        class_counts=dict(sorted(class_counts.items())),
        class_percentages={c: _percent(n, total)
                           for c, n in sorted(class_counts.items())},
        actor_counts=dict(sorted(actor_counts.items())),
        category_counts={c: (pos, neg)
                         for c, (pos, neg) in sorted(by_category.items())},
    )
