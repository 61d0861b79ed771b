"""Domain model: claim records, codebook, actors, observations.

All types are immutable after construction and safe to share across
threads. Validation returns violations as data instead of raising, so
callers can decide between strict and lenient handling.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date
from enum import Enum
from typing import Iterable, Optional

MAJOR_CLASSES = (100, 200, 300, 400, 500, 600, 700, 800)


class Polarity(Enum):
    SUPPORT = "+"
    REJECT = "-"

    @classmethod
    def parse(cls, value: str) -> "Polarity":
        for member in cls:
            if value == member.value or value == member.name:
                return member
        raise ValueError(f"unknown polarity {value!r} (expected '+' or '-')")


class EntityKind(Enum):
    PERSON = "PER"
    ORGANIZATION = "ORG"

    @classmethod
    def parse(cls, value: str) -> "EntityKind":
        normalized = value.strip().upper()
        aliases = {"PER": cls.PERSON, "PERSON": cls.PERSON,
                   "ORG": cls.ORGANIZATION, "ORGANIZATION": cls.ORGANIZATION}
        if normalized in aliases:
            return aliases[normalized]
        raise ValueError(f"unknown entity kind {value!r} (expected PER or ORG)")


def major_class(code: int) -> int:
    """Coarse class of a category code (102 -> 100, 504 -> 500)."""
    return (code // 100) * 100


@dataclass(frozen=True)
class CategoryEntry:
    code: int
    label: str
    description: Optional[str] = None
    example: Optional[str] = None

    def __post_init__(self) -> None:
        if major_class(self.code) not in MAJOR_CLASSES:
            raise ValueError(
                f"category code {self.code} falls outside the eight major classes"
            )

    @property
    def major_class(self) -> int:
        return major_class(self.code)


@dataclass(frozen=True)
class Codebook:
    entries: tuple[CategoryEntry, ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for entry in self.entries:
            if entry.code in seen:
                raise ValueError(f"duplicate category code {entry.code}")
            seen.add(entry.code)
        object.__setattr__(self, "_by_code", {e.code: e for e in self.entries})

    @classmethod
    def from_entries(cls, entries: Iterable[CategoryEntry]) -> "Codebook":
        return cls(tuple(sorted(entries, key=lambda e: e.code)))

    def __contains__(self, code: int) -> bool:
        return code in self._by_code

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, code: int) -> Optional[CategoryEntry]:
        return self._by_code.get(code)

    def label(self, code: int) -> str:
        entry = self._by_code.get(code)
        return entry.label if entry is not None else str(code)

    @property
    def major_classes(self) -> set[int]:
        return {e.major_class for e in self.entries}


@dataclass(frozen=True)
class Actor:
    canonical_name: str
    entity_kind: EntityKind
    party: Optional[str] = None

    def __post_init__(self) -> None:
        if not self.canonical_name.strip():
            raise ValueError("actor canonical_name must be non-empty")


@dataclass(frozen=True)
class ActorMention:
    surface: str
    canonical_name: str

    def __post_init__(self) -> None:
        if not self.surface.strip():
            raise ValueError("actor mention surface must be non-empty")
        if not self.canonical_name.strip():
            raise ValueError("actor mention canonical_name must be non-empty")


@dataclass(frozen=True)
class ClaimRecord:
    """One annotated text span: who claimed what, when, with which stance.

    A span may carry several categories and several actors but exactly one
    polarity; diverging stances on the same span arrive as separate records.
    """

    record_id: str
    doc_id: str
    span_text: str
    claim_date: date
    categories: frozenset[int]
    actors: tuple[ActorMention, ...]
    polarity: Polarity

    def __post_init__(self) -> None:
        if not self.record_id:
            raise ValueError("record_id must be non-empty")


@dataclass(frozen=True)
class Observation:
    """Unstacked actor-category-polarity-date row derived from one record."""

    record_id: str
    doc_id: str
    claim_date: date
    actor: str
    category: int
    polarity: Polarity

    @property
    def major_class(self) -> int:
        return major_class(self.category)


@dataclass(frozen=True)
class Violation:
    field: str
    message: str

    def __str__(self) -> str:
        return f"{self.field}: {self.message}"


@dataclass(frozen=True)
class ValidationResult:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def validate_record(record: ClaimRecord, codebook: Codebook, registry,
                    corpus_range: Optional[tuple[date, date]] = None) -> ValidationResult:
    """Check a record against the codebook, actor registry and date range.

    Violations are returned as data; the record is never mutated. The
    registry argument only needs a ``known(canonical_name)`` method, which
    keeps this module free of ingest imports.
    """
    violations: list[Violation] = []
    if not record.categories:
        violations.append(Violation("categories", "empty category set"))
    for code in sorted(record.categories):
        if code not in codebook:
            violations.append(
                Violation("categories", f"category {code} not in codebook"))
    if not record.actors:
        violations.append(Violation("actors", "empty actor list"))
    for mention in record.actors:
        if not registry.known(mention.canonical_name):
            violations.append(
                Violation("actors",
                          f"actor {mention.canonical_name!r} not in registry"))
    if corpus_range is not None:
        first, last = corpus_range
        if not (first <= record.claim_date <= last):
            violations.append(
                Violation("claim_date",
                          f"{record.claim_date.isoformat()} outside corpus range "
                          f"{first.isoformat()}..{last.isoformat()}"))
    return ValidationResult(tuple(violations))
