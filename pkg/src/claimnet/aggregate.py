"""Unstacking, time-window aggregation and m-slice thresholding.

The pipeline stage between raw records and networks: expand each record
into one observation per (actor, category) pair, restrict to a window,
count on how many distinct days each actor/category/polarity triple was
observed, and keep only pairs seen on at least ``m`` days.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from datetime import date
from typing import Iterable, Optional

from .model import ClaimRecord, Observation, Polarity


@dataclass(frozen=True)
class TimeWindow:
    start: date
    end: date
    label: Optional[str] = None

    def __post_init__(self) -> None:
        if self.start > self.end:
            raise ValueError(f"window start {self.start} after end {self.end}")

    def __contains__(self, day: date) -> bool:
        return self.start <= day <= self.end


@dataclass(frozen=True)
class EdgeCount:
    """Day-deduplicated tally for one actor/category/polarity triple.

    count_days is the number of distinct claim dates, count_raw the number
    of contributing observations (same-day repeats included).
    """

    actor: str
    category: int
    polarity: Polarity
    count_days: int
    count_raw: int

    def __post_init__(self) -> None:
        if self.count_days < 1:
            raise ValueError("count_days must be >= 1")
        if self.count_raw < self.count_days:
            raise ValueError("count_raw must be >= count_days")


def unstack(record: ClaimRecord) -> list[Observation]:
    """Expand a record into |categories| x |actors| observations."""
    return [
        Observation(
            record_id=record.record_id,
            doc_id=record.doc_id,
            claim_date=record.claim_date,
            actor=mention.canonical_name,
            category=code,
            polarity=record.polarity,
        )
        for mention in record.actors
        for code in sorted(record.categories)
    ]


def unstack_all(records: Iterable[ClaimRecord]) -> list[Observation]:
    observations: list[Observation] = []
    for record in records:
        observations.extend(unstack(record))
    return observations


def aggregate_window(observations: Iterable[Observation], window: TimeWindow,
                     m: int, per_polarity: bool = False) -> list[EdgeCount]:
    """Aggregate observations inside ``window`` and apply the m-slice.

    An (actor, category) pair survives iff its day counts summed over both
    polarities reach ``m``; surviving pairs keep one EdgeCount per polarity
    present. With ``per_polarity`` the threshold applies to each triple
    separately instead (sensitivity-analysis switch).
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")

    days: dict[tuple[str, int, Polarity], set[date]] = defaultdict(set)
    raw: dict[tuple[str, int, Polarity], int] = defaultdict(int)
    for obs in observations:
        if obs.claim_date not in window:
            continue
        key = (obs.actor, obs.category, obs.polarity)
        days[key].add(obs.claim_date)
        raw[key] += 1

    pair_days: dict[tuple[str, int], int] = defaultdict(int)
    for (actor, category, _), dates in days.items():
        pair_days[(actor, category)] += len(dates)

    counts: list[EdgeCount] = []
    for key in sorted(days, key=lambda k: (k[0], k[1], k[2].value)):
        actor, category, polarity = key
        if per_polarity:
            if len(days[key]) < m:
                continue
        elif pair_days[(actor, category)] < m:
            continue
        counts.append(EdgeCount(actor, category, polarity,
                                count_days=len(days[key]),
                                count_raw=raw[key]))
    return counts


@dataclass(frozen=True)
class MonthBucket:
    year: int
    month: int
    claim_count: int
    unique_categories: int
    unique_actors: int

    @property
    def label(self) -> str:
        return f"{self.year:04d}-{self.month:02d}"


def month_span(first: date, last: date) -> list[tuple[int, int]]:
    """All (year, month) pairs intersecting the inclusive date range."""
    months: list[tuple[int, int]] = []
    year, month = first.year, first.month
    while (year, month) <= (last.year, last.month):
        months.append((year, month))
        month += 1
        if month > 12:
            year, month = year + 1, 1
    return months


def monthly_buckets(dataset) -> list[MonthBucket]:
    """Per-calendar-month claim, category and actor counts.

    Counts are taken on fully unstacked observations; months inside the
    corpus range with no claims still produce a (zeroed) bucket.
    """
    if not dataset.records:
        return []
    observations = unstack_all(dataset.records)
    by_month: dict[tuple[int, int], list[Observation]] = defaultdict(list)
    for obs in observations:
        by_month[(obs.claim_date.year, obs.claim_date.month)].append(obs)

    first, last = dataset.corpus_range
    buckets = []
    for year, month in month_span(first, last):
        group = by_month.get((year, month), [])
        buckets.append(MonthBucket(
            year=year,
            month=month,
            claim_count=len(group),
            unique_categories=len({o.category for o in group}),
            unique_actors=len({o.actor for o in group}),
        ))
    return buckets
