"""Statistical per-passage keyword extraction and monthly rankings.

The scorer is a frozen, deterministic single-document formula in the
spirit of position-aware statistical extractors. For a candidate term t
(non-stopword word token, length >= 2, no digits):

    tf(t)    occurrences in the passage
    cas(t)   fraction of occurrences starting with an uppercase letter
    pos(t)   log2(log2(3 + mean 0-based sentence index of occurrences))
    disp(t)  fraction of sentences containing t
    freq(t)  tf(t) / (mean_tf + population std of tf over all candidates)

    score(t) = pos(t) / (1 + cas(t) + freq(t) + disp(t))

Lower scores rank higher: frequent, early, dispersed, case-marked terms
win. Output is always lowercased.
"""

from __future__ import annotations

import math
import re
from collections import Counter, defaultdict
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Optional

from .ingest import Dataset

_SENTENCE_SPLIT = re.compile(r"[.!?\n]+")
_TOKEN = re.compile(r"[^\W\d_]+", re.UNICODE)


def default_stopwords() -> frozenset[str]:
    """Bundled German stopword list."""
    text = resources.files("claimnet.data").joinpath("stopwords_de.txt") \
        .read_text(encoding="utf-8")
    return load_stopwords(text.splitlines())


def load_stopwords(lines: Iterable[str]) -> frozenset[str]:
    words = set()
    for line in lines:
        word = line.strip()
        if word and not word.startswith("#"):
            words.add(word.casefold())
    return frozenset(words)


def _sentences(text: str) -> list[list[str]]:
    return [_TOKEN.findall(part) for part in _SENTENCE_SPLIT.split(text)
            if part.strip()]


def keyword_scores(text: str,
                   stopwords: Optional[frozenset[str]] = None) -> dict[str, float]:
    """Score every candidate term of one passage (lower is better)."""
    if stopwords is None:
        stopwords = default_stopwords()
    sentences = _sentences(text)
    n_sentences = len(sentences)
    if n_sentences == 0:
        return {}

    tf: Counter[str] = Counter()
    upper: Counter[str] = Counter()
    sentence_hits: dict[str, set[int]] = defaultdict(set)
    position_sum: dict[str, int] = defaultdict(int)
    for idx, tokens in enumerate(sentences):
        for token in tokens:
            term = token.casefold()
            if len(term) < 2 or term in stopwords:
                continue
            tf[term] += 1
            if token[0].isupper():
                upper[term] += 1
            sentence_hits[term].add(idx)
            position_sum[term] += idx
    if not tf:
        return {}

    counts = list(tf.values())
    mean_tf = sum(counts) / len(counts)
    std_tf = math.sqrt(sum((c - mean_tf) ** 2 for c in counts) / len(counts))
    denom_tf = mean_tf + std_tf

    scores: dict[str, float] = {}
    for term, count in tf.items():
        cas = upper[term] / count
        mean_pos = position_sum[term] / count
        pos = math.log2(math.log2(3 + mean_pos))
        disp = len(sentence_hits[term]) / n_sentences
        freq = count / denom_tf
        scores[term] = pos / (1 + cas + freq + disp)
    return scores


def extract_keywords(span_text: str, k: int,
                     stopwords: Optional[frozenset[str]] = None) -> list[str]:
    """Top-k keywords of one passage, best first; lowercased."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    scores = keyword_scores(span_text, stopwords)
    ranked = sorted(scores.items(), key=lambda kv: (kv[1], kv[0]))
    return [term for term, _ in ranked[:k]]


@dataclass(frozen=True)
class KeywordRanking:
    month: str
    entries: tuple[tuple[str, int], ...]

    def top(self, n: int) -> list[tuple[str, int]]:
        return list(self.entries[:n])

    def keywords(self) -> list[str]:
        return [kw for kw, _ in self.entries]


def monthly_keyword_table(dataset: Dataset, k_per_passage: int = 2,
                          min_freq: int = 1,
                          stopwords: Optional[frozenset[str]] = None
                          ) -> list[KeywordRanking]:
    """Aggregate per-passage keywords into per-month frequency rankings.

    A keyword's monthly frequency is the number of passages in that month
    whose top-k contains it; the ranking is frequency-descending with
    lexicographic tie-break. Months without surviving keywords still
    yield an (empty) ranking.
    """
    if stopwords is None:
        stopwords = default_stopwords()
    by_month: dict[str, Counter[str]] = defaultdict(Counter)
    months: set[str] = set()
    for record in dataset.records:
        month = f"{record.claim_date.year:04d}-{record.claim_date.month:02d}"
        months.add(month)
        for keyword in extract_keywords(record.span_text, k_per_passage,
                                        stopwords):
            by_month[month][keyword] += 1

    rankings = []
    for month in sorted(months):
        entries = [(kw, freq) for kw, freq in by_month[month].items()
                   if freq >= min_freq]
        entries.sort(key=lambda kv: (-kv[1], kv[0]))
        rankings.append(KeywordRanking(month=month, entries=tuple(entries)))
    return rankings
