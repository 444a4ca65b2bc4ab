"""Candidate ranking: per-field BM25 over the existing corpus, an additive
inverse-distance boost, and the containment-relation baseline.

The distance boost floors distances at 1 m, normalizes the inverse
distances to [0, 1] within the candidate set, then scales by the set's
maximum text score so the spatial and textual components are commensurate.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .textnorm import TermList

MIN_BOOST_DISTANCE_M = 1.0


@dataclass(frozen=True)
class Bm25Params:
    """Term-frequency saturation (k1) and length normalization (b)."""

    k1: float = 1.2
    b: float = 0.75

    def __post_init__(self) -> None:
        if self.k1 < 0:
            raise ValueError("k1 must be >= 0")
        if not 0.0 <= self.b <= 1.0:
            raise ValueError("b must be in [0, 1]")


@dataclass(frozen=True)
class ScoreBreakdown:
    """Score decomposition for one candidate pair."""

    text_score: float
    dist_boost: float
    total: float
    distance_m: float


class FieldCorpusStats:
    """Frozen per-field statistics over the whole existing corpus.

    Keeps the inverted index (term -> doc -> frequency), document count,
    per-document field lengths and their mean.
    """

    __slots__ = ("doc_count", "postings", "doc_freq", "field_length", "avg_field_length")

    def __init__(self, docs: Mapping[str, TermList] | Iterable[tuple[str, TermList]]):
        items = docs.items() if isinstance(docs, Mapping) else list(docs)
        self.postings: dict[str, dict[str, int]] = {}
        self.field_length: dict[str, int] = {}
        total_len = 0
        n = 0
        for doc_id, terms in items:
            n += 1
            self.field_length[doc_id] = len(terms)
            total_len += len(terms)
            for term, freq in Counter(terms).items():
                self.postings.setdefault(term, {})[doc_id] = freq
        self.doc_count = n
        self.doc_freq = {term: len(per_doc) for term, per_doc in self.postings.items()}
        self.avg_field_length = total_len / n if n else 0.0

    def freq(self, term: str, doc_id: str) -> int:
        return self.postings.get(term, {}).get(doc_id, 0)


def idf(term: str, stats: FieldCorpusStats) -> float:
    """log(1 + (docCount - docFreq + 0.5) / (docFreq + 0.5)), natural log."""
    df = stats.doc_freq.get(term, 0)
    return math.log(1.0 + (stats.doc_count - df + 0.5) / (df + 0.5))


def tf_norm(freq: int, field_length: int, avg_field_length: float, params: Bm25Params) -> float:
    """freq * (k1+1) / (freq + k1 * (1 - b + b * fieldLength/avgFieldLength))."""
    if avg_field_length <= 0.0:
        raise ValueError("avg_field_length must be positive (empty corpus?)")
    return (freq * (params.k1 + 1.0)) / (
        freq + params.k1 * (1.0 - params.b + params.b * field_length / avg_field_length)
    )


def bm25_score(
    query: TermList,
    doc_id: str,
    stats: FieldCorpusStats,
    params: Bm25Params = Bm25Params(),
    dedupe_query_terms: bool = False,
) -> float:
    """Sum of tfNorm * idf over the query terms for one document.

    Each query-term instance contributes once unless dedupe_query_terms
    collapses repeats.
    """
    terms = list(dict.fromkeys(query)) if dedupe_query_terms else query
    fl = stats.field_length.get(doc_id, 0)
    score = 0.0
    for term in terms:
        f = stats.freq(term, doc_id)
        if f == 0:
            continue
        score += tf_norm(f, fl, stats.avg_field_length, params) * idf(term, stats)
    return score


def dist_boost(candidates: Sequence[tuple[str, float, float]]) -> dict[str, float]:
    """Distance boosts for (doc_id, distance_m, text_score) candidates.

    Inverse distance (floored at 1 m) is normalized to the set maximum and
    scaled by the maximum text score; all zeros when no candidate has text.
    """
    if not candidates:
        raise ValueError("dist_boost needs at least one candidate")
    max_text = max(text for _, _, text in candidates)
    if max_text <= 0.0:
        return {doc_id: 0.0 for doc_id, _, _ in candidates}
    raws = [(doc_id, 1.0 / max(dist, MIN_BOOST_DISTANCE_M)) for doc_id, dist, _ in candidates]
    max_raw = max(raw for _, raw in raws)
    return {doc_id: (raw / max_raw) * max_text for doc_id, raw in raws}


def combined_scores(
    query_terms: Mapping[str, TermList],
    candidates: Sequence[tuple[str, float]],
    stats_by_field: Mapping[str, FieldCorpusStats],
    field_weights: Mapping[str, float],
    params: Bm25Params = Bm25Params(),
    dedupe_query_terms: bool = False,
) -> dict[str, ScoreBreakdown]:
    """Score every (candidate id, distance_m) pair in one neighborhood.

    Text score is the weighted sum of per-field BM25 scores; the distance
    boost is normalized across this candidate set.
    """
    texts = []
    for doc_id, dist in candidates:
        text = 0.0
        for name, weight in field_weights.items():
            terms = query_terms.get(name)
            if not terms:
                continue
            text += weight * bm25_score(terms, doc_id, stats_by_field[name], params, dedupe_query_terms)
        texts.append((doc_id, dist, text))
    boosts = dist_boost(texts) if texts else {}
    out = {}
    for doc_id, dist, text in texts:
        boost = boosts[doc_id]
        out[doc_id] = ScoreBreakdown(text_score=text, dist_boost=boost, total=text + boost, distance_m=dist)
    return out


def containment_similar(a: str, b: str) -> bool:
    """True iff one lowercased text contains the other (either direction)."""
    a = a.lower()
    b = b.lower()
    return a in b or b in a
