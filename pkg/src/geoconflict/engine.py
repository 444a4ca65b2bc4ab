"""Conflict identification: rank each incoming object's neighborhood,
threshold the best candidate, and classify the difference.

A pure distance match with zero shared text is accepted only within
ZERO_TEXT_MAX_DISTANCE_M so the nearest stranger is never reported, while
a renamed object at the same location still is.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from .geometry import GeoLine, GeoPoint, GeoPolygon, Geometry, centroid
from .grid import RadiusQuery, SpatialGrid, build_index, radius_query
from .objects import GeoObject
from .scoring import Bm25Params, FieldCorpusStats, ScoreBreakdown, combined_scores, containment_similar
from .textnorm import DEFAULT_PIPELINE, PipelineConfig, normalize

ZERO_TEXT_MAX_DISTANCE_M = 5.0
IGNORABLE_MAX_DISTANCE_M = 10.0
GEOMETRY_EQ_TOLERANCE_DEG = 1e-9


class Category(Enum):
    NON_CONFLICTING = "NonConflicting"
    IDENTICAL = "Identical"
    IGNORABLE_DIFF = "IgnorableDiff"
    SIGNIFICANT_DIFF = "SignificantDiff"


@dataclass(frozen=True)
class DetectorConfig:
    """Knobs of one detection run."""

    epsilon_m: float = 200.0
    threshold: float = 0.0
    fields: tuple[tuple[str, float], ...] = (("name", 1.0),)
    params: Bm25Params = Bm25Params()
    pipeline: PipelineConfig = DEFAULT_PIPELINE
    dedupe_query_terms: bool = False
    workers: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "fields", tuple((str(n), float(w)) for n, w in self.fields))
        if self.epsilon_m <= 0:
            raise ValueError("epsilon_m must be positive")
        if self.threshold < 0:
            raise ValueError("threshold must be >= 0")
        if not self.fields:
            raise ValueError("at least one similarity field is required")
        for name, weight in self.fields:
            if not name or weight <= 0:
                raise ValueError(f"bad similarity field ({name!r}, {weight})")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass(frozen=True)
class ConflictReport:
    """Detection outcome for one incoming object."""

    new_id: str
    matched_existing_id: Optional[str]
    breakdown: Optional[ScoreBreakdown]
    category: Category
    candidates_considered: int


class SystemIndex:
    """Frozen searchable snapshot of the existing dataset: spatial grid,
    per-field corpus statistics, and the objects themselves."""

    __slots__ = ("objects", "grid", "stats", "field_weights")

    def __init__(self, existing: Sequence[GeoObject], cfg: DetectorConfig):
        self.objects = {obj.id: obj for obj in existing}
        if len(self.objects) != len(existing):
            raise ValueError("duplicate object ids in existing dataset")
        self.grid: SpatialGrid = build_index(list(existing), cfg.epsilon_m)
        self.field_weights = dict(cfg.fields)
        self.stats: dict[str, FieldCorpusStats] = {
            name: FieldCorpusStats(
                (obj.id, normalize(obj.field_value(name), cfg.pipeline)) for obj in existing
            )
            for name, _ in cfg.fields
        }


def build_system_index(existing: Sequence[GeoObject], cfg: DetectorConfig) -> SystemIndex:
    return SystemIndex(existing, cfg)


def _query_terms(obj: GeoObject, cfg: DetectorConfig) -> dict[str, list[str]]:
    return {name: normalize(obj.field_value(name), cfg.pipeline) for name, _ in cfg.fields}


def _best_candidate(
    obj: GeoObject,
    index: SystemIndex,
    cfg: DetectorConfig,
    exclude_id: Optional[str] = None,
) -> tuple[Optional[str], Optional[ScoreBreakdown], int]:
    candidates = radius_query(index.grid, RadiusQuery(centroid(obj.geometry), cfg.epsilon_m))
    if exclude_id is not None:
        candidates = [(cid, dist) for cid, dist in candidates if cid != exclude_id]
    if not candidates:
        return None, None, 0
    breakdowns = combined_scores(
        _query_terms(obj, cfg),
        candidates,
        index.stats,
        index.field_weights,
        cfg.params,
        cfg.dedupe_query_terms,
    )
    best_id = min(breakdowns, key=lambda cid: (-breakdowns[cid].total, breakdowns[cid].distance_m, cid))
    return best_id, breakdowns[best_id], len(candidates)


def _passes_threshold(breakdown: ScoreBreakdown, cfg: DetectorConfig) -> bool:
    return breakdown.total > cfg.threshold and (
        breakdown.text_score > 0.0 or breakdown.distance_m <= ZERO_TEXT_MAX_DISTANCE_M
    )


def _geometry_equal(a: Geometry, b: Geometry, tol: float = GEOMETRY_EQ_TOLERANCE_DEG) -> bool:
    def close(p: GeoPoint, q: GeoPoint) -> bool:
        return abs(p.lon - q.lon) <= tol and abs(p.lat - q.lat) <= tol

    if isinstance(a, GeoPoint) and isinstance(b, GeoPoint):
        return close(a, b)
    if isinstance(a, GeoLine) and isinstance(b, GeoLine):
        return len(a.vertices) == len(b.vertices) and all(map(close, a.vertices, b.vertices))
    if isinstance(a, GeoPolygon) and isinstance(b, GeoPolygon):
        return len(a.ring) == len(b.ring) and all(map(close, a.ring, b.ring))
    return False


def classify(new_obj: GeoObject, existing_obj: GeoObject, breakdown: ScoreBreakdown, cfg: DetectorConfig) -> Category:
    """Conflict category for a pair that passed the threshold."""
    names = [name for name, _ in cfg.fields]
    if _geometry_equal(new_obj.geometry, existing_obj.geometry) and all(
        new_obj.field_value(n).lower() == existing_obj.field_value(n).lower() for n in names
    ):
        return Category.IDENTICAL
    if breakdown.distance_m <= IGNORABLE_MAX_DISTANCE_M and all(
        sorted(normalize(new_obj.field_value(n), cfg.pipeline))
        == sorted(normalize(existing_obj.field_value(n), cfg.pipeline))
        for n in names
    ):
        return Category.IGNORABLE_DIFF
    return Category.SIGNIFICANT_DIFF


def _report_for(obj: GeoObject, index: SystemIndex, cfg: DetectorConfig) -> ConflictReport:
    best_id, breakdown, considered = _best_candidate(obj, index, cfg)
    if best_id is None or breakdown is None or not _passes_threshold(breakdown, cfg):
        return ConflictReport(obj.id, None, None, Category.NON_CONFLICTING, considered)
    category = classify(obj, index.objects[best_id], breakdown, cfg)
    return ConflictReport(obj.id, best_id, breakdown, category, considered)


def detect(new_objects: Sequence[GeoObject], index: SystemIndex, cfg: DetectorConfig) -> list[ConflictReport]:
    """One report per incoming object, ordered by ascending new id.

    Per-object work is independent; with workers > 1 objects are evaluated
    on a thread pool and the output order is unchanged.
    """
    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            reports = list(pool.map(lambda obj: _report_for(obj, index, cfg), new_objects))
    else:
        reports = [_report_for(obj, index, cfg) for obj in new_objects]
    reports.sort(key=lambda r: r.new_id)
    return reports


def baseline_detect(new_objects: Sequence[GeoObject], index: SystemIndex, cfg: DetectorConfig) -> list[ConflictReport]:
    """Containment-relation baseline: within the same neighborhood, the
    nearest candidate whose every configured field contains (or is
    contained by) the incoming value is reported as the conflict."""
    names = [name for name, _ in cfg.fields]
    reports = []
    for obj in new_objects:
        candidates = radius_query(index.grid, RadiusQuery(centroid(obj.geometry), cfg.epsilon_m))
        match_id = None
        match_dist = 0.0
        for cid, dist in candidates:  # already sorted by (distance, id)
            other = index.objects[cid]
            if all(containment_similar(obj.field_value(n), other.field_value(n)) for n in names):
                match_id, match_dist = cid, dist
                break
        if match_id is None:
            reports.append(ConflictReport(obj.id, None, None, Category.NON_CONFLICTING, len(candidates)))
        else:
            breakdown = ScoreBreakdown(0.0, 0.0, 0.0, match_dist)
            category = classify(obj, index.objects[match_id], breakdown, cfg)
            reports.append(ConflictReport(obj.id, match_id, breakdown, category, len(candidates)))
    reports.sort(key=lambda r: r.new_id)
    return reports


def check_internal_consistency(dataset: Sequence[GeoObject], cfg: DetectorConfig) -> list[tuple[str, str]]:
    """Pairs within one dataset that the detector would flag against each
    other (the merge protocol assumes there are none). Pairs are unordered,
    deduplicated and sorted."""
    index = SystemIndex(dataset, cfg)
    flagged = set()
    for obj in dataset:
        best_id, breakdown, _ = _best_candidate(obj, index, cfg, exclude_id=obj.id)
        if best_id is not None and breakdown is not None and _passes_threshold(breakdown, cfg):
            flagged.add(tuple(sorted((obj.id, best_id))))
    return sorted(flagged)


def many_to_one_matches(reports: Sequence[ConflictReport]) -> dict[str, list[str]]:
    """Existing ids matched by more than one incoming object."""
    by_existing: dict[str, list[str]] = {}
    for r in reports:
        if r.matched_existing_id is not None:
            by_existing.setdefault(r.matched_existing_id, []).append(r.new_id)
    return {eid: sorted(nids) for eid, nids in sorted(by_existing.items()) if len(nids) > 1}
