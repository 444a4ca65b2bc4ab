"""Precision/recall bookkeeping against labeled conflicts, the search-radius
tuning sweep, and the ranked-vs-containment method comparison.

Percentages are truncated (not rounded) to two decimals: 119/124 is
reported as 95.96 and 339/344 as 98.54.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional, Sequence

from .engine import ConflictReport, DetectorConfig, SystemIndex, baseline_detect, detect
from .objects import GeoObject


@dataclass(frozen=True)
class GroundTruth:
    """Labeled true conflicts: (new_id, existing_id) pairs, one per new_id."""

    pairs: frozenset[tuple[str, str]]

    def __init__(self, pairs) -> None:
        pairs = frozenset((str(n), str(e)) for n, e in pairs)
        new_ids = [n for n, _ in pairs]
        if len(set(new_ids)) != len(new_ids):
            raise ValueError("a new_id appears in more than one truth pair")
        object.__setattr__(self, "pairs", pairs)

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class EvalCounts:
    """Raw counts of one scored run."""

    total_conflicts: int
    correctly_detected: int
    wrongly_detected: int
    missed: int

    def __post_init__(self) -> None:
        if min(self.total_conflicts, self.correctly_detected, self.wrongly_detected, self.missed) < 0:
            raise ValueError("counts must be non-negative")
        if self.correctly_detected + self.missed != self.total_conflicts:
            raise ValueError("correctly_detected + missed must equal total_conflicts")


@dataclass(frozen=True)
class MetricRow:
    """Precision/recall percentages truncated to two decimals.

    precision_pct is None when no conflicts were reported (undefined; the
    table writer prints an em dash)."""

    precision_pct: Optional[float]
    recall_pct: float


def truncate_pct(numerator: int, denominator: int) -> float:
    """numerator/denominator as a percentage truncated to 2 decimals."""
    if denominator <= 0:
        raise ValueError("denominator must be positive")
    return (10000 * numerator // denominator) / 100.0


def metrics(counts: EvalCounts) -> MetricRow:
    """Precision and recall of one run."""
    if counts.total_conflicts == 0:
        raise ValueError("no labeled conflicts: metrics undefined")
    reported = counts.correctly_detected + counts.wrongly_detected
    precision = truncate_pct(counts.correctly_detected, reported) if reported > 0 else None
    recall = truncate_pct(counts.correctly_detected, counts.total_conflicts)
    return MetricRow(precision, recall)


def score_run(reports: Sequence[ConflictReport], truth: GroundTruth) -> EvalCounts:
    """Count correct/wrong/missed detections against the labeled truth."""
    seen = set()
    for r in reports:
        if r.new_id in seen:
            raise ValueError(f"duplicate report for new id {r.new_id!r}")
        seen.add(r.new_id)
    correct = 0
    wrong = 0
    detected_pairs = set()
    for r in reports:
        if r.matched_existing_id is None:
            continue
        pair = (r.new_id, r.matched_existing_id)
        detected_pairs.add(pair)
        if pair in truth.pairs:
            correct += 1
        else:
            wrong += 1
    missed = sum(1 for pair in truth.pairs if pair not in detected_pairs)
    return EvalCounts(len(truth), correct, wrong, missed)


@dataclass(frozen=True)
class SweepRow:
    radius_m: float
    counts: EvalCounts
    metrics: MetricRow


def tune_radius(
    existing: Sequence[GeoObject],
    new: Sequence[GeoObject],
    truth: GroundTruth,
    radii: Sequence[float],
    cfg: DetectorConfig,
) -> list[SweepRow]:
    """Run detection once per search radius, everything else held fixed."""
    if not radii:
        raise ValueError("radii must be non-empty")
    if list(radii) != sorted(radii):
        raise ValueError("radii must be ascending")
    rows = []
    for radius in radii:
        run_cfg = replace(cfg, epsilon_m=float(radius))
        index = SystemIndex(existing, run_cfg)
        counts = score_run(detect(new, index, run_cfg), truth)
        rows.append(SweepRow(float(radius), counts, metrics(counts)))
    return rows


@dataclass(frozen=True)
class MethodResult:
    method: str
    counts: EvalCounts
    metrics: MetricRow


def compare_methods(
    existing: Sequence[GeoObject],
    new: Sequence[GeoObject],
    truth: GroundTruth,
    cfg: DetectorConfig,
) -> tuple[MethodResult, MethodResult]:
    """Score the ranked detector and the containment baseline on one scene."""
    index = SystemIndex(existing, cfg)
    sdi_counts = score_run(detect(new, index, cfg), truth)
    base_counts = score_run(baseline_detect(new, index, cfg), truth)
    return (
        MethodResult("sdi", sdi_counts, metrics(sdi_counts)),
        MethodResult("baseline", base_counts, metrics(base_counts)),
    )


def load_ground_truth(path: str | Path) -> GroundTruth:
    """Read a truth file: CSV with header new_id,existing_id."""
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None or not {"new_id", "existing_id"} <= set(reader.fieldnames):
            raise ValueError(f"{path} must have header new_id,existing_id")
        pairs = [(row["new_id"], row["existing_id"]) for row in reader]
    return GroundTruth(pairs)


def save_ground_truth(truth: GroundTruth, path: str | Path) -> None:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["new_id", "existing_id"])
        for new_id, existing_id in sorted(truth.pairs):
            writer.writerow([new_id, existing_id])
