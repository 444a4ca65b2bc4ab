"""Writers for detection reports and evaluation tables.

The conflict report is line-delimited TSV with a stable column order so
consecutive runs diff cleanly. Tables are emitted twice: aligned text for
reading and CSV with the conventional column headings for machines.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Sequence

from .engine import Category, ConflictReport, many_to_one_matches
from .evaluation import EvalCounts, MethodResult, MetricRow, SweepRow
from .objects import Dataset

REPORT_COLUMNS = (
    "new_id",
    "category",
    "matched_existing_id",
    "text_score",
    "dist_boost",
    "total_score",
    "distance_m",
    "candidates_considered",
)

TABLE_HEADINGS = (
    "Total Number of conflicts",
    "Conflicts correctly Detected",
    "Conflicts Wrongly Detected",
    "Missed conflicts",
    "Precision (%)",
    "Recall (%)",
)

UNDEFINED_CELL = "—"


def format_pct(value: Optional[float]) -> str:
    return UNDEFINED_CELL if value is None else f"{value:.2f}"


def report_line(r: ConflictReport) -> str:
    if r.breakdown is None:
        scores = ("", "", "", "")
    else:
        scores = (
            f"{r.breakdown.text_score:.6f}",
            f"{r.breakdown.dist_boost:.6f}",
            f"{r.breakdown.total:.6f}",
            f"{r.breakdown.distance_m:.3f}",
        )
    cells = (r.new_id, r.category.value, r.matched_existing_id or "", *scores, str(r.candidates_considered))
    return "\t".join(cells)


def write_conflict_report(reports: Sequence[ConflictReport], path: str | Path) -> None:
    lines = ["\t".join(REPORT_COLUMNS)]
    lines.extend(report_line(r) for r in reports)
    Path(path).write_text("\n".join(lines) + "\n", "utf-8")


def category_counts(reports: Sequence[ConflictReport]) -> dict[str, int]:
    counts = {cat.value: 0 for cat in Category}
    for r in reports:
        counts[r.category.value] += 1
    return counts


def detection_summary(
    existing: Dataset,
    new: Dataset,
    reports: Sequence[ConflictReport],
    violations: Sequence[tuple[str, str]],
) -> str:
    lines = []
    lines.append(f"existing objects: {len(existing)} (ingest warnings: {len(existing.ingest_warnings)})")
    lines.append(f"new objects: {len(new)} (ingest warnings: {len(new.ingest_warnings)})")
    considered = [r.candidates_considered for r in reports]
    if considered:
        lines.append(
            "candidates considered: total %d, mean %.2f, max %d"
            % (sum(considered), sum(considered) / len(considered), max(considered))
        )
    lines.append("conflicts by category:")
    for name, count in category_counts(reports).items():
        lines.append(f"  {name}: {count}")
    lines.append(f"internal consistency violations in new dataset: {len(violations)}")
    for a, b in violations:
        lines.append(f"  {a} ~ {b}")
    shared = many_to_one_matches(reports)
    lines.append(f"existing objects matched by more than one new object: {len(shared)}")
    for existing_id, new_ids in shared.items():
        lines.append(f"  {existing_id} <= {', '.join(new_ids)}")
    return "\n".join(lines) + "\n"


def _row_cells(counts: EvalCounts, row: MetricRow) -> list[str]:
    return [
        str(counts.total_conflicts),
        str(counts.correctly_detected),
        str(counts.wrongly_detected),
        str(counts.missed),
        format_pct(row.precision_pct),
        format_pct(row.recall_pct),
    ]


def _write_table(head: Sequence[str], rows: Sequence[Sequence[str]], csv_path, txt_path) -> None:
    import csv as _csv

    with Path(csv_path).open("w", newline="", encoding="utf-8") as handle:
        writer = _csv.writer(handle)
        writer.writerow(head)
        writer.writerows(rows)
    widths = [max(len(str(c)) for c in col) for col in zip(head, *rows)]
    lines = ["  ".join(str(c).rjust(w) for c, w in zip(row, widths)) for row in (head, *rows)]
    Path(txt_path).write_text("\n".join(lines) + "\n", "utf-8")


def write_tuning_table(rows: Sequence[SweepRow], csv_path: str | Path, txt_path: str | Path) -> None:
    head = ("Radius (meters)", *TABLE_HEADINGS)
    cells = [[f"{r.radius_m:g}", *_row_cells(r.counts, r.metrics)] for r in rows]
    _write_table(head, cells, csv_path, txt_path)


def write_methods_table(results: Sequence[MethodResult], csv_path: str | Path, txt_path: str | Path) -> None:
    head = ("Method", *TABLE_HEADINGS)
    cells = [[r.method, *_row_cells(r.counts, r.metrics)] for r in results]
    _write_table(head, cells, csv_path, txt_path)


def write_counts_table(
    labeled_counts: Sequence[tuple[str, EvalCounts, MetricRow]],
    csv_path: str | Path,
    txt_path: str | Path,
) -> None:
    head = ("Label", *TABLE_HEADINGS)
    cells = [[label, *_row_cells(counts, row)] for label, counts, row in labeled_counts]
    _write_table(head, cells, csv_path, txt_path)
