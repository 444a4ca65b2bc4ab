"""Command-line front end: detect, tune, eval, synth, version.

Every command is a pure function of its config file, the input files and
the seed; all outputs land under the run's output directory. Exit codes:
0 success, 1 usage/config/data error, 2 success with internal-consistency
warnings.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from . import __version__
from .config import ConfigError, DatasetRef, RunConfig, load_run_config, load_synthetic_spec
from .engine import SystemIndex, check_internal_consistency, detect
from .evaluation import (
    EvalCounts,
    GroundTruth,
    compare_methods,
    load_ground_truth,
    metrics,
    save_ground_truth,
    tune_radius,
)
from .ingest import IngestError, load_csv, load_geojson, save_csv, save_geojson
from .objects import Dataset
from .report import (
    detection_summary,
    category_counts,
    write_conflict_report,
    write_counts_table,
    write_methods_table,
    write_tuning_table,
)
from .synthetic import generate_synthetic


def _load_dataset(ref: DatasetRef) -> Dataset:
    loader = load_geojson if ref.format == "geojson" else load_csv
    return loader(ref.path, ref.mapping)


def _prepare_output(cfg: RunConfig) -> Path:
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    return cfg.output_dir


def cmd_detect(args) -> int:
    cfg = load_run_config(args.config)
    existing = _load_dataset(cfg.existing)
    new = _load_dataset(cfg.new)
    violations = check_internal_consistency(new.objects, cfg.detector)
    index = SystemIndex(existing.objects, cfg.detector)
    reports = detect(new.objects, index, cfg.detector)

    out = _prepare_output(cfg)
    write_conflict_report(reports, out / "conflicts.tsv")
    summary = detection_summary(existing, new, reports, violations)
    (out / "summary.txt").write_text(summary, "utf-8")
    print(summary, end="")
    if cfg.figures:
        from .figures import save_category_figure

        save_category_figure(category_counts(reports), out / "categories.png")
    return 2 if violations else 0


def _require_truth(path, what: str) -> GroundTruth:
    if path is None:
        raise ConfigError(f"{what} requires a ground-truth file (set [tune]/[eval] truth or pass --truth)")
    return load_ground_truth(path)


def cmd_tune(args) -> int:
    cfg = load_run_config(args.config)
    truth_path = Path(args.truth) if args.truth else cfg.tune_truth
    truth = _require_truth(truth_path, "tune")
    radii = [float(r) for r in args.radii.split(",")] if args.radii else list(cfg.tune_radii)
    existing = _load_dataset(cfg.existing)
    new = _load_dataset(cfg.new)
    rows = tune_radius(existing.objects, new.objects, truth, radii, cfg.detector)

    out = _prepare_output(cfg)
    write_tuning_table(rows, out / "tuning.csv", out / "tuning.txt")
    print((out / "tuning.txt").read_text("utf-8"), end="")
    if cfg.figures:
        from .figures import save_tuning_figure

        save_tuning_figure(rows, out / "tuning.png")
    return 0


def _check_orphans(truth: GroundTruth, existing: Dataset, new: Dataset) -> list[str]:
    new_ids = {o.id for o in new.objects}
    existing_ids = {o.id for o in existing.objects}
    orphans = []
    for new_id, existing_id in sorted(truth.pairs):
        if new_id not in new_ids:
            orphans.append(f"new id {new_id!r} not in new dataset")
        if existing_id not in existing_ids:
            orphans.append(f"existing id {existing_id!r} not in existing dataset")
    return orphans


def cmd_eval(args) -> int:
    if args.counts:
        return _eval_counts_mode(args)
    if not args.config:
        raise ConfigError("eval needs a run config (or --counts for the raw-counts mode)")
    cfg = load_run_config(args.config)
    truth_path = Path(args.truth) if args.truth else cfg.eval_truth
    truth = _require_truth(truth_path, "eval")
    existing = _load_dataset(cfg.existing)
    new = _load_dataset(cfg.new)
    orphans = _check_orphans(truth, existing, new)
    if orphans:
        for line in orphans:
            print(f"error: {line}", file=sys.stderr)
        return 1
    sdi, base = compare_methods(existing.objects, new.objects, truth, cfg.detector)

    out = _prepare_output(cfg)
    write_methods_table([sdi, base], out / "results.csv", out / "results.txt")
    print((out / "results.txt").read_text("utf-8"), end="")
    if cfg.figures:
        from .figures import save_methods_figure

        save_methods_figure([sdi, base], out / "results.png")
    return 0


def _eval_counts_mode(args) -> int:
    """Recompute precision/recall rows from raw published-style counts."""
    rows = []
    with Path(args.counts).open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        required = {"label", "total", "correct", "wrong", "missed"}
        if reader.fieldnames is None or not required <= set(reader.fieldnames):
            raise ConfigError(f"{args.counts}: counts file needs header label,total,correct,wrong,missed")
        for record in reader:
            counts = EvalCounts(
                int(record["total"]), int(record["correct"]), int(record["wrong"]), int(record["missed"])
            )
            rows.append((record["label"], counts, metrics(counts)))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_counts_table(rows, out / "counts.csv", out / "counts.txt")
    print((out / "counts.txt").read_text("utf-8"), end="")
    return 0


RUN_CONFIG_TEMPLATE = """\
[run]
seed = {seed}
output_dir = "out"

[detector]
epsilon_m = 200.0
threshold = 0.0

[existing]
path = "existing.{existing_ext}"
format = "{existing_format}"
id_field = "id"
source_label = "existing"

[existing.fields]
name = "name"

[new]
path = "new.{new_ext}"
format = "{new_format}"
id_field = "id"
lon_field = "lon"
lat_field = "lat"
source_label = "new"

[new.fields]
name = "name"
mutation = "mutation"

[tune]
radii = [100.0, 150.0, 200.0, 250.0]
truth = "truth.csv"

[eval]
truth = "truth.csv"
"""


def cmd_synth(args) -> int:
    spec, out_dir, existing_format, new_format = load_synthetic_spec(args.spec)
    existing, new, truth = generate_synthetic(spec)
    out_dir.mkdir(parents=True, exist_ok=True)
    savers = {"geojson": save_geojson, "csv": save_csv}
    exts = {"geojson": "geojson", "csv": "csv"}
    savers[existing_format](existing, out_dir / f"existing.{exts[existing_format]}")
    savers[new_format](new, out_dir / f"new.{exts[new_format]}")
    save_ground_truth(truth, out_dir / "truth.csv")
    (out_dir / "run.toml").write_text(
        RUN_CONFIG_TEMPLATE.format(
            seed=spec.seed,
            existing_ext=exts[existing_format],
            existing_format=existing_format,
            new_ext=exts[new_format],
            new_format=new_format,
        ),
        "utf-8",
    )
    print(
        f"wrote {len(existing)} existing, {len(new)} new, {len(truth)} truth pairs to {out_dir}"
    )
    return 0


def cmd_version(args) -> int:
    print(f"geoconflict {__version__}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geoconflict",
        description="Detect conflicts when merging a new geospatial dataset into an existing one.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", help="run conflict detection and write the report")
    p.add_argument("config", help="run config (TOML)")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("tune", help="sweep the search radius against labeled truth")
    p.add_argument("config", help="run config (TOML)")
    p.add_argument("--radii", help="comma-separated radii in meters (overrides config)")
    p.add_argument("--truth", help="ground truth CSV (overrides config)")
    p.set_defaults(func=cmd_tune)

    p = sub.add_parser("eval", help="compare the ranked detector against the containment baseline")
    p.add_argument("config", nargs="?", help="run config (TOML)")
    p.add_argument("--truth", help="ground truth CSV (overrides config)")
    p.add_argument("--counts", help="raw-counts CSV: recompute metric rows without detection")
    p.add_argument("--out", default=".", help="output directory for --counts mode")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("synth", help="generate a synthetic benchmark with injected conflicts")
    p.add_argument("spec", help="generator spec (TOML)")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("version", help="print the version")
    p.set_defaults(func=cmd_version)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, IngestError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
