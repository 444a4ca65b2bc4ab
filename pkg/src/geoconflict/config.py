"""Declarative TOML run configs.

A run is fully described by one file (paths, schema mappings, detector
knobs, seed, output directory), so tuning grids and comparisons are
reproducible and archivable. Relative paths resolve against the config
file's directory.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .engine import DetectorConfig
from .ingest import SchemaMapping
from .scoring import Bm25Params
from .synthetic import DEFAULT_MUTATION_MIX, SyntheticSpec
from .textnorm import DEFAULT_PIPELINE, PipelineConfig, load_stopwords

DATASET_FORMATS = ("geojson", "csv")


class ConfigError(Exception):
    """Bad or missing configuration value; the message names file and key."""


@dataclass(frozen=True)
class DatasetRef:
    path: Path
    format: str
    mapping: SchemaMapping


@dataclass(frozen=True)
class RunConfig:
    config_path: Path
    output_dir: Path
    seed: int
    detector: DetectorConfig
    existing: DatasetRef
    new: DatasetRef
    tune_radii: tuple[float, ...]
    tune_truth: Optional[Path]
    eval_truth: Optional[Path]
    figures: bool


def _load_toml(path: Path) -> dict:
    try:
        with path.open("rb") as handle:
            return tomllib.load(handle)
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read config ({exc})") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: invalid TOML ({exc})") from exc


class _Section:
    """Typed accessors that blame the exact file and key on error."""

    def __init__(self, path: Path, name: str, table: dict):
        self.path = path
        self.name = name
        self.table = table

    def key(self, key: str) -> str:
        return f"{self.name}.{key}" if self.name else key

    def get(self, key: str, default: Any = None) -> Any:
        return self.table.get(key, default)

    def require(self, key: str) -> Any:
        if key not in self.table:
            raise ConfigError(f"{self.path}: missing required key {self.key(key)!r}")
        return self.table[key]

    def typed(self, key: str, kind, default: Any = None, required: bool = False) -> Any:
        value = self.require(key) if required else self.table.get(key, default)
        if value is None:
            return None
        if kind is float and isinstance(value, int) and not isinstance(value, bool):
            value = float(value)
        if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
            raise ConfigError(
                f"{self.path}: key {self.key(key)!r} must be {kind.__name__}, got {type(value).__name__}"
            )
        return value


def _section(path: Path, doc: dict, name: str, required: bool = False) -> _Section:
    table = doc.get(name, {})
    if required and not table:
        raise ConfigError(f"{path}: missing required section [{name}]")
    if not isinstance(table, dict):
        raise ConfigError(f"{path}: section [{name}] must be a table")
    return _Section(path, name, table)


def _resolve(base: Path, value: str) -> Path:
    p = Path(value)
    return p if p.is_absolute() else (base / p)


def _parse_fields(section: _Section) -> tuple[tuple[str, float], ...]:
    raw = section.get("fields", [["name", 1.0]])
    pairs = []
    if isinstance(raw, dict):
        items = raw.items()
    else:
        try:
            items = [(name, weight) for name, weight in raw]
        except (TypeError, ValueError) as exc:
            raise ConfigError(
                f"{section.path}: key {section.key('fields')!r} must be a map or list of [name, weight]"
            ) from exc
    for name, weight in items:
        try:
            pairs.append((str(name), float(weight)))
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{section.path}: bad weight for field {name!r}") from exc
    return tuple(pairs)


def _parse_pipeline(path: Path, doc: dict, base: Path) -> PipelineConfig:
    section = _section(path, doc, "pipeline")
    stopwords_file = section.typed("stopwords_file", str)
    stem = section.typed("stem", bool, True)
    if stopwords_file:
        try:
            stopwords = load_stopwords(_resolve(base, stopwords_file))
        except OSError as exc:
            raise ConfigError(f"{path}: pipeline.stopwords_file unreadable ({exc})") from exc
    else:
        stopwords = DEFAULT_PIPELINE.stopwords
    return PipelineConfig(stopwords=stopwords, stem_enabled=stem)


def _parse_detector(path: Path, doc: dict, base: Path) -> DetectorConfig:
    section = _section(path, doc, "detector")
    run = _section(path, doc, "run")
    try:
        return DetectorConfig(
            epsilon_m=section.typed("epsilon_m", float, 200.0),
            threshold=section.typed("threshold", float, 0.0),
            fields=_parse_fields(section),
            params=Bm25Params(
                k1=section.typed("k1", float, 1.2),
                b=section.typed("b", float, 0.75),
            ),
            pipeline=_parse_pipeline(path, doc, base),
            dedupe_query_terms=section.typed("dedupe_query_terms", bool, False),
            workers=run.typed("workers", int, 1),
        )
    except ValueError as exc:
        raise ConfigError(f"{path}: [detector] {exc}") from exc


def _parse_dataset(path: Path, doc: dict, name: str, base: Path) -> DatasetRef:
    section = _section(path, doc, name, required=True)
    file_path = _resolve(base, section.typed("path", str, required=True))
    fmt = section.typed("format", str) or _guess_format(file_path)
    if fmt not in DATASET_FORMATS:
        raise ConfigError(f"{path}: {name}.format must be one of {DATASET_FORMATS}, got {fmt!r}")
    raw_fields = section.get("fields", {"name": "name"})
    if not isinstance(raw_fields, dict):
        raise ConfigError(f"{path}: {name}.fields must be a table of source = canonical names")
    try:
        mapping = SchemaMapping(
            similarity_fields=tuple((str(src), str(dst)) for src, dst in raw_fields.items()),
            id_field=section.typed("id_field", str, "auto"),
            lon_field=section.typed("lon_field", str, "lon"),
            lat_field=section.typed("lat_field", str, "lat"),
            source_label=section.typed("source_label", str, name),
        )
    except ValueError as exc:
        raise ConfigError(f"{path}: [{name}] {exc}") from exc
    return DatasetRef(file_path, fmt, mapping)


def _guess_format(path: Path) -> str:
    suffix = path.suffix.lower()
    if suffix in (".geojson", ".json"):
        return "geojson"
    if suffix == ".csv":
        return "csv"
    raise ConfigError(f"{path}: cannot guess dataset format from suffix {suffix!r}; set format explicitly")


def load_run_config(path: str | Path) -> RunConfig:
    """Parse and validate a run config file."""
    path = Path(path)
    doc = _load_toml(path)
    base = path.parent
    run = _section(path, doc, "run")
    tune = _section(path, doc, "tune")
    evals = _section(path, doc, "eval")
    output = _section(path, doc, "output")

    radii = tune.get("radii", [100.0, 150.0, 200.0, 250.0])
    if not isinstance(radii, list) or not all(isinstance(r, (int, float)) for r in radii):
        raise ConfigError(f"{path}: tune.radii must be a list of numbers")
    tune_truth = tune.typed("truth", str)
    eval_truth = evals.typed("truth", str) or tune_truth

    return RunConfig(
        config_path=path,
        output_dir=_resolve(base, run.typed("output_dir", str, "out")),
        seed=run.typed("seed", int, 0),
        detector=_parse_detector(path, doc, base),
        existing=_parse_dataset(path, doc, "existing", base),
        new=_parse_dataset(path, doc, "new", base),
        tune_radii=tuple(float(r) for r in radii),
        tune_truth=_resolve(base, tune_truth) if tune_truth else None,
        eval_truth=_resolve(base, eval_truth) if eval_truth else None,
        figures=output.typed("figures", bool, True),
    )


def load_synthetic_spec(path: str | Path) -> tuple[SyntheticSpec, Path, str, str]:
    """Parse a generator spec; returns (spec, out_dir, existing_format, new_format)."""
    path = Path(path)
    doc = _load_toml(path)
    section = _section(path, doc, "synthetic", required=True)
    bbox = section.get("bbox")
    if bbox is not None:
        if not isinstance(bbox, list) or len(bbox) != 4:
            raise ConfigError(f"{path}: synthetic.bbox must be [min_lon, min_lat, max_lon, max_lat]")
        bbox = tuple(float(v) for v in bbox)
    mix = section.get("mutation_mix", dict(DEFAULT_MUTATION_MIX))
    if not isinstance(mix, dict):
        raise ConfigError(f"{path}: synthetic.mutation_mix must be a table")
    density = section.get("density_per_km2", 70.0 if bbox is None else None)
    center = section.get("center", [-114.07, 51.05])
    if not isinstance(center, list) or len(center) != 2:
        raise ConfigError(f"{path}: synthetic.center must be [lon, lat]")
    try:
        spec = SyntheticSpec(
            n_existing=section.typed("n_existing", int, required=True),
            n_new=section.typed("n_new", int, required=True),
            n_injected_conflicts=section.typed("n_injected_conflicts", int, required=True),
            bbox=bbox,
            density_per_km2=float(density) if density is not None else None,
            mutation_mix={str(k): float(v) for k, v in mix.items()},
            jitter_max_m=section.typed("jitter_max_m", float, 50.0),
            seed=section.typed("seed", int, 0),
            center=(float(center[0]), float(center[1])),
        )
    except ValueError as exc:
        raise ConfigError(f"{path}: [synthetic] {exc}") from exc
    out_dir = _resolve(path.parent, section.typed("out_dir", str, "bench"))
    existing_format = section.typed("existing_format", str, "geojson")
    new_format = section.typed("new_format", str, "csv")
    for fmt_key, fmt in (("existing_format", existing_format), ("new_format", new_format)):
        if fmt not in DATASET_FORMATS:
            raise ConfigError(f"{path}: synthetic.{fmt_key} must be one of {DATASET_FORMATS}")
    return spec, out_dir, existing_format, new_format
