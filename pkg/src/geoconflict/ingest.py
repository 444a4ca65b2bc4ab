"""Dataset loading from GeoJSON feature collections and CSV point files.

A SchemaMapping names the id column, the attribute columns to keep (and
their canonical names) and, for CSV, the coordinate columns. Features with
out-of-range or degenerate coordinates are skipped with a warning; silently
clamping them would fabricate locations. Multi-part geometries are not
supported and must be exploded upstream.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .geometry import GeoLine, GeoPoint, GeoPolygon, Geometry
from .objects import Dataset, GeoObject

_SUPPORTED_GEOJSON = ("Point", "LineString", "Polygon")


class IngestError(Exception):
    """Unrecoverable problem with an input file (not a skippable record)."""


@dataclass(frozen=True)
class SchemaMapping:
    """How to read one dataset: source columns -> canonical fields."""

    similarity_fields: tuple[tuple[str, str], ...]
    id_field: str = "auto"
    lon_field: str = "lon"
    lat_field: str = "lat"
    source_label: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "similarity_fields", tuple((str(s), str(c)) for s, c in self.similarity_fields)
        )
        if not self.similarity_fields:
            raise ValueError("mapping needs at least one similarity field")
        canonical = [c for _, c in self.similarity_fields]
        if len(set(canonical)) != len(canonical):
            raise ValueError("canonical field names must be unique")


def _check_point(lon: float, lat: float) -> Optional[str]:
    if not -180.0 <= lon <= 180.0:
        return f"longitude {lon} outside [-180, 180]"
    if not -90.0 <= lat <= 90.0:
        return f"latitude {lat} outside [-90, 90]"
    return None


def _map_fields(props: dict, mapping: SchemaMapping) -> dict[str, str]:
    out = {}
    for source, canonical in mapping.similarity_fields:
        value = props.get(source)
        if value is not None:
            out[canonical] = value if isinstance(value, str) else str(value)
    return out


def _feature_geometry(geom: dict, index: int) -> Geometry:
    gtype = geom.get("type")
    if gtype is None:
        raise ValueError("missing geometry")
    if gtype not in _SUPPORTED_GEOJSON:
        raise IngestError(f"feature {index}: unsupported geometry type {gtype!r}")
    coords = geom.get("coordinates")
    if gtype == "Point":
        lon, lat = float(coords[0]), float(coords[1])
        problem = _check_point(lon, lat)
        if problem:
            raise ValueError(problem)
        return GeoPoint(lon, lat)
    if gtype == "LineString":
        return GeoLine([_coord_to_point(c) for c in coords])
    if len(coords) != 1:
        raise ValueError("polygons with interior rings are not supported")
    return GeoPolygon([_coord_to_point(c) for c in coords[0]])


def _coord_to_point(c) -> GeoPoint:
    lon, lat = float(c[0]), float(c[1])
    problem = _check_point(lon, lat)
    if problem:
        raise ValueError(problem)
    return GeoPoint(lon, lat)


def load_geojson(path: str | Path, mapping: SchemaMapping) -> Dataset:
    """Load a feature collection; invalid features are skipped with a warning."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text("utf-8"))
    except OSError as exc:
        raise IngestError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise IngestError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("type") != "FeatureCollection":
        raise IngestError(f"{path} is not a GeoJSON FeatureCollection")
    features = doc.get("features")
    if not isinstance(features, list):
        raise IngestError(f"{path} has no feature list")

    objects: list[GeoObject] = []
    warnings: list[str] = []
    auto_id = 0
    for i, feature in enumerate(features):
        geom = feature.get("geometry") or {}
        props = feature.get("properties") or {}
        try:
            geometry = _feature_geometry(geom, i)
        except IngestError:
            raise
        except (ValueError, TypeError, IndexError, KeyError) as exc:
            warnings.append(f"feature {i}: skipped ({exc})")
            continue
        if mapping.id_field == "auto":
            obj_id = str(auto_id)
            auto_id += 1
        else:
            raw = props.get(mapping.id_field, feature.get("id"))
            if raw is None:
                warnings.append(f"feature {i}: skipped (missing id field {mapping.id_field!r})")
                continue
            obj_id = str(raw)
        objects.append(GeoObject(obj_id, geometry, _map_fields(props, mapping), mapping.source_label))
    try:
        return Dataset(objects, mapping.source_label, warnings)
    except ValueError as exc:
        raise IngestError(str(exc)) from exc


def save_geojson(dataset: Dataset, path: str | Path) -> None:
    """Write a dataset as a GeoJSON feature collection (point/line/polygon)."""
    features = []
    for obj in dataset.objects:
        geometry = _geometry_to_geojson(obj.geometry)
        properties = {"id": obj.id}
        for name in sorted(obj.fields):
            properties[name] = obj.fields[name]
        features.append({"type": "Feature", "geometry": geometry, "properties": properties})
    doc = {"type": "FeatureCollection", "features": features}
    Path(path).write_text(json.dumps(doc, ensure_ascii=False, indent=1) + "\n", "utf-8")


def _geometry_to_geojson(geometry: Geometry) -> dict:
    if isinstance(geometry, GeoPoint):
        return {"type": "Point", "coordinates": [geometry.lon, geometry.lat]}
    if isinstance(geometry, GeoLine):
        return {"type": "LineString", "coordinates": [[p.lon, p.lat] for p in geometry.vertices]}
    return {"type": "Polygon", "coordinates": [[[p.lon, p.lat] for p in geometry.ring]]}


def save_csv(dataset: Dataset, path: str | Path) -> None:
    """Write a point dataset as CSV with columns id, lon, lat, then fields."""
    field_names = sorted({name for obj in dataset.objects for name in obj.fields})
    with Path(path).open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["id", "lon", "lat", *field_names])
        for obj in dataset.objects:
            if not isinstance(obj.geometry, GeoPoint):
                raise ValueError(f"object {obj.id!r} is not a point; CSV output is point-only")
            row = [obj.id, repr(obj.geometry.lon), repr(obj.geometry.lat)]
            row.extend(obj.fields.get(name, "") for name in field_names)
            writer.writerow(row)


def load_csv(path: str | Path, mapping: SchemaMapping) -> Dataset:
    """Load point records from a headered CSV file."""
    path = Path(path)
    try:
        with path.open(newline="", encoding="utf-8") as handle:
            reader = csv.DictReader(handle)
            header = reader.fieldnames
            if header is None:
                raise IngestError(f"{path} is empty (header row required)")
            required = [mapping.lon_field, mapping.lat_field]
            if mapping.id_field != "auto":
                required.append(mapping.id_field)
            for column in required:
                if column not in header:
                    raise IngestError(f"{path} is missing column {column!r}")
            rows = list(reader)
    except OSError as exc:
        raise IngestError(f"cannot read {path}: {exc}") from exc

    objects: list[GeoObject] = []
    warnings: list[str] = []
    auto_id = 0
    for i, row in enumerate(rows):
        try:
            lon = float(row[mapping.lon_field])
            lat = float(row[mapping.lat_field])
        except (TypeError, ValueError):
            warnings.append(f"row {i}: skipped (unparseable coordinates)")
            continue
        problem = _check_point(lon, lat)
        if problem:
            warnings.append(f"row {i}: skipped ({problem})")
            continue
        if mapping.id_field == "auto":
            obj_id = str(auto_id)
            auto_id += 1
        else:
            obj_id = str(row[mapping.id_field])
        fields = _map_fields(row, mapping)
        objects.append(GeoObject(obj_id, GeoPoint(lon, lat), fields, mapping.source_label))
    try:
        return Dataset(objects, mapping.source_label, warnings)
    except ValueError as exc:
        raise IngestError(str(exc)) from exc
