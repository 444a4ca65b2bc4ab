"""The unit being merged: a geometry plus named textual attributes."""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from .geometry import Geometry


@dataclass(frozen=True)
class GeoObject:
    """One record of a geospatial dataset."""

    id: str
    geometry: Geometry
    fields: Mapping[str, str] = field(default_factory=dict)
    source: str = ""

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("object id must be non-empty")
        object.__setattr__(self, "fields", MappingProxyType(dict(self.fields)))

    def field_value(self, name: str) -> str:
        """Value of a named attribute; missing fields read as empty."""
        return self.fields.get(name, "")


@dataclass
class Dataset:
    """A loaded dataset: objects, their source label and ingest warnings."""

    objects: list[GeoObject]
    source_label: str = ""
    ingest_warnings: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        seen = set()
        for obj in self.objects:
            if obj.id in seen:
                raise ValueError(f"duplicate object id {obj.id!r} in dataset {self.source_label!r}")
            seen.add(obj.id)

    def __len__(self) -> int:
        return len(self.objects)
