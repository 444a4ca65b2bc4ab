"""Frozen uniform-grid spatial index for exact epsilon-radius queries.

Objects are anchored at their centroid in a grid of epsilon-sized cells
laid out in an equirectangular projection centered on the dataset's mean
latitude. Candidate generation scans the 3x3 cell block around the query
(widened by the largest shape circumradius when extended shapes are
indexed) and the exact haversine filter decides membership, so results do
not depend on projection distortion at city scales.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import EARTH_RADIUS_M, GeoPoint, centroid, geo_distance, vertices
from .objects import GeoObject

_DEG = math.pi / 180.0


@dataclass(frozen=True)
class RadiusQuery:
    center: GeoPoint
    epsilon_m: float

    def __post_init__(self) -> None:
        if self.epsilon_m <= 0:
            raise ValueError("epsilon must be positive")


class SpatialGrid:
    """Immutable snapshot built by build_index; supports radius_query only."""

    __slots__ = ("cell_size_m", "anchor_points", "circumradius_m", "_cells", "_kx", "_ky", "_max_circumradius")

    def __init__(self, objects: list[GeoObject], epsilon_m: float):
        if epsilon_m <= 0:
            raise ValueError("epsilon must be positive")
        self.cell_size_m = float(epsilon_m)
        self.anchor_points: dict[str, GeoPoint] = {}
        self.circumradius_m: dict[str, float] = {}
        seen: set[str] = set()
        for obj in objects:
            if obj.id in seen:
                raise ValueError(f"duplicate object id {obj.id!r}")
            seen.add(obj.id)
            anchor = centroid(obj.geometry)
            self.anchor_points[obj.id] = anchor
            vs = vertices(obj.geometry)
            radius = max(geo_distance(anchor, v) for v in vs) if len(vs) > 1 else 0.0
            self.circumradius_m[obj.id] = radius
        self._max_circumradius = max(self.circumradius_m.values(), default=0.0)

        mean_lat = (
            sum(p.lat for p in self.anchor_points.values()) / len(self.anchor_points)
            if self.anchor_points
            else 0.0
        )
        self._kx = EARTH_RADIUS_M * _DEG * math.cos(mean_lat * _DEG)
        self._ky = EARTH_RADIUS_M * _DEG
        cells: dict[tuple[int, int], list[str]] = {}
        for obj_id, anchor in self.anchor_points.items():
            cells.setdefault(self._cell_of(anchor), []).append(obj_id)
        self._cells = cells

    def __len__(self) -> int:
        return len(self.anchor_points)

    def _cell_of(self, p: GeoPoint) -> tuple[int, int]:
        return (
            math.floor(p.lat * self._ky / self.cell_size_m),
            math.floor(p.lon * self._kx / self.cell_size_m),
        )


def build_index(objects: list[GeoObject], epsilon_m: float) -> SpatialGrid:
    """Index objects by centroid into a grid with cell size epsilon."""
    return SpatialGrid(objects, epsilon_m)


def radius_query(grid: SpatialGrid, query: RadiusQuery) -> list[tuple[str, float]]:
    """Objects whose anchor lies within epsilon of the query center.

    For extended shapes the effective radius is inflated by the shape's
    circumradius, approximating "overlaps the epsilon-disk". Results are
    (id, anchor distance) sorted by ascending distance, ties by id.
    """
    row, col = grid._cell_of(query.center)
    # 3x3 block when the query radius matches the cell size; widened for
    # larger radii and for indexed extended shapes.
    reach = max(1, math.ceil((query.epsilon_m + grid._max_circumradius) / grid.cell_size_m))
    hits = []
    for dr in range(-reach, reach + 1):
        for dc in range(-reach, reach + 1):
            for obj_id in grid._cells.get((row + dr, col + dc), ()):
                dist = geo_distance(query.center, grid.anchor_points[obj_id])
                if dist <= query.epsilon_m + grid.circumradius_m[obj_id]:
                    hits.append((obj_id, dist))
    hits.sort(key=lambda pair: (pair[1], pair[0]))
    return hits
