"""Geometry value types and point/line/polygon distance functions.

All coordinates are WGS84 lon/lat degrees. Point distance is great-circle
(haversine on a sphere of radius 6,371,000 m). Shape metrics (Hausdorff,
Chamfer, PoLiS) are computed in a local tangent plane obtained by
equirectangular scaling at a reference latitude; this is adequate for
shapes extending less than ~10 km and is documented as a limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

EARTH_RADIUS_M = 6_371_000.0

_DEG = math.pi / 180.0


@dataclass(frozen=True)
class GeoPoint:
    """A WGS84 position. Longitude is normalized into (-180, 180]."""

    lon: float
    lat: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lon) and math.isfinite(self.lat)):
            raise ValueError(f"non-finite coordinate ({self.lon}, {self.lat})")
        if not -90.0 <= self.lat <= 90.0:
            raise ValueError(f"latitude {self.lat} outside [-90, 90]")
        lon = (self.lon + 180.0) % 360.0 - 180.0
        if lon == -180.0:
            lon = 180.0
        object.__setattr__(self, "lon", lon)


@dataclass(frozen=True)
class GeoLine:
    """An open polyline: at least two vertices, start != end."""

    vertices: tuple[GeoPoint, ...]

    def __init__(self, vertices: Sequence[GeoPoint]) -> None:
        vs = tuple(vertices)
        if len(vs) < 2:
            raise ValueError("line needs at least 2 vertices")
        if vs[0] == vs[-1]:
            raise ValueError("line start and end must differ")
        for a, b in zip(vs, vs[1:]):
            if a == b:
                raise ValueError("line has two identical consecutive vertices")
        object.__setattr__(self, "vertices", vs)


@dataclass(frozen=True)
class GeoPolygon:
    """A closed ring: first vertex repeated last, non-zero area."""

    ring: tuple[GeoPoint, ...]

    def __init__(self, ring: Sequence[GeoPoint]) -> None:
        vs = tuple(ring)
        if len(vs) < 4:
            raise ValueError("polygon ring needs at least 4 vertices (closing vertex included)")
        if vs[0] != vs[-1]:
            raise ValueError("polygon ring must be closed (first vertex == last)")
        if _shoelace_area(vs) == 0.0:
            raise ValueError("polygon ring has zero area")
        object.__setattr__(self, "ring", vs)


Geometry = Union[GeoPoint, GeoLine, GeoPolygon]


def vertices(g: Geometry) -> tuple[GeoPoint, ...]:
    """Distinct vertices of a geometry (closing vertex of a ring dropped)."""
    if isinstance(g, GeoPoint):
        return (g,)
    if isinstance(g, GeoLine):
        return g.vertices
    return g.ring[:-1]


def geo_distance(a: GeoPoint, b: GeoPoint) -> float:
    """Great-circle distance in meters between two points.

    Arguments are put in a canonical order first so the evaluation is
    exactly symmetric in floating point.
    """
    if (b.lat, b.lon) < (a.lat, a.lon):
        a, b = b, a
    phi1 = a.lat * _DEG
    phi2 = b.lat * _DEG
    dphi = (b.lat - a.lat) * _DEG
    dlam = (b.lon - a.lon) * _DEG
    h = math.sin(dphi / 2.0) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(dlam / 2.0) ** 2
    return 2.0 * EARTH_RADIUS_M * math.asin(min(1.0, math.sqrt(h)))


def _shoelace_area(ring: Sequence[GeoPoint]) -> float:
    # Signed area in degree^2 over the closed ring (last vertex == first).
    acc = 0.0
    for p, q in zip(ring, ring[1:]):
        acc += p.lon * q.lat - q.lon * p.lat
    return acc / 2.0


def centroid(g: Geometry) -> GeoPoint:
    """Centroid used as the search anchor of a geometry.

    Points map to themselves. Lines use the length-weighted average of
    segment midpoints and polygons the shoelace area centroid, both in
    planar lon/lat; the error is negligible at PoI scale.
    """
    if isinstance(g, GeoPoint):
        return g
    if isinstance(g, GeoLine):
        wx = wy = w = 0.0
        for p, q in zip(g.vertices, g.vertices[1:]):
            seg = math.hypot(q.lon - p.lon, q.lat - p.lat)
            wx += seg * (p.lon + q.lon) / 2.0
            wy += seg * (p.lat + q.lat) / 2.0
            w += seg
        return GeoPoint(wx / w, wy / w)
    area = _shoelace_area(g.ring)
    if area == 0.0:
        raise ValueError("degenerate polygon: zero area")
    cx = cy = 0.0
    for p, q in zip(g.ring, g.ring[1:]):
        cross = p.lon * q.lat - q.lon * p.lat
        cx += (p.lon + q.lon) * cross
        cy += (p.lat + q.lat) * cross
    return GeoPoint(cx / (6.0 * area), cy / (6.0 * area))


def _local_scale(points: Sequence[GeoPoint]) -> tuple[float, float]:
    # Meters per degree at the midpoint latitude of the combined extent.
    # min/max make the reference independent of argument order.
    lat_ref = (min(p.lat for p in points) + max(p.lat for p in points)) / 2.0
    return EARTH_RADIUS_M * _DEG * math.cos(lat_ref * _DEG), EARTH_RADIUS_M * _DEG


def _project(points: Sequence[GeoPoint], kx: float, ky: float) -> list[tuple[float, float]]:
    return [(p.lon * kx, p.lat * ky) for p in points]


def _nearest_vertex(p: tuple[float, float], qs: Sequence[tuple[float, float]]) -> float:
    return min(math.hypot(p[0] - q[0], p[1] - q[1]) for q in qs)


def hausdorff_distance(a: Sequence[GeoPoint], b: Sequence[GeoPoint]) -> float:
    """Symmetric Hausdorff distance in meters between two vertex sets."""
    if not a or not b:
        raise ValueError("hausdorff_distance needs non-empty vertex sets")
    kx, ky = _local_scale(list(a) + list(b))
    pa, pb = _project(a, kx, ky), _project(b, kx, ky)
    d_ab = max(_nearest_vertex(p, pb) for p in pa)
    d_ba = max(_nearest_vertex(q, pa) for q in pb)
    return max(d_ab, d_ba)


def chamfer_distance(a: Sequence[GeoPoint], b: Sequence[GeoPoint]) -> float:
    """Chamfer distance in meters: symmetrized sum of nearest-vertex
    distances divided by the total vertex count."""
    if not a or not b:
        raise ValueError("chamfer_distance needs non-empty vertex sets")
    kx, ky = _local_scale(list(a) + list(b))
    pa, pb = _project(a, kx, ky), _project(b, kx, ky)
    total = sum(_nearest_vertex(p, pb) for p in pa) + sum(_nearest_vertex(q, pa) for q in pb)
    return total / (len(pa) + len(pb))


def _segments(g: Union[GeoLine, GeoPolygon]) -> list[tuple[GeoPoint, GeoPoint]]:
    vs = g.vertices if isinstance(g, GeoLine) else g.ring
    return list(zip(vs, vs[1:]))


def _planar_point_segment(
    p: tuple[float, float], a: tuple[float, float], b: tuple[float, float]
) -> float:
    vx, vy = b[0] - a[0], b[1] - a[1]
    wx, wy = p[0] - a[0], p[1] - a[1]
    vv = vx * vx + vy * vy
    if vv == 0.0:
        return math.hypot(wx, wy)
    t = max(0.0, min(1.0, (wx * vx + wy * vy) / vv))
    return math.hypot(wx - t * vx, wy - t * vy)


def _vertex_to_boundary(
    vs: Sequence[tuple[float, float]], segs: Sequence[tuple[tuple[float, float], tuple[float, float]]]
) -> float:
    # Mean distance from each vertex to the nearest point of the boundary.
    acc = 0.0
    for v in vs:
        acc += min(_planar_point_segment(v, s0, s1) for s0, s1 in segs)
    return acc / len(vs)


def polis_distance(a: Union[GeoLine, GeoPolygon], b: Union[GeoLine, GeoPolygon]) -> float:
    """PoLiS distance in meters between two lines/polygons.

    Average of each shape's vertex distances to the other shape's boundary,
    halved on both sides. Unlike Hausdorff/Chamfer this is insensitive to
    inserting collinear vertices into either shape.
    """
    va, vb = vertices(a), vertices(b)
    if not va or not vb:
        raise ValueError("polis_distance needs non-empty shapes")
    kx, ky = _local_scale(list(va) + list(vb))
    pa, pb = _project(va, kx, ky), _project(vb, kx, ky)
    segs_a = [((s.lon * kx, s.lat * ky), (t.lon * kx, t.lat * ky)) for s, t in _segments(a)]
    segs_b = [((s.lon * kx, s.lat * ky), (t.lon * kx, t.lat * ky)) for s, t in _segments(b)]
    return 0.5 * _vertex_to_boundary(pa, segs_b) + 0.5 * _vertex_to_boundary(pb, segs_a)


def point_to_segment_distance(p: GeoPoint, a: GeoPoint, b: GeoPoint) -> float:
    """Minimum distance in meters from a point to the segment a-b,
    computed in the local planar approximation around the inputs."""
    kx, ky = _local_scale([p, a, b])
    pp, pa, pb = _project([p, a, b], kx, ky)
    return _planar_point_segment(pp, pa, pb)
