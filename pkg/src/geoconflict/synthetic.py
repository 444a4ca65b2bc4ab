"""Synthetic PoI benchmark generator with conflict injection.

Stands in for confidential production datasets: an existing dataset of
random named points, a new dataset where a chosen number of objects are
mutated copies of existing ones (the injected conflicts, with the labeled
truth), and the rest are fresh objects. Fully deterministic for a seed.

Each new object carries a "mutation" field naming how it was derived
("fresh" for non-conflicts) so recall can be analyzed per mutation kind.
"""

from __future__ import annotations

import math
import random
import string
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

from .geometry import EARTH_RADIUS_M, GeoPoint
from .objects import Dataset, GeoObject
from .evaluation import GroundTruth

_DEG = math.pi / 180.0

MUTATION_KINDS = ("exact", "case_punct", "token_reorder", "abbreviation", "typo")
FRESH_LABEL = "fresh"

DEFAULT_CENTER = (-114.07, 51.05)
DEFAULT_MUTATION_MIX = {kind: 0.2 for kind in MUTATION_KINDS}


def load_wordlist() -> list[str]:
    """The shipped, versioned name vocabulary."""
    text = resources.files("geoconflict.data").joinpath("wordlist.txt").read_text("utf-8")
    words = []
    seen = set()
    for line in text.splitlines():
        word = line.split("#", 1)[0].strip().lower()
        if word and word not in seen:
            seen.add(word)
            words.append(word)
    return words


@dataclass(frozen=True)
class SyntheticSpec:
    """Parameters of one generated benchmark scene."""

    n_existing: int
    n_new: int
    n_injected_conflicts: int
    bbox: Optional[tuple[float, float, float, float]] = None  # min_lon, min_lat, max_lon, max_lat
    density_per_km2: Optional[float] = 70.0
    mutation_mix: dict[str, float] = field(default_factory=lambda: dict(DEFAULT_MUTATION_MIX))
    jitter_max_m: float = 50.0
    seed: int = 0
    center: tuple[float, float] = DEFAULT_CENTER

    def __post_init__(self) -> None:
        if self.n_existing <= 0 or self.n_new < 0:
            raise ValueError("need n_existing > 0 and n_new >= 0")
        if not 0 <= self.n_injected_conflicts <= self.n_new:
            raise ValueError("n_injected_conflicts must be within [0, n_new]")
        if self.n_injected_conflicts > self.n_existing:
            raise ValueError("cannot inject more conflicts than existing objects")
        if self.jitter_max_m < 0:
            raise ValueError("jitter_max_m must be >= 0")
        unknown = set(self.mutation_mix) - set(MUTATION_KINDS)
        if unknown:
            raise ValueError(f"unknown mutation kinds: {sorted(unknown)}")
        if any(p < 0 for p in self.mutation_mix.values()):
            raise ValueError("mutation proportions must be >= 0")
        if self.n_injected_conflicts and abs(sum(self.mutation_mix.values()) - 1.0) > 1e-9:
            raise ValueError("mutation proportions must sum to 1")
        if self.bbox is None and not self.density_per_km2:
            raise ValueError("either bbox or density_per_km2 is required")
        if self.bbox is not None:
            min_lon, min_lat, max_lon, max_lat = self.bbox
            if not (min_lon < max_lon and min_lat < max_lat):
                raise ValueError("bbox must have positive extent")
            if not (-85.0 <= min_lat and max_lat <= 85.0):
                raise ValueError("bbox latitudes must stay within [-85, 85]")

    def resolved_bbox(self) -> tuple[float, float, float, float]:
        """The configured bbox, or a square around the center sized so the
        existing objects hit the density target."""
        if self.bbox is not None:
            return self.bbox
        area_km2 = self.n_existing / float(self.density_per_km2)
        side_m = math.sqrt(area_km2) * 1000.0
        lon0, lat0 = self.center
        half_lat = side_m / 2.0 / (EARTH_RADIUS_M * _DEG)
        half_lon = half_lat / math.cos(lat0 * _DEG)
        return (lon0 - half_lon, lat0 - half_lat, lon0 + half_lon, lat0 + half_lat)


def _apportion(mix: dict[str, float], n: int) -> dict[str, int]:
    # Largest-remainder apportionment in fixed kind order; the epsilon
    # absorbs float slop like 0.3 * 10 == 2.999...96.
    counts = {}
    remainders = []
    assigned = 0
    for order, kind in enumerate(MUTATION_KINDS):
        share = mix.get(kind, 0.0) * n
        whole = int(share + 1e-9)
        counts[kind] = whole
        assigned += whole
        remainders.append((-(share - whole), order, kind))
    remainders.sort()
    for _, _, kind in remainders[: n - assigned]:
        counts[kind] += 1
    return counts


class _NameFactory:
    def __init__(self, rng: random.Random, words: list[str]):
        self._rng = rng
        self._words = words
        self._used: set[str] = set()

    def fresh_name(self) -> str:
        for _ in range(1000):
            first, second = self._rng.sample(self._words, 2)
            name = f"{first.capitalize()} {second.capitalize()}"
            if name not in self._used:
                self._used.add(name)
                return name
        raise ValueError("wordlist too small for the requested object count")


def _jitter(rng: random.Random, p: GeoPoint, max_m: float) -> GeoPoint:
    if max_m <= 0:
        return p
    dist = rng.uniform(0.0, max_m)
    bearing = rng.uniform(0.0, 2.0 * math.pi)
    dlat = dist * math.cos(bearing) / (EARTH_RADIUS_M * _DEG)
    dlon = dist * math.sin(bearing) / (EARTH_RADIUS_M * _DEG * math.cos(p.lat * _DEG))
    return GeoPoint(p.lon + dlon, p.lat + dlat)


def _mutate_case_punct(rng: random.Random, name: str) -> str:
    tokens = name.split()
    styles = ["upper", "lower", "ampersand", "hyphen"]
    style = styles[rng.randrange(len(styles))]
    if style == "upper":
        return name.upper()
    if style == "lower":
        return name.lower()
    if style == "ampersand":
        return " & ".join(tokens)
    return " - ".join(tokens)


def _mutate_reorder(rng: random.Random, name: str) -> str:
    tokens = name.split()
    if len(tokens) < 2:
        return name
    return " ".join(reversed(tokens))


def _mutate_abbreviation(rng: random.Random, name: str) -> str:
    tokens = name.split()
    i = rng.randrange(len(tokens))
    tokens[i] = tokens[i][0] + "."
    return " ".join(tokens)


def _mutate_typo(rng: random.Random, name: str) -> str:
    tokens = name.split()
    i = rng.randrange(len(tokens))
    original = tokens[i]
    token = original
    while token == original:  # a substitution can pick the same letter
        token = original
        for _ in range(rng.randint(1, 2)):
            op = rng.randrange(3)
            pos = rng.randrange(len(token))
            letter = string.ascii_lowercase[rng.randrange(26)]
            if op == 0:  # substitute
                token = token[:pos] + letter + token[pos + 1 :]
            elif op == 1 and len(token) > 2:  # delete
                token = token[:pos] + token[pos + 1 :]
            else:  # insert
                token = token[:pos] + letter + token[pos:]
    tokens[i] = token
    return " ".join(tokens)


_MUTATORS = {
    "exact": lambda rng, name: name,
    "case_punct": _mutate_case_punct,
    "token_reorder": _mutate_reorder,
    "abbreviation": _mutate_abbreviation,
    "typo": _mutate_typo,
}


def generate_synthetic(spec: SyntheticSpec) -> tuple[Dataset, Dataset, GroundTruth]:
    """Build (existing dataset, new dataset, ground truth) for a spec."""
    rng = random.Random(spec.seed)
    words = load_wordlist()
    names = _NameFactory(rng, words)
    min_lon, min_lat, max_lon, max_lat = spec.resolved_bbox()

    def random_point() -> GeoPoint:
        return GeoPoint(rng.uniform(min_lon, max_lon), rng.uniform(min_lat, max_lat))

    existing = [
        GeoObject(f"ex-{i:05d}", random_point(), {"name": names.fresh_name()}, "existing")
        for i in range(spec.n_existing)
    ]

    new_objects: list[GeoObject] = []
    truth_pairs: list[tuple[str, str]] = []
    counts = _apportion(spec.mutation_mix, spec.n_injected_conflicts)
    kinds = [kind for kind in MUTATION_KINDS for _ in range(counts[kind])]
    rng.shuffle(kinds)
    sources = rng.sample(existing, spec.n_injected_conflicts)
    for i, (kind, source) in enumerate(zip(kinds, sources)):
        new_id = f"new-{i:05d}"
        name = _MUTATORS[kind](rng, source.fields["name"])
        point = _jitter(rng, source.geometry, spec.jitter_max_m)
        new_objects.append(GeoObject(new_id, point, {"name": name, "mutation": kind}, "new"))
        truth_pairs.append((new_id, source.id))
    for i in range(spec.n_injected_conflicts, spec.n_new):
        new_objects.append(
            GeoObject(
                f"new-{i:05d}",
                random_point(),
                {"name": names.fresh_name(), "mutation": FRESH_LABEL},
                "new",
            )
        )

    return (
        Dataset(existing, "existing"),
        Dataset(new_objects, "new"),
        GroundTruth(truth_pairs),
    )
