"""Conflict detection for merging geospatial PoI datasets.

Ranks existing objects near each incoming object with per-field BM25 text
scores plus an inverse-distance boost, thresholds the best candidate, and
classifies the conflict. Ships an evaluation harness (precision/recall
against labeled truth, radius tuning, baseline comparison) and a synthetic
benchmark generator.
"""

from .geometry import (
    EARTH_RADIUS_M,
    GeoLine,
    GeoPoint,
    GeoPolygon,
    Geometry,
    centroid,
    chamfer_distance,
    geo_distance,
    hausdorff_distance,
    point_to_segment_distance,
    polis_distance,
    vertices,
)
from .objects import Dataset, GeoObject
from .grid import RadiusQuery, SpatialGrid, build_index, radius_query
from .textnorm import PipelineConfig, TermList, load_stopwords, normalize, tokenize
from .porter import porter_stem
from .scoring import (
    Bm25Params,
    FieldCorpusStats,
    ScoreBreakdown,
    bm25_score,
    combined_scores,
    containment_similar,
    dist_boost,
    idf,
    tf_norm,
)
from .engine import (
    Category,
    ConflictReport,
    DetectorConfig,
    SystemIndex,
    baseline_detect,
    build_system_index,
    check_internal_consistency,
    classify,
    detect,
    many_to_one_matches,
)
from .ingest import IngestError, SchemaMapping, load_csv, load_geojson
from .evaluation import (
    EvalCounts,
    GroundTruth,
    MethodResult,
    MetricRow,
    SweepRow,
    compare_methods,
    load_ground_truth,
    metrics,
    save_ground_truth,
    score_run,
    truncate_pct,
    tune_radius,
)
from .synthetic import SyntheticSpec, generate_synthetic, load_wordlist

__version__ = "0.1.0"
