"""Precision/recall arithmetic, tuning sweep, and method comparison."""

import pytest

from geoconflict.engine import DetectorConfig, SystemIndex, detect
from geoconflict.evaluation import (
    EvalCounts,
    GroundTruth,
    compare_methods,
    load_ground_truth,
    metrics,
    save_ground_truth,
    score_run,
    truncate_pct,
    tune_radius,
)
from geoconflict.geometry import GeoPoint
from geoconflict.objects import GeoObject

# (total, correct, wrong, missed) -> (precision, recall), as published for
# the radius sweep and the four experiment comparisons.
PUBLISHED_ROWS = [
    ((254, 242, 0, 12), (100.00, 95.27)),
    ((254, 243, 0, 11), (100.00, 95.66)),
    ((254, 245, 0, 9), (100.00, 96.45)),
    ((254, 243, 2, 11), (99.18, 95.66)),
    ((254, 184, 0, 70), (100.00, 72.44)),
    ((124, 119, 3, 5), (97.54, 95.96)),
    ((124, 111, 0, 13), (100.00, 89.51)),
    ((340, 339, 5, 1), (98.54, 99.70)),
    ((340, 326, 0, 14), (100.00, 95.88)),
]


class TestMetrics:
    @pytest.mark.parametrize("counts,expected", PUBLISHED_ROWS)
    def test_published_rows(self, counts, expected):
        total, correct, wrong, missed = counts
        row = metrics(EvalCounts(total, correct, wrong, missed))
        assert abs(row.precision_pct - expected[0]) <= 0.01
        assert abs(row.recall_pct - expected[1]) <= 0.01

    def test_truncation_not_rounding(self):
        assert truncate_pct(119, 124) == 95.96  # 95.967...
        assert truncate_pct(339, 344) == 98.54  # 98.546...
        assert truncate_pct(242, 254) == 95.27  # 95.275...

    def test_precision_undefined_when_nothing_reported(self):
        row = metrics(EvalCounts(10, 0, 0, 10))
        assert row.precision_pct is None
        assert row.recall_pct == 0.0

    def test_no_truth_is_error(self):
        with pytest.raises(ValueError):
            metrics(EvalCounts(0, 0, 0, 0))

    def test_counts_invariant(self):
        with pytest.raises(ValueError):
            EvalCounts(10, 5, 0, 4)  # 5 + 4 != 10
        with pytest.raises(ValueError):
            EvalCounts(10, -1, 0, 11)


class TestGroundTruth:
    def test_duplicate_new_id_rejected(self):
        with pytest.raises(ValueError):
            GroundTruth([("n1", "e1"), ("n1", "e2")])

    def test_round_trip(self, tmp_path):
        truth = GroundTruth([("n1", "e9"), ("n2", "e3")])
        path = tmp_path / "truth.csv"
        save_ground_truth(truth, path)
        assert load_ground_truth(path).pairs == truth.pairs

    def test_bad_header_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b\n1,2\n", "utf-8")
        with pytest.raises(ValueError):
            load_ground_truth(path)


def report_stub(new_id, matched):
    from geoconflict.engine import Category, ConflictReport
    from geoconflict.scoring import ScoreBreakdown

    if matched is None:
        return ConflictReport(new_id, None, None, Category.NON_CONFLICTING, 0)
    return ConflictReport(new_id, matched, ScoreBreakdown(1, 1, 2, 0), Category.SIGNIFICANT_DIFF, 1)


class TestScoreRun:
    def test_perfect_run(self):
        truth = GroundTruth([("n1", "e1"), ("n2", "e2")])
        reports = [report_stub("n1", "e1"), report_stub("n2", "e2")]
        counts = score_run(reports, truth)
        assert counts == EvalCounts(2, 2, 0, 0)

    def test_wrong_and_missed(self):
        truth = GroundTruth([("n1", "e1"), ("n2", "e2"), ("n3", "e3")])
        reports = [
            report_stub("n1", "e1"),   # correct
            report_stub("n2", "e9"),   # wrong, and truth pair n2 missed
            report_stub("n3", None),   # missed
            report_stub("n4", "e4"),   # wrong (not in truth at all)
        ]
        counts = score_run(reports, truth)
        assert counts == EvalCounts(3, 1, 2, 2)
        # every conflict report lands in exactly one bucket
        assert counts.correctly_detected + counts.wrongly_detected == 3

    def test_duplicate_new_id_rejected(self):
        truth = GroundTruth([("n1", "e1")])
        with pytest.raises(ValueError):
            score_run([report_stub("n1", "e1"), report_stub("n1", "e1")], truth)


M_PER_DEG = 111194.92664455873


def poi(oid, name, dx_m=0.0, dy_m=0.0, **extra):
    import math

    lat = 51.05 + dy_m / M_PER_DEG
    lon = -114.06 + dx_m / (M_PER_DEG * math.cos(math.radians(51.05)))
    return GeoObject(oid, GeoPoint(lon, lat), {"name": name, **extra})


class TestTuneRadius:
    def test_single_radius_consistent_with_direct_run(self):
        existing = [poi("e1", "Golden Dragon"), poi("e2", "Other Place", dx_m=500.0)]
        new = [poi("n1", "Golden Dragon", dx_m=20.0)]
        truth = GroundTruth([("n1", "e1")])
        cfg = DetectorConfig()
        rows = tune_radius(existing, new, truth, [200.0], cfg)
        assert len(rows) == 1
        direct = score_run(detect(new, SystemIndex(existing, cfg), cfg), truth)
        assert rows[0].counts == direct
        assert rows[0].metrics == metrics(direct)

    def test_paper_sweep_shape(self):
        existing = [poi("e1", "Golden Dragon")]
        new = [poi("n1", "Golden Dragon", dx_m=120.0)]
        truth = GroundTruth([("n1", "e1")])
        rows = tune_radius(existing, new, truth, [100.0, 150.0, 200.0, 250.0], DetectorConfig())
        assert [r.radius_m for r in rows] == [100.0, 150.0, 200.0, 250.0]
        # 120 m offset: missed at 100 m, found from 150 m on
        assert rows[0].counts.missed == 1
        assert all(r.counts.correctly_detected == 1 for r in rows[1:])

    def test_radii_validation(self):
        truth = GroundTruth([("n1", "e1")])
        with pytest.raises(ValueError):
            tune_radius([], [], truth, [], DetectorConfig())
        with pytest.raises(ValueError):
            tune_radius([], [], truth, [200.0, 100.0], DetectorConfig())


class TestSweepAgainstBruteForce:
    def test_recall_non_decreasing_and_rows_match_oracle(self):
        # Injected jitter (80 m) is inside every swept radius, so conflicts
        # missed for lack of radius can only decrease from 100 to 200 m.
        from dataclasses import replace

        from oracles import brute_force_detect

        from geoconflict.synthetic import SyntheticSpec, generate_synthetic

        spec = SyntheticSpec(
            n_existing=300, n_new=60, n_injected_conflicts=30,
            density_per_km2=70.0, jitter_max_m=80.0, seed=21,
        )
        existing, new, truth = generate_synthetic(spec)
        cfg = DetectorConfig()
        radii = [100.0, 150.0, 200.0, 250.0]
        rows = tune_radius(existing.objects, new.objects, truth, radii, cfg)

        recalls = [r.metrics.recall_pct for r in rows[:3]]
        assert recalls == sorted(recalls)

        for row, radius in zip(rows, radii):
            run_cfg = replace(cfg, epsilon_m=radius)
            expected = brute_force_detect(new.objects, existing.objects, run_cfg)
            pairs = {(nid, match) for nid, (match, _, _, _) in expected.items() if match}
            correct = sum(1 for p in pairs if p in truth.pairs)
            assert row.counts.correctly_detected == correct
            assert row.counts.wrongly_detected == len(pairs) - correct


class TestCompareMethods:
    def test_exact_duplicates_everyone_wins(self):
        existing = [poi(f"e{i}", f"Unique Spot{i}", dx_m=400.0 * i) for i in range(4)]
        new = [poi(f"n{i}", f"Unique Spot{i}", dx_m=400.0 * i) for i in range(4)]
        truth = GroundTruth([(f"n{i}", f"e{i}") for i in range(4)])
        sdi, base = compare_methods(existing, new, truth, DetectorConfig())
        assert (sdi.metrics.precision_pct, sdi.metrics.recall_pct) == (100.0, 100.0)
        assert (base.metrics.precision_pct, base.metrics.recall_pct) == (100.0, 100.0)

    def test_token_reorder_sinks_baseline(self):
        existing = [poi(f"e{i}", f"Cafe Number{i}", dx_m=400.0 * i) for i in range(4)]
        new = [poi(f"n{i}", f"Number{i} Cafe", dx_m=400.0 * i + 5.0) for i in range(4)]
        truth = GroundTruth([(f"n{i}", f"e{i}") for i in range(4)])
        sdi, base = compare_methods(existing, new, truth, DetectorConfig())
        assert base.metrics.recall_pct == 0.0
        assert sdi.metrics.recall_pct > 0.0
        assert base.metrics.recall_pct < sdi.metrics.recall_pct
