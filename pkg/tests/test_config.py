"""Run-config parsing: defaults, path resolution, and error naming."""

import pytest

from geoconflict.config import ConfigError, load_run_config, load_synthetic_spec

FULL = """\
[run]
seed = 42
output_dir = "results"
workers = 2

[detector]
epsilon_m = 150.0
threshold = 1.5
fields = [["name", 1.0], ["street", 0.5]]
k1 = 1.4
b = 0.6
dedupe_query_terms = true

[pipeline]
stopwords_file = "stop.txt"
stem = false

[existing]
path = "data/existing.geojson"
id_field = "id"
source_label = "sys"

[existing.fields]
title = "name"
street = "street"

[new]
path = "data/new.csv"
lon_field = "x"
lat_field = "y"

[new.fields]
name = "name"
street = "street"

[tune]
radii = [50, 100]
truth = "labels.csv"

[output]
figures = false
"""


@pytest.fixture
def config_dir(tmp_path):
    (tmp_path / "stop.txt").write_text("the\nvon\n", "utf-8")
    (tmp_path / "run.toml").write_text(FULL, "utf-8")
    return tmp_path


class TestRunConfig:
    def test_full_parse(self, config_dir):
        cfg = load_run_config(config_dir / "run.toml")
        assert cfg.seed == 42
        assert cfg.output_dir == config_dir / "results"
        det = cfg.detector
        assert det.epsilon_m == 150.0
        assert det.threshold == 1.5
        assert det.fields == (("name", 1.0), ("street", 0.5))
        assert det.params.k1 == 1.4 and det.params.b == 0.6
        assert det.dedupe_query_terms is True
        assert det.workers == 2
        assert det.pipeline.stem_enabled is False
        assert "von" in det.pipeline.stopwords
        assert cfg.existing.path == config_dir / "data/existing.geojson"
        assert cfg.existing.format == "geojson"
        assert cfg.existing.mapping.similarity_fields == (("title", "name"), ("street", "street"))
        assert cfg.new.format == "csv"
        assert cfg.new.mapping.lon_field == "x"
        assert cfg.tune_radii == (50.0, 100.0)
        assert cfg.tune_truth == config_dir / "labels.csv"
        assert cfg.eval_truth == config_dir / "labels.csv"  # falls back to tune truth
        assert cfg.figures is False

    def test_defaults(self, tmp_path):
        (tmp_path / "min.toml").write_text(
            '[existing]\npath = "a.geojson"\n\n[new]\npath = "b.csv"\n', "utf-8"
        )
        cfg = load_run_config(tmp_path / "min.toml")
        assert cfg.detector.epsilon_m == 200.0
        assert cfg.detector.threshold == 0.0
        assert cfg.detector.fields == (("name", 1.0),)
        assert cfg.tune_radii == (100.0, 150.0, 200.0, 250.0)
        assert cfg.seed == 0
        assert cfg.figures is True

    def test_missing_section_named(self, tmp_path):
        (tmp_path / "bad.toml").write_text('[existing]\npath = "a.geojson"\n', "utf-8")
        with pytest.raises(ConfigError, match=r"\[new\]"):
            load_run_config(tmp_path / "bad.toml")

    def test_wrong_type_names_key(self, tmp_path):
        (tmp_path / "bad.toml").write_text(
            '[run]\nseed = "nope"\n\n[existing]\npath = "a.geojson"\n\n[new]\npath = "b.csv"\n',
            "utf-8",
        )
        with pytest.raises(ConfigError, match="run.seed"):
            load_run_config(tmp_path / "bad.toml")

    def test_unknown_suffix_needs_explicit_format(self, tmp_path):
        (tmp_path / "bad.toml").write_text(
            '[existing]\npath = "a.dat"\n\n[new]\npath = "b.csv"\n', "utf-8"
        )
        with pytest.raises(ConfigError, match="format"):
            load_run_config(tmp_path / "bad.toml")

    def test_fields_as_table(self, tmp_path):
        (tmp_path / "t.toml").write_text(
            '[detector]\nfields = {name = 2.0}\n\n[existing]\npath = "a.geojson"\n\n[new]\npath = "b.csv"\n',
            "utf-8",
        )
        cfg = load_run_config(tmp_path / "t.toml")
        assert cfg.detector.fields == (("name", 2.0),)

    def test_invalid_toml(self, tmp_path):
        (tmp_path / "x.toml").write_text("not toml [", "utf-8")
        with pytest.raises(ConfigError, match="TOML"):
            load_run_config(tmp_path / "x.toml")


class TestSyntheticSpecFile:
    def test_minimal(self, tmp_path):
        (tmp_path / "s.toml").write_text(
            "[synthetic]\nn_existing = 10\nn_new = 5\nn_injected_conflicts = 2\n", "utf-8"
        )
        spec, out_dir, fmt_existing, fmt_new = load_synthetic_spec(tmp_path / "s.toml")
        assert spec.n_existing == 10
        assert out_dir == tmp_path / "bench"
        assert (fmt_existing, fmt_new) == ("geojson", "csv")

    def test_bbox_shape_checked(self, tmp_path):
        (tmp_path / "s.toml").write_text(
            "[synthetic]\nn_existing = 10\nn_new = 5\nn_injected_conflicts = 2\nbbox = [1, 2]\n",
            "utf-8",
        )
        with pytest.raises(ConfigError, match="bbox"):
            load_synthetic_spec(tmp_path / "s.toml")

    def test_infeasible_spec_blamed_on_section(self, tmp_path):
        (tmp_path / "s.toml").write_text(
            "[synthetic]\nn_existing = 10\nn_new = 5\nn_injected_conflicts = 7\n", "utf-8"
        )
        with pytest.raises(ConfigError, match="synthetic"):
            load_synthetic_spec(tmp_path / "s.toml")
