import pytest

from ptsoliton import ConfigError, RunConfig


def test_defaults_resolve_nothing_but_are_complete():
    cfg = RunConfig()
    d = cfg.to_dict()
    assert d["format_version"] == 1
    assert set(d["tolerances"]) == {"band_tol", "tail_ratio", "boundary_mass",
                                    "instability_factor", "zero_factor",
                                    "pair_factor"}
    assert d["grid"] == {"n": 512, "half_width": 16.0}


def test_yaml_round_trip(tmp_path):
    cfg = RunConfig()
    cfg.data["model"].update(a=0.01, b=0.3, v1=-4.0, g2=-4.0, kappa=3.0,
                             phi0=1.0)
    cfg.data["seed"] = 99
    path = tmp_path / "run.yaml"
    cfg.save(path)
    loaded = RunConfig.load(path)
    assert loaded.to_dict() == cfg.to_dict()


def test_unknown_top_level_key_is_named_with_line(tmp_path):
    path = tmp_path / "run.yaml"
    path.write_text("family: class1\ntypo_key: 3\n")
    with pytest.raises(ConfigError, match=r"typo_key.*line 2"):
        RunConfig.load(path)


def test_unknown_nested_key_is_named_with_line(tmp_path):
    path = tmp_path / "run.yaml"
    path.write_text("grid:\n  n: 256\n  half_widthh: 12\n")
    with pytest.raises(ConfigError, match=r"grid\.half_widthh.*line 3"):
        RunConfig.load(path)


def test_overrides_parse_yaml_scalars():
    cfg = RunConfig()
    cfg.apply_overrides(["model.a=0.25", "grid.n=128", "output.plots=false",
                         "family=class2", "model.g1=null"])
    assert cfg.data["model"]["a"] == 0.25
    assert cfg.data["grid"]["n"] == 128
    assert cfg.data["output"]["plots"] is False
    assert cfg.family == "class2"
    assert cfg.data["model"]["g1"] is None


def test_override_rejects_unknown_path():
    with pytest.raises(ConfigError, match="sweeep.start"):
        RunConfig().apply_overrides(["sweeep.start=1"])
    with pytest.raises(ConfigError, match="not of the form"):
        RunConfig().apply_overrides(["model.a"])


def test_resolution_uses_model_block():
    cfg = RunConfig()
    cfg.data["model"].update(a=0.01, b=0.3, v1=-4.0, g2=-4.0, kappa=3.0,
                             phi0=1.0)
    spec, sol = cfg.resolve()
    assert spec.g1 == pytest.approx(2.0101, abs=1e-12)
    assert sol.mu == 0.3


def test_grid_and_tolerance_accessors():
    cfg = RunConfig()
    cfg.apply_overrides(["grid.n=256", "grid.half_width=8",
                         "tolerances.band_tol=0.02"])
    g = cfg.grid()
    assert (g.n, g.half_width) == (256, 8.0)
    assert cfg.tolerances().band_tol == 0.02
