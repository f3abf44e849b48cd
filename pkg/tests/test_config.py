"""Run configuration and grasp description parsing."""

import math

import pytest

from gstk.config import (
    ConfigError,
    RunConfig,
    load_grasp_file,
    load_run_config,
    parse_keyvalues,
)


def test_parse_keyvalues_basics():
    text = "a.b = 1\n# comment\n\n c = two # trailing\n"
    entries = parse_keyvalues(text)
    assert entries["a.b"] == ("1", 1)
    assert entries["c"] == ("two", 4)


def test_parse_keyvalues_rejects_bad_lines():
    with pytest.raises(ConfigError, match=":2:"):
        parse_keyvalues("a = 1\nnot a pair\n")
    with pytest.raises(ConfigError) as exc:
        parse_keyvalues("a = 1\na = 2\n")
    assert "1" in str(exc.value) and "2" in str(exc.value)  # cites both lines


def test_defaults_are_complete():
    cfg = RunConfig()
    assert cfg.fingertip_material == "rubber"
    assert cfg.object_material == "aluminium"
    assert cfg.spring_variant == "dual_tangential"
    assert cfg.fingertip().nu == 0.5
    assert cfg.contact_pair().relative_radius > 0.0
    assert cfg.fingertip_surface().R == 0.010


def test_load_run_config_overrides(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text(
        "object.material = polyethylene\n"
        "object.signed_radius_mm = -60\n"
        "grasp.force_n = 2.5\n"
        "sweep.steps = 7\n"
        "seed = 99\n"
    )
    cfg = load_run_config(path)
    assert cfg.object_material == "polyethylene"
    assert cfg.object_signed_radius_mm == -60.0
    assert cfg.force_n == 2.5
    assert cfg.sweep_steps == 7
    assert cfg.seed == 99
    assert cfg.fingertip_radius_mm == 10.0  # untouched default


def test_load_run_config_rejects_unknown_and_invalid(tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("grasp.spring = single\n")
    with pytest.raises(ConfigError, match="unknown key"):
        load_run_config(bad)
    bad.write_text("grasp.spring_variant = both\n")
    with pytest.raises(ConfigError):
        load_run_config(bad)
    bad.write_text("sweep.steps = 0\n")
    with pytest.raises(ConfigError):
        load_run_config(bad)
    bad.write_text("sweep.force_min_n = 2\nsweep.force_max_n = 1\n")
    with pytest.raises(ConfigError):
        load_run_config(bad)
    bad.write_text("object.material = adamantium\n")
    with pytest.raises(ConfigError):
        load_run_config(bad)
    bad.write_text("grasp.force_n = nan\n")
    with pytest.raises(ConfigError):
        load_run_config(bad)


def test_signed_radius_accepts_infinity(tmp_path):
    path = tmp_path / "flat.cfg"
    path.write_text("object.signed_radius_mm = inf\n")
    cfg = load_run_config(path)
    assert math.isinf(cfg.object_signed_radius_mm)
    assert cfg.contact_pair().relative_radius == pytest.approx(0.010)


def test_load_grasp_file(tmp_path):
    path = tmp_path / "grasp.cfg"
    path.write_text(
        "grasp.force_n = 4.0\n"
        "contact.1.angle_deg = 90\n"
        "contact.2.angle_deg = 210\n"
        "contact.2.force_n = 6.0\n"
        "contact.3.angle_deg = 330\n"
    )
    grasp, cfg = load_grasp_file(path)
    assert len(grasp.contacts) == 3
    assert [c.P for c in grasp.contacts] == [4.0, 6.0, 4.0]
    assert cfg.force_n == 4.0


def test_load_grasp_file_errors(tmp_path):
    path = tmp_path / "g.cfg"
    path.write_text("grasp.force_n = 4.0\n")
    with pytest.raises(ConfigError, match="no contacts"):
        load_grasp_file(path)
    path.write_text("contact.0.angle_deg = 10\n")
    with pytest.raises(ConfigError, match="start at 1"):
        load_grasp_file(path)
    path.write_text("contact.1.twist_deg = 10\n")
    with pytest.raises(ConfigError, match="unknown contact key"):
        load_grasp_file(path)
    path.write_text("contact.1.force_n = 1.0\n")
    with pytest.raises(ConfigError, match="angle_deg"):
        load_grasp_file(path)


def test_grasp_file_inherits_base_config(tmp_path):
    base = RunConfig()
    path = tmp_path / "g.cfg"
    path.write_text(
        "object.signed_radius_mm = -40\n"
        "contact.1.angle_deg = 90\n"
        "contact.2.angle_deg = 210\n"
        "contact.3.angle_deg = 330\n"
    )
    grasp, cfg = load_grasp_file(path, base)
    assert cfg.object_signed_radius_mm == -40.0
    assert cfg.seed == base.seed
    assert all(c.pair.r2 == -0.040 for c in grasp.contacts)
