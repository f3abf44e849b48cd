"""Command line interface: subcommands, exit codes, outputs."""

import numpy as np

from gstk.cli import main
from gstk.sensing import FingertipSurface, surface_normal, synthesize_wrench

GRASP_TEXT = (
    "contact.1.angle_deg = 90\n"
    "contact.2.angle_deg = 210\n"
    "contact.3.angle_deg = 330\n"
)


def write_log(path):
    surface = FingertipSurface.sphere(0.010)
    rng = np.random.default_rng(5)
    lines = []
    for i in range(3):
        c = surface.point_toward(rng.normal(size=3))
        n = surface_normal(surface, c)
        w = synthesize_wrench(surface, c, -1.5 * n, 0.0)
        lines.append(",".join(repr(float(v)) for v in [0.1 * i, *w.f, *w.m]))
    path.write_text("\n".join(lines) + "\n")
    return path


def test_usage_errors_exit_one(capsys):
    assert main([]) == 1
    assert main(["bogus"]) == 1
    assert main(["stability"]) == 1  # missing positional
    err = capsys.readouterr().err
    assert "usage" in err


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    assert "coeffs" in capsys.readouterr().out


def test_coeffs_and_sweeps_write_files(tmp_path, capsys):
    assert main(["coeffs", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "coeffs.csv").exists()
    assert main(["case-a", "--out", str(tmp_path), "--svg"]) == 0
    assert (tmp_path / "case_a.csv").exists()
    assert (tmp_path / "case_a.svg").exists()
    out = capsys.readouterr().out
    assert "case_a.csv" in out


def test_case_b_seed_is_reproducible(tmp_path, capsys):
    d1, d2, d3 = (tmp_path / n for n in ("a", "b", "c"))
    assert main(["case-b", "--out", str(d1), "--seed", "3"]) == 0
    assert main(["case-b", "--out", str(d2), "--seed", "3"]) == 0
    assert main(["case-b", "--out", str(d3), "--seed", "4"]) == 0
    b1 = (d1 / "case_b.csv").read_bytes()
    assert b1 == (d2 / "case_b.csv").read_bytes()
    assert b1 != (d3 / "case_b.csv").read_bytes()
    assert "spearman" in capsys.readouterr().out


def test_stability_exit_codes(tmp_path, capsys):
    grasp = tmp_path / "g.cfg"
    grasp.write_text(GRASP_TEXT)
    assert main(["stability", str(grasp)]) == 0
    assert "stable" in capsys.readouterr().out
    grasp.write_text("grasp.spring_variant = single_tangential\n" + GRASP_TEXT)
    assert main(["stability", str(grasp)]) == 2
    assert "marginal" in capsys.readouterr().out


def test_stability_rejects_bad_files(tmp_path, capsys):
    assert main(["stability", str(tmp_path / "missing.cfg")]) == 1
    grasp = tmp_path / "g.cfg"
    grasp.write_text("contact.1.angle_deg = ninety\n")
    assert main(["stability", str(grasp)]) == 1
    err = capsys.readouterr().err
    assert "error" in err


def test_sense_writes_contacts(tmp_path, capsys):
    log = write_log(tmp_path / "w.log")
    assert main(["sense", str(log), "--out", str(tmp_path)]) == 0
    text = (tmp_path / "contacts.csv").read_text()
    assert text.count("ok") == 3
    capsys.readouterr()


def test_config_file_flows_through(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("sweep.steps = 3\noutput_dir = " + str(tmp_path) + "\n")
    assert main(["coeffs", "--config", str(cfg)]) == 0
    lines = (tmp_path / "coeffs.csv").read_text().splitlines()
    assert len(lines) == 1 + 3 * 5 * 3  # header + materials x radii x steps
    assert main(["coeffs", "--config", str(tmp_path / "nope.cfg")]) == 1


def test_bad_material_is_reported_not_raised(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("object.material = adamantium\n")
    assert main(["case-a", "--config", str(cfg), "--out", str(tmp_path)]) == 1
    assert "adamantium" in capsys.readouterr().err
