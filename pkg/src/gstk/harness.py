"""Reproducible study runs: coefficient tables, force sweeps, configuration
comparisons, stability checks, and wrench-log contact sensing.

Every run writes CSV with full-precision (shortest round-trip) floats and a
fixed row order, so identical configuration and seed reproduce the files
byte for byte. Randomness comes from numpy's PCG64 generator; configuration
studies spawn one independent child stream per group from the master seed.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.stats import spearmanr

from .config import ConfigError, RunConfig, load_grasp_file
from .grasp import (
    GraspConfiguration,
    StabilityReport,
    assemble,
    circular_separation,
    classify,
    min_eigenvalue,
    three_finger_sphere_config,
)
from .hertz import MATERIALS, ContactPair, stiffness_coefficients
from .sensing import (
    InadmissibleContactError,
    NoConvergenceError,
    contact_frame,
    solve_contact,
)
from .screw import Wrench
from .svg import Panel, Series, write_chart

__all__ = [
    "CASE_A_CURVATURES",
    "CASE_B_GROUPS",
    "COEFF_RADII_MM",
    "GroupSummary",
    "QualityIndices",
    "grasp_area_index",
    "run_case_a",
    "run_case_b",
    "run_coeff_sweep",
    "run_sense",
    "run_stability",
    "sample_angle_triple",
]

# object radii [mm] for the coefficient table; negative = concave, inf = flat
COEFF_RADII_MM = (-40.0, -20.0, 20.0, 40.0, math.inf)

# local curvature representatives for the force sweep, at fixed contact distance
CASE_A_CURVATURES = (("convex", 40.0), ("flat", math.inf), ("concave", -40.0))
CASE_A_FORCES = np.linspace(0.0, 10.0, 101)

CASE_B_GROUPS = 6
CASE_B_CONFIGS = 31
SYMMETRIC_ANGLES_DEG = (90.0, 210.0, 330.0)
MIN_ANGLE_SEPARATION = math.radians(10.0)
MAX_REJECTIONS = 1000


def _fmt(x: float) -> str:
    return repr(float(x))


def _write_csv(path: Path, header: list[str], rows: list[list[str]]) -> Path:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    return path


@dataclass(frozen=True)
class QualityIndices:
    """The two quality measures of one grasp configuration."""

    area: float
    lambda_min_raw: float
    lambda_min_normalized: float


@dataclass(frozen=True)
class GroupSummary:
    """Per-group outcome of a configuration study."""

    group: int
    spearman: float
    symmetric_argmax_area: bool
    symmetric_argmax_lambda: bool


def grasp_area_index(config: GraspConfiguration) -> float:
    """Area of the triangle spanned by the three contact points [m^2]."""
    if len(config.contacts) != 3:
        raise ValueError(
            f"the area index needs exactly 3 contacts, got {len(config.contacts)}"
        )
    p1, p2, p3 = (c.position for c in config.contacts)
    return 0.5 * float(np.linalg.norm(np.cross(p2 - p1, p3 - p1)))


def sample_angle_triple(
    rng: np.random.Generator,
    min_separation: float = MIN_ANGLE_SEPARATION,
    max_rejections: int = MAX_REJECTIONS,
) -> np.ndarray:
    """Draw one angle triple, uniform on the circle, with every pair at
    least ``min_separation`` apart (rejection sampling)."""
    for _ in range(max_rejections + 1):
        t = rng.uniform(0.0, 2.0 * math.pi, 3)
        ok = all(
            circular_separation(t[i], t[j]) >= min_separation
            for i in range(3)
            for j in range(i + 1, 3)
        )
        if ok:
            return t
    raise RuntimeError(
        f"angle sampling exhausted after {max_rejections} rejections "
        f"(min separation {math.degrees(min_separation):g} deg)"
    )


# ---------------------------------------------------------------------------
# coefficient table


def run_coeff_sweep(cfg: RunConfig, out_dir: str | Path, svg: bool = False) -> Path:
    """Tabulate k_n, k_t, k_tau over material, object radius, and load."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    forces = np.linspace(cfg.sweep_force_min_n, cfg.sweep_force_max_n, cfg.sweep_steps)
    fingertip = cfg.fingertip()
    r1 = cfg.fingertip_radius_mm * 1e-3

    rows = []
    series: dict[str, tuple[list, list, list]] = {}
    for name, material in MATERIALS.items():
        for radius_mm in COEFF_RADII_MM:
            pair = ContactPair(r1, radius_mm * 1e-3, fingertip, material)
            kn_list, kt_list, ktau_list = [], [], []
            for P in forces:
                k_n, k_t, k_tau = stiffness_coefficients(pair, float(P))
                rows.append(
                    [name, _fmt(radius_mm), _fmt(P), _fmt(k_n), _fmt(k_t), _fmt(k_tau)]
                )
                kn_list.append(k_n)
                kt_list.append(k_t)
                ktau_list.append(k_tau)
            series[f"{name} r={radius_mm:g}mm"] = (kn_list, kt_list, ktau_list)

    path = _write_csv(
        out_dir / "coeffs.csv",
        ["object_material", "object_radius_mm", "P_N", "k_n_N_per_m",
         "k_t_N_per_m", "k_tau_Nm_per_rad"],
        rows,
    )
    if svg:
        xs = [float(P) for P in forces]
        panels = [
            Panel(
                title,
                "P [N]",
                unit,
                [Series(label, xs, values[idx]) for label, values in series.items()],
                log_y=True,
            )
            for idx, (title, unit) in enumerate(
                [
                    ("normal stiffness k_n", "k_n [N/m]"),
                    ("tangential stiffness k_t", "k_t [N/m]"),
                    ("torsional stiffness k_tau", "k_tau [N m/rad]"),
                ]
            )
        ]
        write_chart(out_dir / "coeffs.svg", panels)
    return path


# ---------------------------------------------------------------------------
# force sweep over local curvatures


def run_case_a(cfg: RunConfig, out_dir: str | Path, svg: bool = False) -> Path:
    """Sweep the symmetric three-finger grasp over load for three local
    curvatures (convex / flat / concave) at fixed contact distance."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    materials = (cfg.fingertip(), cfg.object())
    distance = cfg.contact_distance_mm * 1e-3
    angles = [math.radians(a) for a in SYMMETRIC_ANGLES_DEG]
    r1 = cfg.fingertip_radius_mm * 1e-3

    rows = []
    chart: list[Series] = []
    for label, radius_mm in CASE_A_CURVATURES:
        lams = []
        for P in CASE_A_FORCES:
            grasp = three_finger_sphere_config(
                radius_mm * 1e-3, distance, angles, float(P), materials,
                fingertip_radius=r1,
            )
            lam = min_eigenvalue(assemble(grasp, cfg.spring_variant))
            rows.append([label, _fmt(radius_mm), _fmt(P), _fmt(lam)])
            lams.append(lam)
        chart.append(Series(label, [float(P) for P in CASE_A_FORCES], lams))

    path = _write_csv(
        out_dir / "case_a.csv",
        ["curvature_label", "object_radius_mm", "P_N", "lambda_min"],
        rows,
    )
    if svg:
        write_chart(
            out_dir / "case_a.svg",
            [Panel("grasp stiffness floor vs load", "P [N]", "lambda_min", chart)],
        )
    return path


# ---------------------------------------------------------------------------
# randomized configuration study


def run_case_b(
    cfg: RunConfig, out_dir: str | Path, svg: bool = False
) -> tuple[Path, list[GroupSummary]]:
    """Compare the triangle-area index against lambda_min over random
    great-circle configurations, in seeded groups.

    Each group holds the symmetric grasp (config 1) plus 30 random triples
    with at least 10 degrees pairwise separation, drawn from an independent
    child stream of the master seed. lambda_min is normalized per group so
    config 1 matches its area index exactly.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    materials = (cfg.fingertip(), cfg.object())
    distance = cfg.contact_distance_mm * 1e-3
    r1 = cfg.fingertip_radius_mm * 1e-3
    r2 = cfg.object_signed_radius_mm * 1e-3
    P = cfg.force_n

    def evaluate(angles_rad) -> tuple[float, float]:
        grasp = three_finger_sphere_config(
            r2, distance, angles_rad, P, materials, fingertip_radius=r1
        )
        return grasp_area_index(grasp), min_eigenvalue(assemble(grasp, cfg.spring_variant))

    children = np.random.SeedSequence(cfg.seed).spawn(CASE_B_GROUPS)
    rows = []
    summaries = []
    panels = []
    for group in range(1, CASE_B_GROUPS + 1):
        rng = np.random.Generator(np.random.PCG64(children[group - 1]))
        triples_deg = [np.array(SYMMETRIC_ANGLES_DEG)]
        triples_deg += [
            np.degrees(sample_angle_triple(rng)) for _ in range(CASE_B_CONFIGS - 1)
        ]

        areas, lams = [], []
        for t in triples_deg:
            area, lam = evaluate(np.radians(t))
            areas.append(area)
            lams.append(lam)
        if not lams[0] > 0.0:
            raise ValueError(
                "the symmetric reference grasp has no positive stiffness floor; "
                "cannot normalize (use the dual_tangential spring variant)"
            )
        # dividing by the anchor first makes row 1 reproduce its area exactly
        normalized = [lam / lams[0] * areas[0] for lam in lams]
        for config_id, (t, area, lam, norm) in enumerate(
            zip(triples_deg, areas, lams, normalized), start=1
        ):
            rows.append(
                [str(group), str(config_id)]
                + [_fmt(a) for a in t]
                + [_fmt(area), _fmt(lam), _fmt(norm)]
            )
        summaries.append(
            GroupSummary(
                group=group,
                spearman=float(spearmanr(areas, lams).statistic),
                symmetric_argmax_area=areas[0] >= max(areas),
                symmetric_argmax_lambda=lams[0] >= max(lams),
            )
        )
        ids = list(range(1, CASE_B_CONFIGS + 1))
        panels.append(
            Panel(
                f"group {group}",
                "configuration",
                "index [m^2]",
                [Series("area", ids, areas), Series("lambda_min (normalized)", ids, normalized)],
            )
        )

    path = _write_csv(
        out_dir / "case_b.csv",
        ["group", "config_id", "theta1_deg", "theta2_deg", "theta3_deg",
         "area_m2", "lambda_min_raw", "lambda_min_normalized"],
        rows,
    )
    if svg:
        write_chart(out_dir / "case_b.svg", panels)
    return path, summaries


# ---------------------------------------------------------------------------
# stability check of one described grasp


def run_stability(grasp_path: str | Path, cfg: RunConfig) -> StabilityReport:
    """Classify the grasp described in ``grasp_path``."""
    grasp, effective = load_grasp_file(grasp_path, cfg)
    return classify(assemble(grasp, effective.spring_variant))


# ---------------------------------------------------------------------------
# wrench-log contact sensing


def _parse_wrench_log(path: Path) -> list[tuple[float, np.ndarray, np.ndarray]]:
    entries = []
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.replace(" ", "").lower().startswith("t,fx"):
            continue  # optional header
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 7:
            raise ConfigError(
                f"{path}:{lineno}: expected 7 comma-separated values "
                f"(t,fx,fy,fz,mx,my,mz), got {len(parts)}"
            )
        try:
            values = [float(p) for p in parts]
        except ValueError:
            raise ConfigError(f"{path}:{lineno}: non-numeric value in {line!r}") from None
        entries.append((values[0], np.array(values[1:4]), np.array(values[4:7])))
    return entries


def run_sense(
    log_path: str | Path, cfg: RunConfig, out_dir: str | Path, svg: bool = False
) -> Path:
    """Solve each wrench-log line for its contact and emit contacts.csv.

    Lines whose solve fails (no force, no convergence, or tensile-only
    roots) produce a row with status ``no_contact`` and zeroed fields.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    surface = cfg.fingertip_surface()
    entries = _parse_wrench_log(Path(log_path))

    rows = []
    times, fns, fts, sigmas = [], [], [], []
    for t, f, m in entries:
        try:
            est = solve_contact(surface, Wrench(f, m))
        except (ValueError, NoConvergenceError, InadmissibleContactError):
            rows.append([_fmt(t)] + [_fmt(0.0)] * 12 + ["no_contact"])
            continue
        frame = contact_frame(
            est.n, est.f_t, origin=est.c, force_scale=float(np.linalg.norm(f))
        )
        phi, psi, gamma = frame.euler
        fn = float(f @ est.n)
        ft = float(np.linalg.norm(est.f_t))
        rows.append(
            [_fmt(t)]
            + [_fmt(v) for v in est.c]
            + [_fmt(v) for v in est.n]
            + [_fmt(fn), _fmt(ft), _fmt(est.sigma), _fmt(phi), _fmt(psi), _fmt(gamma)]
            + ["ok"]
        )
        times.append(t)
        fns.append(fn)
        fts.append(ft)
        sigmas.append(est.sigma)

    path = _write_csv(
        out_dir / "contacts.csv",
        ["t", "cx_m", "cy_m", "cz_m", "nx", "ny", "nz", "fn_N", "ft_N",
         "sigma_Nm", "phi_rad", "psi_rad", "gamma_rad", "status"],
        rows,
    )
    if svg:
        write_chart(
            out_dir / "contacts.svg",
            [
                Panel("contact forces", "t", "force [N]",
                      [Series("fn (n . f)", times, fns), Series("|ft|", times, fts)]),
                Panel("spin moment", "t", "sigma [N m]",
                      [Series("sigma", times, sigmas)]),
            ],
        )
    return path
