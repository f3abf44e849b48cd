"""Soft-finger contact stiffness and grasp stability toolkit.

Modules
-------
screw
    Wrench/twist screw algebra: poses, adjoints, stiffness congruence.
hertz
    Hertzian contact of a spherical fingertip: patch, tractions, the three
    secant stiffness coefficients, and the material registry.
sensing
    Intrinsic contact sensing: contact centroid, normal, and spin moment
    from a six-axis wrench measurement on a quadric fingertip.
grasp
    Grasp stiffness assembly and minimum-eigenvalue stability classification.
config
    Key/value run configuration and grasp description files.
harness
    Reproducible sweeps (coefficient tables, force sweeps, configuration
    studies) emitting CSV files and optional SVG charts.
cli
    The ``gstk`` command-line entry point.
"""

from .config import ConfigError, RunConfig, load_grasp_file, load_run_config
from .grasp import (
    ContactSpringModel,
    GraspConfiguration,
    GraspContact,
    GraspStiffnessMatrix,
    StabilityReport,
    assemble,
    classify,
    contact_stiffness,
    great_circle_pose,
    min_eigenvalue,
    spring_model_from_hertz,
    symmetric_eigenvalues,
    three_finger_sphere_config,
)
from .hertz import (
    MATERIALS,
    ContactLoad,
    ContactPair,
    GrossSlideError,
    HertzSolution,
    Material,
    get_material,
    hertz_solution,
    normal_pressure_at,
    solve_normal,
    solve_tangential,
    solve_torsion,
    stiffness_coefficients,
    tangential_traction_at,
    torsional_traction_at,
)
from .screw import (
    ELLIPTICAL_POLAR,
    AdjointTransform,
    Pose,
    Twist,
    Wrench,
    adjoint_of_pose,
    congruence_map_stiffness,
    skew,
    transform_twist,
    transform_wrench,
)
from .harness import (
    grasp_area_index,
    run_case_a,
    run_case_b,
    run_coeff_sweep,
    run_sense,
    run_stability,
)
from .sensing import (
    ContactEstimate,
    ContactFrame,
    FingertipSurface,
    InadmissibleContactError,
    NoConvergenceError,
    contact_frame,
    decompose_forces,
    solve_contact,
    surface_normal,
    synthesize_wrench,
)

__version__ = "0.1.0"
