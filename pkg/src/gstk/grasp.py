"""Grasp stiffness assembly and eigenvalue stability classification.

Each soft-finger contact is modelled as a small set of uncoupled springs in
its own contact frame (x, y tangential, z along the inward normal): a normal
spring ``k_n``, tangential spring(s) ``k_t``, and a torsional spring
``k_tau`` about the normal. The 6x6 single-contact stiffness maps twists
``(dx, dy, dz, tx, ty, tz)`` to wrenches, so it is

    diag(k_t, 0,   k_n, 0, 0, k_tau)   (single tangential spring, default)
    diag(k_t, k_t, k_n, 0, 0, k_tau)   (dual tangential springs)

The single-tangential variant resists sliding only along the contact x axis;
for coplanar contact frames (such as the great-circle grasps built here)
that model leaves one translation completely unresisted, so the assembled
grasp is at best marginal. The dual variant spreads ``k_t`` over both
tangential axes and is what force sweeps and stability runs should use.

Contact stiffnesses expressed in the object frame add:

    K = sum_i Ad_i K_ci Ad_i^T

with ``Ad_i`` the wrench transform from contact frame i to the object frame.
The grasp is classified by the smallest eigenvalue of K, computed with a
cyclic Jacobi sweep: stable if lambda_min clears a relative tolerance,
unstable if it falls below the negated tolerance, marginal in between.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hertz import ContactPair, stiffness_coefficients
from .screw import Pose, adjoint_of_pose, congruence_map_stiffness, rotation_y

__all__ = [
    "SPRING_VARIANTS",
    "ContactSpringModel",
    "GraspConfiguration",
    "GraspContact",
    "GraspStiffnessMatrix",
    "StabilityReport",
    "assemble",
    "circular_separation",
    "classify",
    "contact_stiffness",
    "great_circle_pose",
    "min_eigenvalue",
    "spring_model_from_hertz",
    "symmetric_eigenvalues",
    "three_finger_sphere_config",
]

SPRING_VARIANTS = ("single_tangential", "dual_tangential")
DEFAULT_MIN_SEPARATION = math.radians(10.0)


@dataclass(frozen=True)
class ContactSpringModel:
    """Spring constants of one contact: ``k_n``, ``k_t`` [N/m], ``k_tau``
    [N m/rad], all nonnegative, plus the tangential variant."""

    k_n: float
    k_t: float
    k_tau: float
    variant: str = "single_tangential"

    def __post_init__(self):
        for name in ("k_n", "k_t", "k_tau"):
            v = getattr(self, name)
            if not (v >= 0.0 and math.isfinite(v)):
                raise ValueError(f"{name} must be nonnegative and finite")
        if self.variant not in SPRING_VARIANTS:
            raise ValueError(
                f"unknown spring variant {self.variant!r}; expected one of {SPRING_VARIANTS}"
            )


def contact_stiffness(model: ContactSpringModel) -> np.ndarray:
    """6x6 contact-frame stiffness of ``model`` (twists in, wrenches out)."""
    K = np.zeros((6, 6))
    K[0, 0] = model.k_t
    K[2, 2] = model.k_n
    K[5, 5] = model.k_tau
    if model.variant == "dual_tangential":
        K[1, 1] = model.k_t
    return K


def spring_model_from_hertz(
    pair: ContactPair, P: float, variant: str = "single_tangential"
) -> ContactSpringModel:
    """Spring model of a contact pair at normal load ``P``."""
    k_n, k_t, k_tau = stiffness_coefficients(pair, P)
    return ContactSpringModel(k_n, k_t, k_tau, variant)


@dataclass(frozen=True)
class GraspContact:
    """One contact of a grasp: its frame expressed in the object frame, the
    elastic pair, and the normal preload ``P`` [N]."""

    frame: Pose
    pair: ContactPair
    P: float

    def __post_init__(self):
        if not (self.P >= 0.0 and math.isfinite(self.P)):
            raise ValueError("contact preload P must be nonnegative and finite")

    @property
    def position(self) -> np.ndarray:
        return self.frame.p


@dataclass(frozen=True)
class GraspConfiguration:
    """A nonempty set of contacts grasping one object."""

    contacts: tuple[GraspContact, ...]

    def __post_init__(self):
        contacts = tuple(self.contacts)
        if not contacts:
            raise ValueError("a grasp needs at least one contact")
        object.__setattr__(self, "contacts", contacts)


@dataclass(frozen=True)
class GraspStiffnessMatrix:
    """Assembled 6x6 grasp stiffness in the object frame."""

    K: np.ndarray

    def __post_init__(self):
        K = np.asarray(self.K, dtype=float)
        if K.shape != (6, 6):
            raise ValueError(f"grasp stiffness must be 6x6, got shape {K.shape}")
        if not np.all(np.isfinite(K)):
            raise ValueError("grasp stiffness must be finite")
        scale = float(np.max(np.abs(K)))
        if scale > 0.0 and np.max(np.abs(K - K.T)) > 1e-9 * scale:
            raise ValueError("grasp stiffness must be symmetric")
        K = K.copy()
        K.setflags(write=False)
        object.__setattr__(self, "K", K)


@dataclass(frozen=True)
class StabilityReport:
    """Eigenvalues (ascending), their minimum, and the classification,
    one of ``"stable"``, ``"marginal"``, ``"unstable"``."""

    eigenvalues: np.ndarray
    lambda_min: float
    classification: str


def assemble(config: GraspConfiguration, variant: str = "single_tangential") -> GraspStiffnessMatrix:
    """Assemble the object-frame grasp stiffness ``sum_i Ad_i K_ci Ad_i^T``.

    Contacts contribute in order, so the assembly over a partition of the
    contact set is exactly additive.
    """
    K = np.zeros((6, 6))
    for contact in config.contacts:
        model = spring_model_from_hertz(contact.pair, contact.P, variant)
        ad = adjoint_of_pose(contact.frame)
        K += congruence_map_stiffness(ad, contact_stiffness(model))
    return GraspStiffnessMatrix(K)


def _as_matrix(K) -> np.ndarray:
    if isinstance(K, GraspStiffnessMatrix):
        K = K.K
    K = np.asarray(K, dtype=float)
    if K.shape[0] != K.shape[1] or K.ndim != 2:
        raise ValueError(f"expected a square matrix, got shape {K.shape}")
    scale = float(np.max(np.abs(K))) if K.size else 0.0
    if scale > 0.0 and np.max(np.abs(K - K.T)) > 1e-9 * scale:
        raise ValueError("matrix must be symmetric")
    return 0.5 * (K + K.T)


def symmetric_eigenvalues(K, max_sweeps: int = 50) -> np.ndarray:
    """Eigenvalues of a symmetric matrix, ascending, by cyclic Jacobi sweeps.

    Rotations zero one off-diagonal pair at a time; the off-diagonal norm
    falls quadratically once small, and the sweep stops when it drops below
    1e-14 of the matrix norm.
    """
    A = _as_matrix(K)
    n = A.shape[0]
    scale = float(np.linalg.norm(A))
    if scale == 0.0:
        return np.zeros(n)
    off_diagonal = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        off = float(np.linalg.norm(A[off_diagonal]))
        if off <= 1e-14 * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                # entries this small cannot move an eigenvalue past rounding
                if abs(apq) <= 1e-18 * scale:
                    continue
                tau = (A[q, q] - A[p, p]) / (2.0 * apq)
                if tau == 0.0:
                    t = 1.0
                else:
                    t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                col_p = A[:, p].copy()
                col_q = A[:, q].copy()
                A[:, p] = c * col_p - s * col_q
                A[:, q] = s * col_p + c * col_q
                row_p = A[p, :].copy()
                row_q = A[q, :].copy()
                A[p, :] = c * row_p - s * row_q
                A[q, :] = s * row_p + c * row_q
                A[p, q] = 0.0
                A[q, p] = 0.0
    else:
        raise RuntimeError("Jacobi eigensolver did not converge")
    return np.sort(np.diag(A))


def min_eigenvalue(K) -> float:
    """Smallest eigenvalue of a (6x6) grasp stiffness matrix."""
    return float(symmetric_eigenvalues(K)[0])


def classify(K, tol: float = 1e-9) -> StabilityReport:
    """Classify a grasp stiffness by its smallest eigenvalue.

    ``stable`` if lambda_min > tol * |K|, ``unstable`` if lambda_min <
    -tol * |K|, ``marginal`` in the band between (|K| is the spectral norm,
    so the all-zero matrix is marginal).
    """
    if not (tol > 0.0 and math.isfinite(tol)):
        raise ValueError("tolerance must be positive and finite")
    eigenvalues = symmetric_eigenvalues(K)
    lam = float(eigenvalues[0])
    threshold = tol * float(np.max(np.abs(eigenvalues)))
    if lam > threshold:
        label = "stable"
    elif lam < -threshold:
        label = "unstable"
    else:
        label = "marginal"
    return StabilityReport(eigenvalues=eigenvalues, lambda_min=lam, classification=label)


def great_circle_pose(angle: float, distance: float) -> Pose:
    """Contact-frame pose at ``angle`` on the x-z great circle of radius
    ``distance``, expressed in the object frame.

    The contact sits at ``distance * (sin a, 0, -cos a)``; its z axis points
    at the object origin, its x axis is the in-plane tangent, and its y axis
    coincides with the object y axis.
    """
    if not (distance > 0.0 and math.isfinite(distance)):
        raise ValueError("contact distance must be positive and finite")
    R = rotation_y(-angle)
    p = -(R @ np.array([0.0, 0.0, distance]))
    return Pose(R, p)


def circular_separation(a: float, b: float) -> float:
    """Separation of two angles on the circle, in [0, pi]."""
    d = abs(a - b) % (2.0 * math.pi)
    return min(d, 2.0 * math.pi - d)


def three_finger_sphere_config(
    object_radius: float,
    contact_distance: float,
    angles,
    P: float,
    materials,
    fingertip_radius: float = 0.010,
    min_separation: float = DEFAULT_MIN_SEPARATION,
) -> GraspConfiguration:
    """Three-finger grasp on the great circle of a spherical object.

    Parameters
    ----------
    object_radius : float
        Signed local object radius [m] seen by each fingertip (positive
        convex, negative concave, inf flat).
    contact_distance : float
        Distance from the object centre to every contact point [m].
    angles : sequence of 3 floats
        Great-circle angles [rad]; the symmetric grasp is (90, 210, 330)
        degrees. Angles closer than ``min_separation`` (circularly) are
        rejected as degenerate.
    P : float
        Normal preload per contact [N].
    materials : (Material, Material)
        Fingertip and object materials.
    fingertip_radius : float
        Fingertip radius [m].
    """
    angles = [float(a) for a in angles]
    if len(angles) != 3:
        raise ValueError(f"expected exactly 3 contact angles, got {len(angles)}")
    for i in range(3):
        for j in range(i + 1, 3):
            if circular_separation(angles[i], angles[j]) < min_separation:
                raise ValueError(
                    f"contact angles {i + 1} and {j + 1} are closer than "
                    f"{math.degrees(min_separation):g} deg"
                )
    fingertip_material, object_material = materials
    pair = ContactPair(fingertip_radius, object_radius, fingertip_material, object_material)
    contacts = tuple(
        GraspContact(great_circle_pose(a, contact_distance), pair, P) for a in angles
    )
    return GraspConfiguration(contacts)
