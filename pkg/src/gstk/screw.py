"""Screw-theoretic transforms for wrenches, twists, and stiffness matrices.

Conventions
-----------
* Wrenches are ray coordinates ``(f, m)``: force first, moment second.
* Twists are axis coordinates ``(d, theta)``: translation first, rotation second.
* A :class:`Pose` ``(R, p)`` is the pose of a frame B expressed in a frame A:
  ``R`` rotates B coordinates into A, ``p`` is B's origin in A coordinates.
* ``adjoint_of_pose(pose_of_B_in_A)`` maps B-frame wrenches to A-frame wrenches.
  Twists transported with the same adjoint use the inverse transpose, which the
  elliptical polar operator turns back into a plain congruence.

All vectors are metres, newtons, newton-metres, radians.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ELLIPTICAL_POLAR",
    "AdjointTransform",
    "Pose",
    "Twist",
    "Wrench",
    "adjoint_of_pose",
    "congruence_map_stiffness",
    "rotation_x",
    "rotation_y",
    "rotation_z",
    "skew",
    "transform_twist",
    "transform_wrench",
]

_ORTHONORMALITY_TOL = 1e-12


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


def _as_vector3(x, name: str) -> np.ndarray:
    v = np.asarray(x, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"{name} must be a 3-vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} must be finite")
    return _readonly(v)


def skew(p) -> np.ndarray:
    """Cross-product matrix of ``p``, so that ``skew(p) @ v == cross(p, v)``."""
    p = np.asarray(p, dtype=float)
    return np.array(
        [
            [0.0, -p[2], p[1]],
            [p[2], 0.0, -p[0]],
            [-p[1], p[0], 0.0],
        ]
    )


def rotation_x(angle: float) -> np.ndarray:
    """Rotation matrix about the x axis."""
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def rotation_y(angle: float) -> np.ndarray:
    """Rotation matrix about the y axis."""
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def rotation_z(angle: float) -> np.ndarray:
    """Rotation matrix about the z axis."""
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


# Swaps the force/moment (or translation/rotation) halves of a screw. It is its
# own transpose and inverse, and conjugating an adjoint with it yields the
# inverse transpose of that adjoint.
ELLIPTICAL_POLAR = _readonly(
    np.block([[np.zeros((3, 3)), np.eye(3)], [np.eye(3), np.zeros((3, 3))]])
)


@dataclass(frozen=True, eq=False)
class Wrench:
    """Force/moment pair in ray coordinates, ``(f, m)``."""

    f: np.ndarray
    m: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "f", _as_vector3(self.f, "f"))
        object.__setattr__(self, "m", _as_vector3(self.m, "m"))

    @classmethod
    def from_array(cls, w) -> "Wrench":
        w = np.asarray(w, dtype=float)
        if w.shape != (6,):
            raise ValueError(f"wrench array must have shape (6,), got {w.shape}")
        return cls(w[:3], w[3:])

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.f, self.m])


@dataclass(frozen=True, eq=False)
class Twist:
    """Translation/rotation pair in axis coordinates, ``(d, theta)``."""

    d: np.ndarray
    theta: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "d", _as_vector3(self.d, "d"))
        object.__setattr__(self, "theta", _as_vector3(self.theta, "theta"))

    @classmethod
    def from_array(cls, t) -> "Twist":
        t = np.asarray(t, dtype=float)
        if t.shape != (6,):
            raise ValueError(f"twist array must have shape (6,), got {t.shape}")
        return cls(t[:3], t[3:])

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.d, self.theta])


@dataclass(frozen=True, eq=False)
class Pose:
    """Rigid pose ``(R, p)`` of one frame expressed in another.

    ``R`` must be a proper rotation: ``R.T @ R = I`` and ``det R = 1``, both
    within 1e-12.
    """

    R: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        R = np.asarray(self.R, dtype=float)
        if R.shape != (3, 3):
            raise ValueError(f"R must be 3x3, got shape {R.shape}")
        if not np.all(np.isfinite(R)):
            raise ValueError("R must be finite")
        if np.max(np.abs(R.T @ R - np.eye(3))) > _ORTHONORMALITY_TOL:
            raise ValueError("R is not orthonormal")
        if abs(np.linalg.det(R) - 1.0) > _ORTHONORMALITY_TOL:
            raise ValueError("R is not a proper rotation (det != +1)")
        object.__setattr__(self, "R", _readonly(R))
        object.__setattr__(self, "p", _as_vector3(self.p, "p"))

    @classmethod
    def identity(cls) -> "Pose":
        return cls(np.eye(3), np.zeros(3))

    def compose(self, other: "Pose") -> "Pose":
        """Pose of C in A, given self = pose of B in A and other = pose of C in B."""
        return Pose(self.R @ other.R, self.p + self.R @ other.p)

    def inverse(self) -> "Pose":
        return Pose(self.R.T, -(self.R.T @ self.p))

    def transform_point(self, x) -> np.ndarray:
        return self.R @ np.asarray(x, dtype=float) + self.p


@dataclass(frozen=True, eq=False)
class AdjointTransform:
    """6x6 wrench transform with block form ``[[R, 0], [skew(p) R, R]]``."""

    matrix: np.ndarray

    def __post_init__(self):
        M = np.asarray(self.matrix, dtype=float)
        if M.shape != (6, 6):
            raise ValueError(f"adjoint matrix must be 6x6, got shape {M.shape}")
        if not np.all(np.isfinite(M)):
            raise ValueError("adjoint matrix must be finite")
        if not np.all(M[:3, 3:] == 0.0):
            raise ValueError("adjoint upper-right block must be zero")
        if not np.all(M[:3, :3] == M[3:, 3:]):
            raise ValueError("adjoint diagonal blocks must be equal")
        if abs(np.linalg.det(M) - 1.0) > 1e-9:
            raise ValueError("adjoint determinant must be 1")
        object.__setattr__(self, "matrix", _readonly(M))

    @property
    def rotation(self) -> np.ndarray:
        return self.matrix[:3, :3]

    def inverse(self) -> "AdjointTransform":
        R = self.rotation
        P = self.matrix[3:, :3] @ R.T  # recover skew(p)
        lower = -(R.T @ P)
        return AdjointTransform(
            np.block([[R.T, np.zeros((3, 3))], [lower, R.T]])
        )


def adjoint_of_pose(pose: Pose) -> AdjointTransform:
    """Wrench transform of ``pose``.

    With ``pose`` the pose of frame B expressed in frame A, the returned
    transform maps wrenches given in B coordinates to A coordinates: the force
    rotates, and the moved application point adds a ``p x f`` moment.
    """
    R, p = pose.R, pose.p
    zero = np.zeros((3, 3))
    return AdjointTransform(np.block([[R, zero], [skew(p) @ R, R]]))


def transform_wrench(adj: AdjointTransform, wrench: Wrench) -> Wrench:
    """Re-express ``wrench`` through ``adj``."""
    return Wrench.from_array(adj.matrix @ wrench.as_array())


def transform_twist(adj: AdjointTransform, twist: Twist) -> Twist:
    """Re-express ``twist`` through ``adj``.

    Uses the polar-conjugated adjoint ``Delta Ad Delta``, which equals the
    inverse transpose of ``Ad``; both halves of the twist rotate, and the
    rotation part additionally leverages through the translation.
    """
    M = ELLIPTICAL_POLAR @ adj.matrix @ ELLIPTICAL_POLAR
    return Twist.from_array(M @ twist.as_array())


def congruence_map_stiffness(adj: AdjointTransform, K) -> np.ndarray:
    """Map a 6x6 stiffness matrix through ``Ad K Ad.T``.

    ``K`` maps twists to wrenches in the source frame; the result does the
    same in the target frame. ``K`` must be symmetric within 1e-9 (relative
    to its largest entry). Symmetry and positive semidefiniteness survive the
    congruence.
    """
    K = np.asarray(K, dtype=float)
    if K.shape != (6, 6):
        raise ValueError(f"stiffness matrix must be 6x6, got shape {K.shape}")
    scale = max(1.0, float(np.max(np.abs(K))))
    if np.max(np.abs(K - K.T)) > 1e-9 * scale:
        raise ValueError("stiffness matrix must be symmetric")
    return adj.matrix @ K @ adj.matrix.T
