"""Intrinsic contact sensing on a quadric fingertip.

A six-axis force/torque sensor rigidly attached to a fingertip measures the
wrench ``(f, m)`` that a single frictional point contact applies to it. The
contact transmits a pure force ``f_c`` through the contact centroid ``c``
plus a spin moment about the local surface normal, ``m_c = sigma * n(c)``.
Force/moment balance at the sensor origin gives

    f = f_c
    m = sigma * n(c) + c x f_c

and with the fingertip surface S(i) = i^T A^T A i - R^2 = 0 (A =
diag(1/alpha, 1/beta, 1/gamma), semi-axes R*alpha, R*beta, R*gamma) the four
scalar unknowns (c, sigma) satisfy the square system

    m - c x f - sigma * n(c) = 0
    S(c) = 0.

:func:`solve_contact` solves it with Newton iterations from a 26-direction
multistart grid, then keeps the compressive root (f . n(c) < 0) of smallest
|sigma|; spin balance admits spurious mirror roots, which that policy
discards.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .screw import Pose, Wrench, adjoint_of_pose, rotation_y, rotation_z, transform_wrench

__all__ = [
    "ContactEstimate",
    "ContactFrame",
    "FingertipSurface",
    "InadmissibleContactError",
    "NoConvergenceError",
    "contact_frame",
    "decompose_forces",
    "solve_contact",
    "surface_normal",
    "synthesize_wrench",
]

_MIN_FORCE = 1e-9  # N; below this the wrench carries no contact information

# All nonzero sign patterns of a cube: 6 face + 12 edge + 8 corner directions.
_MULTISTART_DIRECTIONS = np.array(
    [v for v in product((-1.0, 0.0, 1.0), repeat=3) if any(v)]
)
_MULTISTART_DIRECTIONS /= np.linalg.norm(_MULTISTART_DIRECTIONS, axis=1, keepdims=True)


class NoConvergenceError(RuntimeError):
    """Newton multistart found no root of the contact balance system."""

    def __init__(self, message: str, best_residual: float):
        super().__init__(message)
        self.best_residual = best_residual


class InadmissibleContactError(RuntimeError):
    """All balance roots are tensile; no compressive contact explains the wrench."""


@dataclass(frozen=True)
class FingertipSurface:
    """Ellipsoidal fingertip ``(x/alpha)^2 + (y/beta)^2 + (z/gamma)^2 = R^2``.

    The shape factors must satisfy ``alpha, beta, gamma >= 1`` and the size
    parameter ``R > 0``; the semi-axes are ``R*alpha, R*beta, R*gamma``.
    """

    alpha: float
    beta: float
    gamma: float
    R: float

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            v = getattr(self, name)
            if not (v >= 1.0 and math.isfinite(v)):
                raise ValueError(f"shape factor {name} must satisfy {name} >= 1")
        if not (self.R > 0.0 and math.isfinite(self.R)):
            raise ValueError("size parameter R must be positive and finite")

    @classmethod
    def sphere(cls, R: float) -> "FingertipSurface":
        return cls(1.0, 1.0, 1.0, R)

    @property
    def semi_axes(self) -> np.ndarray:
        return self.R * np.array([self.alpha, self.beta, self.gamma])

    @property
    def _q(self) -> np.ndarray:
        # diagonal of A^T A
        return np.array([self.alpha, self.beta, self.gamma]) ** -2.0

    def value(self, point) -> float:
        """Implicit surface value S(point); zero on the surface."""
        p = np.asarray(point, dtype=float)
        return float(p @ (self._q * p) - self.R**2)

    def gradient(self, point) -> np.ndarray:
        """Gradient of S, an outward (non-unit) normal."""
        p = np.asarray(point, dtype=float)
        return 2.0 * self._q * p

    def point_toward(self, direction) -> np.ndarray:
        """The surface point along ``direction`` from the centre."""
        d = np.asarray(direction, dtype=float)
        scale = d @ (self._q * d)
        if scale <= 0.0:
            raise ValueError("direction must be a nonzero vector")
        return d * (self.R / math.sqrt(scale))


def surface_normal(surface: FingertipSurface, point) -> np.ndarray:
    """Unit outward normal ``grad S / |grad S|`` at ``point``.

    The gradient degenerates only at the centre, which is rejected.
    """
    g = surface.gradient(point)
    gn = float(np.linalg.norm(g))
    if gn <= 1e-12 * surface.R:
        raise ValueError("surface normal is undefined at the centre")
    return g / gn


def decompose_forces(f, n) -> tuple[np.ndarray, np.ndarray]:
    """Split ``f`` into its normal and tangential parts relative to unit ``n``."""
    f = np.asarray(f, dtype=float)
    n = np.asarray(n, dtype=float)
    if abs(np.linalg.norm(n) - 1.0) > 1e-9:
        raise ValueError("n must be a unit vector")
    f_n = (f @ n) * n
    return f_n, f - f_n


def synthesize_wrench(surface: FingertipSurface, c, f_c, sigma: float) -> Wrench:
    """Sensor wrench produced by a point contact ``(c, f_c, sigma)``.

    ``c`` must lie on the surface (|S(c)| <= 1e-9 R^2). Returns the wrench
    ``(f_c, sigma * n(c) + c x f_c)`` in the fingertip frame.
    """
    c = np.asarray(c, dtype=float)
    if abs(surface.value(c)) > 1e-9 * surface.R**2:
        raise ValueError("contact point does not lie on the fingertip surface")
    f_c = np.asarray(f_c, dtype=float)
    n = surface_normal(surface, c)
    return Wrench(f_c, sigma * n + np.cross(c, f_c))


@dataclass(frozen=True)
class ContactEstimate:
    """Solved contact state on the fingertip.

    ``c`` is the contact centroid, ``n`` the unit outward normal there,
    ``f_n``/``f_t`` the normal/tangential force components, ``sigma`` the
    signed spin moment about ``n``, and ``k_const`` the proportionality
    constant relating the contact moment to the surface gradient,
    ``2 sigma / |grad S(c)|``.
    """

    c: np.ndarray
    n: np.ndarray
    f_n: np.ndarray
    f_t: np.ndarray
    sigma: float
    k_const: float


@dataclass(frozen=True)
class ContactFrame:
    """Contact frame as Z-Y-Z Euler angles ``(phi, psi, gamma)`` plus its
    rotation matrix and origin."""

    euler: tuple[float, float, float]
    rotation: np.ndarray
    origin: np.ndarray


def _newton_multistart(surface: FingertipSurface, f: np.ndarray, m: np.ndarray,
                       max_iter: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Run damped Newton from every multistart point, in lockstep.

    Returns (C, sigma, residual) for the starts that remained finite; the
    caller filters by residual.
    """
    q = surface._q
    R = surface.R
    r_max = float(np.max(surface.semi_axes))

    C = np.array([surface.point_toward(d) for d in _MULTISTART_DIRECTIONS])
    k = C.shape[0]
    G = 2.0 * q * C
    N = G / np.linalg.norm(G, axis=1, keepdims=True)
    sig = np.einsum("ij,ij->i", N, m - np.cross(C, f))

    alive = np.ones(k, dtype=bool)
    converged = np.zeros(k, dtype=bool)
    skew_f = np.array(
        [[0.0, -f[2], f[1]], [f[2], 0.0, -f[0]], [-f[1], f[0], 0.0]]
    )
    res_scale = float(np.linalg.norm(m)) + R * float(np.linalg.norm(f))
    tol_vec = 1e-13 * max(res_scale, 1e-300)
    tol_s = 1e-13 * R**2
    eye = np.eye(3)

    for _ in range(max_iter):
        G = 2.0 * q * C
        gn = np.linalg.norm(G, axis=1)
        dead = alive & (gn <= 1e-12 * R)
        alive &= ~dead
        gn_safe = np.where(gn > 0.0, gn, 1.0)
        N = G / gn_safe[:, None]
        Fv = m - np.cross(C, f) - sig[:, None] * N
        S = np.einsum("ij,ij->i", C, q * C) - R**2
        converged = alive & (np.linalg.norm(Fv, axis=1) <= tol_vec) & (np.abs(S) <= tol_s)
        active = alive & ~converged
        if not np.any(active):
            break

        nnT = N[:, :, None] * N[:, None, :]
        dn_dc = (eye - nnT) * (2.0 * q)[None, None, :] / gn_safe[:, None, None]
        J = np.zeros((k, 4, 4))
        J[:, :3, :3] = skew_f - sig[:, None, None] * dn_dc
        J[:, :3, 3] = -N
        J[:, 3, :3] = G
        rhs = -np.concatenate([Fv, S[:, None]], axis=1)

        step = np.zeros((k, 4))
        idx = np.flatnonzero(active)
        try:
            step[idx] = np.linalg.solve(J[idx], rhs[idx][..., None])[..., 0]
        except np.linalg.LinAlgError:
            for i in idx:
                try:
                    step[i] = np.linalg.solve(J[i], rhs[i])
                except np.linalg.LinAlgError:
                    alive[i] = False
                    step[i] = 0.0
        # damp oversized steps so far-off starts cannot shoot through the centre
        dc_norm = np.linalg.norm(step[:, :3], axis=1)
        too_big = dc_norm > 0.5 * r_max
        step[too_big] *= (0.5 * r_max / dc_norm[too_big])[:, None]

        C = C + np.where(active, 1.0, 0.0)[:, None] * step[:, :3]
        sig = sig + np.where(active, 1.0, 0.0) * step[:, 3]
        bad = ~np.all(np.isfinite(C), axis=1) | ~np.isfinite(sig)
        alive &= ~bad

    G = 2.0 * q * C
    gn = np.linalg.norm(G, axis=1)
    ok = alive & (gn > 1e-12 * R)
    N = G / np.where(gn > 0.0, gn, 1.0)[:, None]
    Fv = m - np.cross(C, f) - sig[:, None] * N
    S = np.einsum("ij,ij->i", C, q * C) - R**2
    residual = np.linalg.norm(Fv, axis=1) + np.abs(S) / max(R, 1e-300)
    return C[ok], sig[ok], residual[ok]


def solve_contact(
    surface: FingertipSurface,
    wrench: Wrench,
    *,
    sensor_pose: Pose | None = None,
    max_iter: int = 60,
) -> ContactEstimate:
    """Recover the contact centroid and spin moment from a sensor wrench.

    Parameters
    ----------
    surface : FingertipSurface
        Fingertip geometry, in the fingertip frame.
    wrench : Wrench
        Measured wrench. The force must exceed 1e-9 N.
    sensor_pose : Pose, optional
        Pose of the sensor frame expressed in the fingertip frame, if the
        sensor is not mounted at the fingertip origin. Defaults to identity.
    max_iter : int
        Newton iteration cap per start point.

    Returns
    -------
    ContactEstimate

    Raises
    ------
    NoConvergenceError
        If no multistart root reaches residual 1e-9 (|m| + R |f|).
    InadmissibleContactError
        If roots exist but none is compressive (f . n(c) < 0).
    """
    if sensor_pose is not None:
        wrench = transform_wrench(adjoint_of_pose(sensor_pose), wrench)
    f = wrench.f.copy()
    m = wrench.m.copy()
    fnorm = float(np.linalg.norm(f))
    if fnorm <= _MIN_FORCE:
        raise ValueError(f"force magnitude {fnorm:g} N is too small to locate a contact")

    C, sig, residual = _newton_multistart(surface, f, m, max_iter)
    res_scale = float(np.linalg.norm(m)) + surface.R * fnorm
    good = residual <= 1e-9 * res_scale
    if not np.any(good):
        best = float(np.min(residual)) if residual.size else math.inf
        raise NoConvergenceError(
            f"contact solve did not converge (best residual {best:g}, "
            f"tolerance {1e-9 * res_scale:g})",
            best,
        )
    C, sig, residual = C[good], sig[good], residual[good]

    # deduplicate converged roots, keeping the best residual per cluster
    r_max = float(np.max(surface.semi_axes))
    order = np.argsort(residual)
    roots: list[tuple[np.ndarray, float]] = []
    for i in order:
        if all(np.linalg.norm(C[i] - c0) > 1e-6 * r_max for c0, _ in roots):
            roots.append((C[i], sig[i]))

    admissible = [(c, s) for c, s in roots if f @ surface_normal(surface, c) < 0.0]
    if not admissible:
        raise InadmissibleContactError(
            "no compressive contact explains the measured wrench"
        )
    c, sigma = min(admissible, key=lambda cs: abs(cs[1]))
    n = surface_normal(surface, c)
    f_n, f_t = decompose_forces(f, n)
    k_const = 2.0 * sigma / float(np.linalg.norm(surface.gradient(c)))
    return ContactEstimate(c=c, n=n, f_n=f_n, f_t=f_t, sigma=float(sigma),
                           k_const=float(k_const))


def contact_frame(n, f_t, origin=None, force_scale: float | None = None) -> ContactFrame:
    """Z-Y-Z Euler contact frame whose z axis is ``n`` and x axis follows ``f_t``.

    The rotation is ``Rz(phi) Ry(psi) Rz(gamma)`` with ``psi = acos(n_z)``
    and ``phi = atan2(n_y, n_x)``; ``gamma`` turns the x axis onto the
    tangential force direction. Two degeneracies are resolved by convention:
    at ``n_z = +-1`` the azimuth ``phi`` is set to 0, and when the
    tangential force is negligible (``|f_t| <= 1e-9 * force_scale`` when a
    scale is given, or exactly zero otherwise) ``gamma`` is set to 0.
    """
    n = np.asarray(n, dtype=float)
    f_t = np.asarray(f_t, dtype=float)
    if abs(np.linalg.norm(n) - 1.0) > 1e-9:
        raise ValueError("n must be a unit vector")
    psi = math.acos(max(-1.0, min(1.0, float(n[2]))))
    if math.hypot(float(n[0]), float(n[1])) <= 1e-12:
        phi = 0.0
    else:
        phi = math.atan2(float(n[1]), float(n[0]))
    A = rotation_z(phi) @ rotation_y(psi)

    ft_norm = float(np.linalg.norm(f_t))
    threshold = 1e-9 * force_scale if force_scale is not None else 0.0
    if ft_norm <= threshold or ft_norm == 0.0:
        gamma = 0.0
    else:
        t_hat = f_t / ft_norm
        gamma = math.atan2(float(A[:, 1] @ t_hat), float(A[:, 0] @ t_hat))
    rotation = A @ rotation_z(gamma)
    if origin is None:
        origin = np.zeros(3)
    return ContactFrame(
        euler=(phi, psi, gamma),
        rotation=rotation,
        origin=np.asarray(origin, dtype=float),
    )
