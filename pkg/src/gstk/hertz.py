"""Hertzian contact of a spherical fingertip against a curved object.

The contact of two elastic bodies with parallel principal curvatures reduces
to an equivalent sphere-on-flat problem through the relative radius

    1/R_c = 1/r1 + 1/r2

and the contact modulus

    1/E_c = (1 - nu1^2)/E1 + (1 - nu2^2)/E2.

``r2`` is signed: positive for a convex object, negative for a concave
(inbound) one, infinite for a flat one. Under a normal load ``P`` the patch
radius, approach, and peak pressure are

    a   = (3 P R_c / (4 E_c))^(1/3)
    d   = a^2 / R_c
    q_o = 3 P / (2 pi a^2)

and the secant stiffness coefficients used by the grasp model are

    k_n   = (16 P R_c E_c^2 / 9)^(1/3)          (equals P / d)
    k_t   = 8 a / ((2 - nu1)/G1 + (2 - nu2)/G2)
    k_tau = (16/3) a^3 / (1/G1 + 1/G2)

All three are total (secant) stiffnesses, force over displacement at the
operating point, not tangent derivatives. Tangential loading is only valid
below gross sliding, |Q_x| < mu P.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

__all__ = [
    "DEFAULT_FRICTION",
    "MATERIALS",
    "ContactLoad",
    "ContactPair",
    "GrossSlideError",
    "HertzSolution",
    "Material",
    "NormalSolution",
    "StiffnessCoefficients",
    "TangentialSolution",
    "TorsionSolution",
    "get_material",
    "hertz_solution",
    "normal_pressure_at",
    "solve_normal",
    "solve_tangential",
    "solve_torsion",
    "stiffness_coefficients",
    "tangential_traction_at",
    "torsional_traction_at",
]

DEFAULT_FRICTION = 0.5


class GrossSlideError(ValueError):
    """Tangential load at or beyond the friction cone; no stick solution."""


@dataclass(frozen=True)
class Material:
    """Isotropic elastic material.

    Parameters
    ----------
    E : float
        Young's modulus [Pa].
    G : float
        Shear modulus [Pa].
    nu : float
        Poisson ratio, in [0, 0.5].

    Notes
    -----
    For a consistent isotropic material E = 2 G (1 + nu). A relative
    deviation of 2% or more triggers a warning but is not rejected, since
    tabulated engineering values rarely satisfy the identity exactly.
    """

    E: float
    G: float
    nu: float

    def __post_init__(self):
        if not (self.E > 0.0 and math.isfinite(self.E)):
            raise ValueError("Young's modulus E must be positive and finite")
        if not (self.G > 0.0 and math.isfinite(self.G)):
            raise ValueError("shear modulus G must be positive and finite")
        if not 0.0 <= self.nu <= 0.5:
            raise ValueError("Poisson ratio nu must lie in [0, 0.5]")
        if abs(self.E - 2.0 * self.G * (1.0 + self.nu)) / self.E >= 0.02:
            warnings.warn(
                f"material violates E = 2G(1+nu) by >= 2% (E={self.E:g}, "
                f"G={self.G:g}, nu={self.nu:g})",
                stacklevel=2,
            )


MATERIALS: dict[str, Material] = {
    "rubber": Material(E=2.5e6, G=8.3e5, nu=0.5),
    "polyethylene": Material(E=1.1e9, G=3.87e8, nu=0.42),
    "aluminium": Material(E=7.1e10, G=2.67e10, nu=0.33),
}

_MATERIAL_ALIASES = {"aluminum": "aluminium"}


def get_material(name: str) -> Material:
    """Look up a registry material by name (case-insensitive)."""
    key = name.strip().lower()
    key = _MATERIAL_ALIASES.get(key, key)
    try:
        return MATERIALS[key]
    except KeyError:
        known = ", ".join(sorted(MATERIALS))
        raise KeyError(f"unknown material {name!r}; known materials: {known}") from None


@dataclass(frozen=True)
class ContactPair:
    """Geometry and materials of one fingertip/object contact.

    Parameters
    ----------
    r1 : float
        Fingertip radius [m], positive.
    r2 : float
        Signed object radius [m]: positive convex, negative concave,
        ``inf`` flat. A concave object must be wider than the fingertip
        (|r2| > r1), otherwise the bodies cannot touch at a point.
    material1, material2 : Material
        Fingertip and object materials.
    """

    r1: float
    r2: float
    material1: Material
    material2: Material

    def __post_init__(self):
        if not (self.r1 > 0.0 and math.isfinite(self.r1)):
            raise ValueError("fingertip radius r1 must be positive and finite")
        if self.r2 == 0.0 or math.isnan(self.r2):
            raise ValueError("object radius r2 must be nonzero (use inf for flat)")
        if self.r2 < 0.0 and not abs(self.r2) > self.r1:
            raise ValueError(
                "concave object radius must exceed the fingertip radius "
                f"(got |r2| = {abs(self.r2):g} <= r1 = {self.r1:g})"
            )

    @property
    def relative_radius(self) -> float:
        """Equivalent radius R_c from the summed curvatures [m]."""
        # 1/inf == 0.0 handles flat objects; validation guarantees the sum > 0
        curvature = 1.0 / self.r1 + 1.0 / self.r2
        return 1.0 / curvature

    @property
    def contact_modulus(self) -> float:
        """Composite plane-strain modulus E_c [Pa]."""
        m1, m2 = self.material1, self.material2
        return 1.0 / ((1.0 - m1.nu**2) / m1.E + (1.0 - m2.nu**2) / m2.E)


@dataclass(frozen=True)
class ContactLoad:
    """Loads carried by one contact.

    Parameters
    ----------
    P : float
        Normal force [N], >= 0.
    Q_x : float
        Tangential force along the contact x axis [N].
    M_z : float
        Spin moment about the contact normal [N m].
    mu : float
        Friction coefficient for the gross-slide guard.
    """

    P: float
    Q_x: float = 0.0
    M_z: float = 0.0
    mu: float = DEFAULT_FRICTION

    def __post_init__(self):
        if not (self.P >= 0.0 and math.isfinite(self.P)):
            raise ValueError("normal force P must be nonnegative and finite")
        if not (self.mu > 0.0 and math.isfinite(self.mu)):
            raise ValueError("friction coefficient mu must be positive")
        if not math.isfinite(self.Q_x):
            raise ValueError("tangential force Q_x must be finite")
        if not math.isfinite(self.M_z):
            raise ValueError("spin moment M_z must be finite")


class NormalSolution(NamedTuple):
    """Patch radius ``a`` [m], approach ``delta`` [m], peak pressure ``q_o``
    [Pa], and secant normal stiffness ``k_n`` [N/m]."""

    a: float
    delta: float
    q_o: float
    k_n: float


class TangentialSolution(NamedTuple):
    """Tangential displacement ``delta_x`` [m] and stiffness ``k_t`` [N/m]."""

    delta_x: float
    k_t: float


class TorsionSolution(NamedTuple):
    """Twist angle ``beta`` [rad] and torsional stiffness ``k_tau`` [N m/rad]."""

    beta: float
    k_tau: float


class StiffnessCoefficients(NamedTuple):
    """The three secant stiffnesses of one contact."""

    k_n: float
    k_t: float
    k_tau: float


@dataclass(frozen=True)
class HertzSolution:
    """Full solution of one contact under a :class:`ContactLoad`."""

    a: float
    delta: float
    q_o: float
    delta_x: float
    beta_angle: float
    k_n: float
    k_t: float
    k_tau: float


def solve_normal(pair: ContactPair, P: float) -> NormalSolution:
    """Solve the normal problem under load ``P``.

    Parameters
    ----------
    pair : ContactPair
    P : float
        Normal force [N], >= 0. At P = 0 the contact degenerates to a point
        and everything is zero.

    Returns
    -------
    NormalSolution
        ``(a, delta, q_o, k_n)``. The secant identity ``k_n * delta == P``
        holds to rounding.
    """
    if not (P >= 0.0 and math.isfinite(P)):
        raise ValueError("normal force P must be nonnegative and finite")
    if P == 0.0:
        return NormalSolution(0.0, 0.0, 0.0, 0.0)
    R_c = pair.relative_radius
    E_c = pair.contact_modulus
    a = (3.0 * P * R_c / (4.0 * E_c)) ** (1.0 / 3.0)
    delta = a * a / R_c
    q_o = 3.0 * P / (2.0 * math.pi * a * a)
    k_n = (16.0 * P * R_c * E_c * E_c / 9.0) ** (1.0 / 3.0)
    return NormalSolution(a, delta, q_o, k_n)


def solve_tangential(
    pair: ContactPair, P: float, Q_x: float, mu: float = DEFAULT_FRICTION
) -> TangentialSolution:
    """Solve the no-slide tangential problem.

    Parameters
    ----------
    pair : ContactPair
    P : float
        Normal force [N], > 0.
    Q_x : float
        Tangential force [N]; must satisfy |Q_x| < mu P, otherwise the whole
        patch slides and :class:`GrossSlideError` is raised.
    mu : float
        Friction coefficient.

    Returns
    -------
    TangentialSolution
        ``(delta_x, k_t)`` with ``delta_x = Q_x / k_t``.
    """
    if not (P > 0.0 and math.isfinite(P)):
        raise ValueError("normal force P must be positive for tangential loading")
    if abs(Q_x) >= mu * P:
        raise GrossSlideError(
            f"|Q_x| = {abs(Q_x):g} N reaches the friction limit mu*P = {mu * P:g} N"
        )
    a = solve_normal(pair, P).a
    m1, m2 = pair.material1, pair.material2
    k_t = 8.0 * a / ((2.0 - m1.nu) / m1.G + (2.0 - m2.nu) / m2.G)
    return TangentialSolution(Q_x / k_t, k_t)


def solve_torsion(pair: ContactPair, P: float, M_z: float) -> TorsionSolution:
    """Solve the torsional (spin) problem about the contact normal.

    Parameters
    ----------
    pair : ContactPair
    P : float
        Normal force [N], > 0 (a point contact carries no moment).
    M_z : float
        Spin moment [N m].

    Returns
    -------
    TorsionSolution
        ``(beta, k_tau)`` with ``beta = M_z / k_tau``.
    """
    if not (P > 0.0 and math.isfinite(P)):
        raise ValueError("normal force P must be positive for torsional loading")
    if not math.isfinite(M_z):
        raise ValueError("spin moment M_z must be finite")
    a = solve_normal(pair, P).a
    m1, m2 = pair.material1, pair.material2
    k_tau = (16.0 / 3.0) * a**3 / (1.0 / m1.G + 1.0 / m2.G)
    return TorsionSolution(M_z / k_tau, k_tau)


def stiffness_coefficients(pair: ContactPair, P: float) -> StiffnessCoefficients:
    """All three secant stiffnesses at normal load ``P`` (zeros at P = 0)."""
    if not (P >= 0.0 and math.isfinite(P)):
        raise ValueError("normal force P must be nonnegative and finite")
    if P == 0.0:
        return StiffnessCoefficients(0.0, 0.0, 0.0)
    k_n = solve_normal(pair, P).k_n
    k_t = solve_tangential(pair, P, 0.0).k_t
    k_tau = solve_torsion(pair, P, 0.0).k_tau
    return StiffnessCoefficients(k_n, k_t, k_tau)


def hertz_solution(pair: ContactPair, load: ContactLoad) -> HertzSolution:
    """Solve the normal, tangential, and torsional problems together."""
    if load.P == 0.0:
        if load.Q_x != 0.0:
            raise GrossSlideError("tangential force requires a positive normal force")
        if load.M_z != 0.0:
            raise ValueError("spin moment requires a positive normal force")
        return HertzSolution(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    a, delta, q_o, k_n = solve_normal(pair, load.P)
    delta_x, k_t = solve_tangential(pair, load.P, load.Q_x, load.mu)
    beta, k_tau = solve_torsion(pair, load.P, load.M_z)
    return HertzSolution(a, delta, q_o, delta_x, beta, k_n, k_t, k_tau)


def normal_pressure_at(sol: HertzSolution, r: float) -> float:
    """Hertzian pressure ``q_o sqrt(1 - r^2/a^2)`` at radius ``r`` [Pa].

    ``r`` must lie inside the patch, 0 <= r <= a.
    """
    if not 0.0 <= r <= sol.a:
        raise ValueError(f"r = {r:g} m lies outside the contact patch [0, {sol.a:g}]")
    if sol.a == 0.0:
        return 0.0
    return sol.q_o * math.sqrt(1.0 - (r / sol.a) ** 2)


def tangential_traction_at(sol: HertzSolution, Q_x: float, r: float) -> float:
    """Stick-regime tangential traction at radius ``r`` [Pa].

    The distribution is ``q0 (1 - r^2/a^2)^(-1/2)`` with ``q0 = Q_x /
    (2 pi a^2)``; it integrates back to ``Q_x`` over the patch and is
    singular at the edge, so ``r`` must satisfy 0 <= r < a.
    """
    if sol.a == 0.0:
        raise ValueError("no contact patch at zero normal load")
    if not 0.0 <= r < sol.a:
        raise ValueError(
            f"r = {r:g} m must lie strictly inside the contact patch [0, {sol.a:g})"
        )
    q0 = Q_x / (2.0 * math.pi * sol.a**2)
    return q0 / math.sqrt(1.0 - (r / sol.a) ** 2)


def torsional_traction_at(sol: HertzSolution, M_z: float, r: float) -> float:
    """Circumferential traction of a spin moment at radius ``r`` [Pa].

    The distribution is ``q0 r (a^2 - r^2)^(-1/2)``; the constant ``q0 =
    3 M_z / (4 pi a^3)`` is fixed by requiring the tractions' moment about
    the patch centre to integrate back to ``M_z``. Singular at the edge,
    so 0 <= r < a.
    """
    if sol.a == 0.0:
        raise ValueError("no contact patch at zero normal load")
    if not 0.0 <= r < sol.a:
        raise ValueError(
            f"r = {r:g} m must lie strictly inside the contact patch [0, {sol.a:g})"
        )
    q0 = 3.0 * M_z / (4.0 * math.pi * sol.a**3)
    return q0 * r / math.sqrt(sol.a**2 - r**2)
