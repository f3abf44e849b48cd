"""Independent reference computations used by the tests.

These deliberately avoid the library's own solution paths: the sphere
contact oracle is a closed form (no Newton iteration), and the eigenvalue
oracle goes through the characteristic polynomial and a companion-matrix
root finder (no symmetric Jacobi sweeps).
"""

from __future__ import annotations

import math

import numpy as np


def sphere_contact_oracle(f, m, radius):
    """Closed-form contact solution on a sphere of the given radius.

    For a contact at c = radius*n with outward unit normal n, force f, and
    spin moment sigma about n, the measured moment is m = radius*(n x f)
    + sigma*n. Eliminating n against the unit-norm constraint leaves a
    quadratic in x = sigma**2,

        x**2 + (radius**2*F - M)*x - radius**2*D**2 = 0,

    with F = |f|^2, M = |m|^2, D = f.m, whose single nonnegative root fixes
    |sigma|; inverting (sigma*I - radius*[f]_x) recovers n for each sign.
    Returns (sigma, n, c) for the compressive branch (f.n < 0) of smallest
    |sigma|, or raises ValueError when no compressive branch exists.
    """
    f = np.asarray(f, dtype=float)
    m = np.asarray(m, dtype=float)
    F = float(f @ f)
    M = float(m @ m)
    D = float(f @ m)
    if F <= 0.0:
        raise ValueError("zero force")
    R = float(radius)

    b = R * R * F - M
    c_term = R * R * D * D
    # stable nonnegative quadratic root: x = (-b + sqrt(b^2 + 4c)) / 2
    disc = math.sqrt(b * b + 4.0 * c_term)
    x = 0.5 * (disc - b) if b <= 0.0 else (2.0 * c_term) / (b + disc)

    candidates = []
    if x > 0.0:
        for sigma in (math.sqrt(x), -math.sqrt(x)):
            n = (sigma * sigma * m + sigma * R * np.cross(f, m) + R * R * D * f) / (
                sigma * (sigma * sigma + R * R * F)
            )
            candidates.append((sigma, n))
    else:
        # sigma = 0 needs D = 0; then n = (f x m)/(R F) + g/F * f with |n| = 1
        perp = np.cross(f, m) / (R * F)
        slack = 1.0 - float(perp @ perp)
        if slack >= 0.0:
            g = math.sqrt(slack * F)
            for sign in (1.0, -1.0):
                candidates.append((0.0, perp + sign * g * f / F))

    compressive = [(s, n) for s, n in candidates if float(f @ n) < 0.0]
    if not compressive:
        raise ValueError("no compressive contact for this wrench")
    sigma, n = min(compressive, key=lambda sn: abs(sn[0]))
    n = n / float(np.linalg.norm(n))
    return sigma, n, R * n


def char_poly_coefficients(A):
    """Monic characteristic polynomial coefficients of a square matrix,
    highest degree first, by the Faddeev-LeVerrier recursion."""
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    coeffs = np.zeros(n + 1)
    coeffs[0] = 1.0
    Mk = np.zeros_like(A)
    for k in range(1, n + 1):
        Mk = A @ Mk + coeffs[k - 1] * np.eye(n)
        coeffs[k] = -np.trace(A @ Mk) / k
    return coeffs


def eigenvalues_by_char_poly(A):
    """Eigenvalues of a real symmetric matrix via companion-matrix roots of
    its characteristic polynomial, sorted ascending."""
    roots = np.roots(char_poly_coefficients(A))
    return np.sort(roots.real)
