"""Exact 2x2 spin-1/2 matrix algebra.

Pauli matrices, axis-angle SU(2) rotations exp(i theta/2 n.sigma), and the
single-matrix time-reversal symmetry test sigma_y M* sigma_y == M. Everything
here is plain numpy at double precision; values are immutable after
construction and all functions are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)
IDENTITY_2 = np.eye(2, dtype=complex)

_AXIS_NORM_TOL = 1e-12


@dataclass(frozen=True)
class LinkRotation:
    """Axis-angle description of the spin rotation carried by one hopping link.

    theta is in radians and must lie in (-2*pi, 2*pi]; axis must be a real
    unit 3-vector (checked to 1e-12).
    """

    theta: float
    axis: tuple[float, float, float]

    def __post_init__(self):
        theta = float(self.theta)
        axis = tuple(float(a) for a in self.axis)
        if not math.isfinite(theta):
            raise ValueError(f"rotation angle must be finite, got {theta!r}")
        if not (-2.0 * math.pi < theta <= 2.0 * math.pi):
            raise ValueError(f"rotation angle {theta} outside (-2*pi, 2*pi]")
        if len(axis) != 3 or not all(math.isfinite(a) for a in axis):
            raise ValueError(f"axis must be a finite 3-vector, got {self.axis!r}")
        norm = math.sqrt(sum(a * a for a in axis))
        if abs(norm - 1.0) > _AXIS_NORM_TOL:
            raise ValueError(f"axis must have unit norm (|axis| = {norm})")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "axis", axis)


def su2_from_axis_angle(rot: LinkRotation) -> np.ndarray:
    """Return exp(i theta/2 n.sigma) = cos(theta/2) I + i sin(theta/2) n.sigma.

    The result is unitary with determinant 1.
    """
    half = 0.5 * rot.theta
    n_dot_sigma = sum(a * s for a, s in zip(rot.axis, PAULI))
    return math.cos(half) * IDENTITY_2 + 1.0j * math.sin(half) * n_dot_sigma


def axis_angle_from_su2(m: np.ndarray, tol: float = 1e-10) -> LinkRotation:
    """Recover an axis-angle form from an SU(2) matrix.

    Inverse of su2_from_axis_angle up to the usual double cover: theta is
    returned in [0, 2*pi] (identity maps to theta=0, -I to theta=2*pi, both
    with axis z). Raises if m is not SU(2) within tol.
    """
    m = np.asarray(m, dtype=complex)
    if m.shape != (2, 2) or not is_unitary(m, tol) or abs(np.linalg.det(m) - 1.0) > tol:
        raise ValueError("matrix is not SU(2) within tolerance")
    a0 = m.trace().real / 2.0
    vec = np.array([np.trace(s @ m) / 2.0j for s in PAULI])
    if np.abs(vec.imag).max() > 1e-8:
        raise ValueError("matrix is not of the form cos + i sin n.sigma")
    vec = vec.real
    s = np.linalg.norm(vec)
    theta = 2.0 * math.atan2(s, a0)
    if s < 1e-14:
        # +-I: the axis is arbitrary.
        return LinkRotation(theta=theta, axis=(0.0, 0.0, 1.0))
    return LinkRotation(theta=theta, axis=tuple(vec / s))


def is_unitary(m: np.ndarray, tol: float = 1e-10) -> bool:
    m = np.asarray(m, dtype=complex)
    return bool(np.abs(m.conj().T @ m - np.eye(m.shape[0])).max() < tol)


def time_reversal_symmetric(m: np.ndarray, tol: float) -> bool:
    """True iff m commutes with the time-reversal operation -i sigma_y K.

    Equivalent to sigma_y m* sigma_y == m within tol (entrywise max norm).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = np.asarray(m, dtype=complex)
    return bool(np.abs(SIGMA_Y @ m.conj() @ SIGMA_Y - m).max() < tol)


def is_scalar_multiple_of_identity(m: np.ndarray, tol: float) -> bool:
    """True iff m = c*I for some complex c, within tol (entrywise max norm).

    c is taken as the mean of the diagonal.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = np.asarray(m, dtype=complex)
    c = 0.5 * (m[0, 0] + m[1, 1])
    return bool(np.abs(m - c * IDENTITY_2).max() < tol)
