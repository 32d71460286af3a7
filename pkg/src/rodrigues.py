"""
Rodrigues Rotations
Elliptical rotations generated by exp(theta T) in 2D and 3D, and axis/angle recovery
"""
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from src.bmat import (BMatrix, MatrixClass, classify, skew_from_axis,
                      euclidean_conjugate, as_bmatrix)
from src.errors import AxisNotUnit, DimensionMismatch, NotARotation, NotSkew
from src.espace import EllipticSpace, EVector, norm
from src.utils import (DEFAULT_TOLERANCE, AXIS_UNIT_TOLERANCE, DEFAULT_SERIES_TERMS,
                       as_vector, max_abs, create_class_logger)

logger = create_class_logger('Rodrigues')


@dataclass(frozen=True)
class AxisAngle:
    """
    Axis and signed angle of a 3D elliptical rotation

    Attributes:
        axis: B-unit rotation axis (zero vector when degenerate)
        angle: Radians in (-pi, pi]
        degenerate: True when the angle is ~0 and the axis is meaningless
    """
    axis: EVector
    angle: float
    degenerate: bool = False


def normalize_angle(theta: float) -> float:
    """Map an angle into (-pi, pi]."""
    wrapped = math.remainder(theta, 2.0 * math.pi)
    if wrapped <= -math.pi:
        wrapped += 2.0 * math.pi
    return wrapped


def rotate2d(s: EllipticSpace, theta: float) -> BMatrix:
    """
    Elliptical rotation along the ellipse a1 x^2 + a2 y^2 = const

    Args:
        s: 2-dimensional space
        theta: Elliptical angle in radians

    Returns:
        [[cos, -sqrt(a2/a1) sin], [sqrt(a1/a2) sin, cos]]
    """
    if s.n != 2:
        raise DimensionMismatch(f"rotate2d needs a 2-dimensional space, got n={s.n}")
    a1, a2 = s.a
    ratio = math.sqrt(a2 / a1)
    c = math.cos(theta)
    sn = math.sin(theta)
    return BMatrix(np.array([[c, -ratio * sn], [sn / ratio, c]]), s)


def _unit_axis(s: EllipticSpace, u: Sequence[float], axis_tol: float) -> EVector:
    axis = s.vector(u)
    length = norm(s, axis)
    if abs(length - 1.0) > axis_tol:
        raise AxisNotUnit(f"|u|_B = {length!r}; normalise the axis first")
    return as_vector(axis / length)


def rotation_from_cs(s: EllipticSpace, u: Sequence[float], c: float, sn: float) -> BMatrix:
    """
    Rodrigues matrix from the cosine and sine of the angle

    R = c I + (1 - c) u u^t Omega + sn T_u for a B-unit axis u; this is the
    matrix written out entry by entry in the rotation algorithm.
    """
    if s.n != 3:
        raise DimensionMismatch(f"Rodrigues rotation needs a 3-dimensional space, got n={s.n}")
    axis = s.vector(u)
    t = skew_from_axis(s, axis).entries
    projector = np.outer(axis, axis * s.coefficients)
    entries = c * np.eye(3) + (1.0 - c) * projector + sn * t
    return BMatrix(entries, s)


def rodrigues3d(s: EllipticSpace, u: Sequence[float], theta: float,
                axis_tol: float = AXIS_UNIT_TOLERANCE) -> BMatrix:
    """
    Elliptical rotation on the ellipsoid about a B-unit axis

    Args:
        s: 3-dimensional space
        u: Axis with |u|_B = 1 (within axis_tol; renormalised before use)
        theta: Elliptical angle in radians
        axis_tol: Allowed deviation of |u|_B from one

    Returns:
        R = I + sin(theta) T + (1 - cos(theta)) T^2, with R u = u
    """
    axis = _unit_axis(s, u, axis_tol)
    return rotation_from_cs(s, axis, math.cos(theta), math.sin(theta))


def exp_series(s: EllipticSpace, t, theta: float, terms: int = DEFAULT_SERIES_TERMS,
               tol: float = DEFAULT_TOLERANCE) -> BMatrix:
    """
    Truncated power series of exp(theta T)

    Sums theta^k T^k / k! for k = 0..terms. Serves as an oracle for the
    closed forms.

    Args:
        s: Space
        t: B-skew matrix
        theta: Angle in radians
        terms: Highest power kept
        tol: Skewness tolerance (scaled by the size of T)

    Returns:
        Truncated exp(theta T)
    """
    tm = as_bmatrix(s, t)
    scale = max(1.0, max_abs(tm.entries) * max(s.a))
    if tm.skew_residual() > tol * scale:
        raise NotSkew(f"T^t Omega + Omega T residual {tm.skew_residual():.3e}")

    step = theta * tm.entries
    term = np.eye(s.n)
    total = np.eye(s.n)
    for k in range(1, terms + 1):
        term = term @ step / k
        total = total + term
    return BMatrix(total, s)


def axis_angle_of(s: EllipticSpace, r, tol: float = DEFAULT_TOLERANCE) -> AxisAngle:
    """
    Recover axis and angle of a 3D elliptical rotation

    The axis is the eigenvector for eigenvalue 1, taken from the null space
    of D R D^-1 - I as the largest cross product of two of its rows. The
    axis is oriented so that the angle lies in [0, pi]; at a half turn the
    first nonzero coordinate of the axis is made positive.

    Args:
        s: 3-dimensional space
        r: Rotation matrix
        tol: Classification tolerance

    Returns:
        AxisAngle; degenerate (zero axis, angle 0) for the identity
    """
    if s.n != 3:
        raise DimensionMismatch(f"axis_angle_of needs a 3-dimensional space, got n={s.n}")
    rm = as_bmatrix(s, r)
    kind = classify(s, rm, tol)
    if kind != MatrixClass.ROTATION:
        raise NotARotation(f"matrix classifies as {kind.value}")

    rc = euclidean_conjugate(s, rm).entries
    cos_theta = min(1.0, max(-1.0, (np.trace(rc) - 1.0) / 2.0))
    m = rc - np.eye(3)
    if max_abs(m) <= tol:
        logger.debug("Rotation is the identity, axis undefined")
        return AxisAngle(axis=as_vector(np.zeros(3)), angle=0.0, degenerate=True)

    candidates = [np.cross(m[0], m[1]), np.cross(m[0], m[2]), np.cross(m[1], m[2])]
    w = max(candidates, key=lambda c: float(np.dot(c, c)))
    w = w / np.linalg.norm(w)

    vee = np.array([rc[2, 1] - rc[1, 2], rc[0, 2] - rc[2, 0], rc[1, 0] - rc[0, 1]])
    sin_theta = float(np.dot(w, vee)) / 2.0
    if abs(sin_theta) <= tol:
        # Half turn: both orientations reproduce R
        first = next(x for x in w if abs(x) > tol)
        if first < 0:
            w = -w
        sin_theta = abs(sin_theta)
    elif sin_theta < 0:
        w = -w
        sin_theta = -sin_theta

    angle = math.atan2(sin_theta, cos_theta)
    axis = w / s.sqrt_a
    return AxisAngle(axis=as_vector(axis), angle=angle, degenerate=False)
