"""
Cayley Rotations
Elliptical rotations as Cayley transforms (I + T)(I - T)^-1 of B-skew matrices
"""
import math
from typing import Sequence

import numpy as np

from src.bmat import BMatrix, MatrixClass, classify, skew_from_axis, as_bmatrix, det
from src.errors import DimensionMismatch, HalfTurn, NotARotation, NotSkew, SingularResolvent
from src.espace import EllipticSpace, inner
from src.utils import DEFAULT_TOLERANCE, max_abs, create_class_logger

logger = create_class_logger('Cayley')


def cayley_map(s: EllipticSpace, t, tol: float = DEFAULT_TOLERANCE) -> BMatrix:
    """
    Cayley transform of a B-skew matrix

    Args:
        s: Space
        t: B-skew matrix T
        tol: Skewness tolerance (scaled by the size of T)

    Returns:
        (I + T)(I - T)^-1, a B-rotation
    """
    tm = as_bmatrix(s, t)
    scale = max(1.0, max_abs(tm.entries) * max(s.a))
    if tm.skew_residual() > tol * scale:
        raise NotSkew(f"T^t Omega + Omega T residual {tm.skew_residual():.3e}")

    eye = np.eye(s.n)
    # (I + T) and (I - T)^-1 commute, so one linear solve gives the product
    try:
        entries = np.linalg.solve(eye - tm.entries, eye + tm.entries)
    except np.linalg.LinAlgError as e:
        # Purely imaginary spectrum makes I - T invertible; reaching here means bad input
        raise SingularResolvent(f"I - T is singular: {e}")
    return BMatrix(entries, s)


def cayley_closed_form(s: EllipticSpace, u: Sequence[float]) -> BMatrix:
    """
    Closed form of the Cayley rotation for T = skew_from_axis(u)

    Args:
        s: 3-dimensional space
        u: Any vector; its B-norm sets the angle 2 atan(|u|_B)

    Returns:
        I + 2 (T + T^2) / (1 + |u|_B^2), fixing u
    """
    if s.n != 3:
        raise DimensionMismatch(f"cayley_closed_form needs a 3-dimensional space, got n={s.n}")
    t = skew_from_axis(s, u).entries
    norm_sq = inner(s, u, u)
    entries = np.eye(3) + 2.0 * (t + t @ t) / (1.0 + norm_sq)
    return BMatrix(entries, s)


def cayley_angle(s: EllipticSpace, u: Sequence[float]) -> float:
    """
    Elliptical angle of the Cayley rotation generated by u

    The angle is signed so that rodrigues3d(u / |u|_B, angle) equals
    cayley_closed_form(u); with that orientation it is never negative.
    For the principal value of the tangent formula see cayley_tangent_angle.

    Returns:
        atan2(2 |u|_B, 1 - |u|_B^2) = 2 atan(|u|_B), in [0, pi)
    """
    if s.n != 3:
        raise DimensionMismatch(f"cayley_angle needs a 3-dimensional space, got n={s.n}")
    length = math.sqrt(inner(s, u, u))
    return math.atan2(2.0 * length, 1.0 - length * length)


def cayley_tangent_angle(s: EllipticSpace, u: Sequence[float]) -> float:
    """
    Principal value of atan(2 |u|_B / (1 - |u|_B^2))

    This is the number the tangent formula yields when read on its own; it
    agrees with cayley_angle modulo pi. At |u|_B = 1 it returns pi/2.
    """
    if s.n != 3:
        raise DimensionMismatch(f"cayley_tangent_angle needs a 3-dimensional space, got n={s.n}")
    length = math.sqrt(inner(s, u, u))
    denominator = 1.0 - length * length
    if denominator == 0.0:
        return math.pi / 2.0
    return math.atan(2.0 * length / denominator)


def inverse_cayley(s: EllipticSpace, r, tol: float = DEFAULT_TOLERANCE) -> BMatrix:
    """
    Inverse of the Cayley map: T = (R - I)(R + I)^-1

    Args:
        s: Space
        r: B-rotation without eigenvalue -1
        tol: Classification and half-turn tolerance

    Returns:
        B-skew T with cayley_map(T) = R
    """
    rm = as_bmatrix(s, r)
    kind = classify(s, rm, tol)
    if kind != MatrixClass.ROTATION:
        raise NotARotation(f"matrix classifies as {kind.value}")

    eye = np.eye(s.n)
    resolvent = rm.entries + eye
    if abs(det(resolvent)) <= tol:
        raise HalfTurn("R has eigenvalue -1; a half turn has no Cayley parameter")
    entries = np.linalg.solve(resolvent, rm.entries - eye)
    return BMatrix(entries, s)
