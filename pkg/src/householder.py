"""
Elliptic Householder Reflections
H_v = I - 2 v v^t Omega / (v^t Omega v) in any dimension, and rotations as two reflections
"""
from typing import Sequence

import numpy as np

from src.bmat import BMatrix
from src.errors import AntipodalInput, NormMismatch, ZeroVector
from src.espace import EllipticSpace, EVector, inner, norm
from src.utils import DEFAULT_TOLERANCE, create_class_logger

logger = create_class_logger('Householder')


def householder_matrix(s: EllipticSpace, v: Sequence[float]) -> BMatrix:
    """
    Elliptical reflection about the hyperplane B(v, x) = 0

    Args:
        s: Space of any dimension n >= 2
        v: Nonzero normal vector

    Returns:
        H_v; B-symmetric, B-orthogonal, det -1, H_v^2 = I
    """
    vv = s.vector(v)
    norm_sq = inner(s, vv, vv)
    if norm_sq == 0.0:
        raise ZeroVector("reflection needs a nonzero normal vector")
    entries = np.eye(s.n) - 2.0 * np.outer(vv, vv * s.coefficients) / norm_sq
    return BMatrix(entries, s)


def reflect(s: EllipticSpace, v: Sequence[float], x: Sequence[float]) -> EVector:
    """Reflect x about the hyperplane B-orthogonal to v."""
    return householder_matrix(s, v) @ x


def _check_equal_norms(s: EllipticSpace, x, y, tol: float):
    nx = norm(s, x)
    ny = norm(s, y)
    if nx == 0.0 or ny == 0.0:
        raise ZeroVector("both vectors must be nonzero")
    if abs(nx - ny) > tol * max(nx, ny):
        raise NormMismatch(f"|x|_B = {nx!r} but |y|_B = {ny!r}")
    return nx


def reflection_between(s: EllipticSpace, x: Sequence[float], y: Sequence[float],
                       tol: float = DEFAULT_TOLERANCE) -> BMatrix:
    """
    Single reflection sending x to y (normal x - y)

    Args:
        s: Space
        x, y: Nonzero vectors of equal B-norm, x != y

    Returns:
        H_{x-y}
    """
    _check_equal_norms(s, x, y, tol)
    return householder_matrix(s, s.vector(x) - s.vector(y))


def rotation_between(s: EllipticSpace, x: Sequence[float], y: Sequence[float],
                     tol: float = DEFAULT_TOLERANCE) -> BMatrix:
    """
    Rotation sending x to y as the product of two reflections

    H_{x+y} sends x to -y and H_y sends -y back to y.

    Args:
        s: Space
        x, y: Nonzero vectors of equal B-norm (relative tolerance tol)
        tol: Norm-equality and antipodality tolerance

    Returns:
        R = H_y H_{x+y}, a B-rotation with R x = y
    """
    nx = _check_equal_norms(s, x, y, tol)
    total = s.vector(x) + s.vector(y)
    if norm(s, total) < tol * nx:
        raise AntipodalInput("y = -x: the mirror x + y degenerates")
    return householder_matrix(s, y) @ householder_matrix(s, total)
