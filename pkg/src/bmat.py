"""
B-structured matrices
B-symmetric / B-skew constructors, O_B(n) classification and the Euclidean conjugation oracle
"""
from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Union

import numpy as np

from src.errors import DimensionMismatch, SpaceMismatch
from src.espace import EllipticSpace, EVector
from src.utils import DEFAULT_TOLERANCE, as_vector, max_abs, create_class_logger

logger = create_class_logger('BMatrix')


@dataclass(frozen=True, eq=False)
class BMatrix:
    """
    Real n x n matrix tagged with the space it acts on

    Attributes:
        entries: Row-major entries (read-only copy)
        space: The EllipticSpace whose scalar product the predicates use
    """
    entries: np.ndarray
    space: EllipticSpace

    def __post_init__(self):
        arr = np.array(self.entries, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise DimensionMismatch(f"matrix must be square, got shape {arr.shape}")
        if arr.shape[0] != self.space.n:
            raise DimensionMismatch(f"{arr.shape[0]}x{arr.shape[0]} matrix in {self.space.n}-dimensional space")
        arr.setflags(write=False)
        object.__setattr__(self, 'entries', arr)

    @property
    def n(self) -> int:
        return self.space.n

    def __matmul__(self, other):
        if isinstance(other, BMatrix):
            if other.space != self.space:
                raise SpaceMismatch(f"{self.space.a} vs {other.space.a}")
            return BMatrix(self.entries @ other.entries, self.space)
        return as_vector(self.entries @ self.space.vector(other))

    def apply(self, v: Sequence[float]) -> EVector:
        return self @ v

    def tolist(self) -> list:
        return self.entries.tolist()

    # Predicates (all residuals use the max-absolute-entry norm)

    def orthogonality_residual(self) -> float:
        """|M^t Omega M - Omega|_inf"""
        m = self.entries
        return max_abs(m.T @ self.space.omega @ m - self.space.omega)

    def symmetry_residual(self) -> float:
        """|M^t Omega - Omega M|_inf"""
        m = self.entries
        return max_abs(m.T @ self.space.omega - self.space.omega @ m)

    def skew_residual(self) -> float:
        """|M^t Omega + Omega M|_inf"""
        m = self.entries
        return max_abs(m.T @ self.space.omega + self.space.omega @ m)

    def is_b_orthogonal(self, tol: float = DEFAULT_TOLERANCE) -> bool:
        return self.orthogonality_residual() <= tol

    def is_b_symmetric(self, tol: float = DEFAULT_TOLERANCE) -> bool:
        return self.symmetry_residual() <= tol

    def is_b_skew(self, tol: float = DEFAULT_TOLERANCE) -> bool:
        return self.skew_residual() <= tol

    def det(self) -> float:
        return det(self.entries)


class MatrixClass(str, Enum):
    """Kind of a matrix with respect to O_B(n)."""
    ROTATION = 'Rotation'
    REFLECTION = 'Reflection'
    NOT_B_ORTHOGONAL = 'NotBOrthogonal'


def identity(s: EllipticSpace) -> BMatrix:
    return BMatrix(np.eye(s.n), s)


def det(m: Union[np.ndarray, Sequence[Sequence[float]]]) -> float:
    """
    Determinant, closed form for n <= 3 and LU with partial pivoting above

    Args:
        m: Square matrix

    Returns:
        det(m)
    """
    a = np.asarray(m, dtype=np.float64)
    n = a.shape[0]
    if n == 1:
        return float(a[0, 0])
    if n == 2:
        return float(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])
    if n == 3:
        return float(
            a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
            - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
            + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0])
        )
    return float(np.linalg.det(a))


def _params(s: EllipticSpace, params) -> np.ndarray:
    p = np.asarray(params, dtype=np.float64)
    if p.shape != (s.n, s.n):
        raise DimensionMismatch(f"parameters must be {s.n}x{s.n}, got shape {p.shape}")
    return p


def sym_from_params(s: EllipticSpace, params) -> BMatrix:
    """
    B-symmetric matrix with entries delta * a_ij / a_i

    Args:
        s: Space
        params: Symmetric n x n array of free reals a_ij = a_ji

    Returns:
        S with S^t Omega = Omega S
    """
    p = _params(s, params)
    entries = s.delta * p / s.coefficients[:, None]
    return BMatrix(entries, s)


def skew_from_params(s: EllipticSpace, params) -> BMatrix:
    """
    B-skew-symmetric matrix built from the strictly lower parameters

    Args:
        s: Space
        params: Symmetric n x n array; only entries below the diagonal are read

    Returns:
        T with t_ij = delta a_ij / a_i (i > j), -delta a_ji / a_i (i < j), zero diagonal
    """
    p = _params(s, params)
    lower = np.tril(p, k=-1)
    signed = lower - lower.T
    entries = s.delta * signed / s.coefficients[:, None]
    return BMatrix(entries, s)


def canonical_skew_2d(s: EllipticSpace) -> BMatrix:
    """Plane skew matrix [[0, -sqrt(a2/a1)], [sqrt(a1/a2), 0]]; its square is -I."""
    if s.n != 2:
        raise DimensionMismatch(f"canonical 2D skew matrix needs n=2, got n={s.n}")
    return skew_from_params(s, [[0.0, 1.0], [1.0, 0.0]])


def skew_from_axis(s: EllipticSpace, u: Sequence[float]) -> BMatrix:
    """
    Skew matrix of the elliptical vector product with u

    Args:
        s: 3-dimensional space
        u: Axis vector (any length)

    Returns:
        T such that T v = cross3(s, u, v) for every v
    """
    if s.n != 3:
        raise DimensionMismatch(f"skew_from_axis needs a 3-dimensional space, got n={s.n}")
    u1, u2, u3 = s.vector(u)
    a1, a2, a3 = s.a
    entries = s.delta * np.array([
        [0.0, -u3 / a1, u2 / a1],
        [u3 / a2, 0.0, -u1 / a2],
        [-u2 / a3, u1 / a3, 0.0]
    ])
    return BMatrix(entries, s)


def as_bmatrix(s: EllipticSpace, m) -> BMatrix:
    if isinstance(m, BMatrix):
        if m.space != s:
            raise SpaceMismatch(f"matrix belongs to {m.space.a}, not {s.a}")
        return m
    return BMatrix(m, s)


def classify(s: EllipticSpace, m, tol: float = DEFAULT_TOLERANCE) -> MatrixClass:
    """
    Classify a matrix as B-rotation, B-reflection or neither

    Args:
        s: Space
        m: Square matrix (BMatrix or array)
        tol: Tolerance for the orthogonality residual and the determinant

    Returns:
        MatrixClass (total: never raises for a square matrix of matching size)
    """
    bm = as_bmatrix(s, m)
    if bm.orthogonality_residual() > tol:
        return MatrixClass.NOT_B_ORTHOGONAL
    d = bm.det()
    if abs(d - 1.0) <= tol:
        return MatrixClass.ROTATION
    if abs(d + 1.0) <= tol:
        return MatrixClass.REFLECTION
    return MatrixClass.NOT_B_ORTHOGONAL


def euclidean_conjugate(s: EllipticSpace, m) -> BMatrix:
    """
    Conjugate by D = diag(sqrt(a_i)): returns D M D^-1

    A B-orthogonal M becomes orthogonal in the classical sense, which gives
    an independent check on every construction in this package.
    """
    bm = as_bmatrix(s, m)
    d = s.sqrt_a
    return BMatrix(d[:, None] * bm.entries / d[None, :], s)
