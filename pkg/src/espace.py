"""
Elliptic Scalar Product Space
Inner product, norm, angle and vector products of B(u,w) = sum(a_i u_i w_i)
"""
import math
from dataclasses import dataclass, field
from typing import Sequence, List

import numpy as np

from src.errors import (NonPositiveCoefficient, DimensionTooSmall, DimensionMismatch,
                        ZeroVector, WrongVectorCount)
from src.utils import DEFAULT_TOLERANCE, as_vector, create_class_logger

logger = create_class_logger('EllipticSpace')

# Coordinates of a vector in the standard basis, interpreted in some EllipticSpace
EVector = np.ndarray


@dataclass(frozen=True)
class EllipticSpace:
    """
    Positive definite scalar product space R^n_{a1..an}

    Attributes:
        a: Ellipsoid coefficients a_1..a_n, all strictly positive
    """
    a: tuple
    _omega: np.ndarray = field(init=False, repr=False, compare=False)
    _delta: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        coefficients = tuple(float(x) for x in self.a)
        if len(coefficients) < 2:
            raise DimensionTooSmall(f"need at least 2 coefficients, got {len(coefficients)}")
        for i, value in enumerate(coefficients):
            if not value > 0 or not math.isfinite(value):
                raise NonPositiveCoefficient(f"a[{i}] = {value} is not a positive real")

        omega = np.diag(coefficients)
        omega.setflags(write=False)
        object.__setattr__(self, 'a', coefficients)
        object.__setattr__(self, '_omega', omega)
        object.__setattr__(self, '_delta', math.sqrt(math.prod(coefficients)))

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def omega(self) -> np.ndarray:
        """Diagonal associated matrix diag(a)."""
        return self._omega

    @property
    def delta(self) -> float:
        """Scalar product constant sqrt(det omega)."""
        return self._delta

    @property
    def coefficients(self) -> np.ndarray:
        return np.asarray(self.a, dtype=np.float64)

    @property
    def sqrt_a(self) -> np.ndarray:
        """Diagonal of D = diag(sqrt(a_i)), the map onto Euclidean coordinates."""
        return np.sqrt(self.coefficients)

    def vector(self, coords: Sequence[float]) -> EVector:
        """
        Validate coordinates against this space

        Args:
            coords: n real coordinates

        Returns:
            Read-only float64 vector
        """
        vec = as_vector(coords)
        if vec.ndim != 1 or vec.shape[0] != self.n:
            raise DimensionMismatch(f"vector of shape {vec.shape} used in {self.n}-dimensional space")
        return vec


def make_space(a: Sequence[float]) -> EllipticSpace:
    """
    Build the elliptic scalar product space for coefficients a

    Args:
        a: Positive coefficients, at least two

    Returns:
        EllipticSpace with omega = diag(a), delta = sqrt(prod(a))
    """
    space = EllipticSpace(tuple(a))
    logger.debug(f"Space a={space.a}, delta={space.delta}")
    return space


def inner(s: EllipticSpace, u: Sequence[float], w: Sequence[float]) -> float:
    """B-inner product sum(a_i u_i w_i)."""
    uu = s.vector(u)
    ww = s.vector(w)
    return float(np.dot(s.coefficients * uu, ww))


def norm(s: EllipticSpace, u: Sequence[float]) -> float:
    """B-norm sqrt(B(u,u))."""
    return math.sqrt(max(inner(s, u, u), 0.0))


def unit(s: EllipticSpace, u: Sequence[float]) -> EVector:
    """
    Scale u to B-norm one

    Raises:
        ZeroVector: u is the zero vector
    """
    length = norm(s, u)
    if length == 0.0:
        raise ZeroVector("cannot normalise the zero vector")
    return as_vector(s.vector(u) / length)


def cos_angle(s: EllipticSpace, u: Sequence[float], w: Sequence[float]) -> float:
    """
    Cosine of the elliptical angle between u and w

    Args:
        s: Space
        u, w: Nonzero vectors

    Returns:
        B(u,w) / (|u|_B |w|_B) clamped to [-1, 1]
    """
    nu = norm(s, u)
    nw = norm(s, w)
    if nu == 0.0 or nw == 0.0:
        raise ZeroVector("angle is undefined for the zero vector")
    value = inner(s, u, w) / (nu * nw)
    return min(1.0, max(-1.0, value))


def cross3(s: EllipticSpace, u: Sequence[float], v: Sequence[float]) -> EVector:
    """
    Elliptical vector product in R^3_{a1,a2,a3}

    Returns:
        delta * ((u2 v3 - u3 v2)/a1, (u3 v1 - u1 v3)/a2, (u1 v2 - u2 v1)/a3),
        B-orthogonal to both inputs
    """
    if s.n != 3:
        raise DimensionMismatch(f"cross3 needs a 3-dimensional space, got n={s.n}")
    uu = s.vector(u)
    vv = s.vector(v)
    return as_vector(s.delta * np.cross(uu, vv) / s.coefficients)


def cross_n(s: EllipticSpace, vs: Sequence[Sequence[float]]) -> EVector:
    """
    Elliptical vector product of n-1 vectors in R^n

    The formal determinant has first row (e_1/a_1, ..., e_n/a_n) followed by
    the input vectors; it is expanded along that first row with alternating
    signs and scaled by delta.

    Args:
        s: n-dimensional space
        vs: Exactly n-1 vectors

    Returns:
        Vector B-orthogonal to every input (zero for dependent inputs)
    """
    if len(vs) != s.n - 1:
        raise WrongVectorCount(f"need {s.n - 1} vectors in {s.n} dimensions, got {len(vs)}")
    rows = np.array([s.vector(v) for v in vs], dtype=np.float64).reshape(s.n - 1, s.n)

    cofactors = np.empty(s.n)
    for j in range(s.n):
        minor = np.delete(rows, j, axis=1)
        cofactors[j] = (-1) ** j * np.linalg.det(minor)
    return as_vector(s.delta * cofactors / s.coefficients)


def ellipsoid_point(s: EllipticSpace, theta: float, beta: float) -> EVector:
    """
    Point of the ellipsoid a1 x^2 + a2 y^2 + a3 z^2 = 1 at latitude theta, longitude beta

    Returns:
        (cos(theta) cos(beta)/sqrt(a1), cos(theta) sin(beta)/sqrt(a2), sin(theta)/sqrt(a3))
    """
    if s.n != 3:
        raise DimensionMismatch(f"ellipsoid_point needs a 3-dimensional space, got n={s.n}")
    direction = np.array([
        math.cos(theta) * math.cos(beta),
        math.cos(theta) * math.sin(beta),
        math.sin(theta)
    ])
    return as_vector(direction / s.sqrt_a)


def is_orthonormal_basis(s: EllipticSpace, vs: Sequence[Sequence[float]],
                         tol: float = DEFAULT_TOLERANCE) -> bool:
    """
    Check that vs holds n pairwise B-orthogonal B-unit vectors

    Args:
        s: Space
        vs: Candidate basis
        tol: Absolute tolerance on the Gram matrix

    Returns:
        True if the Gram matrix is the identity within tol
    """
    if len(vs) != s.n:
        return False
    basis = np.array([s.vector(v) for v in vs])
    gram = basis @ s.omega @ basis.T
    return bool(np.max(np.abs(gram - np.eye(s.n))) <= tol)


def basis_vectors(s: EllipticSpace) -> List[EVector]:
    """Standard basis e_1..e_n of the space."""
    return [as_vector(row) for row in np.eye(s.n)]
