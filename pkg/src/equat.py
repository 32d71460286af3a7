"""
Elliptic Quaternions
The algebra H_{a1,a2,a3} with i^2 = -a1, j^2 = -a2, k^2 = -a3 and ij = (delta/a3) k = -ji,
and the elliptical rotations induced by its unit elements
"""
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from src.bmat import BMatrix, skew_from_axis
from src.errors import AxisNotUnit, DimensionMismatch, NotUnit, SpaceMismatch, ZeroQuaternion
from src.espace import EllipticSpace, EVector, cross3, inner, norm
from src.rodrigues import axis_angle_of
from src.utils import DEFAULT_TOLERANCE, AXIS_UNIT_TOLERANCE, as_vector, create_class_logger

logger = create_class_logger('EllipticQuaternion')


@dataclass(frozen=True, eq=False)
class EllipticQuaternion:
    """
    q = q0 + q1 i + q2 j + q3 k over a 3-dimensional space

    Attributes:
        q0: Scalar part S_q
        qv: Vector part V_q = (q1, q2, q3)
        space: The space fixing the product table
    """
    q0: float
    qv: EVector
    space: EllipticSpace

    def __post_init__(self):
        if self.space.n != 3:
            raise DimensionMismatch(f"elliptic quaternions need a 3-dimensional space, got n={self.space.n}")
        object.__setattr__(self, 'q0', float(self.q0))
        object.__setattr__(self, 'qv', self.space.vector(self.qv))

    @classmethod
    def from_components(cls, space: EllipticSpace, components: Sequence[float]) -> 'EllipticQuaternion':
        """Build from (q0, q1, q2, q3), scalar first."""
        if len(components) != 4:
            raise DimensionMismatch(f"quaternion needs 4 components, got {len(components)}")
        return cls(components[0], tuple(components[1:]), space)

    @classmethod
    def pure(cls, space: EllipticSpace, v: Sequence[float]) -> 'EllipticQuaternion':
        return cls(0.0, tuple(v), space)

    @classmethod
    def one(cls, space: EllipticSpace) -> 'EllipticQuaternion':
        return cls(1.0, (0.0, 0.0, 0.0), space)

    @property
    def components(self) -> np.ndarray:
        return np.concatenate(([self.q0], self.qv))

    def tolist(self) -> list:
        return self.components.tolist()

    def __mul__(self, other: Union['EllipticQuaternion', float]) -> 'EllipticQuaternion':
        if isinstance(other, EllipticQuaternion):
            return qmul(self, other)
        return EllipticQuaternion(self.q0 * other, self.qv * other, self.space)

    def __rmul__(self, other: float) -> 'EllipticQuaternion':
        return EllipticQuaternion(self.q0 * other, self.qv * other, self.space)

    def __neg__(self) -> 'EllipticQuaternion':
        return EllipticQuaternion(-self.q0, -self.qv, self.space)

    def __repr__(self) -> str:
        return f"EllipticQuaternion({self.tolist()}, a={self.space.a})"


@dataclass(frozen=True)
class PolarForm:
    """
    q = N_q (cos theta + eps0 sin theta)

    Attributes:
        magnitude: N_q
        half_angle_theta: theta in [0, pi]
        axis: B-unit eps0, or the zero vector when pure_scalar
        pure_scalar: True when the vector part vanishes
    """
    magnitude: float
    half_angle_theta: float
    axis: EVector
    pure_scalar: bool = False


def qmul(p: EllipticQuaternion, q: EllipticQuaternion) -> EllipticQuaternion:
    """
    Elliptic quaternion product

    Returns:
        p0 q0 - B(Vp, Vq) + p0 Vq + q0 Vp + V(Vp x Vq)
    """
    if p.space != q.space:
        raise SpaceMismatch(f"{p.space.a} vs {q.space.a}")
    s = p.space
    scalar = p.q0 * q.q0 - inner(s, p.qv, q.qv)
    vector = p.q0 * q.qv + q.q0 * p.qv + cross3(s, p.qv, q.qv)
    return EllipticQuaternion(scalar, vector, s)


def left_matrix(p: EllipticQuaternion) -> np.ndarray:
    """
    4x4 matrix L(p) with p q = L(p) q on component vectors

    Args:
        p: Left factor

    Returns:
        L(p) as a numpy array
    """
    s = p.space
    a1, a2, a3 = s.a
    d = s.delta
    p0 = p.q0
    p1, p2, p3 = p.qv
    return np.array([
        [p0, -a1 * p1, -a2 * p2, -a3 * p3],
        [p1, p0, -d / a1 * p3, d / a1 * p2],
        [p2, d / a2 * p3, p0, -d / a2 * p1],
        [p3, -d / a3 * p2, d / a3 * p1, p0]
    ])


def qconj(q: EllipticQuaternion) -> EllipticQuaternion:
    return EllipticQuaternion(q.q0, -q.qv, q.space)


def qnorm(q: EllipticQuaternion) -> float:
    """N_q = sqrt(q0^2 + a1 q1^2 + a2 q2^2 + a3 q3^2)."""
    return math.sqrt(q.q0 * q.q0 + inner(q.space, q.qv, q.qv))


def qinv(q: EllipticQuaternion) -> EllipticQuaternion:
    """
    Multiplicative inverse conj(q) / N_q^2

    Raises:
        ZeroQuaternion: q = 0
    """
    norm_sq = q.q0 * q.q0 + inner(q.space, q.qv, q.qv)
    if norm_sq == 0.0:
        raise ZeroQuaternion("the zero quaternion has no inverse")
    return qconj(q) * (1.0 / norm_sq)


def polar(q: EllipticQuaternion) -> PolarForm:
    """
    Polar form of a nonzero quaternion

    Returns:
        PolarForm with theta = atan2(|Vq|_B, q0); pure_scalar set when Vq = 0
    """
    magnitude = qnorm(q)
    if magnitude == 0.0:
        raise ZeroQuaternion("the zero quaternion has no polar form")
    vector_norm = norm(q.space, q.qv)
    theta = math.atan2(vector_norm, q.q0)
    if vector_norm == 0.0:
        return PolarForm(magnitude, theta, as_vector(np.zeros(3)), pure_scalar=True)
    return PolarForm(magnitude, theta, as_vector(q.qv / vector_norm))


def from_polar(space: EllipticSpace, form: PolarForm) -> EllipticQuaternion:
    """Rebuild N_q (cos theta + eps0 sin theta)."""
    return EllipticQuaternion(
        form.magnitude * math.cos(form.half_angle_theta),
        form.magnitude * math.sin(form.half_angle_theta) * np.asarray(form.axis),
        space
    )


def from_axis_angle(s: EllipticSpace, u: Sequence[float], theta: float,
                    axis_tol: float = AXIS_UNIT_TOLERANCE) -> EllipticQuaternion:
    """
    Unit quaternion cos(theta/2) + u sin(theta/2)

    Args:
        s: 3-dimensional space
        u: B-unit axis (within axis_tol; renormalised)
        theta: Rotation angle; the quaternion carries half of it

    Returns:
        Unit quaternion whose rotation matrix turns by theta about u
    """
    axis = s.vector(u)
    length = norm(s, axis)
    if abs(length - 1.0) > axis_tol:
        raise AxisNotUnit(f"|u|_B = {length!r}; normalise the axis first")
    half = theta / 2.0
    return EllipticQuaternion(math.cos(half), axis / length * math.sin(half), s)


def _check_unit(q: EllipticQuaternion, tol: float):
    n_q = qnorm(q)
    if abs(n_q - 1.0) > tol:
        raise NotUnit(f"N_q = {n_q!r}")


def to_rotation_matrix(q: EllipticQuaternion, tol: float = DEFAULT_TOLERANCE) -> BMatrix:
    """
    Matrix of v -> q v q^-1 for a unit quaternion

    Args:
        q: Unit quaternion
        tol: Allowed deviation of N_q from one

    Returns:
        (q0^2 - |Vq|_B^2) I + 2 Vq Vq^t Omega + 2 q0 T_{Vq}, a rotation by twice the polar angle
    """
    _check_unit(q, tol)
    s = q.space
    v = q.qv
    scalar_part = q.q0 * q.q0 - inner(s, v, v)
    entries = (scalar_part * np.eye(3)
               + 2.0 * np.outer(v, v * s.coefficients)
               + 2.0 * q.q0 * skew_from_axis(s, v).entries)
    return BMatrix(entries, s)


def rotate_vector(q: EllipticQuaternion, v: Sequence[float], tol: float = DEFAULT_TOLERANCE) -> EVector:
    """
    Rotate v by conjugation q v q^-1

    Args:
        q: Unit quaternion
        v: Vector embedded as a pure quaternion

    Returns:
        Vector part of q v q^-1
    """
    _check_unit(q, tol)
    image = qmul(qmul(q, EllipticQuaternion.pure(q.space, v)), qinv(q))
    return image.qv


def from_rotation_matrix(s: EllipticSpace, r, tol: float = DEFAULT_TOLERANCE) -> EllipticQuaternion:
    """
    Unit quaternion inducing a given elliptical rotation

    Args:
        s: 3-dimensional space
        r: B-rotation matrix

    Returns:
        q with to_rotation_matrix(q) = R (q and -q both qualify)
    """
    recovered = axis_angle_of(s, r, tol)
    if recovered.degenerate:
        return EllipticQuaternion.one(s)
    return from_axis_angle(s, recovered.axis, recovered.angle)
