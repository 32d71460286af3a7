"""
Rotation Pipeline
Given an ellipsoid and two points of equal B-norm, find the rotation axis and angle
and build the rotation by every constructive route, with cross-method diagnostics
"""
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Dict, Any, Optional, Sequence, List, Callable

import numpy as np

from src.bmat import BMatrix, MatrixClass, classify, identity, as_bmatrix
from src.cayley import cayley_closed_form
from src.equat import EllipticQuaternion, to_rotation_matrix
from src.errors import NormMismatch, ZeroVector, ResidualAboveTolerance, DimensionMismatch
from src.espace import EllipticSpace, EVector, make_space, cross3, inner, norm, unit
from src.householder import rotation_between
from src.rodrigues import rotation_from_cs
from src.utils import DEFAULT_TOLERANCE, as_vector, max_abs, create_class_logger

METHODS = ('rodrigues', 'householder', 'quaternion', 'cayley')


@dataclass(frozen=True, eq=False)
class RotationSolution:
    """
    Result of the rotation algorithm

    Attributes:
        space: Ellipsoid the points live on
        x, y: Input points (y = R x)
        axis: B-unit axis, zero vector when degenerate_axis
        cos_angle, sin_angle: cosine and sine (>= 0) of the angle from x to y
        matrices: Method name -> rotation matrix; 'cayley' absent at a half turn
        residuals: Diagnostic name -> value
        case: 'general', 'identical' or 'antipodal'
        degenerate_axis: True when x = y
    """
    space: EllipticSpace
    x: EVector
    y: EVector
    axis: EVector
    cos_angle: float
    sin_angle: float
    matrices: Dict[str, BMatrix]
    residuals: Dict[str, float] = field(default_factory=dict)
    case: str = 'general'
    degenerate_axis: bool = False

    @property
    def angle(self) -> float:
        return math.atan2(self.sin_angle, self.cos_angle)

    @property
    def R_rodrigues(self) -> BMatrix:
        return self.matrices['rodrigues']

    @property
    def R_householder(self) -> BMatrix:
        return self.matrices['householder']

    @property
    def R_quaternion(self) -> BMatrix:
        return self.matrices['quaternion']

    @property
    def R_cayley(self) -> Optional[BMatrix]:
        return self.matrices.get('cayley')

    def to_dict(self) -> Dict[str, Any]:
        return {
            'a': list(self.space.a),
            'x': self.x.tolist(),
            'y': self.y.tolist(),
            'axis': self.axis.tolist(),
            'cos': self.cos_angle,
            'sin': self.sin_angle,
            'angle': self.angle,
            'case': self.case,
            'degenerate_axis': self.degenerate_axis,
            'methods': {name: self.matrices[name].tolist() for name in METHODS if name in self.matrices},
            'residuals': dict(self.residuals)
        }


@dataclass(frozen=True)
class VerificationReport:
    """Diagnostics of a single matrix with respect to O_B(n)."""
    space: EllipticSpace
    matrix: BMatrix
    matrix_class: MatrixClass
    det: float
    residual_orthogonality: float
    residual_det: float
    residual_symmetry: float
    eigenvalues: List[complex]
    max_modulus_deviation: float
    unit_eigenvalue_count: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            'a': list(self.space.a),
            'matrix': self.matrix.tolist(),
            'class': self.matrix_class.value,
            'det': self.det,
            'residual_orthogonality': self.residual_orthogonality,
            'residual_det': self.residual_det,
            'residual_symmetry': self.residual_symmetry,
            'eigenvalues': [[float(z.real), float(z.imag)] for z in self.eigenvalues],
            'max_modulus_deviation': self.max_modulus_deviation,
            'unit_eigenvalue_count': self.unit_eigenvalue_count
        }


class RotationPipeline:
    """
    Configured solver for the elliptical rotation between two points
    """

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        """
        Initialize the pipeline

        Args:
            config: Configuration dictionary (uses the 'numerics' section)
        """
        self.logger = create_class_logger('RotationPipeline')
        self.config = config or {}
        numerics = self.config.get('numerics', {})
        self.tolerance = float(numerics.get('tolerance', DEFAULT_TOLERANCE))
        self.parallel = bool(numerics.get('parallel', False))

        self.logger.debug(f"RotationPipeline initialized: tol={self.tolerance}, parallel={self.parallel}")

    def solve(self, a: Sequence[float], x: Sequence[float], y: Sequence[float],
              tol: Optional[float] = None) -> RotationSolution:
        """
        Rotation taking x to y on the ellipsoid a1 x^2 + a2 y^2 + a3 z^2 = const

        Args:
            a: Ellipsoid coefficients (3 of them)
            x: Start point
            y: Target point with |y|_B = |x|_B
            tol: Tolerance (defaults to the configured one)

        Returns:
            RotationSolution with all method matrices and residuals
        """
        tol = self.tolerance if tol is None else tol
        s = a if isinstance(a, EllipticSpace) else make_space(a)
        if s.n != 3:
            raise DimensionMismatch(f"the rotation algorithm works on ellipsoids (n=3), got n={s.n}")
        xv = s.vector(x)
        yv = s.vector(y)

        nx = norm(s, xv)
        ny = norm(s, yv)
        if nx == 0.0 or ny == 0.0:
            raise ZeroVector("both points must be nonzero")
        if abs(nx - ny) > tol * max(1.0, nx):
            raise NormMismatch(f"|x|_B = {nx!r} but |y|_B = {ny!r}")

        if norm(s, xv - yv) <= tol * nx:
            self.logger.info("Identical input points, returning the identity")
            solution = self._identical(s, xv, yv, tol)
        elif norm(s, xv + yv) <= tol * nx:
            self.logger.warning("Antipodal input points, composing two quarter turns")
            solution = self._antipodal(s, xv, yv, tol)
        else:
            solution = self._general(s, xv, yv, tol)

        residuals = self._check_residuals(solution, tol)
        return replace(solution, residuals=residuals)

    def _general(self, s: EllipticSpace, x: EVector, y: EVector, tol: float) -> RotationSolution:
        nx = norm(s, x)
        ny = norm(s, y)
        c = inner(s, x, y) / (nx * ny)
        # x cross y equals x cross (y -+ x); the short difference keeps the product accurate
        product = cross3(s, x, y - x) if c >= 0.0 else cross3(s, x, y + x)
        length = norm(s, product)
        if length == 0.0:
            if c > 0.0:
                return self._identical(s, x, y, tol)
            return self._antipodal(s, x, y, tol)
        axis = as_vector(product / length)

        theta = math.atan2(length / (nx * ny), c)
        c = math.cos(theta)
        sn = math.sin(theta)
        half_c = math.cos(theta / 2.0)
        half_s = math.sin(theta / 2.0)
        self.logger.debug(f"Axis {axis.tolist()}, angle={theta}")

        quaternion = EllipticQuaternion(half_c, axis * half_s, s)

        builders = {
            'rodrigues': lambda: rotation_from_cs(s, axis, c, sn),
            'householder': lambda: reflection_route(s, axis, x, y, c, tol),
            'quaternion': lambda: to_rotation_matrix(quaternion, tol),
            'cayley': lambda: cayley_closed_form(s, axis * (half_s / half_c))
        }
        matrices = self._build(builders)
        return RotationSolution(s, x, y, axis, c, sn, matrices)

    def _identical(self, s: EllipticSpace, x: EVector, y: EVector, tol: float) -> RotationSolution:
        matrices = {
            'rodrigues': identity(s),
            'householder': rotation_between(s, x, y, tol),
            'quaternion': to_rotation_matrix(EllipticQuaternion.one(s), tol),
            'cayley': cayley_closed_form(s, np.zeros(3))
        }
        return RotationSolution(s, x, y, as_vector(np.zeros(3)), 1.0, 0.0, matrices,
                                case='identical', degenerate_axis=True)

    def _antipodal(self, s: EllipticSpace, x: EVector, y: EVector, tol: float) -> RotationSolution:
        z = intermediate_point(s, x)
        axis = unit(s, cross3(s, x, z))
        self.logger.debug(f"Intermediate point {z.tolist()}, axis {axis.tolist()}")

        builders = {
            'rodrigues': lambda: rotation_from_cs(s, axis, -1.0, 0.0),
            'householder': lambda: rotation_between(s, z, y, tol) @ rotation_between(s, x, z, tol),
            'quaternion': lambda: to_rotation_matrix(EllipticQuaternion(0.0, axis, s), tol)
        }
        matrices = self._build(builders)
        self.logger.info("Half turn: Cayley matrix omitted")
        return RotationSolution(s, x, y, axis, -1.0, 0.0, matrices, case='antipodal')

    def _build(self, builders: Dict[str, Callable[[], BMatrix]]) -> Dict[str, BMatrix]:
        """Evaluate the per-method builders, in parallel if configured, in a fixed order."""
        names = [name for name in METHODS if name in builders]
        if self.parallel:
            with ThreadPoolExecutor(max_workers=len(names)) as pool:
                futures = {name: pool.submit(builders[name]) for name in names}
                return {name: futures[name].result() for name in names}
        return {name: builders[name]() for name in names}

    def _check_residuals(self, solution: RotationSolution, tol: float) -> Dict[str, float]:
        s = solution.space
        scale = max(1.0, norm(s, solution.x))
        residuals: Dict[str, float] = {}
        failures = []

        for name, matrix in solution.matrices.items():
            mapped = matrix @ solution.x
            residuals[f'map_{name}'] = norm(s, mapped - solution.y)
            residuals[f'orthogonality_{name}'] = matrix.orthogonality_residual()
            residuals[f'det_{name}'] = abs(matrix.det() - 1.0)
            if residuals[f'map_{name}'] > tol * scale:
                failures.append(f'map_{name}')
            if classify(s, matrix, tol * max(s.a)) != MatrixClass.ROTATION:
                failures.append(f'class_{name}')

        names = [name for name in METHODS if name in solution.matrices]
        for i, first in enumerate(names):
            for second in names[i + 1:]:
                key = f'{first}_vs_{second}'
                reference = solution.matrices[first].entries
                residuals[key] = max_abs(reference - solution.matrices[second].entries)
                if residuals[key] > tol * max(1.0, max_abs(reference)):
                    failures.append(key)

        if failures:
            self.logger.error(f"Residual check failed: {failures}")
            raise ResidualAboveTolerance(", ".join(f"{k}={residuals.get(k, float('nan')):.3e}" for k in failures))
        return residuals

    def verify(self, s: EllipticSpace, r, tol: Optional[float] = None) -> VerificationReport:
        """
        Diagnose a matrix: orthogonality, determinant, eigenvalues and class

        Args:
            s: Space
            r: Square matrix
            tol: Classification tolerance

        Returns:
            VerificationReport (never raises for a square matrix of matching size)
        """
        tol = self.tolerance if tol is None else tol
        rm = as_bmatrix(s, r)
        d = rm.det()
        eigenvalues = sorted(np.linalg.eigvals(rm.entries).tolist(),
                             key=lambda z: (round(math.atan2(z.imag, z.real), 12), z.real))
        moduli = [abs(z) for z in eigenvalues]
        report = VerificationReport(
            space=s,
            matrix=rm,
            matrix_class=classify(s, rm, tol),
            det=d,
            residual_orthogonality=rm.orthogonality_residual(),
            residual_det=abs(d - 1.0),
            residual_symmetry=rm.symmetry_residual(),
            eigenvalues=[complex(z) for z in eigenvalues],
            max_modulus_deviation=max(abs(m - 1.0) for m in moduli),
            unit_eigenvalue_count=sum(1 for z in eigenvalues if abs(z - 1.0) <= math.sqrt(tol))
        )
        self.logger.debug(f"Verified matrix: {report.matrix_class.value}, det={d}")
        return report


def reflection_route(s: EllipticSpace, axis: Sequence[float], x: Sequence[float], y: Sequence[float],
                     cos_angle: float, tol: float = DEFAULT_TOLERANCE) -> BMatrix:
    """
    Rotation taking x to y built from Householder reflections

    For an acute angle this is rotation_between(x, y). For an obtuse angle
    the mirror x + y is nearly degenerate, so the rotation is split at the
    quarter-turn point w = axis x x: first x to w, then w to y.

    Args:
        s: Space
        axis: B-unit axis, B-orthogonal to x and y
        x, y: Points of equal B-norm
        cos_angle: Cosine of the angle from x to y

    Returns:
        B-rotation about axis with R x = y
    """
    if cos_angle >= 0.0:
        return rotation_between(s, x, y, tol)
    w = cross3(s, axis, x)
    w = w * (norm(s, x) / norm(s, w))
    return rotation_between(s, w, y, tol) @ rotation_between(s, x, w, tol)


def intermediate_point(s: EllipticSpace, x: Sequence[float]) -> EVector:
    """
    Point z with B(z, x) = 0 and |z|_B = |x|_B

    Starts from the standard basis vector most B-orthogonal to x and removes
    its component along x.
    """
    xv = s.vector(x)
    nx = norm(s, xv)
    cosines = [abs(inner(s, xv, e)) / math.sqrt(s.a[k]) for k, e in enumerate(np.eye(s.n))]
    k = int(np.argmin(cosines))
    e = np.eye(s.n)[k]
    z = e - inner(s, e, xv) / (nx * nx) * xv
    return as_vector(z * (nx / norm(s, z)))


_default_pipeline = RotationPipeline()


def solve(a: Sequence[float], x: Sequence[float], y: Sequence[float],
          tol: float = DEFAULT_TOLERANCE) -> RotationSolution:
    """Rotation taking x to y (see RotationPipeline.solve)."""
    return _default_pipeline.solve(a, x, y, tol)


def verify(s: EllipticSpace, r, tol: float = DEFAULT_TOLERANCE) -> VerificationReport:
    """Diagnostics of a matrix (see RotationPipeline.verify)."""
    return _default_pipeline.verify(s, r, tol)
