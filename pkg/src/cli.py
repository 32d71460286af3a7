"""
Command-line front end
Builds, verifies and applies elliptical rotations; prints JSON documents or CSV traces
"""
import argparse
import csv
import io
import json
import math
import sys
from typing import Dict, Any, List, Optional, Sequence

import numpy as np

from src.bmat import BMatrix, MatrixClass, canonical_skew_2d, skew_from_axis
from src.cayley import cayley_closed_form, cayley_map
from src.equat import EllipticQuaternion, from_axis_angle, qmul, qnorm, to_rotation_matrix
from src.errors import (AxisNotUnit, ConfigError, DimensionMismatch, EllipticRotationError, HalfTurn,
                        ResidualAboveTolerance)
from src.espace import EllipticSpace, make_space, norm, unit
from src.householder import householder_matrix, reflect, rotation_between
from src.pipeline import RotationPipeline
from src.rodrigues import exp_series, rodrigues3d, rotate2d
from src.utils import load_config, setup_logging, parse_number, parse_vector, create_class_logger

METHOD_CHOICES = ('rodrigues', 'cayley', 'quat', 'householder', 'series')


class CommandContext:
    """
    Per-invocation state shared by the subcommands
    """

    def __init__(self, config: Dict[str, Any], args: argparse.Namespace):
        self.config = config
        self.args = args
        self.logger = create_class_logger('CLI')
        numerics = config.get('numerics', {})
        self.tolerance = args.tol if args.tol is not None else float(numerics.get('tolerance', 1e-9))
        self.axis_tolerance = float(numerics.get('axis_unit_tolerance', 1e-6))
        self.series_terms = int(numerics.get('series_terms', 24))
        self.indent = config.get('output', {}).get('indent', 2)
        self.pipeline = RotationPipeline(config)

    def space(self) -> EllipticSpace:
        return make_space(parse_vector(self.args.a))

    def vector(self, space: EllipticSpace, text: Optional[str], name: str) -> np.ndarray:
        if text is None:
            raise ConfigError(f"--{name} is required")
        return space.vector(parse_vector(text, space.n))

    def angle(self) -> Optional[float]:
        if self.args.angle is None:
            return None
        value = parse_number(self.args.angle)
        return math.radians(value) if self.args.degrees else value

    def emit(self, document: Dict[str, Any]):
        sys.stdout.write(json.dumps(document, indent=self.indent) + '\n')


def _matrix_document(ctx: CommandContext, space: EllipticSpace, matrix: BMatrix, method: str) -> Dict[str, Any]:
    report = ctx.pipeline.verify(space, matrix, ctx.tolerance)
    document = {'method': method}
    document.update(report.to_dict())
    return document


def _axis(ctx: CommandContext, space: EllipticSpace) -> np.ndarray:
    axis = ctx.vector(space, ctx.args.axis, 'axis')
    if ctx.args.normalize_axis:
        axis = unit(space, axis)
    return axis


def cmd_rotate(ctx: CommandContext) -> int:
    """
    Build a rotation matrix by the chosen method and print it with its verification report

    Returns:
        Exit code (3 when the result is not a B-rotation within tolerance)
    """
    args = ctx.args
    space = ctx.space()
    method = args.method

    if args.from_ is not None or args.to is not None:
        x = ctx.vector(space, args.from_, 'from')
        y = ctx.vector(space, args.to, 'to')
        if method == 'householder':
            matrix = rotation_between(space, x, y, ctx.tolerance)
        elif method == 'series':
            raise ConfigError("series needs --axis and --angle")
        else:
            solution = ctx.pipeline.solve(space, x, y, ctx.tolerance)
            key = 'quaternion' if method == 'quat' else method
            if key not in solution.matrices:
                raise HalfTurn("the Cayley map cannot represent a half turn")
            matrix = solution.matrices[key]
    else:
        if method == 'householder':
            raise ConfigError("householder needs --from and --to")
        theta = ctx.angle()
        if theta is None:
            raise ConfigError("supply either --axis/--angle or --from/--to")
        matrix = _rotation_from_angle(ctx, space, method, theta)

    document = _matrix_document(ctx, space, matrix, method)
    ctx.emit(document)
    if document['class'] != MatrixClass.ROTATION.value:
        ctx.logger.error(f"Generated matrix classifies as {document['class']}")
        return ResidualAboveTolerance.exit_code
    return 0


def _rotation_from_angle(ctx: CommandContext, space: EllipticSpace, method: str, theta: float) -> BMatrix:
    if space.n == 2:
        if method == 'rodrigues':
            return rotate2d(space, theta)
        if method == 'cayley':
            if math.isclose(math.cos(theta / 2.0), 0.0, abs_tol=1e-15):
                raise HalfTurn("the Cayley map cannot represent a half turn")
            generator = canonical_skew_2d(space).entries * math.tan(theta / 2.0)
            return cayley_map(space, generator, ctx.tolerance)
        if method == 'series':
            return exp_series(space, canonical_skew_2d(space), theta, ctx.series_terms, ctx.tolerance)
        raise DimensionMismatch(f"method {method} needs a 3-dimensional space")

    if space.n != 3:
        raise DimensionMismatch(f"axis/angle rotations need n = 2 or 3, got n={space.n}")
    if ctx.args.axis is None:
        if theta == 0.0:
            return BMatrix(np.eye(3), space)
        raise ConfigError("--axis is required for a nonzero angle")

    axis = _axis(ctx, space)
    if method == 'rodrigues':
        return rodrigues3d(space, axis, theta, ctx.axis_tolerance)
    if method == 'quat':
        return to_rotation_matrix(from_axis_angle(space, axis, theta, ctx.axis_tolerance), ctx.tolerance)
    if method == 'series':
        unit_axis = _unit_axis(ctx, space, axis)
        return exp_series(space, skew_from_axis(space, unit_axis), theta, ctx.series_terms, ctx.tolerance)
    # cayley
    if math.isclose(math.cos(theta / 2.0), 0.0, abs_tol=1e-15):
        raise HalfTurn("the Cayley map cannot represent a half turn")
    return cayley_closed_form(space, _unit_axis(ctx, space, axis) * math.tan(theta / 2.0))


def _unit_axis(ctx: CommandContext, space: EllipticSpace, axis: np.ndarray) -> np.ndarray:
    length = norm(space, axis)
    if abs(length - 1.0) > ctx.axis_tolerance:
        raise AxisNotUnit(f"|u|_B = {length!r}; pass --normalize-axis or a B-unit axis")
    return axis / length


def cmd_solve(ctx: CommandContext) -> int:
    """Run the rotation algorithm and print the solution document."""
    space = ctx.space()
    x = ctx.vector(space, ctx.args.from_, 'from')
    y = ctx.vector(space, ctx.args.to, 'to')
    solution = ctx.pipeline.solve(space, x, y, ctx.tolerance)
    ctx.emit(solution.to_dict())
    return 0


def cmd_qmul(ctx: CommandContext) -> int:
    """Multiply two elliptic quaternions."""
    space = ctx.space()
    if ctx.args.p is None or ctx.args.q is None:
        raise ConfigError("--p and --q are required")
    p = EllipticQuaternion.from_components(space, parse_vector(ctx.args.p, 4))
    q = EllipticQuaternion.from_components(space, parse_vector(ctx.args.q, 4))
    product = qmul(p, q)
    ctx.emit({
        'a': list(space.a),
        'p': p.tolist(),
        'q': q.tolist(),
        'product': product.tolist(),
        'norm_p': qnorm(p),
        'norm_q': qnorm(q),
        'norm_product': qnorm(product)
    })
    return 0


def trace_rows(space: EllipticSpace, axis: Optional[Sequence[float]], angle: float,
               start: Sequence[float], steps: int, axis_tol: float = 1e-6) -> List[List[float]]:
    """
    Sample the orbit of start under rotations by angle * k / (steps - 1)

    Args:
        space: 2D (ellipse) or 3D (ellipsoid) space
        axis: B-unit axis for 3D, ignored in 2D
        angle: Final angle
        start: Starting point
        steps: Number of samples, at least 2

    Returns:
        Rows [t, coordinates...]
    """
    if steps < 2:
        raise ConfigError(f"--steps must be at least 2, got {steps}")
    point = space.vector(start)
    rows = []
    for k in range(steps):
        t = angle * k / (steps - 1)
        if space.n == 2:
            matrix = rotate2d(space, t)
        elif space.n == 3:
            if axis is None:
                raise ConfigError("--axis is required for an ellipsoid trace")
            matrix = rodrigues3d(space, axis, t, axis_tol)
        else:
            raise DimensionMismatch(f"traces need n = 2 or 3, got n={space.n}")
        rows.append([t] + (matrix @ point).tolist())
    return rows


def cmd_trace(ctx: CommandContext) -> int:
    """Print a CSV orbit; every row must stay on the ellipsoid through start."""
    space = ctx.space()
    theta = ctx.angle()
    if theta is None:
        raise ConfigError("--angle is required")
    start = ctx.vector(space, ctx.args.start, 'start')
    axis = _axis(ctx, space) if (space.n == 3 and ctx.args.axis is not None) else None
    rows = trace_rows(space, axis, theta, start, ctx.args.steps, ctx.axis_tolerance)

    level = norm(space, start) ** 2
    worst = max(abs(sum(a * c * c for a, c in zip(space.a, row[1:])) - level) for row in rows)

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(['t', 'x', 'y', 'z'][:space.n + 1])
    writer.writerows([[repr(float(v)) for v in row] for row in rows])
    sys.stdout.write(buffer.getvalue())

    if worst > ctx.tolerance * max(1.0, level):
        ctx.logger.error(f"Trace left the ellipsoid: residual {worst:.3e}")
        return ResidualAboveTolerance.exit_code
    return 0


def cmd_verify(ctx: CommandContext) -> int:
    """Verify a matrix stored as a JSON document."""
    if not ctx.args.matrix_file:
        raise ConfigError("--matrix-file is required")
    try:
        with open(ctx.args.matrix_file, 'r', encoding='utf-8') as f:
            document = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read {ctx.args.matrix_file}: {e}")
    if not isinstance(document, dict):
        raise ConfigError(f"{ctx.args.matrix_file} must hold a JSON object")

    if ctx.args.a is not None:
        space = ctx.space()
    elif 'a' in document:
        try:
            space = make_space(document['a'])
        except (TypeError, ValueError) as e:
            raise ConfigError(f"bad 'a' in {ctx.args.matrix_file}: {e}")
    else:
        raise ConfigError("matrix file has no 'a' and --a was not given")
    if 'matrix' not in document:
        raise ConfigError("matrix file has no 'matrix' entry")
    try:
        entries = np.array(document['matrix'], dtype=np.float64)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"bad 'matrix' in {ctx.args.matrix_file}: {e}")

    report = ctx.pipeline.verify(space, BMatrix(entries, space), ctx.tolerance)
    ctx.emit(report.to_dict())
    return 0


def cmd_reflect(ctx: CommandContext) -> int:
    """Print the reflection matrix H_v and, with --x, the image of x."""
    space = ctx.space()
    v = ctx.vector(space, ctx.args.v, 'v')
    document = _matrix_document(ctx, space, householder_matrix(space, v), 'householder-reflection')
    if ctx.args.x is not None:
        x = ctx.vector(space, ctx.args.x, 'x')
        document['point'] = x.tolist()
        document['image'] = reflect(space, v, x).tolist()
    ctx.emit(document)
    return 0


COMMANDS = {
    'rotate': cmd_rotate,
    'solve': cmd_solve,
    'qmul': cmd_qmul,
    'trace': cmd_trace,
    'verify': cmd_verify,
    'reflect': cmd_reflect
}


def build_parser() -> argparse.ArgumentParser:
    """
    Argument parser with one subcommand per operation

    Negative vectors must be attached with '=', e.g. --axis=-1,1,0.
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--a', help='ellipsoid coefficients, e.g. 1/4,1/4,1/9')
    common.add_argument('--tol', type=float, default=None, help='verification tolerance')
    common.add_argument('--config', default='config/config.yaml', help='YAML configuration file')
    common.add_argument('--degrees', action='store_true', help='read --angle in degrees')
    common.add_argument('--normalize-axis', action='store_true', help='scale --axis to B-norm one')

    parser = argparse.ArgumentParser(prog='elliptic-rotations',
                                     description='Elliptical rotations and reflections on ellipsoids')
    sub = parser.add_subparsers(dest='command', required=True)

    rotate = sub.add_parser('rotate', parents=[common], help='build a rotation matrix')
    rotate.add_argument('--method', choices=METHOD_CHOICES, default='rodrigues')
    rotate.add_argument('--axis')
    rotate.add_argument('--angle')
    rotate.add_argument('--from', dest='from_')
    rotate.add_argument('--to')

    solve = sub.add_parser('solve', parents=[common], help='rotation taking one point to another')
    solve.add_argument('--from', dest='from_')
    solve.add_argument('--to')

    qmul_parser = sub.add_parser('qmul', parents=[common], help='multiply elliptic quaternions')
    qmul_parser.add_argument('--p')
    qmul_parser.add_argument('--q')

    trace = sub.add_parser('trace', parents=[common], help='CSV samples of a rotating point')
    trace.add_argument('--axis')
    trace.add_argument('--angle')
    trace.add_argument('--start')
    trace.add_argument('--steps', type=int, default=50)

    verify_parser = sub.add_parser('verify', parents=[common], help='verify a matrix JSON file')
    verify_parser.add_argument('--matrix-file')

    reflect_parser = sub.add_parser('reflect', parents=[common], help='elliptical reflection')
    reflect_parser.add_argument('--v')
    reflect_parser.add_argument('--x')

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments, run one subcommand and return the process exit code

    Exit codes: 0 success, 2 validation error, 3 numerical failure.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    if getattr(args, 'a', None) is None and args.command != 'verify':
        sys.stderr.write("error: ConfigError: --a is required\n")
        return 2

    try:
        config = load_config(args.config)
    except EllipticRotationError as e:
        sys.stderr.write(f"error: {e.code}: {e.message}\n")
        return e.exit_code

    setup_logging(config)
    logger = create_class_logger('CLI')
    logger.debug(f"Command {args.command}: {vars(args)}")

    try:
        ctx = CommandContext(config, args)
        return COMMANDS[args.command](ctx)
    except EllipticRotationError as e:
        logger.debug(f"{args.command} failed: {e}")
        sys.stderr.write(f"error: {e.code}: {e.message}\n")
        return e.exit_code
    except Exception as e:
        logger.error(f"Unexpected error in {args.command}: {e}", exc_info=True)
        sys.stderr.write(f"error: InternalError: {e}\n")
        return 3
