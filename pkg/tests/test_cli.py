"""
Integration tests for the command-line front end
"""
import sys
import os
import io
import json
import math
import tempfile
from contextlib import redirect_stdout, redirect_stderr
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import numpy as np

from src.cli import run

SQ3 = math.sqrt(3.0)
EXAMPLES_DIR = os.path.abspath(os.path.join(os.path.dirname(__file__), '..', 'data', 'examples'))
QUARTER_TURN = np.array([
    [3, -3 * SQ3, -4 * SQ3],
    [-3 * SQ3, 9, -4],
    [9 * SQ3, 9, 0]
]) / 12.0
ROTATION_5 = np.array([[4, -1, 2], [-1, 4, 2], [-4, -4, 3]]) / 5.0


def invoke(*argv):
    """Run the CLI and capture (exit code, stdout, stderr)"""
    out = io.StringIO()
    err = io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = run(list(argv))
    return code, out.getvalue(), err.getvalue()


def test_rotate_rodrigues():
    """Test the quarter turn built from a rounded axis and angle"""
    code, out, err = invoke('rotate', '--a', '1/4,1/4,1/9', '--axis', '1,-1.7320508,0',
                            '--angle', '1.5707963', '--method', 'rodrigues')
    assert code == 0, err
    document = json.loads(out)

    assert np.allclose(document['matrix'], QUARTER_TURN, rtol=0, atol=1e-6)
    assert document['class'] == 'Rotation'
    assert document['method'] == 'rodrigues'
    assert document['a'] == [0.25, 0.25, 1 / 9]
    for key in ('det', 'residual_orthogonality'):
        assert key in document

    print("✓ Rotate (Rodrigues) test passed")


def test_rotate_all_methods_agree():
    """Test rodrigues, quat and cayley give the same matrix"""
    matrices = []
    for method in ('rodrigues', 'quat', 'cayley'):
        code, out, err = invoke('rotate', '--a', '2,2,1', '--axis=-0.5,0.5,0', '--angle', '0.9272952180016122',
                                '--method', method)
        assert code == 0, err
        matrices.append(np.array(json.loads(out)['matrix']))

    assert np.allclose(matrices[0], ROTATION_5, atol=1e-12)
    assert np.allclose(matrices[0], matrices[1], atol=1e-12)
    assert np.allclose(matrices[0], matrices[2], atol=1e-12)

    print("✓ Rotate method agreement test passed")


def test_rotate_series():
    """Test the truncated exponential series matches the closed forms"""
    code, out, err = invoke('rotate', '--a', '2,2,1', '--axis=-0.5,0.5,0', '--angle', '0.9272952180016122',
                            '--method', 'series')
    assert code == 0, err
    assert np.allclose(json.loads(out)['matrix'], ROTATION_5, rtol=0, atol=1e-10)

    code, out, err = invoke('rotate', '--a', '1/9,1/4', '--angle', '60', '--degrees', '--method', 'series')
    assert code == 0, err
    assert np.allclose(json.loads(out)['matrix'], [[0.5, -3 * SQ3 / 4], [SQ3 / 3, 0.5]], rtol=0, atol=1e-10)

    code, _, err = invoke('rotate', '--a', '2,2,1', '--from', '0,0,5', '--to', '2,2,3', '--method', 'series')
    assert code == 2
    assert 'error: ConfigError' in err

    print("✓ Rotate (series) test passed")


def test_rotate_zero_angle():
    """Test a zero angle gives the identity without an axis"""
    code, out, _ = invoke('rotate', '--a', '1,2,3', '--angle', '0')
    assert code == 0
    assert np.allclose(json.loads(out)['matrix'], np.eye(3))

    print("✓ Zero angle test passed")


def test_rotate_degrees_and_plane():
    """Test --degrees and the 2D rotation"""
    code, out, _ = invoke('rotate', '--a', '1/9,1/4', '--angle', '60', '--degrees')
    assert code == 0
    assert np.allclose(json.loads(out)['matrix'], [[0.5, -3 * SQ3 / 4], [SQ3 / 3, 0.5]], atol=1e-12)

    code, out, _ = invoke('rotate', '--a', '1/9,1/4', '--angle', '60', '--degrees', '--method', 'cayley')
    assert code == 0
    assert np.allclose(json.loads(out)['matrix'], [[0.5, -3 * SQ3 / 4], [SQ3 / 3, 0.5]], atol=1e-12)

    print("✓ Degrees and plane test passed")


def test_rotate_householder_from_to():
    """Test the two-reflection rotation from (0,0,5) to (2,2,3)"""
    code, out, err = invoke('rotate', '--a', '2,2,1', '--from', '0,0,5', '--to', '2,2,3',
                            '--method', 'householder')
    assert code == 0, err
    assert np.allclose(json.loads(out)['matrix'], ROTATION_5, rtol=0, atol=1e-12)

    code, out, err = invoke('rotate', '--a', '2,2,1', '--from', '0,0,5', '--to', '2,2,3',
                            '--method', 'quat')
    assert code == 0, err
    assert np.allclose(json.loads(out)['matrix'], ROTATION_5, rtol=0, atol=1e-9)

    print("✓ Rotate from/to test passed")


def test_rotate_errors():
    """Test exit codes and error names"""
    code, _, err = invoke('rotate', '--a', '2,2,1', '--axis', '0,0,1', '--angle', '3.141592653589793',
                          '--method', 'cayley')
    assert code == 2
    assert err.startswith('error: HalfTurn')

    code, _, err = invoke('rotate', '--a', '1,0,2', '--angle', '0')
    assert code == 2
    assert 'error: NonPositiveCoefficient' in err

    code, _, err = invoke('rotate', '--a', '2,2,1', '--axis', '1,1,1', '--angle', '1')
    assert code == 2
    assert 'error: AxisNotUnit' in err

    code, out, err = invoke('rotate', '--a', '2,2,1', '--axis', '1,1,1', '--angle', '1', '--normalize-axis')
    assert code == 0, err

    code, _, err = invoke('rotate', '--a', '2,2,1', '--method', 'householder', '--angle', '1')
    assert code == 2
    assert 'error: ConfigError' in err

    code, _, _ = invoke('rotate', '--a', '2,2,1', '--method', 'spin')
    assert code == 2

    print("✓ Rotate errors test passed")


def test_solve_command():
    """Test the solution document of A -> B"""
    code, out, err = invoke('solve', '--a', '1/4,1/4,1/9',
                            '--from', '1.5,0.8660254037844386,1.5',
                            '--to=-0.8660254037844386,-0.5,2.598076211353316')
    assert code == 0, err
    document = json.loads(out)

    assert np.allclose(document['axis'], (1.0, -SQ3, 0.0), atol=1e-9)
    assert math.isclose(document['angle'], math.pi / 2, abs_tol=1e-9)
    assert set(document['methods']) == {'rodrigues', 'householder', 'quaternion', 'cayley'}
    assert np.allclose(document['methods']['rodrigues'], QUARTER_TURN, atol=1e-9)
    assert document['residuals']

    code, out, _ = invoke('solve', '--a', '2,2,1', '--from', '1,2,3', '--to', '1,2,3')
    assert code == 0
    assert json.loads(out)['angle'] == 0.0

    code, _, err = invoke('solve', '--a', '2,2,1', '--from', '0,0,5', '--to', '0,0,4')
    assert code == 2
    assert 'error: NormMismatch' in err

    print("✓ Solve command test passed")


def test_solve_near_half_turn():
    """Test a rotation just short of a half turn solves with every method"""
    theta = math.pi - 1e-8
    y = (0.0, -5.0 * math.sin(theta) / math.sqrt(2.0), 5.0 * math.cos(theta))
    code, out, err = invoke('solve', '--a', '2,2,1', '--from', '0,0,5', '--to=' + ','.join(repr(v) for v in y))
    assert code == 0, err
    document = json.loads(out)

    assert document['case'] == 'general'
    assert set(document['methods']) == {'rodrigues', 'householder', 'quaternion', 'cayley'}
    assert math.isclose(document['angle'], theta, abs_tol=1e-9)
    for matrix in document['methods'].values():
        assert np.allclose(np.array(matrix) @ (0, 0, 5), y, rtol=0, atol=1e-8)

    print("✓ Solve near half turn test passed")


def test_qmul_command():
    """Test the quaternion product document"""
    code, out, err = invoke('qmul', '--a', '2,2,1', '--p', '1,2,3,4', '--q', '2,4,1,3')
    assert code == 0, err
    document = json.loads(out)

    assert np.allclose(document['product'], (-32, 13, 17, -9), atol=1e-12)
    assert math.isclose(document['norm_product'], document['norm_p'] * document['norm_q'], rel_tol=1e-12)

    code, out, _ = invoke('qmul', '--a', '2,2,1', '--p', '1,0,0,0', '--q', '2,4,1,3')
    assert json.loads(out)['product'] == [2.0, 4.0, 1.0, 3.0]

    print("✓ Quaternion product command test passed")


def test_trace_plane():
    """Test the ellipse trace from (3 sqrt2/2, sqrt2) through pi/3"""
    start = (3 * math.sqrt(2) / 2, math.sqrt(2))
    code, out, err = invoke('trace', '--a', '1/9,1/4', '--angle', repr(math.pi / 3),
                            '--start', f'{start[0]!r},{start[1]!r}', '--steps', '2')
    assert code == 0, err
    lines = out.split('\n')
    assert lines[0] == 't,x,y'
    assert out.endswith('\n') and '\r' not in out

    final = [float(v) for v in lines[2].split(',')]
    expected = np.array([[0.5, -3 * SQ3 / 4], [SQ3 / 3, 0.5]]) @ np.array(start)
    assert np.allclose(final[1:], expected, atol=1e-12)

    print("✓ Plane trace test passed")


def test_trace_ellipsoid():
    """Test the ellipsoid trace from A through a quarter turn"""
    code, out, err = invoke('trace', '--a', '1/4,1/4,1/9', '--axis', '1,-1.7320508075688772,0',
                            '--angle', repr(math.pi / 2), '--start', '1.5,0.8660254037844386,1.5',
                            '--steps', '9')
    assert code == 0, err
    rows = [[float(v) for v in line.split(',')] for line in out.strip().split('\n')[1:]]

    assert len(rows) == 9
    assert rows[0][0] == 0.0
    assert np.allclose(rows[-1][1:], (-SQ3 / 2, -0.5, 1.5 * SQ3), atol=1e-12)
    for row in rows:
        level = 0.25 * row[1] ** 2 + 0.25 * row[2] ** 2 + row[3] ** 2 / 9
        assert abs(level - 1.0) < 1e-9

    print("✓ Ellipsoid trace test passed")


def test_trace_errors():
    """Test a single step is rejected and a zero angle repeats the start"""
    code, _, err = invoke('trace', '--a', '1,1', '--angle', '1', '--start', '1,0', '--steps', '1')
    assert code == 2
    assert 'error: ConfigError' in err

    code, out, _ = invoke('trace', '--a', '1,4', '--angle', '0', '--start', '1,0', '--steps', '2')
    assert code == 0
    lines = out.strip().split('\n')
    assert lines[1].split(',')[1:] == lines[2].split(',')[1:]

    print("✓ Trace errors test passed")


def test_verify_command():
    """Test verification of stored matrices"""
    code, out, err = invoke('verify', '--matrix-file', os.path.join(EXAMPLES_DIR, 'reflection_example.json'))
    assert code == 0, err
    assert json.loads(out)['class'] == 'Reflection'

    code, out, _ = invoke('verify', '--matrix-file', os.path.join(EXAMPLES_DIR, 'identity.json'))
    assert json.loads(out)['class'] == 'Rotation'

    code, out, _ = invoke('verify', '--matrix-file', os.path.join(EXAMPLES_DIR, 'quarter_turn_example.json'))
    assert json.loads(out)['class'] == 'Rotation'

    perturbed = (ROTATION_5 + 1e-4).tolist()
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, 'perturbed.json')
        with open(path, 'w', encoding='utf-8') as f:
            json.dump({'a': [2, 2, 1], 'matrix': perturbed}, f)
        code, out, _ = invoke('verify', '--matrix-file', path)
    assert code == 0
    document = json.loads(out)
    assert document['class'] == 'NotBOrthogonal'
    assert document['residual_orthogonality'] > 1e-6

    code, _, err = invoke('verify', '--matrix-file', os.path.join(EXAMPLES_DIR, 'missing.json'))
    assert code == 2
    assert 'error: ConfigError' in err

    print("✓ Verify command test passed")


def test_verify_malformed_documents():
    """Test malformed matrix files fail validation with exit 2"""
    documents = {
        'text_entry.json': {'a': [2, 2, 1], 'matrix': [['x', 0, 0], [0, 1, 0], [0, 0, 1]]},
        'ragged.json': {'a': [2, 2, 1], 'matrix': [[1, 0, 0], [0, 1], [0, 0, 1]]},
        'text_a.json': {'a': ['two', 2, 1], 'matrix': [[1, 0, 0], [0, 1, 0], [0, 0, 1]]},
        'scalar_a.json': {'a': 2, 'matrix': [[1, 0], [0, 1]]},
        'list_document.json': [[1, 0], [0, 1]]
    }
    with tempfile.TemporaryDirectory() as tmp:
        for name, document in documents.items():
            path = os.path.join(tmp, name)
            with open(path, 'w', encoding='utf-8') as f:
                json.dump(document, f)
            code, out, err = invoke('verify', '--matrix-file', path)
            assert code == 2, (name, err)
            assert err.startswith('error: ConfigError'), (name, err)
            assert out == ''

    print("✓ Malformed verify documents test passed")


def test_rotate_verify_round_trip():
    """Test a matrix printed by rotate verifies with the same residuals"""
    code, out, _ = invoke('rotate', '--a', '0.3,2.5,7', '--axis', '0,0,0.3779644730092272', '--angle', '1.234')
    assert code == 0
    emitted = json.loads(out)

    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, 'rotation.json')
        with open(path, 'w', encoding='utf-8') as f:
            f.write(out)
        code, again, _ = invoke('verify', '--matrix-file', path)
    assert code == 0
    verified = json.loads(again)
    assert verified['matrix'] == emitted['matrix']
    assert abs(verified['residual_orthogonality'] - emitted['residual_orthogonality']) < 1e-12

    print("✓ Round trip test passed")


def test_reflect_command():
    """Test the reflection document with an image point"""
    code, out, err = invoke('reflect', '--a', '2,2,1', '--v', '1,2,3', '--x', '1/2,1/2,0')
    assert code == 0, err
    document = json.loads(out)

    assert document['class'] == 'Reflection'
    assert np.allclose(document['image'], (7 / 38, -5 / 38, -18 / 19), atol=1e-12)

    print("✓ Reflect command test passed")


def test_deterministic_output():
    """Test identical invocations print identical bytes"""
    argv = ('solve', '--a', '2,2,1', '--from', '0,0,5', '--to', '2,2,3')
    assert invoke(*argv)[1] == invoke(*argv)[1]

    print("✓ Deterministic output test passed")


def test_all():
    """Run all tests"""
    print("\n" + "="*60)
    print("COMMAND-LINE TESTS")
    print("="*60 + "\n")

    test_rotate_rodrigues()
    test_rotate_all_methods_agree()
    test_rotate_series()
    test_rotate_zero_angle()
    test_rotate_degrees_and_plane()
    test_rotate_householder_from_to()
    test_rotate_errors()
    test_solve_command()
    test_solve_near_half_turn()
    test_qmul_command()
    test_trace_plane()
    test_trace_ellipsoid()
    test_trace_errors()
    test_verify_command()
    test_verify_malformed_documents()
    test_rotate_verify_round_trip()
    test_reflect_command()
    test_deterministic_output()

    print("\n" + "="*60)
    print("ALL TESTS PASSED ✓")
    print("="*60 + "\n")


if __name__ == '__main__':
    test_all()
