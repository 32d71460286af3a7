"""
Unit tests for elliptic Householder reflections
"""
import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import numpy as np
import pytest

from src.bmat import MatrixClass, classify
from src.errors import AntipodalInput, NormMismatch, ZeroVector
from src.espace import make_space, norm
from src.householder import householder_matrix, reflect, reflection_between, rotation_between

REFLECTION_19 = np.array([[15, -8, -6], [-8, 3, -12], [-12, -24, 1]]) / 19.0
ROTATION_5 = np.array([[4, -1, 2], [-1, 4, 2], [-4, -4, 3]]) / 5.0


def test_reflection_example():
    """Test H_v for v = (1, 2, 3) on 2x^2 + 2y^2 + z^2 = const"""
    s = make_space([2, 2, 1])
    h = householder_matrix(s, (1, 2, 3))

    assert np.allclose(h.entries, REFLECTION_19, rtol=0, atol=1e-12)
    assert np.allclose(reflect(s, (1, 2, 3), (0.5, 0.5, 0.0)), (7 / 38, -5 / 38, -18 / 19), atol=1e-12)
    assert np.allclose(h @ (1, 2, 3), (-1, -2, -3), atol=1e-12)
    assert classify(s, h) == MatrixClass.REFLECTION

    print("✓ Reflection example test passed")


def test_reflection_properties():
    """Test involution, symmetry and determinant in dimensions 2..6"""
    rng = np.random.default_rng(5)
    for n in range(2, 7):
        s = make_space(rng.uniform(0.1, 10.0, n))
        h = householder_matrix(s, rng.normal(size=n))

        assert np.allclose((h @ h).entries, np.eye(n), atol=1e-9)
        assert h.is_b_symmetric(1e-9)
        assert h.is_b_orthogonal(1e-9)
        assert abs(h.det() + 1.0) < 1e-9

    with pytest.raises(ZeroVector):
        householder_matrix(make_space([1, 2]), (0, 0))

    print("✓ Reflection properties test passed")


def test_rotation_between_example():
    """Test the two-reflection rotation from (0,0,5) to (2,2,3)"""
    s = make_space([2, 2, 1])
    r = rotation_between(s, (0, 0, 5), (2, 2, 3))

    assert np.allclose(r.entries, ROTATION_5, rtol=0, atol=1e-12)
    assert classify(s, r) == MatrixClass.ROTATION

    print("✓ Rotation between example test passed")


def test_mappings():
    """Test both constructions send x to y"""
    rng = np.random.default_rng(9)
    for n in (2, 3, 5):
        s = make_space(rng.uniform(0.1, 10.0, n))
        x = rng.normal(size=n)
        y = rng.normal(size=n)
        y = y * norm(s, x) / norm(s, y)

        assert np.allclose(reflection_between(s, x, y) @ x, y, atol=1e-9)
        assert np.allclose(rotation_between(s, x, y) @ x, y, atol=1e-9)
        assert abs(rotation_between(s, x, y).det() - 1.0) < 1e-9

    print("✓ Mapping test passed")


def test_rotation_between_errors():
    """Test antipodal, unequal and zero inputs"""
    s = make_space([2, 2, 1])
    with pytest.raises(AntipodalInput):
        rotation_between(s, (0, 0, 5), (0, 0, -5))
    with pytest.raises(NormMismatch):
        rotation_between(s, (0, 0, 5), (0, 0, 4))
    with pytest.raises(NormMismatch):
        reflection_between(s, (1, 0, 0), (0, 0, 1))
    with pytest.raises(ZeroVector):
        rotation_between(s, (0, 0, 0), (0, 0, 0))

    print("✓ Rotation between errors test passed")


def test_all():
    """Run all tests"""
    print("\n" + "="*60)
    print("HOUSEHOLDER TESTS")
    print("="*60 + "\n")

    test_reflection_example()
    test_reflection_properties()
    test_rotation_between_example()
    test_mappings()
    test_rotation_between_errors()

    print("\n" + "="*60)
    print("ALL TESTS PASSED ✓")
    print("="*60 + "\n")


if __name__ == '__main__':
    test_all()
