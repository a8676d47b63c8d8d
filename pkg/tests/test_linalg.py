from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from pvs53 import linalg
from strategies import invertible, matrices, small_ints, vectors


def test_rat_rejects_floats():
    with pytest.raises(TypeError):
        linalg.rat(0.5)
    assert linalg.rat("3/4") == Fraction(3, 4)


@given(matrices(4, elements=small_ints))
def test_det_matches_float_determinant(m):
    expected = np.linalg.det(m.astype(float))
    assert abs(float(linalg.det(m)) - expected) < 1e-6 * max(1.0, abs(expected))


@given(invertible(4))
def test_inverse(m):
    assert linalg.equal(m.dot(linalg.inv(m)), linalg.identity(4))


def test_singular_inverse_raises():
    with pytest.raises(linalg.SingularMatrixError):
        linalg.inv(linalg.frac_array([[1, 2], [2, 4]]))


@given(matrices(3, 5))
def test_rank_nullity(m):
    kernel = linalg.nullspace(m)
    assert linalg.rank(m) + len(kernel) == 5
    for v in kernel:
        assert linalg.is_zero(m.dot(v))


@given(invertible(3), vectors(3))
def test_solve(m, b):
    b = np.array(b, dtype=object)
    x = linalg.solve(m, b)
    assert linalg.equal(m.dot(x), b)


def test_solve_inconsistent():
    with pytest.raises(ValueError):
        linalg.solve(linalg.frac_array([[1, 1], [1, 1]]), linalg.frac_array([1, 2]))


def test_echelon_membership():
    ech = linalg.Echelon(3)
    assert ech.add([1, 2, 0])
    assert ech.add([0, 1, 1])
    assert not ech.add([1, 3, 1])
    assert ech.contains([2, 5, 1])
    assert not ech.contains([0, 0, 1])
    assert len(ech) == 2


def test_same_span():
    a = [linalg.frac_array([1, 0, 1]), linalg.frac_array([0, 1, 0])]
    b = [linalg.frac_array([1, 1, 1]), linalg.frac_array([1, -1, 1])]
    assert linalg.same_span(a, b)
    assert not linalg.same_span(a, b[:1])
