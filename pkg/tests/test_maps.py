from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pvs53 import linalg
from pvs53.maps import (
    DegenerateSpan,
    Fx,
    Phi1,
    Phi1_coords,
    Phi2,
    Phi3,
    VElement,
    delta,
    is_semistable,
    pfaffians,
    phi1,
    phi1_bar,
    phi1_double_sum,
    phi3,
    span_dim,
    span_point,
)
from pvs53.tensor import Alt2Tensor, SymForm, eval_form
from pvs53.wpoint import W_LITERAL as w
from strategies import orbit_points, velements, vectors, small_ints

L = ("l0", "l1", "l2")
A = ("a0", "a1", "a2", "a3", "a4")
ZERO = VElement()
# m0^m1 (x) l0 + m2^m3 (x) l1
DEGENERATE = VElement.from_components([Alt2Tensor({(0, 1): 1}), Alt2Tensor({(2, 3): 1}), Alt2Tensor({})])


def numeric_matrix(x: VElement, l) -> np.ndarray:
    """The 5x5 alternating matrix of x contracted with l in V2*."""
    arr = x.as_array()
    return np.array([[sum(arr[i, j, k] * l[k] for k in range(3)) for j in range(5)] for i in range(5)], dtype=object)


def pf4(a, idx) -> Fraction:
    p, q, r, s = idx
    return a[p, q] * a[r, s] - a[p, r] * a[q, s] + a[p, s] * a[q, r]


def eval_linear_matrix(m, a):
    return linalg.frac_array([[sum(c * v for c, v in zip(m[i, j], a)) for j in range(3)] for i in range(3)])


def test_pfaffians_at_w():
    want = ["-3*l0^2", "-3*l0*l1", "-l0*l2 - 2*l1^2", "-3*l1*l2", "-3*l2^2"]
    assert [p.to_text(L) for p in pfaffians(w)] == want


def test_pfaffians_small_cases():
    pf = pfaffians(DEGENERATE)
    assert pf[4] == SymForm.from_text("l0*l1", L, 2, dual=False)
    assert all(p.is_zero() for p in pf[:4])
    assert all(p.is_zero() for p in pfaffians(ZERO))


@given(velements, vectors(3, small_ints))
def test_pfaffians_match_minor_pfaffians(x, l):
    # independent route: evaluate numerically, then take signed 4x4 Pfaffians
    a = numeric_matrix(x, l)
    for i, p in enumerate(pfaffians(x)):
        rest = [k for k in range(5) if k != i]
        assert eval_form(SymForm(3, 2, dict(p.items()), dual=True), l) == (-1) ** i * pf4(a, rest)


@given(velements)
def test_double_sum_route(x):
    assert phi1(x) == phi1_double_sum(x)


@given(velements, st.sampled_from([2, -3]))
def test_phi1_homogeneous(x, t):
    assert phi1(x.scale(t)).coordinate_matrix().tolist() == (phi1(x).coordinate_matrix() * t**2).tolist()


def test_phi1_bar_at_w():
    h = Fraction(1, 2)
    # entry (i, j) is a linear form on V1, as coefficients of m0*..m4*
    want = [
        [(-3, 0, 0, 0, 0), (0, -3 * h, 0, 0, 0), (0, 0, -h, 0, 0)],
        [(0, -3 * h, 0, 0, 0), (0, 0, -2, 0, 0), (0, 0, 0, -3 * h, 0)],
        [(0, 0, -h, 0, 0), (0, 0, 0, -3 * h, 0), (0, 0, 0, 0, -3)],
    ]
    m = phi1_bar(w)
    assert all(m[i, j] == want[i][j] for i in range(3) for j in range(3))
    assert phi1_bar(ZERO).is_zero()


@given(velements, vectors(3, small_ints))
def test_phi1_bar_polarizes_pfaffians(x, gamma):
    m = phi1_bar(x)
    assert m.is_symmetric()
    g = np.array(gamma, dtype=object)
    for i, p in enumerate(pfaffians(x)):
        quad = linalg.frac_array([[m[r, s][i] for s in range(3)] for r in range(3)])
        assert g.dot(quad).dot(g) == eval_form(SymForm(3, 2, dict(p.items()), dual=True), gamma)


def test_Phi1_examples():
    assert Phi1_coords(w) == [0, 1, 0, 0, 0, -2]
    assert linalg.equal(Phi1(w), linalg.frac_array([[0, 0, -2], [0, 1, 0], [-2, 0, 0]]))
    assert linalg.is_zero(Phi1(ZERO))
    assert linalg.is_zero(Phi1(DEGENERATE))


def test_phi3_at_w():
    assert phi3(w).to_text().split("\n")[0].split() == ["[", "m2*", "-3/2*m1*", "6*m0*", "]"]
    assert phi3(w.scale(2)) == phi3(w).scale(2**12)
    assert phi3(ZERO).is_zero()


def test_Phi2_and_F_at_w():
    assert Phi2(w).to_text(A) == "72*a0*a4 - 18*a1*a3 + 6*a2^2"
    assert eval_form(Phi2(w), [1, 0, 0, 0, 1]) == 72
    assert Fx(w).to_text(A) == "72*a0*a2*a4 - 27*a0*a3^2 - 27*a1^2*a4 + 9*a1*a2*a3 - 2*a2^3"
    assert eval_form(Fx(w), [0, 0, 1, 0, 0]) == -2
    assert eval_form(Fx(w), [1, 1, 1, 1, 1]) == 25
    assert Fx(ZERO).is_zero() and Phi2(ZERO).is_zero()


@given(orbit_points, vectors(5, small_ints))
def test_F_and_Phi2_are_det_and_trace(x, a):
    m = eval_linear_matrix(phi3(x), a)
    assert eval_form(Fx(x), a) == linalg.det(m)
    assert eval_form(Phi2(x), a) == np.trace(m.dot(m))


@pytest.mark.parametrize("t", [2, -3])
def test_homogeneity_degrees(t):
    x = VElement.from_components([Alt2Tensor({(0, 3): 1, (1, 4): 2}), Alt2Tensor({(0, 4): -1, (2, 3): 1}), Alt2Tensor({(1, 2): 1, (0, 1): 1})])
    tx = x.scale(t)
    assert linalg.equal(Phi1(tx), Phi1(x) * t**10)
    assert phi3(tx) == phi3(x).scale(t**12)
    assert Phi2(tx) == Phi2(x).scale(t**24)
    assert Fx(tx) == Fx(x).scale(t**36)


def test_Phi3_at_w_is_S():
    S = ["m1^m4 - 3*m2^m3", "m0^m4 - 2*m1^m3", "m0^m3 - 3*m1^m2"]
    assert Phi3(w) == span_point([Alt2Tensor.from_text(s) for s in S])
    assert Phi3(w.scale(-5)) == Phi3(w)


def test_Phi3_degenerate():
    with pytest.raises(DegenerateSpan):
        Phi3(DEGENERATE)


@given(orbit_points)
def test_Pluecker_relations_and_span(x):
    p = Phi3(x)
    assert span_dim(x) == 3
    assert p.relations_hold()
    comps = [np.array(x.component(k).coords, dtype=object) for k in range(3)]
    assert linalg.same_span(list(p.spanning_matrix()), comps)


def test_delta():
    assert delta(w) == -4 and is_semistable(w)
    assert delta(ZERO) == 0 and not is_semistable(ZERO)
    assert delta(DEGENERATE) == 0 and not is_semistable(DEGENERATE)


@given(velements)
def test_velement_serialization(x):
    assert VElement.from_text(x.to_text()) == x
    assert VElement.from_json(x.to_json()) == x
    arr = x.as_array()
    assert VElement.from_array(arr) == x
    assert all(arr[i, j, k] == -arr[j, i, k] for i in range(5) for j in range(5) for k in range(3))
