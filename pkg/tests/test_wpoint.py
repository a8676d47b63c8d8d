import itertools
from fractions import Fraction

from hypothesis import given

from pvs53 import linalg
from pvs53.group import H_MATRICES
from pvs53.maps import Phi2, Phi3, span_point
from pvs53.tensor import Alt2Tensor
from pvs53.wpoint import (
    Q_form,
    W_LITERAL,
    bilinear_to_wedge,
    build_w,
    eight_w,
    f_H,
    f_H_bilinear,
    lie_bracket_2x2,
    module_action,
    q_bilinear,
    q_invariance_check,
    q_of_H,
)
from strategies import vectors


def test_q_values():
    assert q_bilinear([1, 0, 0, 0, 0], [0, 0, 0, 0, 1]) == 1
    assert q_bilinear([0, 0, 1, 0, 0], [0, 0, 1, 0, 0]) == Fraction(1, 6)
    assert q_bilinear([0, 1, 0, 0, 0], [0, 0, 0, 1, 0]) == Fraction(-1, 4)


def test_q_of_H_values():
    assert q_of_H(1, [1, 0, 0, 0, 0], [0, 0, 0, 0, 1]) == -4
    assert q_of_H(0, [1, 0, 0, 0, 0], [0, 0, 0, 1, 0]) == 1
    # Q(H_0 a, b) = a0 b3 - a1 b2 / 2 + a2 b1 / 2 - a3 b0
    assert q_of_H(0, [0, 1, 0, 0, 0], [0, 0, 1, 0, 0]) == Fraction(-1, 2)
    assert q_of_H(2, [0, 0, 0, 0, 1], [0, 1, 0, 0, 0]) == -1


@given(vectors(5), vectors(5))
def test_q_invariant(a, b):
    for i in range(3):
        assert q_invariance_check(i, a, b) == 0


def test_f_H_values():
    want = ["4*m0^m3 - 12*m1^m2", "-4*m0^m4 + 8*m1^m3", "4*m1^m4 - 12*m2^m3"]
    assert [f_H(i) for i in range(3)] == [Alt2Tensor.from_text(t) for t in want]


def test_f_H_is_alternating():
    for i in range(3):
        m = f_H_bilinear(i)
        assert linalg.equal(m, -m.T)


def test_f_H_is_h_homomorphism():
    # f_[H', H] = H' . f_H under (Hf)(a, b) = -f(Ha, b) - f(a, Hb)
    for i, j in itertools.product(range(3), repeat=2):
        hi, hj = H_MATRICES[i], H_MATRICES[j]
        lhs = bilinear_to_wedge(f_H_bilinear(lie_bracket_2x2(hi, hj)))
        rhs = bilinear_to_wedge(module_action(hi, f_H_bilinear(j)))
        assert lhs == rhs


def test_w_assembly():
    assert eight_w() == W_LITERAL.scale(8)
    assert build_w() == W_LITERAL
    assert W_LITERAL.to_expression() == (
        "(m0^m3 - 3*m1^m2) (x) l2 + (-m0^m4 + 2*m1^m3) (x) l1 + (m1^m4 - 3*m2^m3) (x) l0"
    )


def test_S_and_Q():
    S = ["m1^m4 - 3*m2^m3", "m0^m4 - 2*m1^m3", "m0^m3 - 3*m1^m2"]
    assert Phi3(build_w()) == span_point([Alt2Tensor.from_text(t) for t in S])
    assert Phi2(W_LITERAL) == Q_form().scale(72)
