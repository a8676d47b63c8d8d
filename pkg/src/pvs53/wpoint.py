"""The PGL(2)-fixed point w, built from the invariant bilinear form Q on binary quartics."""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from . import linalg
from .group import QUARTIC_ACTION
from .linalg import rat
from .maps import VElement
from .tensor import Alt2Tensor, SymForm

# coefficients of Q(a, b) = a0 b4 - a1 b3 / 4 + a2 b2 / 6 - a3 b1 / 4 + a4 b0
Q_MATRIX = linalg.zeros(5, 5)
for _i, _c in enumerate((1, Fraction(-1, 4), Fraction(1, 6), Fraction(-1, 4), 1)):
    Q_MATRIX[_i, 4 - _i] = Fraction(_c)

W_LITERAL = VElement.from_components(
    [
        Alt2Tensor({(1, 4): 1, (2, 3): -3}),
        Alt2Tensor({(0, 4): -1, (1, 3): 2}),
        Alt2Tensor({(0, 3): 1, (1, 2): -3}),
    ]
)


def q_bilinear(a: Sequence, b: Sequence) -> Fraction:
    a = np.array([rat(v) for v in a], dtype=object)
    b = np.array([rat(v) for v in b], dtype=object)
    return a.dot(Q_MATRIX).dot(b)


def Q_form() -> SymForm:
    """``Q(a) = a0 a4 - a1 a3 / 4 + a2^2 / 12``, i.e. half of ``Q(a, a)``."""
    return SymForm(
        5,
        2,
        {(1, 0, 0, 0, 1): 1, (0, 1, 0, 1, 0): Fraction(-1, 4), (0, 0, 2, 0, 0): Fraction(1, 12)},
        dual=True,
    )


def h_coords(h: np.ndarray) -> list[Fraction]:
    """Coordinates of a traceless 2x2 matrix on ``H_0, H_1, H_2``."""
    if h[0, 0] + h[1, 1] != 0:
        raise ValueError("not in sl(2)")
    return [h[0, 1], h[0, 0], -h[1, 0]]


def quartic_action_matrix(h: np.ndarray) -> np.ndarray:
    c = h_coords(h)
    return sum((QUARTIC_ACTION[i] * c[i] for i in range(3)), linalg.zeros(5, 5))


def f_H_bilinear(h: int | np.ndarray) -> np.ndarray:
    """Matrix of the alternating form ``(a, b) -> Q(Ha, b)``."""
    act = QUARTIC_ACTION[h] if isinstance(h, int) else quartic_action_matrix(h)
    return act.T.dot(Q_MATRIX)


def module_action(h: np.ndarray, form: np.ndarray) -> np.ndarray:
    """``(Hf)(a, b) = -f(Ha, b) - f(a, Hb)`` on bilinear-form matrices."""
    act = quartic_action_matrix(h)
    return -(act.T.dot(form) + form.dot(act))


# (m_i, a)_4 = a_i / binom(4, i) for a = sum a_i v1^{4-i} v2^i
_DUAL_SCALE = [comb(4, i) for i in range(5)]


def bilinear_to_wedge(form: np.ndarray) -> Alt2Tensor:
    """Alternating form on quartics -> element of wedge^2 V1.

    Uses ``m ^ m'(a, b) = (m, a)(m', b) - (m, b)(m', a)`` with the degree-4
    pairing, so the coefficient of ``m_i ^ m_j`` is ``f(alpha_i, alpha_j)``
    where ``alpha_i = binom(4, i) v1^{4-i} v2^i`` is dual to ``m_i``.
    """
    coords = {}
    for i in range(5):
        for j in range(i + 1, 5):
            coords[(i, j)] = form[i, j] * _DUAL_SCALE[i] * _DUAL_SCALE[j]
    return Alt2Tensor(coords)


def f_H(i: int) -> Alt2Tensor:
    if i not in (0, 1, 2):
        raise IndexError("H-index is 0, 1 or 2")
    return bilinear_to_wedge(f_H_bilinear(i))


def eight_w() -> VElement:
    """``sum_i f_{H_i} (x) 2 l_{2-i}``: H_0, H_1, H_2 pair with 2 l_2, 2 l_1, 2 l_0."""
    parts = [None, None, None]
    for i in range(3):
        parts[2 - i] = f_H(i).scale(2)
    return VElement.from_components(parts)


def build_w() -> VElement:
    w = eight_w().scale(Fraction(1, 8))
    if w != W_LITERAL:
        raise AssertionError("assembled point differs from the closed-form w")
    return w


def q_invariance_check(i: int, a: Sequence, b: Sequence) -> Fraction:
    """``Q(Ha, b) + Q(a, Hb)``; identically zero by invariance of Q."""
    ha = QUARTIC_ACTION[i].dot(np.array([rat(v) for v in a], dtype=object))
    hb = QUARTIC_ACTION[i].dot(np.array([rat(v) for v in b], dtype=object))
    return q_bilinear(ha, b) + q_bilinear(a, hb)


def q_of_H(i: int, a: Sequence, b: Sequence) -> Fraction:
    """``Q(H_i a, b)``."""
    return q_bilinear(QUARTIC_ACTION[i].dot(np.array([rat(v) for v in a], dtype=object)), b)


def lie_bracket_2x2(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a.dot(b) - b.dot(a)

