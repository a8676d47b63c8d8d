"""The action of G = GL(5) x GL(3) on V and on the target spaces of the maps,
the twisted embedding PGL(2) -> G, and the matching Lie algebra action.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from . import linalg
from .linalg import SingularMatrixError, rat
from .maps import N1, N2, DualMatrix3, Phi1Value, PlueckerPoint, VElement
from .tensor import PAIRS, SymForm, fmt_rat, monomials, parse_rat, sym_power, sym_product


def _matrix_json(m: np.ndarray) -> list[list[str]]:
    return [[fmt_rat(c) for c in row] for row in m]


def _matrix_from_json(rows) -> np.ndarray:
    return linalg.frac_array([[parse_rat(c) for c in row] for row in rows])


@dataclass(frozen=True, eq=False)
class GroupElement:
    g1: np.ndarray
    g2: np.ndarray

    def __post_init__(self):
        g1 = linalg.frac_array(self.g1)
        g2 = linalg.frac_array(self.g2)
        if g1.shape != (N1, N1) or g2.shape != (N2, N2):
            raise ValueError("group elements are (5x5, 3x3) pairs")
        if linalg.det(g1) == 0 or linalg.det(g2) == 0:
            raise SingularMatrixError("group element must be invertible")
        object.__setattr__(self, "g1", g1)
        object.__setattr__(self, "g2", g2)

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls(linalg.identity(N1), linalg.identity(N2))

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.g1.dot(other.g1), self.g2.dot(other.g2))

    def inverse(self) -> "GroupElement":
        return GroupElement(linalg.inv(self.g1), linalg.inv(self.g2))

    @property
    def det1(self) -> Fraction:
        return linalg.det(self.g1)

    @property
    def det2(self) -> Fraction:
        return linalg.det(self.g2)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupElement)
            and linalg.equal(self.g1, other.g1)
            and linalg.equal(self.g2, other.g2)
        )

    def to_json(self) -> dict:
        return {"g1": _matrix_json(self.g1), "g2": _matrix_json(self.g2)}

    @classmethod
    def from_json(cls, obj: Mapping) -> "GroupElement":
        return cls(_matrix_from_json(obj["g1"]), _matrix_from_json(obj["g2"]))


# induced matrices


def wedge2_matrix(g: np.ndarray) -> np.ndarray:
    """Matrix of wedge^2 g on the basis ``m_i ^ m_j`` (i < j)."""
    n = len(PAIRS)
    out = linalg.zeros(n, n)
    for col, (i, j) in enumerate(PAIRS):
        for row, (k, l) in enumerate(PAIRS):
            out[row, col] = g[k, i] * g[l, j] - g[l, i] * g[k, j]
    return out


def wedge2_derivation(x: np.ndarray) -> np.ndarray:
    """Matrix of ``m ^ m' -> Xm ^ m' + m ^ Xm'`` on wedge^2."""
    n = len(PAIRS)
    out = linalg.zeros(n, n)
    for col, (i, j) in enumerate(PAIRS):
        for row, (k, l) in enumerate(PAIRS):
            out[row, col] = (
                x[k, i] * (l == j) + (k == i) * x[l, j] - x[l, i] * (k == j) - (l == i) * x[k, j]
            )
    return out


def act_V(g: GroupElement, x: VElement) -> VElement:
    c = linalg.frac_array(x.coords)
    return VElement(wedge2_matrix(g.g1).dot(c).dot(g.g2.T).tolist())


def substitute(f: SymForm, images: Sequence[SymForm]) -> SymForm:
    """Replace the i-th generator of the symmetric algebra by ``images[i]``."""
    total = SymForm.zero(f.dim, f.degree, f.dual)
    cache: dict[tuple[int, int], SymForm] = {}
    for idx, c in f.items():
        term = SymForm.one(f.dim, f.dual)
        for i, e in enumerate(idx):
            if e:
                if (i, e) not in cache:
                    cache[(i, e)] = sym_power(images[i], e)
                term = sym_product(term, cache[(i, e)])
        total = total + term.scale(c)
    return total


def act_covariant(g: np.ndarray, f: SymForm) -> SymForm:
    """Induced action of g on ``Sym^d W``: ``e_i -> sum_k g[k, i] e_k``."""
    if f.dual:
        raise ValueError("form is contravariant")
    if g.shape != (f.dim, f.dim):
        raise ValueError("dimension mismatch")
    images = [SymForm.linear([g[k, i] for k in range(f.dim)]) for i in range(f.dim)]
    return substitute(f, images)


def act_contravariant(g: np.ndarray, f: SymForm) -> SymForm:
    """``(g f)(a) = f(g^{-1} a)``."""
    if not f.dual:
        raise ValueError("form is covariant")
    g = np.asarray(g, dtype=object)
    if g.shape != (f.dim, f.dim):
        raise ValueError("dimension mismatch")
    gi = linalg.inv(g)
    images = [SymForm.linear([gi[i, j] for j in range(f.dim)], dual=True) for i in range(f.dim)]
    return substitute(f, images)


def act_dual_vector(g: np.ndarray, c: Sequence) -> list[Fraction]:
    """Contragredient action on V1* coordinates (on ``m_i^*``)."""
    return list(linalg.inv(g).T.dot(np.array([rat(v) for v in c], dtype=object)))


def act_phi1_value(g: GroupElement, value: Phi1Value) -> Phi1Value:
    """Action on ``V1* (x) Sym^2 V2`` (no determinant twist)."""
    gi = linalg.inv(g.g1)
    moved = [act_covariant(g.g2, p) for p in value.parts]
    parts = []
    for j in range(N1):
        acc = SymForm.zero(N2, 2)
        for i in range(N1):
            if gi[i, j]:
                acc = acc + moved[i].scale(gi[i, j])
        parts.append(acc)
    return Phi1Value(parts)


def act_phi1_bar(g: GroupElement, m: DualMatrix3) -> DualMatrix3:
    """Action on ``V1* (x) V2 (x) V2``: contragredient on entries, g2 on both indices."""
    out = []
    for i in range(3):
        row = []
        for j in range(3):
            acc = [Fraction(0)] * N1
            for a in range(3):
                for b in range(3):
                    coef = g.g2[i, a] * g.g2[j, b]
                    if coef:
                        acc = [u + coef * v for u, v in zip(acc, m[a, b])]
            row.append(act_dual_vector(g.g1, acc))
        out.append(row)
    return DualMatrix3(out)


def act_quadratic_matrix(g: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Contragredient action on a symmetric matrix of a quadratic form."""
    gi = linalg.inv(g)
    return gi.T.dot(b).dot(gi)


def act_phi3_value(g: GroupElement, m: DualMatrix3) -> DualMatrix3:
    return m.conjugate(g.g1, g.g2)


def act_grassmann(g1: np.ndarray, p: PlueckerPoint) -> PlueckerPoint:
    rows = p.spanning_matrix()
    return PlueckerPoint.from_matrix(rows.dot(wedge2_matrix(g1).T))


def act_grassmann_minors(g1: np.ndarray, p: PlueckerPoint) -> PlueckerPoint:
    """Same as :func:`act_grassmann` through the 120x120 matrix of wedge^3 wedge^2 g1.

    Slow; kept as an independent route for tests.
    """
    from .maps import TRIPLES

    w2 = wedge2_matrix(g1)
    coords = []
    for rows in TRIPLES:
        total = Fraction(0)
        for cols, c in zip(TRIPLES, p.coords):
            if c:
                total += linalg.det(w2[np.ix_(rows, cols)]) * c
        coords.append(total)
    return PlueckerPoint(coords)


# the twisted embedding PGL(2) -> G


def sym_power_matrix(h: np.ndarray, d: int) -> np.ndarray:
    """Matrix of ``Sym^d h`` on the basis ``e1^{d-k} e2^k``, k = 0..d."""
    basis = monomials(2, d)
    e1 = SymForm.linear([h[0, 0], h[1, 0]])
    e2 = SymForm.linear([h[0, 1], h[1, 1]])
    out = linalg.zeros(d + 1, d + 1)
    for col, (p, q) in enumerate(basis):
        img = sym_product(sym_power(e1, p), sym_power(e2, q))
        for row, idx in enumerate(basis):
            out[row, col] = img[idx]
    return out


def pgl2_embed(h) -> GroupElement:
    """``h -> ((det h)^-2 Sym^4 h, (det h)^-1 Sym^2 h)``."""
    h = linalg.frac_array(h)
    if h.shape != (2, 2):
        raise ValueError("need a 2x2 matrix")
    dh = linalg.det(h)
    if dh == 0:
        raise SingularMatrixError("h is singular")
    return GroupElement(sym_power_matrix(h, 4) / dh**2, sym_power_matrix(h, 2) / dh)


# Lie algebra


@dataclass(frozen=True, eq=False)
class LiePair:
    """Element (X, Y) of gl(5) + gl(3)."""

    X: np.ndarray
    Y: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "X", linalg.frac_array(self.X))
        object.__setattr__(self, "Y", linalg.frac_array(self.Y))
        if self.X.shape != (N1, N1) or self.Y.shape != (N2, N2):
            raise ValueError("LiePair is a (5x5, 3x3) pair")

    @classmethod
    def zero(cls) -> "LiePair":
        return cls(linalg.zeros(N1, N1), linalg.zeros(N2, N2))

    @classmethod
    def from_vector(cls, v: Sequence) -> "LiePair":
        v = list(v)
        return cls(np.array(v[:25], dtype=object).reshape(5, 5), np.array(v[25:], dtype=object).reshape(3, 3))

    def vector(self) -> np.ndarray:
        return np.concatenate([self.X.reshape(-1), self.Y.reshape(-1)])

    def __add__(self, other: "LiePair") -> "LiePair":
        return LiePair(self.X + other.X, self.Y + other.Y)

    def __sub__(self, other: "LiePair") -> "LiePair":
        return LiePair(self.X - other.X, self.Y - other.Y)

    def __neg__(self) -> "LiePair":
        return self.scale(-1)

    def scale(self, c) -> "LiePair":
        c = rat(c)
        return LiePair(self.X * c, self.Y * c)

    def __rmul__(self, c):
        return self.scale(c)

    def is_traceless(self) -> bool:
        return np.trace(self.X) == 0 and np.trace(self.Y) == 0

    def is_zero(self) -> bool:
        return linalg.is_zero(self.X) and linalg.is_zero(self.Y)

    def __eq__(self, other) -> bool:
        return isinstance(other, LiePair) and linalg.equal(self.X, other.X) and linalg.equal(self.Y, other.Y)

    def __repr__(self) -> str:
        return f"LiePair(X={self.X.tolist()}, Y={self.Y.tolist()})"

    def to_json(self) -> dict:
        return {"X": _matrix_json(self.X), "Y": _matrix_json(self.Y)}

    @classmethod
    def from_json(cls, obj: Mapping) -> "LiePair":
        return cls(_matrix_from_json(obj["X"]), _matrix_from_json(obj["Y"]))


def bracket(a: LiePair, b: LiePair) -> LiePair:
    return LiePair(a.X.dot(b.X) - b.X.dot(a.X), a.Y.dot(b.Y) - b.Y.dot(a.Y))


def _A(entries: dict[tuple[int, int], int], n: int) -> np.ndarray:
    m = linalg.zeros(n, n)
    for (i, j), v in entries.items():
        m[i, j] = Fraction(v)
    return m


A0 = _A({(0, 1): 1, (1, 2): 2, (2, 3): 3, (3, 4): 4}, 5)
A1 = _A({(0, 0): 4, (1, 1): 2, (3, 3): -2, (4, 4): -4}, 5)
A2 = _A({(1, 0): 4, (2, 1): 3, (3, 2): 2, (4, 3): 1}, 5)
A0p = _A({(0, 1): 1, (1, 2): 2}, 3)
A1p = _A({(0, 0): 2, (2, 2): -2}, 3)
A2p = _A({(1, 0): 2, (2, 1): 1}, 3)

# the 2x2 generators H_0, H_1, H_2 of sl(2)
H_MATRICES = (
    linalg.frac_array([[0, 1], [0, 0]]),
    linalg.frac_array([[1, 0], [0, -1]]),
    linalg.frac_array([[0, 0], [-1, 0]]),
)


def lie_matrices() -> dict[str, np.ndarray]:
    return {"A0": A0.copy(), "A1": A1.copy(), "A2": A2.copy(), "A0'": A0p.copy(), "A1'": A1p.copy(), "A2'": A2p.copy()}


def h_image() -> tuple[LiePair, LiePair, LiePair]:
    """Images of H_0, H_1, H_2: ``(A0, A0'), (A1, A1'), -(A2, A2')``."""
    return (LiePair(A0, A0p), LiePair(A1, A1p), LiePair(-A2, -A2p))


def kernel_direction() -> LiePair:
    """Tangent direction ``(I_5, -2 I_3)`` of the kernel of G -> GL(V)."""
    return LiePair(linalg.identity(N1), linalg.identity(N2) * -2)


# H_i acting on the coefficients of a binary quartic a_0 v1^4 + ... + a_4 v2^4
QUARTIC_ACTION = (
    _A({(1, 0): -4, (2, 1): -3, (3, 2): -2, (4, 3): -1}, 5),
    _A({(0, 0): -4, (1, 1): -2, (3, 3): 2, (4, 4): 4}, 5),
    _A({(0, 1): 1, (1, 2): 2, (2, 3): 3, (3, 4): 4}, 5),
)


def lie_act_quartic(i: int, a: Sequence) -> list[Fraction]:
    if i not in (0, 1, 2):
        raise IndexError("H-index is 0, 1 or 2")
    return list(QUARTIC_ACTION[i].dot(np.array([rat(v) for v in a], dtype=object)))


def lie_act_V(p: LiePair, x: VElement) -> VElement:
    """Derivation action of (X, Y) on V."""
    c = linalg.frac_array(x.coords)
    return VElement((wedge2_derivation(p.X).dot(c) + c.dot(p.Y.T)).tolist())


def lie_act_V_matrix(p: LiePair) -> np.ndarray:
    """30x30 matrix of :func:`lie_act_V` on the flattened (pair, l-index) coordinates."""
    w = wedge2_derivation(p.X)
    n = len(PAIRS)
    out = linalg.zeros(n * N2, n * N2)
    for r in range(n):
        for k in range(N2):
            for s in range(n):
                if w[r, s]:
                    out[r * N2 + k, s * N2 + k] += w[r, s]
            for kk in range(N2):
                if p.Y[k, kk]:
                    out[r * N2 + k, r * N2 + kk] += p.Y[k, kk]
    return out


# random elements for reproducible exact tests


def _rand_rat(rng: random.Random, span: int = 3, nonzero: bool = False) -> Fraction:
    while True:
        v = Fraction(rng.randint(-span, span), rng.randint(1, 2))
        if v or not nonzero:
            return v


def random_invertible(rng: random.Random, n: int, shears: int = 6, scale: bool = True) -> np.ndarray:
    """Product of elementary shears and (optionally) a diagonal matrix."""
    m = linalg.identity(n)
    for _ in range(shears):
        i, j = rng.sample(range(n), 2)
        e = linalg.identity(n)
        e[i, j] = _rand_rat(rng, 2)
        m = m.dot(e)
    if scale:
        m = m.dot(linalg.diag([_rand_rat(rng, 2, nonzero=True) for _ in range(n)]))
    return m


def random_group_element(rng: random.Random, shears: int = 6, scale: bool = True) -> GroupElement:
    return GroupElement(random_invertible(rng, N1, shears, scale), random_invertible(rng, N2, shears, scale))


def random_velement(rng: random.Random, span: int = 3) -> VElement:
    return VElement([[Fraction(rng.randint(-span, span)) for _ in range(N2)] for _ in PAIRS])


def random_pgl2(rng: random.Random) -> np.ndarray:
    while True:
        h = linalg.frac_array([[_rand_rat(rng, 3) for _ in range(2)] for _ in range(2)])
        if linalg.det(h) != 0:
            return h
