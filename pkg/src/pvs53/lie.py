"""sl(2)-module structure of sl(5) + sl(3) under the principal sl(2) = h.

sl(5) = U1 + U2 + U3 + U4 (highest weights 2, 4, 6, 8) and
sl(3) = V1' + V2' (highest weights 2, 4).  Bracket tables, subalgebra
closure, the seven intermediate subalgebras between h and sl(5) + sl(3),
stabilizers in gl(5) + gl(3), and fixed vectors in a few representations.
"""

from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from . import linalg
from .group import A0, A0p, A1, A1p, A2, A2p, LiePair, bracket, h_image, lie_act_V_matrix, wedge2_derivation
from .linalg import Echelon, rat
from .maps import VElement
from .tensor import monomials

FAMILY_ARITY = {"U1": 3, "U2": 5, "U3": 7, "U4": 9, "V1": 3, "V2": 5}
SL5_FAMILIES = ("U1", "U2", "U3", "U4")
SL3_FAMILIES = ("V1", "V2")
PAIR_DIM = 25 + 9


def B(b0, b1, b2, b3, b4) -> np.ndarray:
    return linalg.frac_array(
        [
            [2 * b2, -3 * b1, b0, 0, 0],
            [12 * b3, -b2, -2 * b1, 3 * b0, 0],
            [6 * b4, 3 * b3, -2 * b2, 3 * b1, 6 * b0],
            [0, 3 * b4, -2 * b3, -b2, 12 * b1],
            [0, 0, b4, -3 * b3, 2 * b2],
        ]
    )


def C(c0, c1, c2, c3, c4, c5, c6) -> np.ndarray:
    return linalg.frac_array(
        [
            [c3, 3 * c2, -c1, c0, 0],
            [12 * c4, -2 * c3, -4 * c2, 0, 4 * c0],
            [6 * c5, -6 * c4, 0, -6 * c2, 6 * c1],
            [4 * c6, 0, -4 * c4, 2 * c3, 12 * c2],
            [0, c6, -c5, 3 * c4, -c3],
        ]
    )


def D(d0, d1, d2, d3, d4, d5, d6, d7, d8) -> np.ndarray:
    return linalg.frac_array(
        [
            [d4, -d3, d2, -d1, d0],
            [4 * d5, -4 * d4, 4 * d3, -4 * d2, 4 * d1],
            [6 * d6, -6 * d5, 6 * d4, -6 * d3, 6 * d2],
            [4 * d7, -4 * d6, 4 * d5, -4 * d4, 4 * d3],
            [d8, -d7, d6, -d5, d4],
        ]
    )


def Bp(b0, b1, b2, b3, b4) -> np.ndarray:
    return linalg.frac_array([[b2, -b1, b0], [2 * b3, -2 * b2, 2 * b1], [b4, -b3, b2]])


def family_matrix(tag: str, params: Sequence) -> np.ndarray:
    if tag not in FAMILY_ARITY:
        raise KeyError(f"unknown family {tag!r}")
    if len(params) != FAMILY_ARITY[tag]:
        raise ValueError(f"{tag} takes {FAMILY_ARITY[tag]} parameters, got {len(params)}")
    p = [rat(v) for v in params]
    if tag == "U1":
        return A0 * p[0] + A1 * p[1] + A2 * p[2]
    if tag == "V1":
        return A0p * p[0] + A1p * p[1] + A2p * p[2]
    return {"U2": B, "U3": C, "U4": D, "V2": Bp}[tag](*p)


def family_pair(tag: str, params: Sequence) -> LiePair:
    """The family element placed in its own factor, zero in the other."""
    m = family_matrix(tag, params)
    if tag in SL5_FAMILIES:
        return LiePair(m, linalg.zeros(3, 3))
    return LiePair(linalg.zeros(5, 5), m)


def unit(n: int, k: int) -> list[int]:
    return [int(i == k) for i in range(n)]


def family_basis(tag: str) -> list[LiePair]:
    n = FAMILY_ARITY[tag]
    return [family_pair(tag, unit(n, k)) for k in range(n)]


# decomposition


class _Decomposer:
    """Coordinates on a family basis of sl(n), solved through a fixed inverse."""

    def __init__(self, tags: Sequence[str], n: int):
        self.tags = tuple(tags)
        self.n = n
        cols = []
        for tag in tags:
            for k in range(FAMILY_ARITY[tag]):
                cols.append(family_matrix(tag, unit(FAMILY_ARITY[tag], k)).reshape(-1))
        m = np.array(cols, dtype=object).T  # n^2 x (n^2 - 1)
        # the last diagonal entry is fixed by tracelessness
        self.inverse = linalg.inv(m[:-1])

    def __call__(self, x: np.ndarray) -> dict[str, list[Fraction]]:
        x = linalg.frac_array(x)
        if x.shape != (self.n, self.n):
            raise ValueError(f"expected a {self.n}x{self.n} matrix")
        if np.trace(x) != 0:
            raise ValueError("matrix is not traceless")
        coords = list(self.inverse.dot(x.reshape(-1)[:-1]))
        out, k = {}, 0
        for tag in self.tags:
            out[tag] = coords[k : k + FAMILY_ARITY[tag]]
            k += FAMILY_ARITY[tag]
        return out


_decompose5 = None
_decompose3 = None


def decompose_sl5(x) -> dict[str, list[Fraction]]:
    global _decompose5
    if _decompose5 is None:
        _decompose5 = _Decomposer(SL5_FAMILIES, 5)
    return _decompose5(x)


def decompose_sl3(y) -> dict[str, list[Fraction]]:
    global _decompose3
    if _decompose3 is None:
        _decompose3 = _Decomposer(SL3_FAMILIES, 3)
    return _decompose3(y)


def decompose(p: LiePair) -> dict[str, list[Fraction]]:
    return {**decompose_sl5(p.X), **decompose_sl3(p.Y)}


def reassemble(parts: dict[str, Sequence]) -> LiePair:
    total = LiePair.zero()
    for tag, params in parts.items():
        total = total + family_pair(tag, params)
    return total


# bracket tables


@dataclass
class Identity:
    name: str
    ok: bool
    detail: str = ""


def _linear_identity(name: str, arity: int, lhs: Callable, rhs: Callable) -> Identity:
    """Check an identity linear in a parameter vector on every unit vector."""
    for k in range(arity):
        u = unit(arity, k)
        left, right = lhs(u), rhs(u)
        if not linalg.equal(left, right):
            return Identity(name, False, f"mismatch at unit parameter {k}: {left.tolist()} != {right.tolist()}")
    return Identity(name, True)


def _br(x, y):
    return x.dot(y) - y.dot(x)


def highest_weight_identities() -> list[Identity]:
    out = []
    for tag, top, hw in (("U2", A1, 4), ("U3", A1, 6), ("U4", A1, 8), ("V2", A1p, 4)):
        raise_ = A0 if tag != "V2" else A0p
        v = family_matrix(tag, unit(FAMILY_ARITY[tag], 0))
        out.append(Identity(f"highest-weight/{tag}/killed-by-raising", linalg.is_zero(_br(raise_, v))))
        out.append(Identity(f"highest-weight/{tag}/weight-{hw}", linalg.equal(_br(top, v), v * hw)))
    return out


def lowering_identities() -> list[Identity]:
    return [
        _linear_identity("lowering/U2", 5, lambda b: _br(A2, B(*b)), lambda b: B(0, b[0], 6 * b[1], b[2], 4 * b[3])),
        _linear_identity(
            "lowering/U3",
            7,
            lambda c: _br(A2, C(*c)),
            lambda c: C(0, 2 * c[0], c[1], -12 * c[2], c[3], 10 * c[4], 3 * c[5]),
        ),
        _linear_identity("lowering/U4", 9, lambda d: _br(A2, D(*d)), lambda d: D(0, *[(i + 1) * d[i] for i in range(8)])),
        _linear_identity(
            "lowering/V2", 5, lambda b: _br(A2p, Bp(*b)), lambda b: Bp(0, b[0], 2 * b[1], 3 * b[2], 4 * b[3])
        ),
    ]


def product_identities() -> list[Identity]:
    f = Fraction
    B2 = B(0, 0, 1, 0, 0)
    C3 = C(0, 0, 0, 1, 0, 0, 0)
    D4 = D(0, 0, 0, 0, 1, 0, 0, 0, 0)
    return [
        _linear_identity(
            "product/[B2,B]",
            5,
            lambda b: _br(B2, B(*b)),
            lambda b: A0 * f(-21, 5) * b[1] + A2 * f(-21, 5) * b[3]
            + C(0, -4 * b[0], f(-8, 5) * b[1], 0, f(-8, 5) * b[3], -4 * b[4], 0),
        ),
        _linear_identity(
            "product/[B2,C]",
            7,
            lambda c: _br(B2, C(*c)),
            lambda c: B(f(-16, 7) * c[1], f(-16, 7) * c[2], 0, f(-16, 7) * c[4], f(-16, 7) * c[5])
            + D(0, -3 * c[0], f(-12, 7) * c[1], f(-15, 7) * c[2], 0, f(-15, 7) * c[4], f(-12, 7) * c[5], -3 * c[6], 0),
        ),
        _linear_identity(
            "product/[B2,D]",
            9,
            lambda d: _br(B2, D(*d)),
            lambda d: C(-3 * d[1], -4 * d[2], -d[3], 0, -d[5], -4 * d[6], -3 * d[7]),
        ),
        _linear_identity(
            "product/[C3,C]",
            7,
            lambda c: _br(C3, C(*c)),
            lambda c: A0 * 6 * c[2] - A2 * 6 * c[4] + C(-c[0], c[1], c[2], 0, -c[4], -c[5], c[6]),
        ),
        _linear_identity(
            "product/[C3,D]",
            9,
            lambda d: _br(C3, D(*d)),
            lambda d: B(f(20, 7) * d[2], f(10, 7) * d[3], 0, f(-10, 7) * d[5], f(-20, 7) * d[6])
            + D(2 * d[0], -d[1], f(-13, 7) * d[2], f(-9, 7) * d[3], 0, f(9, 7) * d[5], f(13, 7) * d[6], d[7], -2 * d[8]),
        ),
        _linear_identity(
            "product/[D4,D]",
            9,
            lambda d: _br(D4, D(*d)),
            lambda d: A0 * -14 * d[3] - A2 * 14 * d[5] + C(-5 * d[1], 5 * d[2], 3 * d[3], 0, 3 * d[5], 5 * d[6], -5 * d[7]),
        ),
        _linear_identity(
            "product/[B'2,B']",
            5,
            lambda b: _br(Bp(0, 0, 1, 0, 0), Bp(*b)),
            lambda b: A0p * -3 * b[1] - A2p * 3 * b[3],
        ),
    ]


SPAN_CLAIMS = (
    ("U2", "U2", ("U1", "U3")),
    ("U2", "U3", ("U2", "U4")),
    ("U2", "U4", ("U3",)),
    ("U3", "U3", ("U1", "U3")),
    ("U3", "U4", ("U2", "U4")),
    ("U4", "U4", ("U1", "U3")),
    ("V2", "V2", ("V1",)),
)


def span_statement(a: str, b: str, claimed: Sequence[str]) -> Identity:
    """``[a, b]`` lies in the sum of ``claimed`` and spans all of it."""
    name = f"span/[{a},{b}]=" + "+".join(claimed)
    ech = Echelon(PAIR_DIM)
    for x in family_basis(a):
        for y in family_basis(b):
            z = bracket(x, y)
            parts = decompose(z)
            stray = [t for t, v in parts.items() if t not in claimed and any(v)]
            if stray:
                return Identity(name, False, f"bracket has components in {stray}")
            ech.add(z.vector())
    expected = sum(FAMILY_ARITY[t] for t in claimed)
    if len(ech) != expected:
        return Identity(name, False, f"brackets span dimension {len(ech)}, expected {expected}")
    return Identity(name, True)


def h_relations() -> list[Identity]:
    p0, p1, p2 = h_image()
    return [
        Identity("sl2/[P1,P0]=2P0", bracket(p1, p0) == p0.scale(2)),
        Identity("sl2/[P1,P2]=-2P2", bracket(p1, p2) == p2.scale(-2)),
        Identity("sl2/[P0,P2]=-P1", bracket(p0, p2) == p1.scale(-1)),
    ]


def verify_bracket_tables() -> list[Identity]:
    report = h_relations() + highest_weight_identities() + lowering_identities() + product_identities()
    report += [span_statement(a, b, c) for a, b, c in SPAN_CLAIMS]
    return report


# subalgebras


def closure(basis: Iterable[LiePair]) -> list[LiePair]:
    """Smallest bracket-closed subspace containing ``basis``.

    Breadth-first: each accepted element is bracketed with every element
    accepted before it.  The returned basis is in reduced echelon form.
    """
    ech = Echelon(PAIR_DIM)
    elems: list[LiePair] = []
    for b in basis:
        if ech.add(b.vector()):
            elems.append(b)
    i = 1
    while i < len(elems):
        for j in range(i):
            z = bracket(elems[j], elems[i])
            if ech.add(z.vector()):
                elems.append(z)
        i += 1
    return [LiePair.from_vector(r) for r in ech.rows]


def dimension(basis: Sequence[LiePair]) -> int:
    if not basis:
        return 0
    return linalg.rank(np.array([b.vector() for b in basis], dtype=object))


def same_subspace(a: Sequence[LiePair], b: Sequence[LiePair]) -> bool:
    return linalg.same_span([x.vector() for x in a], [y.vector() for y in b])


def contains(big: Sequence[LiePair], small: Sequence[LiePair]) -> bool:
    ech = Echelon(PAIR_DIM)
    for x in big:
        ech.add(x.vector())
    return all(ech.contains(y.vector()) for y in small)


def is_subalgebra(basis: Sequence[LiePair]) -> bool:
    ech = Echelon(PAIR_DIM)
    for x in basis:
        ech.add(x.vector())
    return all(ech.contains(bracket(x, y).vector()) for x, y in itertools.combinations(basis, 2))


def h_basis() -> list[LiePair]:
    return list(h_image())


INTERMEDIATE = (
    ("h", ()),
    ("sl2 x sl2", ("U1", "V1")),
    ("sl2 x sl3", ("U1", "V1", "V2")),
    ("so5 x sl2", ("U1", "U3", "V1")),
    ("so5 x sl3", ("U1", "U3", "V1", "V2")),
    ("sl5 x sl2", ("U1", "U2", "U3", "U4", "V1")),
    ("sl5 x sl3", ("U1", "U2", "U3", "U4", "V1", "V2")),
)


@functools.lru_cache(maxsize=None)
def _members() -> tuple[tuple[str, tuple[LiePair, ...]], ...]:
    out = []
    for name, tags in INTERMEDIATE:
        basis = h_basis() + [x for t in tags for x in family_basis(t)]
        out.append((name, tuple(closure(basis))))
    return tuple(out)


def enumerate_intermediate() -> list[tuple[str, list[LiePair]]]:
    """The seven subalgebras between h and sl(5) + sl(3), smallest first."""
    return [(name, list(basis)) for name, basis in _members()]


def identify(basis: Sequence[LiePair]) -> str | None:
    d = dimension(basis)
    for name, member in enumerate_intermediate():
        if len(member) == d and same_subspace(member, basis):
            return name
    return None


# stabilizers and fixed vectors


def _elementary_pairs() -> list[LiePair]:
    out = []
    for k in range(PAIR_DIM):
        v = linalg.zeros(PAIR_DIM)
        v[k] = Fraction(1)
        out.append(LiePair.from_vector(v))
    return out


def stabilizer_algebra(x: VElement) -> list[LiePair]:
    """Basis of ``{(X, Y) in gl(5) + gl(3) : (X, Y) . x = 0}``."""
    xv = np.array(x.flat(), dtype=object)
    cols = [lie_act_V_matrix(e).dot(xv) for e in _elementary_pairs()]
    system = np.array(cols, dtype=object).T
    return [LiePair.from_vector(v) for v in linalg.nullspace(system)]


def sl_part(basis: Sequence[LiePair]) -> list[LiePair]:
    """Intersection of span(basis) with sl(5) + sl(3)."""
    if not basis:
        return []
    traces = np.array([[np.trace(b.X) for b in basis], [np.trace(b.Y) for b in basis]], dtype=object)
    out = []
    for c in linalg.nullspace(traces):
        total = LiePair.zero()
        for coef, b in zip(c, basis):
            if coef:
                total = total + b.scale(coef)
        out.append(total)
    return out


def contravariant_derivation(m: np.ndarray, degree: int) -> np.ndarray:
    """Matrix of ``f -> d/de f((1 - eM) a)`` on degree-``degree`` forms.

    Basis: :func:`monomials` order.
    """
    n = m.shape[0]
    mons = monomials(n, degree)
    index = {mon: k for k, mon in enumerate(mons)}
    out = linalg.zeros(len(mons), len(mons))
    for col, mon in enumerate(mons):
        for i, e in enumerate(mon):
            if not e:
                continue
            # -e a^(mon - e_i) * sum_j M[i, j] a_j
            for j in range(n):
                if m[i, j]:
                    new = list(mon)
                    new[i] -= 1
                    new[j] += 1
                    out[index[tuple(new)], col] -= e * m[i, j]
    return out


REPRESENTATIONS = ("V", "wedge2", "sym2_V2_dual", "sym2_V1_dual")


def rep_matrix(p: LiePair, rep: str) -> np.ndarray:
    if rep == "V":
        return lie_act_V_matrix(p)
    if rep == "wedge2":
        return wedge2_derivation(p.X)
    if rep == "sym2_V2_dual":
        return contravariant_derivation(p.Y, 2)
    if rep == "sym2_V1_dual":
        return contravariant_derivation(p.X, 2)
    raise KeyError(f"unknown representation {rep!r}; choose from {REPRESENTATIONS}")


def fixed_subspace(algebra: Sequence[LiePair], rep: str) -> list[np.ndarray]:
    """Joint kernel of every algebra element acting on ``rep``."""
    mats = [rep_matrix(p, rep) for p in algebra]
    if not mats:
        raise ValueError("empty algebra")
    return linalg.nullspace(np.concatenate(mats, axis=0))


def weight_multiset(rep: str) -> list[Fraction]:
    """Eigenvalues of the image of H_1 on ``rep`` (its matrix is diagonal)."""
    m = rep_matrix(h_image()[1], rep)
    n = m.shape[0]
    if any(m[i, j] for i in range(n) for j in range(n) if i != j):
        raise ValueError("H_1 does not act diagonally on this basis")
    return sorted((m[i, i] for i in range(n)), reverse=True)


def isotypic_component(rep: str, highest: int) -> list[np.ndarray]:
    """Span of the irreducible h-submodules of ``rep`` with highest weight ``highest``."""
    e, hmat, f = (rep_matrix(p, rep) for p in h_image())
    n = hmat.shape[0]
    shifted = hmat - linalg.identity(n) * highest
    tops = linalg.nullspace(np.concatenate([e, shifted], axis=0))
    vectors = []
    for v in tops:
        for _ in range(highest + 1):
            vectors.append(v)
            v = f.dot(v)
    return list(linalg.row_space(vectors, n)) if vectors else []


def invariant_subspaces_of_dim(rep: str, dim: int) -> list[list[np.ndarray]]:
    """All isotypic components of ``rep`` of exactly dimension ``dim``."""
    weights = weight_multiset(rep)
    found = []
    for hw in sorted({int(w) for w in weights if w >= 0}, reverse=True):
        comp = isotypic_component(rep, hw)
        if len(comp) == dim:
            found.append(comp)
    return found


# consistency probe of the classification


def random_family_element(rng: random.Random, tags: Sequence[str]) -> LiePair:
    total = LiePair.zero()
    for tag in tags:
        params = [Fraction(rng.randint(-3, 3)) for _ in range(FAMILY_ARITY[tag])]
        if not any(params):
            params[0] = Fraction(1)
        total = total + family_pair(tag, params)
    return total


PROBE_SHAPES = (
    ("U1",),
    ("U2",),
    ("U3",),
    ("U4",),
    ("V1",),
    ("V2",),
    ("U2", "V2"),
    ("U1", "V1"),
    ("U1", "U2", "U3", "U4", "V1", "V2"),
)


@dataclass
class ProbeResult:
    member: str
    shape: tuple[str, ...]
    before: int
    after: int
    landed: str | None = field(default=None)


def classification_probe(rng: random.Random) -> list[ProbeResult]:
    """Add one outside vector to each member and see where the closure lands."""
    members = enumerate_intermediate()
    out = []
    for name, basis in members:
        for shape in PROBE_SHAPES:
            v = random_family_element(rng, shape)
            if contains(basis, [v]):
                continue
            grown = closure(basis + [v])
            out.append(ProbeResult(name, shape, len(basis), len(grown), identify(grown)))
    return out
