"""Equivariant maps out of V = wedge^2 V1 (x) V2, with dim V1 = 5, dim V2 = 3.

Bases: ``m_0..m_4`` of V1, ``l_0..l_2`` of V2, dual bases ``m_i^*`` and
``p_0..p_2``.  Elements of V1* are 5-tuples of coordinates on ``m_i^*``;
as functions they send ``a = sum a_i m_i`` to ``sum c_i a_i``.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from . import linalg
from .linalg import rat
from .tensor import (
    PAIR_INDEX,
    PAIRS,
    Alt2Tensor,
    SymForm,
    fmt_rat,
    parse_rat,
    perm_sign,
    sym_product,
    wedge4_to_dual,
)

N1, N2 = 5, 3

# basis n_0..n_5 of Sym^2 V2: l0^2, l1^2, l2^2, l0 l1, l1 l2, l0 l2
SYM2_BASIS: tuple[tuple[int, int, int], ...] = (
    (2, 0, 0),
    (0, 2, 0),
    (0, 0, 2),
    (1, 1, 0),
    (0, 1, 1),
    (1, 0, 1),
)
# matrix slot (t, s), t <= s, of the p-basis quadratic form carried by n_k^*
SYM2_SLOT = ((0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (0, 2))


class DegenerateSpan(ValueError):
    pass


class VElement:
    """x = sum_{i<j} m_i ^ m_j (x) x_ij, with each x_ij a vector in V2."""

    __slots__ = ("coords",)

    def __init__(self, coords: Mapping[tuple[int, int], Sequence] | Sequence[Sequence] = ()):
        rows = [[Fraction(0)] * N2 for _ in PAIRS]
        if isinstance(coords, Mapping):
            for (i, j), vec in coords.items():
                s = perm_sign((i, j))
                if s == 0:
                    raise ValueError("x_ii must vanish")
                k = PAIR_INDEX[tuple(sorted((i, j)))]
                rows[k] = [r + s * rat(c) for r, c in zip(rows[k], vec)]
        elif len(coords):
            if len(coords) != len(PAIRS) or any(len(r) != N2 for r in coords):
                raise ValueError("VElement needs a 10x3 coordinate array")
            rows = [[rat(c) for c in r] for r in coords]
        object.__setattr__(self, "coords", tuple(tuple(r) for r in rows))

    def __setattr__(self, name, value):
        raise AttributeError("VElement is immutable")

    @classmethod
    def from_components(cls, parts: Sequence[Alt2Tensor]) -> "VElement":
        """Build ``x_0 (x) l_0 + x_1 (x) l_1 + x_2 (x) l_2``."""
        if len(parts) != N2:
            raise ValueError("need three wedge^2 components")
        return cls([[parts[k].coords[p] for k in range(N2)] for p in range(len(PAIRS))])

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "VElement":
        """From a 5x5x3 array alternating in the first two axes."""
        return cls([[arr[i, j, k] for k in range(N2)] for i, j in PAIRS])

    def entry(self, i: int, j: int) -> tuple[Fraction, ...]:
        """``x_ij`` with ``x_ji = -x_ij``."""
        if i == j:
            return (Fraction(0),) * N2
        if i < j:
            return self.coords[PAIR_INDEX[(i, j)]]
        return tuple(-c for c in self.coords[PAIR_INDEX[(j, i)]])

    def entry_form(self, i: int, j: int) -> SymForm:
        return SymForm.linear(self.entry(i, j))

    def component(self, k: int) -> Alt2Tensor:
        """The wedge^2 V1 coefficient of ``l_k``."""
        return Alt2Tensor([row[k] for row in self.coords])

    def as_array(self) -> np.ndarray:
        arr = linalg.zeros(N1, N1, N2)
        for (i, j), row in zip(PAIRS, self.coords):
            for k in range(N2):
                arr[i, j, k] = row[k]
                arr[j, i, k] = -row[k]
        return arr

    def flat(self) -> list[Fraction]:
        return [c for row in self.coords for c in row]

    def __add__(self, other: "VElement") -> "VElement":
        return VElement([[a + b for a, b in zip(r, s)] for r, s in zip(self.coords, other.coords)])

    def __neg__(self) -> "VElement":
        return self.scale(-1)

    def __sub__(self, other: "VElement") -> "VElement":
        return self + (-other)

    def scale(self, t) -> "VElement":
        t = rat(t)
        return VElement([[t * c for c in r] for r in self.coords])

    def __rmul__(self, t):
        return self.scale(t)

    def __eq__(self, other) -> bool:
        return isinstance(other, VElement) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.coords)

    def __repr__(self) -> str:
        return f"VElement({self.to_expression()})"

    # serialization

    def to_text(self) -> str:
        return "\n".join(f"{i} {j} : " + " ".join(fmt_rat(c) for c in row) for (i, j), row in zip(PAIRS, self.coords))

    @classmethod
    def from_text(cls, text: str) -> "VElement":
        entries = {}
        for line in text.strip().splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            m = re.fullmatch(r"(\d)\s+(\d)\s*:\s*(\S+)\s+(\S+)\s+(\S+)", line)
            if not m:
                raise ValueError(f"cannot parse V element line: {line!r}")
            i, j = int(m[1]), int(m[2])
            if (i, j) in entries:
                raise ValueError(f"duplicate entry {i} {j}")
            entries[(i, j)] = [parse_rat(m[k]) for k in (3, 4, 5)]
        return cls(entries)

    def to_json(self) -> dict:
        return {"entries": [[i, j, [fmt_rat(c) for c in row]] for (i, j), row in zip(PAIRS, self.coords)]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "VElement":
        return cls({(i, j): [parse_rat(c) for c in vec] for i, j, vec in obj["entries"]})

    def to_expression(self) -> str:
        terms = []
        for k in (2, 1, 0):
            comp = self.component(k)
            if not comp.is_zero():
                terms.append(f"({comp.to_text()}) (x) l{k}")
        return " + ".join(terms) if terms else "0"

    def to_matrix_text(self) -> str:
        """The 5x5 alternating matrix with entries in V2."""
        names = ("l0", "l1", "l2")
        cells = [[SymForm.linear(self.entry(i, j)).to_text(names) for j in range(N1)] for i in range(N1)]
        width = max(len(c) for row in cells for c in row)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells)


# Pfaffians and phi_1

_PFAFF_TERMS = {
    # Pfaff_i: sign, and the three pairs of index pairs of the 4x4 minor
    0: (1, (((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (2, 3)))),
    1: (-1, (((0, 2), (3, 4)), ((0, 3), (2, 4)), ((0, 4), (2, 3)))),
    2: (1, (((0, 1), (3, 4)), ((0, 3), (1, 4)), ((0, 4), (1, 3)))),
    3: (-1, (((0, 1), (2, 4)), ((0, 2), (1, 4)), ((0, 4), (1, 2)))),
    4: (1, (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))),
}


def pfaffians(x: VElement) -> tuple[SymForm, ...]:
    """``Pfaff_0(x), ..., Pfaff_4(x)`` as quadratics in ``l_0, l_1, l_2``."""
    out = []
    for i in range(N1):
        sign, terms = _PFAFF_TERMS[i]
        total = SymForm.zero(N2, 2)
        for k, (p, q) in enumerate(terms):
            prod = sym_product(x.entry_form(*p), x.entry_form(*q))
            total = total + prod if k != 1 else total - prod
        out.append(total.scale(sign))
    return tuple(out)


class Phi1Value:
    """Element ``sum_i m_i^* (x) P_i`` of ``V1* (x) Sym^2 V2``."""

    __slots__ = ("parts",)

    def __init__(self, parts: Sequence[SymForm]):
        if len(parts) != N1:
            raise ValueError("need five Sym^2 V2 components")
        object.__setattr__(self, "parts", tuple(parts))

    def __setattr__(self, name, value):
        raise AttributeError("Phi1Value is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, Phi1Value) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __repr__(self) -> str:
        return " + ".join(f"m{i}* (x) ({p.to_text(('l0', 'l1', 'l2'))})" for i, p in enumerate(self.parts))

    def coordinate_matrix(self) -> np.ndarray:
        """5x6 matrix: row i holds ``P_i`` on the basis ``n_0..n_5``."""
        return linalg.frac_array([[p[idx] for idx in SYM2_BASIS] for p in self.parts])


def phi1(x: VElement) -> Phi1Value:
    return Phi1Value(pfaffians(x))


def phi1_double_sum(x: VElement) -> Phi1Value:
    """phi_1 straight from ``1/2 sum m_i^m_j^m_k^m_l (x) x_ij x_kl``.

    Independent of the Pfaffian formulas; used to cross-check them.
    """
    parts = [SymForm.zero(N2, 2) for _ in range(N1)]
    for (i, j) in PAIRS:
        for (k, l) in PAIRS:
            p, s = wedge4_to_dual((i, j, k, l))
            if s == 0:
                continue
            prod = sym_product(x.entry_form(i, j), x.entry_form(k, l))
            parts[p] = parts[p] + prod.scale(Fraction(s, 2))
    return Phi1Value(parts)


class DualMatrix3:
    """3x3 matrix whose entries lie in V1*, each a 5-tuple on ``m_i^*``."""

    __slots__ = ("entries",)

    def __init__(self, entries: Sequence[Sequence[Sequence]]):
        if len(entries) != 3 or any(len(r) != 3 for r in entries):
            raise ValueError("DualMatrix3 is 3x3")
        object.__setattr__(
            self, "entries", tuple(tuple(tuple(rat(c) for c in e) for e in row) for row in entries)
        )
        if any(len(e) != N1 for row in self.entries for e in row):
            raise ValueError("entries must be 5-vectors")

    def __setattr__(self, name, value):
        raise AttributeError("DualMatrix3 is immutable")

    def __getitem__(self, ij) -> tuple[Fraction, ...]:
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, DualMatrix3) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def scale(self, t) -> "DualMatrix3":
        t = rat(t)
        return DualMatrix3([[[t * c for c in e] for e in row] for row in self.entries])

    def is_symmetric(self) -> bool:
        return all(self.entries[i][j] == self.entries[j][i] for i in range(3) for j in range(3))

    def is_zero(self) -> bool:
        return not any(c for row in self.entries for e in row for c in e)

    def form(self, i: int, j: int) -> SymForm:
        return SymForm.linear(self.entries[i][j], dual=True)

    def times(self, b: np.ndarray) -> "DualMatrix3":
        """Right product with a 3x3 rational matrix."""
        out = []
        for j in range(3):
            row = []
            for s in range(3):
                row.append([sum((self.entries[j][i][c] * b[i, s] for i in range(3)), Fraction(0)) for c in range(N1)])
            out.append(row)
        return DualMatrix3(out)

    def conjugate(self, g1: np.ndarray, g2: np.ndarray) -> "DualMatrix3":
        """Action of (g1, g2): ``g2 M g2^{-1}`` then g1 contragrediently on entries."""
        g2i = linalg.inv(g2)
        g1t = linalg.inv(g1).T
        out = []
        for j in range(3):
            row = []
            for s in range(3):
                acc = [Fraction(0)] * N1
                for a in range(3):
                    for b in range(3):
                        coef = g2[j, a] * g2i[b, s]
                        if coef:
                            e = self.entries[a][b]
                            acc = [x + coef * y for x, y in zip(acc, e)]
                row.append(list(g1t.dot(np.array(acc, dtype=object))))
            out.append(row)
        return DualMatrix3(out)

    def to_text(self) -> str:
        names = tuple(f"m{i}*" for i in range(N1))
        cells = [[self.form(i, j).to_text(names) for j in range(3)] for i in range(3)]
        width = max(len(c) for row in cells for c in row)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells)

    def to_json(self) -> dict:
        return {"entries": [[[fmt_rat(c) for c in e] for e in row] for row in self.entries]}

    @classmethod
    def from_json(cls, obj) -> "DualMatrix3":
        return cls([[[parse_rat(c) for c in e] for e in row] for row in obj["entries"]])


def phi1_bar(x: VElement) -> DualMatrix3:
    """``(a_ij)`` with ``phi_1(x) = sum a_ij (x) l_i (x) l_j``, a_ij = a_ji."""
    pf = pfaffians(x)
    out = [[[Fraction(0)] * N1 for _ in range(3)] for _ in range(3)]
    for k, p in enumerate(pf):
        for idx, c in p.items():
            i, j = [v for v, e in enumerate(idx) for _ in range(e)]
            if i == j:
                out[i][i][k] += c
            else:
                out[i][j][k] += c / 2
                out[j][i][k] += c / 2
    return DualMatrix3(out)


def phi2_wedge(value: Phi1Value) -> list[Fraction]:
    """``P_0 ^ ... ^ P_4`` in wedge^5 Sym^2 V2, on the basis ``n_0^*..n_5^*``.

    ``n_j^* = (-1)^j n_0 ^ .. (omit n_j) .. ^ n_5``, so its coefficient is
    ``(-1)^j`` times the minor with column j deleted.
    """
    m = value.coordinate_matrix()
    out = []
    for j in range(6):
        cols = [c for c in range(6) if c != j]
        out.append((-1) ** j * linalg.det(m[:, cols]))
    return out


def sym2_dual_to_matrix(coords: Sequence[Fraction]) -> np.ndarray:
    """Symmetric p-basis matrix of ``sum c_k n_k^*`` as a quadratic form on V2."""
    b = linalg.zeros(3, 3)
    for c, (t, s) in zip(coords, SYM2_SLOT):
        b[t, s] = c
        b[s, t] = c
    return b


def Phi1_coords(x: VElement) -> list[Fraction]:
    """Phi_1(x) on the basis ``n_0^*..n_5^*``."""
    return [c / 81 for c in phi2_wedge(phi1(x))]


def Phi1(x: VElement) -> np.ndarray:
    """The ternary quadratic form Phi_1(x) as a symmetric 3x3 matrix ``b_ts``."""
    return sym2_dual_to_matrix(Phi1_coords(x))


def quad_matrix_to_form(b: np.ndarray, dual: bool = True) -> SymForm:
    """``sum b_ts p_t p_s`` as a polynomial."""
    n = b.shape[0]
    coeffs = {}
    for t in range(n):
        for s in range(n):
            idx = [0] * n
            idx[t] += 1
            idx[s] += 1
            idx = tuple(idx)
            coeffs[idx] = coeffs.get(idx, Fraction(0)) + b[t, s]
    return SymForm(n, 2, coeffs, dual)


def form_to_quad_matrix(f: SymForm) -> np.ndarray:
    if f.degree != 2:
        raise ValueError("need a quadratic form")
    b = linalg.zeros(f.dim, f.dim)
    for idx, c in f.items():
        i, j = [v for v, e in enumerate(idx) for _ in range(e)]
        if i == j:
            b[i, i] += c
        else:
            b[i, j] += c / 2
            b[j, i] += c / 2
    return b


def phi3(x: VElement) -> DualMatrix3:
    return phi1_bar(x).times(Phi1(x))


def _entry_products(m: DualMatrix3, terms) -> SymForm:
    total = SymForm.zero(N1, len(terms[0][1]), dual=True)
    for coef, cells in terms:
        prod = SymForm.one(N1, dual=True)
        for i, j in cells:
            prod = sym_product(prod, m.form(i, j))
        total = total + prod.scale(coef)
    return total


def trace_square(m: DualMatrix3) -> SymForm:
    return _entry_products(m, [(1, ((i, j), (j, i))) for i in range(3) for j in range(3)])


def determinant(m: DualMatrix3) -> SymForm:
    terms = []
    for perm in itertools.permutations(range(3)):
        terms.append((perm_sign(perm), tuple((i, perm[i]) for i in range(3))))
    return _entry_products(m, terms)


def Phi2(x: VElement) -> SymForm:
    """``tr(phi_3(x)^2)``, a quadratic form on V1."""
    return trace_square(phi3(x))


def Fx(x: VElement) -> SymForm:
    """``det phi_3(x)``, a cubic form on V1."""
    return determinant(phi3(x))


def delta(x: VElement) -> Fraction:
    """Discriminant of Phi_1(x); a relative invariant."""
    return linalg.det(Phi1(x))


def is_semistable(x: VElement) -> bool:
    return delta(x) != 0


# Grassmannian Gr(3, wedge^2 V1)

TRIPLES: tuple[tuple[int, int, int], ...] = tuple(itertools.combinations(range(len(PAIRS)), 3))
TRIPLE_INDEX = {t: k for k, t in enumerate(TRIPLES)}


class PlueckerPoint:
    """A 3-plane in k^10 by its 120 Pluecker coordinates.

    Canonical: the first nonzero coordinate (in lex order of 3-subsets) is 1.
    """

    __slots__ = ("coords",)

    def __init__(self, coords: Sequence):
        coords = [rat(c) for c in coords]
        if len(coords) != len(TRIPLES):
            raise ValueError("need 120 Pluecker coordinates")
        lead = next((c for c in coords if c), None)
        if lead is None:
            raise DegenerateSpan("all Pluecker coordinates vanish")
        object.__setattr__(self, "coords", tuple(c / lead for c in coords))

    def __setattr__(self, name, value):
        raise AttributeError("PlueckerPoint is immutable")

    @classmethod
    def from_matrix(cls, rows: np.ndarray) -> "PlueckerPoint":
        rows = np.asarray(rows, dtype=object)
        if rows.shape != (3, len(PAIRS)):
            raise ValueError("need a 3x10 matrix")
        coords = [linalg.det(rows[:, list(t)]) for t in TRIPLES]
        if not any(coords):
            raise DegenerateSpan("rows span less than a 3-plane")
        return cls(coords)

    def coordinate(self, idx: Sequence[int]) -> Fraction:
        """Alternating extension to ordered index tuples."""
        s = perm_sign(idx)
        if s == 0:
            return Fraction(0)
        return s * self.coords[TRIPLE_INDEX[tuple(sorted(idx))]]

    def spanning_matrix(self) -> np.ndarray:
        """The 3x10 matrix in reduced form on the leading triple."""
        lead = next(t for t, c in zip(TRIPLES, self.coords) if c)
        pl = self.coords[TRIPLE_INDEX[lead]]
        m = linalg.zeros(3, len(PAIRS))
        for r in range(3):
            for j in range(len(PAIRS)):
                idx = list(lead)
                idx[r] = j
                m[r, j] = self.coordinate(idx) / pl
        return m

    def relations_hold(self) -> bool:
        """All Grassmann-Pluecker quadratic relations vanish exactly."""
        n = len(PAIRS)
        for ii in itertools.combinations(range(n), 2):
            for jj in itertools.combinations(range(n), 4):
                total = Fraction(0)
                for l, j in enumerate(jj):
                    rest = jj[:l] + jj[l + 1 :]
                    total += (-1) ** l * self.coordinate(ii + (j,)) * self.coordinate(rest)
                if total:
                    return False
        return True

    def __eq__(self, other) -> bool:
        return isinstance(other, PlueckerPoint) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        nz = [(t, c) for t, c in zip(TRIPLES, self.coords) if c]
        return f"PlueckerPoint({len(nz)} nonzero coordinates)"

    def to_json(self) -> dict:
        return {"coords": [[list(t), fmt_rat(c)] for t, c in zip(TRIPLES, self.coords) if c]}

    @classmethod
    def from_json(cls, obj) -> "PlueckerPoint":
        coords = [Fraction(0)] * len(TRIPLES)
        for t, c in obj["coords"]:
            coords[TRIPLE_INDEX[tuple(t)]] = parse_rat(c)
        return cls(coords)


def components_matrix(x: VElement) -> np.ndarray:
    return linalg.frac_array([x.component(k).coords for k in range(N2)])


def span_dim(x: VElement) -> int:
    """dim S_x, the span of the three wedge^2 V1 components."""
    return linalg.rank(components_matrix(x))


def Phi3(x: VElement) -> PlueckerPoint:
    m = components_matrix(x)
    if linalg.rank(m) < 3:
        raise DegenerateSpan("x_0, x_1, x_2 do not span a 3-plane")
    return PlueckerPoint.from_matrix(m)


def span_point(vectors: Sequence[Alt2Tensor]) -> PlueckerPoint:
    return PlueckerPoint.from_matrix(linalg.frac_array([v.coords for v in vectors]))
