"""Symmetric and exterior tensors with the normalizations used throughout.

A :class:`SymForm` is an element of ``Sym^d W`` (covariant) or ``Sym^d W*``
(contravariant, ``dual=True``) stored by monomial coefficients in the
symmetric algebra.  For contravariant forms the monomial ``f^I`` is the
polynomial function ``a^I``, so coefficients are polynomial coefficients.
The pairing is normalized so that ``(e^I, f^I)_d = I! / d!``.
"""

from __future__ import annotations

import itertools
import math
import re
from fractions import Fraction
from functools import reduce
from typing import Iterator, Mapping, Sequence

from .linalg import rat

Monomial = tuple[int, ...]

_TERM = re.compile(r"([+-])([^+-]+)")


class DimensionMismatch(ValueError):
    pass


def fmt_rat(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_rat(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(str(s).strip())


def monomials(n: int, d: int) -> list[Monomial]:
    """Exponent tuples of degree ``d`` in ``n`` variables, lex-descending.

    ``(d, 0, ..., 0)`` comes first; this is the storage/serialization order.
    """
    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            out.append(prefix + (left,))
            return
        for k in range(left, -1, -1):
            rec(prefix + (k,), left - k, slots - 1)

    if n == 0:
        return [()] if d == 0 else []
    rec((), d, n)
    return out


def multinomial(idx: Monomial) -> int:
    """``d! / (i_1! ... i_n!)``"""
    out = math.factorial(sum(idx))
    for i in idx:
        out //= math.factorial(i)
    return out


class SymForm:
    """Immutable homogeneous element of a symmetric power.

    ``coeffs`` maps exponent tuples to nonzero rationals; absent means zero.
    """

    __slots__ = ("dim", "degree", "dual", "_coeffs", "_hash")

    def __init__(self, dim: int, degree: int, coeffs: Mapping[Monomial, object] = (), dual: bool = False):
        clean: dict[Monomial, Fraction] = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for idx, c in items:
            idx = tuple(int(i) for i in idx)
            if len(idx) != dim or sum(idx) != degree or min(idx, default=0) < 0:
                raise ValueError(f"bad multi-index {idx} for dim={dim}, degree={degree}")
            c = rat(c)
            if c:
                clean[idx] = clean.get(idx, Fraction(0)) + c
                if not clean[idx]:
                    del clean[idx]
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "dual", bool(dual))
        object.__setattr__(self, "_coeffs", dict(sorted(clean.items(), reverse=True)))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("SymForm is immutable")

    # construction helpers

    @classmethod
    def zero(cls, dim: int, degree: int, dual: bool = False) -> "SymForm":
        return cls(dim, degree, {}, dual)

    @classmethod
    def one(cls, dim: int, dual: bool = False) -> "SymForm":
        return cls(dim, 0, {(0,) * dim: 1}, dual)

    @classmethod
    def basis(cls, dim: int, i: int, dual: bool = False) -> "SymForm":
        idx = [0] * dim
        idx[i] = 1
        return cls(dim, 1, {tuple(idx): 1}, dual)

    @classmethod
    def linear(cls, coords: Sequence, dual: bool = False) -> "SymForm":
        n = len(coords)
        return cls(n, 1, {tuple(int(k == i) for k in range(n)): c for i, c in enumerate(coords)}, dual)

    @classmethod
    def monomial(cls, idx: Monomial, coeff=1, dual: bool = False) -> "SymForm":
        return cls(len(idx), sum(idx), {tuple(idx): coeff}, dual)

    # access

    @property
    def coeffs(self) -> dict[Monomial, Fraction]:
        return dict(self._coeffs)

    def __getitem__(self, idx: Monomial) -> Fraction:
        return self._coeffs.get(tuple(idx), Fraction(0))

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self._coeffs.items())

    def linear_coords(self) -> list[Fraction]:
        if self.degree != 1:
            raise ValueError("not a degree-1 form")
        return [self[tuple(int(k == i) for k in range(self.dim))] for i in range(self.dim)]

    def is_zero(self) -> bool:
        return not self._coeffs

    def dense(self) -> list[Fraction]:
        """Coefficients in :func:`monomials` order, zeros included."""
        return [self[m] for m in monomials(self.dim, self.degree)]

    # arithmetic

    def _check(self, other: "SymForm"):
        if self.dim != other.dim or self.dual != other.dual:
            raise DimensionMismatch(
                f"forms over different spaces: dim {self.dim}/{other.dim}, dual {self.dual}/{other.dual}"
            )

    def __add__(self, other: "SymForm") -> "SymForm":
        if not isinstance(other, SymForm):
            return NotImplemented
        self._check(other)
        if self.degree != other.degree:
            raise DimensionMismatch("cannot add forms of different degree")
        out = dict(self._coeffs)
        for k, v in other.items():
            out[k] = out.get(k, Fraction(0)) + v
        return SymForm(self.dim, self.degree, out, self.dual)

    def __neg__(self) -> "SymForm":
        return SymForm(self.dim, self.degree, {k: -v for k, v in self.items()}, self.dual)

    def __sub__(self, other: "SymForm") -> "SymForm":
        return self + (-other)

    def scale(self, c) -> "SymForm":
        c = rat(c)
        return SymForm(self.dim, self.degree, {k: c * v for k, v in self.items()}, self.dual)

    def __mul__(self, other):
        if isinstance(other, SymForm):
            return sym_product(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymForm):
            return NotImplemented
        return (self.dim, self.degree, self.dual, self._coeffs) == (other.dim, other.degree, other.dual, other._coeffs)

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.dim, self.degree, self.dual, tuple(self._coeffs.items()))))
        return self._hash

    def __repr__(self) -> str:
        kind = "Sym*" if self.dual else "Sym"
        return f"SymForm({kind}^{self.degree} k^{self.dim}: {self.to_text()})"

    # text / json

    def to_text(self, names: Sequence[str] | None = None) -> str:
        if not self._coeffs:
            return "0"
        if names is None:
            names = [f"{'a' if self.dual else 'e'}{i}" for i in range(self.dim)]
        parts = []
        for idx, c in self.items():
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(idx) if e
            )
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "degree": self.degree,
            "dual": self.dual,
            "coeffs": [[list(idx), fmt_rat(c)] for idx, c in self.items()],
        }

    @classmethod
    def from_text(cls, text: str, names: Sequence[str], degree: int, dual: bool = True) -> "SymForm":
        """Parse the output format of :meth:`to_text`, e.g. ``-3/2*a1^2 + a0*a2``."""
        index = {n: k for k, n in enumerate(names)}
        coeffs: dict[Monomial, Fraction] = {}
        body = text.replace(" ", "")
        if body == "0":
            return cls.zero(len(names), degree, dual)
        for sign, term in _TERM.findall(body if body[0] in "+-" else "+" + body):
            coeff, factors = Fraction(1), []
            for piece in term.split("*"):
                if piece[0].isdigit():
                    coeff *= Fraction(piece)
                else:
                    factors.append(piece)
            idx = [0] * len(names)
            for f in factors:
                name, _, power = f.partition("^")
                if name not in index:
                    raise ValueError(f"unknown variable {name!r}")
                idx[index[name]] += int(power or 1)
            if sum(idx) != degree:
                raise ValueError(f"term {term!r} is not of degree {degree}")
            key = tuple(idx)
            coeffs[key] = coeffs.get(key, Fraction(0)) + (-coeff if sign == "-" else coeff)
        return cls(len(names), degree, coeffs, dual)

    @classmethod
    def from_json(cls, obj: Mapping) -> "SymForm":
        return cls(
            obj["dim"],
            obj["degree"],
            [(tuple(idx), parse_rat(c)) for idx, c in obj["coeffs"]],
            obj.get("dual", False),
        )


def sym_product(a: SymForm, b: SymForm) -> SymForm:
    """Product in the symmetric algebra; degrees add."""
    a._check(b)
    out: dict[Monomial, Fraction] = {}
    for ia, ca in a.items():
        for ib, cb in b.items():
            idx = tuple(x + y for x, y in zip(ia, ib))
            out[idx] = out.get(idx, Fraction(0)) + ca * cb
    return SymForm(a.dim, a.degree + b.degree, out, a.dual)


def sym_power(a: SymForm, k: int) -> SymForm:
    return reduce(sym_product, [a] * k, SymForm.one(a.dim, a.dual))


def sym_pairing(a: SymForm, b: SymForm) -> Fraction:
    """The normalized pairing between ``Sym^d W`` and ``Sym^d W*``."""
    if a.dual == b.dual:
        raise DimensionMismatch("pairing needs one covariant and one contravariant form")
    if a.dim != b.dim:
        raise DimensionMismatch("pairing forms over spaces of different dimension")
    if a.degree != b.degree:
        raise DimensionMismatch(f"pairing forms of degree {a.degree} and {b.degree}")
    total = Fraction(0)
    for idx, c in a.items():
        other = b[idx]
        if other:
            total += c * other / multinomial(idx)
    return total


def power_embed(a: SymForm, d: int) -> SymForm:
    """``i_d(a) = a (x) ... (x) a`` as an element of ``Sym^d``."""
    if a.degree != 1:
        raise ValueError("power_embed needs a degree-1 form")
    if d < 1:
        raise ValueError("d must be >= 1")
    coords = a.linear_coords()
    out = {}
    for idx in monomials(a.dim, d):
        val = Fraction(multinomial(idx))
        for x, e in zip(coords, idx):
            if e:
                val *= x**e
        out[idx] = val
    return SymForm(a.dim, d, out, a.dual)


def eval_form(f: SymForm, a: SymForm | Sequence) -> Fraction:
    """Value ``f(a)`` of a contravariant form at a vector ``a``."""
    if not f.dual:
        raise DimensionMismatch("only contravariant forms are functions on W")
    coords = a.linear_coords() if isinstance(a, SymForm) else [rat(x) for x in a]
    if len(coords) != f.dim:
        raise DimensionMismatch(f"form on k^{f.dim} evaluated at a {len(coords)}-vector")
    total = Fraction(0)
    for idx, c in f.items():
        term = c
        for x, e in zip(coords, idx):
            if e:
                term *= x**e
        total += term
    return total


# exterior algebra on V1 = k^5

N1 = 5
PAIRS: tuple[tuple[int, int], ...] = tuple(itertools.combinations(range(N1), 2))
PAIR_INDEX = {p: k for k, p in enumerate(PAIRS)}


def perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq``; 0 if an entry repeats."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


class Alt2Tensor:
    """Element of ``wedge^2 k^5`` with coordinates on ``m_i ^ m_j``, i < j."""

    __slots__ = ("coords",)

    def __init__(self, coords: Mapping[tuple[int, int], object] | Sequence = ()):
        vec = [Fraction(0)] * len(PAIRS)
        if isinstance(coords, Mapping):
            for (i, j), c in coords.items():
                s = perm_sign((i, j))
                if s == 0:
                    if rat(c):
                        raise ValueError("diagonal entries of an alternating tensor vanish")
                    continue
                vec[PAIR_INDEX[tuple(sorted((i, j)))]] += s * rat(c)
        elif len(coords):
            if len(coords) != len(PAIRS):
                raise ValueError("need 10 coordinates")
            vec = [rat(c) for c in coords]
        object.__setattr__(self, "coords", tuple(vec))

    def __setattr__(self, name, value):
        raise AttributeError("Alt2Tensor is immutable")

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        if i == j:
            return Fraction(0)
        if i < j:
            return self.coords[PAIR_INDEX[(i, j)]]
        return -self.coords[PAIR_INDEX[(j, i)]]

    def __add__(self, other: "Alt2Tensor") -> "Alt2Tensor":
        return Alt2Tensor([x + y for x, y in zip(self.coords, other.coords)])

    def __neg__(self) -> "Alt2Tensor":
        return Alt2Tensor([-x for x in self.coords])

    def __sub__(self, other: "Alt2Tensor") -> "Alt2Tensor":
        return self + (-other)

    def scale(self, c) -> "Alt2Tensor":
        c = rat(c)
        return Alt2Tensor([c * x for x in self.coords])

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other) -> bool:
        return isinstance(other, Alt2Tensor) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def to_text(self) -> str:
        parts = []
        for (i, j), c in zip(PAIRS, self.coords):
            if not c:
                continue
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            parts.append(("-" if c < 0 else "+", f"{mag}m{i}^m{j}"))
        if not parts:
            return "0"
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, body in parts[1:]:
            text += f" {s} {body}"
        return text

    def __repr__(self) -> str:
        return f"Alt2Tensor({self.to_text()})"

    def to_json(self) -> dict:
        return {"pairs": [[i, j, fmt_rat(c)] for (i, j), c in zip(PAIRS, self.coords) if c]}

    @classmethod
    def from_text(cls, text: str) -> "Alt2Tensor":
        """Inverse of :meth:`to_text`: ``4*m0^m3 - 12*m1^m2``."""
        body = text.replace(" ", "")
        coords: dict[tuple[int, int], Fraction] = {}
        if body == "0":
            return cls(coords)
        for sign, term in _TERM.findall(body if body[0] in "+-" else "+" + body):
            coeff, _, wedge = term.rpartition("*")
            m = re.fullmatch(r"m(\d)\^m(\d)", wedge)
            if not m:
                raise ValueError(f"cannot parse {term!r}")
            c = Fraction(coeff) if coeff else Fraction(1)
            i, j = int(m.group(1)), int(m.group(2))
            if i > j:
                i, j, c = j, i, -c
            coords[(i, j)] = coords.get((i, j), Fraction(0)) + (-c if sign == "-" else c)
        return cls(coords)

    @classmethod
    def from_json(cls, obj: Mapping) -> "Alt2Tensor":
        return cls({(i, j): parse_rat(c) for i, j, c in obj["pairs"]})


def _vec1(a) -> list[Fraction]:
    if isinstance(a, SymForm):
        if a.dim != N1:
            raise DimensionMismatch("expected a vector in k^5")
        return a.linear_coords()
    return [rat(x) for x in a]


def wedge2(a, b) -> Alt2Tensor:
    """``a ^ b`` for degree-1 elements of V1."""
    x, y = _vec1(a), _vec1(b)
    return Alt2Tensor([x[i] * y[j] - x[j] * y[i] for i, j in PAIRS])


class Alt4Dual:
    """Element of ``wedge^4 k^5``, identified with ``V1*`` by wedging into ``wedge^5``.

    ``coords[i]`` is the coefficient on ``m_i^*``.
    """

    __slots__ = ("coords",)

    def __init__(self, coords: Sequence):
        if len(coords) != N1:
            raise ValueError("need 5 coordinates")
        object.__setattr__(self, "coords", tuple(rat(c) for c in coords))

    def __setattr__(self, name, value):
        raise AttributeError("Alt4Dual is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, Alt4Dual) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return f"Alt4Dual({[str(c) for c in self.coords]})"

    def as_wedge4(self) -> dict[tuple[int, ...], Fraction]:
        """Expansion on ascending basis 4-wedges ``m_a ^ m_b ^ m_c ^ m_d``."""
        out = {}
        for i, c in enumerate(self.coords):
            if c:
                rest = tuple(k for k in range(N1) if k != i)
                out[rest] = out.get(rest, Fraction(0)) + (-1) ** i * c
        return out

    def as_form(self) -> SymForm:
        return SymForm.linear(self.coords, dual=True)


def dual4(i: int) -> Alt4Dual:
    """``m_i^* = (-1)^i m_0 ^ ... (omit m_i) ... ^ m_4``."""
    if not 0 <= i < N1:
        raise IndexError(f"index {i} out of range 0..4")
    return Alt4Dual([int(k == i) for k in range(N1)])


def wedge4_to_dual(idx: Sequence[int]) -> tuple[int, int]:
    """Write the basis 4-wedge ``m_idx[0] ^ ... ^ m_idx[3]`` as ``s * m_p^*``.

    Returns ``(p, s)``; ``s == 0`` when an index repeats.
    """
    s = perm_sign(idx)
    if s == 0:
        return 0, 0
    (p,) = set(range(N1)) - set(idx)
    return p, s * (-1) ** p


def wedge_into_top(v, four: Mapping[tuple[int, ...], object]) -> Fraction:
    """Coefficient of ``m_0 ^ ... ^ m_4`` in ``v ^ four``."""
    x = _vec1(v)
    total = Fraction(0)
    for idx, c in four.items():
        for i in range(N1):
            if x[i]:
                total += perm_sign((i,) + tuple(idx)) * x[i] * rat(c)
    return total


def wedge4_pair(v, d: Alt4Dual) -> Fraction:
    """``v ^ d`` read in the basis ``m_0 ^ ... ^ m_4`` of ``wedge^5``."""
    return wedge_into_top(v, d.as_wedge4())

