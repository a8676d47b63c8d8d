"""Values of the cubic form F_w(g^{-1} a) at primitive integer points.

A desk-scale probe: exact value construction for a diagonal torus element,
a deterministic (optionally parallel) box search with a coverage histogram,
and a heuristic rationality test on transported S and Q.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from . import linalg
from .group import GroupElement, act_V
from .maps import Fx
from .tensor import PAIRS, eval_form
from .wpoint import Q_MATRIX, W_LITERAL

GOLDEN = (1 + math.sqrt(5)) / 2
DEFAULT_DENOMINATOR_BOUND = 10**6


class SingularTransform(ValueError):
    pass


@dataclass(frozen=True)
class RealTransform:
    """A real 5x5 matrix g1 acting on V1, with where it came from."""

    g1: tuple[tuple[float, ...], ...]
    provenance: str

    def __post_init__(self):
        m = np.array(self.g1, dtype=float)
        if m.shape != (5, 5):
            raise ValueError("g1 must be 5x5")
        if not np.all(np.isfinite(m)):
            raise ValueError("g1 has non-finite entries")
        if abs(np.linalg.det(m)) <= 1e-9:
            raise SingularTransform("|det g1| <= 1e-9")

    @classmethod
    def from_matrix(cls, m, provenance: str = "matrix") -> "RealTransform":
        return cls(tuple(tuple(float(v) for v in row) for row in m), provenance)

    @classmethod
    def identity(cls) -> "RealTransform":
        return cls.from_matrix(np.eye(5), "preset:identity")

    @classmethod
    def from_rational(cls, m: np.ndarray) -> "RealTransform":
        return cls.from_matrix([[float(v) for v in row] for row in m], "exact-rational")

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.g1, dtype=float)

    @property
    def inverse(self) -> np.ndarray:
        return np.linalg.inv(self.matrix)

    def to_json(self) -> dict:
        return {"g1": [list(r) for r in self.g1], "provenance": self.provenance}

    @classmethod
    def from_json(cls, obj, provenance: str = "file") -> "RealTransform":
        rows = obj["g1"] if isinstance(obj, dict) else obj
        return cls.from_matrix([[float(Fraction(v)) if isinstance(v, str) else float(v) for v in r] for r in rows],
                               provenance)


def golden_matrix(high_precision: bool = False):
    """``I + phi E_01 + phi^{-1} E_23`` with phi the golden ratio.

    With ``high_precision`` the entries are mpmath numbers at the current
    working precision.
    """
    if high_precision:
        phi = (1 + mpmath.sqrt(5)) / 2
        one, zero = mpmath.mpf(1), mpmath.mpf(0)
    else:
        phi, one, zero = GOLDEN, 1.0, 0.0
    m = [[one if i == j else zero for j in range(5)] for i in range(5)]
    m[0][1] = phi
    m[2][3] = 1 / phi
    return m


PRESETS = {
    "golden": lambda: RealTransform.from_matrix(golden_matrix(), "preset:golden"),
    "identity": RealTransform.identity,
}


def load_transform(spec: str) -> RealTransform:
    """Preset name or path to a JSON file ``{"g1": [[...], ...]}``."""
    if spec in PRESETS:
        return PRESETS[spec]()
    with open(spec) as fh:
        return RealTransform.from_json(json.load(fh), provenance=f"file:{spec}")


# the cubic


def F_plain(b0, b1, b2, b3, b4):
    return 72 * b0 * b2 * b4 - 27 * b0 * b3 * b3 - 27 * b1 * b1 * b4 + 9 * b1 * b2 * b3 - 2 * b2 * b2 * b2


def f_value(g: RealTransform, a: Sequence[int]) -> float:
    b = g.inverse.dot(np.asarray(a, dtype=float))
    return float(F_plain(*b))


def is_primitive(a: Sequence[int]) -> bool:
    if not any(a):
        raise ValueError("zero vector")
    return math.gcd(*(int(v) for v in a)) == 1


# exact values on a torus orbit


@dataclass
class Construction:
    h: GroupElement | None
    h_float: np.ndarray
    a: tuple[int, ...]
    t: Fraction | float
    exact: bool
    value: Fraction | float


def _rational_cube_root(q: Fraction) -> Fraction | None:
    def iroot(n: int) -> int | None:
        s = -1 if n < 0 else 1
        r = round(abs(n) ** (1 / 3))
        for c in (r - 1, r, r + 1):
            if c >= 0 and c**3 == abs(n):
                return s * c
        return None

    p, d = iroot(q.numerator), iroot(q.denominator)
    if p is None or d is None:
        return None
    return Fraction(p, d)


def torus_construct(r, lam=1) -> Construction:
    """Find h = diag(t^-1, 1, t, 1, 1) x I3 with F_{h^-1 (lam w)}(e_2) = r.

    F has degree 36 in the point and F_w(t e_2) = -2 t^3, so
    ``t = -lam^-12 (r/2)^(1/3)``.  When t is rational the identity is checked
    exactly through the full map pipeline; otherwise in floats to 1e-9.
    """
    r, lam = Fraction(r), Fraction(lam)
    if r == 0:
        raise ValueError("r must be nonzero")
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    a = (0, 0, 1, 0, 0)
    root = _rational_cube_root(r / 2)
    if root is not None:
        t = -root / lam**12
        h = GroupElement(linalg.diag([1 / t, 1, t, 1, 1]), linalg.identity(3))
        y = act_V(h.inverse(), W_LITERAL.scale(lam))
        value = eval_form(Fx(y), a)
        if value != r:
            raise ArithmeticError(f"construction gave {value}, expected {r}")
        return Construction(h, np.diag([float(1 / t), 1.0, float(t), 1.0, 1.0]), a, t, True, value)
    cube = float(r / 2)
    t = -math.copysign(abs(cube) ** (1 / 3), cube) / float(lam) ** 12
    # F_{h^-1 lam w}(a) = lam^36 F_w(h1 a)
    hf = np.diag([1 / t, 1.0, t, 1.0, 1.0])
    value = float(lam) ** 36 * F_plain(*hf.dot(np.array(a, dtype=float)))
    if abs(value - float(r)) > 1e-9 * abs(float(r)):
        raise ArithmeticError(f"construction gave {value}, expected {float(r)}")
    return Construction(None, hf, a, t, False, value)


# box search


@dataclass
class _Partial:
    points: int
    counts: np.ndarray
    first: dict  # bin -> first witness
    min_abs: float


def _bin_layout(R: float, eps: float) -> int:
    k = round(2 * R / eps)
    if k < 1 or abs(k * eps - 2 * R) > 1e-9 * max(1.0, 2 * R):
        raise ValueError("2R must be a whole multiple of eps")
    return k


def _chunk(task):
    """All representatives with leading coordinate a0 (first nonzero > 0)."""
    a0, N, ginv, R, eps, nbins, zero_tol = task
    side = np.arange(-N, N + 1, dtype=np.int64)
    a2, a3, a4 = (m.ravel() for m in np.meshgrid(side, side, side, indexing="ij"))
    counts = np.zeros(nbins, dtype=np.int64)
    first: dict = {}
    points = 0
    min_abs = math.inf
    a1_values = range(-N, N + 1) if a0 > 0 else range(0, N + 1)
    for a1 in a1_values:
        mask = np.ones(a2.shape, dtype=bool)
        if a0 == 0 and a1 == 0:
            # first nonzero among (a2, a3, a4) must be positive
            mask = (a2 > 0) | ((a2 == 0) & (a3 > 0)) | ((a2 == 0) & (a3 == 0) & (a4 > 0))
        g = np.gcd(np.gcd(np.gcd(a2, a3), a4), math.gcd(a0, a1))
        mask &= g == 1
        b2, b3, b4 = a2[mask], a3[mask], a4[mask]
        if b2.size == 0:
            continue
        pts = np.stack(
            [np.full(b2.shape, a0, dtype=np.int64), np.full(b2.shape, a1, dtype=np.int64), b2, b3, b4]
        ).astype(float)
        y = ginv.dot(pts)
        v = F_plain(y[0], y[1], y[2], y[3], y[4])
        points += 2 * v.size
        nz = np.abs(v)[np.abs(v) > zero_tol]
        if nz.size:
            min_abs = min(min_abs, float(nz.min()))
        # interleave a, -a so enumeration order is a, -a, next a, ...
        vals = np.empty(2 * v.size)
        vals[0::2] = v
        vals[1::2] = -v
        inside = (vals >= -R) & (vals <= R)
        idx = np.flatnonzero(inside)
        if idx.size == 0:
            continue
        bins = np.floor((vals[idx] + R) / eps).astype(np.int64)
        bins[bins >= nbins] = nbins - 1
        bins[bins < 0] = 0
        counts += np.bincount(bins, minlength=nbins)
        uniq, pos = np.unique(bins, return_index=True)
        for b, p in zip(uniq.tolist(), pos.tolist()):
            if b in first:
                continue
            k = idx[p]
            sign = 1 if k % 2 == 0 else -1
            j = k // 2
            w = [a0, a1, int(b2[j]), int(b3[j]), int(b4[j])]
            first[b] = [sign * c for c in w]
    return _Partial(points, counts, first, min_abs)


def search(g: RealTransform, N: int, R: float, eps: float, workers: int = 1, zero_tol: float = 1e-9) -> dict:
    """Histogram of F(g^-1 a) over primitive a with max-norm <= N.

    Only representatives whose first nonzero entry is positive are
    enumerated; each contributes F and -F (the witness for -F is -a).
    Bins are ``[lo, lo + eps)`` covering ``[-R, R]`` with the last one
    closed at R.  The work split is one task per a0, independent of
    ``workers``, and partial results are merged in a0 order, so the report
    does not depend on the worker count.  Values with ``|F| <= zero_tol``
    count as zero for ``min_abs_nonzero``.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if R <= 0 or eps <= 0:
        raise ValueError("R and eps must be positive")
    nbins = _bin_layout(R, eps)
    ginv = g.inverse
    tasks = [(a0, N, ginv, float(R), float(eps), nbins, zero_tol) for a0 in range(0, N + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_chunk, tasks))
    else:
        parts = [_chunk(t) for t in tasks]
    counts = np.zeros(nbins, dtype=np.int64)
    first: dict = {}
    points = 0
    min_abs = math.inf
    for p in parts:
        points += p.points
        counts += p.counts
        min_abs = min(min_abs, p.min_abs)
        for b, w in p.first.items():
            first.setdefault(b, w)
    histogram = []
    for k in range(nbins):
        lo = -R + k * eps
        histogram.append({"lo": lo, "hi": lo + eps, "count": int(counts[k]), "witness": first.get(k)})
    hit = sum(1 for h in histogram if h["count"])
    return {
        "params": {"g": g.to_json(), "N": N, "R": R, "eps": eps, "zero_tol": zero_tol},
        "point_count": points,
        "histogram": histogram,
        "min_abs_nonzero": None if min_abs == math.inf else min_abs,
        "coverage": hit / nbins,
    }


def report_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True)


# rationality probe


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, mpmath.mpf):
        man, exp = x.man_exp
        return Fraction(int(man)) * Fraction(2) ** int(exp)
    return Fraction(float(x))


def rationality_probe(coords: Sequence, bound: int = DEFAULT_DENOMINATOR_BOUND, tol=None) -> dict:
    """Heuristic: does this projective point look rational?

    Coordinates are divided by the largest in magnitude, then each is
    replaced by its best approximation with denominator <= ``bound``.  The
    point looks rational when every residual is below ``tol`` (default
    1e-13 for floats; for mpmath input, 10^(-dps/2)).
    """
    coords = list(coords)
    if tol is None:
        if any(isinstance(c, mpmath.mpf) for c in coords):
            tol = Fraction(1, 10 ** (mpmath.mp.dps // 2))
        else:
            tol = 1e-13
    tol = _to_fraction(tol)
    exact = [_to_fraction(c) for c in coords]
    pivot = max(exact, key=abs)
    if pivot == 0:
        raise ValueError("zero point")
    evidence = []
    worst = Fraction(0)
    for c in exact:
        x = c / pivot
        q = x.limit_denominator(bound)
        err = abs(x - q)
        worst = max(worst, err)
        evidence.append({"approx": f"{q.numerator}/{q.denominator}", "residual": float(err)})
    verdict = "rational-looking" if worst <= tol else "irrational-looking"
    return {
        "verdict": verdict,
        "heuristic": True,
        "denominator_bound": bound,
        "tolerance": float(tol),
        "max_residual": float(worst),
        "coordinates": evidence,
    }


def _det3(m) -> object:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def wedge2_generic(g) -> list[list]:
    """``wedge^2 g`` for a matrix of floats, mpmath numbers or Fractions."""
    return [
        [g[k][i] * g[l][j] - g[l][i] * g[k][j] for (i, j) in PAIRS]
        for (k, l) in PAIRS
    ]


def transported_S(g) -> list:
    """Pluecker coordinates (3-subsets in lex order) of g[S], S = span of w's components."""
    from .maps import TRIPLES, components_matrix

    w2 = wedge2_generic(g)
    base = components_matrix(W_LITERAL)
    rows = [[sum(w2[r][c] * base[k, c] for c in range(len(PAIRS))) for r in range(len(PAIRS))] for k in range(3)]
    return [_det3([[rows[k][j] for j in t] for k in range(3)]) for t in TRIPLES]


def _inverse_generic(g):
    if g and isinstance(g[0][0], mpmath.mpf):
        return [list(r) for r in mpmath.inverse(mpmath.matrix(g)).tolist()]
    return np.linalg.inv(np.array(g, dtype=float)).tolist()


def transported_Q(g) -> list:
    """Upper-triangle coordinates of ``g^-T Q g^-1`` (the form a -> Q(g^-1 a))."""
    gi = _inverse_generic(g)
    n = 5
    out = []
    for i in range(n):
        for j in range(i, n):
            s = 0
            for k in range(n):
                for l in range(n):
                    if Q_MATRIX[k, l]:
                        s = s + gi[k][i] * _scalar(Q_MATRIX[k, l], gi[k][i]) * gi[l][j]
            out.append(s)
    return out


def _scalar(q: Fraction, like):
    if isinstance(like, mpmath.mpf):
        return mpmath.mpf(q.numerator) / q.denominator
    if isinstance(like, Fraction):
        return q
    return float(q)
