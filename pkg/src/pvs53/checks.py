"""Named exact checks behind ``pvs53 verify``.

Each check returns pass/fail plus expected and actual serializations.
Golden values are read from ``data/golden.json`` (or a replacement file).
"""

from __future__ import annotations

import fnmatch
import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from math import factorial
from typing import Callable

import numpy as np

from . import linalg, lie
from .group import (
    A0,
    A0p,
    A1,
    A1p,
    A2,
    A2p,
    act_contravariant,
    act_grassmann,
    act_phi1_bar,
    act_phi1_value,
    act_phi3_value,
    act_quadratic_matrix,
    act_V,
    h_image,
    kernel_direction,
    pgl2_embed,
    random_group_element,
    random_pgl2,
)
from .maps import (
    DualMatrix3,
    Fx,
    Phi1,
    Phi1_coords,
    Phi2,
    Phi3,
    VElement,
    delta,
    form_to_quad_matrix,
    pfaffians,
    phi1,
    phi1_bar,
    phi1_double_sum,
    phi3,
    span_dim,
    span_point,
)
from .search import torus_construct
from .tensor import Alt2Tensor, SymForm, fmt_rat, monomials, sym_pairing
from .wpoint import W_LITERAL, build_w, f_H, f_H_bilinear

A_NAMES = ("a0", "a1", "a2", "a3", "a4")
M_NAMES = ("m0", "m1", "m2", "m3", "m4")
L_NAMES = ("l0", "l1", "l2")
DEFAULT_SEED = 20240531
ORBIT_SAMPLES = 20
SEMISTABLE_SAMPLES = 50
TORUS_VALUES = (2, 16, -2, 250)


@dataclass
class Check:
    name: str
    description: str
    ok: bool
    expected: str = ""
    actual: str = ""
    seconds: float = 0.0

    def to_json(self) -> dict:
        out = {"name": self.name, "description": self.description, "ok": self.ok, "seconds": round(self.seconds, 4)}
        if not self.ok:
            out["expected"] = self.expected
            out["actual"] = self.actual
        return out


@dataclass
class Context:
    golden: dict
    seed: int = DEFAULT_SEED
    _orbit: list | None = field(default=None, repr=False)

    def rng(self, salt: str) -> random.Random:
        return random.Random(f"{self.seed}:{salt}")

    def orbit_pairs(self) -> list[tuple]:
        """Seeded (g, x) with x = h w; shared by the equivariance checks."""
        if self._orbit is None:
            rng = self.rng("orbit")
            self._orbit = []
            for _ in range(ORBIT_SAMPLES):
                g = random_group_element(rng)
                x = act_V(random_group_element(rng), W_LITERAL)
                self._orbit.append((g, x, act_V(g, x)))
        return self._orbit


def load_golden(path: str | None = None) -> dict:
    if path is None:
        return json.loads(resources.files("pvs53").joinpath("data/golden.json").read_text())
    with open(path) as fh:
        return json.load(fh)


Outcome = tuple[bool, str, str]
REGISTRY: list[tuple[str, str, Callable[[Context], Outcome]]] = []


def check(name: str, description: str):
    def deco(fn):
        REGISTRY.append((name, description, fn))
        return fn

    return deco


def _cmp(expected, actual, show=str) -> Outcome:
    ok = expected == actual
    return ok, show(expected), show(actual)


def _matrix(rows) -> np.ndarray:
    return linalg.frac_array([[Fraction(v) for v in r] for r in rows])


def _mat_text(m: np.ndarray) -> str:
    return "[" + "; ".join(" ".join(fmt_rat(v) for v in row) for row in m) + "]"


def _linear_matrix(rows) -> DualMatrix3:
    return DualMatrix3(
        [[SymForm.from_text(e, M_NAMES, 1).linear_coords() for e in row] for row in rows]
    )


# pairing and the two Pfaffian routes


@check("pairing/table", "symmetric pairing (e^I, f^I)_d = I!/d! and orthogonality, dim 3 up to degree 3")
def _pairing(ctx: Context) -> Outcome:
    bad = []
    for d in (1, 2, 3):
        mons = monomials(3, d)
        for I in mons:
            for J in mons:
                got = sym_pairing(SymForm.monomial(I), SymForm.monomial(J, dual=True))
                want = Fraction(np.prod([factorial(e) for e in I]), factorial(d)) if I == J else 0
                if got != want:
                    bad.append(f"{I},{J}: {got} != {want}")
    return not bad, "I!/d! on the diagonal, 0 elsewhere", "; ".join(bad) or "ok"


@check("pfaffians/two-routes", "closed-form Pfaffians agree with the double-sum wedge construction on the orbit")
def _two_routes(ctx: Context) -> Outcome:
    points = [W_LITERAL] + [x for _, x, _ in ctx.orbit_pairs()]
    bad = [k for k, x in enumerate(points) if phi1(x) != phi1_double_sum(x)]
    return not bad, "all agree", f"disagree at samples {bad}" if bad else "all agree"


# golden values at w


@check("w/assembly", "w assembled from the invariant form Q equals the closed form")
def _w(ctx: Context) -> Outcome:
    comps = [Alt2Tensor.from_text(t) for t in ctx.golden["w"]["components"]]
    want = VElement.from_components(comps)
    return _cmp(want.to_expression(), build_w().to_expression())


@check("w/f_H", "images of H_0, H_1, H_2 in wedge^2 V1")
def _fh(ctx: Context) -> Outcome:
    want = [Alt2Tensor.from_text(t) for t in ctx.golden["f_H"]["values"]]
    got = [f_H(i) for i in range(3)]
    return _cmp(want, got, lambda v: " | ".join(t.to_text() for t in v))


@check("w/Q_H", "bilinear forms Q(H_i a, b)")
def _qh(ctx: Context) -> Outcome:
    want = [_matrix(m) for m in ctx.golden["Q_H"]["values"]]
    got = [f_H_bilinear(i) for i in range(3)]
    ok = all(linalg.equal(a, b) for a, b in zip(want, got))
    return ok, " | ".join(map(_mat_text, want)), " | ".join(map(_mat_text, got))


@check("pfaffians/golden", "Pfaffians of the principal 4x4 minors of w")
def _pf(ctx: Context) -> Outcome:
    want = tuple(SymForm.from_text(t, L_NAMES, 2, dual=False) for t in ctx.golden["pfaffians"]["values"])
    return _cmp(want, pfaffians(W_LITERAL), lambda v: ", ".join(p.to_text(L_NAMES) for p in v))


@check("phi1-bar/golden", "polarized Pfaffian matrix at w")
def _phibar(ctx: Context) -> Outcome:
    want = _linear_matrix(ctx.golden["phi1_bar"]["matrix"])
    return _cmp(want, phi1_bar(W_LITERAL), lambda m: m.to_text())


@check("Phi1/golden", "quadratic form Phi1(w): coordinates and symmetric matrix")
def _Phi1(ctx: Context) -> Outcome:
    g = ctx.golden["Phi1"]
    want_c = [Fraction(v) for v in g["coords"]]
    want_m = _matrix(g["matrix"])
    got_c, got_m = Phi1_coords(W_LITERAL), Phi1(W_LITERAL)
    ok = want_c == got_c and linalg.equal(want_m, got_m)
    return ok, f"{[fmt_rat(c) for c in want_c]} {_mat_text(want_m)}", f"{[fmt_rat(c) for c in got_c]} {_mat_text(got_m)}"


@check("phi3/golden", "matrix of linear forms phi3(w)")
def _phi3(ctx: Context) -> Outcome:
    want = _linear_matrix(ctx.golden["phi3"]["matrix"])
    return _cmp(want, phi3(W_LITERAL), lambda m: m.to_text())


@check("Phi2/golden", "quadratic form Phi2(w), coefficient by coefficient")
def _Phi2(ctx: Context) -> Outcome:
    want = SymForm.from_text(ctx.golden["Phi2"]["form"], A_NAMES, 2)
    return _cmp(want, Phi2(W_LITERAL), lambda f: f.to_text(A_NAMES))


@check("F/golden", "cubic form F_w, coefficient by coefficient")
def _F(ctx: Context) -> Outcome:
    want = SymForm.from_text(ctx.golden["F"]["form"], A_NAMES, 3)
    return _cmp(want, Fx(W_LITERAL), lambda f: f.to_text(A_NAMES))


@check("delta/golden", "discriminant of Phi1(w)")
def _delta(ctx: Context) -> Outcome:
    return _cmp(Fraction(ctx.golden["delta"]["value"]), delta(W_LITERAL), fmt_rat)


@check("Phi3/golden", "Phi3(w) is the span S")
def _Phi3(ctx: Context) -> Outcome:
    want = span_point([Alt2Tensor.from_text(t) for t in ctx.golden["S"]["basis"]])
    got = Phi3(W_LITERAL)
    return _cmp(want, got, lambda p: json.dumps(p.to_json()))


# equivariance on the orbit of w


def _equivariance(ctx: Context, compute, act, exps) -> Outcome:
    bad = []
    for k, (g, x, y) in enumerate(ctx.orbit_pairs()):
        factor = g.det1 ** exps[0] * g.det2 ** exps[1]
        if not act(g, compute(x), compute(y), factor):
            bad.append(k)
    detail = f"fails at samples {bad}" if bad else f"holds on {len(ctx.orbit_pairs())} samples"
    return not bad, f"holds on {len(ctx.orbit_pairs())} samples", detail


@check("pfaffians/equivariance", "phi1(gx) = det g1 . g phi1(x)")
def _eq_phi1(ctx):
    return _equivariance(
        ctx,
        phi1,
        lambda g, a, b, f: linalg.equal(b.coordinate_matrix(), act_phi1_value(g, a).coordinate_matrix() * f),
        (1, 0),
    )


@check("phi1-bar/equivariance", "phi1_bar(gx) = det g1 . g phi1_bar(x)")
def _eq_bar(ctx):
    return _equivariance(ctx, phi1_bar, lambda g, a, b, f: b == act_phi1_bar(g, a).scale(f), (1, 0))


@check("Phi1/equivariance", "Phi1(gx) = (det g1)^4 (det g2)^4 g2 Phi1(x)")
def _eq_Phi1(ctx):
    return _equivariance(
        ctx, Phi1, lambda g, a, b, f: linalg.equal(b, act_quadratic_matrix(g.g2, a) * f), (4, 4)
    )


@check("phi3/equivariance", "phi3(gx) = (det g1)^5 (det g2)^4 g phi3(x)")
def _eq_phi3(ctx):
    return _equivariance(ctx, phi3, lambda g, a, b, f: b == act_phi3_value(g, a).scale(f), (5, 4))


@check("Phi2/equivariance", "Phi2(gx) = (det g1)^10 (det g2)^8 g1 Phi2(x)")
def _eq_Phi2(ctx):
    return _equivariance(ctx, Phi2, lambda g, a, b, f: b == act_contravariant(g.g1, a).scale(f), (10, 8))


@check("F/equivariance", "F_{gx} = (det g1)^15 (det g2)^12 g1 F_x")
def _eq_F(ctx):
    return _equivariance(ctx, Fx, lambda g, a, b, f: b == act_contravariant(g.g1, a).scale(f), (15, 12))


@check("Phi3/equivariance", "Phi3(gx) = g1 Phi3(x)")
def _eq_Phi3(ctx):
    return _equivariance(ctx, Phi3, lambda g, a, b, f: b == act_grassmann(g.g1, a), (0, 0))


# fixedness and stabilizer


@check("w/pgl2-fixed", "the twisted PGL(2) embedding fixes w")
def _fixed(ctx: Context) -> Outcome:
    rng = ctx.rng("pgl2")
    bad = []
    for k in range(10):
        h = random_pgl2(rng)
        if act_V(pgl2_embed(h), W_LITERAL) != W_LITERAL:
            bad.append(k)
    return not bad, "fixed for 10 samples", f"moved at samples {bad}" if bad else "fixed for 10 samples"


@check("w/stabilizer", "stabilizer of w in gl(5)+gl(3) is 4-dimensional and contains h and (I5, -2I3)")
def _stab(ctx: Context) -> Outcome:
    stab = lie.stabilizer_algebra(W_LITERAL)
    inside = lie.contains(stab, list(h_image()) + [kernel_direction()])
    return len(stab) == 4 and inside, "dim 4, contains h and (I5, -2I3)", f"dim {len(stab)}, contains: {inside}"


@check("w/h-invariants", "h-invariants on V are one-dimensional, spanned by w")
def _hinv(ctx: Context) -> Outcome:
    fixed = lie.fixed_subspace(lie.h_basis(), "V")
    w = np.array(W_LITERAL.flat(), dtype=object)
    ok = len(fixed) == 1 and linalg.same_span(fixed, [w])
    return ok, "span(w)", f"dim {len(fixed)}" + (", spanned by w" if ok else "")


# Lie lattice


@check("lie/matrices", "principal sl(2) matrices and B(1,0,0,0,0)")
def _liemats(ctx: Context) -> Outcome:
    g = ctx.golden["lie"]
    pairs = [(g["A0"], A0), (g["A1"], A1), (g["A2"], A2), (g["A0p"], A0p), (g["A1p"], A1p), (g["A2p"], A2p)]
    pairs.append((g["B10000"], lie.family_matrix("U2", [1, 0, 0, 0, 0])))
    bad = [k for k, (want, got) in enumerate(pairs) if not linalg.equal(_matrix(want), got)]
    return not bad, "all equal", f"differ at {bad}" if bad else "all equal"


def _identity_check(identity: lie.Identity) -> Outcome:
    return identity.ok, "holds", identity.detail or "holds"


_TABLE: dict[str, lie.Identity] = {}


def _register_bracket_checks():
    # one registry entry per displayed identity, evaluated once at import
    for ident in lie.verify_bracket_tables():
        _TABLE[ident.name] = ident

        def fn(ctx, name=ident.name):
            return _identity_check(_TABLE[name])

        check(f"brackets/{ident.name}", f"bracket identity {ident.name}")(fn)


_register_bracket_checks()


@check("subalgebras/dims", "the seven intermediate subalgebras have dims 3, 6, 11, 13, 18, 27, 32")
def _dims(ctx: Context) -> Outcome:
    want = list(ctx.golden["subalgebra_dims"]["values"])
    got = [len(b) for _, b in lie.enumerate_intermediate()]
    return _cmp(want, got)


@check("subalgebras/closed", "each intermediate subalgebra is bracket-closed, contains h and is a closure fixed point")
def _closed(ctx: Context) -> Outcome:
    bad = []
    h = lie.h_basis()
    for name, basis in lie.enumerate_intermediate():
        if not (lie.is_subalgebra(basis) and lie.contains(basis, h) and lie.same_subspace(lie.closure(basis), basis)):
            bad.append(name)
    return not bad, "all closed", f"not closed: {bad}" if bad else "all closed"


@check("wedge2/weights", "H_1 weights on wedge^2 V1 are those of 6L plus 2L")
def _weights(ctx: Context) -> Outcome:
    want = sorted((Fraction(v) for v in ctx.golden["wedge2_weights"]["values"]), reverse=True)
    return _cmp(want, lie.weight_multiset("wedge2"), lambda v: " ".join(fmt_rat(x) for x in v))


@check("wedge2/S-submodule", "the unique 3-dimensional h-submodule of wedge^2 V1 is S")
def _smod(ctx: Context) -> Outcome:
    found = lie.invariant_subspaces_of_dim("wedge2", 3)
    S = [np.array(Alt2Tensor.from_text(t).coords, dtype=object) for t in ctx.golden["S"]["basis"]]
    ok = len(found) == 1 and linalg.same_span(found[0], S)
    return ok, "exactly one, equal to S", f"{len(found)} found" + (", equal to S" if ok else "")


# exact values on the torus orbit


def _register_torus_checks():
    for r in TORUS_VALUES:

        def fn(ctx, r=r):
            c = torus_construct(r, 1)
            return c.exact and c.value == r, fmt_rat(Fraction(r)), f"{c.value} (exact={c.exact}, t={c.t})"

        check(f"torus/r={r}", f"F_(h^-1 w)(e_2) = {r} for h = diag(1/t, 1, t, 1, 1)")(fn)


_register_torus_checks()


# semistability


@check("semistable/orbit", "dim S_x = 3, Phi1 and Phi2 non-degenerate on seeded orbit points of w")
def _semistable(ctx: Context) -> Outcome:
    rng = ctx.rng("semistable")
    bad = []
    for k in range(SEMISTABLE_SAMPLES):
        x = act_V(random_group_element(rng), W_LITERAL)
        if span_dim(x) != 3 or delta(x) == 0 or linalg.det(form_to_quad_matrix(Phi2(x))) == 0:
            bad.append(k)
    return not bad, f"all {SEMISTABLE_SAMPLES} pass", f"fail at {bad}" if bad else f"all {SEMISTABLE_SAMPLES} pass"


# running


def names() -> list[str]:
    return [n for n, _, _ in REGISTRY]


def select(pattern: str | None) -> list[tuple[str, str, Callable]]:
    if pattern is None:
        return list(REGISTRY)
    return [entry for entry in REGISTRY if fnmatch.fnmatchcase(entry[0], pattern)]


def run_checks(pattern: str | None = None, seed: int = DEFAULT_SEED, golden_path: str | None = None) -> list[Check]:
    ctx = Context(load_golden(golden_path), seed)
    out = []
    for name, desc, fn in select(pattern):
        start = time.perf_counter()
        try:
            ok, expected, actual = fn(ctx)
        except Exception as exc:  # a crashing check is a failing check
            ok, expected, actual = False, "no exception", f"{type(exc).__name__}: {exc}"
        out.append(Check(name, desc, bool(ok), expected, actual, time.perf_counter() - start))
    return out
