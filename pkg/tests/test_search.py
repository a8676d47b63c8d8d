import itertools
import json
import math
import random
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pvs53 import linalg
from pvs53.group import act_contravariant, random_invertible
from pvs53.maps import Fx, Phi3
from pvs53.search import (
    PRESETS,
    RealTransform,
    SingularTransform,
    golden_matrix,
    is_primitive,
    torus_construct,
    load_transform,
    rationality_probe,
    report_json,
    search,
    transported_Q,
    transported_S,
)
from pvs53.tensor import eval_form
from pvs53.wpoint import W_LITERAL

IDENT = RealTransform.identity()
GOLDEN = PRESETS["golden"]()
points = st.lists(st.integers(-30, 30), min_size=5, max_size=5)


def F_int(a):
    a0, a1, a2, a3, a4 = a
    return 72 * a0 * a2 * a4 - 27 * a0 * a3**2 - 27 * a1**2 * a4 + 9 * a1 * a2 * a3 - 2 * a2**3


def test_f_value_examples():
    assert IDENT.inverse is not None
    from pvs53.search import f_value

    assert f_value(IDENT, [0, 0, 1, 0, 0]) == -2
    assert f_value(IDENT, [1, 1, 1, 1, 1]) == 25
    assert f_value(IDENT, [1, 0, 0, 0, 0]) == 0


@given(points)
def test_f_value_odd(a):
    from pvs53.search import f_value

    assert f_value(GOLDEN, [-v for v in a]) == -f_value(GOLDEN, a)
    assert f_value(IDENT, a) == F_int(a)


def test_f_value_matches_exact_core():
    from pvs53.search import f_value

    rng = random.Random(17)
    g1 = random_invertible(rng, 5)
    real = RealTransform.from_rational(g1)
    moved = act_contravariant(g1, Fx(W_LITERAL))
    for _ in range(100):
        a = [rng.randint(-9, 9) for _ in range(5)]
        exact = eval_form(moved, a)
        got = f_value(real, a)
        assert abs(got - float(exact)) <= 1e-12 * max(1.0, abs(float(exact)))


def test_is_primitive():
    assert not is_primitive([2, 4, 6, 8, 10])
    assert is_primitive([0, 0, 1, 0, 0])
    assert is_primitive([3, 5, 0, 0, 0])
    with pytest.raises(ValueError):
        is_primitive([0] * 5)


def test_real_transform_validation():
    with pytest.raises(SingularTransform):
        RealTransform.from_matrix(np.zeros((5, 5)))
    with pytest.raises(ValueError):
        RealTransform.from_matrix(np.eye(3))
    assert abs(np.linalg.det(GOLDEN.matrix) - 1) < 1e-12


def test_load_transform_from_file(tmp_path):
    path = tmp_path / "g.json"
    rows = [["1" if i == j else "0" for j in range(5)] for i in range(5)]
    rows[0][1] = "1/3"
    path.write_text(json.dumps({"g1": rows}))
    g = load_transform(str(path))
    assert g.provenance.startswith("file:")
    assert g.g1[0][1] == 1 / 3
    assert load_transform("golden") == GOLDEN


@pytest.mark.parametrize("r,t", [(2, -1), (16, -2), (-2, 1), (250, -5)])
def test_torus_construction_exact(r, t):
    c = torus_construct(r, 1)
    assert c.exact and c.t == t and c.value == r
    assert c.a == (0, 0, 1, 0, 0)
    assert linalg.equal(c.h.g1, linalg.diag([Fraction(1, t), 1, t, 1, 1]))


def test_torus_construction_scaled_point():
    c = torus_construct(2, 2)
    assert c.exact and c.t == Fraction(-1, 4096) and c.value == 2


def test_torus_construction_float_branch():
    c = torus_construct(3, 1)
    assert not c.exact
    assert abs(c.value - 3) < 1e-9 * 3


def test_torus_construction_errors():
    with pytest.raises(ValueError):
        torus_construct(0, 1)
    with pytest.raises(ValueError):
        torus_construct(2, 0)


def brute_force(g, N, R, eps):
    """Direct loop over lex-ordered representatives; witness = first hit."""
    from pvs53.search import f_value

    nbins = round(2 * R / eps)
    counts = [0] * nbins
    first = {}
    total = 0
    for a in itertools.product(range(-N, N + 1), repeat=5):
        lead = next((v for v in a if v), 0)
        if lead <= 0 or math.gcd(*a) != 1:
            continue
        v = f_value(g, a)
        for sign in (1, -1):
            total += 1
            val = sign * v
            if -R <= val <= R:
                k = min(int(math.floor((val + R) / eps)), nbins - 1)
                counts[k] += 1
                first.setdefault(k, [sign * c for c in a])
    return total, counts, first


@pytest.mark.parametrize("g", [IDENT, GOLDEN], ids=["identity", "golden"])
def test_search_matches_brute_force(g):
    report = search(g, 2, 10, 0.5)
    total, counts, first = brute_force(g, 2, 10, 0.5)
    assert report["point_count"] == total
    assert [h["count"] for h in report["histogram"]] == counts
    assert {k: h["witness"] for k, h in enumerate(report["histogram"]) if h["witness"]} == first


def test_search_identity_small_box():
    report = search(IDENT, 1, 140, 1)  # |F| <= 72 + 27 + 27 + 9 + 2 on this box
    assert report["point_count"] == 3**5 - 1
    assert sum(h["count"] for h in report["histogram"]) == report["point_count"]
    from pvs53.search import f_value

    values = {f_value(IDENT, h["witness"]) for h in report["histogram"] if h["witness"]}
    assert all(v == int(v) for v in values)
    assert {0, 2, -2, 25, -25} <= values


def test_identity_control_hits_only_integer_bins():
    report = search(IDENT, 3, 10, 0.5)
    hit = [h for h in report["histogram"] if h["count"]]
    assert all(float(h["lo"]).is_integer() for h in hit)
    assert report["min_abs_nonzero"] >= 1


def test_search_schema_and_bins():
    report = search(GOLDEN, 2, 1, 0.25)
    assert set(report) == {"params", "point_count", "histogram", "min_abs_nonzero", "coverage"}
    bins = report["histogram"]
    assert len(bins) == 8 and bins[0]["lo"] == -1 and bins[-1]["hi"] == 1
    assert 0 <= report["coverage"] <= 1
    json.loads(report_json(report))
    with pytest.raises(ValueError):
        search(GOLDEN, 2, 1, 0.3)
    with pytest.raises(ValueError):
        search(GOLDEN, 0, 1, 0.5)


def test_search_worker_independent():
    a = report_json(search(GOLDEN, 4, 10, 0.5, workers=1))
    b = report_json(search(GOLDEN, 4, 10, 0.5, workers=3))
    assert a == b


def test_search_monotone_in_box():
    reports = [search(GOLDEN, n, 10, 0.5) for n in (1, 2, 3)]
    cov = [r["coverage"] for r in reports]
    mins = [r["min_abs_nonzero"] for r in reports]
    assert cov == sorted(cov) and cov[0] < cov[-1]
    assert mins == sorted(mins, reverse=True) and mins[-1] < mins[0]


def test_rationality_probe():
    assert rationality_probe(Phi3(W_LITERAL).coords)["verdict"] == "rational-looking"
    assert rationality_probe(transported_S(golden_matrix()))["verdict"] == "irrational-looking"
    assert rationality_probe(transported_Q(golden_matrix()))["verdict"] == "irrational-looking"
    scaled = [float(c) * math.pi for c in Phi3(W_LITERAL).coords]
    assert rationality_probe(scaled)["verdict"] == "rational-looking"
    with pytest.raises(ValueError):
        rationality_probe([0.0, 0.0])


def test_rationality_probe_high_precision():
    with mpmath.workdps(50):
        s = transported_S(golden_matrix(high_precision=True))
        q = transported_Q(golden_matrix(high_precision=True))
        report = rationality_probe(s)
        assert report["verdict"] == "irrational-looking" and report["heuristic"]
        assert rationality_probe(q)["verdict"] == "irrational-looking"
        ident = [[mpmath.mpf(int(i == j)) for j in range(5)] for i in range(5)]
        assert rationality_probe([c * mpmath.pi for c in transported_S(ident)])["verdict"] == "rational-looking"


def test_transported_S_matches_exact_action():
    from pvs53.group import act_grassmann

    rng = random.Random(4)
    g1 = random_invertible(rng, 5)
    exact = act_grassmann(g1, Phi3(W_LITERAL))
    approx = transported_S([[float(v) for v in row] for row in g1])
    lead = next(c for c in approx if abs(c) > 1e-12)
    assert np.allclose([c / lead for c in approx], [float(c) for c in exact.coords], atol=1e-9)
