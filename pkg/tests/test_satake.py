import cmath
import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
import sympy

from hodgespec.errors import InvalidParamsError
from hodgespec.satake import (
    OMEGA,
    SatakeParams,
    build_matrices,
    classify_type,
    closed_form_eigenvalues,
    interval_I,
    interval_minus,
    interval_plus,
    parse_complex_number,
    parse_pattern,
    pattern_params,
    predicted_spectrum,
    reduced_euler_characteristic,
    type_eigenvalues,
    verify_interval_membership,
)

z1, z2, q = sympy.symbols("z1 z2 q", nonzero=True)
z3 = 1 / (z1 * z2)


def symbolic_matrices():
    d1 = sympy.Matrix([[q * z3 - 1], [z2 - 1], [z1 / q - 1]])
    b1 = sympy.Matrix([[q / z3 - 1, q / z2 - q, q / z1 - q * q]])
    d2 = sympy.Matrix([[1, q * z3, q * z2 * z3], [1, z1 * z3, q * z3]])
    b2 = sympy.Matrix([[1, q], [1 / z3, z2], [z1 / q, 1 / z3]])
    return d1, b1, d2, b2


def test_symbolic_cochain_identity():
    d1, _, d2, _ = symbolic_matrices()
    assert sympy.simplify(d2 * d1) == sympy.zeros(2, 1)


def test_symbolic_composites_match_numeric():
    d1, b1, d2, b2 = symbolic_matrices()
    products = {"up0": b1 * d1, "down1": d1 * b1, "up1": b2 * d2, "down2": d2 * b2}
    rng = np.random.default_rng(7)
    for _ in range(5):
        a, b = np.exp(1j * rng.uniform(0, 2 * np.pi, 2)) * rng.uniform(0.5, 2, 2)
        qq = int(rng.integers(2, 10))
        mats = build_matrices(SatakeParams.from_two(a, b, qq))
        for key, sym in products.items():
            num = np.array(sym.subs({z1: a, z2: b, q: qq}).evalf(), dtype=complex)
            assert np.allclose(mats[key], num, rtol=1e-12, atol=1e-12)


def test_symbolic_vertex_entry():
    d1, b1, _, _ = symbolic_matrices()
    k0 = 2 * (q**2 + q + 1)
    ztilde = z1 + 1 / z1 + z2 + 1 / z2 + z3 + 1 / z3
    assert sympy.simplify((b1 * d1)[0, 0] - (k0 - q * ztilde)) == 0


def test_symbolic_edge_characteristic_polynomial():
    _, _, d2, b2 = symbolic_matrices()
    x = sympy.Symbol("x")
    k0, k1 = 2 * (q**2 + q + 1), q + 1
    lamK = k0 - q * (z1 + 1 / z1 + z2 + 1 / z2 + z3 + 1 / z3)
    charpoly = (b2 * d2).charpoly(x).as_expr()
    assert sympy.simplify(charpoly - x * (x**2 - 3 * k1 * x + lamK)) == 0


def test_torus_constraint():
    with pytest.raises(InvalidParamsError):
        SatakeParams(1, 1, 2, 2)
    with pytest.raises(InvalidParamsError):
        SatakeParams(1, 1, 1, 1)
    with pytest.raises(InvalidParamsError):
        SatakeParams(0, 1, 1, 2)


def test_derived_quantities():
    p = SatakeParams(1, 1, 1, 2)
    assert (p.k0, p.k1, p.ztilde) == (14, 3, 6)
    assert build_matrices(p)["up0"][0, 0] == 2


def test_steinberg_kernel_vector():
    for qq in (2, 3, 5):
        m = build_matrices(pattern_params("Stn", qq))
        assert np.allclose(m["partial2"] @ np.array([qq, -1]), 0, atol=1e-12)


def test_cochain_identity_numeric():
    m = build_matrices(SatakeParams.from_two(0.3 + 1j, -2, 3))
    assert np.allclose(m["delta2"] @ m["delta1"], 0, atol=1e-12)


def test_closed_form_examples():
    cf = closed_form_eigenvalues(pattern_params("e", 3))
    assert cf.lambdaK == pytest.approx(0, abs=1e-12)
    assert cf.lambdaE_plus == pytest.approx(12)
    cf = closed_form_eigenvalues(pattern_params("f", 2))
    assert cf.lambdaK == pytest.approx(21)
    cf = closed_form_eigenvalues(pattern_params("c", 4, c=1))
    assert cf.lambdaE_minus == pytest.approx(1)
    assert not cf.nonreal


def test_closed_form_nonreal_flag():
    assert not closed_form_eigenvalues(SatakeParams(10, 10, 0.01, 2)).nonreal
    assert closed_form_eigenvalues(SatakeParams.from_two(2j, 1, 2)).nonreal


def test_dense_eigenvalues_match_closed_form():
    rng = np.random.default_rng(0)
    for _ in range(200):
        p = SatakeParams.from_two(*np.exp(1j * rng.uniform(0, 2 * np.pi, 2)), 2)
        m, cf = build_matrices(p), closed_form_eigenvalues(p)
        want = np.array([0, cf.lambdaE_plus, cf.lambdaE_minus])
        got = np.linalg.eigvals(m["up1"])
        assert np.allclose(np.sort_complex(got), np.sort_complex(want), atol=1e-9)
        assert np.allclose(
            np.sort_complex(np.linalg.eigvals(m["down1"])), np.sort_complex([0, 0, cf.lambdaK]), atol=1e-9
        )
        assert cf.lambdaE_plus + cf.lambdaE_minus == pytest.approx(9)
        assert cf.lambdaE_plus * cf.lambdaE_minus == pytest.approx(cf.lambdaK)


@pytest.mark.parametrize(
    "kind, expected",
    [("a", "a"), ("b", "b"), ("c", "c"), ("d", "d"), ("e", "e"), ("f", "f"), ("Stn", "Stn")],
)
@pytest.mark.parametrize("qq", [2, 3, 4, 5])
def test_classify_patterns(kind, expected, qq):
    c = cmath.exp(0.7j)
    p = pattern_params(kind, qq, c=c, a=0.2, theta=(0.4, 1.1))
    rep = classify_type(p)
    assert rep.kind == expected
    if kind in ("b", "c", "d"):
        assert rep.c == pytest.approx(c)


def test_classify_examples():
    assert classify_type(SatakeParams.from_two(cmath.exp(0.3j), cmath.exp(2.1j), 2)).kind == "a"
    assert classify_type(SatakeParams(0.5, 1, 2, 2)).name == "Steinberg"
    rep = classify_type(pattern_params("c", 2, c=1j))
    assert rep.name == "EdgeTempered" and rep.c == pytest.approx(1j)


def test_classify_outside():
    assert classify_type(SatakeParams(10, 10, 0.01, 2)).kind == "outside"


def test_classify_permutation_invariant_for_a():
    rng = np.random.default_rng(3)
    for _ in range(20):
        z = np.exp(1j * rng.uniform(0, 2 * np.pi, 2))
        base = SatakeParams.from_two(*z, 3)
        for perm in itertools.permutations(base.z):
            assert classify_type(SatakeParams(*perm, 3)).kind == "a"


def test_classify_order_distinguishes_trivial_and_steinberg():
    assert classify_type(SatakeParams(3, 1, 1 / 3, 3)).kind == "e"
    assert classify_type(SatakeParams(1 / 3, 1, 3, 3)).kind == "Stn"


def test_type_eigenvalues():
    assert type_eigenvalues(pattern_params("c", 4, c=-1))["edge"] == [pytest.approx(9)]
    assert type_eigenvalues(pattern_params("c", 4, c=1))["edge"] == [pytest.approx(1)]
    assert type_eigenvalues(pattern_params("e", 2)) == {"vertex": [0.0], "edge": [9.0]}
    assert type_eigenvalues(pattern_params("f", 2)) == {"vertex": [21.0], "edge": [0.0]}
    assert type_eigenvalues(pattern_params("Stn", 2)) == {"vertex": [], "edge": []}
    d = type_eigenvalues(pattern_params("d", 4, c=1))
    assert d["edge"][1] == pytest.approx(2 * 5 + 4)


def test_type_c_value_is_a_closed_form_root():
    for c in (1, -1, 1j, cmath.exp(2.2j)):
        p = pattern_params("c", 4, c=c)
        cf = closed_form_eigenvalues(p)
        (lam,) = type_eigenvalues(p)["edge"]
        assert min(abs(lam - cf.lambdaE_plus), abs(lam - cf.lambdaE_minus)) < 1e-9


def test_interval_membership_examples():
    p = SatakeParams(1, 1, 1, 2)
    assert closed_form_eigenvalues(p).lambdaK == pytest.approx(2)
    assert verify_interval_membership(p)
    assert verify_interval_membership(pattern_params("c", 4, c=-1))
    with pytest.raises(InvalidParamsError):
        verify_interval_membership(pattern_params("e", 2))


def test_interval_membership_grid():
    for qq in (2, 3, 7):
        for t1 in np.linspace(0, 2 * np.pi, 25):
            for t2 in np.linspace(0, 2 * np.pi, 25):
                assert verify_interval_membership(pattern_params("a", qq, theta=(t1, t2)))
        for t in np.linspace(0, 2 * np.pi, 50):
            assert verify_interval_membership(pattern_params("c", qq, c=cmath.exp(1j * t)))


def test_interval_concentration():
    for qq in (2, 3, 4, 5, 7, 8, 9, 101, 10**6):
        k1 = qq + 1
        lo, hi = interval_plus(qq)
        assert 2 * k1 - 1 <= lo and hi <= 2 * k1 + 8
        lo, hi = interval_minus(qq)
        assert k1 - 8 <= lo and hi <= k1 + 1
        assert interval_I(qq) == pytest.approx((k1 - 2 * math.sqrt(qq), k1 + 2 * math.sqrt(qq)))


def test_predicted_examples():
    p = predicted_spectrum(10, 2, tripartite=False)
    assert (p.N_a, p.N_c, p.N_e, p.N_f) == (9, 42, 1, 0)
    assert 3 * 9 + 42 + 1 == 70 == 10 * 14 // 2
    p = predicted_spectrum(6, 2, tripartite=True)
    assert (p.N_a, p.N_c, p.N_e, p.N_f) == (3, 30, 1, 2)
    assert all(p.dimension_identities().values())


def test_predicted_identities_sweep():
    for qq in (2, 3, 4, 5, 7, 8, 9):
        for n in range(1, 101):
            for tri in (False, True):
                assert all(predicted_spectrum(n, qq, tri).dimension_identities().values())


def test_predicted_errors():
    with pytest.raises(InvalidParamsError):
        predicted_spectrum(0, 2, False)
    with pytest.raises(InvalidParamsError):
        predicted_spectrum(3, 1, False)


def test_reduced_euler_characteristic():
    # n vertices, n*k0/2 edges, n*k0*k1/6 triangles
    assert reduced_euler_characteristic(7, 2) == Fraction(-1 + 7 - 49 + 49)
    assert predicted_spectrum(7, 2, False).N_Stn == -1 + 7 - 49 + 49
    assert predicted_spectrum(7, 2, False, euler=5).N_Stn == 5


def test_parse_pattern():
    p = parse_pattern("trivial q=3")
    assert classify_type(p).kind == "e" and p.q == 3
    p = parse_pattern("type-c c=0.6+0.8i q=4")
    assert classify_type(p).c == pytest.approx(0.6 + 0.8j)
    assert parse_pattern("color w=-", q=2).z1 == pytest.approx(OMEGA.conjugate() * 2)
    assert classify_type(parse_pattern("steinberg", q=5)).kind == "Stn"
    assert classify_type(parse_pattern("type-a t1=0.2 t2=1", q=2)).kind == "a"


@pytest.mark.parametrize("text", ["", "nonsense q=2", "trivial", "trivial q", "type-c c=abc q=2", "trivial q=x"])
def test_parse_pattern_errors(text):
    with pytest.raises(InvalidParamsError):
        parse_pattern(text)


def test_parse_complex_number():
    assert parse_complex_number("0.6+0.8i") == 0.6 + 0.8j
    assert parse_complex_number(" -i ") == -1j
    with pytest.raises(InvalidParamsError):
        parse_complex_number("1+")
