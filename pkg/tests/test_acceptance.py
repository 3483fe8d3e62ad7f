"""One test per acceptance criterion; the terminal summary prints a PASS/FAIL line for each."""

import itertools
import subprocess
import sys
import time

import numpy as np
import pytest

from hodgespec.bounds import cheeger_audit, colored_mixing_check, mixing_check, mixing_constants, weak_chromatic
from hodgespec.combinatorics import count_galleries, legal_quadruples, random_legal_quadruple, spectral_gallery_count
from hodgespec.complex import degree_profile, find_disorientation, find_proper_coloring
from hodgespec.errors import NotApplicableError
from hodgespec.generators import complete_tripartite, generate, latin_tripartite, linial_meshulam, named
from hodgespec.hodge import boundary_matrix, garland_check, laplacian, spectrum_report
from hodgespec.runner import default_corpus
from hodgespec.satake import (
    SatakeParams,
    build_matrices,
    closed_form_eigenvalues,
    interval_minus,
    interval_plus,
    pattern_params,
    predicted_spectrum,
    type_eigenvalues,
    verify_interval_membership,
)

from conftest import corpus


def full_corpus():
    out = dict(corpus())
    for spec in default_corpus(42):
        out.setdefault(spec.label(), generate(spec))
    return out


@pytest.mark.criterion(1, "spectral gallery identity")
def test_gallery_identity():
    start = time.perf_counter()
    complexes = [complete_tripartite(m) for m in (2, 3, 4)]
    shapes = [(3, 1), (3, 2), (4, 1), (4, 2), (4, 3)]
    complexes += [latin_tripartite(*shapes[s % 5], seed=s) for s in range(10)]
    assert all(X.n <= 12 for X in complexes)
    rng = np.random.default_rng(2024)
    draws = 0
    worst = 0.0
    for X in complexes:
        assert degree_profile(X, 1).regular
        col = find_proper_coloring(X, 3)
        for _ in range(10):
            q = random_legal_quadruple(col, rng)
            worst = max(worst, abs(spectral_gallery_count(X, *q, col) - count_galleries(X, 2, q)))
            draws += 1
    assert draws >= 100
    assert worst <= 1e-6
    assert time.perf_counter() - start < 30


def _matched(got, want):
    """Largest relative error over the best pairing of two small eigenvalue lists (batched)."""
    scale = np.maximum(1.0, np.abs(want).max(axis=1, keepdims=True))
    best = None
    for perm in itertools.permutations(range(want.shape[1])):
        err = (np.abs(got[:, perm] - want) / scale).max(axis=1)
        best = err if best is None else np.minimum(best, err)
    return best.max()


def _satake_batch(params):
    mats = [build_matrices(p) for p in params]
    cfs = [closed_form_eigenvalues(p) for p in params]
    stack = {k: np.stack([m[k] for m in mats]) for k in mats[0]}
    lk = np.array([cf.lambdaK for cf in cfs])
    lp = np.array([cf.lambdaE_plus for cf in cfs])
    lm = np.array([cf.lambdaE_minus for cf in cfs])
    zero = np.zeros_like(lk)
    errors = {
        "up1": _matched(np.linalg.eigvals(stack["up1"]), np.stack([zero, lp, lm], 1)),
        "down2": _matched(np.linalg.eigvals(stack["down2"]), np.stack([lp, lm], 1)),
        "down1": _matched(np.linalg.eigvals(stack["down1"]), np.stack([lk, zero, zero], 1)),
        "up0": _matched(stack["up0"][:, :, 0], lk[:, None]),
    }
    cochain = np.abs(stack["delta2"] @ stack["delta1"]).max()
    return errors, cochain


@pytest.mark.criterion(2, "Satake closed forms")
def test_satake_closed_forms():
    start = time.perf_counter()
    rng = np.random.default_rng(7)
    phases = rng.uniform(0, 2 * np.pi, size=(10_000, 2))
    qs = rng.choice([2, 3, 4, 5], size=10_000)
    params = [SatakeParams.from_two(np.exp(1j * a), np.exp(1j * b), int(q)) for (a, b), q in zip(phases, qs)]
    for q in (2, 3, 4, 5):
        for kind in ("a", "b", "c", "d", "e", "f", "Stn"):
            params.append(pattern_params(kind, q, c=np.exp(0.9j), a=0.3, theta=(0.5, 2.0)))
    errors, cochain = _satake_batch(params)
    assert max(errors.values()) <= 1e-9, errors
    assert cochain <= 1e-12
    for q in (2, 3, 4, 5):
        m = build_matrices(pattern_params("Stn", q))
        assert np.abs(m["partial2"] @ np.array([q, -1])).max() <= 1e-12
    assert time.perf_counter() - start < 10


@pytest.mark.criterion(3, "point values and type (a) memberships")
def test_point_values():
    for q in (2, 3, 4, 5):
        k0, k1 = 2 * (q * q + q + 1), q + 1
        cf = closed_form_eigenvalues(pattern_params("e", q))
        assert abs(cf.lambdaK) <= 1e-12 * k0 and abs(cf.lambdaE_plus - 3 * k1) <= 1e-12 * k1
        for sign in (1, -1):
            assert abs(closed_form_eigenvalues(pattern_params("f", q, omega_sign=sign)).lambdaK - 1.5 * k0) <= 1e-12 * k0
    cf = closed_form_eigenvalues(pattern_params("c", 4, c=1))
    assert abs(cf.lambdaE_minus - 1) <= 1e-12
    assert type_eigenvalues(pattern_params("c", 4, c=1))["edge"] == [1.0]
    grid = np.deg2rad(np.arange(360))
    for q in (2, 3, 4, 5):
        for t1, t2 in itertools.product(grid, grid):
            assert verify_interval_membership(pattern_params("a", q, theta=(t1, t2)))


@pytest.mark.criterion(4, "multiplicity bookkeeping and strip containment")
def test_table_bookkeeping():
    for q in (2, 3, 4, 5, 7, 8, 9):
        for n in range(1, 101):
            for tripartite in (False, True):
                assert all(predicted_spectrum(n, q, tripartite).dimension_identities().values())
    qs = np.arange(2, 10**6 + 1)
    k1 = qs + 1
    root = np.sqrt((k1 / 2) ** 2 + 8 * qs)
    assert np.all(2 * k1 - 1 <= 1.5 * k1 + root) and np.all(1.5 * k1 + root <= 2 * k1 + 8)
    assert np.all(k1 - 8 <= 1.5 * k1 - root) and np.all(1.5 * k1 - root <= k1 + 1)
    # exact form: sqrt(k1^2/4 + 8q) <= k1/2 + 8  <=>  k1^2 + 32q <= (k1 + 16)^2
    assert np.all(k1**2 + 32 * qs <= (k1 + 16) ** 2)
    for q in (2, 10, 997, 10**6):
        lo, hi = interval_plus(q)
        assert 2 * (q + 1) - 1 <= lo and hi <= 2 * (q + 1) + 8
        lo, hi = interval_minus(q)
        assert (q + 1) - 8 <= lo and hi <= (q + 1) + 1


@pytest.mark.criterion(5, "Cheeger-type inequality on every partition")
def test_cheeger_audit():
    start = time.perf_counter()
    complexes = [named("octahedron"), complete_tripartite(3), named("tetrahedron-boundary"), named("single-triangle")]
    complexes += [linial_meshulam(6 + s % 5, 0.5, s) for s in range(20)]
    total = 0
    for X in complexes:
        assert X.n <= 10 and degree_profile(X, 0).regular
        audit = cheeger_audit(X)
        assert audit.all_hold, (X, audit.worst_slack, audit.worst_partition)
        total += audit.partitions
    assert total > 0
    assert time.perf_counter() - start < 60


@pytest.mark.criterion(6, "gallery mixing bound")
def test_mixing_audit():
    X = complete_tripartite(2)
    mc = mixing_constants(X)
    r = mixing_check(X, {0}, {1, 4}, {2, 5}, {3}, constants=mc)
    assert r.inputs["F2"] == 4 and r.inputs["main_term"] == 4
    quads = list(legal_quadruples(mc.coloring))
    assert quads and all(mixing_check(X, *q, constants=mc).holds for q in quads)
    rng = np.random.default_rng(6)
    for m in (3, 4):
        X = complete_tripartite(m)
        mc = mixing_constants(X)
        for _ in range(200):
            assert mixing_check(X, *random_legal_quadruple(mc.coloring, rng), constants=mc).holds


@pytest.mark.criterion(7, "colored mixing equality")
def test_colored_mixing():
    for m in (1, 2, 3, 4):
        X = complete_tripartite(m)
        col = find_proper_coloring(X, 3)
        for u, v in itertools.combinations(range(X.n), 2):
            if col.colors[u] == col.colors[v]:
                continue
            r = colored_mixing_check(X, col, {u}, {v})
            assert r.inputs["mu"] <= 1e-9
            assert abs(r.lhs) <= 1e-9 and abs(r.rhs) <= 1e-9 and r.holds


def _nonzero(vals, scale):
    return np.sort(vals[np.abs(vals) > 1e-8 * scale])


@pytest.mark.criterion(8, "Hodge core invariants")
def test_hodge_core():
    for name, X in full_corpus().items():
        d = X.dim
        for i in range(1, d):
            assert not np.any(boundary_matrix(X, i) @ boundary_matrix(X, i + 1)), name
        betti = []
        for i in range(d + 1):
            full = np.linalg.eigvalsh(laplacian(X, i, "full"))
            scale = max(1.0, full.max(initial=0))
            assert full.min(initial=0) >= -1e-9 * scale, name
            if i < d:
                up = np.linalg.eigvalsh(laplacian(X, i, "up"))
                down = np.linalg.eigvalsh(laplacian(X, i + 1, "down"))
                assert np.allclose(_nonzero(up, scale), _nonzero(down, scale), atol=1e-8 * scale), name
                top = up.max(initial=0)
                assert top <= (i + 2) * degree_profile(X, i).k_max + 1e-8 * scale, name
            betti.append(spectrum_report(X, i).betti)
        euler = sum((-1) ** i * f for i, f in enumerate(X.f_vector))
        assert euler == sum((-1) ** i * b for i, b in enumerate(betti)), name
        for j in range(1, d + 1):
            try:
                assert garland_check(X, j).holds, (name, j)
            except NotApplicableError:
                pass
        if d == 2 and degree_profile(X, 1).regular:
            k1 = degree_profile(X, 1).k
            up = np.linalg.eigvalsh(laplacian(X, 1, "up"))
            has_top = bool(np.any(np.abs(up - 3 * k1) <= 1e-8 * max(1.0, 3 * k1)))
            assert has_top == (find_disorientation(X) is not None), name
    torus = named("csaszar-torus")
    assert [spectrum_report(torus, i).betti for i in range(3)] == [1, 2, 1]


@pytest.mark.criterion(9, "weak chromatic numbers")
def test_weak_chromatic():
    assert weak_chromatic(named("octahedron")).chi == 2
    assert weak_chromatic(named("single-triangle")).chi == 2
    assert weak_chromatic(named("hollow-triangle")).chi == 1
    checked = 0
    for name, X in full_corpus().items():
        if X.dim == 2 and X.cells[2] and find_proper_coloring(X, 3) is not None:
            assert weak_chromatic(X).chi == 2, name
            checked += 1
    assert checked >= 4


@pytest.mark.criterion(10, "deterministic check-all run")
def test_determinism():
    start = time.perf_counter()
    cmd = [sys.executable, "-m", "hodgespec", "check-all", "--corpus", "default", "--seed", "42"]
    first = subprocess.run(cmd, capture_output=True, timeout=300)
    second = subprocess.run(cmd, capture_output=True, timeout=300)
    assert first.returncode == 0, first.stderr.decode()
    assert second.returncode == 0
    assert first.stdout and first.stdout == second.stdout
    assert time.perf_counter() - start < 300
