"""Isoperimetric and mixing inequalities evaluated on concrete complexes.

Every check returns an :class:`InequalityReport`; nothing is clamped, so
vacuous right-hand sides show up as negative numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .combinatorics import _normalize, check_gallery_placement, count_galleries, count_rainbow, neighbors
from .complex import SimplicialComplex, VertexColoring, _backtrack_color, degree_profile, find_proper_coloring
from .errors import DimensionError, PreconditionError, ResourceError
from .hodge import is_colored_regular, kernel_basis, laplacian, restricted_spectrum, spectrum_report

HOLDS_TOL = 1e-9
EXHAUSTIVE_CAP = 15


@dataclass
class InequalityReport:
    """``lhs relation rhs``; ``binding`` is False for reports whose constant is not pinned down."""

    theorem: str
    lhs: float
    rhs: float
    relation: str = ">="
    inputs: dict = field(default_factory=dict)
    binding: bool = True
    tol: float = HOLDS_TOL

    @property
    def slack(self) -> float:
        return self.lhs - self.rhs

    @property
    def holds(self) -> bool:
        margin = self.tol * max(1.0, abs(self.rhs))
        if self.relation == ">=":
            return self.lhs >= self.rhs - margin
        return self.lhs <= self.rhs + margin

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "lhs": _r(self.lhs),
            "rhs": _r(self.rhs),
            "relation": self.relation,
            "slack": _r(self.slack),
            "holds": self.holds,
            "binding": self.binding,
            "inputs": {k: _jsonable(v) for k, v in self.inputs.items()},
        }


def _r(x, digits=9):
    x = round(float(x), digits)
    return 0.0 if x == 0 else x


def _jsonable(v):
    if isinstance(v, (frozenset, set)):
        return sorted(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (float, np.floating)):
        return _r(v)
    if isinstance(v, np.integer):
        return int(v)
    return v


# --- Cheeger-type inequality -------------------------------------------------


@dataclass(frozen=True)
class CheegerConstants:
    n: int
    k0: int
    mu0: float
    lambda1: float


def cheeger_constants(X: SimplicialComplex) -> CheegerConstants:
    """n, k0, mu0 (colored eigenvalues included) and the smallest nontrivial edge eigenvalue."""
    if X.dim < 1:
        raise DimensionError("needs edges")
    k0 = degree_profile(X, 0).k
    if k0 is None:
        raise PreconditionError("Cheeger-type inequality: X is not vertex-regular")
    mu0 = spectrum_report(X, 0).concentration(include_colored=True)
    edge = spectrum_report(X, 1)
    if edge.nontrivial.size == 0:
        raise PreconditionError("Cheeger-type inequality: the edge cycle space Z1 is zero, lambda1 is undefined")
    return CheegerConstants(X.n, k0, mu0, float(edge.nontrivial.min()))


def cheeger_rhs(cc: CheegerConstants, a, b, c):
    abc = np.asarray(a, float) * b * c
    return cc.lambda1 * (cc.k0 - cc.mu0 * (1 + 10 * cc.n**3 / (9 * abc)))


def _check_partition(X, sets, parts):
    if len(sets) != parts:
        raise PreconditionError(f"need {parts} blocks, got {len(sets)}")
    for i, s in enumerate(sets):
        if not s:
            raise PreconditionError(f"block {i} is empty")
    seen = set()
    for s in sets:
        if seen & s:
            raise PreconditionError("blocks overlap")
        seen |= s
    if len(seen) != X.n:
        raise PreconditionError("blocks do not cover every vertex")


def cheeger_check(X: SimplicialComplex, A, B, C, constants: CheegerConstants = None) -> InequalityReport:
    """|T(A,B,C)| n^2 / (abc) >= lambda1 (k0 - mu0 (1 + 10 n^3 / (9 abc))) for a partition A, B, C."""
    sets = _normalize(X, (A, B, C))
    _check_partition(X, sets, 3)
    cc = constants or cheeger_constants(X)
    a, b, c = (len(s) for s in sets)
    T = count_rainbow(X, sets, 2) if X.dim >= 2 else 0
    lhs = T * X.n**2 / (a * b * c)
    rhs = float(cheeger_rhs(cc, a, b, c))
    return InequalityReport(
        "cheeger-triangle",
        lhs,
        rhs,
        inputs={"n": X.n, "k0": cc.k0, "mu0": cc.mu0, "lambda1": cc.lambda1, "sizes": [a, b, c], "T": T, "sets": sets},
    )


def _labelings(n: int, chunk: int = 1 << 17):
    """All unordered partitions of range(n) into 3 nonempty blocks, as label arrays.

    Vertex 0 has label 0 and label 1 appears before label 2.  Chunks are
    yielded in lexicographic order of the labels of vertices 1, 2, ...
    """
    if n < 3:
        return
    total = 3 ** (n - 1)
    powers = 3 ** np.arange(n - 2, -1, -1, dtype=np.int64)
    for start in range(0, total, chunk):
        codes = np.arange(start, min(total, start + chunk), dtype=np.int64)
        L = np.zeros((codes.size, n), dtype=np.int8)
        L[:, 1:] = (codes[:, None] // powers[None, :]) % 3
        has1 = (L == 1).any(axis=1)
        has2 = (L == 2).any(axis=1)
        first1 = np.argmax(L == 1, axis=1)
        first2 = np.argmax(L == 2, axis=1)
        keep = has1 & has2 & (first1 < first2)
        if keep.any():
            yield L[keep]


def _rainbow_counts(X: SimplicialComplex, L: np.ndarray) -> np.ndarray:
    if X.dim < 2 or not X.cells[2]:
        return np.zeros(L.shape[0], dtype=np.int64)
    tri = np.array(X.cells[2])
    a, b, c = L[:, tri[:, 0]], L[:, tri[:, 1]], L[:, tri[:, 2]]
    return ((a != b) & (b != c) & (a != c)).sum(axis=1)


def _blocks(labels):
    return tuple(frozenset(int(v) for v in np.flatnonzero(labels == k)) for k in range(3))


@dataclass
class CheegerAudit:
    partitions: int
    violations: int
    worst_slack: float
    worst_partition: tuple
    constants: CheegerConstants

    @property
    def all_hold(self) -> bool:
        return self.violations == 0


def cheeger_audit(X: SimplicialComplex) -> CheegerAudit:
    """Evaluate the Cheeger-type inequality on every partition into three nonempty blocks."""
    if X.n > EXHAUSTIVE_CAP:
        raise ResourceError(f"exhaustive partition search is capped at n={EXHAUSTIVE_CAP}; sample partitions instead")
    cc = cheeger_constants(X)
    count = violations = 0
    worst, worst_part = math.inf, None
    for L in _labelings(X.n):
        sizes = np.stack([(L == k).sum(axis=1) for k in range(3)], axis=1).astype(float)
        abc = sizes.prod(axis=1)
        lhs = _rainbow_counts(X, L) * X.n**2 / abc
        rhs = cheeger_rhs(cc, sizes[:, 0], sizes[:, 1], sizes[:, 2])
        slack = lhs - rhs
        violations += int(np.sum(slack < -HOLDS_TOL * np.maximum(1.0, np.abs(rhs))))
        count += L.shape[0]
        i = int(np.argmin(slack))
        if slack[i] < worst:
            worst, worst_part = float(slack[i]), _blocks(L[i])
    return CheegerAudit(count, violations, worst, worst_part, cc)


@dataclass
class HTheta:
    value: float
    partition: tuple
    theta: float


def h_theta(X: SimplicialComplex, theta: float) -> HTheta:
    """Minimum of |T(A,B,C)| n^2 / (abc) over partitions with every block of size >= theta n."""
    if not 0 <= theta <= 1 / 3 + 1e-12:
        raise PreconditionError("theta must lie in [0, 1/3]")
    if X.n > EXHAUSTIVE_CAP:
        raise ResourceError(f"h_theta is exhaustive and capped at n={EXHAUSTIVE_CAP}; sample partitions instead")
    min_size = max(1, math.ceil(theta * X.n - 1e-9))
    best, best_part = math.inf, None
    for L in _labelings(X.n):
        sizes = np.stack([(L == k).sum(axis=1) for k in range(3)], axis=1)
        ok = (sizes >= min_size).all(axis=1)
        if not ok.any():
            continue
        L, sizes = L[ok], sizes[ok].astype(float)
        vals = _rainbow_counts(X, L) * X.n**2 / sizes.prod(axis=1)
        m = float(vals.min())
        if m < best * (1 - 1e-12) - 1e-12:
            i = int(np.flatnonzero(vals <= m + 1e-12 * max(1.0, abs(m)))[0])
            best, best_part = m, _blocks(L[i])
    if best_part is None:
        raise PreconditionError(f"no partition has all blocks of size >= {min_size}")
    return HTheta(best, best_part, theta)


def cheeger_general_check(X: SimplicialComplex, d: int, sets, C_d: float = 1.0) -> InequalityReport:
    """Dimension-d Cheeger-type bound for a partition into d+1 blocks.

    The constant ``C_d`` is left to the caller; with ``d = 2`` and
    ``C_d = 10/9`` the bound is the triangle inequality of
    :func:`cheeger_check`.  For d >= 3 the report is informational only.
    """
    if d < 2 or d > X.dim:
        raise DimensionError(f"d={d} must satisfy 2 <= d <= dim X = {X.dim}")
    sets = _normalize(X, sets)
    _check_partition(X, sets, d + 1)
    ks, mus = [], []
    for i in range(d - 1):
        rep = spectrum_report(X, i)
        if rep.k is None:
            raise PreconditionError(f"general Cheeger-type inequality: {i}-cells are not regular")
        ks.append(rep.k)
        mus.append(rep.concentration(include_colored=True))
    top = spectrum_report(X, d - 1)
    if top.nontrivial.size == 0:
        raise PreconditionError(f"general Cheeger-type inequality: Z_{d - 1} is zero")
    lam = float(top.nontrivial.min())
    n = X.n
    sizes = [len(s) for s in sets]
    prod = math.prod(sizes)
    F = count_rainbow(X, sets, d)
    lhs = F * n**d / prod
    ratio = sum(m / k for m, k in zip(mus, ks))
    rhs = math.prod(ks) * lam * (1 - mus[-1] / ks[-1] - C_d * ratio * n ** (d + 1) / prod)
    binding = d == 2 and C_d >= 10 / 9 - 1e-15
    return InequalityReport(
        f"cheeger-dim-{d}",
        lhs,
        rhs,
        inputs={"n": n, "k": ks, "mu": mus, "lambda": lam, "sizes": sizes, "F": F, "C_d": C_d},
        binding=binding,
    )


# --- gallery mixing ------------------------------------------------------------


@dataclass(frozen=True)
class MixingConstants:
    n: int
    k0: int
    k1: int
    mu0: float
    mu1: float
    coloring: VertexColoring


def mixing_constants(X: SimplicialComplex, coloring: VertexColoring = None) -> MixingConstants:
    if X.dim != 2:
        raise DimensionError("gallery mixing needs a triangle complex")
    k0 = degree_profile(X, 0).k
    k1 = degree_profile(X, 1).k
    if k0 is None:
        raise PreconditionError("gallery mixing: X is not vertex-regular")
    if k1 is None:
        raise PreconditionError("gallery mixing: X is not edge-regular")
    if coloring is None:
        coloring = find_proper_coloring(X, 3)
    if coloring is None:
        raise PreconditionError("gallery mixing: X is not tripartite")
    if not is_colored_regular(X, coloring):
        raise PreconditionError("gallery mixing: vertices do not see k0/2 neighbors in each other block")
    mu0 = spectrum_report(X, 0).mu
    mu1 = spectrum_report(X, 1).two_strip_radius()
    return MixingConstants(X.n, k0, k1, mu0, mu1, coloring)


def mixing_main_term(k0, k1, n, a, b, c, d):
    return 27 * k0 * k1**2 * a * b * c * d / (2 * n**3)


def mixing_rhs(mc: MixingConstants, a, b, c, d):
    k0, k1, n, mu0, mu1 = mc.k0, mc.k1, mc.n, mc.mu0, mc.mu1
    sab, scd = math.sqrt(a * b), math.sqrt(c * d)
    first = 6 * mu0 * k1**2 * math.sqrt(a * b * c * d) / (k0 * n) * (3 * k0 * (sab + scd) / (2 * n) + mu0)
    second = (
        (2 * k1**2 * mu0 / k0 + (k1 + mu1) * mu1)
        * (a * b * c * d) ** 0.25
        * math.sqrt((3 * k0 * sab / (2 * n) + mu0) * (3 * k0 * scd / (2 * n) + mu0))
    )
    return first + second


def mixing_check(X: SimplicialComplex, A, B, C, D, constants: MixingConstants = None) -> InequalityReport:
    """| |F^2(A,B,C,D)| - 27 k0 k1^2 abcd / (2 n^3) | against the two-strip error bound."""
    mc = constants or mixing_constants(X)
    sets = _normalize(X, (A, B, C, D))
    check_gallery_placement(X, *sets, coloring=mc.coloring)
    a, b, c, d = (len(s) for s in sets)
    F2 = count_galleries(X, 2, sets)
    main = mixing_main_term(mc.k0, mc.k1, mc.n, a, b, c, d)
    return InequalityReport(
        "gallery-mixing",
        abs(F2 - main),
        mixing_rhs(mc, a, b, c, d),
        relation="<=",
        inputs={
            "n": mc.n, "k0": mc.k0, "k1": mc.k1, "mu0": mc.mu0, "mu1": mc.mu1,
            "sizes": [a, b, c, d], "F2": F2, "main_term": main, "sets": sets,
        },
    )


def colored_mixing_check(X: SimplicialComplex, coloring: VertexColoring, A, B) -> InequalityReport:
    """|E(A,B) - c k |A||B| / ((c-1) n)| <= mu sqrt(|A||B|) on a c-colored regular graph."""
    if X.dim < 1:
        raise DimensionError("needs edges")
    if not is_colored_regular(X, coloring):
        raise PreconditionError("colored mixing: the coloring is not a balanced proper coloring of the graph")
    A, B = _normalize(X, (A, B))
    col = coloring.colors
    ca, cb = {col[v] for v in A}, {col[v] for v in B}
    if len(ca) > 1 or len(cb) > 1 or (ca and ca == cb):
        raise PreconditionError("colored mixing: A and B must lie in two different color classes")
    c = coloring.c
    k = degree_profile(X, 0).k
    n = X.n
    L = laplacian(X.skeleton(1), 0, "up")
    blocks = np.zeros((n, c))
    blocks[np.arange(n), col] = 1.0
    Q = kernel_basis(blocks.T)  # orthogonal to every block indicator
    spec = restricted_spectrum(L, Q)
    mu = float(np.max(np.abs(spec - k))) if spec.size else 0.0
    adj = neighbors(X)
    E = sum(len(adj[u] & B) for u in A)
    a, b = len(A), len(B)
    return InequalityReport(
        "colored-mixing",
        abs(E - c * k * a * b / ((c - 1) * n)),
        mu * math.sqrt(a * b),
        relation="<=",
        inputs={"n": n, "k": k, "c": c, "mu": mu, "sizes": [a, b], "E": E},
    )


# --- weak chromatic number --------------------------------------------------------


@dataclass
class WeakChromatic:
    chi: int
    coloring: VertexColoring
    tripartite: bool


def weak_chromatic(X: SimplicialComplex) -> WeakChromatic:
    """Fewest colors with no monochromatic triangle (exhaustive, lexicographically first witness)."""
    if X.n > EXHAUSTIVE_CAP:
        raise ResourceError(f"weak chromatic search is capped at n={EXHAUSTIVE_CAP}")
    tris = X.cells[2] if X.dim >= 2 else ()
    closing = [[] for _ in range(X.n)]  # triangles whose largest vertex is v
    for a, b, c in tris:
        closing[c].append((a, b))

    def allowed(v, colors):
        return all(not (colors[a] == colors[b] == colors[v]) for a, b in closing[v])

    tripartite = bool(tris) and find_proper_coloring(X, 3) is not None if X.dim == 2 else False
    for c in range(1, X.n + 1):
        colors = _backtrack_color(X.n, c, allowed)
        if colors is not None:
            return WeakChromatic(c, VertexColoring(colors, c), tripartite)
    raise AssertionError("n colors always suffice")


# --- closed-form bounds for Ramanujan complexes ------------------------------------


def ramanujan_formulas(q: float, theta: float, n: float = None, sizes=None) -> dict:
    """Evaluate each bound of this module with Ramanujan spectral data plugged in."""
    if q < 2:
        raise PreconditionError("q must be >= 2")
    if not 0 < theta <= 1 / 3 + 1e-12:
        raise PreconditionError("theta must lie in (0, 1/3]")
    k0, k1 = 2 * (q * q + q + 1), q + 1
    mu0, mu1 = 6 * q, 2 * math.sqrt(q)
    out = {
        "k0": k0,
        "k1": k1,
        "mu0": mu0,
        "mu1": mu1,
        "cheeger_rhs": (q + 1 - 2 * math.sqrt(q)) * (2 * q * q + 2 * q + 2 - 6 * q * (1 + 10 / (9 * theta**3))),
        "chromatic_lb": q ** (1 / 3) / 30,
    }
    if n is not None:
        out["pseudorandom_rhs"] = (65 * q**3.5 * theta + 244 * q**2.5) * theta * n
        out["mixing_rhs_theta"] = (
            ((6 * theta + 2) * mu0 / k0 + 18 * theta**2 + 3 * theta) * k1**2 * mu0
            + mu1 * (1.5 * theta * k0 + mu0) * (k1 + mu1)
        ) * theta * n
        out["simplified_mixing_rhs"] = theta * (9 * theta + 4 * mu0 / k0) * (k1 * mu0 + k0 * mu1) * k1 * n
        if sizes is not None:
            a, b, c, d = sizes
            out["pseudorandom_main"] = 27 * q**4 * a * b * c * d / n**3
    return out
