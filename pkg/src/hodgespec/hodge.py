"""Hodge Laplacians built from boundary maps, and their spectra.

Forms are plain numpy vectors indexed by the canonical cell order of the
complex; operators are dense numpy matrices.  Spectra separate the trivial
part (zeros on coboundaries) from the nontrivial part by restricting the
upper Laplacian to an orthonormal basis of the cycle space, never by
filtering near-zero eigenvalues.

The nontrivial vertex spectrum is taken on the augmented complex, so the
constant functions count as coboundaries of the empty cell; Betti numbers,
on the other hand, are the ordinary ones (kernel dimension of the full
unaugmented Laplacian).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .complex import (
    Disorientation,
    SimplicialComplex,
    VertexColoring,
    degree_profile,
    find_proper_coloring,
    link,
)
from .errors import DimensionError, NotApplicableError, NumericError, PreconditionError, ResourceError

MAX_DENSE = 5000
KERNEL_RTOL = 1e-8
COLORED_RTOL = 1e-6


def _check_size(m: int):
    if m > MAX_DENSE:
        raise ResourceError(f"{m} cells exceed the dense eigensolver cap of {MAX_DENSE}")


def boundary_matrix(X: SimplicialComplex, i: int, augmented: bool = False) -> np.ndarray:
    """Signed incidence matrix of shape ``(|X^{i-1}|, |X^i|)``.

    Entry ``(tau, sigma)`` is ``(-1)**j`` when ``tau`` is ``sigma`` with its
    j-th vertex removed.  The coboundary is the transpose.  With
    ``augmented=True``, ``i = 0`` gives the ``1 x n`` row of ones (the map to
    the empty cell).
    """
    if i == 0 and augmented:
        return np.ones((1 if X.n else 0, X.n), dtype=np.int64)
    if not 1 <= i <= X.dim:
        raise DimensionError(f"boundary map index {i} outside [1, {X.dim}]")
    lower = X.cell_index[i - 1]
    upper = X.cells[i]
    _check_size(max(len(lower), len(upper)))
    B = np.zeros((len(lower), len(upper)), dtype=np.int64)
    for col, cell in enumerate(upper):
        for j in range(i + 1):
            face = cell[:j] + cell[j + 1 :]
            B[lower[face], col] = -1 if j % 2 else 1
    return B


def coboundary_matrix(X: SimplicialComplex, i: int) -> np.ndarray:
    """delta_i : Omega^{i-1} -> Omega^i."""
    return boundary_matrix(X, i).T


def laplacian(X: SimplicialComplex, i: int, kind: str = "up") -> np.ndarray:
    """Upper, lower or full Laplacian on i-forms (unnormalized, unweighted)."""
    if not 0 <= i <= X.dim:
        raise DimensionError(f"i={i} outside [0, {X.dim}]")
    m = len(X.cells[i])
    _check_size(m)
    if kind == "up":
        if i == X.dim:
            return np.zeros((m, m))
        B = boundary_matrix(X, i + 1).astype(float)
        return B @ B.T
    if kind == "down":
        if i == 0:
            return np.zeros((m, m))
        B = boundary_matrix(X, i).astype(float)
        return B.T @ B
    if kind == "full":
        return laplacian(X, i, "up") + laplacian(X, i, "down")
    raise ValueError(f"unknown Laplacian kind {kind!r}")


def _svd(M):
    if M.size == 0:
        return np.zeros((M.shape[0], 0)), np.zeros(0), np.eye(M.shape[1])
    U, s, Vt = np.linalg.svd(M, full_matrices=True)
    return U, s, Vt.T


def _rank(s, rtol=KERNEL_RTOL):
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > rtol * s[0]))


def kernel_basis(M: np.ndarray, rtol: float = KERNEL_RTOL) -> np.ndarray:
    """Orthonormal basis (columns) of ker M, singular values below ``rtol * s_max`` count as zero."""
    M = np.asarray(M, dtype=float)
    _, s, V = _svd(M)
    return V[:, _rank(s, rtol) :]


def range_basis(M: np.ndarray, rtol: float = KERNEL_RTOL) -> np.ndarray:
    """Orthonormal basis (columns) of im M."""
    M = np.asarray(M, dtype=float)
    if M.size == 0:
        return np.zeros((M.shape[0], 0))
    U, s, _ = np.linalg.svd(M, full_matrices=False)
    return U[:, : _rank(s, rtol)]


def _eigvalsh(M):
    if M.shape[0] == 0:
        return np.zeros(0)
    try:
        return np.linalg.eigvalsh(M)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"symmetric eigensolver failed: {exc}\n{np.array2string(M)}", M) from exc


def restricted_spectrum(L: np.ndarray, Q: np.ndarray) -> np.ndarray:
    """Eigenvalues of the symmetric ``L`` restricted to the span of the orthonormal columns of ``Q``."""
    return _eigvalsh(Q.T @ L @ Q)


def colored_value(X: SimplicialComplex, i: int, k):
    """Structural eigenvalue attached to i-forms, if any.

    For a (d+1)-partite d-complex the vertex Laplacian has the colored
    value (d+1)k/d, and disorientable complexes carry (d+1)k on (d-1)-forms.
    Both reduce to 2k for graphs.
    """
    d = X.dim
    if k is None or k == 0 or d < 1:
        return None
    if i == 0:
        return (d + 1) * k / d
    if i == d - 1:
        return (d + 1) * k
    return None


def _multiset(values, tol=1e-7):
    out = []
    for v in np.sort(np.asarray(values, dtype=float)):
        if out and abs(v - out[-1][0]) <= tol * max(1.0, abs(v)):
            out[-1][1] += 1
        else:
            out.append([float(v), 1])
    return [{"value": _clean(v), "mult": m} for v, m in out]


def _clean(x, digits=9):
    x = round(float(x), digits)
    return 0.0 if x == 0 else x


@dataclass
class SpectrumReport:
    dim: int
    eigenvalues: np.ndarray
    trivial: np.ndarray
    nontrivial: np.ndarray
    colored: np.ndarray
    betti: int
    k: object = None
    mu: object = None
    colored_value: object = None
    noncolored: np.ndarray = field(default=None, repr=False)

    def concentration(self, include_colored: bool = False):
        """max |lambda - k| over the nontrivial spectrum (optionally keeping colored values)."""
        if self.k is None:
            return None
        vals = self.nontrivial if include_colored else self.noncolored
        if vals.size == 0:
            return 0.0
        return float(np.max(np.abs(vals - self.k)))

    def two_strip_radius(self) -> float:
        """Distance of the non-colored nontrivial spectrum to the nearer of ``k`` and ``2k``."""
        if self.k is None:
            return None
        vals = self.noncolored
        if vals.size == 0:
            return 0.0
        k = self.k
        return float(np.max(np.minimum(np.abs(vals - k), np.abs(vals - 2 * k))))

    @property
    def smallest_nontrivial(self):
        return float(self.nontrivial.min()) if self.nontrivial.size else None

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "eigenvalues": _multiset(self.eigenvalues),
            "trivial": _multiset(self.trivial),
            "nontrivial": _multiset(self.nontrivial),
            "colored": _multiset(self.colored),
            "betti": self.betti,
            "k": self.k,
            "mu": None if self.mu is None else _clean(self.mu),
        }


def spectrum_report(X: SimplicialComplex, i: int) -> SpectrumReport:
    """Full, trivial, nontrivial and colored spectrum of the upper i-Laplacian."""
    if not 0 <= i <= X.dim:
        raise DimensionError(f"i={i} outside [0, {X.dim}]")
    L = laplacian(X, i, "up")
    eig = _eigvalsh(L)
    D = boundary_matrix(X, i, augmented=True).astype(float)
    nontrivial = restricted_spectrum(L, kernel_basis(D))
    trivial = restricted_spectrum(L, range_basis(D.T))

    full = laplacian(X, i, "full")
    scale = max(1.0, float(np.abs(full).sum(axis=1).max(initial=0.0)))
    betti = int(np.sum(np.abs(_eigvalsh(full)) <= KERNEL_RTOL * scale))

    k = degree_profile(X, i).k
    cv = colored_value(X, i, k)
    if cv is None:
        is_col = np.zeros(nontrivial.shape, dtype=bool)
    else:
        is_col = np.abs(nontrivial - cv) <= COLORED_RTOL * k
    report = SpectrumReport(
        dim=i,
        eigenvalues=eig,
        trivial=trivial,
        nontrivial=nontrivial,
        colored=nontrivial[is_col],
        betti=betti,
        k=k,
        colored_value=cv,
        noncolored=nontrivial[~is_col],
    )
    report.mu = report.concentration()
    return report


@dataclass
class GarlandReport:
    j: int
    lower: float
    upper: float
    holds: bool
    link_min: float
    link_max: float
    k: int
    K: int
    spectrum: np.ndarray
    disconnected_links: list
    witnesses: dict


def link_nontrivial_spectrum(X: SimplicialComplex, sigma) -> np.ndarray:
    """Nontrivial graph-Laplacian spectrum of the link of ``sigma`` (constants removed)."""
    lk, _ = link(X, sigma)
    if lk.n == 0:
        return np.zeros(0)
    if lk.dim >= 1:
        L = laplacian(lk.skeleton(1), 0, "up")
    else:
        L = np.zeros((lk.n, lk.n))
    return restricted_spectrum(L, kernel_basis(np.ones((1, lk.n))))


def garland_check(X: SimplicialComplex, j: int, tol: float = 1e-8) -> GarlandReport:
    """Local-to-global bound on the nontrivial spectrum of the upper j-Laplacian
    from the link spectra of (j-1)-cells and the degrees of j-cells."""
    if not 1 <= j <= X.dim:
        raise DimensionError(f"j={j} outside [1, {X.dim}]")
    lows, highs, disconnected = [], [], []
    lo_cell = hi_cell = None
    for sigma in X.cells[j - 1]:
        spec = link_nontrivial_spectrum(X, sigma)
        if spec.size == 0:
            continue
        if np.min(spec) <= KERNEL_RTOL * max(1.0, np.max(np.abs(spec))):
            disconnected.append(sigma)
        if not lows or spec.min() < min(lows):
            lo_cell = sigma
        if not highs or spec.max() > max(highs):
            hi_cell = sigma
        lows.append(float(spec.min()))
        highs.append(float(spec.max()))
    if not lows:
        raise NotApplicableError(f"no (j-1)-cell of X has a link with nontrivial spectrum (j={j})")
    lam, Lam = min(lows), max(highs)
    prof = degree_profile(X, j)
    k, K = prof.k_min, prof.k_max
    lower = (j + 1) * lam - j * K
    upper = (j + 1) * Lam - j * k
    spec = spectrum_report(X, j).nontrivial
    scale = tol * max(1.0, abs(lower), abs(upper))
    holds = bool(np.all(spec >= lower - scale) and np.all(spec <= upper + scale))
    witnesses = {
        "min_link": lo_cell,
        "max_link": hi_cell,
        "spectrum_min": float(spec.min()) if spec.size else None,
        "spectrum_max": float(spec.max()) if spec.size else None,
    }
    return GarlandReport(j, lower, upper, holds, lam, Lam, k, K, spec, disconnected, witnesses)


def edge_adjacency(X: SimplicialComplex) -> np.ndarray:
    """Adjacency operator on 1-forms.

    Directed edges are neighbors when they share an origin or a terminus and
    span a triangle.  Assembled combinatorially; satisfies
    ``laplacian(X, 1) == diag(deg) - edge_adjacency(X)``.
    """
    if X.dim < 1:
        raise DimensionError("edge adjacency needs edges")
    idx = X.cell_index[1]
    A = np.zeros((len(idx), len(idx)))
    if X.dim < 2:
        return A

    def put(e, u, v):
        # f(u, v) in terms of the canonical value
        if u < v:
            A[e, idx[(u, v)]] += 1
        else:
            A[e, idx[(v, u)]] -= 1

    for t in X.cells[2]:
        for a, b in itertools.combinations(t, 2):
            w = next(x for x in t if x != a and x != b)
            e = idx[(a, b)]
            put(e, a, w)  # shares the origin a
            put(e, w, b)  # shares the terminus b
    return A


def disorientation_form(X: SimplicialComplex, dis: Disorientation) -> np.ndarray:
    """The (d-1)-form induced on facets by a disorientation of the top cells."""
    d = dis.dim
    idx = X.cell_index[d - 1]
    f = np.zeros(len(idx))
    for cell, s in zip(X.cells[d], dis.signs):
        for j in range(d + 1):
            face = cell[:j] + cell[j + 1 :]
            f[idx[face]] = s * (-1 if j % 2 else 1)
    return f


def is_colored_regular(X: SimplicialComplex, coloring: VertexColoring) -> bool:
    """Every vertex has no neighbor of its own color and ``k/(c-1)`` of each other color."""
    c = coloring.c
    counts = np.zeros((X.n, c), dtype=int)
    if X.dim >= 1:
        for u, v in X.cells[1]:
            counts[u, coloring.colors[v]] += 1
            counts[v, coloring.colors[u]] += 1
    for v in range(X.n):
        row = counts[v]
        own = coloring.colors[v]
        others = [row[j] for j in range(c) if j != own]
        if row[own] != 0 or len(set(others)) > 1:
            return False
    deg = counts.sum(axis=1)
    return bool(np.all(deg == deg[0]))


def xi_form(X: SimplicialComplex, coloring: VertexColoring) -> np.ndarray:
    """Normalized complex 1-form with value omega**col(v) on v -> w when col(w) = col(v) + 1."""
    if coloring.c != 3:
        raise PreconditionError("xi needs a 3-coloring")
    omega = np.exp(2j * np.pi / 3)
    col = coloring.colors
    f = np.zeros(len(X.cells[1]), dtype=complex)
    for e, (u, v) in enumerate(X.cells[1]):
        if (col[v] - col[u]) % 3 == 1:
            f[e] = omega ** col[u]
        elif (col[u] - col[v]) % 3 == 1:
            f[e] = -(omega ** col[v])
        else:
            raise PreconditionError(f"edge {(u, v)} is monochromatic")
    k0 = degree_profile(X, 0).k
    return f * np.sqrt(2.0 / (k0 * X.n))


@dataclass
class DeviationReport:
    norm_d: float
    mu0: float
    holds_d: bool
    norm_d_prime: object = None
    mu0_noncolored: object = None
    holds_d_prime: object = None


def _opnorm(M):
    if M.size == 0:
        return 0.0
    return float(np.max(np.abs(np.linalg.eigvalsh(M))))


def deviation_norms(X: SimplicialComplex, coloring: VertexColoring = None, tol: float = 1e-9) -> DeviationReport:
    """Norms of ``k0 P_B - lower Laplacian`` and of its tripartite correction.

    ``P_B`` projects onto the coboundaries of 0-forms.  The tripartite
    operator additionally adds ``k0/2`` times the projection onto
    ``{xi, conj(xi)}``; it is computed when ``coloring`` is given or a
    3-coloring with balanced neighbor counts is found.
    """
    if X.dim < 1:
        raise DimensionError("need edges")
    k0 = degree_profile(X, 0).k
    if k0 is None:
        raise PreconditionError("vertex-regularity hypothesis of the Cheeger-type inequality fails")
    rep = spectrum_report(X, 0)
    U = range_basis(coboundary_matrix(X, 1).astype(float))
    PB = U @ U.T
    down = laplacian(X, 1, "down")
    Dop = k0 * PB - down
    mu_all = rep.concentration(include_colored=True)
    nd = _opnorm(Dop)
    out = DeviationReport(nd, mu_all, nd <= mu_all + tol * max(1.0, mu_all))
    if coloring is None and X.dim == 2:
        coloring = find_proper_coloring(X, 3)
    if coloring is not None and coloring.c == 3 and is_colored_regular(X, coloring):
        xi = xi_form(X, coloring)
        Q = np.column_stack([xi, xi.conj()])
        Pxi = Q @ Q.conj().T
        Dp = k0 * PB + (k0 / 2) * Pxi - down
        ndp = float(np.max(np.abs(np.linalg.eigvalsh((Dp + Dp.conj().T) / 2))))
        out.norm_d_prime = ndp
        out.mu0_noncolored = rep.mu
        out.holds_d_prime = ndp <= rep.mu + tol * max(1.0, rep.mu)
    return out
