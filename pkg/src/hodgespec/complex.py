"""Finite simplicial complexes of dimension at most 3.

Cells are stored on their canonical orientation: strictly increasing vertex
tuples, sorted lexicographically within each dimension.  Every sign
convention elsewhere in the package (boundary matrices, indicator forms,
disorientations) is derived from permutation parity against this ordering.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    DimensionError,
    MalformedEdgeError,
    MalformedFaceError,
    MissingCellError,
    OutOfRangeError,
)

MAX_DIM = 3

Cell = tuple  # strictly increasing tuple of vertex ids


class SimplicialComplex:
    """Downward-closed family of cells on the vertex set ``{0, ..., n-1}``.

    Use :func:`from_maximal_faces` or :func:`clique_complex` to build one;
    the constructor trusts its input and only checks the invariants.
    """

    __slots__ = ("n", "cells", "cell_index")

    def __init__(self, n: int, cells: Sequence[Iterable[Cell]]):
        self.n = int(n)
        cleaned = [sorted(set(tuple(c) for c in level)) for level in cells]
        while cleaned and not cleaned[-1]:
            cleaned.pop()
        self.cells = tuple(tuple(level) for level in cleaned)
        self.cell_index = tuple({c: k for k, c in enumerate(level)} for level in self.cells)
        self._check()

    def _check(self):
        if self.n == 0:
            if self.cells:
                raise MalformedFaceError("cells present on an empty vertex set")
            return
        if self.cells[0] != tuple((v,) for v in range(self.n)):
            raise MalformedFaceError("cells[0] must list every vertex exactly once")
        if len(self.cells) - 1 > MAX_DIM:
            raise DimensionError(f"dimension {len(self.cells) - 1} exceeds cap {MAX_DIM}")
        for i in range(1, len(self.cells)):
            lower = self.cell_index[i - 1]
            for c in self.cells[i]:
                if len(c) != i + 1 or any(a >= b for a, b in zip(c, c[1:])):
                    raise MalformedFaceError(f"cell {c} is not a strictly increasing {i}-cell")
                for face in itertools.combinations(c, i):
                    if face not in lower:
                        raise MalformedFaceError(f"face {face} of {c} is missing")

    @property
    def dim(self) -> int:
        return len(self.cells) - 1

    @property
    def f_vector(self) -> tuple:
        return tuple(len(level) for level in self.cells)

    def num_cells(self, i: int) -> int:
        if i == -1:
            return 1
        if 0 <= i <= self.dim:
            return len(self.cells[i])
        return 0

    def __contains__(self, cell) -> bool:
        cell = tuple(sorted(cell))
        i = len(cell) - 1
        if i < 0:
            return True
        return i <= self.dim and cell in self.cell_index[i]

    def index(self, cell) -> int:
        cell = tuple(sorted(cell))
        try:
            return self.cell_index[len(cell) - 1][cell]
        except (IndexError, KeyError):
            raise MissingCellError(f"cell {cell} is not in the complex") from None

    def maximal_faces(self) -> list:
        """Cells not contained in any higher cell, isolated vertices excluded."""
        out = []
        for i in range(1, self.dim + 1):
            covered = set()
            if i < self.dim:
                for c in self.cells[i + 1]:
                    covered.update(itertools.combinations(c, i + 1))
            out.extend(c for c in self.cells[i] if c not in covered)
        return sorted(out)

    def skeleton(self, k: int) -> "SimplicialComplex":
        return SimplicialComplex(self.n, self.cells[: k + 1])

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.n == other.n and self.cells == other.cells

    def __hash__(self):
        return hash((self.n, self.cells))

    def __repr__(self):
        return f"SimplicialComplex(n={self.n}, f_vector={self.f_vector})"


def from_maximal_faces(faces: Iterable[Sequence[int]], n: int) -> SimplicialComplex:
    """Smallest complex on ``n`` vertices containing every face in ``faces``."""
    if n < 1:
        raise MalformedFaceError("a complex needs at least one vertex")
    levels = [set() for _ in range(MAX_DIM + 1)]
    for raw in faces:
        face = tuple(int(v) for v in raw)
        if not face:
            raise MalformedFaceError("empty face")
        if len(face) > MAX_DIM + 1:
            raise DimensionError(f"face {face} has dimension {len(face) - 1} > {MAX_DIM}")
        if len(set(face)) != len(face):
            raise MalformedFaceError(f"face {face} repeats a vertex")
        for v in face:
            if not 0 <= v < n:
                raise OutOfRangeError(f"vertex {v} out of range for n={n}")
        face = tuple(sorted(face))
        for k in range(1, len(face) + 1):
            levels[k - 1].update(itertools.combinations(face, k))
    levels[0] = {(v,) for v in range(n)}
    return SimplicialComplex(n, levels)


def clique_complex(edges: Iterable[Sequence[int]], n: int, max_dim: int = 2) -> SimplicialComplex:
    """Flag complex of a simple graph: every (k+1)-clique with k <= max_dim is a cell."""
    if not 1 <= max_dim <= MAX_DIM:
        raise DimensionError(f"max_dim must lie in [1, {MAX_DIM}]")
    if n < 1:
        raise MalformedFaceError("a complex needs at least one vertex")
    adj = [set() for _ in range(n)]
    for raw in edges:
        u, v = (int(x) for x in raw)
        if u == v:
            raise MalformedEdgeError(f"self-loop at vertex {u}")
        for x in (u, v):
            if not 0 <= x < n:
                raise OutOfRangeError(f"vertex {x} out of range for n={n}")
        adj[u].add(v)
        adj[v].add(u)
    levels = [[(v,) for v in range(n)]]
    for _ in range(max_dim):
        nxt = []
        for c in levels[-1]:
            common = set.intersection(*(adj[v] for v in c))
            nxt.extend(c + (w,) for w in sorted(common) if w > c[-1])
        if not nxt:
            break
        levels.append(nxt)
    return SimplicialComplex(n, levels)


def link(X: SimplicialComplex, sigma: Sequence[int]):
    """Link of ``sigma`` with vertices relabeled to ``0..m-1``.

    Returns ``(complex, mapping)`` where ``mapping[new_id]`` is the original
    vertex id.  The link of the empty cell is ``X`` itself.
    """
    sigma = tuple(sorted(int(v) for v in sigma))
    if sigma not in X:
        raise MissingCellError(f"cell {sigma} is not in the complex")
    s = len(sigma)
    sset = set(sigma)
    found = []
    for i in range(s, X.dim + 1):
        level = []
        for c in X.cells[i]:
            if sset.issubset(c):
                level.append(tuple(v for v in c if v not in sset))
        if not level:
            break
        found.append(level)
    mapping = tuple(sorted(v for (v,) in found[0])) if found else ()
    relabel = {v: k for k, v in enumerate(mapping)}
    cells = [[tuple(relabel[v] for v in c) for c in level] for level in found]
    return SimplicialComplex(len(mapping), cells), mapping


@dataclass(frozen=True)
class DegreeProfile:
    i: int
    degrees: tuple  # aligned with X.cells[i]
    k_min: int
    k_max: int

    @property
    def regular(self) -> bool:
        return self.k_min == self.k_max

    @property
    def k(self):
        """Common degree, or ``None`` when the cells are not regular."""
        return self.k_min if self.regular else None


def degree_profile(X: SimplicialComplex, i: int) -> DegreeProfile:
    """Degree (number of containing (i+1)-cells) of every i-cell."""
    if not 0 <= i <= X.dim:
        raise DimensionError(f"i={i} outside [0, {X.dim}]")
    deg = [0] * len(X.cells[i])
    if i < X.dim:
        idx = X.cell_index[i]
        for c in X.cells[i + 1]:
            for face in itertools.combinations(c, i + 1):
                deg[idx[face]] += 1
    return DegreeProfile(i, tuple(deg), min(deg), max(deg))


@dataclass(frozen=True)
class VertexColoring:
    colors: tuple
    c: int

    def blocks(self) -> list:
        return [frozenset(v for v, col in enumerate(self.colors) if col == k) for k in range(self.c)]


def _backtrack_color(n, c, allowed):
    """Lexicographically first assignment ``colors[v] in range(c)`` with
    ``allowed(v, colors)`` true at every step; ``None`` if impossible.

    Colors are interchangeable, so vertex ``v`` only tries colors up to one
    past the largest color already used (this keeps the first witness
    lexicographically minimal).
    """
    colors = [-1] * n
    choice = [0] * n
    highest = [-1] * (n + 1)  # highest[v] = max color among vertices < v
    v = 0
    while 0 <= v < n:
        col = choice[v]
        placed = False
        while col < min(c, highest[v] + 2):
            colors[v] = col
            if allowed(v, colors):
                placed = True
                break
            col += 1
        if placed:
            choice[v] = col + 1
            highest[v + 1] = max(highest[v], col)
            v += 1
            if v < n:
                choice[v] = 0
        else:
            colors[v] = -1
            v -= 1
    if v < 0:
        return None
    return tuple(colors)


def find_proper_coloring(X: SimplicialComplex, c: int):
    """A coloring with ``c`` colors under which no top-dimensional cell
    repeats a color, or ``None``.  Deterministic (lexicographically first)."""
    if c < 1:
        raise ValueError("c must be positive")
    conflicts = [set() for _ in range(X.n)]
    if X.dim >= 1:
        for cell in X.cells[X.dim]:
            for u, w in itertools.combinations(cell, 2):
                conflicts[w].add(u)

    def allowed(v, colors):
        return all(colors[u] != colors[v] for u in conflicts[v])

    colors = _backtrack_color(X.n, c, allowed)
    return None if colors is None else VertexColoring(colors, c)


@dataclass(frozen=True)
class Disorientation:
    """Orientation sign (relative to canonical) of every top cell."""

    dim: int
    signs: tuple  # aligned with X.cells[dim]

    def as_dict(self, X: SimplicialComplex) -> dict:
        return dict(zip(X.cells[self.dim], self.signs))


def boundary_sign(cell: Cell, face: Cell) -> int:
    """Sign of ``face`` in the boundary of ``cell``: (-1)^(position of the dropped vertex)."""
    for j, v in enumerate(cell):
        if v not in face:
            return -1 if j % 2 else 1
    raise ValueError(f"{face} is not a facet of {cell}")


def find_disorientation(X: SimplicialComplex):
    """Orient the top cells so that any two sharing a facet induce the same
    orientation on it; ``None`` when the parity constraints conflict."""
    d = X.dim
    if d < 1:
        raise DimensionError("disorientations need cells of dimension >= 1")
    top = X.cells[d]
    parent = list(range(len(top)))
    parity = [0] * len(top)  # sign relative to parent: 0 -> same, 1 -> flipped

    def find(a):
        path = []
        while parent[a] != a:
            path.append(a)
            a = parent[a]
        root = a
        acc = 0
        for node in reversed(path):
            acc ^= parity[node]
            parity[node] = acc
            parent[node] = root
        return root

    incident = {}
    for t, cell in enumerate(top):
        for face in itertools.combinations(cell, d):
            incident.setdefault(face, []).append((t, boundary_sign(cell, face)))
    for face in sorted(incident):
        items = incident[face]
        t0, e0 = items[0]
        for t1, e1 in items[1:]:
            # need s0*e0 == s1*e1, i.e. s0*s1 == e0*e1
            want = 0 if e0 == e1 else 1
            r0, r1 = find(t0), find(t1)
            if r0 == r1:
                if parity[t0] ^ parity[t1] != want:
                    return None
            else:
                lo, hi = min(r0, r1), max(r0, r1)
                parent[hi] = lo
                parity[hi] = parity[t0] ^ parity[t1] ^ want
    signs = []
    for t in range(len(top)):
        find(t)
        signs.append(-1 if parity[t] else 1)
    return Disorientation(d, tuple(signs))
