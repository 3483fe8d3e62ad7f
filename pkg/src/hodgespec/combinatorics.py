"""Exact counts of rainbow cells and of the galleries that chain them together.

Vertex sets are passed as any iterables of ints; they are normalized to
frozensets.  Galleries are ordered: a j-gallery through ``B_0, ..., B_l`` is
a sequence of j-cells whose i-th cell has one vertex in each of
``B_i, ..., B_{i+j}`` and shares its last j vertices with the first j
vertices of the next cell.
"""

from __future__ import annotations

import itertools
from collections import defaultdict

import numpy as np

from .complex import SimplicialComplex, VertexColoring, degree_profile, find_proper_coloring
from .errors import DimensionError, OutOfRangeError, PreconditionError
from .hodge import edge_adjacency


def _normalize(X: SimplicialComplex, sets) -> list:
    out = []
    for s in sets:
        fs = frozenset(int(v) for v in s)
        bad = [v for v in fs if not 0 <= v < X.n]
        if bad:
            raise OutOfRangeError(f"vertex {min(bad)} out of range for n={X.n}")
        out.append(fs)
    return out


def _require_disjoint(sets, what="sets"):
    for (i, a), (j, b) in itertools.combinations(enumerate(sets), 2):
        common = a & b
        if common:
            raise PreconditionError(f"{what} {i} and {j} overlap in vertex {min(common)}")


def _membership(sets) -> dict:
    return {v: k for k, s in enumerate(sets) for v in s}


def _rainbow_ordered(X: SimplicialComplex, sets, j: int) -> list:
    """Rainbow j-cells, each returned with vertices ordered by the set they lie in."""
    where = _membership(sets)
    out = []
    if j > X.dim:
        return out
    for cell in X.cells[j]:
        slots = [None] * (j + 1)
        for v in cell:
            k = where.get(v)
            if k is None or slots[k] is not None:
                break
            slots[k] = v
        else:
            out.append(tuple(slots))
    return out


def count_rainbow(X: SimplicialComplex, sets, j: int) -> int:
    """Number of j-cells with exactly one vertex in each of the ``j + 1`` sets."""
    sets = _normalize(X, sets)
    if len(sets) != j + 1:
        raise DimensionError(f"need {j + 1} sets for j={j}, got {len(sets)}")
    _require_disjoint(sets)
    return len(_rainbow_ordered(X, sets, j))


def neighbors(X: SimplicialComplex) -> list:
    adj = [set() for _ in range(X.n)]
    if X.dim >= 1:
        for u, v in X.cells[1]:
            adj[u].add(v)
            adj[v].add(u)
    return adj


def count_paths(X: SimplicialComplex, S, T, R) -> int:
    """Ordered walks s - t - r along edges with s in S, t in T, r in R (s = r allowed)."""
    S, T, R = _normalize(X, (S, T, R))
    adj = neighbors(X)
    return sum(len(adj[t] & S) * len(adj[t] & R) for t in T)


def count_galleries(X: SimplicialComplex, j: int, sets) -> int:
    """Number of j-galleries routed through ``sets`` (consecutive cells distinct)."""
    sets = _normalize(X, sets)
    if j < 1:
        raise DimensionError("galleries need j >= 1")
    if len(sets) < j + 1:
        raise DimensionError(f"need at least {j + 1} sets for j={j}")
    for i in range(len(sets) - j):
        _require_disjoint(sets[i : i + j + 1], what=f"window {i}: sets")
    if j > X.dim:
        return 0
    prev = {o: 1 for o in _rainbow_ordered(X, sets[0 : j + 1], j)}
    for i in range(1, len(sets) - j):
        by_tail = defaultdict(int)
        for o, c in prev.items():
            by_tail[o[1:]] += c
        cur = {}
        for o in _rainbow_ordered(X, sets[i : i + j + 1], j):
            # the same cell, read in the previous window, would repeat itself
            c = by_tail.get(o[:-1], 0) - prev.get((o[-1],) + o[:-1], 0)
            if c:
                cur[o] = c
        prev = cur
    return sum(prev.values())


def indicator_form(X: SimplicialComplex, A, B) -> np.ndarray:
    """1-form equal to +1 on edges directed from A to B (and -1 on the reverse)."""
    A, B = _normalize(X, (A, B))
    _require_disjoint((A, B))
    if X.dim < 1:
        return np.zeros(0)
    f = np.zeros(len(X.cells[1]))
    for e, (u, v) in enumerate(X.cells[1]):
        if u in A and v in B:
            f[e] = 1.0
        elif u in B and v in A:
            f[e] = -1.0
    return f


def check_gallery_placement(X: SimplicialComplex, A, B, C, D, coloring: VertexColoring = None) -> VertexColoring:
    """Validate that A, B, C, D are disjoint and that A u D, B, C lie in three different blocks."""
    A, B, C, D = sets = _normalize(X, (A, B, C, D))
    _require_disjoint(sets)
    if coloring is None:
        coloring = find_proper_coloring(X, 3)
        if coloring is None:
            raise PreconditionError("X is not tripartite")
    col = coloring.colors

    def block(S, name):
        found = {col[v] for v in S}
        if len(found) > 1:
            raise PreconditionError(f"set {name} meets several blocks of the 3-partition")
        return found.pop() if found else None

    ad, b, c = block(A | D, "A u D"), block(B, "B"), block(C, "C")
    used = [x for x in (ad, b, c) if x is not None]
    if len(used) != len(set(used)):
        raise PreconditionError("A u D, B and C must lie in different blocks of the 3-partition")
    adj = neighbors(X)
    if any(adj[a] & D for a in A):
        raise PreconditionError("an edge joins A and D")
    return coloring


def spectral_gallery_count(X: SimplicialComplex, A, B, C, D, coloring: VertexColoring = None) -> float:
    """Gallery count from the edge adjacency: <(Adj^2 + k1 Adj) 1_AB, 1_CD>.

    Equals the number of 2-galleries through (A, B, C, D) on edge-regular
    tripartite complexes when A u D, B, C sit in three different blocks.
    """
    if X.dim != 2:
        raise DimensionError("needs a triangle complex")
    k1 = degree_profile(X, 1).k
    if k1 is None:
        raise PreconditionError("X is not edge-regular")
    check_gallery_placement(X, A, B, C, D, coloring)
    Adj = edge_adjacency(X)
    f = indicator_form(X, A, B)
    g = indicator_form(X, C, D)
    Af = Adj @ f
    return float(g @ (Adj @ Af + k1 * Af))


def _nonempty_subsets(block):
    block = sorted(block)
    for r in range(1, len(block) + 1):
        yield from (frozenset(s) for s in itertools.combinations(block, r))


def legal_quadruples(coloring: VertexColoring):
    """Every (A, B, C, D) of nonempty sets with A u D, B, C in three different blocks, A and D disjoint."""
    blocks = [sorted(b) for b in coloring.blocks()]
    for ad, b, c in itertools.permutations(range(coloring.c), 3):
        home = blocks[ad]
        for labels in itertools.product((0, 1, 2), repeat=len(home)):
            A = frozenset(v for v, t in zip(home, labels) if t == 1)
            D = frozenset(v for v, t in zip(home, labels) if t == 2)
            if not A or not D:
                continue
            for B in _nonempty_subsets(blocks[b]):
                for C in _nonempty_subsets(blocks[c]):
                    yield A, B, C, D


def random_legal_quadruple(coloring: VertexColoring, rng: np.random.Generator):
    """A uniformly placed legal (A, B, C, D): random blocks, random nonempty subsets."""
    blocks = [np.array(sorted(b)) for b in coloring.blocks()]
    roomy = [k for k in range(coloring.c) if len(blocks[k]) >= 2]
    if coloring.c < 3 or not roomy:
        raise PreconditionError("no block has the two vertices needed to hold A and D")
    ad = roomy[rng.integers(len(roomy))]
    b, c = rng.permutation([k for k in range(coloring.c) if k != ad])[:2]
    home = blocks[ad]
    while True:
        labels = rng.integers(0, 3, size=len(home))
        if (labels == 1).any() and (labels == 2).any():
            break

    def subset(block):
        while True:
            mask = rng.random(len(block)) < 0.5
            if mask.any():
                return frozenset(int(v) for v in block[mask])

    A = frozenset(int(v) for v in home[labels == 1])
    D = frozenset(int(v) for v in home[labels == 2])
    return A, subset(blocks[b]), subset(blocks[c]), D
