"""Test complexes: fixed named examples and seeded random families.

Random families draw from ``numpy.random.default_rng(seed)`` (PCG64), so a
(kind, parameters, seed) triple always yields the same complex.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

import numpy as np

from .complex import SimplicialComplex, clique_complex, from_maximal_faces
from .errors import InvalidParamsError

RNG_ALGORITHM = "numpy.random.PCG64"


def complete_tripartite(m: int) -> SimplicialComplex:
    """All m^3 rainbow triangles; vertex v lies in block v % 3."""
    if m < 1:
        raise InvalidParamsError("m must be >= 1")
    blocks = [range(k, 3 * m, 3) for k in range(3)]
    return from_maximal_faces(itertools.product(*blocks), 3 * m)


def linial_meshulam(n: int, p: float, seed: int) -> SimplicialComplex:
    """Complete graph on n vertices plus each triangle independently with probability p."""
    _check_p(p)
    rng = np.random.default_rng(seed)
    tris = list(itertools.combinations(range(n), 3))
    keep = rng.random(len(tris)) < p
    edges = itertools.combinations(range(n), 2)
    return from_maximal_faces([*edges, *(t for t, k in zip(tris, keep) if k)], n)


def clique_gnp(n: int, p: float, seed: int, max_dim: int = 2) -> SimplicialComplex:
    """Flag complex of an Erdos-Renyi graph G(n, p)."""
    _check_p(p)
    rng = np.random.default_rng(seed)
    pairs = list(itertools.combinations(range(n), 2))
    keep = rng.random(len(pairs)) < p
    return clique_complex([e for e, k in zip(pairs, keep) if k], n, max_dim=max_dim)


def latin_tripartite(m: int, r: int, seed: int) -> SimplicialComplex:
    """Tripartite complex on 3m vertices whose edges all lie in exactly r triangles.

    Triangles are (x_i, y_j, z_{L(i,j)}) for r Latin squares L over Z_m (or
    Z_2 x Z_2 when m = 4, chosen at random) that never agree at a cell, with
    random relabelings inside each block.  r = m gives the complete
    tripartite complex.
    """
    if not 1 <= r <= m:
        raise InvalidParamsError("need 1 <= r <= m")
    rng = np.random.default_rng(seed)
    shifts = rng.choice(m, size=r, replace=False)
    use_xor = m == 4 and bool(rng.integers(2))
    perms = [rng.permutation(m) for _ in range(3)]
    faces = []
    for s in shifts:
        for i in range(m):
            for j in range(m):
                k = (i ^ j ^ int(s)) if use_xor else (i + j + int(s)) % m
                faces.append((3 * perms[0][i], 3 * perms[1][j] + 1, 3 * perms[2][k] + 2))
    return from_maximal_faces(faces, 3 * m)


def _check_p(p):
    if not 0 <= p <= 1:
        raise InvalidParamsError(f"probability {p} outside [0, 1]")


def _csaszar():
    faces = []
    for i in range(7):
        faces.append(((i) % 7, (i + 1) % 7, (i + 3) % 7))
        faces.append(((i) % 7, (i + 2) % 7, (i + 3) % 7))
    return from_maximal_faces(faces, 7)


NAMED = {
    "octahedron": lambda: complete_tripartite(2),
    "tetrahedron-boundary": lambda: from_maximal_faces(itertools.combinations(range(4), 3), 4),
    "pentachoron-boundary": lambda: from_maximal_faces(itertools.combinations(range(5), 4), 5),
    "hollow-triangle": lambda: from_maximal_faces([(0, 1), (0, 2), (1, 2)], 3),
    "single-triangle": lambda: from_maximal_faces([(0, 1, 2)], 3),
    "csaszar-torus": _csaszar,
}


def named(name: str) -> SimplicialComplex:
    try:
        return NAMED[name]()
    except KeyError:
        raise InvalidParamsError(f"unknown named complex {name!r}; choose from {sorted(NAMED)}") from None


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    params: dict = field(default_factory=dict)

    def label(self) -> str:
        if self.kind == "named":
            return self.params["id"]
        args = " ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.kind} {args}"

    def to_json(self) -> dict:
        out = {"kind": self.kind, **self.params}
        if "seed" in self.params:
            out["rng"] = RNG_ALGORITHM
        return out


_KINDS = {
    "complete-tripartite": (complete_tripartite, {"m": int}),
    "linial-meshulam": (linial_meshulam, {"n": int, "p": float, "seed": int}),
    "clique-gnp": (clique_gnp, {"n": int, "p": float, "seed": int}),
    "latin-tripartite": (latin_tripartite, {"m": int, "r": int, "seed": int}),
}


def generate(spec: GeneratorSpec) -> SimplicialComplex:
    if spec.kind == "named":
        return named(spec.params["id"])
    try:
        fn, types = _KINDS[spec.kind]
    except KeyError:
        raise InvalidParamsError(f"unknown generator {spec.kind!r}") from None
    missing = set(types) - set(spec.params)
    if missing:
        raise InvalidParamsError(f"{spec.kind} needs {sorted(missing)}")
    return fn(**{k: types[k](spec.params[k]) for k in types})


def parse_spec(text: str, seed: int = None) -> GeneratorSpec:
    """Read ``"octahedron"``, ``"complete-tripartite m=3"`` or ``"linial-meshulam n=8 p=0.5 seed=1"``.

    A missing ``seed`` for a random family is taken from ``seed``.
    """
    words = text.split()
    if not words:
        raise InvalidParamsError("empty generator spec")
    head, rest = words[0], words[1:]
    if head in NAMED and not rest:
        return GeneratorSpec("named", {"id": head})
    if head == "named" and len(rest) == 1:
        named(rest[0])
        return GeneratorSpec("named", {"id": rest[0]})
    if head not in _KINDS:
        raise InvalidParamsError(f"unknown generator {head!r}")
    types = _KINDS[head][1]
    params = {}
    for w in rest:
        m = re.fullmatch(r"(\w+)=(\S+)", w)
        if not m or m.group(1) not in types:
            raise InvalidParamsError(f"cannot read generator option {w!r} for {head}")
        try:
            params[m.group(1)] = types[m.group(1)](m.group(2))
        except ValueError:
            raise InvalidParamsError(f"bad value in {w!r}") from None
    if "seed" in types and "seed" not in params and seed is not None:
        params["seed"] = int(seed)
    return GeneratorSpec(head, params)
