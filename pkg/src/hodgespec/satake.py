"""Laplace operators of PGL_3 principal-series representations.

For Satake parameters ``z = (z1, z2, z3)`` with ``z1 z2 z3 = 1`` the
Iwahori-fixed vectors of the induced representation carry small explicit
matrices for the boundary maps between vertex-, edge- and triangle-spherical
vectors.  Their eigenvalues give the vertex eigenvalue
``lambda_K = k0 - q * ztilde`` and the edge eigenvalues
``3 k1 / 2 +- sqrt((3 k1 / 2)**2 - lambda_K)``; the representation type of
``z`` decides which of them survive in a Ramanujan quotient.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

import numpy as np

from .errors import InvalidParamsError

TORUS_TOL = 1e-9
CLASSIFY_TOL = 1e-9
OMEGA = cmath.exp(2j * math.pi / 3)


@dataclass(frozen=True)
class SatakeParams:
    z1: complex
    z2: complex
    z3: complex
    q: int

    def __post_init__(self):
        if int(self.q) != self.q or self.q < 2:
            raise InvalidParamsError(f"q must be an integer >= 2, got {self.q}")
        if any(z == 0 for z in self.z):
            raise InvalidParamsError("Satake parameters must be nonzero")
        if abs(self.z1 * self.z2 * self.z3 - 1) > TORUS_TOL:
            raise InvalidParamsError(f"z1*z2*z3 = {self.z1 * self.z2 * self.z3} differs from 1")

    @classmethod
    def from_two(cls, z1, z2, q):
        """Fill in z3 = 1/(z1 z2)."""
        return cls(complex(z1), complex(z2), 1 / (complex(z1) * complex(z2)), q)

    @property
    def z(self):
        return (complex(self.z1), complex(self.z2), complex(self.z3))

    @property
    def ztilde(self) -> complex:
        return sum(z + 1 / z for z in self.z)

    @property
    def k0(self) -> int:
        return 2 * (self.q**2 + self.q + 1)

    @property
    def k1(self) -> int:
        return self.q + 1


def build_matrices(p: SatakeParams) -> dict:
    """The eight operator matrices, in the bases (K), (E1, E2, E3), (T1, T2)."""
    q = p.q
    z1, z2, z3 = p.z
    d1 = np.array([[q * z3 - 1], [z2 - 1], [z1 / q - 1]], dtype=complex)
    b1 = np.array([[q / z3 - 1, q / z2 - q, q / z1 - q * q]], dtype=complex)
    d2 = np.array([[1, q * z3, q * z2 * z3], [1, z1 * z3, q * z3]], dtype=complex)
    b2 = np.array([[1, q], [1 / z3, z2], [z1 / q, 1 / z3]], dtype=complex)
    up0 = np.array([[p.k0 - q * p.ztilde]], dtype=complex)
    down1 = np.array(
        [
            [
                q * q - q * z3 - q / z3 + 1,
                -q * q * z3 + q * q * z3 / z2 + q - q / z2,
                -(q**3) * z3 + q * q * z3 / z1 + q * q - q / z1,
            ],
            [
                q * z2 / z3 - z2 - q / z3 + 1,
                -q * z2 + 2 * q - q / z2,
                -q * q * z2 + q * q + q * z2 / z1 - q / z1,
            ],
            [
                -q / z3 - z1 / q + z1 / z3 + 1,
                q - z1 - q / z2 + z1 / z2,
                q * q - q * z1 - q / z1 + 1,
            ],
        ],
        dtype=complex,
    )
    up1 = np.array(
        [
            [q + 1, q / z2 + q * z3, q * q * z3 + q / z1],
            [z2 + 1 / z3, q + 1, q / z1 + q * z2],
            [z1 / q + 1 / z3, 1 / z2 + z1, q + 1],
        ],
        dtype=complex,
    )
    down2 = np.array(
        [[q + 2, q / z1 + q * z2 + q], [1 / z2 + z1 + 1, 2 * q + 1]],
        dtype=complex,
    )
    return {
        "delta1": d1,
        "partial1": b1,
        "delta2": d2,
        "partial2": b2,
        "up0": up0,
        "down1": down1,
        "up1": up1,
        "down2": down2,
    }


@dataclass(frozen=True)
class ClosedForm:
    lambdaK: complex
    lambdaE_zero: float
    lambdaE_plus: complex
    lambdaE_minus: complex
    nonreal: bool


def closed_form_eigenvalues(p: SatakeParams) -> ClosedForm:
    lk = p.k0 - p.q * p.ztilde
    h = 1.5 * p.k1
    root = cmath.sqrt(h * h - lk)
    plus, minus = h + root, h - root
    tol = 1e-12 * max(1.0, abs(h))
    nonreal = abs(plus.imag) > tol or abs(minus.imag) > tol
    return ClosedForm(lk, 0.0, plus, minus, nonreal)


def edge_eigenvalues_from_vertex(lam, k1):
    """The two edge eigenvalues generated by a vertex eigenvalue ``lam``."""
    h = 1.5 * k1
    root = cmath.sqrt(h * h - lam)
    return h + root, h - root


# --- representation types -------------------------------------------------

TYPE_NAMES = {
    "a": "PrincipalTempered",
    "b": "Complementary",
    "c": "EdgeTempered",
    "d": "EdgeNonTempered",
    "e": "Trivial",
    "f": "Color",
    "Stn": "Steinberg",
    "outside": "OutsideUnitaryList",
}


@dataclass(frozen=True)
class RepType:
    """Representation type; ``param`` carries c (types b-d), omega (f) or a (b)."""

    kind: str
    c: complex = None
    a: float = None
    omega: complex = None

    @property
    def name(self) -> str:
        return TYPE_NAMES[self.kind]

    def to_json(self) -> dict:
        out = {"type": self.kind, "name": self.name}
        if self.c is not None:
            out["c"] = [_r(self.c.real), _r(self.c.imag)]
        if self.a is not None:
            out["a"] = _r(self.a)
        if self.omega is not None:
            out["omega"] = [_r(self.omega.real), _r(self.omega.imag)]
        return out


def _r(x, digits=9):
    x = round(float(x), digits)
    return 0.0 if x == 0 else x


def _close(u, v, tol=CLASSIFY_TOL):
    return abs(u - v) <= tol * max(1.0, abs(v))


def _unit(c, tol=CLASSIFY_TOL):
    return abs(abs(c) - 1) <= tol


def _match_point(z, target):
    return all(_close(a, b) for a, b in zip(z, target))


def _match_c(z, q):
    s = math.sqrt(q)
    c = z[0] * s
    if _unit(c) and _close(z[1], c * s) and _close(z[2], c**-2):
        return c
    return None


def _match_d(z, q):
    s = math.sqrt(q)
    c = z[0] / s
    if _unit(c) and _close(z[1], c / s) and _close(z[2], c**-2):
        return c
    return None


def _match_b(z, q):
    for w in permutations(z):
        if not _unit(w[0]) or _unit(w[1]):
            continue
        a = math.log(abs(w[1])) / math.log(q)
        if not CLASSIFY_TOL < a < 0.5 - CLASSIFY_TOL:
            continue
        c = w[1] / q**a
        if _close(w[2], c * q**-a) and _close(w[0], c**-2):
            return c, a
    return None


def classify_type(p: SatakeParams) -> RepType:
    """Unitary type of the Iwahori-spherical constituent at ``p``.

    Precedence: e > f > Steinberg > c > d > a > b.  The point types and the
    families (c), (d) are matched in their displayed coordinate order (the
    order is what tells the trivial representation from the Steinberg one,
    and (c) from (d)); (a) and (b) are matched up to permutation.
    """
    q, z = p.q, p.z
    if _match_point(z, (q, 1, 1 / q)):
        return RepType("e")
    for w in (OMEGA, OMEGA.conjugate()):
        if _match_point(z, (w * q, w, w / q)):
            return RepType("f", omega=w)
    if _match_point(z, (1 / q, 1, q)):
        return RepType("Stn")
    c = _match_c(z, q)
    if c is not None:
        return RepType("c", c=c)
    c = _match_d(z, q)
    if c is not None:
        return RepType("d", c=c)
    if all(_unit(x) for x in z):
        return RepType("a")
    b = _match_b(z, q)
    if b is not None:
        return RepType("b", c=b[0], a=b[1])
    return RepType("outside")


def pattern_params(kind: str, q: int, c=1.0, a=0.25, theta=(0.0, 0.0), omega_sign=1) -> SatakeParams:
    """Representative Satake parameters of a given type."""
    s = math.sqrt(q)
    c = complex(c)
    if kind == "a":
        z1, z2 = cmath.exp(1j * theta[0]), cmath.exp(1j * theta[1])
        return SatakeParams.from_two(z1, z2, q)
    if kind == "b":
        return SatakeParams(c**-2, c * q**a, c * q**-a, q)
    if kind == "c":
        return SatakeParams(c / s, c * s, c**-2, q)
    if kind == "d":
        return SatakeParams(c * s, c / s, c**-2, q)
    if kind == "e":
        return SatakeParams(q, 1, 1 / q, q)
    if kind == "f":
        w = OMEGA if omega_sign > 0 else OMEGA.conjugate()
        return SatakeParams(w * q, w, w / q, q)
    if kind == "Stn":
        return SatakeParams(1 / q, 1, q, q)
    raise InvalidParamsError(f"unknown type {kind!r}")


_ALIASES = {
    "trivial": "e",
    "type-e": "e",
    "color": "f",
    "type-f": "f",
    "steinberg": "Stn",
    "stn": "Stn",
    "type-a": "a",
    "type-b": "b",
    "type-c": "c",
    "type-d": "d",
}


def parse_complex_number(text: str) -> complex:
    t = text.strip().replace(" ", "").replace("i", "j")
    try:
        return complex(t)
    except ValueError:
        raise InvalidParamsError(f"cannot read {text!r} as a complex number") from None


def parse_pattern(text: str, q=None) -> SatakeParams:
    """Read shortcuts such as ``"trivial q=3"`` or ``"type-c c=0.6+0.8i q=4"``.

    Recognized keys: ``q``, ``c``, ``a`` (type b exponent), ``t1``/``t2``
    (type a phases in radians), ``w`` (type f: ``+`` or ``-``).
    """
    words = text.split()
    if not words:
        raise InvalidParamsError("empty pattern")
    kind = _ALIASES.get(words[0].lower())
    if kind is None:
        raise InvalidParamsError(f"unknown pattern {words[0]!r}")
    opts = {}
    for w in words[1:]:
        m = re.fullmatch(r"(\w+)=(\S+)", w)
        if not m:
            raise InvalidParamsError(f"cannot read pattern option {w!r}")
        opts[m.group(1)] = m.group(2)
    if "q" in opts:
        q = opts["q"]
    if q is None:
        raise InvalidParamsError("pattern needs q (in the pattern or via --q)")
    try:
        q = int(q)
        a = float(opts.get("a", 0.25))
        theta = (float(opts.get("t1", 0.0)), float(opts.get("t2", 0.0)))
    except ValueError as exc:
        raise InvalidParamsError(str(exc)) from None
    c = parse_complex_number(opts.get("c", "1"))
    sign = -1 if opts.get("w", "+") in ("-", "-1") else 1
    return pattern_params(kind, q, c=c, a=a, theta=theta, omega_sign=sign)


def type_eigenvalues(p: SatakeParams, rep: RepType = None) -> dict:
    """Eigenvalues carried by the spherical vectors of the unitary constituent.

    Types (a), (b): lambda_K and both edge values.  (c): only the edge value
    k1 - 2 sqrt(q) Re(c).  (d): lambda_K, 0 and 2 k1 + 2 sqrt(q) Re(c).
    (e): 0 and 3 k1.  (f): 3 k0 / 2 and 0.  Steinberg: no vertex or edge values.
    """
    rep = rep or classify_type(p)
    cf = closed_form_eigenvalues(p)
    s = math.sqrt(p.q)
    if rep.kind in ("a", "b", "outside"):
        return {"vertex": [cf.lambdaK], "edge": [0.0, cf.lambdaE_plus, cf.lambdaE_minus]}
    if rep.kind == "c":
        return {"vertex": [], "edge": [p.k1 - 2 * s * rep.c.real]}
    if rep.kind == "d":
        return {"vertex": [cf.lambdaK], "edge": [0.0, 2 * p.k1 + 2 * s * rep.c.real]}
    if rep.kind == "e":
        return {"vertex": [0.0], "edge": [3.0 * p.k1]}
    if rep.kind == "f":
        return {"vertex": [1.5 * p.k0], "edge": [0.0]}
    return {"vertex": [], "edge": []}


# --- intervals and the Ramanujan spectrum -----------------------------------


def vertex_interval(q):
    k0 = 2 * (q * q + q + 1)
    return (k0 - 6 * q, k0 + 3 * q)


def interval_I(q):
    k1 = q + 1
    return (k1 - 2 * math.sqrt(q), k1 + 2 * math.sqrt(q))


def interval_minus(q):
    k1 = q + 1
    return (1.5 * k1 - math.sqrt((k1 / 2) ** 2 + 8 * q), k1 + 1)


def interval_plus(q):
    k1 = q + 1
    return (2 * k1 - 1, 1.5 * k1 + math.sqrt((k1 / 2) ** 2 + 8 * q))


def intervals(q) -> dict:
    return {
        "vertex": vertex_interval(q),
        "I": interval_I(q),
        "I_minus": interval_minus(q),
        "I_plus": interval_plus(q),
    }


def _inside(x, iv, tol=1e-9):
    x = complex(x)
    scale = tol * max(1.0, abs(iv[0]), abs(iv[1]))
    return abs(x.imag) <= scale and iv[0] - scale <= x.real <= iv[1] + scale


def verify_interval_membership(p: SatakeParams, rep: RepType = None) -> bool:
    """Type (a): lambda_K in the vertex interval and lambda_+-E in I_+-; type (c): the edge value in I."""
    rep = rep or classify_type(p)
    q = p.q
    if rep.kind == "a":
        cf = closed_form_eigenvalues(p)
        return (
            _inside(cf.lambdaK, vertex_interval(q))
            and _inside(cf.lambdaE_plus, interval_plus(q))
            and _inside(cf.lambdaE_minus, interval_minus(q))
        )
    if rep.kind == "c":
        (lam,) = type_eigenvalues(p, rep)["edge"]
        return _inside(lam, interval_I(q))
    raise InvalidParamsError(f"membership is only stated for types (a) and (c), got {rep.kind}")


@dataclass(frozen=True)
class SpectralPrediction:
    n: int
    q: int
    tripartite: bool
    N_a: int
    N_c: int
    N_e: int
    N_f: int
    N_Stn: object
    vertex_strata: dict
    edge_strata: dict
    intervals: dict

    def dimension_identities(self) -> dict:
        k0 = 2 * (self.q**2 + self.q + 1)
        return {
            "vertices": self.n == self.N_a + self.N_e + self.N_f,
            "edges": self.n * k0 // 2 == 3 * self.N_a + self.N_c + self.N_e + self.N_f,
        }


def reduced_euler_characteristic(n: int, q: int) -> Fraction:
    """-1 + |X^0| - |X^1| + |X^2| for a regular quotient on n vertices."""
    k0, k1 = 2 * (q * q + q + 1), q + 1
    return Fraction(-1) + n - Fraction(n * k0, 2) + Fraction(n * k0 * k1, 6)


def predicted_spectrum(n: int, q: int, tripartite: bool, euler=None) -> SpectralPrediction:
    """Multiplicities of the representation types and the resulting Laplace spectra."""
    if n < 1 or q < 2:
        raise InvalidParamsError("need n >= 1 and q >= 2")
    if tripartite:
        N_a, N_c, N_e, N_f = n - 3, n * (q * q + q) - 2 * n + 6, 1, 2
    else:
        N_a, N_c, N_e, N_f = n - 1, n * (q * q + q - 2) + 2, 1, 0
    if euler is None:
        euler = reduced_euler_characteristic(n, q)
    k0, k1 = 2 * (q * q + q + 1), q + 1
    iv = intervals(q)
    vertex = {"in_vertex_interval": N_a}
    edge = {"in_I": N_c, "in_I_minus": N_a, "in_I_plus": N_a, "at_3k1": N_e}
    if tripartite:
        vertex["at_3k0/2"] = N_f
    return SpectralPrediction(
        n, q, tripartite, N_a, N_c, N_e, N_f, euler,
        vertex, edge, {**iv, "colored_vertex": 1.5 * k0, "colored_edge": 3 * k1},
    )
