"""Reading and writing the line-oriented ``.cplx`` complex format.

::

    # comments run to the end of the line
    n 6
    0 1 2
    0 1 5
    ...

The first non-comment line gives the vertex count; every later line is a
face (closure is computed, so listing only maximal faces is enough).
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

from .complex import MAX_DIM, SimplicialComplex, from_maximal_faces
from .errors import FaceParseError, ParseError, VertexParseError


def parse_complex_text(text: str) -> SimplicialComplex:
    n = None
    faces = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if n is None:
            if len(words) != 2 or words[0] != "n":
                raise ParseError("expected header 'n <count>'", lineno)
            try:
                n = int(words[1])
            except ValueError:
                raise ParseError(f"vertex count {words[1]!r} is not an integer", lineno) from None
            if n < 1:
                raise ParseError("vertex count must be positive", lineno)
            continue
        try:
            face = [int(w) for w in words]
        except ValueError:
            raise ParseError(f"non-integer vertex id in {line!r}", lineno) from None
        if len(set(face)) != len(face):
            raise FaceParseError(f"face {tuple(face)} repeats a vertex", lineno)
        if len(face) > MAX_DIM + 1:
            raise FaceParseError(f"face {tuple(face)} has dimension above {MAX_DIM}", lineno)
        for v in face:
            if not 0 <= v < n:
                raise VertexParseError(f"vertex {v} out of range for n={n}", lineno)
        faces.append(face)
    if n is None:
        raise ParseError("missing header 'n <count>'")
    return from_maximal_faces(faces, n)


def parse_complex(path) -> SimplicialComplex:
    return parse_complex_text(Path(path).read_text())


def serialize_complex_text(X: SimplicialComplex) -> str:
    lines = [f"n {X.n}"]
    lines.extend(" ".join(map(str, face)) for face in X.maximal_faces())
    return "\n".join(lines) + "\n"


def atomic_write(path, text: str):
    """Write ``text`` to ``path`` through a temporary file in the same directory."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def serialize_complex(X: SimplicialComplex, path):
    atomic_write(path, serialize_complex_text(X))
