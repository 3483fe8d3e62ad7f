"""Laplace spectra of the octahedron, with the colored eigenvalues picked out.

The octahedron is the complete tripartite complex T(2,2,2).  Its vertex
spectrum carries the colored value 3 k0 / 2 = 6 twice (one per nontrivial
character of the 3-coloring), and its edge spectrum carries 3 k1 = 6 once
(the octahedron is disorientable).

    python demos/octahedron_spectrum.py
"""

from hodgespec import find_disorientation, garland_check, named, spectrum_report


def show(report):
    fmt = lambda xs: ", ".join(f"{x['value']:g} x{x['mult']}" for x in xs) or "-"
    js = report.to_json()
    print(f"dim {report.dim}: k = {report.k}, betti = {report.betti}")
    print(f"  trivial    {fmt(js['trivial'])}")
    print(f"  nontrivial {fmt(js['nontrivial'])}")
    print(f"  colored    {fmt(js['colored'])}")
    if report.mu is not None:
        print(f"  concentration mu = {round(report.mu, 9):g}")


def main():
    X = named("octahedron")
    print(f"octahedron: f-vector {X.f_vector}")
    for i in range(X.dim + 1):
        show(spectrum_report(X, i))

    g = garland_check(X, 1)
    print(f"\nlink bound for the edge spectrum: [{g.lower:g}, {g.upper:g}], contained: {g.holds}")
    dis = find_disorientation(X)
    print(f"disorientation signs on the 8 triangles: {dis.signs}")


if __name__ == "__main__":
    main()
