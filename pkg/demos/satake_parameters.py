"""Eigenvalues attached to Satake parameters, one representative per unitary type.

For each type the explicit 3x3 upper edge operator is diagonalized and
compared with the closed forms lambda_K = k0 - q ztilde and
lambda_E = 3 k1 / 2 +- sqrt((3 k1 / 2)^2 - lambda_K).

    python demos/satake_parameters.py [q]
"""

import sys

import numpy as np

from hodgespec.satake import (
    build_matrices,
    classify_type,
    closed_form_eigenvalues,
    intervals,
    pattern_params,
    type_eigenvalues,
)


def fmt(z):
    z = complex(round(z.real, 9) + 0.0, round(z.imag, 9) + 0.0)
    return f"{z.real:.4f}" if abs(z.imag) < 1e-9 else f"{z.real:.4f}{z.imag:+.4f}i"


def main(q=2):
    print(f"q = {q}: k0 = {2 * (q * q + q + 1)}, k1 = {q + 1}")
    for name, iv in intervals(q).items():
        print(f"  {name:8s} [{iv[0]:.4f}, {iv[1]:.4f}]")
    print()
    for kind in ("a", "b", "c", "d", "e", "f", "Stn"):
        p = pattern_params(kind, q, c=np.exp(0.8j), a=0.3, theta=(0.4, 1.7))
        rep = classify_type(p)
        cf = closed_form_eigenvalues(p)
        dense = np.sort_complex(np.linalg.eigvals(build_matrices(p)["up1"]))
        kept = type_eigenvalues(p, rep)
        print(f"{rep.name:18s} z = ({', '.join(fmt(z) for z in p.z)})")
        print(f"  closed form: lambda_K = {fmt(cf.lambdaK)}, lambda_E = {fmt(cf.lambdaE_plus)}, {fmt(cf.lambdaE_minus)}")
        print(f"  dense up1  : {', '.join(fmt(x) for x in dense)}")
        print(f"  surviving  : vertex {[fmt(x) for x in kept['vertex']]}, edge {[fmt(x) for x in kept['edge']]}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 2)
