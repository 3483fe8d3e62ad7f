"""Closed-form bounds for Ramanujan triangle complexes as q grows.

Plugs the Ramanujan spectral data (mu0 = 6q, mu1 = 2 sqrt q) into the
Cheeger-type bound, the gallery mixing error and the weak chromatic lower
bound, and prints the predicted multiplicities of each representation type
for a quotient on n vertices.

    python demos/ramanujan_bounds.py
"""

from hodgespec.bounds import ramanujan_formulas
from hodgespec.satake import predicted_spectrum


def main():
    theta = 1 / 3
    print("q          cheeger bound      / 2q^3    chromatic lb")
    for q in (2, 4, 16, 256, 4096, 65536):
        f = ramanujan_formulas(q, theta)
        print(f"{q:<10d} {f['cheeger_rhs']:<18.6g} {f['cheeger_rhs'] / (2 * q**3):<9.4f} {f['chromatic_lb']:.4f}")

    n, q = 100, 2
    f = ramanujan_formulas(q, theta, n=n, sizes=(33, 33, 33, 33))
    print(f"\nq={q}, n={n}, a=b=c=d=33: main term {f['pseudorandom_main']:.2f}, "
          f"error bound {f['pseudorandom_rhs']:.2f}")

    for tripartite in (False, True):
        p = predicted_spectrum(n, q, tripartite)
        print(f"\nn={n}, q={q}, tripartite={tripartite}")
        print(f"  N_a={p.N_a} N_c={p.N_c} N_e={p.N_e} N_f={p.N_f} N_Stn={p.N_Stn}")
        print(f"  identities hold: {p.dimension_identities()}")


if __name__ == "__main__":
    main()
