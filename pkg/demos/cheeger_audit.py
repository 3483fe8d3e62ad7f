"""Exhaustive check of the Cheeger-type inequality for triangle complexes.

For every partition of the vertices into three nonempty blocks the
normalized rainbow-triangle count |T(A,B,C)| n^2 / (|A||B||C|) is compared
with lambda1 (k0 - mu0 (1 + 10 n^3 / (9 |A||B||C|))).  The bound is often
vacuous (negative) on small complexes; the audit reports it anyway.

    python demos/cheeger_audit.py
"""

from hodgespec import complete_tripartite, h_theta, linial_meshulam, named
from hodgespec.bounds import cheeger_audit


def main():
    complexes = {
        "octahedron": named("octahedron"),
        "T(3,3,3)": complete_tripartite(3),
        "tetrahedron boundary": named("tetrahedron-boundary"),
        "Linial-Meshulam n=9 p=0.5": linial_meshulam(9, 0.5, seed=1),
    }
    for name, X in complexes.items():
        audit = cheeger_audit(X)
        cc = audit.constants
        theta = (X.n // 3) / X.n  # largest balance every n allows
        h = h_theta(X, theta)
        print(f"{name}: n={cc.n}, k0={cc.k0}, mu0={cc.mu0:.4f}, lambda1={cc.lambda1:.4f}")
        print(f"  {audit.partitions} partitions, {audit.violations} violations, "
              f"tightest slack {audit.worst_slack:.4f} at {[sorted(b) for b in audit.worst_partition]}")
        print(f"  h_theta (theta = {theta:.3f}) = {h.value:.4f} attained at {[sorted(b) for b in h.partition]}")


if __name__ == "__main__":
    main()
