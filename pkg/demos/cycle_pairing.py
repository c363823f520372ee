"""Compare cycle pairings across ring-shaped curves and random rational curves.

Run: python3 demos/cycle_pairing.py
"""
from limitmotive import cycle_basis, dual_graph, nu_t, pairing_matrix
from limitmotive.corpus import builtin, ngon, random_curves

for name in ("nodal_cubic", "banana", "triangle"):
    print(f"{name:12s} pairing {pairing_matrix(builtin(name)).tolist()}")
for k in (4, 5, 6):
    print(f"{k}-gon        pairing {pairing_matrix(ngon(k)).tolist()}")

print("\nrandom rational curves, t-exponents of nu_t on each generator:")
for curve in random_curves(2024, 4, rational=True):
    basis = cycle_basis(dual_graph(curve))
    P = pairing_matrix(curve)
    print(f"  {len(curve.components)} components, {len(curve.nodes)} nodes, pairing {P.tolist()}")
    for D in basis:
        print(f"    D={D}: texp {nu_t(curve, D).torus_texp}")
